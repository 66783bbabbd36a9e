//! Command-line front end for `redundant-radix`.
//!
//! [`run`] parses an argument vector, resolves defaults from the config file
//! and returns the exit code with everything the process should print, so the
//! binary is a thin wrapper and tests can drive the whole CLI in-process.
//!
//! Exit codes: 0 on success, 2 on domain, usage and parse errors, 3 when a
//! budget is exceeded. Errors are written to stderr as
//! `{"error": {"kind": ..., "message": ...}}`.

mod commands;
pub mod config;
mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use redundant_radix::numerals::Digit;
use redundant_radix::Error;

pub use config::{CliConfig, Format, CONFIG_ENV};

#[derive(Debug, Parser)]
#[command(name = "rradix", version, about = "Exact arithmetic for redundant base-s numerals")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Natural base s
    #[arg(long, global = true)]
    pub s: Option<u32>,
    /// Largest digit r
    #[arg(long, global = true)]
    pub r: Option<u32>,
    /// Output format: json, csv, dot or text
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Seed for the random digit policy
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Config file; overrides the environment variable
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PolicyArg {
    Greedy,
    Lazy,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand x digit by digit
    Expand {
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value = "greedy")]
        policy: PolicyArg,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        /// Run until the remainders cycle and print the periodic representation
        #[arg(long)]
        periodic: bool,
        /// Print the admissible first digits instead
        #[arg(long)]
        admissible: bool,
    },
    /// Value of a representation such as "0 1 (3)"
    Value {
        #[arg(long)]
        rep: String,
        /// Base to evaluate in; defaults to s
        #[arg(long)]
        base: Option<u32>,
        /// Reflect digits d -> r-d first
        #[arg(long)]
        reflect: bool,
    },
    /// Interchangeable digit pairs
    Pairs,
    /// Chains of mutually interchangeable pairs
    Chains,
    /// A cylinder, given by its base or by a point and a rank
    Cylinder {
        /// Space-separated base digits
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value = "greedy")]
        policy: PolicyArg,
        /// Overlap of children i and i+1
        #[arg(long)]
        overlap: Option<Digit>,
        #[arg(long)]
        children: bool,
        /// Base of a second cylinder to compare with
        #[arg(long)]
        same_as: Option<String>,
    },
    /// Whether adjacent cylinders overlap in a cylinder
    Overlap,
    /// Representations of x
    Census {
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 20)]
        max_count: usize,
        #[arg(long)]
        max_preperiod: Option<usize>,
        /// Report a terminating representation, if any
        #[arg(long)]
        rs_rational: bool,
        /// Count extendable digit words of this length
        #[arg(long)]
        count_prefixes: Option<usize>,
    },
    /// Cardinality of the set of representations of x
    Classify {
        #[arg(long)]
        x: String,
        /// Read x as a level y0 of f and flag (r) tails
        #[arg(long)]
        level_set: bool,
    },
    /// The digit projection f at x
    Feval {
        #[arg(long)]
        x: String,
        /// Check f((i+x)/(r+1)) = (i + f(x))/s for this i
        #[arg(long)]
        functional_eq: Option<Digit>,
    },
    /// Jumps of f at points with two base-(r+1) expansions
    Jumps {
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        rank: Option<u32>,
        /// Truncated left gap with k digits r
        #[arg(long)]
        gap: Option<usize>,
    },
    /// Three points on which f rises then falls
    Witness {
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Exact sample of the graph of f
    Graph {
        #[arg(long)]
        depth: u32,
        /// Comma-separated grid exponents for box counting
        #[arg(long)]
        box_counts: Option<String>,
    },
    /// Affine maps generating the graph of f
    Ifs,
    /// Integral of f over [0, 1]
    Integral {
        /// Also print the left Riemann sum at this depth
        #[arg(long)]
        estimate: Option<u32>,
    },
    /// Lower bound for the variation of f
    Variation {
        #[arg(long)]
        n: u32,
    },
    /// Closed-form dimensions
    Dims,
    /// Remainder automaton of x
    Automaton {
        #[arg(long)]
        x: String,
    },
}

/// Everything one invocation prints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Library operations and a command line reaching each one.
pub const OPERATIONS: &[(&str, &[&str])] = &[
    ("value_of", &["value", "--rep", "0 1 (3)"]),
    ("admissible_digits", &["expand", "--x", "1", "--admissible"]),
    ("expand", &["expand", "--x", "1", "--policy", "lazy", "--depth", "3"]),
    ("expand_periodic", &["expand", "--x", "2/5", "--periodic"]),
    ("interchangeable_pairs", &["pairs"]),
    ("substitution_chains", &["chains", "--s", "2", "--r", "4"]),
    ("reflect", &["value", "--rep", "0 1 (3)", "--reflect"]),
    ("is_rs_rational", &["census", "--x", "1/3", "--rs-rational"]),
    ("interval", &["cylinder", "--base", "1 0"]),
    ("same_cylinder", &["cylinder", "--base", "1 0", "--same-as", "0 2"]),
    ("children", &["cylinder", "--base", "1", "--children"]),
    ("adjacent_overlap", &["cylinder", "--base", "1", "--overlap", "0"]),
    ("overlap_is_cylinder", &["overlap", "--s", "2", "--r", "2"]),
    ("cylinder_containing", &["cylinder", "--x", "1/3", "--rank", "4"]),
    ("build_automaton", &["automaton", "--x", "1"]),
    ("count_prefixes", &["census", "--x", "1", "--count-prefixes", "5"]),
    ("enumerate_representations", &["census", "--x", "1", "--max-count", "5"]),
    ("classify", &["classify", "--x", "1"]),
    ("unique_set_dimension", &["dims", "--s", "3", "--r", "3"]),
    ("cantor_levelset_dimension", &["dims"]),
    ("canonical_base_rep", &["feval", "--x", "1/4"]),
    ("f_eval", &["feval", "--x", "1/3"]),
    ("is_binary_point", &["jumps", "--x", "1/4"]),
    ("jump_at", &["jumps", "--x", "3/16"]),
    ("one_sided_gap", &["jumps", "--x", "1/4", "--gap", "5"]),
    ("check_functional_eq", &["feval", "--x", "1/3", "--functional-eq", "2"]),
    ("ifs_maps", &["ifs"]),
    ("graph_sample", &["graph", "--depth", "2", "--format", "csv"]),
    ("integral_exact", &["integral"]),
    ("integral_estimate", &["integral", "--estimate", "6"]),
    ("variation_lower_bound", &["variation", "--n", "2"]),
    ("monotonicity_witness", &["witness", "--base", "1 2"]),
    ("self_affine_dimension", &["dims", "--s", "3", "--r", "8"]),
    ("box_count_estimate", &["graph", "--depth", "6", "--box-counts", "2,3,4"]),
    ("levelset_classify", &["classify", "--x", "1", "--level-set"]),
];

fn error_kind(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Domain(_) => ("domain", 2),
        Error::Usage(_) => ("usage", 2),
        Error::Regime(_) => ("regime", 2),
        Error::Parse(_) => ("parse", 2),
        Error::Budget(_) => ("budget", 3),
    }
}

fn failure(kind: &str, message: &str, code: i32) -> Output {
    let doc = json!({ "error": { "kind": kind, "message": message } });
    Output {
        code,
        stdout: String::new(),
        stderr: format!("{doc}\n"),
    }
}

/// Runs one invocation. `env_config` is the value of [`CONFIG_ENV`], if set.
pub fn run<I, T>(args: I, env_config: Option<PathBuf>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => failure("usage", text.trim_end(), 2),
            };
        }
    };
    match execute(cli, env_config) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let (kind, code) = error_kind(&e);
            failure(kind, &e.to_string(), code)
        }
    }
}

fn resolve_config(global: &GlobalArgs, env_config: Option<PathBuf>) -> redundant_radix::Result<CliConfig> {
    let mut config = match global.config.clone().or(env_config) {
        Some(path) => CliConfig::load(&path)?,
        None => CliConfig::default(),
    };
    if let Some(s) = global.s {
        config.s = s;
    }
    if let Some(r) = global.r {
        config.r = r;
    }
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    if let Some(format) = &global.format {
        config.format = format.parse()?;
    }
    config.params()?;
    Ok(config)
}

fn execute(cli: Cli, env_config: Option<PathBuf>) -> redundant_radix::Result<String> {
    let config = resolve_config(&cli.global, env_config)?;
    let doc = commands::dispatch(&cli.command, &config)?;
    doc.render(config.format)
}
