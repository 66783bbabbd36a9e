use serde_json::{json, Value};

use redundant_radix::cylinders::{cylinder_containing, overlap_is_cylinder, Cylinder};
use redundant_radix::dimension::{
    cantor_levelset_dimension, self_affine_dimension, unique_set_dimension,
};
use redundant_radix::numerals::{
    admissible_digits, expand, expand_periodic, interchangeable_pairs, is_rs_rational, reflect,
    substitution_chains, value_of, Digit, DigitPolicy, DigitWord, Params, PeriodicRep,
};
use redundant_radix::projector::{
    box_count_estimate, canonical_base_rep, check_functional_eq, f_eval, graph_sample,
    ifs_maps, integral_estimate, integral_exact, is_binary_point, jump_at, jump_for_rank,
    levelset_from_automaton, monotonicity_witness, one_sided_gap, variation_lower_bound,
    FunctionalEq,
};
use redundant_radix::repcensus::{classify_automaton, enumerate_automaton, RemainderAutomaton};
use redundant_radix::{format_rational, parse_rational, Error, Rational, Result};

use crate::config::CliConfig;
use crate::render::Document;
use crate::{Command, PolicyArg};

fn policy(arg: PolicyArg, seed: u64) -> DigitPolicy {
    match arg {
        PolicyArg::Greedy => DigitPolicy::Greedy,
        PolicyArg::Lazy => DigitPolicy::Lazy,
        PolicyArg::Random => DigitPolicy::SeededRandom(seed),
    }
}

fn digits(text: &str, params: Params) -> Result<Vec<Digit>> {
    let word: DigitWord = text.parse()?;
    Ok(DigitWord::checked(word.into_vec(), params.r())?.into_vec())
}

fn rat(x: &Rational) -> Value {
    json!(format_rational(x))
}

fn rep_json(rep: &PeriodicRep) -> Value {
    json!({
        "rep": rep.to_string(),
        "preperiod": rep.preperiod(),
        "period": rep.period(),
    })
}

fn automaton(x: &Rational, params: Params, config: &CliConfig) -> Result<RemainderAutomaton> {
    RemainderAutomaton::build_with_limit(x, params, config.max_states)
}

fn check_sample_exponent(n: u32, config: &CliConfig) -> Result<()> {
    if n > config.max_sample_exponent {
        return Err(Error::Budget(format!(
            "sample exponent {n} exceeds max_sample_exponent {}",
            config.max_sample_exponent
        )));
    }
    Ok(())
}

fn cylinder_json(c: &Cylinder) -> Value {
    json!({
        "base": &**c.base(),
        "rank": c.rank(),
        "interval": c.interval().to_json(),
        "length": rat(&c.length()),
    })
}

pub fn dispatch(command: &Command, config: &CliConfig) -> Result<Document> {
    let params = config.params()?;
    match command {
        Command::Expand {
            x,
            policy: p,
            depth,
            periodic,
            admissible,
        } => {
            let x = parse_rational(x)?;
            if *admissible {
                let range = admissible_digits(&x, params)?;
                let all: Vec<Digit> = range.collect();
                return Ok(Document::json(json!({ "x": rat(&x), "digits": all })));
            }
            let policy = policy(*p, config.seed);
            if *periodic {
                let rep = expand_periodic(&x, params, policy)?;
                return Ok(Document::json(rep_json(&rep)).with_text(format!("{rep}\n")));
            }
            if *depth > config.max_depth {
                return Err(Error::Budget(format!(
                    "depth {depth} exceeds max_depth {}",
                    config.max_depth
                )));
            }
            let e = expand(&x, params, policy, *depth)?;
            Ok(Document::json(json!({
                "digits": &*e.digits,
                "remainder": rat(&e.remainder),
            })))
        }
        Command::Value { rep, base, reflect: flip } => {
            let mut rep = PeriodicRep::parse(params.r(), rep)?;
            if *flip {
                rep = reflect(&rep, params)?;
            }
            let base = base.unwrap_or(params.s());
            if base < 2 {
                return Err(Error::Usage(format!("base must be at least 2, got {base}")));
            }
            let value = value_of(&rep, base);
            Ok(Document::json(json!({
                "rep": rep.to_string(),
                "base": base,
                "value": rat(&value),
            })))
        }
        Command::Pairs => {
            let pairs = interchangeable_pairs(params);
            let text: String = pairs.iter().map(|p| format!("{p}\n")).collect();
            let list: Vec<Value> = pairs
                .iter()
                .map(|p| {
                    json!({
                        "left": [p.left.0, p.left.1],
                        "right": [p.right.0, p.right.1],
                        "weight": p.weight(params),
                    })
                })
                .collect();
            Ok(Document::json(json!({ "count": pairs.len(), "pairs": list })).with_text(text))
        }
        Command::Chains => {
            let chains = substitution_chains(params);
            let text: String = chains
                .iter()
                .map(|c| {
                    let parts: Vec<String> = c.iter().map(|(a, b)| format!("{a} {b}")).collect();
                    format!("{}\n", parts.join(" <-> "))
                })
                .collect();
            Ok(Document::json(json!({ "count": chains.len(), "chains": chains })).with_text(text))
        }
        Command::Cylinder {
            base,
            x,
            rank,
            policy: p,
            overlap,
            children,
            same_as,
        } => {
            let c = match (base, x, rank) {
                (Some(b), None, None) => Cylinder::new(params, digits(b, params)?)?,
                (None, Some(x), Some(m)) => {
                    if *m > config.max_depth {
                        return Err(Error::Budget(format!(
                            "rank {m} exceeds max_depth {}",
                            config.max_depth
                        )));
                    }
                    cylinder_containing(&parse_rational(x)?, *m, params, policy(*p, config.seed))?
                }
                (None, None, None) => Cylinder::root(params),
                _ => {
                    return Err(Error::Usage(
                        "give either --base or both --x and --rank".into(),
                    ))
                }
            };
            let mut out = cylinder_json(&c);
            if let Some(i) = overlap {
                out["overlap"] = c.adjacent_overlap(*i)?.to_json();
            }
            if *children {
                out["children"] = c.children().iter().map(cylinder_json).collect();
            }
            if let Some(other) = same_as {
                let other = Cylinder::new(params, digits(other, params)?)?;
                out["same_as"] = json!(c.same_as(&other)?);
            }
            Ok(Document::json(out))
        }
        Command::Overlap => Ok(Document::json(json!({
            "p": overlap_is_cylinder(params),
            "overlap_ratio": rat(&params.overlap_ratio()),
        }))),
        Command::Census {
            x,
            max_count,
            max_preperiod,
            rs_rational,
            count_prefixes,
        } => {
            let x = parse_rational(x)?;
            let a = automaton(&x, params, config)?;
            let mut out = json!({ "x": rat(&x) });
            if *rs_rational {
                let witness = is_rs_rational(&x, params)?;
                out["rs_rational"] = json!(witness.is_some());
                out["witness"] = witness.map_or(Value::Null, |w| json!(w.to_string()));
            }
            if let Some(n) = count_prefixes {
                out["n"] = json!(n);
                out["count"] = json!(a.count_prefixes(*n).to_string());
            }
            if !*rs_rational && count_prefixes.is_none() {
                let census = enumerate_automaton(&a, *max_count, *max_preperiod);
                let reps: Vec<String> =
                    census.representations.iter().map(|r| r.to_string()).collect();
                out["cardinality"] = json!(census.cardinality.to_string());
                out["complete"] = json!(census.complete);
                out["representations"] = json!(reps);
            }
            Ok(Document::json(out))
        }
        Command::Classify { x, level_set } => {
            let x = parse_rational(x)?;
            let a = automaton(&x, params, config)?;
            if *level_set {
                let l = levelset_from_automaton(&a);
                return Ok(Document::json(json!({
                    "y0": rat(&x),
                    "cardinality": l.cardinality.to_string(),
                    "period_r_tail": l.has_period_r_tail,
                })));
            }
            Ok(Document::json(json!({
                "x": rat(&x),
                "cardinality": classify_automaton(&a).to_string(),
            })))
        }
        Command::Feval { x, functional_eq } => {
            let x = parse_rational(x)?;
            let canonical = canonical_base_rep(&x, params)?;
            let mut out = json!({
                "x": rat(&x),
                "canonical_rep": canonical.rep().to_string(),
                "f": rat(&f_eval(&x, params)?),
            });
            if let Some(i) = functional_eq {
                let outcome = check_functional_eq(*i, &x, params)?;
                out["i"] = json!(i);
                out["holds"] = json!(outcome.holds());
                out["outcome"] = json!(match outcome {
                    FunctionalEq::Holds => "holds",
                    FunctionalEq::RepresentationOnly => "representation_only",
                    FunctionalEq::Violated => "violated",
                });
            }
            Ok(Document::json(out))
        }
        Command::Jumps { x, rank, gap } => match (x, rank) {
            (Some(x), None) => {
                let x = parse_rational(x)?;
                let m = is_binary_point(&x, params)?;
                let mut out = json!({ "x": rat(&x), "rank": m });
                if m.is_some() {
                    out["jump"] = rat(&jump_at(&x, params)?);
                }
                if let Some(k) = gap {
                    out["k"] = json!(k);
                    out["gap"] = rat(&one_sided_gap(&x, params, *k)?);
                }
                Ok(Document::json(out))
            }
            (None, Some(m)) => Ok(Document::json(json!({
                "rank": m,
                "jump": rat(&jump_for_rank(params, *m)),
            }))),
            _ => Err(Error::Usage("give exactly one of --x and --rank".into())),
        },
        Command::Witness { base } => {
            let w = monotonicity_witness(&digits(base, params)?, params)?;
            let (up, down) = w.increments();
            Ok(Document::json(json!({
                "x": w.x.iter().map(rat).collect::<Vec<_>>(),
                "f": w.f.iter().map(rat).collect::<Vec<_>>(),
                "increments": [rat(&up), rat(&down)],
                "up_down": w.is_up_down(),
            })))
        }
        Command::Graph { depth, box_counts } => {
            check_sample_exponent(*depth, config)?;
            let sample = graph_sample(params, *depth)?;
            if let Some(list) = box_counts {
                let ks = list
                    .split(',')
                    .map(|k| {
                        k.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad grid exponent {k:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let counts = box_count_estimate(&sample, &ks)?;
                let rows: Vec<Value> = counts
                    .iter()
                    .map(|c| json!({ "k": c.k, "scale": c.scale, "count": c.count, "slope": c.slope }))
                    .collect();
                let mut csv = String::from("k,scale,count,slope\n");
                for c in &counts {
                    let slope = c.slope.map_or(String::new(), |v| v.to_string());
                    csv.push_str(&format!("{},{},{},{slope}\n", c.k, c.scale, c.count));
                }
                return Ok(Document::json(json!({ "depth": depth, "box_counts": rows })).with_csv(csv));
            }
            let csv = sample.to_csv();
            Ok(Document::json(sample.to_json()).with_csv(csv))
        }
        Command::Ifs => {
            let maps: Vec<Value> = ifs_maps(params).iter().map(|m| m.to_json()).collect();
            Ok(Document::json(json!({ "maps": maps })))
        }
        Command::Integral { estimate } => {
            let exact = integral_exact(params);
            let mut out = json!({ "exact": rat(&exact) });
            if let Some(n) = estimate {
                check_sample_exponent(*n, config)?;
                let e = integral_estimate(params, *n)?;
                out["n"] = json!(n);
                out["error"] = rat(&(&exact - &e));
                out["estimate"] = rat(&e);
            }
            Ok(Document::json(out))
        }
        Command::Variation { n } => Ok(Document::json(json!({
            "n": n,
            "bound": rat(&variation_lower_bound(params, *n)?),
        }))),
        Command::Dims => {
            let unique = match unique_set_dimension(params) {
                Ok(d) => d.to_json(),
                Err(Error::Regime(_)) => json!("regime_error"),
                Err(e) => return Err(e),
            };
            Ok(Document::json(json!({
                "self_affine": self_affine_dimension(params).to_json(),
                "unique_set": unique,
                "cantor_levelset": cantor_levelset_dimension(params).to_json(),
            })))
        }
        Command::Automaton { x } => {
            let a = automaton(&parse_rational(x)?, params, config)?;
            let dot = a.to_dot();
            Ok(Document::json(a.to_json()).with_dot(dot))
        }
    }
}

