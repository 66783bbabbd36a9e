use std::io::Write;
use std::process::ExitCode;

use rradix_cli::{run, CONFIG_ENV};

fn main() -> ExitCode {
    let env_config = std::env::var_os(CONFIG_ENV).map(Into::into);
    let out = run(std::env::args_os(), env_config);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
