use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fig8_cli::{run, Cli};

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(3);
    }
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}
