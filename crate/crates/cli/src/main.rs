use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use permlab::{run, Cli, Context};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = Context::from_env().and_then(|ctx| run(&cli, &ctx, &mut out));
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("permlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
