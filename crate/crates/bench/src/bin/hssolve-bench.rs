use std::process::ExitCode;

use clap::Parser;
use hssolve_bench::cli::{run, Args};
use hssolve_bench::BenchError;

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e @ BenchError::Usage(_)) => {
            eprintln!("hssolve-bench: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("hssolve-bench: {e}");
            ExitCode::FAILURE
        }
    }
}
