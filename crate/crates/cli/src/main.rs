use std::process::ExitCode;

use clap::Parser;

use simulembed_cli::{run, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    if let Some(n) = std::env::var("SIMULEMBED_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
