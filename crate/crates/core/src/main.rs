use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use perimeter::cli::{run, Cli, EXIT_VALIDATION, THREADS_ENV};

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error[validation]: {msg}");
        return ExitCode::from(EXIT_VALIDATION as u8);
    }
    let outcome = run(&cli);
    eprint!("{}", outcome.stderr);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.stdout),
        None => std::io::stdout()
            .lock()
            .write_all(outcome.stdout.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_VALIDATION as u8);
    }
    ExitCode::from(outcome.status as u8)
}
