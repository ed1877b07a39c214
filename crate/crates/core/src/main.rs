use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use skewone::cli::run_text;
use skewone::doc::JobOptions;

/// Runs a job document (build, check, convert, nu, extract, cd, scan, iso)
/// and writes a JSON report. Exit status: 0 all checks pass, 1 a check
/// failed, 2 malformed document, 3 failed precondition.
#[derive(Parser)]
#[command(name = "skewone", version)]
struct Args {
    /// Job document (JSON).
    #[arg(long)]
    job: PathBuf,
    /// Seed for sampled checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per sampled identity.
    #[arg(long)]
    samples: Option<usize>,
    /// Report path; standard output if absent.
    #[arg(long)]
    out: Option<String>,
    /// Largest finite domain checked exhaustively.
    #[arg(long)]
    exhaustive_threshold: Option<u64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.job) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("skewone: cannot read {}: {e}", args.job.display());
            return ExitCode::from(2);
        }
    };
    let flags = JobOptions {
        seed: args.seed,
        samples: args.samples,
        exhaustive_threshold: args.exhaustive_threshold,
        quadruple_samples: None,
        output: args.out,
    };
    let outcome = run_text(&text, &flags);
    let rendered = outcome.render();
    match &outcome.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("skewone: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(outcome.exit_code as u8)
}
