use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use urr_core::interface::{check_bundle, parse_bundle, run_problem, serialize_bundle, Problem, RunOptions, Task};
use urr_core::Error;

/// Exact germ retractions over the rationals with checkable certificates.
#[derive(Parser, Debug)]
#[command(name = "urr", version)]
struct Cli {
    /// gb, member, dim, smooth, genpos, sigma, lift, retract, uniformize or check
    task: Task,
    /// Problem file, or a result bundle for `check`
    file: PathBuf,
    /// Seed for the random change of coordinates
    #[arg(long)]
    seed: Option<u64>,
    /// Number of coordinate changes tried before giving up
    #[arg(long)]
    max_tries: Option<usize>,
    /// Largest numerator and denominator degree tried for the lift
    #[arg(long)]
    max_lift_degree: Option<u32>,
    /// Largest jet order used to solve for lift candidates
    #[arg(long)]
    max_jet_order: Option<u32>,
    /// Monomial order for `gb`, e.g. `dp`, `lp`, `ds` or `dp(x,y),ls(t)`
    #[arg(long)]
    order: Option<String>,
    /// Write the bundle here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record per-stage wall-clock times in the bundle
    #[arg(long)]
    timings: bool,
}

fn report(e: &Error) -> ExitCode {
    let obj = serde_json::json!({ "error": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() });
    eprintln!("{obj}");
    ExitCode::from(e.exit_code() as u8)
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::PreconditionViolated(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let text = read(&cli.file)?;
    if cli.task == Task::Check {
        let bundle = parse_bundle(&text)?;
        let rep = check_bundle(&bundle);
        if rep.all_valid() {
            println!("all certificates valid ({})", rep.results.len());
            return Ok(ExitCode::SUCCESS);
        }
        for label in rep.failures() {
            println!("invalid: {label}");
        }
        return Ok(ExitCode::from(1));
    }
    let problem = Problem::parse_named(&text, &cli.file.display().to_string())?;
    let opts = RunOptions {
        seed: cli.seed,
        max_tries: cli.max_tries,
        max_lift_degree: cli.max_lift_degree,
        max_jet_order: cli.max_jet_order,
        order: cli.order.clone(),
        timings: cli.timings,
    };
    let bundle = run_problem(&problem, cli.task, &opts)?;
    let out = serialize_bundle(&bundle);
    match &cli.out {
        Some(p) => std::fs::write(p, out)
            .map_err(|e| Error::PreconditionViolated(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{out}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => report(&e),
    }
}
