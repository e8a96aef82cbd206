use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubic_core::catalog_checks;
use cubic_core::scenarios::{self, emit_report, Format, Report, Scenario, ScenarioError, MIN_SAMPLES};

#[derive(Parser)]
#[command(name = "cubic", version, about = "Reconstruct skewfields and pseudo-quadratic forms from cubic rank one group actions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run scenarios given as catalog names or file paths.
    Run {
        #[arg(required = true)]
        scenarios: Vec<String>,
        #[arg(long, default_value = "human")]
        format: Format,
        /// Sample size for sampled checks (vectors and pairs).
        #[arg(long)]
        samples: Option<usize>,
        /// Seed for sample selection.
        #[arg(long)]
        seed: Option<u64>,
        /// Comma separated check ids or prefixes ending in `*`.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// List the built-in scenarios.
    Catalog,
    /// Print the statement and algorithm of a check.
    Explain { id: String },
}

fn prepare(arg: &str, samples: Option<usize>, seed: Option<u64>, checks: &Option<Vec<String>>) -> Result<Scenario, ScenarioError> {
    let mut sc = scenarios::load(arg)?;
    if let Some(n) = samples {
        if n < MIN_SAMPLES {
            return Err(ScenarioError::Construct(format!("--samples must be at least {MIN_SAMPLES}")));
        }
        sc.sampling.samples = n;
        sc.sampling.pairs = sc.sampling.pairs.max(n);
    }
    if let Some(s) = seed {
        sc.sampling.seed = s;
    }
    if let Some(c) = checks {
        if let Some(bad) = c.iter().find(|p| !scenarios::pattern_known(p)) {
            return Err(ScenarioError::Construct(format!("check pattern {bad:?} matches no known check")));
        }
        sc.checks = c.clone();
    }
    Ok(sc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Catalog => {
            for sc in scenarios::catalog_list() {
                println!("{:<18} {}", sc.name, sc.description);
            }
            ExitCode::SUCCESS
        }
        Cmd::Explain { id } => match catalog_checks::lookup(&id) {
            Some(d) => {
                println!("{}\n\nstatement: {}\n\nalgorithm: {}", d.id, d.statement, d.algorithm);
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("unknown check id {id:?}");
                ExitCode::from(2)
            }
        },
        Cmd::Run { scenarios: args, format, samples, seed, checks } => {
            let results: Vec<Result<Report, ScenarioError>> = std::thread::scope(|s| {
                let handles: Vec<_> = args
                    .iter()
                    .map(|a| {
                        let checks = &checks;
                        s.spawn(move || prepare(a, samples, seed, checks).and_then(|sc| scenarios::run_scenario(&sc)))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("scenario thread panicked")).collect()
            });
            let mut code = ExitCode::SUCCESS;
            for (arg, r) in args.iter().zip(results) {
                match r {
                    Ok(rep) => {
                        print!("{}", emit_report(&rep, format));
                        if !rep.all_passed() {
                            code = ExitCode::from(1);
                        }
                    }
                    Err(e) => {
                        eprintln!("{arg}: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            code
        }
    }
}
