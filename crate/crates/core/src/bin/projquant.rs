use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use projquant::cli::{generate_random, run_scenario, RunOptions, Scenario};

#[derive(Parser)]
#[command(
    name = "projquant",
    version,
    about = "Exact checks of the projectively invariant ordering prescription"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites of a scenario file, or of a generated scenario with --random.
    Run {
        path: Option<PathBuf>,
        /// Suite to run; repeatable, overrides the scenario's list.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Generate the scenario from --seed, --dim and --max-degree.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Evaluate residuals at 5 random float points (informational).
        #[arg(long)]
        float_spot_check: bool,
    },
    /// Print a generated scenario.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate { seed, dim, max_degree } => match generate_random(seed, dim, max_degree) {
            Ok(s) => {
                print!("{}", s.to_toml());
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        Command::Run {
            path,
            suites,
            seed,
            random,
            dim,
            max_degree,
            report,
            float_spot_check,
        } => {
            let scenario = match (random, path) {
                (true, None) => generate_random(seed.unwrap_or(0), dim, max_degree.unwrap_or(2)),
                (true, Some(_)) => return usage("--random does not take a scenario path"),
                (false, Some(p)) => Scenario::from_file(&p).map(|mut s| {
                    if let Some(seed) = seed {
                        s.seed = seed;
                    }
                    s
                }),
                (false, None) => return usage("a scenario path or --random is required"),
            };
            let scenario = match scenario {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let rep = match run_scenario(
                &scenario,
                &RunOptions {
                    suites,
                    float_spot_check,
                },
            ) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let text = rep.render();
            print!("{text}");
            if let Some(p) = report {
                if let Err(e) = std::fs::write(&p, &text) {
                    return usage(format!("{}: {e}", p.display()));
                }
            }
            ExitCode::from(rep.exit_code() as u8)
        }
    }
}
