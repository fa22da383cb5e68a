use std::path::PathBuf;
use std::process::ExitCode;

use apd_cli::{cmd_sample, cmd_simulate, cmd_tables, cmd_test, CliError, SampleArgs, SimulateArgs, StudyKind};
use clap::{Parser, Subcommand, ValueEnum};

/// Modified score goodness-of-fit test for exponential power distributions.
#[derive(Parser)]
#[command(name = "apd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Size,
    Power,
}

#[derive(Subcommand)]
enum Command {
    /// Test a sample against APD((1/2, lambda), (mu, sigma)) with unknown mu, sigma.
    Test {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo size (null) or local-alternative power study.
    Simulate {
        kind: Kind,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 5000)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated significance levels.
        #[arg(long, value_delimiter = ',', default_value = "0.01,0.05,0.1")]
        alpha: Vec<f64>,
        /// Local-alternative direction d1,d2.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        delta: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Worker threads; results do not depend on it.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form Fisher entries and Sigma over a lambda grid.
    Tables {
        /// start:stop:step
        #[arg(long = "lambda-grid")]
        lambda_grid: String,
        #[arg(long)]
        json: bool,
    },
    /// Draw an APD sample into a file.
    Sample {
        #[arg(long)]
        theta1: f64,
        #[arg(long)]
        theta2: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<(apd_cli::Rendered, bool), CliError> {
    match cli.command {
        Command::Test { input, lambda, alpha, json } => Ok((cmd_test(&input, lambda, alpha)?, json)),
        Command::Simulate { kind, lambda, n, reps, seed, alpha, delta, mu, sigma, workers, json } => {
            let delta = match delta {
                None => None,
                Some(v) if v.len() == 2 => Some([v[0], v[1]]),
                Some(_) => return Err(CliError::Usage("--delta takes exactly two values d1,d2".into())),
            };
            let kind = match kind {
                Kind::Size => StudyKind::Size,
                Kind::Power => StudyKind::Power,
            };
            let args = SimulateArgs { kind, lambda, n, reps, seed, alphas: alpha, delta, mu, sigma, workers };
            Ok((cmd_simulate(&args)?, json))
        }
        Command::Tables { lambda_grid, json } => Ok((cmd_tables(&lambda_grid)?, json)),
        Command::Sample { theta1, theta2, mu, sigma, n, seed, output, json } => {
            let args = SampleArgs { theta1, theta2, mu, sigma, n, seed, output };
            Ok((cmd_sample(&args)?, json))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok((rendered, json)) => {
            if json {
                println!("{}", rendered.record.to_json());
            } else {
                print!("{}", rendered.human);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("apd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
