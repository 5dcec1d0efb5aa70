use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use geomext::cli::{
    cmd_compare, cmd_compute, cmd_gen_fixture, cmd_sweep_zeros, CliError, FixtureSpec,
    OutputFormat, RunConfig,
};
use geomext::Epsilon;

#[derive(Parser)]
#[command(
    name = "geomext",
    version,
    about = "Geometric means for data sets with zeros"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standard, Habib, add-one and extended means plus geometric SDs.
    Compute {
        #[command(flatten)]
        common: Common,
        /// Tolerance epsilon; repeat for several.
        #[arg(long = "epsilon", value_name = "E", default_value = "1e-5")]
        epsilons: Vec<Epsilon>,
        file: PathBuf,
    },
    /// Estimators as a function of the number of zeros appended.
    SweepZeros {
        #[command(flatten)]
        common: Common,
        #[arg(long = "epsilon", value_name = "E", default_value = "1e-5")]
        epsilons: Vec<Epsilon>,
        #[arg(long)]
        max_zeros: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        file: PathBuf,
    },
    /// Compare data sets under one shared shift.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "E", default_value = "1e-5")]
        epsilon: Epsilon,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Write a seeded zero-inflated log-normal data set, one value per line.
    GenFixture {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        zeros: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rescale the draws so the sample log-mean and log-SD equal mu and sigma.
        #[arg(long)]
        exact_log_moments: bool,
    },
}

#[derive(Args)]
struct Common {
    /// CSV column (header name or zero-based index).
    #[arg(long)]
    column: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    format: OutputFormat,
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Compute {
            common,
            epsilons,
            file,
        } => cmd_compute(&RunConfig {
            epsilons,
            inputs: vec![file],
            column: common.column,
            format: common.format,
            ..RunConfig::default()
        }),
        Command::SweepZeros {
            common,
            epsilons,
            max_zeros,
            step,
            file,
        } => cmd_sweep_zeros(&RunConfig {
            epsilons,
            inputs: vec![file],
            column: common.column,
            format: common.format,
            max_zeros,
            step,
            ..RunConfig::default()
        }),
        Command::Compare {
            common,
            epsilon,
            files,
        } => cmd_compare(&RunConfig {
            epsilons: vec![epsilon],
            inputs: files,
            column: common.column,
            format: common.format,
            ..RunConfig::default()
        }),
        Command::GenFixture {
            n,
            mu,
            sigma,
            zeros,
            seed,
            exact_log_moments,
        } => {
            if !(sigma >= 0.0 && sigma.is_finite() && mu.is_finite()) {
                return Err(CliError::Config("mu must be finite and sigma >= 0".into()));
            }
            Ok(cmd_gen_fixture(&FixtureSpec {
                n,
                mu,
                sigma,
                zeros,
                seed,
                exact_log_moments,
            }))
        }
    }
}

fn main() -> ExitCode {
    // exit code 2 is reserved for solver failures, so usage errors exit with 1
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
