//! File input, report rendering and the commands behind the `geomext`
//! binary. Each command returns its output as a string so it can be tested
//! without spawning a process.

pub mod fixture;
pub mod format;
pub mod input;
pub mod report;
pub mod sweep;

use std::path::PathBuf;

use thiserror::Error;

use crate::compare::compare_labelled;
use crate::error::Error;
use crate::estimators::Epsilon;
use crate::solver::SolverConfig;
use crate::stats::Dataset;

pub use fixture::{generate, FixtureSpec};
pub use input::{read_dataset, InputError};
pub use report::{compute_report, ComputeReport, EpsilonEstimate, GsdStatus};
pub use sweep::{sweep_zeros, SweepColumn, SweepRow, SweepTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub epsilons: Vec<Epsilon>,
    pub inputs: Vec<PathBuf>,
    pub column: Option<String>,
    pub format: OutputFormat,
    pub max_zeros: usize,
    pub step: usize,
    pub solver: SolverConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            epsilons: vec![Epsilon::default()],
            inputs: Vec::new(),
            column: None,
            format: OutputFormat::Tsv,
            max_zeros: 0,
            step: 1,
            solver: SolverConfig::default(),
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.epsilons.is_empty() {
            return Err(CliError::Config("at least one epsilon is required".into()));
        }
        if self.inputs.is_empty() {
            return Err(CliError::Config("no input file given".into()));
        }
        if self.step == 0 {
            return Err(CliError::Config("--step must be >= 1".into()));
        }
        self.solver.validate()?;
        Ok(())
    }

    fn read_inputs(&self) -> Result<Vec<Dataset>, CliError> {
        self.inputs
            .iter()
            .map(|p| read_dataset(p, self.column.as_deref()).map_err(CliError::from))
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),

    #[error(transparent)]
    Core(#[from] Error),

    #[error("{0}")]
    Config(String),
}

impl CliError {
    /// 2 for solver failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_solver_failure() => 2,
            _ => 1,
        }
    }
}

pub fn cmd_compute(cfg: &RunConfig) -> Result<String, CliError> {
    cfg.validate()?;
    let data = cfg.read_inputs()?;
    let report = compute_report(&data[0], &cfg.epsilons, &cfg.solver)?;
    Ok(match cfg.format {
        OutputFormat::Tsv => report.to_tsv(),
        OutputFormat::Json => report.to_json(),
    })
}

pub fn cmd_sweep_zeros(cfg: &RunConfig) -> Result<String, CliError> {
    cfg.validate()?;
    let data = cfg.read_inputs()?;
    let table = sweep_zeros(
        &data[0],
        &cfg.epsilons,
        cfg.max_zeros,
        cfg.step,
        &cfg.solver,
    )?;
    Ok(match cfg.format {
        OutputFormat::Tsv => table.to_tsv(),
        OutputFormat::Json => table.to_json(),
    })
}

/// Compares every input file at the first configured epsilon. Datasets are
/// labelled by their path.
pub fn cmd_compare(cfg: &RunConfig) -> Result<String, CliError> {
    cfg.validate()?;
    let data = cfg.read_inputs()?;
    let labelled: Vec<(String, &Dataset)> = cfg
        .inputs
        .iter()
        .map(|p| p.display().to_string())
        .zip(&data)
        .collect();
    let report = compare_labelled(&labelled, cfg.epsilons[0], &cfg.solver)?;
    Ok(match cfg.format {
        OutputFormat::Tsv => report::comparison_tsv(&report),
        OutputFormat::Json => report::comparison_json(&report),
    })
}

/// One value per line, in shortest round-trip form.
pub fn cmd_gen_fixture(spec: &FixtureSpec) -> String {
    let mut out = String::new();
    for v in generate(spec) {
        out.push_str(&format!("{v}\n"));
    }
    out
}
