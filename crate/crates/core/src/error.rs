use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: at least one value is required")]
    EmptyInput,

    #[error("negative value {value} at index {index}: observations must be >= 0")]
    NegativeValue { index: usize, value: f64 },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("non-positive value {value} at index {index}: expected strictly positive input")]
    NonPositiveValue { index: usize, value: f64 },

    #[error("dataset has no positive values")]
    NoPositives,

    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("delta solver did not converge after {iterations} iterations (bracket width {bracket_width:e})")]
    NoConvergence { iterations: u32, bracket_width: f64 },

    #[error("delta is unbounded for this epsilon; the modified geometric SD is undefined")]
    UnboundedDelta,

    #[error("all values are equal; the modified geometric SD is undefined")]
    DegenerateDataset,

    #[error("dataset '{label}': {source}")]
    InDataset {
        label: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True when the failure originates in the delta solver, however deeply
    /// it is wrapped.
    pub fn is_solver_failure(&self) -> bool {
        match self {
            Error::NoConvergence { .. } => true,
            Error::InDataset { source, .. } => source.is_solver_failure(),
            _ => false,
        }
    }

    pub(crate) fn in_dataset(self, label: &str) -> Self {
        Error::InDataset {
            label: label.to_string(),
            source: Box::new(self),
        }
    }
}
