//! Geometric means for data that contain zeros.
//!
//! The plain geometric mean collapses to zero as soon as one observation is
//! zero. This crate implements a shifted geometric mean,
//! `exp(mean(ln(x + delta))) - delta`, whose shift is calibrated per dataset
//! so that on the positive observations it differs from the ordinary
//! geometric mean by at most a relative `eps`. It keeps two properties the
//! usual workarounds lose: it reproduces the geometric mean on zero-free data,
//! and appending zeros never raises it.
//!
//! Alongside it are the baselines it is compared against (Habib's
//! zero-inclusive mean and the add-one workaround), a matching geometric
//! standard deviation, and a procedure for comparing several datasets under a
//! single shared shift.
//!
//! ```
//! use geomext::{extended_geometric_mean, make_dataset, Epsilon};
//!
//! let d = make_dataset(&[1.0, 4.0, 0.0]).unwrap();
//! let r = extended_geometric_mean(&d, Epsilon::new(0.01).unwrap()).unwrap();
//! assert!((r.delta.finite().unwrap() - 0.08375).abs() < 1e-12);
//! assert!((r.mean - 0.634580584542).abs() < 1e-9);
//! ```

pub mod cli;
pub mod compare;
pub mod error;
pub mod estimators;
pub mod solver;
pub mod stats;
pub mod summation;

pub use compare::{compare_datasets, compare_labelled, ComparisonEntry, ComparisonReport};
pub use error::{Error, Result};
pub use estimators::{
    extended_geometric_mean, extended_geometric_mean_with, extended_geometric_sd,
    extended_geometric_sd_with, habib_mean, plus_one_mean, shifted_geometric_mean, Epsilon,
    ExtendedMeanResult, GsdResult,
};
pub use solver::{
    delta_residual, solve_delta, unboundedness_threshold, Delta, DeltaSolution, SolverConfig,
};
pub use stats::{
    arithmetic_mean, geometric_mean, geometric_sd, make_dataset, split, Dataset, SplitView,
};
