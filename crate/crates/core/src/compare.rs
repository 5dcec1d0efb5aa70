//! Comparing several datasets under one shared shift.
//!
//! Each dataset gets its own calibrated shift `delta_i`; the comparison then
//! evaluates every dataset at `delta_min = min(delta_i)`. Because the shifted
//! mean is increasing in `delta`, `delta_min` satisfies every dataset's
//! calibration condition. Datasets whose shift is unbounded satisfy their
//! condition at any shift and do not take part in the minimum.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimators::{
    extended_from_solution, shifted_geometric_mean, trivial_result, Epsilon, ExtendedMeanResult,
};
use crate::solver::{solve_delta, Delta, SolverConfig};
use crate::stats::{arithmetic_mean, Dataset};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonEntry {
    pub label: String,
    /// This dataset's own calibrated shift.
    pub delta: Delta,
    /// All observations equal; the dataset's means are that value.
    pub trivial_case: bool,
    /// Extended mean at the dataset's own shift.
    pub own_mean: f64,
    /// Shifted mean at the shared `delta_min`.
    pub unified_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub epsilon: Epsilon,
    pub delta_min: Delta,
    pub entries: Vec<ComparisonEntry>,
}

/// Compares datasets labelled by their position (`"0"`, `"1"`, ...).
pub fn compare_datasets(datasets: &[Dataset], eps: Epsilon) -> Result<ComparisonReport> {
    let labelled: Vec<(String, &Dataset)> = datasets
        .iter()
        .enumerate()
        .map(|(i, d)| (i.to_string(), d))
        .collect();
    compare_labelled(&labelled, eps, &SolverConfig::default())
}

pub fn compare_labelled(
    datasets: &[(String, &Dataset)],
    eps: Epsilon,
    cfg: &SolverConfig,
) -> Result<ComparisonReport> {
    if datasets.is_empty() {
        return Err(Error::EmptyInput);
    }

    // Solves are independent; collecting in input order keeps error
    // attribution deterministic.
    let own: Vec<Result<ExtendedMeanResult>> = datasets
        .par_iter()
        .map(|(label, d)| own_result(d, eps, cfg).map_err(|e| e.in_dataset(label)))
        .collect();
    let own = own.into_iter().collect::<Result<Vec<_>>>()?;

    let delta_min = own
        .iter()
        .filter_map(|r| r.delta.finite())
        .min_by(f64::total_cmp)
        .map_or(Delta::Unbounded, Delta::Finite);

    let entries = datasets
        .iter()
        .zip(&own)
        .map(|((label, d), r)| ComparisonEntry {
            label: label.clone(),
            delta: r.delta,
            trivial_case: r.trivial_case,
            own_mean: r.mean,
            unified_mean: match delta_min {
                Delta::Finite(delta) => shifted_geometric_mean(d, delta),
                Delta::Unbounded => arithmetic_mean(d),
            },
        })
        .collect();

    Ok(ComparisonReport {
        epsilon: eps,
        delta_min,
        entries,
    })
}

fn own_result(d: &Dataset, eps: Epsilon, cfg: &SolverConfig) -> Result<ExtendedMeanResult> {
    if let Some(c) = d.constant_value() {
        return Ok(trivial_result(c, eps));
    }
    let s = d.split();
    let solution = solve_delta(&s.positives, eps, cfg)?;
    Ok(extended_from_solution(d, &s, eps, &solution))
}
