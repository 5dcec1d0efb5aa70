//! Zero-tolerant geometric-mean estimators.
//!
//! Three variants are provided:
//!
//! * [`habib_mean`]: `(n / (n + m)) * exp(sum(ln x) / (n + m))` over the `n`
//!   positives of a dataset with `m` zeros. Appending zeros can *raise* it.
//! * [`plus_one_mean`]: `exp(mean(ln(x + 1))) - 1`. Biased even on data with
//!   no zeros.
//! * [`extended_geometric_mean`]: the shifted mean
//!   `exp(mean(ln(x + delta))) - delta` with `delta` calibrated so that, on
//!   the positives alone, it stays within relative `eps` of their ordinary
//!   geometric mean.
//!
//! [`extended_geometric_sd`] is the matching spread factor.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver::{solve_delta, Delta, DeltaSolution, SolverConfig};
use crate::stats::{arithmetic_mean, Dataset, SplitView};
use crate::summation::{map_sum, NeumaierSum};

/// Maximum tolerated relative deviation of the shifted mean from the plain
/// geometric mean on zero-free data. Always in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Epsilon(f64);

impl Epsilon {
    pub const DEFAULT: f64 = 1e-5;

    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Epsilon(value))
        } else {
            Err(Error::InvalidEpsilon(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Epsilon {
    fn default() -> Self {
        Epsilon(Self::DEFAULT)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.0)
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidEpsilon(f64::NAN))?;
        Epsilon::new(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtendedMeanResult {
    pub mean: f64,
    pub delta: Delta,
    pub epsilon: Epsilon,
    /// Set iff `delta` is [`Delta::Unbounded`]; `mean` is then the
    /// arithmetic mean, the `delta -> inf` limit of the shifted mean.
    pub unbounded: bool,
    /// All observations equal (including all zeros): `mean` is that value.
    pub trivial_case: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GsdResult {
    pub gsd: f64,
    pub delta: f64,
    pub epsilon: Epsilon,
}

/// Log-sum over the positives for a fixed shift, reusable for any number of
/// appended zeros.
///
/// For `delta > max(x)` the cancellation-safe form
/// `delta * expm1(mean(ln_1p(x / delta)))` is used, in which zeros contribute
/// nothing to the sum; otherwise `exp(mean(ln(x + delta))) - delta` with each
/// zero contributing `ln(delta)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ShiftedKernel {
    delta: f64,
    wide: bool,
    positive_sum: f64,
    positive_count: usize,
}

impl ShiftedKernel {
    pub(crate) fn new(positives: &[f64], max: f64, delta: f64) -> Self {
        let wide = delta > max;
        let positive_sum = if wide {
            map_sum(positives, |x| (x / delta).ln_1p())
        } else {
            map_sum(positives, |x| (x + delta).ln())
        };
        ShiftedKernel {
            delta,
            wide,
            positive_sum,
            positive_count: positives.len(),
        }
    }

    pub(crate) fn mean(&self, zero_count: usize) -> f64 {
        let total = (self.positive_count + zero_count) as f64;
        if self.wide {
            self.delta * (self.positive_sum / total).exp_m1()
        } else {
            let mut acc = NeumaierSum::new();
            acc.add(self.positive_sum);
            if zero_count > 0 {
                acc.add(zero_count as f64 * self.delta.ln());
            }
            ((acc.value() / total).exp() - self.delta).max(0.0)
        }
    }
}

pub(crate) fn habib_from_log_sum(positive_count: usize, zero_count: usize, log_sum: f64) -> f64 {
    if positive_count == 0 {
        return 0.0;
    }
    let total = (positive_count + zero_count) as f64;
    (positive_count as f64 / total) * (log_sum / total).exp()
}

/// Habib's zero-inclusive geometric mean. Returns 0 when there are no
/// positives.
pub fn habib_mean(s: &SplitView) -> f64 {
    let log_sum = map_sum(&s.positives, f64::ln);
    habib_from_log_sum(s.positives.len(), s.zero_count, log_sum)
}

pub fn plus_one_mean(d: &Dataset) -> f64 {
    if let Some(c) = d.constant_value() {
        return c;
    }
    (map_sum(d.values(), f64::ln_1p) / d.len() as f64).exp_m1()
}

/// `exp(mean(ln(x + delta))) - delta` for a fixed `delta > 0`.
///
/// A constant dataset returns its value exactly.
pub fn shifted_geometric_mean(d: &Dataset, delta: f64) -> f64 {
    debug_assert!(delta > 0.0);
    if let Some(c) = d.constant_value() {
        return c;
    }
    let s = d.split();
    ShiftedKernel::new(&s.positives, d.max(), delta).mean(s.zero_count)
}

pub fn extended_geometric_mean(d: &Dataset, eps: Epsilon) -> Result<ExtendedMeanResult> {
    extended_geometric_mean_with(d, eps, &SolverConfig::default())
}

pub fn extended_geometric_mean_with(
    d: &Dataset,
    eps: Epsilon,
    cfg: &SolverConfig,
) -> Result<ExtendedMeanResult> {
    if let Some(c) = d.constant_value() {
        return Ok(trivial_result(c, eps));
    }
    let s = d.split();
    let solution = solve_delta(&s.positives, eps, cfg)?;
    Ok(extended_from_solution(d, &s, eps, &solution))
}

pub(crate) fn trivial_result(value: f64, eps: Epsilon) -> ExtendedMeanResult {
    ExtendedMeanResult {
        mean: value,
        delta: Delta::Unbounded,
        epsilon: eps,
        unbounded: true,
        trivial_case: true,
    }
}

/// Evaluates the extended mean of a non-constant dataset from an already
/// solved shift.
pub(crate) fn extended_from_solution(
    d: &Dataset,
    s: &SplitView,
    eps: Epsilon,
    solution: &DeltaSolution,
) -> ExtendedMeanResult {
    let mean = match solution.delta {
        Delta::Finite(delta) => ShiftedKernel::new(&s.positives, d.max(), delta).mean(s.zero_count),
        Delta::Unbounded => arithmetic_mean(d),
    };
    ExtendedMeanResult {
        mean,
        delta: solution.delta,
        epsilon: eps,
        unbounded: solution.delta.is_unbounded(),
        trivial_case: false,
    }
}

/// Modified geometric SD: `exp(sqrt(mean(ln((x + delta) / g)^2)))` where `g`
/// is the extended mean (not shifted by `delta`).
pub(crate) fn modified_gsd(
    positives: &[f64],
    zero_count: usize,
    delta: f64,
    extended_mean: f64,
) -> f64 {
    let log_g = extended_mean.ln();
    let zero_dev = delta.ln() - log_g;
    let mut acc = NeumaierSum::new();
    acc.add(map_sum(positives, |x| {
        let dev = (x + delta).ln() - log_g;
        dev * dev
    }));
    acc.add(zero_count as f64 * zero_dev * zero_dev);
    let total = (positives.len() + zero_count) as f64;
    (acc.value() / total).sqrt().exp()
}

pub fn extended_geometric_sd(d: &Dataset, eps: Epsilon) -> Result<GsdResult> {
    extended_geometric_sd_with(d, eps, &SolverConfig::default())
}

pub fn extended_geometric_sd_with(
    d: &Dataset,
    eps: Epsilon,
    cfg: &SolverConfig,
) -> Result<GsdResult> {
    if d.constant_value().is_some() {
        return Err(Error::DegenerateDataset);
    }
    let s = d.split();
    let solution = solve_delta(&s.positives, eps, cfg)?;
    let delta = solution.delta.finite().ok_or(Error::UnboundedDelta)?;
    let mean = ShiftedKernel::new(&s.positives, d.max(), delta).mean(s.zero_count);
    Ok(GsdResult {
        gsd: modified_gsd(&s.positives, s.zero_count, delta, mean),
        delta,
        epsilon: eps,
    })
}
