//! Solving for the shift `delta` that calibrates the shifted geometric mean.
//!
//! For positives `X+` with geometric mean `G` and arithmetic mean `A`, let
//!
//! ```text
//! f(delta) = exp(mean(ln(x + delta))) - delta - G
//! ```
//!
//! `f` is continuous and strictly increasing on `(0, inf)` (unless all values
//! are equal, where it is identically zero), starts at `f(0+) = 0` and tends
//! to `A - G` as `delta -> inf`. The calibrated shift is the largest `delta`
//! for which `f(delta) < eps * G`, i.e. the root of `f(delta) - eps * G`.
//! When `eps * G >= A - G` the condition holds for every `delta` and there is
//! no finite supremum; that case is reported as [`Delta::Unbounded`].

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::estimators::{Epsilon, ShiftedKernel};
use crate::stats::{check_positive, geometric_mean_unchecked, mean_log};
use crate::summation::map_sum;

/// The solved shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Delta {
    Finite(f64),
    /// The calibration condition holds for every shift, so no finite
    /// supremum exists.
    Unbounded,
}

impl Delta {
    pub fn finite(self) -> Option<f64> {
        match self {
            Delta::Finite(d) => Some(d),
            Delta::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Delta::Unbounded)
    }
}

impl Serialize for Delta {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Delta::Finite(d) => serializer.serialize_f64(*d),
            Delta::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Bisection stops once `(hi - lo) / hi` drops below this.
    pub rel_tolerance: f64,
    /// Budget shared by the bracket-doubling and bisection phases.
    pub max_iterations: u32,
}

impl SolverConfig {
    pub fn new(rel_tolerance: f64, max_iterations: u32) -> Result<Self> {
        let cfg = SolverConfig {
            rel_tolerance,
            max_iterations,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tolerance > 0.0 && self.rel_tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "rel_tolerance must be positive, got {}",
                self.rel_tolerance
            )));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            rel_tolerance: 1e-12,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaSolution {
    pub delta: Delta,
    /// `f(delta) - eps * G` at the returned shift. For an unbounded shift this
    /// is the `delta -> inf` limit `A - G - eps * G` (never positive).
    pub residual: f64,
    pub iterations: u32,
    /// Final `hi - lo`; zero when no bisection was needed.
    pub bracket_width: f64,
}

/// Residual of the calibration condition with the positives' statistics
/// cached, for repeated evaluation.
struct Residual<'a> {
    positives: &'a [f64],
    max: f64,
    gm: f64,
    target: f64,
}

impl<'a> Residual<'a> {
    fn new(positives: &'a [f64], eps: Epsilon) -> Self {
        let gm = geometric_mean_unchecked(positives);
        let max = positives.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Residual {
            positives,
            max,
            gm,
            target: eps.value() * gm,
        }
    }

    fn eval(&self, delta: f64) -> f64 {
        let shifted = ShiftedKernel::new(self.positives, self.max, delta).mean(0);
        (shifted - self.gm) - self.target
    }
}

/// `f(delta) - eps * G(X+)`: negative while the shifted mean of the positives
/// stays within relative `eps` of their geometric mean.
///
/// `positives` must be nonempty and strictly positive.
pub fn delta_residual(positives: &[f64], delta: f64, eps: Epsilon) -> f64 {
    debug_assert!(check_positive(positives).is_ok());
    Residual::new(positives, eps).eval(delta)
}

/// `(A - G) / G` over the positives: the largest `eps` for which the shift is
/// finite. Zero iff all values are equal.
///
/// Evaluated as `mean(expm1(ln x - mean(ln x)))`, which avoids subtracting
/// two nearly equal means when the spread is tiny.
pub fn unboundedness_threshold(positives: &[f64]) -> Result<f64> {
    check_positive(positives)?;
    Ok(threshold_unchecked(positives))
}

pub(crate) fn threshold_unchecked(positives: &[f64]) -> f64 {
    let first = positives[0];
    if positives.iter().all(|&x| x == first) {
        return 0.0;
    }
    let centre = mean_log(positives);
    let ratio = map_sum(positives, |x| (x.ln() - centre).exp_m1()) / positives.len() as f64;
    ratio.max(0.0)
}

/// Finds the calibrated shift for `positives` at tolerance `eps` by bisection.
pub fn solve_delta(positives: &[f64], eps: Epsilon, cfg: &SolverConfig) -> Result<DeltaSolution> {
    check_positive(positives)?;
    cfg.validate()?;

    let residual = Residual::new(positives, eps);
    let threshold = threshold_unchecked(positives);
    if eps.value() >= threshold {
        return Ok(DeltaSolution {
            delta: Delta::Unbounded,
            residual: (threshold - eps.value()) * residual.gm,
            iterations: 0,
            bracket_width: 0.0,
        });
    }

    let mut iterations = 0u32;
    let mut lo = 0.0;
    let mut hi = residual.max.max(1.0);
    while residual.eval(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
        iterations += 1;
        if iterations >= cfg.max_iterations || !hi.is_finite() {
            return Err(Error::NoConvergence {
                iterations,
                bracket_width: hi - lo,
            });
        }
    }

    while (hi - lo) / hi >= cfg.rel_tolerance {
        if iterations >= cfg.max_iterations {
            return Err(Error::NoConvergence {
                iterations,
                bracket_width: hi - lo,
            });
        }
        let mid = lo + 0.5 * (hi - lo);
        if residual.eval(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    // `lo` always satisfies the strict calibration condition
    let delta = lo;
    Ok(DeltaSolution {
        delta: Delta::Finite(delta),
        residual: residual.eval(delta),
        iterations,
        bracket_width: hi - lo,
    })
}
