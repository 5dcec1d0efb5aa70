//! Validated datasets and the classical statistics the zero-safe estimators
//! are measured against.
//!
//! Everything here works in log space: the geometric mean is computed as
//! `exp(mean(ln x))` with a compensated log-sum, never as an n-th root of a
//! product.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::summation::map_sum;

/// A nonempty sequence of finite, nonnegative observations.
///
/// Validation happens once, here; everything downstream relies on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    values: Vec<f64>,
    #[serde(skip)]
    min: f64,
    #[serde(skip)]
    max: f64,
}

impl Dataset {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeValue { index, value });
            }
            min = min.min(value);
            max = max.max(value);
        }
        // -0.0 compares equal to 0.0 but would print as "-0"
        let values = values.into_iter().map(|v| v + 0.0).collect();
        Ok(Dataset {
            values,
            min: min + 0.0,
            max,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    /// `Some(c)` when every observation equals `c`.
    pub fn constant_value(&self) -> Option<f64> {
        (self.min == self.max).then_some(self.min)
    }

    pub fn split(&self) -> SplitView {
        split(self)
    }

    /// A copy of this dataset with `count` zeros appended.
    pub fn with_zeros(&self, count: usize) -> Dataset {
        let mut values = self.values.clone();
        values.resize(values.len() + count, 0.0);
        Dataset {
            values,
            min: if count > 0 { 0.0 } else { self.min },
            max: self.max,
        }
    }
}

impl TryFrom<Vec<f64>> for Dataset {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Dataset::new(values)
    }
}

pub fn make_dataset(raw: &[f64]) -> Result<Dataset> {
    Dataset::new(raw.to_vec())
}

/// The strictly positive observations of a dataset together with the number
/// of zeros that were set aside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitView {
    pub positives: Vec<f64>,
    pub zero_count: usize,
}

impl SplitView {
    pub fn total(&self) -> usize {
        self.positives.len() + self.zero_count
    }

    pub fn positive_count(&self) -> usize {
        self.positives.len()
    }
}

pub fn split(d: &Dataset) -> SplitView {
    let positives: Vec<f64> = d.values.iter().copied().filter(|&x| x > 0.0).collect();
    let zero_count = d.len() - positives.len();
    SplitView {
        positives,
        zero_count,
    }
}

pub(crate) fn check_positive(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index });
        }
        if value <= 0.0 {
            return Err(Error::NonPositiveValue { index, value });
        }
    }
    Ok(())
}

fn all_equal(values: &[f64]) -> Option<f64> {
    let first = *values.first()?;
    values.iter().all(|&v| v == first).then_some(first)
}

/// Mean of `ln x` over already validated positives.
pub(crate) fn mean_log(positives: &[f64]) -> f64 {
    map_sum(positives, f64::ln) / positives.len() as f64
}

pub(crate) fn geometric_mean_unchecked(positives: &[f64]) -> f64 {
    if let Some(c) = all_equal(positives) {
        return c;
    }
    mean_log(positives).exp()
}

/// Geometric mean of strictly positive values, `exp(mean(ln x))`.
///
/// A constant input returns that constant exactly.
pub fn geometric_mean(positives: &[f64]) -> Result<f64> {
    check_positive(positives)?;
    Ok(geometric_mean_unchecked(positives))
}

pub fn arithmetic_mean(d: &Dataset) -> f64 {
    if let Some(c) = d.constant_value() {
        return c;
    }
    map_sum(&d.values, |x| x) / d.len() as f64
}

pub(crate) fn geometric_sd_unchecked(positives: &[f64]) -> f64 {
    if all_equal(positives).is_some() {
        return 1.0;
    }
    let centre = mean_log(positives);
    let msd = map_sum(positives, |x| {
        let dev = x.ln() - centre;
        dev * dev
    }) / positives.len() as f64;
    msd.sqrt().exp()
}

/// Geometric standard deviation, `exp(sqrt(mean((ln(x / G))^2)))`.
///
/// This is a multiplicative spread factor and is always `>= 1`.
pub fn geometric_sd(positives: &[f64]) -> Result<f64> {
    check_positive(positives)?;
    Ok(geometric_sd_unchecked(positives))
}
