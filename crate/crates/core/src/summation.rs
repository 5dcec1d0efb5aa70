//! Compensated (Kahan–Babuška–Neumaier) summation.

use std::ops::AddAssign;

use rayon::prelude::*;

/// Chunk length for [`map_sum`]. Chunk boundaries are fixed, so the result
/// does not depend on the number of worker threads.
const CHUNK: usize = 1 << 15;

/// Running sum that carries a separate error term so that the result is
/// insensitive to the order of accumulation up to a few ulps.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator of values.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<NeumaierSum>().value()
}

/// Compensated sum of `f(x)` over `values`.
///
/// Large inputs are split into fixed-size chunks that are summed in
/// parallel; the per-chunk partial sums are then combined in order.
pub fn map_sum<F>(values: &[f64], f: F) -> f64
where
    F: Fn(f64) -> f64 + Sync,
{
    if values.len() <= CHUNK {
        return values
            .iter()
            .map(|&x| f(x))
            .collect::<NeumaierSum>()
            .value();
    }
    let partials: Vec<NeumaierSum> = values
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().map(|&x| f(x)).collect::<NeumaierSum>())
        .collect();
    let mut total = NeumaierSum::new();
    for p in partials {
        total.add(p.sum);
        total.add(p.compensation);
    }
    total.value()
}
