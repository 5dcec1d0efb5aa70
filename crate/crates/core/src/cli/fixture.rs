//! Seeded zero-inflated log-normal fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixtureSpec {
    /// Number of positive (log-normal) values.
    pub n: usize,
    /// Location of `ln x`.
    pub mu: f64,
    /// Scale of `ln x`.
    pub sigma: f64,
    pub zeros: usize,
    pub seed: u64,
    /// Standardise the sampled normal deviates so the sample mean and
    /// population SD of `ln x` equal `mu` and `sigma` exactly.
    pub exact_log_moments: bool,
}

/// Draws `n` log-normal values and `zeros` zeros, in shuffled order.
///
/// The output depends only on the spec: the same seed always yields the same
/// values.
pub fn generate(spec: &FixtureSpec) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut z: Vec<f64> = (0..spec.n).map(|_| rng.sample(StandardNormal)).collect();

    if spec.exact_log_moments && spec.n >= 2 {
        let n = spec.n as f64;
        let mean = z.iter().sum::<f64>() / n;
        let sd = (z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
        if sd > 0.0 {
            z.iter_mut().for_each(|v| *v = (*v - mean) / sd);
        }
    }

    let mut values: Vec<f64> = z
        .into_iter()
        .map(|v| (spec.mu + spec.sigma * v).exp())
        .collect();
    values.resize(spec.n + spec.zeros, 0.0);
    values.shuffle(&mut rng);
    values
}
