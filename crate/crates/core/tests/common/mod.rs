#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn lognormal(rng: &mut ChaCha8Rng, n: usize, mu: f64, sigma: f64) -> Vec<f64> {
    let dist = LogNormal::new(mu, sigma).unwrap();
    (0..n).map(|_| dist.sample(rng)).collect()
}

/// Log-normal positives with a random fraction (up to 30%) replaced by zeros.
pub fn zero_inflated(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mu = rng.random_range(-3.0..3.0);
    let sigma = rng.random_range(0.5..3.0);
    let zero_fraction = rng.random_range(0.0..0.3);
    let mut v = lognormal(rng, n, mu, sigma);
    for x in v.iter_mut() {
        if rng.random_bool(zero_fraction) {
            *x = 0.0;
        }
    }
    // keep at least two distinct positives
    v[0] = v[0].max(1e-3);
    v[1] = v[0] * 2.0;
    v
}

/// Naive geometric mean via the product, for small well-scaled inputs.
pub fn product_form_gm(xs: &[f64]) -> f64 {
    xs.iter().product::<f64>().powf(1.0 / xs.len() as f64)
}

/// Closed-form shift for a two-point dataset: the root of
/// `sqrt((a + d)(b + d)) = (1 + eps) sqrt(ab) + d`, i.e.
/// `d = ab eps (2 + eps) / ((sqrt a - sqrt b)^2 - 2 eps sqrt(ab))`.
/// `None` when the denominator is not positive (no finite root).
pub fn two_point_delta(a: f64, b: f64, eps: f64) -> Option<f64> {
    let g = (a * b).sqrt();
    let gap = (a.sqrt() - b.sqrt()).powi(2);
    let denom = gap - 2.0 * eps * g;
    (denom > 0.0).then(|| a * b * eps * (2.0 + eps) / denom)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
