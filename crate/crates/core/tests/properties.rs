mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{rel, rng, zero_inflated};
use geomext::{
    arithmetic_mean, compare_datasets, delta_residual, extended_geometric_mean, geometric_mean,
    geometric_sd, make_dataset, plus_one_mean, shifted_geometric_mean, solve_delta, Dataset, Delta,
    Epsilon, SolverConfig,
};

fn eps(v: f64) -> Epsilon {
    Epsilon::new(v).unwrap()
}

const EPSILONS: [f64; 3] = [1e-5, 1e-4, 1e-3];

fn positive() -> impl Strategy<Value = f64> {
    (-4.0f64..4.0).prop_map(|e| 10f64.powf(e))
}

fn positives(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(positive(), 1..max)
}

/// Positives with at least two distinct values, plus up to `max` zeros.
fn with_zeros(max: usize) -> impl Strategy<Value = Vec<f64>> {
    (prop::collection::vec(positive(), 2..max), 0..max).prop_filter_map(
        "needs spread",
        |(mut v, zeros)| {
            if v.iter().all(|&x| x == v[0]) {
                return None;
            }
            v.extend(std::iter::repeat_n(0.0, zeros));
            Some(v)
        },
    )
}

fn ds(v: &[f64]) -> Dataset {
    make_dataset(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn singleton_gm_is_exact(x in positive()) {
        prop_assert_eq!(geometric_mean(&[x]).unwrap(), x);
    }

    #[test]
    fn am_gm_bounds(xs in positives(60)) {
        let g = geometric_mean(&xs).unwrap();
        let a = arithmetic_mean(&ds(&xs));
        let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let all_equal = xs.iter().all(|&x| x == xs[0]);
        prop_assert!(min * (1.0 - 1e-14) <= g);
        prop_assert!(g <= a * (1.0 + 1e-14));
        if all_equal {
            prop_assert_eq!(g, a);
        } else {
            prop_assert!(g < a);
        }
    }

    #[test]
    fn gm_scale_equivariance(xs in positives(60)) {
        let g = geometric_mean(&xs).unwrap();
        for c in [1e-6, 1.0, 1e6] {
            let scaled: Vec<f64> = xs.iter().map(|x| c * x).collect();
            prop_assert!(rel(geometric_mean(&scaled).unwrap(), c * g) < 1e-12);
        }
    }

    #[test]
    fn gsd_scale_invariance(xs in positives(60)) {
        let s = geometric_sd(&xs).unwrap();
        for c in [1e-6, 1e6] {
            let scaled: Vec<f64> = xs.iter().map(|x| c * x).collect();
            prop_assert!(rel(geometric_sd(&scaled).unwrap(), s) < 1e-12);
        }
    }

    #[test]
    fn plus_one_equals_gm_on_constant_data(c in positive(), n in 1usize..10) {
        let xs = vec![c; n];
        prop_assert_eq!(plus_one_mean(&ds(&xs)), geometric_mean(&xs).unwrap());
    }

    #[test]
    fn recovery(xs in positives(100)) {
        let d = ds(&xs);
        let g = geometric_mean(&xs).unwrap();
        for e in EPSILONS {
            let m = extended_geometric_mean(&d, eps(e)).unwrap().mean;
            prop_assert!((m - g).abs() <= e * g, "eps {}: {} vs {}", e, m, g);
        }
    }

    #[test]
    fn appending_zeros_never_raises(xs in with_zeros(40), k in 1usize..200) {
        let d = ds(&xs);
        let more = d.with_zeros(k);
        for e in EPSILONS {
            let before = extended_geometric_mean(&d, eps(e)).unwrap().mean;
            let after = extended_geometric_mean(&more, eps(e)).unwrap().mean;
            prop_assert!(after <= before);
        }
    }

    #[test]
    fn shared_delta_dominance(
        pairs in prop::collection::vec((0.0f64..100.0, 0.0f64..10.0), 1..50),
        delta in positive(),
    ) {
        let lower: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let upper: Vec<f64> = pairs.iter().map(|p| p.0 + p.1).collect();
        prop_assert!(shifted_geometric_mean(&ds(&upper), delta) >= shifted_geometric_mean(&ds(&lower), delta));
    }

    #[test]
    fn shifted_mean_increasing_in_delta(xs in with_zeros(30)) {
        let d = ds(&xs);
        let values: Vec<f64> = [1e-6, 1e-3, 1.0, 1e3].iter().map(|&t| shifted_geometric_mean(&d, t)).collect();
        prop_assert!(values.windows(2).all(|w| w[1] > w[0]), "{:?}", values);
    }

    #[test]
    fn delta_scale_equivariance(xs in prop::collection::vec(positive(), 2..40)) {
        let cfg = SolverConfig::default();
        for e in EPSILONS {
            let base = solve_delta(&xs, eps(e), &cfg).unwrap().delta;
            for c in [1e-3, 1e3] {
                let scaled: Vec<f64> = xs.iter().map(|x| c * x).collect();
                let got = solve_delta(&scaled, eps(e), &cfg).unwrap().delta;
                match (base, got) {
                    (Delta::Finite(a), Delta::Finite(b)) => prop_assert!(rel(b, c * a) < 1e-9),
                    (a, b) => prop_assert_eq!(a, b),
                }
            }
        }
    }

    #[test]
    fn delta_monotone_in_epsilon(xs in prop::collection::vec(positive(), 2..40)) {
        let cfg = SolverConfig::default();
        let deltas: Vec<Option<f64>> = [1e-6, 1e-5, 1e-4, 1e-3, 1e-2]
            .iter()
            .map(|&e| solve_delta(&xs, eps(e), &cfg).unwrap().delta.finite())
            .collect();
        for w in deltas.windows(2) {
            if let (Some(a), Some(b)) = (w[0], w[1]) {
                prop_assert!(a < b);
            }
            if w[0].is_none() {
                prop_assert!(w[1].is_none());
            }
        }
    }

    #[test]
    fn compare_invariants(sets in prop::collection::vec(with_zeros(20), 1..5), e in 0usize..3) {
        let data: Vec<Dataset> = sets.iter().map(|v| ds(v)).collect();
        let e = eps(EPSILONS[e]);
        let report = compare_datasets(&data, e).unwrap();
        for entry in &report.entries {
            if let (Some(own), Some(min)) = (entry.delta.finite(), report.delta_min.finite()) {
                prop_assert!(min <= own);
            }
            prop_assert!(entry.unified_mean <= entry.own_mean * (1.0 + 1e-14));
        }

        let mut reversed = data.clone();
        reversed.reverse();
        let back = compare_datasets(&reversed, e).unwrap();
        prop_assert_eq!(back.delta_min, report.delta_min);
        for (a, b) in report.entries.iter().zip(back.entries.iter().rev()) {
            prop_assert_eq!(a.delta, b.delta);
            prop_assert_eq!(a.unified_mean, b.unified_mean);
            prop_assert_eq!(a.own_mean, b.own_mean);
        }
    }
}

#[test]
fn solver_root_correctness() {
    let mut r = rng(21);
    let cfg = SolverConfig::default();
    for n in [2usize, 10, 1000] {
        for _ in 0..50 {
            let (mu, sigma) = (r.random_range(-3.0..3.0), r.random_range(0.5..3.0));
            let xs = common::lognormal(&mut r, n, mu, sigma);
            let g = geometric_mean(&xs).unwrap();
            for e in EPSILONS {
                let Some(delta) = solve_delta(&xs, eps(e), &cfg).unwrap().delta.finite() else {
                    continue;
                };
                let gap = shifted_geometric_mean(&ds(&xs), delta) - g;
                let target = e * g;
                assert!(
                    gap >= target * (1.0 - 1e-6) && gap <= target * (1.0 + 1e-6),
                    "n={n} eps={e}: {gap:e} vs {target:e}"
                );
                assert!(delta_residual(&xs, 0.99 * delta, eps(e)) < 0.0);
                assert!(delta_residual(&xs, 1.01 * delta, eps(e)) > 0.0);
            }
        }
    }
}

#[test]
fn zero_flood_limit() {
    let mut r = rng(22);
    for _ in 0..20 {
        let n = r.random_range(10..200);
        let d = ds(&zero_inflated(&mut r, n));
        let res = extended_geometric_mean(&d, eps(1e-5)).unwrap();
        let delta = res.delta.finite().unwrap();
        let flooded = extended_geometric_mean(&d.with_zeros(100_000), eps(1e-5)).unwrap();
        assert!(flooded.mean < 10.0 * delta);
    }
}

/// Per-dataset shifts do not make the extended mean monotone across datasets;
/// this only reports how often the ordering flips.
#[test]
fn per_dataset_monotonicity_is_empirical() {
    let mut r = rng(23);
    let e = eps(1e-3);
    let mut violations = 0;
    let trials = 2000;
    for _ in 0..trials {
        let n = r.random_range(3..30);
        let lower = zero_inflated(&mut r, n);
        let upper: Vec<f64> = lower
            .iter()
            .map(|&x| x * (1.0 + r.random::<f64>()))
            .collect();
        let a = extended_geometric_mean(&ds(&upper), e).unwrap().mean;
        let b = extended_geometric_mean(&ds(&lower), e).unwrap().mean;
        if a < b {
            violations += 1;
        }
    }
    println!("per-dataset ordering violated in {violations} of {trials} pairs");
}
