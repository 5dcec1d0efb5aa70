//! Estimators as a function of the number of zeros appended to a dataset.
//!
//! The calibrated shift depends only on the positives, so it is solved once
//! per epsilon and reused for every row. Per-row work is constant except for
//! the modified geometric SD, which needs one pass over the positives.

use rayon::prelude::*;
use serde::Serialize;

use super::format::{fmt_opt, fmt_sig, ser_sig, ser_sig_opt};
use crate::error::{Error, Result};
use crate::estimators::{habib_from_log_sum, modified_gsd, Epsilon, ShiftedKernel};
use crate::solver::{solve_delta, Delta, SolverConfig};
use crate::stats::Dataset;
use crate::summation::map_sum;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepColumn {
    pub epsilon: Epsilon,
    pub delta: Delta,
    pub unbounded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub zeros_added: usize,
    pub habib: f64,
    pub plus_one: f64,
    /// Extended mean for each column, in column order.
    pub extended: Vec<f64>,
    /// Modified geometric SD for each column; `None` where undefined.
    pub gsd_extended: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<SweepColumn>,
    pub rows: Vec<SweepRow>,
}

/// Evaluates every estimator on `d` with `0, step, 2 step, ..., <= max_zeros`
/// zeros appended.
pub fn sweep_zeros(
    d: &Dataset,
    epsilons: &[Epsilon],
    max_zeros: usize,
    step: usize,
    cfg: &SolverConfig,
) -> Result<SweepTable> {
    if step == 0 {
        return Err(Error::InvalidConfig("sweep step must be >= 1".into()));
    }
    let s = d.split();
    if s.positives.is_empty() {
        return Err(Error::NoPositives);
    }
    let n = s.positives.len();
    let log_sum = map_sum(&s.positives, f64::ln);
    let plus_one_sum = map_sum(&s.positives, f64::ln_1p);
    let linear_sum = map_sum(&s.positives, |x| x);
    let constant = d.constant_value();

    let mut columns = Vec::with_capacity(epsilons.len());
    let mut kernels = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let delta = solve_delta(&s.positives, eps, cfg)?.delta;
        kernels.push(
            delta
                .finite()
                .map(|dv| (dv, ShiftedKernel::new(&s.positives, d.max(), dv))),
        );
        columns.push(SweepColumn {
            epsilon: eps,
            delta,
            unbounded: delta.is_unbounded(),
        });
    }

    let rows = (0..=max_zeros)
        .step_by(step)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            let m = s.zero_count + k;
            let total = (n + m) as f64;
            let row_constant = if k == 0 { constant } else { None };
            let mut extended = Vec::with_capacity(kernels.len());
            let mut gsd_extended = Vec::with_capacity(kernels.len());
            for kernel in &kernels {
                match (row_constant, kernel) {
                    (Some(c), _) => {
                        extended.push(c);
                        gsd_extended.push(None);
                    }
                    (None, Some((delta, kernel))) => {
                        let mean = kernel.mean(m);
                        extended.push(mean);
                        gsd_extended.push(Some(modified_gsd(&s.positives, m, *delta, mean)));
                    }
                    (None, None) => {
                        extended.push(linear_sum / total);
                        gsd_extended.push(None);
                    }
                }
            }
            SweepRow {
                zeros_added: k,
                habib: habib_from_log_sum(n, m, log_sum),
                plus_one: row_constant.unwrap_or_else(|| (plus_one_sum / total).exp_m1()),
                extended,
                gsd_extended,
            }
        })
        .collect();

    Ok(SweepTable { columns, rows })
}

impl SweepTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("zeros_added\thabib\tplus_one");
        for c in &self.columns {
            let e = c.epsilon;
            out.push_str(&format!("\textended[{e}]\tdelta[{e}]\tgsd_extended[{e}]"));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}",
                row.zeros_added,
                fmt_sig(row.habib),
                fmt_sig(row.plus_one)
            ));
            for (i, c) in self.columns.iter().enumerate() {
                out.push_str(&format!(
                    "\t{}\t{}\t{}",
                    fmt_sig(row.extended[i]),
                    fmt_delta(c.delta),
                    fmt_opt(row.gsd_extended[i])
                ));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Column {
            epsilon: Epsilon,
            #[serde(serialize_with = "ser_sig_opt")]
            delta: Option<f64>,
            unbounded: bool,
        }
        #[derive(Serialize)]
        struct Cell {
            epsilon: Epsilon,
            #[serde(serialize_with = "ser_sig")]
            extended: f64,
            #[serde(serialize_with = "ser_sig_opt")]
            gsd_extended: Option<f64>,
        }
        #[derive(Serialize)]
        struct Row {
            zeros_added: usize,
            #[serde(serialize_with = "ser_sig")]
            habib: f64,
            #[serde(serialize_with = "ser_sig")]
            plus_one: f64,
            extended: Vec<Cell>,
        }
        #[derive(Serialize)]
        struct Table {
            columns: Vec<Column>,
            rows: Vec<Row>,
        }

        let table = Table {
            columns: self
                .columns
                .iter()
                .map(|c| Column {
                    epsilon: c.epsilon,
                    delta: c.delta.finite(),
                    unbounded: c.unbounded,
                })
                .collect(),
            rows: self
                .rows
                .iter()
                .map(|r| Row {
                    zeros_added: r.zeros_added,
                    habib: r.habib,
                    plus_one: r.plus_one,
                    extended: self
                        .columns
                        .iter()
                        .enumerate()
                        .map(|(i, c)| Cell {
                            epsilon: c.epsilon,
                            extended: r.extended[i],
                            gsd_extended: r.gsd_extended[i],
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&table).expect("sweep table serialises") + "\n"
    }
}

pub(crate) fn fmt_delta(delta: Delta) -> String {
    match delta {
        Delta::Finite(d) => fmt_sig(d),
        Delta::Unbounded => "unbounded".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::{extended_geometric_mean, extended_geometric_sd, habib_mean};
    use crate::stats::make_dataset;

    #[test]
    fn rows_match_direct_evaluation() {
        let d = make_dataset(&[0.3, 2.0, 9.0, 0.0, 1.1]).unwrap();
        let eps = [Epsilon::new(1e-3).unwrap(), Epsilon::new(1e-2).unwrap()];
        let table = sweep_zeros(&d, &eps, 40, 7, &SolverConfig::default()).unwrap();
        let ks: Vec<usize> = table.rows.iter().map(|r| r.zeros_added).collect();
        assert_eq!(ks, vec![0, 7, 14, 21, 28, 35]);
        for row in &table.rows {
            let dk = d.with_zeros(row.zeros_added);
            let h = habib_mean(&dk.split());
            assert!((row.habib - h).abs() <= 1e-14 * h);
            for (i, &e) in eps.iter().enumerate() {
                let direct = extended_geometric_mean(&dk, e).unwrap().mean;
                assert_eq!(row.extended[i], direct);
                let gsd = extended_geometric_sd(&dk, e).unwrap().gsd;
                assert!((row.gsd_extended[i].unwrap() - gsd).abs() <= 1e-12 * gsd);
            }
        }
    }

    #[test]
    fn requires_positives_and_step() {
        let zeros = make_dataset(&[0.0, 0.0]).unwrap();
        assert_eq!(
            sweep_zeros(
                &zeros,
                &[Epsilon::default()],
                5,
                1,
                &SolverConfig::default()
            ),
            Err(Error::NoPositives)
        );
        let d = make_dataset(&[1.0, 2.0]).unwrap();
        assert!(sweep_zeros(&d, &[Epsilon::default()], 5, 0, &SolverConfig::default()).is_err());
    }

    #[test]
    fn constant_dataset_first_row() {
        let d = make_dataset(&[2.0, 2.0]).unwrap();
        let table = sweep_zeros(&d, &[Epsilon::default()], 2, 1, &SolverConfig::default()).unwrap();
        assert_eq!(table.rows[0].extended[0], 2.0);
        assert_eq!(table.rows[0].plus_one, 2.0);
        assert_eq!(table.rows[0].gsd_extended[0], None);
        // unbounded delta: arithmetic mean 4/3, then 1
        assert!((table.rows[1].extended[0] - 4.0 / 3.0).abs() < 1e-15);
        assert!((table.rows[2].extended[0] - 1.0).abs() < 1e-15);
        assert!(table.to_tsv().contains("undefined"));
    }
}
