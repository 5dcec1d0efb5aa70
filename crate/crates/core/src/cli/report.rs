//! Summary reports for `compute` and `compare`.

use serde::Serialize;

use super::format::{fmt_opt, fmt_sig, ser_sig, ser_sig_opt};
use super::sweep::fmt_delta;
use crate::compare::ComparisonReport;
use crate::error::Result;
use crate::estimators::{
    extended_from_solution, habib_mean, modified_gsd, plus_one_mean, trivial_result, Epsilon,
    ExtendedMeanResult,
};
use crate::solver::{solve_delta, threshold_unchecked, SolverConfig};
use crate::stats::{arithmetic_mean, geometric_mean_unchecked, geometric_sd_unchecked, Dataset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GsdStatus {
    Ok,
    UnboundedDelta,
    DegenerateDataset,
}

impl GsdStatus {
    fn as_str(self) -> &'static str {
        match self {
            GsdStatus::Ok => "ok",
            GsdStatus::UnboundedDelta => "unbounded_delta",
            GsdStatus::DegenerateDataset => "degenerate_dataset",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonEstimate {
    pub epsilon: Epsilon,
    #[serde(serialize_with = "ser_sig_opt")]
    pub delta: Option<f64>,
    pub unbounded: bool,
    pub trivial_case: bool,
    #[serde(serialize_with = "ser_sig")]
    pub extended_mean: f64,
    #[serde(serialize_with = "ser_sig_opt")]
    pub extended_gsd: Option<f64>,
    pub gsd_status: GsdStatus,
    pub solver_iterations: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComputeReport {
    pub n: usize,
    pub positives: usize,
    pub zeros: usize,
    #[serde(serialize_with = "ser_sig")]
    pub arithmetic_mean: f64,
    /// Plain geometric mean of the whole dataset: zero whenever a zero is
    /// present.
    #[serde(serialize_with = "ser_sig")]
    pub geometric_mean: f64,
    #[serde(serialize_with = "ser_sig_opt")]
    pub geometric_mean_positive: Option<f64>,
    #[serde(serialize_with = "ser_sig_opt")]
    pub geometric_sd_positive: Option<f64>,
    #[serde(serialize_with = "ser_sig")]
    pub habib: f64,
    #[serde(serialize_with = "ser_sig")]
    pub plus_one: f64,
    /// Largest epsilon with a finite shift, `(A - G) / G` over the positives.
    #[serde(serialize_with = "ser_sig_opt")]
    pub unboundedness_threshold: Option<f64>,
    pub estimates: Vec<EpsilonEstimate>,
}

pub fn compute_report(
    d: &Dataset,
    epsilons: &[Epsilon],
    cfg: &SolverConfig,
) -> Result<ComputeReport> {
    let s = d.split();
    let has_positives = !s.positives.is_empty();
    let gm_positive = has_positives.then(|| geometric_mean_unchecked(&s.positives));

    let mut estimates = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let estimate = if let Some(c) = d.constant_value() {
            estimate_from(
                trivial_result(c, eps),
                None,
                GsdStatus::DegenerateDataset,
                0,
            )
        } else {
            let solution = solve_delta(&s.positives, eps, cfg)?;
            let result = extended_from_solution(d, &s, eps, &solution);
            match solution.delta.finite() {
                Some(delta) => {
                    let gsd = modified_gsd(&s.positives, s.zero_count, delta, result.mean);
                    estimate_from(result, Some(gsd), GsdStatus::Ok, solution.iterations)
                }
                None => estimate_from(result, None, GsdStatus::UnboundedDelta, solution.iterations),
            }
        };
        estimates.push(estimate);
    }

    Ok(ComputeReport {
        n: d.len(),
        positives: s.positives.len(),
        zeros: s.zero_count,
        arithmetic_mean: arithmetic_mean(d),
        geometric_mean: if s.zero_count > 0 {
            0.0
        } else {
            gm_positive.unwrap_or(0.0)
        },
        geometric_mean_positive: gm_positive,
        geometric_sd_positive: has_positives.then(|| geometric_sd_unchecked(&s.positives)),
        habib: habib_mean(&s),
        plus_one: plus_one_mean(d),
        unboundedness_threshold: has_positives.then(|| threshold_unchecked(&s.positives)),
        estimates,
    })
}

fn estimate_from(
    r: ExtendedMeanResult,
    gsd: Option<f64>,
    status: GsdStatus,
    iterations: u32,
) -> EpsilonEstimate {
    EpsilonEstimate {
        epsilon: r.epsilon,
        delta: r.delta.finite(),
        unbounded: r.unbounded,
        trivial_case: r.trivial_case,
        extended_mean: r.mean,
        extended_gsd: gsd,
        gsd_status: status,
        solver_iterations: iterations,
    }
}

const COMPUTE_HEADER: &[&str] = &[
    "epsilon",
    "n",
    "positives",
    "zeros",
    "arithmetic_mean",
    "geometric_mean",
    "geometric_mean_positive",
    "geometric_sd_positive",
    "habib",
    "plus_one",
    "unboundedness_threshold",
    "delta",
    "unbounded",
    "trivial_case",
    "extended_mean",
    "extended_gsd",
    "gsd_status",
    "solver_iterations",
];

impl ComputeReport {
    pub fn to_tsv(&self) -> String {
        let mut out = COMPUTE_HEADER.join("\t");
        out.push('\n');
        for e in &self.estimates {
            let fields = [
                e.epsilon.to_string(),
                self.n.to_string(),
                self.positives.to_string(),
                self.zeros.to_string(),
                fmt_sig(self.arithmetic_mean),
                fmt_sig(self.geometric_mean),
                fmt_opt(self.geometric_mean_positive),
                fmt_opt(self.geometric_sd_positive),
                fmt_sig(self.habib),
                fmt_sig(self.plus_one),
                fmt_opt(self.unboundedness_threshold),
                e.delta.map_or_else(|| "unbounded".to_string(), fmt_sig),
                e.unbounded.to_string(),
                e.trivial_case.to_string(),
                fmt_sig(e.extended_mean),
                fmt_opt(e.extended_gsd),
                e.gsd_status.as_str().to_string(),
                e.solver_iterations.to_string(),
            ];
            out.push_str(&fields.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("compute report serialises") + "\n"
    }
}

pub fn comparison_tsv(report: &ComparisonReport) -> String {
    let mut out = String::from(
        "label\tepsilon\tdelta_min\tdelta\tunbounded\ttrivial_case\town_mean\tunified_mean\n",
    );
    for e in &report.entries {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            e.label,
            report.epsilon,
            fmt_delta(report.delta_min),
            fmt_delta(e.delta),
            e.delta.is_unbounded(),
            e.trivial_case,
            fmt_sig(e.own_mean),
            fmt_sig(e.unified_mean),
        ));
    }
    out
}

pub fn comparison_json(report: &ComparisonReport) -> String {
    #[derive(Serialize)]
    struct Entry<'a> {
        label: &'a str,
        #[serde(serialize_with = "ser_sig_opt")]
        delta: Option<f64>,
        unbounded: bool,
        trivial_case: bool,
        #[serde(serialize_with = "ser_sig")]
        own_mean: f64,
        #[serde(serialize_with = "ser_sig")]
        unified_mean: f64,
    }
    #[derive(Serialize)]
    struct Report<'a> {
        epsilon: Epsilon,
        #[serde(serialize_with = "ser_sig_opt")]
        delta_min: Option<f64>,
        delta_min_unbounded: bool,
        datasets: Vec<Entry<'a>>,
    }
    let view = Report {
        epsilon: report.epsilon,
        delta_min: report.delta_min.finite(),
        delta_min_unbounded: report.delta_min.is_unbounded(),
        datasets: report
            .entries
            .iter()
            .map(|e| Entry {
                label: &e.label,
                delta: e.delta.finite(),
                unbounded: e.delta.is_unbounded(),
                trivial_case: e.trivial_case,
                own_mean: e.own_mean,
                unified_mean: e.unified_mean,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&view).expect("comparison report serialises") + "\n"
}
