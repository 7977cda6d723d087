use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::carryover::{apply_carryover, true_estimands, CarryoverModel};
use crate::design::{sample, DesignSpec};
use crate::error::{Error, Result};
use crate::estimate::{estimate, Estimand};
use crate::exposure::ProbabilityProvider;
use crate::outcome::OutcomeMatrix;
use crate::rng::derive_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub estimators: Vec<Estimand>,
    pub reps: usize,
    pub alpha: f64,
    pub master_seed: u64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            estimators: vec![Estimand::Tau, Estimand::TauLag(1)],
            reps: 100,
            alpha: 0.05,
            master_seed: 0,
        }
    }
}

/// One estimator evaluated on one sampled assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRecord {
    pub design: String,
    pub design_index: usize,
    pub replicate: usize,
    pub seed: u64,
    pub estimator: Estimand,
    pub estimate: f64,
    pub std_error: f64,
    pub p_value: f64,
    pub rejected: bool,
}

/// Aggregate over replicates for one (design, estimator) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub design: String,
    pub design_index: usize,
    pub estimator: Estimand,
    pub truth: f64,
    pub me: f64,
    pub mse: f64,
    /// Rejection rate; set only when the true effect is exactly zero.
    pub fpr: Option<f64>,
    /// Non-rejection rate; set only when the true effect is non-zero.
    pub fnr: Option<f64>,
    pub reps: usize,
    pub alpha: f64,
    pub estimates: Vec<f64>,
    pub std_errors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub master_seed: u64,
    pub reps: usize,
    pub alpha: f64,
    pub deltas: Vec<f64>,
    pub designs: Vec<DesignSpec>,
    pub cells: Vec<CellSummary>,
    #[serde(skip)]
    pub replicates: Vec<ReplicateRecord>,
}

impl SimulationReport {
    pub fn cell(&self, design_index: usize, estimator: Estimand) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.design_index == design_index && c.estimator == estimator)
    }
}

fn design_labels(specs: &[DesignSpec]) -> Vec<String> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for s in specs {
        *counts.entry(s.kind.slug()).or_default() += 1;
    }
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let slug = s.kind.slug();
            if counts[slug] > 1 {
                format!("{slug}_{}", i + 1)
            } else {
                slug.to_string()
            }
        })
        .collect()
}

fn precheck(base: &OutcomeMatrix, specs: &[DesignSpec], config: &MonteCarloConfig) -> Result<()> {
    if config.reps == 0 {
        return Err(Error::InvalidArgument("reps must be at least 1".into()));
    }
    if !(config.alpha > 0.0 && config.alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie inside (0,1), got {}",
            config.alpha
        )));
    }
    if config.estimators.is_empty() || specs.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least one design and one estimator".into(),
        ));
    }
    if base.n_units() < 2 {
        return Err(Error::InvalidArgument(
            "standard errors need at least 2 units".into(),
        ));
    }
    for (i, spec) in specs.iter().enumerate() {
        spec.validate()?;
        if (spec.n_units, spec.n_steps) != (base.n_units(), base.n_steps()) {
            return Err(Error::Dimension(format!(
                "design {} is {}x{} but the base panel is {}x{}",
                i + 1,
                spec.n_units,
                spec.n_steps,
                base.n_units(),
                base.n_steps()
            )));
        }
        for est in &config.estimators {
            match est.lag() {
                None => {
                    for s in 0..spec.n_steps {
                        spec.marginal(0, s)?;
                    }
                }
                Some(l) => {
                    for s in l..spec.n_steps.max(l + 1) {
                        spec.window(0, s, l)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Samples `reps` assignments per design, injects `model` effects into
/// `base`, and scores every estimator against the true effect.
pub fn monte_carlo(
    base: &OutcomeMatrix,
    specs: &[DesignSpec],
    model: &CarryoverModel,
    config: &MonteCarloConfig,
) -> Result<SimulationReport> {
    precheck(base, specs, config)?;
    let labels = design_labels(specs);

    let truths: Vec<f64> = config
        .estimators
        .iter()
        .map(|est| {
            let t = true_estimands(base, model, est.lag().unwrap_or(0))?;
            Ok(match est {
                Estimand::Tau => t.tau,
                Estimand::TauLag(_) => t.tau_lag,
            })
        })
        .collect::<Result<_>>()?;

    let jobs: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|d| (0..config.reps).map(move |r| (d, r)))
        .collect();
    let per_job: Vec<Vec<ReplicateRecord>> = jobs
        .par_iter()
        .map(|&(d, r)| {
            let spec = &specs[d];
            let seed = derive_seed(config.master_seed, d as u64, r as u64);
            let w = sample(spec, seed)?;
            let y = apply_carryover(base, &w, model)?;
            config
                .estimators
                .iter()
                .map(|&est| {
                    let rep = estimate(&w, &y, est, spec, config.alpha)?;
                    Ok(ReplicateRecord {
                        design: labels[d].clone(),
                        design_index: d,
                        replicate: r,
                        seed,
                        estimator: est,
                        estimate: rep.point,
                        std_error: rep.std_error,
                        p_value: rep.p_value,
                        rejected: rep.rejects_null(),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let replicates: Vec<ReplicateRecord> = per_job.into_iter().flatten().collect();

    let mut cells = Vec::with_capacity(specs.len() * config.estimators.len());
    for (d, label) in labels.iter().enumerate() {
        for (e, &est) in config.estimators.iter().enumerate() {
            let truth = truths[e];
            let recs: Vec<&ReplicateRecord> = replicates
                .iter()
                .filter(|r| r.design_index == d && r.estimator == est)
                .collect();
            let reps = recs.len() as f64;
            let me = recs.iter().map(|r| r.estimate - truth).sum::<f64>() / reps;
            let mse = recs
                .iter()
                .map(|r| (r.estimate - truth).powi(2))
                .sum::<f64>()
                / reps;
            let rejections = recs.iter().filter(|r| r.rejected).count() as f64;
            let (fpr, fnr) = if truth == 0.0 {
                (Some(rejections / reps), None)
            } else {
                (None, Some(1.0 - rejections / reps))
            };
            cells.push(CellSummary {
                design: label.clone(),
                design_index: d,
                estimator: est,
                truth,
                me,
                mse,
                fpr,
                fnr,
                reps: recs.len(),
                alpha: config.alpha,
                estimates: recs.iter().map(|r| r.estimate).collect(),
                std_errors: recs.iter().map(|r| r.std_error).collect(),
            });
        }
    }

    Ok(SimulationReport {
        master_seed: config.master_seed,
        reps: config.reps,
        alpha: config.alpha,
        deltas: model.deltas.clone(),
        designs: specs.to_vec(),
        cells,
        replicates,
    })
}

/// Five-number box summary with Tukey (1.5 IQR) whiskers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxSummary {
    pub min: f64,
    pub whisker_low: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub whisker_high: f64,
    pub max: f64,
    pub mean: f64,
}

impl BoxSummary {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let rank = p * (v.len() - 1) as f64;
            let (lo, hi) = (rank.floor() as usize, rank.ceil() as usize);
            v[lo] + (v[hi] - v[lo]) * (rank - lo as f64)
        };
        let (q1, median, q3) = (q(0.25), q(0.5), q(0.75));
        let iqr = q3 - q1;
        let whisker_low = *v.iter().find(|&&x| x >= q1 - 1.5 * iqr).unwrap();
        let whisker_high = *v.iter().rev().find(|&&x| x <= q3 + 1.5 * iqr).unwrap();
        Some(BoxSummary {
            min: v[0],
            whisker_low,
            q1,
            median,
            q3,
            whisker_high,
            max: v[v.len() - 1],
            mean: v.iter().sum::<f64>() / v.len() as f64,
        })
    }
}

/// A/A summary for one design: distributions of both estimates and of
/// their standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AaSummary {
    pub design: String,
    pub design_index: usize,
    pub lag: usize,
    pub tau: BoxSummary,
    pub tau_lag: BoxSummary,
    pub sigma: BoxSummary,
    pub sigma_lag: BoxSummary,
}

/// Runs the no-effect protocol and summarizes `τ̂`, `τ̂_ℓ` and their
/// standard errors per design.
pub fn aa_study(
    base: &OutcomeMatrix,
    specs: &[DesignSpec],
    reps: usize,
    lag: usize,
    master_seed: u64,
) -> Result<Vec<AaSummary>> {
    let config = MonteCarloConfig {
        estimators: vec![Estimand::Tau, Estimand::TauLag(lag)],
        reps,
        alpha: 0.05,
        master_seed,
    };
    let report = monte_carlo(base, specs, &CarryoverModel::none(), &config)?;
    let summary = |values: &[f64]| BoxSummary::from_values(values).expect("reps >= 1");
    Ok((0..specs.len())
        .map(|d| {
            let plain = report.cell(d, Estimand::Tau).expect("cell exists");
            let lagged = report.cell(d, Estimand::TauLag(lag)).expect("cell exists");
            AaSummary {
                design: plain.design.clone(),
                design_index: d,
                lag,
                tau: summary(&plain.estimates),
                tau_lag: summary(&lagged.estimates),
                sigma: summary(&plain.std_errors),
                sigma_lag: summary(&lagged.std_errors),
            }
        })
        .collect())
}
