//! Horvitz-Thompson estimators of the average treatment effect and of the
//! lag-ℓ average causal effect, their per-unit decompositions and
//! standard errors, and the z-tests used to read them.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;

use crate::design::AssignmentMatrix;
use crate::error::{Error, Result};
use crate::exposure::ProbabilityProvider;
use crate::outcome::OutcomeMatrix;

/// Below this many units the per-unit pass stays on the calling thread.
const PAR_UNITS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimand {
    /// Average treatment effect over all timesteps.
    Tau,
    /// Lag-ℓ average causal effect over timesteps ℓ+1..S.
    TauLag(usize),
}

impl Estimand {
    pub fn lag(self) -> Option<usize> {
        match self {
            Estimand::Tau => None,
            Estimand::TauLag(l) => Some(l),
        }
    }
}

impl fmt::Display for Estimand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Estimand::Tau => f.write_str("tau"),
            Estimand::TauLag(l) => write!(f, "tau_lag{l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimand: Estimand,
    pub point: f64,
    pub std_error: f64,
    pub z: f64,
    pub p_value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub alpha: f64,
    pub n_units: usize,
    pub n_steps_used: usize,
}

impl EstimateReport {
    pub fn rejects_null(&self) -> bool {
        self.p_value < self.alpha
    }
}

/// Per-unit Horvitz-Thompson contributions. Their mean is the point
/// estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitEffects {
    pub effects: Vec<f64>,
    pub lag: Option<usize>,
}

impl UnitEffects {
    pub fn mean(&self) -> f64 {
        self.effects.iter().sum::<f64>() / self.effects.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZTest {
    pub z: f64,
    pub p_value: f64,
}

fn check_shapes(w: &AssignmentMatrix, y: &OutcomeMatrix) -> Result<()> {
    if (w.n_units(), w.n_steps()) != (y.n_units(), y.n_steps()) {
        return Err(Error::Dimension(format!(
            "assignment is {}x{} but outcomes are {}x{}",
            w.n_units(),
            w.n_steps(),
            y.n_units(),
            y.n_steps()
        )));
    }
    Ok(())
}

fn check_open(p: f64, what: &str, n: usize, s: usize) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::Probability(format!(
            "{what} at unit {}, timestep {} is {p}; it must lie strictly inside (0,1)",
            n + 1,
            s + 1
        )))
    }
}

/// Inverse-probability weights per cell: `(1/P(treated), 1/P(control))`
/// for the marginal, or for the all-ones / all-zeros window when lagged.
struct Weights {
    n_steps: usize,
    shared: bool,
    per_cell: Vec<(f64, f64)>,
}

impl Weights {
    fn build<P: ProbabilityProvider + ?Sized>(
        probs: &P,
        n_units: usize,
        n_steps: usize,
        lag: Option<usize>,
    ) -> Result<Self> {
        let first = lag.unwrap_or(0);
        let shared = probs.unit_invariant();
        let rows = if shared { 1 } else { n_units };
        let mut per_cell = Vec::with_capacity(rows * n_steps);
        for n in 0..rows {
            for s in 0..n_steps {
                if s < first {
                    per_cell.push((0.0, 0.0));
                    continue;
                }
                let (t, c) = match lag {
                    None => {
                        let p = check_open(probs.marginal(n, s)?, "P(W=1)", n, s)?;
                        (p, 1.0 - p)
                    }
                    Some(l) => {
                        let (t, c) = probs.window(n, s, l)?;
                        (
                            check_open(t, "all-treated window probability", n, s)?,
                            check_open(c, "all-control window probability", n, s)?,
                        )
                    }
                };
                per_cell.push((1.0 / t, 1.0 / c));
            }
        }
        Ok(Weights {
            n_steps,
            shared,
            per_cell,
        })
    }

    fn row(&self, n: usize) -> &[(f64, f64)] {
        let n = if self.shared { 0 } else { n };
        &self.per_cell[n * self.n_steps..(n + 1) * self.n_steps]
    }
}

/// Contribution of one row: sum over s >= lag of the HT-signed outcome,
/// divided by the number of timesteps used.
fn row_effect(w: &[u8], y: &[f64], weights: &[(f64, f64)], lag: Option<usize>) -> f64 {
    let first = lag.unwrap_or(0);
    let used = (w.len() - first) as f64;
    let mut total = 0.0;
    for s in first..w.len() {
        let window = &w[s - first..=s];
        let (inv_t, inv_c) = weights[s];
        if window.iter().all(|&v| v == 1) {
            total += y[s] * inv_t;
        } else if window.iter().all(|&v| v == 0) {
            total -= y[s] * inv_c;
        }
    }
    total / used
}

/// Per-unit HT effects (ITE_n, or the ℓ-lagged ITE_n when `lag` is set).
pub fn unit_effects<P: ProbabilityProvider + Sync + ?Sized>(
    w: &AssignmentMatrix,
    y: &OutcomeMatrix,
    lag: Option<usize>,
    probs: &P,
) -> Result<UnitEffects> {
    check_shapes(w, y)?;
    if let Some(l) = lag {
        if l + 1 > w.n_steps() {
            return Err(Error::InvalidArgument(format!(
                "lag {l} needs at least {} timesteps, got {}",
                l + 1,
                w.n_steps()
            )));
        }
    }
    let weights = Weights::build(probs, w.n_units(), w.n_steps(), lag)?;
    let effect = |n: usize| row_effect(w.row(n), y.row(n), weights.row(n), lag);
    let effects = if w.n_units() >= PAR_UNITS {
        (0..w.n_units()).into_par_iter().map(effect).collect()
    } else {
        (0..w.n_units()).map(effect).collect()
    };
    Ok(UnitEffects { effects, lag })
}

/// `sqrt( Σ (ITE_n − mean)² / (N(N−1)) )`.
pub fn std_error(effects: &UnitEffects) -> Result<f64> {
    let n = effects.effects.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "standard error needs at least 2 units, got {n}"
        )));
    }
    let mean = effects.mean();
    let ss: f64 = effects.effects.iter().map(|e| (e - mean).powi(2)).sum();
    Ok((ss / (n as f64 * (n as f64 - 1.0))).sqrt())
}

fn two_sided(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
}

/// Two-sided one-sample z-test of `point` against zero.
pub fn one_sample_ztest(point: f64, std_error: f64) -> Result<ZTest> {
    if std_error.is_nan() || std_error < 0.0 || !point.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "z-test needs a finite point and non-negative standard error (got {point}, {std_error})"
        )));
    }
    if std_error == 0.0 {
        if point == 0.0 {
            return Ok(ZTest {
                z: 0.0,
                p_value: 1.0,
            });
        }
        return Err(Error::InvalidArgument(format!(
            "standard error is zero but the point estimate is {point}"
        )));
    }
    let z = point / std_error;
    Ok(ZTest {
        z,
        p_value: two_sided(z),
    })
}

/// Two-sided two-sample z-test of `mean_t − mean_c` with independent
/// standard errors.
pub fn two_sample_ztest(mean_t: f64, mean_c: f64, se_t: f64, se_c: f64) -> Result<ZTest> {
    if !(se_t >= 0.0 && se_c >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "standard errors must be non-negative (got {se_t}, {se_c})"
        )));
    }
    one_sample_ztest(mean_t - mean_c, se_t.hypot(se_c))
}

fn normal_quantile(prob: f64) -> f64 {
    Normal::standard().inverse_cdf(prob)
}

fn report(
    estimand: Estimand,
    effects: &UnitEffects,
    n_steps: usize,
    alpha: f64,
) -> Result<EstimateReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie inside (0,1), got {alpha}"
        )));
    }
    let point = effects.mean();
    let se = std_error(effects)?;
    let test = one_sample_ztest(point, se)?;
    let half_width = normal_quantile(1.0 - alpha / 2.0) * se;
    Ok(EstimateReport {
        estimand,
        point,
        std_error: se,
        z: test.z,
        p_value: test.p_value,
        ci_low: point - half_width,
        ci_high: point + half_width,
        alpha,
        n_units: effects.effects.len(),
        n_steps_used: n_steps - estimand.lag().unwrap_or(0),
    })
}

/// Point estimate only; unlike the full reports this works for a single
/// unit.
pub fn point_estimate<P: ProbabilityProvider + Sync + ?Sized>(
    w: &AssignmentMatrix,
    y: &OutcomeMatrix,
    estimand: Estimand,
    probs: &P,
) -> Result<f64> {
    Ok(unit_effects(w, y, estimand.lag(), probs)?.mean())
}

/// Full report for `estimand` at significance level `alpha`.
pub fn estimate<P: ProbabilityProvider + Sync + ?Sized>(
    w: &AssignmentMatrix,
    y: &OutcomeMatrix,
    estimand: Estimand,
    probs: &P,
    alpha: f64,
) -> Result<EstimateReport> {
    let effects = unit_effects(w, y, estimand.lag(), probs)?;
    report(estimand, &effects, w.n_steps(), alpha)
}

/// Horvitz-Thompson estimate of the average treatment effect (95% CI).
pub fn ht_tau<P: ProbabilityProvider + Sync + ?Sized>(
    w: &AssignmentMatrix,
    y: &OutcomeMatrix,
    probs: &P,
) -> Result<EstimateReport> {
    estimate(w, y, Estimand::Tau, probs, 0.05)
}

/// Horvitz-Thompson estimate of the lag-`lag` causal effect (95% CI).
pub fn ht_tau_lag<P: ProbabilityProvider + Sync + ?Sized>(
    w: &AssignmentMatrix,
    y: &OutcomeMatrix,
    lag: usize,
    probs: &P,
) -> Result<EstimateReport> {
    estimate(w, y, Estimand::TauLag(lag), probs, 0.05)
}

/// Exposure level of an observation under the one-step interference
/// network: current and previous assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exposure {
    DirectAndCarryover,
    DirectOnly,
    CarryoverOnly,
    None,
}

fn exposure(now: u8, prev: u8) -> Exposure {
    match (now, prev) {
        (1, 1) => Exposure::DirectAndCarryover,
        (1, 0) => Exposure::DirectOnly,
        (0, 1) => Exposure::CarryoverOnly,
        _ => Exposure::None,
    }
}

fn exposure_unit_effects<P: ProbabilityProvider + ?Sized>(
    w: &AssignmentMatrix,
    y: &OutcomeMatrix,
    probs: &P,
) -> Result<Vec<f64>> {
    check_shapes(w, y)?;
    if w.n_steps() < 2 {
        return Err(Error::InvalidArgument(
            "exposure mapping needs at least 2 timesteps".into(),
        ));
    }
    let mut out = Vec::with_capacity(w.n_units());
    for n in 0..w.n_units() {
        let (row, ys) = (w.row(n), y.row(n));
        let mut contrast = 0.0;
        for t in 1..w.n_steps() {
            let (pi_11, pi_00) = probs.window(n, t, 1)?;
            check_open(pi_11, "exposure probability of d11", n, t)?;
            check_open(pi_00, "exposure probability of d00", n, t)?;
            match exposure(row[t], row[t - 1]) {
                Exposure::DirectAndCarryover => contrast += ys[t] / pi_11,
                Exposure::None => contrast -= ys[t] / pi_00,
                Exposure::DirectOnly | Exposure::CarryoverOnly => {}
            }
        }
        out.push(contrast / (w.n_steps() - 1) as f64);
    }
    Ok(out)
}

/// Point estimate of the exposure-mapping contrast d11 − d00, scaled per
/// unit-timestep.
pub fn exposure_mapping_point<P: ProbabilityProvider + ?Sized>(
    w: &AssignmentMatrix,
    y: &OutcomeMatrix,
    probs: &P,
) -> Result<f64> {
    let effects = exposure_unit_effects(w, y, probs)?;
    Ok(effects.iter().sum::<f64>() / effects.len() as f64)
}

/// Horvitz-Thompson contrast between the "treated now and one step ago"
/// and "control now and one step ago" exposures of a one-step interference
/// network. Equivalent to [`ht_tau_lag`] at lag 1.
pub fn exposure_mapping_estimate<P: ProbabilityProvider + ?Sized>(
    w: &AssignmentMatrix,
    y: &OutcomeMatrix,
    probs: &P,
) -> Result<EstimateReport> {
    let effects = UnitEffects {
        effects: exposure_unit_effects(w, y, probs)?,
        lag: Some(1),
    };
    report(Estimand::TauLag(1), &effects, w.n_steps(), 0.05)
}
