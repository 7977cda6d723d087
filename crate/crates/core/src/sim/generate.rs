//! Synthetic skewed panels standing in for proprietary sales data.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Distribution, LogNormal, Zeta};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::outcome::OutcomeMatrix;
use crate::rng::rng_from_seed;

/// Item-level sales panel: each item gets a log-normal baseline (or zero),
/// and each timestep multiplies it by log-normal(0, `jitter_sd`) noise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LogNormalParams {
    pub n_units: usize,
    pub n_steps: usize,
    pub mean_log: f64,
    pub sd_log: f64,
    /// Share of items with no sales at all.
    pub zero_frac: f64,
    /// Positive values above this percentile are capped at it.
    pub winsor_pct: f64,
    pub jitter_sd: f64,
    pub seed: u64,
}

impl Default for LogNormalParams {
    fn default() -> Self {
        LogNormalParams {
            n_units: 10_000,
            n_steps: 14,
            mean_log: 2.4507,
            sd_log: 1.4764,
            zero_frac: 0.7,
            winsor_pct: 99.0,
            jitter_sd: 0.1,
            seed: 0,
        }
    }
}

impl LogNormalParams {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.n_units == 0 || self.n_steps == 0 {
            return bad("n_units and n_steps must be positive".into());
        }
        if !(0.0..1.0).contains(&self.zero_frac) {
            return bad(format!(
                "zero_frac must lie in [0,1), got {}",
                self.zero_frac
            ));
        }
        if !(self.winsor_pct > 0.0 && self.winsor_pct <= 100.0) {
            return bad(format!(
                "winsor_pct must lie in (0,100], got {}",
                self.winsor_pct
            ));
        }
        if !(self.sd_log >= 0.0 && self.jitter_sd >= 0.0 && self.mean_log.is_finite()) {
            return bad("sd_log and jitter_sd must be non-negative, mean_log finite".into());
        }
        Ok(())
    }
}

/// Linear-interpolation percentile of sorted data, `pct` in `[0, 100]`.
fn percentile(sorted: &[f64], pct: f64) -> f64 {
    let rank = pct / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
}

pub fn gen_lognormal_items(params: &LogNormalParams) -> Result<OutcomeMatrix> {
    params.validate()?;
    let mut rng = rng_from_seed(params.seed);
    let baseline = LogNormal::new(params.mean_log, params.sd_log)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let jitter =
        LogNormal::new(0.0, params.jitter_sd).map_err(|e| Error::InvalidArgument(e.to_string()))?;

    let mut panel = OutcomeMatrix::zeros(params.n_units, params.n_steps);
    for n in 0..params.n_units {
        let zero = rng.random::<f64>() < params.zero_frac;
        let level = if zero { 0.0 } else { baseline.sample(&mut rng) };
        for v in panel.row_mut(n) {
            *v = level * jitter.sample(&mut rng);
        }
    }

    if params.winsor_pct < 100.0 {
        let mut positive: Vec<f64> = panel
            .as_slice()
            .iter()
            .copied()
            .filter(|&v| v > 0.0)
            .collect();
        if !positive.is_empty() {
            positive.sort_by(f64::total_cmp);
            let cap = percentile(&positive, params.winsor_pct);
            for v in panel.values_mut() {
                *v = v.min(cap);
            }
        }
    }
    Ok(panel)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyRow {
    pub value: u64,
    pub users: u64,
    pub frequency: f64,
    /// `coefficient * value^(−exponent)`.
    pub fitted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawSample {
    pub n_users: usize,
    pub coefficient: f64,
    pub exponent: f64,
    pub seed: u64,
    pub skewness: f64,
    pub table: Vec<FrequencyRow>,
    #[serde(skip)]
    pub counts: Vec<u64>,
}

/// Per-user purchase counts from a discrete power law `P(x) ∝ x^(−exponent)`,
/// tabulated by count.
pub fn gen_powerlaw_users(
    n_users: usize,
    coefficient: f64,
    exponent: f64,
    seed: u64,
) -> Result<PowerLawSample> {
    if exponent.is_nan() || exponent <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "power-law exponent must exceed 1, got {exponent}"
        )));
    }
    if n_users == 0 {
        return Err(Error::InvalidArgument("n_users must be positive".into()));
    }
    let zeta = Zeta::new(exponent).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = rng_from_seed(seed);
    let counts: Vec<u64> = (0..n_users)
        .map(|_| {
            let x: f64 = zeta.sample(&mut rng);
            x.min(u64::MAX as f64) as u64
        })
        .collect();
    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    for &c in &counts {
        *tally.entry(c).or_default() += 1;
    }
    let table = tally
        .into_iter()
        .map(|(value, users)| FrequencyRow {
            value,
            users,
            frequency: users as f64 / n_users as f64,
            fitted: coefficient * (value as f64).powf(-exponent),
        })
        .collect();
    let as_f64: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    Ok(PowerLawSample {
        n_users,
        coefficient,
        exponent,
        seed,
        skewness: sample_skewness(&as_f64),
        table,
        counts,
    })
}

/// Fisher-Pearson skewness `m3 / m2^(3/2)`.
pub fn sample_skewness(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (m2, m3) = values.iter().fold((0.0, 0.0), |(m2, m3), &v| {
        let d = v - mean;
        (m2 + d * d, m3 + d * d * d)
    });
    (m3 / n) / (m2 / n).powf(1.5)
}
