use serde::{Deserialize, Serialize};

use crate::design::AssignmentMatrix;
use crate::error::{Error, Result};
use crate::outcome::OutcomeMatrix;

/// Linear additive effects: `Y[n,s] = base[n,s] + Σ_j δ_j W[n,s−j]`, with
/// assignments before the first timestep taken as control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarryoverModel {
    /// `[δ_0, δ_1, …, δ_J]`: direct effect followed by carryover effects.
    pub deltas: Vec<f64>,
}

impl CarryoverModel {
    pub fn new(deltas: Vec<f64>) -> Result<Self> {
        if let Some(d) = deltas.iter().find(|d| !d.is_finite()) {
            return Err(Error::InvalidArgument(format!("effect {d} is not finite")));
        }
        Ok(CarryoverModel { deltas })
    }

    pub fn none() -> Self {
        CarryoverModel { deltas: Vec::new() }
    }

    /// Largest `j` with `δ_j ≠ 0`; 0 when every effect vanishes.
    pub fn carryover_order(&self) -> usize {
        self.deltas.iter().rposition(|&d| d != 0.0).unwrap_or(0)
    }

    pub fn is_null(&self) -> bool {
        self.deltas.iter().all(|&d| d == 0.0)
    }
}

pub fn apply_carryover(
    base: &OutcomeMatrix,
    w: &AssignmentMatrix,
    model: &CarryoverModel,
) -> Result<OutcomeMatrix> {
    if (base.n_units(), base.n_steps()) != (w.n_units(), w.n_steps()) {
        return Err(Error::Dimension(format!(
            "base panel is {}x{} but assignment is {}x{}",
            base.n_units(),
            base.n_steps(),
            w.n_units(),
            w.n_steps()
        )));
    }
    let mut out = base.clone();
    if model.is_null() {
        return Ok(out);
    }
    let n_steps = w.n_steps();
    for n in 0..w.n_units() {
        let row = w.row(n);
        let y = out.row_mut(n);
        for (s, value) in y.iter_mut().enumerate() {
            for (j, &delta) in model.deltas.iter().enumerate().take(s + 1) {
                if delta != 0.0 && row[s - j] == 1 {
                    *value += delta;
                }
            }
        }
        debug_assert_eq!(y.len(), n_steps);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrueEstimands {
    pub tau: f64,
    pub tau_lag: f64,
    pub lag: usize,
}

/// `τ` and `τ_ℓ` of `model` over `base`, from the all-treated and
/// all-control counterfactual panels.
pub fn true_estimands(
    base: &OutcomeMatrix,
    model: &CarryoverModel,
    lag: usize,
) -> Result<TrueEstimands> {
    let (n_units, n_steps) = (base.n_units(), base.n_steps());
    if lag >= n_steps {
        return Err(Error::InvalidArgument(format!(
            "lag {lag} leaves no timesteps out of {n_steps}"
        )));
    }
    let treated = apply_carryover(
        base,
        &AssignmentMatrix::filled(n_units, n_steps, true),
        model,
    )?;
    let control = apply_carryover(
        base,
        &AssignmentMatrix::filled(n_units, n_steps, false),
        model,
    )?;
    let mut all = 0.0;
    let mut lagged = 0.0;
    for (t_row, c_row) in treated.rows().zip(control.rows()) {
        for (s, (t, c)) in t_row.iter().zip(c_row).enumerate() {
            let diff = t - c;
            all += diff;
            if s >= lag {
                lagged += diff;
            }
        }
    }
    Ok(TrueEstimands {
        tau: all / (n_units * n_steps) as f64,
        tau_lag: lagged / (n_units * (n_steps - lag)) as f64,
        lag,
    })
}
