// Semi-synthetic A/B simulation: inject direct and first-order carryover
// effects into a skewed sales panel and compare item randomization, a
// regular multi-unit switchback and an RBSD under both estimators.
//
// Run with `cargo run --release --example carryover_table`.

use switchback::estimate::Estimand;
use switchback::sim::{
    gen_lognormal_items, monte_carlo, CarryoverModel, LogNormalParams, MonteCarloConfig,
    SimulationReport,
};
use switchback::{DesignSpec, Result};

pub const EFFECT_GRID: [[f64; 2]; 4] = [[0.0, 0.0], [0.0, 0.2], [0.2, 0.0], [0.2, 0.2]];

/// Runs every effect cell; returns one report per cell of [`EFFECT_GRID`].
pub fn run_table(n_units: usize, reps: usize, seed: u64) -> Result<Vec<SimulationReport>> {
    let base = gen_lognormal_items(&LogNormalParams {
        n_units,
        n_steps: 14,
        seed,
        ..LogNormalParams::default()
    })?;
    let designs = vec![
        DesignSpec::item_randomized(n_units, 14, 0.5)?,
        DesignSpec::rbsd(n_units, 14)?,
        DesignSpec::regular_every_step(n_units, 14, 0.5)?,
    ];
    let config = MonteCarloConfig {
        estimators: vec![Estimand::Tau, Estimand::TauLag(1)],
        reps,
        alpha: 0.05,
        master_seed: seed,
    };
    EFFECT_GRID
        .iter()
        .map(|deltas| {
            monte_carlo(
                &base,
                &designs,
                &CarryoverModel::new(deltas.to_vec())?,
                &config,
            )
        })
        .collect()
}

pub fn print_table(reports: &[SimulationReport]) {
    println!(
        "{:<10} {:>5} {:>5}  {:<8} {:>9} {:>9} {:>6} {:>6}",
        "estimator", "d0", "d1", "design", "ME", "MSE", "FPR", "FNR"
    );
    for report in reports {
        for cell in &report.cells {
            let rate = |r: Option<f64>| r.map_or("-".to_string(), |v| format!("{v:.2}"));
            println!(
                "{:<10} {:>5} {:>5}  {:<8} {:>9.4} {:>9.4} {:>6} {:>6}",
                cell.estimator.to_string(),
                report.deltas[0],
                report.deltas[1],
                cell.design,
                cell.me,
                cell.mse,
                rate(cell.fpr),
                rate(cell.fnr)
            );
        }
    }
}

pub fn run_example() -> Result<()> {
    let reports = run_table(1_000, 10, 11)?;
    print_table(&reports);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let reports = run_table(10_000, 100, 2024)?;
    print_table(&reports);
    Ok(())
}
