// End to end on a small panel: sample an RBSD, add a direct effect and a
// one-step carryover to a synthetic outcome panel, write both as CSV, read
// them back and estimate the lag-0 and lag-1 effects.
//
// Run with `cargo run --example estimate_effects`.

use switchback::design::sample;
use switchback::estimate::{estimate, exposure_mapping_estimate};
use switchback::io::{
    read_assignment_csv, read_outcome_csv, write_assignment_csv, write_outcome_csv,
};
use switchback::sim::{
    apply_carryover, gen_lognormal_items, true_estimands, CarryoverModel, LogNormalParams,
};
use switchback::{DesignSpec, Estimand, Result};

pub fn run_example() -> Result<()> {
    let (n, s) = (400, 14);
    let base = gen_lognormal_items(&LogNormalParams {
        n_units: n,
        n_steps: s,
        zero_frac: 0.0,
        seed: 3,
        ..LogNormalParams::default()
    })?;
    let spec = DesignSpec::rbsd(n, s)?;
    let w = sample(&spec, 99)?;
    let model = CarryoverModel::new(vec![2.0, 1.0])?;
    let y = apply_carryover(&base, &w, &model)?;

    let dir = std::env::temp_dir().join(format!("switchback-estimate-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| switchback::Error::Io {
        path: dir.clone(),
        source: e,
    })?;
    write_assignment_csv(&w, dir.join("w.csv"))?;
    write_outcome_csv(&y, dir.join("y.csv"))?;
    let w = read_assignment_csv(dir.join("w.csv"))?;
    let y = read_outcome_csv(dir.join("y.csv"))?;
    let _ = std::fs::remove_dir_all(&dir);

    let truth = true_estimands(&base, &model, 1)?;
    println!(
        "true tau {:.4}, true tau_lag1 {:.4}",
        truth.tau, truth.tau_lag
    );
    for estimand in [Estimand::Tau, Estimand::TauLag(1)] {
        let r = estimate(&w, &y, estimand, &spec, 0.05)?;
        println!(
            "{estimand:<9} {:>8.4} se {:.4}  95% CI [{:.4}, {:.4}]  p {:.3}",
            r.point, r.std_error, r.ci_low, r.ci_high, r.p_value
        );
    }
    let mapped = exposure_mapping_estimate(&w, &y, &spec)?;
    println!("exposure mapping d11 - d00: {:.4}", mapped.point);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
