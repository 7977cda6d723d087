// A/A study: no treatment effect at all. Compares how noisy the estimates
// and their standard errors are under each design on skewed sales data.
//
// Run with `cargo run --release --example aa_study`.

use switchback::sim::{aa_study, gen_lognormal_items, AaSummary, LogNormalParams};
use switchback::{DesignSpec, Result};

pub fn run_study(n_units: usize, reps: usize, seed: u64) -> Result<Vec<AaSummary>> {
    let base = gen_lognormal_items(&LogNormalParams {
        n_units,
        n_steps: 14,
        seed,
        ..LogNormalParams::default()
    })?;
    let designs = [
        DesignSpec::item_randomized(n_units, 14, 0.5)?,
        DesignSpec::regular_every_step(n_units, 14, 0.5)?,
        DesignSpec::rbsd(n_units, 14)?,
    ];
    aa_study(&base, &designs, reps, 1, seed)
}

pub fn print_study(rows: &[AaSummary]) {
    println!(
        "{:<8} {:>10} {:>10} {:>10} {:>10}",
        "design", "tau q1", "tau q3", "sigma", "sigma_lag"
    );
    for r in rows {
        println!(
            "{:<8} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            r.design, r.tau.q1, r.tau.q3, r.sigma.median, r.sigma_lag.median
        );
    }
}

pub fn run_example() -> Result<()> {
    print_study(&run_study(1_000, 10, 5)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print_study(&run_study(10_000, 100, 2024)?);
    Ok(())
}
