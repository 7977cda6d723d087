// Skewed synthetic data: an item-by-day sales panel and a per-user
// purchase-count distribution.
//
// Run with `cargo run --example synthetic_data`.

use switchback::sim::{gen_lognormal_items, gen_powerlaw_users, sample_skewness, LogNormalParams};
use switchback::Result;

pub fn run_example() -> Result<()> {
    let panel = gen_lognormal_items(&LogNormalParams {
        n_units: 5_000,
        seed: 1,
        ..LogNormalParams::default()
    })?;
    let day_one: Vec<f64> = panel.rows().map(|r| r[0]).filter(|&v| v > 0.0).collect();
    println!(
        "sales panel {}x{}: {} selling items, mean {:.2}, skew {:.2}",
        panel.n_units(),
        panel.n_steps(),
        day_one.len(),
        day_one.iter().sum::<f64>() / day_one.len() as f64,
        sample_skewness(&day_one)
    );
    println!(
        "first item: {:?}",
        &panel.row(panel.rows().position(|r| r[0] > 0.0).unwrap_or(0))[..5]
    );

    let users = gen_powerlaw_users(20_000, 0.8, 2.5, 1)?;
    println!("purchase counts, skew {:.2}", users.skewness);
    println!(
        "{:>6} {:>7} {:>9} {:>9}",
        "count", "users", "observed", "0.8x^-2.5"
    );
    for row in users.table.iter().take(6) {
        println!(
            "{:>6} {:>7} {:>9.4} {:>9.4}",
            row.value, row.users, row.frequency, row.fitted
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
