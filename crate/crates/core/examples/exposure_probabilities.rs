// Exact probabilities that a unit is treated (or untreated) for a run of
// consecutive timesteps. These are the weights behind every estimate.
//
// Run with `cargo run --example exposure_probabilities`.

use switchback::exposure::{marginal_prob, run_probability_exact, window_probs, window_probs_at};
use switchback::{DesignSpec, Result};

pub fn run_example() -> Result<()> {
    let s = 14;
    let designs = [
        DesignSpec::item_randomized(4, s, 0.5)?,
        DesignSpec::switchback(4, s, 0.5)?,
        DesignSpec::iid_multi_unit(4, s, 0.5)?,
        DesignSpec::regular_every_step(4, s, 0.5)?,
        DesignSpec::rbsd(4, s)?,
    ];
    println!(
        "{:<12} {:>4} {:>10} {:>10}",
        "design", "lag", "all on", "all off"
    );
    for spec in &designs {
        for lag in 0..=2 {
            let wp = window_probs(spec, lag)?;
            println!(
                "{:<12} {:>4} {:>10.6} {:>10.6}",
                spec.kind.slug(),
                lag,
                wp.p_all_treated,
                wp.p_all_control
            );
        }
    }

    // half of 14 steps treated; two given steps both treated
    let exact = run_probability_exact(s, 7, 1).expect("fits in u128");
    println!("rbsd, lag 1: {exact} = {:.6}", 12.0 / 52.0);

    // uneven breakpoints make the window probability depend on position
    let uneven = DesignSpec::regular_switchback(1, 6, vec![1, 4], vec![0.5, 0.5])?;
    for step in 1..6 {
        let (on, off) = window_probs_at(&uneven, 1, step)?;
        println!("breakpoints 1,4 step {}: ({on}, {off})", step + 1);
    }
    println!("marginal {}", marginal_prob(&uneven, 0, 0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
