// Sample one assignment matrix per design family and check the structural
// constraints each family promises.
//
// Run with `cargo run --example generate_designs`.

use switchback::design::{check_balanced, check_regular, sample};
use switchback::{AssignmentMatrix, DesignSpec, Result};

fn show(label: &str, w: &AssignmentMatrix) {
    println!("{label} ({}x{})", w.n_units(), w.n_steps());
    for row in w.rows() {
        let line: String = row
            .iter()
            .map(|&v| if v == 1 { '#' } else { '.' })
            .collect();
        println!("  {line}");
    }
}

pub fn run_example() -> Result<()> {
    let (n, s, seed) = (6, 8, 7);
    let specs = [
        ("item randomized", DesignSpec::item_randomized(n, s, 0.5)?),
        ("switchback", DesignSpec::switchback(n, s, 0.5)?),
        ("iid multi-unit", DesignSpec::iid_multi_unit(n, s, 0.5)?),
        (
            "regular, breakpoints 1,3,6",
            DesignSpec::regular_switchback(n, s, vec![1, 3, 6], vec![0.5, 0.3, 0.7])?,
        ),
        ("rbsd", DesignSpec::rbsd(n, s)?),
    ];
    for (label, spec) in &specs {
        let w = sample(spec, seed)?;
        show(label, &w);
    }

    // rbsd: every row and every column is half treated, and any pattern is
    // allowed between timesteps
    let rbsd = sample(&DesignSpec::rbsd(n, s)?, seed)?;
    let every: Vec<usize> = (1..=s).collect();
    println!(
        "rbsd balanced: {}, regular: {}",
        check_balanced(&rbsd, 0.5)?,
        check_regular(&rbsd, &every)?
    );
    println!(
        "row sums {:?}, column sums {:?}",
        rbsd.row_sums(),
        rbsd.column_sums()
    );

    let regular = sample(&specs[3].1, seed)?;
    println!(
        "regular switches only at 1,3,6: {}",
        check_regular(&regular, &[1, 3, 6])?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
