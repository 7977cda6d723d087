// Minimax breakpoints for a regular switchback: where to allow switches
// when only K of them are affordable and carryover lasts m steps.
//
// Run with `cargo run --example optimize_breakpoints`.

use switchback::breakpoints::{objective, optimize, BreakpointProblem, SearchMode};
use switchback::Result;

pub fn run_example() -> Result<()> {
    println!(
        "{:>3} {:>3} {:>3}  {:<28} {:>8}",
        "S", "K", "m", "breakpoints", "value"
    );
    for (s, k, m) in [(9, 2, 0), (14, 3, 0), (14, 3, 1), (14, 3, 2), (28, 6, 3)] {
        let sol = optimize(&BreakpointProblem::new(s, k, m)?, SearchMode::Auto)?;
        println!(
            "{s:>3} {k:>3} {m:>3}  {:<28} {:>8}",
            format!("{:?}", sol.breakpoints),
            sol.objective_value
        );
    }

    // a large horizon goes through the dynamic program
    let big = BreakpointProblem::new(500, 40, 5)?;
    let sol = optimize(&big, SearchMode::Dp)?;
    println!(
        "S=500 K=40 m=5: first gaps {:?}, value {}",
        sol.breakpoints
            .windows(2)
            .take(5)
            .map(|p| p[1] - p[0])
            .collect::<Vec<_>>(),
        sol.objective_value
    );

    let every: Vec<usize> = (1..=14).collect();
    println!(
        "switching every step at S=14, m=1: {}",
        objective(&every, 1, 14)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
