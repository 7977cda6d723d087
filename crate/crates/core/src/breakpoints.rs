//! Minimax breakpoint placement for regular switchback designs.
//!
//! For breakpoints `1 = s_0 < s_1 < … < s_K <= S` and carryover order `m`
//! the worst-case variance of the lag-m estimator is proportional to
//!
//! ```text
//! 4 Σ_{k=0}^{K} (s_{k+1} − s_k)² + 8m(s_K − s_1) + 4m²K − 4m²
//!   + 4 Σ_{k=1}^{K−1} [(m − s_{k+1} + s_k)⁺]²
//! ```
//!
//! with the sentinel `s_{K+1} = S + 1`, and the optimal weights are all 1/2.
//! Ties between minimizers go to the lexicographically smallest set.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::design::validate_breakpoints;
use crate::error::{Error, Result};

/// Largest number of candidate sets the exhaustive search will visit.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakpointProblem {
    /// Horizon S.
    pub n_steps: usize,
    /// Breakpoints K beyond the fixed first one at timestep 1.
    pub n_breakpoints: usize,
    /// Carryover order m.
    pub carryover: usize,
}

impl BreakpointProblem {
    pub fn new(n_steps: usize, n_breakpoints: usize, carryover: usize) -> Result<Self> {
        let problem = BreakpointProblem {
            n_steps,
            n_breakpoints,
            carryover,
        };
        problem.validate()?;
        Ok(problem)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_breakpoints == 0 || self.n_breakpoints >= self.n_steps {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= K < S (got K={}, S={})",
                self.n_breakpoints, self.n_steps
            )));
        }
        if self.carryover >= self.n_steps {
            return Err(Error::InvalidArgument(format!(
                "carryover order m={} must be below S={}",
                self.carryover, self.n_steps
            )));
        }
        Ok(())
    }

    /// Number of candidate breakpoint sets, `C(S−1, K)`.
    pub fn candidate_count(&self) -> u128 {
        binomial(self.n_steps as u128 - 1, self.n_breakpoints as u128)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakpointSolution {
    pub breakpoints: Vec<usize>,
    pub objective_value: f64,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Dp,
    /// Exhaustive when the candidate count allows it, DP otherwise.
    Auto,
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Exact integer value of the objective.
pub fn objective_exact(breakpoints: &[usize], carryover: usize, n_steps: usize) -> Result<i128> {
    validate_breakpoints(breakpoints, n_steps)?;
    let m = carryover as i128;
    let k_count = breakpoints.len() as i128 - 1;
    let at = |k: usize| -> i128 {
        breakpoints
            .get(k)
            .map_or(n_steps as i128 + 1, |&b| b as i128)
    };
    let last = breakpoints.len() - 1;

    let squared_gaps: i128 = (0..=last).map(|k| (at(k + 1) - at(k)).pow(2)).sum();
    let span = if last >= 1 { at(last) - at(1) } else { 0 };
    let short_gaps: i128 = (1..last.max(1))
        .map(|k| (m - at(k + 1) + at(k)).max(0).pow(2))
        .sum();
    Ok(4 * squared_gaps + 8 * m * span + 4 * m * m * k_count - 4 * m * m + 4 * short_gaps)
}

/// Minimax variance objective for a breakpoint set (1-based, starting at 1).
pub fn objective(breakpoints: &[usize], carryover: usize, n_steps: usize) -> Result<f64> {
    Ok(objective_exact(breakpoints, carryover, n_steps)? as f64)
}

fn solution(problem: &BreakpointProblem, breakpoints: Vec<usize>) -> Result<BreakpointSolution> {
    let value = objective(&breakpoints, problem.carryover, problem.n_steps)?;
    Ok(BreakpointSolution {
        weights: vec![0.5; breakpoints.len()],
        breakpoints,
        objective_value: value,
    })
}

/// Global minimizer of the objective.
pub fn optimize(problem: &BreakpointProblem, mode: SearchMode) -> Result<BreakpointSolution> {
    problem.validate()?;
    let exhaustive_ok = problem.candidate_count() <= EXHAUSTIVE_LIMIT;
    let best = match mode {
        SearchMode::Exhaustive if !exhaustive_ok => {
            return Err(Error::InvalidArgument(format!(
                "exhaustive search over C({}, {}) = {} sets exceeds the limit of {EXHAUSTIVE_LIMIT}; use dp",
                problem.n_steps - 1,
                problem.n_breakpoints,
                problem.candidate_count()
            )))
        }
        SearchMode::Exhaustive => exhaustive(problem)?,
        SearchMode::Auto if exhaustive_ok => exhaustive(problem)?,
        SearchMode::Dp | SearchMode::Auto => dynamic_program(problem),
    };
    solution(problem, best)
}

/// Advances `combo` (strictly increasing, values in `lo..=hi`) to the next
/// combination in lexicographic order, keeping `combo[..fixed]` untouched.
fn next_combination(combo: &mut [usize], fixed: usize, hi: usize) -> bool {
    let len = combo.len();
    let mut i = len;
    while i > fixed {
        i -= 1;
        if combo[i] < hi - (len - 1 - i) {
            combo[i] += 1;
            for j in i + 1..len {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Objective value and the breakpoint set attaining it.
type Candidate = (i128, Vec<usize>);

fn better(a: &Candidate, b: &Candidate) -> bool {
    match a.0.cmp(&b.0) {
        Ordering::Less => true,
        Ordering::Equal => a.1 < b.1,
        Ordering::Greater => false,
    }
}

fn exhaustive(problem: &BreakpointProblem) -> Result<Vec<usize>> {
    let (s, k, m) = (problem.n_steps, problem.n_breakpoints, problem.carryover);
    // one chunk per choice of s_1; each chunk walks its combinations in order
    let chunks: Vec<Result<Option<Candidate>>> = (2..=s - k + 1)
        .into_par_iter()
        .map(|first| {
            let mut combo: Vec<usize> = std::iter::once(1)
                .chain((0..k).map(|i| first + i))
                .collect();
            let mut best: Option<Candidate> = None;
            loop {
                let value = objective_exact(&combo, m, s)?;
                if best.as_ref().is_none_or(|b| value < b.0) {
                    best = Some((value, combo.clone()));
                }
                if !next_combination(&mut combo, 2, s) {
                    break;
                }
            }
            Ok(best)
        })
        .collect();
    let mut best: Option<Candidate> = None;
    for chunk in chunks {
        if let Some(candidate) = chunk? {
            if best.as_ref().is_none_or(|b| better(&candidate, b)) {
                best = Some(candidate);
            }
        }
    }
    Ok(best.expect("at least one candidate").1)
}

/// Cost of the gap `s_{k+1} − s_k` at position `k` of `0..=K`. The span
/// term `8m(s_K − s_1)` is the sum of interior gaps, so it is charged here
/// as well.
fn gap_cost(gap: i128, k: usize, n_breakpoints: usize, m: i128) -> i128 {
    let interior = k >= 1 && k < n_breakpoints;
    let mut cost = 4 * gap * gap;
    if interior {
        cost += 8 * m * gap + 4 * (m - gap).max(0).pow(2);
    }
    cost
}

#[allow(clippy::needless_range_loop)]
fn dynamic_program(problem: &BreakpointProblem) -> Vec<usize> {
    let (s, k_total) = (problem.n_steps, problem.n_breakpoints);
    let m = problem.carryover as i128;
    let end = s + 1;
    // to_go[k][pos]: least cost of gaps k..=K given s_k = pos
    let mut to_go = vec![vec![i128::MAX; end + 1]; k_total + 1];
    for pos in 1..=s {
        to_go[k_total][pos] = gap_cost((end - pos) as i128, k_total, k_total, m);
    }
    for k in (0..k_total).rev() {
        let remaining = k_total - k;
        for pos in 1..=s {
            // s_{k+1} ranges so that the remaining breakpoints still fit below S
            let mut best = i128::MAX;
            for next in pos + 1..=s + 1 - remaining {
                let tail = to_go[k + 1][next];
                if tail == i128::MAX {
                    continue;
                }
                best = best.min(gap_cost((next - pos) as i128, k, k_total, m) + tail);
            }
            to_go[k][pos] = best;
        }
    }
    let mut out = vec![1];
    let mut pos = 1;
    for k in 0..k_total {
        let target = to_go[k][pos];
        let remaining = k_total - k;
        let next = (pos + 1..=s + 1 - remaining)
            .find(|&next| {
                let tail = to_go[k + 1][next];
                tail != i128::MAX && gap_cost((next - pos) as i128, k, k_total, m) + tail == target
            })
            .expect("dp table is consistent");
        out.push(next);
        pos = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_step_without_carryover_is_four_s() {
        for s in 2..15 {
            let all: Vec<usize> = (1..=s).collect();
            assert_eq!(objective(&all, 0, s).unwrap(), 4.0 * s as f64);
        }
    }

    #[test]
    fn equal_gaps_nine_steps() {
        let p = BreakpointProblem::new(9, 2, 0).unwrap();
        for mode in [SearchMode::Exhaustive, SearchMode::Dp] {
            let sol = optimize(&p, mode).unwrap();
            assert_eq!(sol.breakpoints, vec![1, 4, 7]);
            assert_eq!(sol.objective_value, 108.0);
            assert_eq!(sol.weights, vec![0.5; 3]);
        }
    }

    #[test]
    fn invalid_problems() {
        assert!(BreakpointProblem::new(5, 5, 0).is_err());
        assert!(BreakpointProblem::new(5, 0, 0).is_err());
        assert!(BreakpointProblem::new(5, 2, 5).is_err());
        assert!(objective(&[2, 3], 0, 4).is_err());
    }

    #[test]
    fn exhaustive_limit_enforced() {
        let p = BreakpointProblem::new(200, 20, 1).unwrap();
        assert!(optimize(&p, SearchMode::Exhaustive).is_err());
        let sol = optimize(&p, SearchMode::Auto).unwrap();
        assert_eq!(sol.breakpoints.len(), 21);
    }

    #[test]
    fn combinations_walk_in_order() {
        let mut c = vec![1, 2, 3];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 1, 5) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(seen.last().unwrap(), &vec![1, 4, 5]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(11, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
