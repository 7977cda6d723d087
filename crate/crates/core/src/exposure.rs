//! Exact assignment probabilities: marginal `P(W[n,s] = 1)` and the
//! probability that a trailing window `W[n, s-ℓ..=s]` is all treated or all
//! control. These are the Horvitz-Thompson denominators.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::design::{DesignKind, DesignSpec};
use crate::error::{Error, Result};

/// Probabilities of an all-treated and an all-control window of length
/// `lag + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowProbability {
    pub design: DesignSpec,
    pub lag: usize,
    pub p_all_treated: f64,
    pub p_all_control: f64,
}

/// Source of assignment probabilities for the estimators. Indices are
/// 0-based; `window` covers timesteps `s - lag ..= s`.
pub trait ProbabilityProvider {
    fn marginal(&self, n: usize, s: usize) -> Result<f64>;

    /// `(P(all treated), P(all control))` over the window ending at `s`.
    fn window(&self, n: usize, s: usize, lag: usize) -> Result<(f64, f64)>;

    /// True when probabilities do not depend on the unit index, letting
    /// callers evaluate one row and reuse it.
    fn unit_invariant(&self) -> bool {
        false
    }
}

impl ProbabilityProvider for DesignSpec {
    fn marginal(&self, n: usize, s: usize) -> Result<f64> {
        marginal_prob(self, n, s)
    }

    fn window(&self, _n: usize, s: usize, lag: usize) -> Result<(f64, f64)> {
        window_probs_at(self, lag, s)
    }

    fn unit_invariant(&self) -> bool {
        true
    }
}

/// Fixed probabilities, independent of position. Handy when the design is
/// known only through its probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedProbabilities {
    pub marginal: f64,
    pub all_treated: f64,
    pub all_control: f64,
}

impl ProbabilityProvider for FixedProbabilities {
    fn marginal(&self, _n: usize, _s: usize) -> Result<f64> {
        Ok(self.marginal)
    }

    fn window(&self, _n: usize, _s: usize, _lag: usize) -> Result<(f64, f64)> {
        Ok((self.all_treated, self.all_control))
    }

    fn unit_invariant(&self) -> bool {
        true
    }
}

fn check_index(spec: &DesignSpec, n: usize, s: usize) -> Result<()> {
    if n >= spec.n_units || s >= spec.n_steps {
        return Err(Error::Dimension(format!(
            "cell ({n}, {s}) outside a {}x{} design",
            spec.n_units, spec.n_steps
        )));
    }
    Ok(())
}

/// `P(W[n,s] = 1)` for 0-based indices.
pub fn marginal_prob(spec: &DesignSpec, n: usize, s: usize) -> Result<f64> {
    check_index(spec, n, s)?;
    Ok(match spec.kind {
        DesignKind::ItemRandomized | DesignKind::Switchback | DesignKind::IidMultiUnit => spec.p,
        DesignKind::RegularSwitchback => spec.weights[spec.coin_index(s)],
        DesignKind::Rbsd => 0.5,
    })
}

fn ones_in_row(n_steps: usize, p: f64) -> Result<usize> {
    let x = p * n_steps as f64;
    let r = x.round();
    if !(p > 0.0 && p < 1.0) || (x - r).abs() > 1e-9 {
        return Err(Error::Probability(format!(
            "p*S must be an integer with p in (0,1) (p={p}, S={n_steps})"
        )));
    }
    Ok(r as usize)
}

/// Probability that `j + 1` fixed positions of a uniformly permuted row with
/// `ones` ones out of `n_steps` are all ones: `C(ones, j+1) / C(n_steps, j+1)`.
/// Zero when the window is longer than the number of ones.
pub fn run_probability_counts(n_steps: usize, ones: usize, j: usize) -> f64 {
    if j + 1 > ones || ones > n_steps {
        return 0.0;
    }
    (0..=j).fold(1.0, |acc, i| acc * (ones - i) as f64 / (n_steps - i) as f64)
}

/// [`run_probability_counts`] with `ones = p * n_steps`.
pub fn run_probability(n_steps: usize, p: f64, j: usize) -> Result<f64> {
    let ones = ones_in_row(n_steps, p)?;
    Ok(run_probability_counts(n_steps, ones, j))
}

/// Exact rational form of [`run_probability_counts`]; `None` on overflow.
pub fn run_probability_exact(n_steps: usize, ones: usize, j: usize) -> Option<Ratio<u128>> {
    if j + 1 > ones || ones > n_steps {
        return Some(Ratio::from_integer(0));
    }
    let mut acc = Ratio::from_integer(1u128);
    for i in 0..=j {
        let term = Ratio::new((ones - i) as u128, (n_steps - i) as u128);
        let numer = acc.numer().checked_mul(*term.numer())?;
        let denom = acc.denom().checked_mul(*term.denom())?;
        acc = Ratio::new(numer, denom);
    }
    Some(acc)
}

fn check_lag(spec: &DesignSpec, lag: usize) -> Result<()> {
    if lag + 1 > spec.n_steps {
        return Err(Error::InvalidArgument(format!(
            "lag {lag} needs at least {} timesteps, design has {}",
            lag + 1,
            spec.n_steps
        )));
    }
    Ok(())
}

fn strictly_inside(spec: &DesignSpec, lag: usize, pair: (f64, f64)) -> Result<(f64, f64)> {
    let (t, c) = pair;
    if t > 0.0 && t < 1.0 && c > 0.0 && c < 1.0 {
        Ok(pair)
    } else {
        Err(Error::Probability(format!(
            "{} design gives window probabilities ({t}, {c}) at lag {lag}; both must lie in (0,1)",
            spec.kind.slug()
        )))
    }
}

/// Window probabilities for the window ending at 0-based timestep `s`.
/// Only regular switchbacks with uneven breakpoints depend on `s`.
pub fn window_probs_at(spec: &DesignSpec, lag: usize, s: usize) -> Result<(f64, f64)> {
    spec.validate()?;
    check_lag(spec, lag)?;
    if s < lag || s >= spec.n_steps {
        return Err(Error::Dimension(format!(
            "window of lag {lag} ending at timestep {} does not fit in 1..={}",
            s + 1,
            spec.n_steps
        )));
    }
    let len = lag as i32 + 1;
    let pair = match spec.kind {
        DesignKind::ItemRandomized => (spec.p, 1.0 - spec.p),
        DesignKind::Switchback => {
            let ones = spec.treated_steps().expect("validated");
            (
                run_probability_counts(spec.n_steps, ones, lag),
                run_probability_counts(spec.n_steps, spec.n_steps - ones, lag),
            )
        }
        DesignKind::IidMultiUnit => (spec.p.powi(len), (1.0 - spec.p).powi(len)),
        DesignKind::RegularSwitchback => {
            let first = spec.coin_index(s - lag);
            let last = spec.coin_index(s);
            spec.weights[first..=last]
                .iter()
                .fold((1.0, 1.0), |(t, c), &q| (t * q, c * (1.0 - q)))
        }
        DesignKind::Rbsd => {
            let v = run_probability_counts(spec.n_steps, spec.n_steps / 2, lag);
            (v, v)
        }
    };
    strictly_inside(spec, lag, pair)
}

/// Position-free window probabilities. Fails for regular switchbacks whose
/// window probabilities vary along the horizon; use [`window_probs_at`]
/// there.
pub fn window_probs(spec: &DesignSpec, lag: usize) -> Result<WindowProbability> {
    let (t, c) = window_probs_at(spec, lag, lag)?;
    if spec.kind == DesignKind::RegularSwitchback {
        for s in lag + 1..spec.n_steps {
            if window_probs_at(spec, lag, s)? != (t, c) {
                return Err(Error::InvalidArgument(format!(
                    "window probabilities of this regular switchback change along the horizon \
                     (timestep {} differs from {}); query them per timestep",
                    s + 1,
                    lag + 1
                )));
            }
        }
    }
    Ok(WindowProbability {
        design: spec.clone(),
        lag,
        p_all_treated: t,
        p_all_control: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_probability_closed_form_at_fourteen() {
        let v = run_probability(14, 0.5, 1).unwrap();
        assert!((v - 12.0 / 52.0).abs() < 1e-15);
        assert_eq!(
            run_probability_exact(14, 7, 1).unwrap(),
            Ratio::new(12u128, 52)
        );
    }

    #[test]
    fn run_probability_lag_zero_is_p() {
        for s in [2usize, 4, 8, 10, 100] {
            assert_eq!(run_probability(s, 0.5, 0).unwrap(), 0.5);
        }
        assert_eq!(run_probability(8, 0.25, 0).unwrap(), 0.25);
        assert_eq!(run_probability(6, 0.5, 1).unwrap(), 0.2);
    }

    #[test]
    fn run_probability_long_window_is_zero() {
        assert_eq!(run_probability(6, 0.5, 3).unwrap(), 0.0);
        assert!(run_probability(7, 0.5, 0).is_err());
    }

    #[test]
    fn run_probability_large_horizon_approaches_quarter() {
        let v = run_probability(10_000, 0.5, 1).unwrap();
        assert!((v - 0.25).abs() < 1e-4);
        assert!(v < 0.25);
    }

    #[test]
    fn marginal_examples() {
        let item = DesignSpec::item_randomized(5, 6, 0.6).unwrap();
        assert_eq!(marginal_prob(&item, 4, 5).unwrap(), 0.6);
        let reg = DesignSpec::regular_switchback(3, 6, vec![1, 4], vec![0.3, 0.7]).unwrap();
        // 1-based timestep 5
        assert_eq!(marginal_prob(&reg, 0, 4).unwrap(), 0.7);
        assert_eq!(marginal_prob(&reg, 0, 2).unwrap(), 0.3);
        let rbsd = DesignSpec::rbsd(4, 4).unwrap();
        assert_eq!(marginal_prob(&rbsd, 3, 3).unwrap(), 0.5);
        assert!(marginal_prob(&rbsd, 4, 0).is_err());
    }

    #[test]
    fn window_examples() {
        let reg = DesignSpec::regular_every_step(3, 6, 0.5).unwrap();
        let w = window_probs(&reg, 1).unwrap();
        assert_eq!((w.p_all_treated, w.p_all_control), (0.25, 0.25));

        let rbsd = DesignSpec::rbsd(4, 14).unwrap();
        let w = window_probs(&rbsd, 1).unwrap();
        assert!((w.p_all_treated - 12.0 / 52.0).abs() < 1e-15);
        assert_eq!(w.p_all_treated, w.p_all_control);

        let item = DesignSpec::item_randomized(10, 6, 0.3).unwrap();
        let w = window_probs(&item, 3).unwrap();
        assert_eq!((w.p_all_treated, w.p_all_control), (0.3, 0.7));

        let iid = DesignSpec::iid_multi_unit(2, 6, 0.5).unwrap();
        let w = window_probs(&iid, 2).unwrap();
        assert_eq!((w.p_all_treated, w.p_all_control), (0.125, 0.125));

        let sb = DesignSpec::switchback(2, 6, 0.5).unwrap();
        let w = window_probs(&sb, 1).unwrap();
        assert!((w.p_all_treated - 0.2).abs() < 1e-15);
        assert_eq!(w.p_all_treated, w.p_all_control);
    }

    #[test]
    fn regular_windows_multiply_distinct_coins() {
        let reg = DesignSpec::regular_switchback(2, 6, vec![1, 4], vec![0.3, 0.6]).unwrap();
        let (t, c) = window_probs_at(&reg, 1, 1).unwrap();
        assert_eq!((t, c), (0.3, 0.7));
        let (t, c) = window_probs_at(&reg, 1, 3).unwrap();
        assert!((t - 0.18).abs() < 1e-15 && (c - 0.28).abs() < 1e-15);
        assert!(window_probs(&reg, 1).is_err());
    }

    #[test]
    fn degenerate_windows_rejected() {
        let rbsd = DesignSpec::rbsd(2, 4).unwrap();
        assert!(window_probs(&rbsd, 2).is_err());
        assert!(window_probs(&rbsd, 4).is_err());
        let sb = DesignSpec::switchback(2, 8, 0.25).unwrap();
        assert!(window_probs(&sb, 1).is_ok());
        assert!(window_probs(&sb, 2).is_err());
    }
}
