//! Experimental designs over an N×S (unit × timestep) grid and the
//! assignment matrices they produce.
//!
//! Five designs are supported:
//!
//! * [`DesignKind::ItemRandomized`]: `pN` units drawn without replacement
//!   are treated at every timestep.
//! * [`DesignKind::Switchback`]: `pS` timesteps drawn without replacement
//!   treat every unit.
//! * [`DesignKind::IidMultiUnit`]: independent Bernoulli(p) cells.
//! * [`DesignKind::RegularSwitchback`]: one Bernoulli(q_k) coin per unit and
//!   breakpoint; the assignment is held until the next breakpoint.
//! * [`DesignKind::Rbsd`]: regular balanced switchback design, built by
//!   stacking `N/2` random permutations of a balanced row on top of their
//!   complements. Every row holds `S/2` ones and every column `N/2`.
//!
//! Breakpoints are 1-based timesteps. Matrix accessors are 0-based.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, SeededRng};

const INTEGRALITY_TOL: f64 = 1e-9;

/// Default attempt cap for [`sample_bsd_rejection_oracle`].
pub const DEFAULT_ATTEMPT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignKind {
    ItemRandomized,
    Switchback,
    IidMultiUnit,
    RegularSwitchback,
    Rbsd,
}

impl DesignKind {
    pub fn slug(self) -> &'static str {
        match self {
            DesignKind::ItemRandomized => "item",
            DesignKind::Switchback => "switchback",
            DesignKind::IidMultiUnit => "iid",
            DesignKind::RegularSwitchback => "regular",
            DesignKind::Rbsd => "rbsd",
        }
    }

    pub fn from_slug(s: &str) -> Option<Self> {
        Some(match s {
            "item" | "item_randomized" => DesignKind::ItemRandomized,
            "switchback" => DesignKind::Switchback,
            "iid" | "iid_multi_unit" => DesignKind::IidMultiUnit,
            "regular" | "regular_switchback" => DesignKind::RegularSwitchback,
            "rbsd" => DesignKind::Rbsd,
            _ => return None,
        })
    }
}

fn default_p() -> f64 {
    0.5
}

/// Parameterized description of one design.
///
/// `breakpoints` and `weights` are only read by
/// [`DesignKind::RegularSwitchback`]; for [`DesignKind::Rbsd`] the
/// breakpoints are fixed to every timestep and may be left empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSpec {
    pub kind: DesignKind,
    pub n_units: usize,
    pub n_steps: usize,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub breakpoints: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<f64>,
}

impl DesignSpec {
    fn build(kind: DesignKind, n_units: usize, n_steps: usize, p: f64) -> Self {
        DesignSpec {
            kind,
            n_units,
            n_steps,
            p,
            breakpoints: Vec::new(),
            weights: Vec::new(),
        }
    }

    pub fn item_randomized(n_units: usize, n_steps: usize, p: f64) -> Result<Self> {
        Self::build(DesignKind::ItemRandomized, n_units, n_steps, p).validated()
    }

    pub fn switchback(n_units: usize, n_steps: usize, p: f64) -> Result<Self> {
        Self::build(DesignKind::Switchback, n_units, n_steps, p).validated()
    }

    pub fn iid_multi_unit(n_units: usize, n_steps: usize, p: f64) -> Result<Self> {
        Self::build(DesignKind::IidMultiUnit, n_units, n_steps, p).validated()
    }

    pub fn regular_switchback(
        n_units: usize,
        n_steps: usize,
        breakpoints: Vec<usize>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let p = if weights.is_empty() {
            0.5
        } else {
            weights.iter().sum::<f64>() / weights.len() as f64
        };
        DesignSpec {
            breakpoints,
            weights,
            ..Self::build(DesignKind::RegularSwitchback, n_units, n_steps, p)
        }
        .validated()
    }

    /// Regular switchback randomizing at every timestep with a common weight.
    pub fn regular_every_step(n_units: usize, n_steps: usize, q: f64) -> Result<Self> {
        Self::regular_switchback(n_units, n_steps, (1..=n_steps).collect(), vec![q; n_steps])
    }

    pub fn rbsd(n_units: usize, n_steps: usize) -> Result<Self> {
        DesignSpec {
            breakpoints: (1..=n_steps).collect(),
            ..Self::build(DesignKind::Rbsd, n_units, n_steps, 0.5)
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Number of treated units for designs that fix it.
    pub fn treated_units(&self) -> Option<usize> {
        integral(self.p * self.n_units as f64)
    }

    /// Number of treated timesteps per unit for designs that fix it.
    pub fn treated_steps(&self) -> Option<usize> {
        integral(self.p * self.n_steps as f64)
    }

    /// Breakpoints in effect (1-based). Designs without explicit breakpoints
    /// randomize at every timestep.
    pub fn effective_breakpoints(&self) -> Vec<usize> {
        match self.kind {
            DesignKind::RegularSwitchback => self.breakpoints.clone(),
            _ => (1..=self.n_steps).collect(),
        }
    }

    /// Index into `weights` of the coin governing 0-based timestep `step`.
    pub(crate) fn coin_index(&self, step: usize) -> usize {
        // breakpoints are validated to start at 1, so the count is >= 1
        self.breakpoints.partition_point(|&b| b <= step + 1) - 1
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidDesign(msg));
        if self.n_units == 0 || self.n_steps == 0 {
            return invalid(format!(
                "n_units and n_steps must be positive (got {}x{})",
                self.n_units, self.n_steps
            ));
        }
        let p_needed = self.kind != DesignKind::RegularSwitchback;
        if p_needed && !(self.p > 0.0 && self.p < 1.0) {
            return invalid(format!("p must lie strictly inside (0,1), got {}", self.p));
        }
        match self.kind {
            DesignKind::ItemRandomized => {
                if self.treated_units().is_none() {
                    return invalid(format!(
                        "p*N must be an integer for item randomization (p={}, N={})",
                        self.p, self.n_units
                    ));
                }
            }
            DesignKind::Switchback => {
                if self.treated_steps().is_none() {
                    return invalid(format!(
                        "p*S must be an integer for switchback randomization (p={}, S={})",
                        self.p, self.n_steps
                    ));
                }
            }
            DesignKind::IidMultiUnit => {}
            DesignKind::RegularSwitchback => {
                validate_breakpoints(&self.breakpoints, self.n_steps)?;
                if self.weights.len() != self.breakpoints.len() {
                    return invalid(format!(
                        "expected one weight per breakpoint ({} breakpoints, {} weights)",
                        self.breakpoints.len(),
                        self.weights.len()
                    ));
                }
                if let Some((k, q)) = self
                    .weights
                    .iter()
                    .enumerate()
                    .find(|(_, q)| !(**q > 0.0 && **q < 1.0))
                {
                    return invalid(format!(
                        "weight {} is {q}; weights must lie strictly inside (0,1)",
                        k + 1
                    ));
                }
            }
            DesignKind::Rbsd => {
                if (self.p - 0.5).abs() > INTEGRALITY_TOL {
                    return invalid(format!("rbsd requires p = 1/2, got {}", self.p));
                }
                if !self.n_units.is_multiple_of(2) {
                    return invalid(format!("rbsd requires an even N, got {}", self.n_units));
                }
                if !self.n_steps.is_multiple_of(2) {
                    return invalid(format!(
                        "rbsd requires p*S to be an integer (S={} is odd)",
                        self.n_steps
                    ));
                }
                let every_step = self.breakpoints.len() == self.n_steps
                    && self
                        .breakpoints
                        .iter()
                        .enumerate()
                        .all(|(i, &b)| b == i + 1);
                if !self.breakpoints.is_empty() && !every_step {
                    return invalid(
                        "rbsd randomizes at every timestep; breakpoints must be 1..=S or omitted"
                            .to_string(),
                    );
                }
            }
        }
        Ok(())
    }
}

fn integral(x: f64) -> Option<usize> {
    let r = x.round();
    ((x - r).abs() < INTEGRALITY_TOL && r >= 0.0).then_some(r as usize)
}

/// Checks that `breakpoints` is strictly increasing, starts at 1 and stays
/// within `1..=n_steps`.
pub fn validate_breakpoints(breakpoints: &[usize], n_steps: usize) -> Result<()> {
    let invalid = |msg: String| Err(Error::InvalidDesign(msg));
    match breakpoints.first() {
        None => return invalid("breakpoints must not be empty".into()),
        Some(&first) if first != 1 => {
            return invalid(format!("first breakpoint must be 1, got {first}"))
        }
        _ => {}
    }
    if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
        return invalid(format!(
            "breakpoints must be strictly increasing ({} followed by {})",
            w[0], w[1]
        ));
    }
    let last = *breakpoints.last().unwrap();
    if last > n_steps {
        return invalid(format!("breakpoint {last} exceeds S={n_steps}"));
    }
    Ok(())
}

/// N×S binary treatment assignments, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentMatrix {
    n_units: usize,
    n_steps: usize,
    values: Vec<u8>,
    pub spec: Option<DesignSpec>,
    pub seed: Option<u64>,
}

impl AssignmentMatrix {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        let n_units = rows.len();
        let n_steps = rows.first().map_or(0, Vec::len);
        if n_units == 0 || n_steps == 0 {
            return Err(Error::Dimension(
                "assignment matrix must be non-empty".into(),
            ));
        }
        let mut values = Vec::with_capacity(n_units * n_steps);
        for (n, row) in rows.into_iter().enumerate() {
            if row.len() != n_steps {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {n_steps}",
                    n + 1,
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|&&v| v > 1) {
                return Err(Error::InvalidArgument(format!(
                    "row {} holds {v}; assignments must be 0 or 1",
                    n + 1
                )));
            }
            values.extend(row);
        }
        Ok(AssignmentMatrix {
            n_units,
            n_steps,
            values,
            spec: None,
            seed: None,
        })
    }

    pub fn from_fn(
        n_units: usize,
        n_steps: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let mut values = Vec::with_capacity(n_units * n_steps);
        for n in 0..n_units {
            for s in 0..n_steps {
                values.push(f(n, s) as u8);
            }
        }
        AssignmentMatrix {
            n_units,
            n_steps,
            values,
            spec: None,
            seed: None,
        }
    }

    pub fn filled(n_units: usize, n_steps: usize, value: bool) -> Self {
        Self::from_fn(n_units, n_steps, |_, _| value)
    }

    pub fn n_units(&self) -> usize {
        self.n_units
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn get(&self, n: usize, s: usize) -> u8 {
        self.values[n * self.n_steps + s]
    }

    pub fn set(&mut self, n: usize, s: usize, value: bool) {
        self.values[n * self.n_steps + s] = value as u8;
    }

    pub fn row(&self, n: usize) -> &[u8] {
        &self.values[n * self.n_steps..(n + 1) * self.n_steps]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.values.chunks_exact(self.n_steps)
    }

    pub fn column(&self, s: usize) -> impl Iterator<Item = u8> + '_ {
        (0..self.n_units).map(move |n| self.get(n, s))
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows()
            .map(|r| r.iter().map(|&v| v as usize).sum())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        let mut sums = vec![0usize; self.n_steps];
        for row in self.rows() {
            for (acc, &v) in sums.iter_mut().zip(row) {
                *acc += v as usize;
            }
        }
        sums
    }

    /// Row-major cell values.
    pub fn as_slice(&self) -> &[u8] {
        &self.values
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows().map(<[u8]>::to_vec).collect()
    }
}

/// Draws an assignment matrix from `spec`. Deterministic in `(spec, seed)`.
pub fn sample(spec: &DesignSpec, seed: u64) -> Result<AssignmentMatrix> {
    spec.validate()?;
    let mut rng = rng_from_seed(seed);
    let (n_units, n_steps) = (spec.n_units, spec.n_steps);
    let mut w = AssignmentMatrix::filled(n_units, n_steps, false);
    match spec.kind {
        DesignKind::ItemRandomized => {
            let treated = spec.treated_units().expect("validated");
            for n in index::sample(&mut rng, n_units, treated) {
                w.values[n * n_steps..(n + 1) * n_steps].fill(1);
            }
        }
        DesignKind::Switchback => {
            let treated = spec.treated_steps().expect("validated");
            for s in index::sample(&mut rng, n_steps, treated) {
                for n in 0..n_units {
                    w.set(n, s, true);
                }
            }
        }
        DesignKind::IidMultiUnit => {
            for v in w.values.iter_mut() {
                *v = rng.random_bool(spec.p) as u8;
            }
        }
        DesignKind::RegularSwitchback => sample_regular(&mut w, spec, &mut rng),
        DesignKind::Rbsd => sample_rbsd(&mut w, &mut rng),
    }
    w.spec = Some(spec.clone());
    w.seed = Some(seed);
    Ok(w)
}

fn sample_regular(w: &mut AssignmentMatrix, spec: &DesignSpec, rng: &mut SeededRng) {
    let n_steps = spec.n_steps;
    let mut coins = vec![0u8; spec.breakpoints.len()];
    for n in 0..spec.n_units {
        for (coin, &q) in coins.iter_mut().zip(&spec.weights) {
            *coin = rng.random_bool(q) as u8;
        }
        let row = &mut w.values[n * n_steps..(n + 1) * n_steps];
        for (k, &start) in spec.breakpoints.iter().enumerate() {
            let end = spec.breakpoints.get(k + 1).map_or(n_steps, |&b| b - 1);
            row[start - 1..end].fill(coins[k]);
        }
    }
}

fn sample_rbsd(w: &mut AssignmentMatrix, rng: &mut SeededRng) {
    let (n_units, n_steps) = (w.n_units, w.n_steps);
    let half = n_units / 2;
    let mut base: Vec<u8> = (0..n_steps).map(|s| (s < n_steps / 2) as u8).collect();
    for n in 0..half {
        base.shuffle(rng);
        let (top, bottom) = w.values.split_at_mut(half * n_steps);
        top[n * n_steps..(n + 1) * n_steps].copy_from_slice(&base);
        for (dst, &v) in bottom[n * n_steps..(n + 1) * n_steps].iter_mut().zip(&base) {
            *dst = 1 - v;
        }
    }
}

fn expected_counts(w: &AssignmentMatrix, p: f64) -> Result<(usize, usize)> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Probability(format!(
            "p must lie inside (0,1), got {p}"
        )));
    }
    let per_row = integral(p * w.n_steps as f64);
    let per_col = integral(p * w.n_units as f64);
    match (per_row, per_col) {
        (Some(r), Some(c)) => Ok((r, c)),
        _ => Err(Error::Probability(format!(
            "p*N and p*S must be integers (p={p}, N={}, S={})",
            w.n_units, w.n_steps
        ))),
    }
}

/// First violated balance constraint, if any, as a human-readable message
/// with 1-based indices.
pub fn balance_violation(w: &AssignmentMatrix, p: f64) -> Result<Option<String>> {
    let (per_row, per_col) = expected_counts(w, p)?;
    if let Some((n, sum)) = w
        .row_sums()
        .into_iter()
        .enumerate()
        .find(|&(_, sum)| sum != per_row)
    {
        return Ok(Some(format!(
            "row {} sums to {sum}, expected p*S = {per_row}",
            n + 1
        )));
    }
    if let Some((s, sum)) = w
        .column_sums()
        .into_iter()
        .enumerate()
        .find(|&(_, sum)| sum != per_col)
    {
        return Ok(Some(format!(
            "column t{} sums to {sum}, expected p*N = {per_col}",
            s + 1
        )));
    }
    Ok(None)
}

/// True iff every row sums to `pS` and every column to `pN`.
pub fn check_balanced(w: &AssignmentMatrix, p: f64) -> Result<bool> {
    Ok(balance_violation(w, p)?.is_none())
}

/// First (unit, timestep) where a row changes value away from a
/// breakpoint, 1-based.
pub fn regularity_violation(
    w: &AssignmentMatrix,
    breakpoints: &[usize],
) -> Result<Option<(usize, usize)>> {
    validate_breakpoints(breakpoints, w.n_steps)?;
    for (n, row) in w.rows().enumerate() {
        let mut k = 0;
        for s in 1..w.n_steps {
            // 1-based timestep s+1 starts a new segment when it is the next breakpoint
            if breakpoints.get(k + 1) == Some(&(s + 1)) {
                k += 1;
                continue;
            }
            if row[s] != row[s - 1] {
                return Ok(Some((n + 1, s + 1)));
            }
        }
    }
    Ok(None)
}

/// True iff every row is constant between consecutive breakpoints.
pub fn check_regular(w: &AssignmentMatrix, breakpoints: &[usize]) -> Result<bool> {
    Ok(regularity_violation(w, breakpoints)?.is_none())
}

/// Test-scale sampler for the balanced design: draws iid Bernoulli(p)
/// matrices until one is balanced. Requires `N*S <= 24`.
pub fn sample_bsd_rejection_oracle(
    n_units: usize,
    n_steps: usize,
    p: f64,
    seed: u64,
    attempt_cap: u64,
) -> Result<AssignmentMatrix> {
    if n_units * n_steps > 24 {
        return Err(Error::InvalidArgument(format!(
            "rejection oracle is limited to N*S <= 24 (got {})",
            n_units * n_steps
        )));
    }
    let probe = AssignmentMatrix::filled(n_units, n_steps, false);
    expected_counts(&probe, p)?;
    let mut rng = rng_from_seed(seed);
    let mut w = probe;
    for _ in 0..attempt_cap {
        for v in w.values.iter_mut() {
            *v = rng.random_bool(p) as u8;
        }
        if check_balanced(&w, p)? {
            w.seed = Some(seed);
            return Ok(w);
        }
    }
    Err(Error::AttemptCap { cap: attempt_cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> AssignmentMatrix {
        AssignmentMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn item_randomized_rows_are_constant() {
        let spec = DesignSpec::item_randomized(5, 6, 0.6).unwrap();
        for seed in 0..50 {
            let w = sample(&spec, seed).unwrap();
            let sums = w.row_sums();
            assert!(sums.iter().all(|&s| s == 0 || s == 6));
            assert_eq!(sums.iter().filter(|&&s| s == 6).count(), 3);
        }
    }

    #[test]
    fn switchback_columns_are_constant() {
        let spec = DesignSpec::switchback(4, 10, 0.3).unwrap();
        for seed in 0..50 {
            let w = sample(&spec, seed).unwrap();
            let cols = w.column_sums();
            assert!(cols.iter().all(|&c| c == 0 || c == 4));
            assert_eq!(cols.iter().filter(|&&c| c == 4).count(), 3);
        }
    }

    #[test]
    fn rbsd_two_by_two_support() {
        let spec = DesignSpec::rbsd(2, 2).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..200 {
            let w = sample(&spec, seed).unwrap();
            let rows = w.to_rows();
            assert!(rows == vec![vec![1, 0], vec![0, 1]] || rows == vec![vec![0, 1], vec![1, 0]]);
            seen.insert(rows);
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn rbsd_rejects_bad_specs() {
        assert!(DesignSpec::rbsd(3, 4).is_err());
        assert!(DesignSpec::rbsd(4, 5).is_err());
        let mut spec = DesignSpec::rbsd(4, 4).unwrap();
        spec.p = 0.25;
        let err = sample(&spec, 0).unwrap_err().to_string();
        assert!(err.contains("p = 1/2"), "{err}");
    }

    #[test]
    fn invalid_specs_name_the_invariant() {
        let err = DesignSpec::item_randomized(5, 6, 0.5)
            .unwrap_err()
            .to_string();
        assert!(err.contains("p*N"), "{err}");
        let err = DesignSpec::switchback(5, 7, 0.5).unwrap_err().to_string();
        assert!(err.contains("p*S"), "{err}");
        let err = DesignSpec::regular_switchback(2, 6, vec![1, 4], vec![0.5, 1.0])
            .unwrap_err()
            .to_string();
        assert!(err.contains("weight 2"), "{err}");
        assert!(DesignSpec::regular_switchback(2, 6, vec![2, 4], vec![0.5, 0.5]).is_err());
        assert!(DesignSpec::regular_switchback(2, 6, vec![1, 4, 4], vec![0.5; 3]).is_err());
        assert!(DesignSpec::regular_switchback(2, 6, vec![1, 7], vec![0.5; 2]).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        for spec in [
            DesignSpec::rbsd(6, 8).unwrap(),
            DesignSpec::iid_multi_unit(6, 8, 0.3).unwrap(),
            DesignSpec::regular_switchback(6, 8, vec![1, 3, 6], vec![0.2, 0.5, 0.8]).unwrap(),
        ] {
            assert_eq!(sample(&spec, 99).unwrap(), sample(&spec, 99).unwrap());
        }
    }

    #[test]
    fn balanced_examples() {
        assert!(check_balanced(&m(&[&[1, 0], &[0, 1]]), 0.5).unwrap());
        assert!(!check_balanced(&m(&[&[1, 1], &[0, 0]]), 0.5).unwrap());
        let msg = balance_violation(&m(&[&[1, 1], &[0, 0]]), 0.5)
            .unwrap()
            .unwrap();
        assert!(msg.contains("row 1 sums to 2"), "{msg}");
        assert!(check_balanced(&m(&[&[1, 0, 1]]), 0.5).is_err());
    }

    #[test]
    fn regular_examples() {
        assert!(check_regular(&m(&[&[1, 1, 0, 0]]), &[1, 3]).unwrap());
        assert!(!check_regular(&m(&[&[1, 0, 0, 0]]), &[1, 3]).unwrap());
        assert_eq!(
            regularity_violation(&m(&[&[1, 0, 0, 0]]), &[1, 3]).unwrap(),
            Some((1, 2))
        );
        assert!(check_regular(&m(&[&[1, 0, 1, 0], &[0, 1, 1, 0]]), &[1, 2, 3, 4]).unwrap());
        assert!(check_regular(&m(&[&[1, 0]]), &[2]).is_err());
    }

    #[test]
    fn regular_sampler_respects_breakpoints() {
        let spec =
            DesignSpec::regular_switchback(20, 9, vec![1, 2, 5, 9], vec![0.3, 0.5, 0.7, 0.5])
                .unwrap();
        for seed in 0..100 {
            let w = sample(&spec, seed).unwrap();
            assert!(check_regular(&w, &spec.breakpoints).unwrap());
        }
    }

    #[test]
    fn rejection_oracle_returns_balanced() {
        for seed in 0..20 {
            let w = sample_bsd_rejection_oracle(2, 4, 0.5, seed, DEFAULT_ATTEMPT_CAP).unwrap();
            assert!(check_balanced(&w, 0.5).unwrap());
        }
        assert!(sample_bsd_rejection_oracle(5, 5, 0.5, 0, 10).is_err());
        let err = sample_bsd_rejection_oracle(4, 6, 0.5, 0, 1);
        // one attempt almost never lands on a balanced 4x6 matrix
        if let Err(e) = err {
            assert!(e.to_string().contains("1 attempts"));
        }
    }

    #[test]
    fn coin_index_tracks_segments() {
        let spec = DesignSpec::regular_switchback(1, 6, vec![1, 4], vec![0.3, 0.7]).unwrap();
        let idx: Vec<usize> = (0..6).map(|s| spec.coin_index(s)).collect();
        assert_eq!(idx, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = DesignSpec::regular_switchback(4, 6, vec![1, 4], vec![0.3, 0.7]).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"regular_switchback\""));
        let back: DesignSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
