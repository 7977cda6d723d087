// Independent oracles: enumeration, Monte-Carlo frequencies and closed forms.

use std::collections::BTreeMap;

use switchback::breakpoints::objective_exact;
use switchback::design::{sample, sample_bsd_rejection_oracle, DEFAULT_ATTEMPT_CAP};
use switchback::exposure::{marginal_prob, window_probs_at};
use switchback::sim::{
    apply_carryover, gen_lognormal_items, gen_powerlaw_users, monte_carlo, sample_skewness,
    true_estimands, CarryoverModel, LogNormalParams, MonteCarloConfig,
};
use switchback::{AssignmentMatrix, DesignSpec, Estimand, OutcomeMatrix};

#[test]
fn rbsd_cells_are_fair_coins() {
    let spec = DesignSpec::rbsd(4, 6).unwrap();
    let reps = 100_000u64;
    let mut treated = [0u64; 24];
    for seed in 0..reps {
        let w = sample(&spec, seed).unwrap();
        for (t, &v) in treated.iter_mut().zip(w.as_slice()) {
            *t += v as u64;
        }
    }
    let se = (0.25 / reps as f64).sqrt();
    for (cell, &t) in treated.iter().enumerate() {
        let freq = t as f64 / reps as f64;
        assert!((freq - 0.5).abs() < 4.0 * se, "cell {cell}: {freq}");
    }
}

fn chi_square_uniform(counts: &BTreeMap<Vec<u8>, u64>, draws: u64) -> f64 {
    let expected = draws as f64 / counts.len() as f64;
    counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

#[test]
fn small_balanced_designs_are_uniform() {
    // 2x4 balanced matrices: a balanced top row over its complement
    let draws = 6_000;
    let spec = DesignSpec::rbsd(2, 4).unwrap();
    let mut constructive = BTreeMap::new();
    let mut rejection = BTreeMap::new();
    for seed in 0..draws {
        let w = sample(&spec, seed).unwrap();
        *constructive.entry(w.as_slice().to_vec()).or_insert(0) += 1;
        let w = sample_bsd_rejection_oracle(2, 4, 0.5, seed, DEFAULT_ATTEMPT_CAP).unwrap();
        *rejection.entry(w.as_slice().to_vec()).or_insert(0) += 1;
    }
    assert_eq!(constructive.len(), 6);
    assert_eq!(
        constructive.keys().collect::<Vec<_>>(),
        rejection.keys().collect::<Vec<_>>()
    );
    // 5 degrees of freedom, 0.1% critical value
    assert!(chi_square_uniform(&constructive, draws) < 20.52);
    assert!(chi_square_uniform(&rejection, draws) < 20.52);
}

#[test]
fn rejection_oracle_limits() {
    assert!(sample_bsd_rejection_oracle(5, 5, 0.5, 0, 10).is_err());
    assert!(sample_bsd_rejection_oracle(3, 4, 0.5, 0, 10).is_err());
}

#[test]
fn window_probabilities_match_frequencies() {
    let designs = [
        DesignSpec::item_randomized(4, 6, 0.5).unwrap(),
        DesignSpec::switchback(4, 6, 0.5).unwrap(),
        DesignSpec::iid_multi_unit(4, 6, 0.3).unwrap(),
        DesignSpec::regular_switchback(4, 6, vec![1, 3, 4], vec![0.4, 0.5, 0.7]).unwrap(),
        DesignSpec::rbsd(4, 6).unwrap(),
    ];
    let reps = 20_000u64;
    for spec in &designs {
        for lag in 0..=2 {
            let mut on = [0u64; 6];
            let mut off = [0u64; 6];
            for seed in 0..reps {
                let w = sample(spec, seed).unwrap();
                let row = w.row(1);
                for s in lag..6 {
                    let window = &row[s - lag..=s];
                    on[s] += window.iter().all(|&v| v == 1) as u64;
                    off[s] += window.iter().all(|&v| v == 0) as u64;
                }
            }
            for s in lag..6 {
                let (pt, pc) = window_probs_at(spec, lag, s).unwrap();
                for (p, count) in [(pt, on[s]), (pc, off[s])] {
                    let freq = count as f64 / reps as f64;
                    let se = (p * (1.0 - p) / reps as f64).sqrt();
                    assert!(
                        (freq - p).abs() < 4.0 * se,
                        "{:?} lag {lag} step {s}: {freq} vs {p}",
                        spec.kind
                    );
                }
            }
            let last_coin = spec.weights.last().copied().unwrap_or(spec.p);
            assert_eq!(marginal_prob(spec, 1, 5).unwrap(), last_coin);
        }
    }
}

/// Objective written out term by term from the gap sequence.
fn objective_by_gaps(bps: &[usize], m: i128, s: usize) -> i128 {
    let mut points: Vec<i128> = bps.iter().map(|&b| b as i128).collect();
    points.push(s as i128 + 1);
    let gaps: Vec<i128> = points.windows(2).map(|p| p[1] - p[0]).collect();
    let k = bps.len() as i128 - 1;
    let interior = &gaps[1..gaps.len() - 1];
    let squares: i128 = gaps.iter().map(|g| g * g).sum();
    let short: i128 = interior.iter().map(|g| (m - g).max(0).pow(2)).sum();
    4 * squares + 8 * m * interior.iter().sum::<i128>() + 4 * m * m * (k - 1) + 4 * short
}

#[test]
fn objective_matches_gap_form() {
    let mut sets = 0;
    for a in 2..=8usize {
        for b in a + 1..=8 {
            for c in b + 1..=8 {
                let bps = [1, a, b, c];
                assert_eq!(
                    objective_exact(&bps, 1, 8).unwrap(),
                    objective_by_gaps(&bps, 1, 8),
                    "{bps:?}"
                );
                sets += 1;
            }
        }
    }
    assert_eq!(sets, 35);
    // gaps 1,1,1,5: 4*28 + 8*2 + 4*3 - 4 + 0
    assert_eq!(objective_exact(&[1, 2, 3, 4], 1, 8).unwrap(), 136);
}

#[test]
fn counterfactual_estimands() {
    let base = gen_lognormal_items(&LogNormalParams {
        n_units: 50,
        seed: 1,
        ..LogNormalParams::default()
    })
    .unwrap();
    let t = true_estimands(&base, &CarryoverModel::new(vec![0.2, 0.0]).unwrap(), 1).unwrap();
    assert!((t.tau - 0.2).abs() < 1e-12 && (t.tau_lag - 0.2).abs() < 1e-12);
    let t = true_estimands(&base, &CarryoverModel::new(vec![0.2, 0.2]).unwrap(), 1).unwrap();
    assert!((t.tau_lag - 0.4).abs() < 1e-12);
    assert!((t.tau - (0.4 * 13.0 / 14.0 + 0.2 / 14.0)).abs() < 1e-12);
    let t = true_estimands(&base, &CarryoverModel::none(), 1).unwrap();
    assert_eq!((t.tau, t.tau_lag), (0.0, 0.0));

    let y = apply_carryover(
        &OutcomeMatrix::zeros(1, 2),
        &AssignmentMatrix::filled(1, 2, true),
        &CarryoverModel::new(vec![0.2, 0.2]).unwrap(),
    )
    .unwrap();
    assert!((y.get(0, 0) - 0.2).abs() < 1e-15 && (y.get(0, 1) - 0.4).abs() < 1e-15);
}

#[test]
fn lognormal_panel_is_skewed() {
    let panel = gen_lognormal_items(&LogNormalParams {
        seed: 8,
        ..LogNormalParams::default()
    })
    .unwrap();
    let positive: Vec<f64> = panel.rows().map(|r| r[0]).filter(|&v| v > 0.0).collect();
    assert!(sample_skewness(&positive) > 3.0);

    let raw = gen_lognormal_items(&LogNormalParams {
        n_units: 100_000,
        n_steps: 2,
        zero_frac: 0.0,
        winsor_pct: 100.0,
        jitter_sd: 0.0,
        seed: 8,
        ..LogNormalParams::default()
    })
    .unwrap();
    let mean = raw.rows().map(|r| r[0]).sum::<f64>() / 100_000.0;
    let expected = (2.4507f64 + 1.4764f64.powi(2) / 2.0).exp();
    assert!((mean / expected - 1.0).abs() < 0.05, "{mean} vs {expected}");
    assert!(raw.rows().all(|r| r[0] == r[1]));
}

#[test]
fn lognormal_rejects_bad_parameters() {
    for params in [
        LogNormalParams {
            zero_frac: 1.0,
            ..LogNormalParams::default()
        },
        LogNormalParams {
            winsor_pct: 0.0,
            ..LogNormalParams::default()
        },
        LogNormalParams {
            n_units: 0,
            ..LogNormalParams::default()
        },
    ] {
        assert!(gen_lognormal_items(&params).is_err());
    }
}

#[test]
fn powerlaw_frequencies() {
    let sample = gen_powerlaw_users(100_000, 0.8, 2.5, 5).unwrap();
    let count = |x: u64| {
        sample
            .table
            .iter()
            .find(|r| r.value == x)
            .map_or(0, |r| r.users) as f64
    };
    let (c1, c2) = (count(1), count(2));
    let ratio = c1 / c2;
    let se = ratio * (1.0 / c1 + 1.0 / c2).sqrt();
    assert!((ratio - 2f64.powf(2.5)).abs() < 4.0 * se, "{ratio}");
    assert!((1..6).all(|x| count(x) > count(x + 1)));

    let small = gen_powerlaw_users(10_000, 0.8, 2.5, 5).unwrap();
    assert!(small.skewness > 2.0);
    assert!(gen_powerlaw_users(10, 0.8, 0.9, 0).is_err());
}

#[test]
fn null_model_errors_are_centered() {
    let base = gen_lognormal_items(&LogNormalParams {
        n_units: 200,
        seed: 4,
        ..LogNormalParams::default()
    })
    .unwrap();
    let designs = [
        DesignSpec::item_randomized(200, 14, 0.5).unwrap(),
        DesignSpec::regular_every_step(200, 14, 0.5).unwrap(),
        DesignSpec::rbsd(200, 14).unwrap(),
    ];
    let config = MonteCarloConfig {
        reps: 100,
        master_seed: 4,
        ..MonteCarloConfig::default()
    };
    for deltas in [vec![0.0], vec![0.3, 0.1]] {
        let report = monte_carlo(
            &base,
            &designs,
            &CarryoverModel::new(deltas.clone()).unwrap(),
            &config,
        )
        .unwrap();
        assert_eq!(report.cells.len(), designs.len() * config.estimators.len());
        for cell in &report.cells {
            assert!(cell.mse >= cell.me * cell.me - 1e-12);
            assert!(cell.fpr.is_some() != cell.fnr.is_some());
            if deltas == [0.0] {
                let errors: Vec<f64> = cell.estimates.iter().map(|e| e - cell.truth).collect();
                let mean = errors.iter().sum::<f64>() / 100.0;
                let var = errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / 99.0;
                assert!(
                    cell.me.abs() <= 4.0 * (var / 100.0).sqrt(),
                    "{} {}",
                    cell.design,
                    cell.estimator
                );
            }
        }
    }
}

#[test]
fn lag_estimand_display() {
    assert_eq!(Estimand::TauLag(2).to_string(), "tau_lag2");
}

#[test]
fn two_by_two_rbsd_is_unbiased_for_constant_effects() {
    let spec = DesignSpec::rbsd(2, 2).unwrap();
    let support = [[1u8, 0, 0, 1], [0, 1, 1, 0]];
    let mut seen = std::collections::BTreeSet::new();
    for seed in 0..200 {
        let w = sample(&spec, seed).unwrap();
        assert!(support.iter().any(|m| m[..] == *w.as_slice()));
        seen.insert(w.as_slice().to_vec());
    }
    assert_eq!(seen.len(), 2);
    let (a, b) = (7.5, -2.25);
    let mean = support
        .iter()
        .map(|m| {
            let w = AssignmentMatrix::from_rows(vec![m[..2].to_vec(), m[2..].to_vec()]).unwrap();
            let y = OutcomeMatrix::from_rows(
                (0..2)
                    .map(|n| {
                        (0..2)
                            .map(|s| if w.get(n, s) == 1 { a } else { b })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            switchback::estimate::point_estimate(&w, &y, Estimand::Tau, &spec).unwrap()
        })
        .sum::<f64>()
        / 2.0;
    assert!((mean - (a - b)).abs() < 1e-12);
}

#[test]
fn long_horizon_window_probability_tends_to_a_quarter() {
    let at =
        |s: usize| switchback::exposure::window_probs(&DesignSpec::rbsd(2, s).unwrap(), 1).unwrap();
    for s in [4, 14, 100, 10_000] {
        let wp = at(s);
        let closed = (s as f64 - 2.0) / (4.0 * (s as f64 - 1.0));
        assert!((wp.p_all_treated - closed).abs() < 1e-15);
        assert_eq!(wp.p_all_treated, wp.p_all_control);
    }
    assert!((at(1_000_000).p_all_treated - 0.25).abs() < 1e-6);
}
