//! Randomized item-by-time experiments robust to carryover.
//!
//! The crate samples assignment matrices from five designs (including
//! regular balanced switchback designs), computes the exact assignment
//! probabilities that Horvitz-Thompson estimators need, estimates average
//! and lag-ℓ causal effects with per-unit standard errors, places
//! switchback breakpoints to minimize worst-case variance, and runs
//! Monte-Carlo evaluations on real or synthetic outcome panels.
//!
//! ```
//! use switchback::{design, estimate, exposure};
//!
//! let spec = design::DesignSpec::rbsd(4, 14).unwrap();
//! let w = design::sample(&spec, 7).unwrap();
//! assert!(design::check_balanced(&w, 0.5).unwrap());
//!
//! let window = exposure::window_probs(&spec, 1).unwrap();
//! assert!((window.p_all_treated - 12.0 / 52.0).abs() < 1e-15);
//!
//! let y = switchback::OutcomeMatrix::zeros(4, 14);
//! let report = estimate::ht_tau_lag(&w, &y, 1, &spec).unwrap();
//! assert_eq!(report.point, 0.0);
//! ```

pub mod breakpoints;
pub mod cli;
pub mod design;
pub mod error;
pub mod estimate;
pub mod exposure;
pub mod io;
mod outcome;
pub mod rng;
pub mod sim;

pub use design::{AssignmentMatrix, DesignKind, DesignSpec};
pub use error::{Error, Result};
pub use estimate::{Estimand, EstimateReport, UnitEffects};
pub use exposure::{ProbabilityProvider, WindowProbability};
pub use outcome::OutcomeMatrix;
