//! Semi-synthetic evaluation: carryover outcome models, skewed base-data
//! generators and the Monte-Carlo protocol.

mod carryover;
mod generate;
mod monte_carlo;

pub use carryover::{apply_carryover, true_estimands, CarryoverModel, TrueEstimands};
pub use generate::{
    gen_lognormal_items, gen_powerlaw_users, sample_skewness, FrequencyRow, LogNormalParams,
    PowerLawSample,
};
pub use monte_carlo::{
    aa_study, monte_carlo, AaSummary, BoxSummary, CellSummary, MonteCarloConfig, ReplicateRecord,
    SimulationReport,
};
