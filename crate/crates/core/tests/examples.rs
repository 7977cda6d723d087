// Runs every example at a reduced size.

macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(generate_designs, "generate_designs.rs");
example!(exposure_probabilities, "exposure_probabilities.rs");
example!(estimate_effects, "estimate_effects.rs");
example!(optimize_breakpoints, "optimize_breakpoints.rs");
example!(aa, "aa_study.rs");
example!(carryover_table, "carryover_table.rs");
example!(synthetic_data, "synthetic_data.rs");
example!(simulate_scenario, "simulate_scenario.rs");

#[test]
fn generate_designs_runs() {
    generate_designs::run_example().unwrap();
}

#[test]
fn exposure_probabilities_runs() {
    exposure_probabilities::run_example().unwrap();
}

#[test]
fn estimate_effects_runs() {
    estimate_effects::run_example().unwrap();
}

#[test]
fn optimize_breakpoints_runs() {
    optimize_breakpoints::run_example().unwrap();
}

#[test]
fn aa_study_runs() {
    aa::run_example().unwrap();
}

#[test]
fn carryover_table_runs() {
    carryover_table::run_example().unwrap();
    assert_eq!(carryover_table::EFFECT_GRID.len(), 4);
}

#[test]
fn synthetic_data_runs() {
    synthetic_data::run_example().unwrap();
}

#[test]
fn simulate_scenario_runs() {
    simulate_scenario::run_example().unwrap();
}
