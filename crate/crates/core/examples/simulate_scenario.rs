// Drive the command-line front end from code: write a scenario file, run
// `simulate` on it and read back the report and per-replicate CSV.
//
// Run with `cargo run --example simulate_scenario`.

use switchback::cli::run_cli;
use switchback::{Error, Estimand, Result};

const SCENARIO: &str = r#"{
  "designs": [{"kind": "item_randomized"}, {"kind": "rbsd"}],
  "deltas": [0.2, 0.2],
  "reps": 8,
  "master_seed": 42,
  "base": {"lognormal": {"n_units": 200, "n_steps": 14, "seed": 42}},
  "report_path": "report.json",
  "replicates_path": "replicates.csv"
}"#;

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("switchback-scenario-{}", std::process::id()));
    let io = |e| Error::Io {
        path: dir.clone(),
        source: e,
    };
    std::fs::create_dir_all(&dir).map_err(io)?;
    let scenario = dir.join("scenario.json");
    std::fs::write(&scenario, SCENARIO).map_err(io)?;

    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli(
        [
            "switchback",
            "simulate",
            "--scenario",
            scenario.to_str().unwrap(),
        ],
        &mut out,
        &mut err,
    );
    if code != 0 {
        return Err(Error::InvalidArgument(
            String::from_utf8_lossy(&err).into_owned(),
        ));
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).map_err(io)?)?;
    for cell in report["cells"].as_array().into_iter().flatten() {
        println!(
            "{:<6} {:<9} truth {:.4} ME {:+.4} FNR {}",
            cell["design"].as_str().unwrap_or("?"),
            serde_json::from_value::<Estimand>(cell["estimator"].clone())?.to_string(),
            cell["truth"].as_f64().unwrap_or(f64::NAN),
            cell["me"].as_f64().unwrap_or(f64::NAN),
            cell["fnr"]
        );
    }
    let csv = std::fs::read_to_string(dir.join("replicates.csv")).map_err(io)?;
    println!(
        "{} replicate rows, header: {}",
        csv.lines().count() - 1,
        csv.lines().next().unwrap_or("")
    );
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
