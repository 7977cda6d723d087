//! Command-line front end. Every subcommand prints JSON (or CSV for
//! matrices) and returns 0 on success, 1 on data errors and 2 on usage
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::breakpoints::{optimize, BreakpointProblem, SearchMode};
use crate::design::{
    balance_violation, regularity_violation, sample, AssignmentMatrix, DesignKind, DesignSpec,
};
use crate::error::{Error, Result};
use crate::estimate::{estimate, Estimand};
use crate::exposure::{window_probs, window_probs_at, WindowProbability};
use crate::io::{
    read_assignment_csv, read_json, read_outcome_csv, to_json_pretty, versioned, write_assignment,
    write_outcome, write_text, AssignmentSidecar,
};
use crate::outcome::OutcomeMatrix;
use crate::sim::{
    gen_lognormal_items, gen_powerlaw_users, monte_carlo, sample_skewness, CarryoverModel,
    LogNormalParams, MonteCarloConfig, SimulationReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "switchback",
    version,
    about = "Switchback experiment designs, exposure probabilities and Horvitz-Thompson estimates"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample an assignment matrix as CSV.
    Generate(GenerateArgs),
    /// Check an assignment CSV against a design's structural constraints.
    Validate(ValidateArgs),
    /// Horvitz-Thompson estimate from assignment and outcome CSVs.
    Estimate(EstimateArgs),
    /// Run a Monte-Carlo scenario file.
    Simulate(SimulateArgs),
    /// Minimax breakpoint placement.
    OptimizeBreakpoints(OptimizeArgs),
    /// Marginal and window assignment probabilities of a design.
    Probability(ProbabilityArgs),
    /// Synthetic skewed data.
    GenData(GenDataArgs),
}

fn parse_kind(s: &str) -> std::result::Result<DesignKind, String> {
    DesignKind::from_slug(s)
        .ok_or_else(|| format!("unknown design `{s}` (item, switchback, iid, regular, rbsd)"))
}

#[derive(Debug, Args)]
struct DesignArgs {
    /// item | switchback | iid | regular | rbsd
    #[arg(long, value_parser = parse_kind)]
    design: DesignKind,
    #[arg(long)]
    units: usize,
    #[arg(long)]
    steps: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Comma-separated 1-based breakpoints (regular designs).
    #[arg(long, value_delimiter = ',')]
    breakpoints: Vec<usize>,
    /// Comma-separated weights, one per breakpoint (regular designs).
    #[arg(long, value_delimiter = ',')]
    weights: Vec<f64>,
}

impl DesignArgs {
    fn spec(&self) -> Result<DesignSpec> {
        build_spec(
            self.design,
            self.units,
            self.steps,
            self.p,
            &self.breakpoints,
            &self.weights,
        )
    }
}

fn build_spec(
    kind: DesignKind,
    units: usize,
    steps: usize,
    p: f64,
    breakpoints: &[usize],
    weights: &[f64],
) -> Result<DesignSpec> {
    match kind {
        DesignKind::ItemRandomized => DesignSpec::item_randomized(units, steps, p),
        DesignKind::Switchback => DesignSpec::switchback(units, steps, p),
        DesignKind::IidMultiUnit => DesignSpec::iid_multi_unit(units, steps, p),
        DesignKind::Rbsd => {
            let spec = DesignSpec::rbsd(units, steps)?;
            if (p - 0.5).abs() > 1e-12 {
                return Err(Error::InvalidDesign(format!(
                    "rbsd requires p = 1/2, got {p}"
                )));
            }
            Ok(spec)
        }
        DesignKind::RegularSwitchback => {
            let bps = if breakpoints.is_empty() {
                (1..=steps).collect()
            } else {
                breakpoints.to_vec()
            };
            let ws = if weights.is_empty() {
                vec![p; bps.len()]
            } else {
                weights.to_vec()
            };
            DesignSpec::regular_switchback(units, steps, bps, ws)
        }
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    design: DesignArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sidecar JSON destination (default: `<out>.json`).
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long, value_parser = parse_kind)]
    design: DesignKind,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, value_delimiter = ',')]
    breakpoints: Vec<usize>,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long)]
    assignment: PathBuf,
    #[arg(long)]
    outcome: PathBuf,
    /// Sidecar JSON written by `generate`.
    #[arg(long)]
    design: PathBuf,
    /// Estimate the lag-L effect instead of the average treatment effect.
    #[arg(long)]
    lag: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Report destination (overrides the scenario's `report_path`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-replicate CSV destination (overrides `replicates_path`).
    #[arg(long)]
    replicates_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Dp,
    Auto,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[arg(long)]
    steps: usize,
    /// Number of breakpoints K after the first timestep.
    #[arg(long)]
    breakpoints: usize,
    /// Carryover order m.
    #[arg(long, default_value_t = 0)]
    carryover: usize,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProbabilityArgs {
    #[arg(long, value_parser = parse_kind)]
    design: DesignKind,
    #[arg(long)]
    steps: usize,
    #[arg(long, default_value_t = 2)]
    units: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    lag: usize,
    #[arg(long, value_delimiter = ',')]
    breakpoints: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    weights: Vec<f64>,
    /// 1-based timestep ending the window, for designs whose window
    /// probabilities vary over time.
    #[arg(long)]
    step: Option<usize>,
}

#[derive(Debug, Args)]
struct GenDataArgs {
    #[command(subcommand)]
    kind: GenDataKind,
}

#[derive(Debug, Subcommand)]
enum GenDataKind {
    /// Item sales panel with log-normal baselines.
    Lognormal(LognormalArgs),
    /// Per-user purchase counts from a discrete power law.
    Powerlaw(PowerlawArgs),
}

#[derive(Debug, Args)]
struct LognormalArgs {
    #[arg(long, default_value_t = 10_000)]
    units: usize,
    #[arg(long, default_value_t = 14)]
    steps: usize,
    #[arg(long, default_value_t = 2.4507)]
    mean_log: f64,
    #[arg(long, default_value_t = 1.4764)]
    sd_log: f64,
    #[arg(long, default_value_t = 0.7)]
    zero_frac: f64,
    #[arg(long, default_value_t = 99.0)]
    winsor_pct: f64,
    #[arg(long, default_value_t = 0.1)]
    jitter_sd: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Outcome CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PowerlawArgs {
    #[arg(long, default_value_t = 100_000)]
    users: usize,
    #[arg(long, default_value_t = 0.8)]
    coefficient: f64,
    #[arg(long, default_value_t = 2.5)]
    exponent: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Base outcomes of a scenario: either a CSV panel or generator settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseData {
    Csv(PathBuf),
    Lognormal(LogNormalParams),
}

/// Design entry in a scenario; the panel shape defaults to the base data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioDesign {
    pub kind: DesignKind,
    #[serde(default)]
    pub n_units: Option<usize>,
    #[serde(default)]
    pub n_steps: Option<usize>,
    #[serde(default = "half")]
    pub p: f64,
    #[serde(default)]
    pub breakpoints: Vec<usize>,
    #[serde(default)]
    pub weights: Vec<f64>,
}

fn half() -> f64 {
    0.5
}

fn default_reps() -> usize {
    100
}

fn default_alpha() -> f64 {
    0.05
}

fn default_lag() -> usize {
    1
}

/// Monte-Carlo scenario file read by `simulate`. Relative paths resolve
/// against the scenario file's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub designs: Vec<ScenarioDesign>,
    #[serde(default)]
    pub deltas: Vec<f64>,
    #[serde(default)]
    pub estimators: Option<Vec<Estimand>>,
    #[serde(default = "default_lag")]
    pub lag: usize,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub master_seed: u64,
    pub base: BaseData,
    #[serde(default)]
    pub report_path: Option<PathBuf>,
    #[serde(default)]
    pub replicates_path: Option<PathBuf>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        read_json(path)
    }

    fn resolve(dir: &Path, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            dir.join(p)
        }
    }

    pub fn base_panel(&self, dir: &Path) -> Result<OutcomeMatrix> {
        match &self.base {
            BaseData::Csv(p) => read_outcome_csv(Self::resolve(dir, p)),
            BaseData::Lognormal(params) => gen_lognormal_items(params),
        }
    }

    pub fn design_specs(&self, base: &OutcomeMatrix) -> Result<Vec<DesignSpec>> {
        self.designs
            .iter()
            .map(|d| {
                build_spec(
                    d.kind,
                    d.n_units.unwrap_or(base.n_units()),
                    d.n_steps.unwrap_or(base.n_steps()),
                    d.p,
                    &d.breakpoints,
                    &d.weights,
                )
            })
            .collect()
    }

    pub fn config(&self) -> MonteCarloConfig {
        MonteCarloConfig {
            estimators: self
                .estimators
                .clone()
                .unwrap_or_else(|| vec![Estimand::Tau, Estimand::TauLag(self.lag)]),
            reps: self.reps,
            alpha: self.alpha,
            master_seed: self.master_seed,
        }
    }

    /// Runs the scenario. `dir` anchors relative paths.
    pub fn run(&self, dir: &Path) -> Result<SimulationReport> {
        let base = self.base_panel(dir)?;
        let specs = self.design_specs(&base)?;
        let model = CarryoverModel::new(self.deltas.clone())?;
        monte_carlo(&base, &specs, &model, &self.config())
    }
}

/// Tidy per-replicate CSV: `design,replicate,estimator,estimate,std_error,p_value`.
pub fn write_replicates<W: Write>(report: &SimulationReport, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record([
        "design",
        "replicate",
        "estimator",
        "estimate",
        "std_error",
        "p_value",
    ])?;
    for r in &report.replicates {
        wtr.write_record([
            r.design.clone(),
            (r.replicate + 1).to_string(),
            r.estimator.to_string(),
            r.estimate.to_string(),
            r.std_error.to_string(),
            r.p_value.to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Debug, Serialize)]
struct ValidationReport {
    design: DesignKind,
    n_units: usize,
    n_steps: usize,
    valid: bool,
    checks: Vec<Check>,
}

fn constant_lines(w: &AssignmentMatrix, by_row: bool) -> Option<String> {
    if by_row {
        w.rows()
            .position(|r| r.iter().any(|&v| v != r[0]))
            .map(|n| format!("row {} is not constant", n + 1))
    } else {
        (0..w.n_steps())
            .find(|&s| w.column(s).any(|v| v != w.get(0, s)))
            .map(|s| format!("column t{} is not constant", s + 1))
    }
}

fn count_check(actual: usize, total: usize, p: f64, what: &str) -> Option<String> {
    let expected = p * total as f64;
    ((actual as f64 - expected).abs() > 1e-9)
        .then(|| format!("{actual} treated {what}, expected p*{total} = {expected}"))
}

fn validate_matrix(
    kind: DesignKind,
    w: &AssignmentMatrix,
    p: f64,
    bps: &[usize],
) -> Result<ValidationReport> {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, violation: Option<String>| {
        checks.push(Check {
            name,
            passed: violation.is_none(),
            detail: violation,
        })
    };
    match kind {
        DesignKind::Rbsd => {
            push("balanced", balance_violation(w, p)?);
            let every: Vec<usize> = (1..=w.n_steps()).collect();
            push(
                "regular",
                regularity_violation(w, &every)?
                    .map(|(n, s)| format!("row {n} changes at timestep {s}")),
            );
        }
        DesignKind::ItemRandomized => {
            push("constant_rows", constant_lines(w, true));
            let treated = w.rows().filter(|r| r[0] == 1).count();
            push(
                "treated_units",
                count_check(treated, w.n_units(), p, "units"),
            );
        }
        DesignKind::Switchback => {
            push("constant_columns", constant_lines(w, false));
            let treated = (0..w.n_steps()).filter(|&s| w.get(0, s) == 1).count();
            push(
                "treated_steps",
                count_check(treated, w.n_steps(), p, "timesteps"),
            );
        }
        DesignKind::RegularSwitchback => {
            let every: Vec<usize> = (1..=w.n_steps()).collect();
            let bps = if bps.is_empty() { &every[..] } else { bps };
            push(
                "regular",
                regularity_violation(w, bps)?.map(|(n, s)| {
                    format!("row {n} changes at timestep {s}, which is not a breakpoint")
                }),
            );
        }
        DesignKind::IidMultiUnit => push("binary", None),
    }
    let valid = checks.iter().all(|c| c.passed);
    Ok(ValidationReport {
        design: kind,
        n_units: w.n_units(),
        n_steps: w.n_steps(),
        valid,
        checks,
    })
}

#[derive(Debug, Serialize)]
struct ProbabilityReport {
    #[serde(flatten)]
    window: WindowProbability,
    marginal: f64,
    /// 1-based timestep ending the window, when position-specific.
    #[serde(skip_serializing_if = "Option::is_none")]
    step: Option<usize>,
}

#[derive(Debug, Serialize)]
struct LognormalSummary {
    params: LogNormalParams,
    n_units: usize,
    n_steps: usize,
    positive_units: usize,
    mean_positive: f64,
    skewness_positive: f64,
    max: f64,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, text: &str) -> Result<()> {
    match dest {
        Some(path) => write_text(path, text),
        None => writeln!(out, "{text}").map_err(|e| Error::io("<stdout>", e)),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    to_json_pretty(&versioned(value))
}

fn run_command(command: Command, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match command {
        Command::Generate(args) => {
            let spec = args.design.spec()?;
            let w = sample(&spec, args.seed)?;
            let mut csv = Vec::new();
            write_assignment(&w, &mut csv)?;
            let sidecar = to_json_pretty(&AssignmentSidecar::new(spec, args.seed))?;
            match &args.out {
                Some(path) => {
                    write_text(path, &String::from_utf8_lossy(&csv))?;
                    let side = args
                        .sidecar
                        .clone()
                        .unwrap_or_else(|| path.with_extension("json"));
                    write_text(&side, &sidecar)?;
                    emit(out, None, &sidecar)?;
                }
                None => {
                    out.write_all(&csv).map_err(|e| Error::io("<stdout>", e))?;
                    if let Some(side) = &args.sidecar {
                        write_text(side, &sidecar)?;
                    }
                }
            }
        }
        Command::Validate(args) => {
            let w = read_assignment_csv(&args.input)?;
            let report = validate_matrix(args.design, &w, args.p, &args.breakpoints)?;
            emit(out, None, &json(&report)?)?;
            if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
                return Err(Failure::Data(format!(
                    "{}: {} check failed: {}",
                    args.input.display(),
                    bad.name,
                    bad.detail.as_deref().unwrap_or("violated")
                )));
            }
        }
        Command::Estimate(args) => {
            let w = read_assignment_csv(&args.assignment)?;
            let y = read_outcome_csv(&args.outcome)?;
            let sidecar: AssignmentSidecar = read_json(&args.design)?;
            if (sidecar.spec.n_units, sidecar.spec.n_steps) != (w.n_units(), w.n_steps()) {
                return Err(Error::Dimension(format!(
                    "design is {}x{} but the assignment CSV is {}x{}",
                    sidecar.spec.n_units,
                    sidecar.spec.n_steps,
                    w.n_units(),
                    w.n_steps()
                ))
                .into());
            }
            let estimand = args.lag.map_or(Estimand::Tau, Estimand::TauLag);
            let report = estimate(&w, &y, estimand, &sidecar.spec, args.alpha)?;
            emit(out, args.out.as_deref(), &json(&report)?)?;
        }
        Command::Simulate(args) => {
            let scenario = Scenario::load(&args.scenario)?;
            let dir = args
                .scenario
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_default();
            let report = scenario.run(&dir)?;
            let report_path = args.out.clone().or_else(|| {
                scenario
                    .report_path
                    .as_ref()
                    .map(|p| Scenario::resolve(&dir, p))
            });
            let csv_path = args.replicates_csv.clone().or_else(|| {
                scenario
                    .replicates_path
                    .as_ref()
                    .map(|p| Scenario::resolve(&dir, p))
            });
            if let Some(path) = csv_path {
                let file = std::fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
                write_replicates(&report, file)?;
            }
            emit(out, report_path.as_deref(), &json(&report)?)?;
        }
        Command::OptimizeBreakpoints(args) => {
            let problem = BreakpointProblem::new(args.steps, args.breakpoints, args.carryover)?;
            let mode = match args.mode {
                ModeArg::Exhaustive => SearchMode::Exhaustive,
                ModeArg::Dp => SearchMode::Dp,
                ModeArg::Auto => SearchMode::Auto,
            };
            let solution = optimize(&problem, mode)?;
            emit(out, args.out.as_deref(), &json(&solution)?)?;
        }
        Command::Probability(args) => {
            let spec = build_spec(
                args.design,
                args.units,
                args.steps,
                args.p,
                &args.breakpoints,
                &args.weights,
            )?;
            let report = match args.step {
                None => {
                    let window = window_probs(&spec, args.lag)?;
                    let marginal = crate::exposure::marginal_prob(&spec, 0, args.lag)?;
                    ProbabilityReport {
                        window,
                        marginal,
                        step: None,
                    }
                }
                Some(step) => {
                    if step == 0 {
                        return Err(Failure::Usage("--step is 1-based".into()));
                    }
                    let (t, c) = window_probs_at(&spec, args.lag, step - 1)?;
                    ProbabilityReport {
                        marginal: crate::exposure::marginal_prob(&spec, 0, step - 1)?,
                        window: WindowProbability {
                            design: spec,
                            lag: args.lag,
                            p_all_treated: t,
                            p_all_control: c,
                        },
                        step: Some(step),
                    }
                }
            };
            emit(out, None, &json(&report)?)?;
        }
        Command::GenData(args) => match args.kind {
            GenDataKind::Lognormal(a) => {
                let params = LogNormalParams {
                    n_units: a.units,
                    n_steps: a.steps,
                    mean_log: a.mean_log,
                    sd_log: a.sd_log,
                    zero_frac: a.zero_frac,
                    winsor_pct: a.winsor_pct,
                    jitter_sd: a.jitter_sd,
                    seed: a.seed,
                };
                let panel = gen_lognormal_items(&params)?;
                match &a.out {
                    Some(path) => {
                        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
                        write_outcome(&panel, file)?;
                        let first: Vec<f64> =
                            panel.rows().map(|r| r[0]).filter(|&v| v > 0.0).collect();
                        let summary = LognormalSummary {
                            n_units: panel.n_units(),
                            n_steps: panel.n_steps(),
                            positive_units: first.len(),
                            mean_positive: first.iter().sum::<f64>() / first.len().max(1) as f64,
                            skewness_positive: if first.len() > 2 {
                                sample_skewness(&first)
                            } else {
                                0.0
                            },
                            max: panel.as_slice().iter().copied().fold(0.0, f64::max),
                            params,
                        };
                        emit(out, None, &json(&summary)?)?;
                    }
                    None => write_outcome(&panel, &mut *out)?,
                }
            }
            GenDataKind::Powerlaw(a) => {
                let sample = gen_powerlaw_users(a.users, a.coefficient, a.exponent, a.seed)?;
                emit(out, a.out.as_deref(), &json(&sample)?)?;
            }
        },
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run_command(cli.command, &mut buf)),
            Err(e) => Err(Failure::Data(format!("cannot start thread pool: {e}"))),
        },
        None => run_command(cli.command, &mut buf),
    };
    if out.write_all(&buf).and_then(|_| out.flush()).is_err() {
        let _ = writeln!(err, "error: cannot write to standard output");
        return 1;
    }
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
