//! Matrix CSV files and JSON sidecars.
//!
//! Both assignment and outcome panels use the header `unit,t1,…,tS` and one
//! row per unit. Error locations are 1-based: row 1 is the header line and
//! column 1 is the `unit` column.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::design::{AssignmentMatrix, DesignSpec};
use crate::error::{Error, Result};
use crate::outcome::OutcomeMatrix;

/// Version tag written into every JSON document this crate emits.
pub const SCHEMA_VERSION: &str = "1.0";

/// Design and seed that produced an assignment CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentSidecar {
    pub schema_version: String,
    pub spec: DesignSpec,
    pub seed: u64,
}

impl AssignmentSidecar {
    pub fn new(spec: DesignSpec, seed: u64) -> Self {
        AssignmentSidecar {
            schema_version: SCHEMA_VERSION.to_string(),
            spec,
            seed,
        }
    }
}

/// Wraps a report with the schema version for serialization.
#[derive(Debug, Serialize)]
pub struct Versioned<'a, T: Serialize> {
    pub schema_version: &'static str,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn versioned<T: Serialize>(body: &T) -> Versioned<'_, T> {
    Versioned {
        schema_version: SCHEMA_VERSION,
        body,
    }
}

fn header(n_steps: usize) -> Vec<String> {
    std::iter::once("unit".to_string())
        .chain((1..=n_steps).map(|s| format!("t{s}")))
        .collect()
}

struct RawPanel {
    unit_ids: Vec<String>,
    cells: Vec<Vec<String>>,
    lines: Vec<u64>,
}

fn read_panel<R: Read>(reader: R, source: &str) -> Result<RawPanel> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let fmt_err = |message: String| Error::Format {
        path: source.to_string(),
        message,
    };
    let headers = rdr.headers()?.clone();
    if headers.iter().all(str::is_empty) {
        return Err(fmt_err("no data rows".into()));
    }
    if headers.len() < 2 || headers.get(0) != Some("unit") {
        return Err(fmt_err(format!(
            "expected header `unit,t1,…,tS`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let n_steps = headers.len() - 1;
    for (i, h) in headers.iter().enumerate().skip(1) {
        if h != format!("t{i}") {
            return Err(Error::Cell {
                path: source.to_string(),
                row: 1,
                column: i + 1,
                message: format!("header `{h}` should be `t{i}`"),
            });
        }
    }
    let mut panel = RawPanel {
        unit_ids: Vec::new(),
        cells: Vec::new(),
        lines: Vec::new(),
    };
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != n_steps + 1 {
            return Err(Error::Cell {
                path: source.to_string(),
                row: line,
                column: record.len().min(n_steps + 1) + 1,
                message: format!("row has {} fields, expected {}", record.len(), n_steps + 1),
            });
        }
        panel.unit_ids.push(record[0].to_string());
        panel
            .cells
            .push(record.iter().skip(1).map(str::to_string).collect());
        panel.lines.push(line);
    }
    if panel.cells.is_empty() {
        return Err(fmt_err("no data rows".into()));
    }
    Ok(panel)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

pub fn parse_assignment_csv<R: Read>(reader: R, source: &str) -> Result<AssignmentMatrix> {
    let panel = read_panel(reader, source)?;
    let mut rows = Vec::with_capacity(panel.cells.len());
    for (cells, &line) in panel.cells.iter().zip(&panel.lines) {
        let row = cells
            .iter()
            .enumerate()
            .map(|(s, cell)| match cell.as_str() {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(Error::Cell {
                    path: source.to_string(),
                    row: line,
                    column: s + 2,
                    message: format!("assignment `{other}` is not 0 or 1"),
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        rows.push(row);
    }
    AssignmentMatrix::from_rows(rows)
}

pub fn read_assignment_csv(path: impl AsRef<Path>) -> Result<AssignmentMatrix> {
    let path = path.as_ref();
    parse_assignment_csv(open(path)?, &path.display().to_string())
}

pub fn write_assignment<W: Write>(w: &AssignmentMatrix, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(header(w.n_steps()))?;
    for (n, row) in w.rows().enumerate() {
        let mut record = vec![(n + 1).to_string()];
        record.extend(row.iter().map(|v| v.to_string()));
        wtr.write_record(&record)?;
    }
    wtr.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn write_assignment_csv(w: &AssignmentMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_assignment(w, file)
}

pub fn parse_outcome_csv<R: Read>(reader: R, source: &str) -> Result<OutcomeMatrix> {
    let panel = read_panel(reader, source)?;
    let n_steps = panel.cells[0].len();
    let mut values = Vec::with_capacity(panel.cells.len() * n_steps);
    for (cells, &line) in panel.cells.iter().zip(&panel.lines) {
        for (s, cell) in cells.iter().enumerate() {
            let v: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::Cell {
                    path: source.to_string(),
                    row: line,
                    column: s + 2,
                    message: format!("outcome `{cell}` is not a finite number"),
                })?;
            values.push(v);
        }
    }
    OutcomeMatrix::new(panel.cells.len(), n_steps, values)?.with_unit_ids(panel.unit_ids)
}

pub fn read_outcome_csv(path: impl AsRef<Path>) -> Result<OutcomeMatrix> {
    let path = path.as_ref();
    parse_outcome_csv(open(path)?, &path.display().to_string())
}

pub fn write_outcome<W: Write>(y: &OutcomeMatrix, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(header(y.n_steps()))?;
    for (n, row) in y.rows().enumerate() {
        let id = y
            .unit_ids
            .as_ref()
            .map_or_else(|| (n + 1).to_string(), |ids| ids[n].clone());
        let mut record = vec![id];
        // shortest round-trip representation
        record.extend(row.iter().map(|v| v.to_string()));
        wtr.write_record(&record)?;
    }
    wtr.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn write_outcome_csv(y: &OutcomeMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_outcome(y, file)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let mut text = String::new();
    open(path)?
        .read_to_string(&mut text)
        .map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
