use crate::error::{Error, Result};

/// N×S real-valued outcome panel, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeMatrix {
    n_units: usize,
    n_steps: usize,
    values: Vec<f64>,
    pub unit_ids: Option<Vec<String>>,
}

impl OutcomeMatrix {
    pub fn new(n_units: usize, n_steps: usize, values: Vec<f64>) -> Result<Self> {
        if n_units == 0 || n_steps == 0 {
            return Err(Error::Dimension("outcome matrix must be non-empty".into()));
        }
        if values.len() != n_units * n_steps {
            return Err(Error::Dimension(format!(
                "{} values do not fill a {n_units}x{n_steps} panel",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "outcome at unit {}, timestep {} is not finite",
                i / n_steps + 1,
                i % n_steps + 1
            )));
        }
        Ok(OutcomeMatrix {
            n_units,
            n_steps,
            values,
            unit_ids: None,
        })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_units = rows.len();
        let n_steps = rows.first().map_or(0, Vec::len);
        if let Some(n) = rows.iter().position(|r| r.len() != n_steps) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {n_steps}",
                n + 1,
                rows[n].len()
            )));
        }
        Self::new(n_units, n_steps, rows.concat())
    }

    pub fn zeros(n_units: usize, n_steps: usize) -> Self {
        OutcomeMatrix {
            n_units,
            n_steps,
            values: vec![0.0; n_units * n_steps],
            unit_ids: None,
        }
    }

    pub fn with_unit_ids(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.n_units {
            return Err(Error::Dimension(format!(
                "{} unit ids for {} units",
                ids.len(),
                self.n_units
            )));
        }
        self.unit_ids = Some(ids);
        Ok(self)
    }

    pub fn n_units(&self) -> usize {
        self.n_units
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn get(&self, n: usize, s: usize) -> f64 {
        self.values[n * self.n_steps + s]
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.values[n * self.n_steps..(n + 1) * self.n_steps]
    }

    pub fn row_mut(&mut self, n: usize) -> &mut [f64] {
        &mut self.values[n * self.n_steps..(n + 1) * self.n_steps]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n_steps)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Elementwise `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &OutcomeMatrix, b: f64) -> Result<OutcomeMatrix> {
        if (self.n_units, self.n_steps) != (other.n_units, other.n_steps) {
            return Err(Error::Dimension("outcome panels differ in shape".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        OutcomeMatrix::new(self.n_units, self.n_steps, values)
    }
}
