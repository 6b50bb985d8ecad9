use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::special::LogScalar;

/// Provenance of an eigenvalue sequence.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SequenceMeta {
    pub operator: String,
    pub truncation: usize,
    pub b: f64,
    pub level: usize,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// Non-increasing eigenvalues in log domain together with the index `k` of
/// the basis vector (or section row) each one originated from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueSequence {
    values: Vec<LogScalar>,
    origin: Vec<usize>,
    /// Magnitude of the first diagonal entry left out of the section, if known.
    floor: Option<LogScalar>,
    pub meta: SequenceMeta,
}

impl EigenvalueSequence {
    /// Sorts `indexed` (entry `k` belongs to index `k`) into non-increasing
    /// order; ties keep ascending index.
    pub fn from_indexed(indexed: Vec<LogScalar>, meta: SequenceMeta) -> Self {
        let mut order: Vec<usize> = (0..indexed.len()).collect();
        order.sort_by(|&i, &j| indexed[j].total_cmp(&indexed[i]).then(i.cmp(&j)));
        Self {
            values: order.iter().map(|&i| indexed[i]).collect(),
            origin: order,
            floor: None,
            meta,
        }
    }

    pub fn with_floor(mut self, floor: LogScalar) -> Self {
        self.floor = Some(floor);
        self
    }

    pub fn values(&self) -> &[LogScalar] {
        &self.values
    }

    /// Index of the originating basis vector of each sorted value.
    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    /// Values in originating-index order.
    pub fn indexed(&self) -> Vec<LogScalar> {
        let mut out = vec![LogScalar::ZERO; self.values.len()];
        for (v, &k) in self.values.iter().zip(&self.origin) {
            out[k] = *v;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<LogScalar> {
        self.values.get(k).copied()
    }

    pub fn floor(&self) -> Option<LogScalar> {
        self.floor
    }

    /// Writes `k,sign,ln_abs_value` rows after a `#` metadata line.
    pub fn write_csv<W: Write>(&self, mut out: W, extra: &[(&str, String)]) -> Result<()> {
        let mut header = format!(
            "# operator={};truncation={};b={};level={}",
            self.meta.operator, self.meta.truncation, self.meta.b, self.meta.level
        );
        for (k, v) in extra {
            header.push_str(&format!(";{k}={v}"));
        }
        writeln!(out, "{header}")?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["k", "sign", "ln_abs_value"])?;
        for (k, v) in self.values.iter().enumerate() {
            w.write_record([k.to_string(), v.sign().to_string(), format_ln(v.ln_abs())])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn format_ln(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:?}")
    }
}
