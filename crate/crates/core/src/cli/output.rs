use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::variance::VarianceReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarianceRow {
    pub q: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub h: usize,
    pub function: &'static str,
    /// Exact value, `num` or `num/den`.
    pub variance_direct: Option<String>,
    pub variance_char: Option<f64>,
    pub abs_gap: Option<f64>,
    pub theorem_ratio: Option<f64>,
}

impl VarianceRow {
    pub fn from_report(r: &VarianceReport) -> VarianceRow {
        VarianceRow {
            q: r.q,
            n: r.n,
            h: r.h,
            function: r.function.name(),
            variance_direct: r.direct.as_ref().map(ToString::to_string),
            variance_char: r.charside,
            abs_gap: r.abs_gap,
            theorem_ratio: r.theorem_ratio.filter(|_| r.h >= 1),
        }
    }
}

/// One line of the sweep table. Split-sum ratios are maxima over `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub h: usize,
    pub var_direct: f64,
    pub var_char: Option<f64>,
    pub bound_n5: Option<f64>,
    pub ratio: Option<f64>,
    pub largepf_ratio: Option<f64>,
    pub smoothpf_ratio: Option<f64>,
}

pub fn write_rows<T: Serialize>(mut w: impl Write, format: Format, rows: &[T]) -> Result<()> {
    match format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            for row in rows {
                out.serialize(row).map_err(csv_error)?;
            }
            out.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows).map_err(|e| Error::Io(e.into()))?;
            writeln!(w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}
