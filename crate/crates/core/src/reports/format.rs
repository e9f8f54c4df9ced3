//! JSON, CSV and markdown rendering.
//!
//! JSON keeps struct field order and uses shortest round-trip float
//! formatting, so re-parsing reproduces every float bit for bit.

use serde::Serialize;

use super::ComparisonReport;
use crate::error::{GhaError, Result};

fn render_error(e: impl std::fmt::Display) -> GhaError {
    GhaError::Domain(format!("output rendering failed: {e}"))
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(render_error)?;
    s.push('\n');
    Ok(s)
}

/// RFC-4180 CSV with a header row taken from the field names.
pub fn csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(render_error)?;
    }
    let bytes = w.into_inner().map_err(render_error)?;
    String::from_utf8(bytes).map_err(render_error)
}

/// A markdown table with the same columns as [`csv`].
pub fn markdown<T: Serialize>(rows: &[T]) -> Result<String> {
    let flat = csv(rows)?;
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(flat.as_bytes());
    let mut out = String::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(render_error)?;
        let cells: Vec<String> = record.iter().map(|c| c.replace('|', "\\|")).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
        if i == 0 {
            out.push_str(&format!("|{}\n", "---|".repeat(cells.len())));
        }
    }
    Ok(out)
}

pub fn report_csv(report: &ComparisonReport) -> Result<String> {
    csv(&report.rows)
}

pub fn report_markdown(report: &ComparisonReport) -> Result<String> {
    let s = &report.summary;
    let mut out = format!("## Table {}\n\n", report.table);
    out.push_str(&markdown(&report.rows)?);
    out.push_str(&format!(
        "\n{} cells, {} disputed, {} failures, max relative error {:.3e}\n",
        s.cells, s.disputed, s.failures, s.max_rel_error
    ));
    Ok(out)
}
