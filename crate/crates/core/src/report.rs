//! Report serialisation: JSON (round-trips to [`VerificationReport`]) and a
//! flat CSV with one row per bound result.

use std::fmt::Write as _;

use crate::error::{FracError, Result};
use crate::verifier::{CaseStatus, SweepRow, VerificationReport};

/// Column order of the flat report CSV.
pub const REPORT_CSV_HEADER: [&str; 11] = [
    "function_id",
    "a",
    "b",
    "alpha",
    "x",
    "bound_id",
    "lhs",
    "rhs_levels",
    "margins",
    "residuals",
    "status",
];

/// 17 significant digits in scientific notation.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn io_error(e: impl std::fmt::Display) -> FracError {
    FracError::InvalidArgument(format!("report serialisation failed: {e}"))
}

pub fn to_json(report: &VerificationReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(io_error)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<VerificationReport> {
    serde_json::from_str(text).map_err(io_error)
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(io_error)?;
    String::from_utf8(bytes).map_err(io_error)
}

/// Flat CSV: one row per `(case, bound)`; error records get a single row
/// with empty bound columns. Timing is not included.
pub fn to_csv(report: &VerificationReport) -> Result<String> {
    let mut w = writer();
    w.write_record(REPORT_CSV_HEADER).map_err(io_error)?;
    for rec in &report.records {
        let p = &rec.problem;
        let residuals = rec
            .identity_residuals
            .iter()
            .map(|(k, v)| format!("{k}={}", fmt_num(*v)))
            .collect::<Vec<_>>()
            .join(";");
        let status = match &rec.status {
            CaseStatus::Error(msg) => format!("error: {msg}"),
            other => other.label().to_string(),
        };
        let head = [
            p.function_id.clone(),
            fmt_num(p.a),
            fmt_num(p.b),
            fmt_num(p.alpha),
            fmt_num(p.x),
        ];
        if rec.bound_results.is_empty() {
            let row = head
                .iter()
                .cloned()
                .chain(["".into(), "".into(), "".into(), "".into(), residuals.clone(), status.clone()]);
            w.write_record(row).map_err(io_error)?;
        }
        for b in &rec.bound_results {
            let levels = b
                .rhs_levels
                .iter()
                .map(|l| format!("{}={}", l.label, fmt_num(l.value)))
                .collect::<Vec<_>>()
                .join(";");
            let margins = b.margins.iter().map(|m| fmt_num(*m)).collect::<Vec<_>>().join(";");
            let row = head.iter().cloned().chain([
                b.bound_id.clone(),
                fmt_num(b.lhs),
                levels,
                margins,
                residuals.clone(),
                status.clone(),
            ]);
            w.write_record(row).map_err(io_error)?;
        }
    }
    finish(w)
}

/// Sweep curves as CSV. The header is `x,lhs,rhs1,rhs2,K`, with a leading
/// `alpha` column when more than one order is present.
pub fn sweep_to_csv(rows: &[SweepRow]) -> Result<String> {
    let multi = rows.windows(2).any(|w| w[0].alpha != w[1].alpha);
    let mut out = String::new();
    if multi {
        out.push_str("alpha,");
    }
    out.push_str("x,lhs,rhs1,rhs2,K\n");
    for r in rows {
        if multi {
            write!(out, "{},", fmt_num(r.alpha)).map_err(io_error)?;
        }
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(r.x),
            fmt_num(r.lhs),
            fmt_num(r.rhs1),
            fmt_num(r.rhs2),
            fmt_num(r.k)
        )
        .map_err(io_error)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_has_17_digits() {
        assert_eq!(fmt_num(1.0 / 12.0), "8.3333333333333329e-2");
        assert_eq!(fmt_num(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_num(-2.5), "-2.5000000000000000e0");
    }

    #[test]
    fn sweep_header_single_alpha() {
        let rows = [SweepRow { alpha: 2.0, x: 0.0, lhs: 0.1, rhs1: 0.2, rhs2: 0.3, k: 0.08 }];
        let csv = sweep_to_csv(&rows).unwrap();
        assert!(csv.starts_with("x,lhs,rhs1,rhs2,K\n"));
        assert_eq!(csv.lines().count(), 2);
    }
}
