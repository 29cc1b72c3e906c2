//! Scan results as CSV with a fixed column order. Numbers carry 12
//! significant digits in the style of C's `%.12g`; cells of observables
//! that were not requested, and every numeric cell of a failed point, are
//! empty.

use std::path::Path;

use crate::scan::ScanRecord;
use crate::{Error, Result};

pub const CSV_COLUMNS: [&str; 18] = [
    "alpha",
    "delta",
    "e0",
    "e1",
    "gap_per_spin",
    "q_leg",
    "q_leg_dev",
    "q_rung",
    "q_rung_dev",
    "cxx_leg",
    "czz_leg",
    "cxx_rung",
    "czz_rung",
    "ggm",
    "ggm_argmax_hex",
    "degenerate",
    "failed",
    "solve_seconds",
];

/// `%.12g`, except that negative zero prints as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{x:.*}", (11 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn cell(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn row(r: &ScanRecord) -> String {
    let numeric = |x: Option<f64>| if r.failed { String::new() } else { cell(x) };
    let fields = [
        format_number(r.alpha),
        format_number(r.delta),
        numeric(r.e0),
        numeric(r.e1),
        numeric(r.gap_per_spin),
        numeric(r.q_leg),
        numeric(r.q_leg_dev),
        numeric(r.q_rung),
        numeric(r.q_rung_dev),
        numeric(r.cxx_leg),
        numeric(r.czz_leg),
        numeric(r.cxx_rung),
        numeric(r.czz_rung),
        numeric(r.ggm),
        match r.ggm_argmax {
            Some(m) if !r.failed => format!("{m:#x}"),
            _ => String::new(),
        },
        flag(r.degenerate && !r.failed).to_string(),
        flag(r.failed).to_string(),
        cell(r.solve_seconds),
    ];
    fields.join(",")
}

pub fn csv_string(records: &[ScanRecord]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for r in records {
        out.push_str(&row(r));
        out.push('\n');
    }
    out
}

pub fn write_csv(records: &[ScanRecord], path: &Path) -> Result<()> {
    std::fs::write(path, csv_string(records)).map_err(|e| Error::io(path, e))
}

fn csv_err(line: usize, message: impl Into<String>) -> Error {
    Error::Csv {
        line,
        message: message.into(),
    }
}

fn parse_f64(s: &str, line: usize, column: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse::<f64>()
        .map(Some)
        .map_err(|_| csv_err(line, format!("{column}: not a number: {s:?}")))
}

fn parse_flag(s: &str, line: usize, column: &str) -> Result<bool> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(csv_err(line, format!("{column}: expected 0 or 1, got {s:?}"))),
    }
}

/// Parses CSV text produced by [`csv_string`]. Fields not stored in the
/// file (couplings, residuals, ...) are left at their defaults.
pub fn parse_csv(text: &str) -> Result<Vec<ScanRecord>> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|(_, l)| l).unwrap_or("");
    if header != CSV_COLUMNS.join(",") {
        return Err(csv_err(1, "unexpected header"));
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        let n = i + 1;
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != CSV_COLUMNS.len() {
            return Err(csv_err(
                n,
                format!("expected {} fields, got {}", CSV_COLUMNS.len(), f.len()),
            ));
        }
        let num = |k: usize| parse_f64(f[k], n, CSV_COLUMNS[k]);
        let coordinate = |k: usize| {
            num(k)?.ok_or_else(|| csv_err(n, format!("{} is required", CSV_COLUMNS[k])))
        };
        let ggm_argmax = match f[14] {
            "" => None,
            s => Some(
                s.strip_prefix("0x")
                    .and_then(|h| u32::from_str_radix(h, 16).ok())
                    .ok_or_else(|| csv_err(n, format!("ggm_argmax_hex: bad mask {s:?}")))?,
            ),
        };
        records.push(ScanRecord {
            alpha: coordinate(0)?,
            delta: coordinate(1)?,
            j_leg: f64::NAN,
            j_rung: f64::NAN,
            e0: num(2)?,
            e1: num(3)?,
            gap_per_spin: num(4)?,
            q_leg: num(5)?,
            q_leg_dev: num(6)?,
            q_rung: num(7)?,
            q_rung_dev: num(8)?,
            cxx_leg: num(9)?,
            czz_leg: num(10)?,
            cxx_rung: num(11)?,
            czz_rung: num(12)?,
            ggm: num(13)?,
            ggm_argmax,
            degenerate: parse_flag(f[15], n, "degenerate")?,
            failed: parse_flag(f[16], n, "failed")?,
            solve_seconds: num(17)?,
            ..Default::default()
        });
    }
    Ok(records)
}

pub fn read_csv(path: &Path) -> Result<Vec<ScanRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text)
}

/// Value of a numeric column; `Ok(None)` for an empty cell.
pub fn column_value(record: &ScanRecord, column: &str) -> Result<Option<f64>> {
    let v = match column {
        "alpha" => Some(record.alpha),
        "delta" => Some(record.delta),
        "e0" => record.e0,
        "e1" => record.e1,
        "gap_per_spin" => record.gap_per_spin,
        "q_leg" => record.q_leg,
        "q_leg_dev" => record.q_leg_dev,
        "q_rung" => record.q_rung,
        "q_rung_dev" => record.q_rung_dev,
        "cxx_leg" => record.cxx_leg,
        "czz_leg" => record.czz_leg,
        "cxx_rung" => record.cxx_rung,
        "czz_rung" => record.czz_rung,
        "ggm" => record.ggm,
        "solve_seconds" => record.solve_seconds,
        other => {
            return Err(Error::Heatmap(format!("{other:?} is not a numeric column")));
        }
    };
    Ok(if record.failed { None } else { v })
}
