//! CSV emission and reading.
//!
//! Columns: `series, swept, gamma_over_omega_d, T1, T2`, then
//! `<method>_total, <method>_classical, <method>_quantum` per method in
//! request order, then `regime, warnings` (a count). Failed cells are empty.

use std::io::Write;
use std::path::Path;

use overdamped_heat::{Method, RegimeTag};

use crate::error::{CliError, Result};
use crate::sweep::{MethodCell, SweepRow};

/// Shortest representation that parses back to the same `f64`. Plain
/// decimal for `1e-4 ≤ |x| < 1e16`, exponent form otherwise.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn header(rows: &[SweepRow]) -> Vec<String> {
    let mut h: Vec<String> = ["series", "swept", "gamma_over_omega_d", "T1", "T2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for c in &rows[0].cells {
        for part in ["total", "classical", "quantum"] {
            h.push(format!("{}_{part}", c.method));
        }
    }
    h.push("regime".into());
    h.push("warnings".into());
    h
}

/// Writes the table to `out`. Refuses an empty row set.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header(rows))?;
    let cell = |v: Option<f64>| v.map(format_float).unwrap_or_default();
    for r in rows {
        let mut rec = vec![
            r.series.clone(),
            format_float(r.swept_value),
            format_float(r.gamma_over_omega_d),
            format_float(r.t1),
            format_float(r.t2),
        ];
        for c in &r.cells {
            rec.extend([cell(c.q_total), cell(c.q_classical), cell(c.q_quantum)]);
        }
        rec.push(r.regime.as_str().to_string());
        rec.push(r.warnings.len().to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// CSV bytes for `rows`.
pub fn to_csv_bytes(rows: &[SweepRow]) -> Result<Vec<u8>> {
    if rows.is_empty() {
        return Err(CliError::EmptyRows);
    }
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).map_err(|source| CliError::Csv {
        path: "<memory>".into(),
        source,
    })?;
    Ok(buf)
}

/// Writes `rows` to `path`, replacing any existing file.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let bytes = to_csv_bytes(rows)?;
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A row read back from CSV. Warning text is not stored, only its count.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub series: String,
    pub swept_value: f64,
    pub gamma_over_omega_d: f64,
    pub t1: f64,
    pub t2: f64,
    pub cells: Vec<MethodCell>,
    pub regime: RegimeTag,
    pub warnings: usize,
}

impl CsvRow {
    /// Numerical equality with the row it was written from.
    pub fn matches(&self, row: &SweepRow) -> bool {
        self.series == row.series
            && self.swept_value == row.swept_value
            && self.gamma_over_omega_d == row.gamma_over_omega_d
            && self.t1 == row.t1
            && self.t2 == row.t2
            && self.cells == row.cells
            && self.regime == row.regime
            && self.warnings == row.warnings.len()
    }
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let bad = |message: String| CliError::CsvFormat {
        path: path.to_path_buf(),
        message,
    };
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let header: Vec<String> = r
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(String::from)
        .collect();
    if header.len() < 7 || !(header.len() - 7).is_multiple_of(3) {
        return Err(bad(format!("unexpected column count {}", header.len())));
    }
    let mut methods = Vec::new();
    for chunk in header[5..header.len() - 2].chunks(3) {
        let name = chunk[0]
            .strip_suffix("_total")
            .ok_or_else(|| bad(format!("expected a *_total column, found {:?}", chunk[0])))?;
        methods.push(
            Method::parse(name).ok_or_else(|| bad(format!("unknown method column {name:?}")))?,
        );
    }

    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let line = i + 2;
        let num = |j: usize| -> Result<f64> {
            rec[j]
                .parse::<f64>()
                .map_err(|_| bad(format!("line {line}: column {} is not a number", header[j])))
        };
        let opt = |j: usize| -> Result<Option<f64>> {
            if rec[j].is_empty() {
                Ok(None)
            } else {
                num(j).map(Some)
            }
        };
        let cells = methods
            .iter()
            .enumerate()
            .map(|(k, &method)| {
                let j = 5 + 3 * k;
                Ok(MethodCell {
                    method,
                    q_total: opt(j)?,
                    q_classical: opt(j + 1)?,
                    q_quantum: opt(j + 2)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let n = header.len();
        out.push(CsvRow {
            series: rec[0].to_string(),
            swept_value: num(1)?,
            gamma_over_omega_d: num(2)?,
            t1: num(3)?,
            t2: num(4)?,
            cells,
            regime: RegimeTag::parse(&rec[n - 2])
                .ok_or_else(|| bad(format!("line {line}: unknown regime {:?}", &rec[n - 2])))?,
            warnings: rec[n - 1]
                .parse()
                .map_err(|_| bad(format!("line {line}: bad warning count")))?,
        });
    }
    Ok(out)
}
