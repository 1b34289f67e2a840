//! Empirical error-term scans: exact weighted summatory values against the
//! degree-4 main term on a geometric grid, with a slope diagnostic for the
//! growth exponent of the remainder.

use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::arith::ArithTables;
use crate::error::{Error, Result};
use crate::residue::MainTermPolynomial;
use crate::summatory::{summatory, Algorithm};
use crate::Variant;

/// One grid point of an error scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRecord {
    /// Evaluation point.
    pub x: f64,
    /// Exact log-weighted summatory value.
    pub exact: f64,
    /// Main term `x Σ B_r (log x)^r`.
    pub main: f64,
    /// `exact − main`.
    pub delta: f64,
    /// `|delta| / (√x log x)`, the scale Theorem-level bounds predict.
    pub normalized: f64,
    /// `|delta| / main`.
    pub rel_err: f64,
}

impl ErrorRecord {
    fn new(x: f64, exact: f64, main: f64) -> Self {
        let delta = exact - main;
        ErrorRecord {
            x,
            exact,
            main,
            delta,
            normalized: delta.abs() / (x.sqrt() * x.ln()),
            rel_err: delta.abs() / main,
        }
    }
}

/// Geometric grid `x_from · 10^{k/points_per_decade}`, truncated at `x_to`.
fn grid(x_from: f64, x_to: f64, points_per_decade: u32) -> Vec<f64> {
    let mut xs = Vec::new();
    for k in 0.. {
        let x = x_from * 10f64.powf(k as f64 / points_per_decade as f64);
        if x > x_to * (1.0 + 1e-9) {
            break;
        }
        xs.push(x.min(x_to));
    }
    xs
}

/// Scans the error term of the chosen variant over a geometric grid.
///
/// Exact values come from the `REDUCED` summatory algorithm; the main
/// term from the supplied coefficient polynomial, which must be the
/// weighted (`weight_order == 2`) polynomial of the same variant. Grid
/// points are evaluated in parallel and returned sorted by `x`.
pub fn error_scan(
    variant: Variant,
    x_from: f64,
    x_to: f64,
    points_per_decade: u32,
    coeffs: &MainTermPolynomial,
    tables: &ArithTables,
) -> Result<Vec<ErrorRecord>> {
    if !(x_from > 2.0) || !(x_to > x_from) {
        return Err(Error::Domain(format!(
            "error_scan: need 2 < x_from < x_to, got {x_from}..{x_to}"
        )));
    }
    if points_per_decade == 0 {
        return Err(Error::Domain(
            "error_scan: points_per_decade must be >= 1".into(),
        ));
    }
    if coeffs.weight_order != 2 {
        return Err(Error::Domain(
            "error_scan: coefficients must be for the log-weighted sum (weight order 2)".into(),
        ));
    }
    if coeffs.variant != variant {
        return Err(Error::Domain(format!(
            "error_scan: coefficient variant {} does not match scan variant {}",
            coeffs.variant, variant
        )));
    }
    let xs = grid(x_from, x_to, points_per_decade);
    xs.par_iter()
        .map(|&x| {
            let exact = summatory(variant, true, x, Algorithm::Reduced, tables)?
                .value
                .as_f64();
            Ok(ErrorRecord::new(x, exact, coeffs.eval_f64(x)))
        })
        .collect()
}

/// Least-squares slope of `log |delta|` against `log x`.
///
/// Records with `|delta| <= epsilon √x` are excluded: near a sign change
/// of the oscillating remainder the magnitude carries no exponent
/// information. At least five records must survive.
pub fn slope_fit(records: &[ErrorRecord], epsilon: f64) -> Result<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.delta.abs() > epsilon * r.x.sqrt())
        .map(|r| (r.x.ln(), r.delta.abs().ln()))
        .collect();
    if pts.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "slope_fit: only {} records exceed the exclusion threshold, need 5",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Default exclusion coefficient for [`slope_fit`].
pub const DEFAULT_SLOPE_EPSILON: f64 = 1e-6;

const CSV_HEADER: &str = "x,exact,main_term,delta,normalized_delta,relative_error";

fn fmt(v: f64) -> String {
    format!("{:.14e}", v)
}

/// Writes records as CSV: fixed header, 15 significant digits, `\n`
/// line endings. Two identical scans serialize byte-identically.
pub fn write_csv<W: Write + ?Sized>(records: &[ErrorRecord], out: &mut W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt(r.x),
            fmt(r.exact),
            fmt(r.main),
            fmt(r.delta),
            fmt(r.normalized),
            fmt(r.rel_err)
        )?;
    }
    Ok(())
}

/// Parses a CSV stream produced by [`write_csv`].
pub fn read_csv<R: BufRead>(input: R) -> Result<Vec<ErrorRecord>> {
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(Error::Domain("read_csv: bad or missing header".into())),
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Domain(format!(
                "read_csv: line {} has {} fields, expected 6",
                i + 2,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse()
                .map_err(|_| Error::Domain(format!("read_csv: bad number {s:?} on line {}", i + 2)))
        };
        out.push(ErrorRecord {
            x: parse(fields[0])?,
            exact: parse(fields[1])?,
            main: parse(fields[2])?,
            delta: parse(fields[3])?,
            normalized: parse(fields[4])?,
            rel_err: parse(fields[5])?,
        });
    }
    Ok(out)
}
