//! Plain CSV for kernel grids and curves, floats at 17 significant digits.

use std::fmt::Write as _;

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header `r,s,value`, rows in row-major order of `values[(i, j)] = K(r_i, s_j)`.
pub fn grid_csv(r: &[f64], s: &[f64], values: impl Fn(usize, usize) -> f64) -> String {
    let mut out = String::from("r,s,value\n");
    for (i, &x) in r.iter().enumerate() {
        for (j, &y) in s.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", float(x), float(y), float(values(i, j)));
        }
    }
    out
}

/// Header `x,value`.
pub fn curve_csv(x: &[f64], y: &[f64]) -> String {
    let mut out = String::from("x,value\n");
    for (a, b) in x.iter().zip(y) {
        let _ = writeln!(out, "{},{}", float(*a), float(*b));
    }
    out
}

/// Rows of numbers below a header, skipping `#` comments and blank lines.
pub fn parse_table(text: &str, header: &str) -> Result<Vec<Vec<f64>>, String> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some(h) if h == header => {}
        Some(h) => return Err(format!("expected header '{header}', found '{h}'")),
        None => return Err("empty table".into()),
    }
    let width = header.split(',').count();
    lines
        .enumerate()
        .map(|(k, line)| {
            let row = line
                .split(',')
                .map(|f| f.trim().parse::<f64>().map_err(|_| format!("row {}: bad number '{f}'", k + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != width {
                return Err(format!("row {}: expected {width} fields, got {}", k + 1, row.len()));
            }
            Ok(row)
        })
        .collect()
}
