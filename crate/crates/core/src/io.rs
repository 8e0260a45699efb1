//! Input parsing for the command line: grids, measure names and CSV tables.

use std::path::Path;

use num_complex::Complex64;
use serde::Serializer;

use crate::error::{Error, Result};
use crate::measures::Measure;

/// Shortest round-trip decimal; infinities as `inf` / `-inf`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v}")
    }
}

/// Serde helper writing non-finite floats as the strings of [`fmt_f64`].
pub fn ser_f64<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&fmt_f64(*v))
    }
}

pub fn ser_opt_f64<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_f64(v, s),
        None => s.serialize_none(),
    }
}

/// `a:b:n` — n equispaced points including both ends.
pub fn parse_grid(input: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = input.split(':').collect();
    let bad = || Error::Invalid(format!("grid must be a:b:n, got {input:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite()) || n == 0 {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let m = (n - 1) as f64;
    Ok((0..n).map(|i| ((m - i as f64) * a + i as f64 * b) / m).collect())
}

/// `haar`, `power:σ`, `atomic:file.csv` or `weight:file.csv`.
pub fn parse_measure(input: &str) -> Result<Measure> {
    let (head, arg) = match input.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (input, None),
    };
    match (head, arg) {
        ("haar", None) => Ok(Measure::haar()),
        ("power", Some(s)) => {
            let sigma: f64 =
                s.parse().map_err(|_| Error::Invalid(format!("power:σ needs a number, got {s:?}")))?;
            Measure::power_law(sigma)
        }
        ("atomic", Some(path)) => Measure::atomic(read_lambda_weight(Path::new(path))?),
        ("weight", Some(path)) => {
            let rows = read_lambda_weight(Path::new(path))?;
            Measure::tabulated(&rows, path)
        }
        _ => Err(Error::Invalid(format!(
            "unknown measure {input:?}; expected haar, power:σ, atomic:file.csv or weight:file.csv"
        ))),
    }
}

fn reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    let file = std::fs::File::open(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Ok(csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).flexible(true).from_reader(file))
}

/// Numeric rows with 1-based line numbers; an optional non-numeric first
/// line is treated as a header (and returned).
fn numeric_rows(path: &Path, header_required: bool) -> Result<(Option<Vec<String>>, Vec<(usize, Vec<f64>)>)> {
    let mut rdr = reader(path)?;
    let mut header = None;
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        let line = rec.position().map_or(i + 1, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) || rec.get(0).is_some_and(|f| f.starts_with('#')) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) if !(header_required && header.is_none()) => rows.push((line, v)),
            Ok(_) => return Err(Error::Parse { line, msg: "missing header".into() }),
            Err(_) if header.is_none() && rows.is_empty() => {
                header = Some(rec.iter().map(|s| s.to_ascii_lowercase()).collect());
            }
            Err(e) => return Err(Error::Parse { line, msg: format!("not a number: {e}") }),
        }
    }
    if header_required && header.is_none() {
        return Err(Error::Parse { line: 1, msg: "missing header".into() });
    }
    Ok((header, rows))
}

fn expect_width(line: usize, row: &[f64], widths: &[usize]) -> Result<()> {
    if widths.contains(&row.len()) {
        Ok(())
    } else {
        Err(Error::Parse { line, msg: format!("expected {widths:?} columns, found {}", row.len()) })
    }
}

/// `lambda,weight` table (header required, λ strictly increasing).
pub fn read_lambda_weight(path: &Path) -> Result<Vec<(f64, f64)>> {
    let (header, rows) = numeric_rows(path, true)?;
    if header.as_deref() != Some(&["lambda".to_string(), "weight".to_string()][..]) {
        return Err(Error::Parse { line: 1, msg: "header must be lambda,weight".into() });
    }
    let mut out = Vec::with_capacity(rows.len());
    let mut prev = f64::NEG_INFINITY;
    for (line, row) in rows {
        expect_width(line, &row, &[2])?;
        if !(row[0] > prev) {
            return Err(Error::Parse { line, msg: "lambda must be strictly increasing".into() });
        }
        prev = row[0];
        out.push((row[0], row[1]));
    }
    Ok(out)
}

/// Points file: `xi` or `xi,re,im` per row.
pub fn read_points(path: &Path) -> Result<(Vec<f64>, Option<Vec<Complex64>>)> {
    let (_, rows) = numeric_rows(path, false)?;
    let mut xi = Vec::with_capacity(rows.len());
    let mut a = Vec::with_capacity(rows.len());
    let width = rows.first().map_or(1, |r| r.1.len());
    for (line, row) in rows {
        expect_width(line, &row, &[1, 3])?;
        expect_width(line, &row, &[width])?;
        xi.push(row[0]);
        if row.len() == 3 {
            a.push(Complex64::new(row[1], row[2]));
        }
    }
    Ok((xi, (width == 3).then_some(a)))
}

/// Complex numbers, one `re,im` (or `re`) per row.
pub fn read_complex(path: &Path) -> Result<Vec<Complex64>> {
    let (_, rows) = numeric_rows(path, false)?;
    rows.into_iter()
        .map(|(line, row)| {
            expect_width(line, &row, &[1, 2])?;
            Ok(Complex64::new(row[0], row.get(1).copied().unwrap_or(0.0)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_exact() {
        let g = parse_grid("-5:5:1001").unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g[0], -5.0);
        assert_eq!(g[1000], 5.0);
        assert_eq!(g[500], 0.0);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
    }

    #[test]
    fn measure_names() {
        assert!(parse_measure("haar").is_ok());
        assert!(parse_measure("power:1.5").is_ok());
        assert!(parse_measure("power:x").is_err());
        assert!(parse_measure("lebesgue").is_err());
    }

    #[test]
    fn infinities_are_spelled_out() {
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(-2.0), "-2");
    }

    #[test]
    fn parse_errors_carry_lines() {
        let dir = std::env::temp_dir().join(format!("extremal-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("w.csv");
        std::fs::write(&p, "lambda,weight\n1,2\n0.5,1\n").unwrap();
        match read_lambda_weight(&p) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        std::fs::write(&p, "1,2\n").unwrap();
        assert!(matches!(read_lambda_weight(&p), Err(Error::Parse { line: 1, .. })));
        std::fs::write(&p, "re,im\n1,0\n2,x\n").unwrap();
        assert!(matches!(read_complex(&p), Err(Error::Parse { line: 3, .. })));
    }
}
