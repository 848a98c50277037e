//! Tidy CSV writers. Every file has a fixed header, LF line endings and
//! floats printed to six significant digits.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use groupmark_core::{Errors, RmsConvention};

use crate::error::{HarnessError, Result};
use crate::experiment::{ReplicateOutcome, Sweep};

pub const ERRORS_HEADER: [&str; 4] = ["replicate", "scheme", "metric", "value"];
pub const SCATTER_HEADER: [&str; 5] = ["replicate", "scheme", "student", "ideal", "assigned"];
pub const MARKS_HEADER: [&str; 4] = ["student_id", "assigned_mark", "project_id", "project_mark"];

pub const METRICS: [&str; 3] = ["e_max", "e_mean", "e_rms"];

/// `%g`-style rendering with six significant digits.
pub fn fmt_g6(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn metric_values(e: &Errors, convention: RmsConvention) -> [f64; 3] {
    [e.e_max, e.e_mean, e.rms(convention)]
}

pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| HarnessError::io(path, e))
}

fn finish<W: Write>(path: &Path, w: csv::Writer<W>) -> Result<()> {
    w.into_inner()
        .map_err(|e| HarnessError::io(path, e.into_error()))?
        .flush()
        .map_err(|e| HarnessError::io(path, e))
}

pub fn write_errors<W: Write>(
    out: W,
    outcomes: &[ReplicateOutcome],
    convention: RmsConvention,
) -> csv::Result<csv::Writer<W>> {
    let mut w = csv_writer(out);
    w.write_record(ERRORS_HEADER)?;
    for o in outcomes {
        let id = o.replicate.to_string();
        for s in &o.schemes {
            for (metric, v) in METRICS.iter().zip(metric_values(&s.summary, convention)) {
                w.write_record([id.as_str(), s.scheme.label(), metric, &fmt_g6(v)])?;
            }
        }
    }
    Ok(w)
}

pub fn write_scatter<W: Write>(out: W, outcomes: &[ReplicateOutcome]) -> csv::Result<csv::Writer<W>> {
    let mut w = csv_writer(out);
    w.write_record(SCATTER_HEADER)?;
    for o in outcomes {
        let id = o.replicate.to_string();
        for s in &o.schemes {
            for (i, (&q, &x)) in o.ideal.iter().zip(&s.assigned).enumerate() {
                w.write_record([
                    id.as_str(),
                    s.scheme.label(),
                    &i.to_string(),
                    &fmt_g6(q),
                    &fmt_g6(x),
                ])?;
            }
        }
    }
    Ok(w)
}

/// Long-form sweep table: `scheme,<key>,replicate,metric,value`.
pub fn write_sweep<W: Write>(
    out: W,
    key: &str,
    sweep: &Sweep,
    convention: RmsConvention,
) -> csv::Result<csv::Writer<W>> {
    let mut w = csv_writer(out);
    w.write_record(["scheme", key, "replicate", "metric", "value"])?;
    for point in &sweep.points {
        let value = point.value.to_string();
        for o in &point.run.outcomes {
            let id = o.replicate.to_string();
            for s in &o.schemes {
                for (metric, v) in METRICS.iter().zip(metric_values(&s.summary, convention)) {
                    w.write_record([s.scheme.label(), &value, &id, metric, &fmt_g6(v)])?;
                }
            }
        }
    }
    Ok(w)
}

/// Writes `errors.csv` and `scatter.csv` into `dir`.
pub fn write_scenario_files(
    dir: &Path,
    outcomes: &[ReplicateOutcome],
    convention: RmsConvention,
) -> Result<()> {
    let path = dir.join("errors.csv");
    let w = write_errors(create(&path)?, outcomes, convention).map_err(|e| HarnessError::csv(&path, e))?;
    finish(&path, w)?;
    let path = dir.join("scatter.csv");
    let w = write_scatter(create(&path)?, outcomes).map_err(|e| HarnessError::csv(&path, e))?;
    finish(&path, w)
}

pub fn write_sweep_file(
    path: &Path,
    key: &str,
    sweep: &Sweep,
    convention: RmsConvention,
) -> Result<()> {
    let w = write_sweep(create(path)?, key, sweep, convention)
        .map_err(|e| HarnessError::csv(path, e))?;
    finish(path, w)
}

pub(crate) fn write_with<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut csv::Writer<BufWriter<File>>) -> csv::Result<()>,
{
    let mut w = csv_writer(create(path)?);
    body(&mut w).map_err(|e| HarnessError::csv(path, e))?;
    finish(path, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_g6(0.0), "0");
        assert_eq!(fmt_g6(60.0), "60");
        assert_eq!(fmt_g6(5.5), "5.5");
        assert_eq!(fmt_g6(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_g6(-2.0 / 3.0), "-0.666667");
        assert_eq!(fmt_g6(123456.7), "123457");
        assert_eq!(fmt_g6(1234567.0), "1.23457e+06");
        assert_eq!(fmt_g6(0.0001), "0.0001");
        assert_eq!(fmt_g6(0.00001234567), "1.23457e-05");
        assert_eq!(fmt_g6(999999.6), "1e+06");
        assert_eq!(fmt_g6(9.999996), "10");
        assert_eq!(fmt_g6(f64::NAN), "NaN");
    }

    #[test]
    fn fmt_matches_shortest_repr_to_six_digits() {
        for &x in &[47.5, 52.123456789, 0.012345678, 3.0e-7, 88.88888888] {
            let parsed: f64 = fmt_g6(x).parse().unwrap();
            assert!((parsed - x).abs() <= x.abs() * 5e-6, "{x} -> {}", fmt_g6(x));
        }
    }

    #[test]
    fn writer_uses_lf() {
        let mut w = csv_writer(Vec::new());
        w.write_record(["a", "b"]).unwrap();
        w.write_record(["1", "2"]).unwrap();
        let bytes = w.into_inner().unwrap();
        assert_eq!(bytes, b"a,b\n1,2\n");
    }
}
