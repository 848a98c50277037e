//! Error of assigned marks against ideal marks.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which root-mean-square formula to report as `e_rms`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RmsConvention {
    /// `sqrt(Σ (q - x)² / n²)`.
    #[default]
    Paper,
    /// `sqrt(Σ (q - x)² / n)`.
    Standard,
}

impl fmt::Display for RmsConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RmsConvention::Paper => "paper",
            RmsConvention::Standard => "standard",
        })
    }
}

impl FromStr for RmsConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(RmsConvention::Paper),
            "standard" => Ok(RmsConvention::Standard),
            _ => Err(Error::param("rms_convention", format!("unknown convention `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSummary<T> {
    pub e_max: T,
    pub e_mean: T,
    /// Literal n² denominator.
    pub e_rms: T,
    /// Conventional n denominator.
    pub e_rms_standard: T,
    pub n: usize,
    pub replicate_id: u64,
}

impl<T: Scalar> ErrorSummary<T> {
    pub fn with_replicate(self, replicate_id: u64) -> Self {
        Self {
            replicate_id,
            ..self
        }
    }

    pub fn rms(&self, convention: RmsConvention) -> T {
        match convention {
            RmsConvention::Paper => self.e_rms,
            RmsConvention::Standard => self.e_rms_standard,
        }
    }
}

pub fn error_summary<T: Scalar>(q: &[T], x: &[T]) -> Result<ErrorSummary<T>> {
    if q.len() != x.len() {
        return Err(Error::Shape(format!(
            "{} ideal marks but {} assigned marks",
            q.len(),
            x.len()
        )));
    }
    if q.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let n = T::from_count(q.len());
    let mut e_max = T::zero();
    let mut abs_sum = T::zero();
    let mut sq_sum = T::zero();
    for (&qi, &xi) in q.iter().zip(x) {
        let d = (qi - xi).abs();
        e_max = e_max.max(d);
        abs_sum = abs_sum + d;
        sq_sum = sq_sum + d * d;
    }
    Ok(ErrorSummary {
        e_max,
        e_mean: abs_sum / n,
        e_rms: (sq_sum / (n * n)).sqrt(),
        e_rms_standard: (sq_sum / n).sqrt(),
        n: q.len(),
        replicate_id: 0,
    })
}

/// Ordinary least-squares slope of `x` regressed on `q`.
pub fn bias_slope<T: Scalar>(q: &[T], x: &[T]) -> Result<T> {
    if q.len() != x.len() {
        return Err(Error::Shape(format!(
            "{} ideal marks but {} assigned marks",
            q.len(),
            x.len()
        )));
    }
    if q.len() < 2 {
        return Err(Error::Degenerate("regression needs at least two points".into()));
    }
    let n = T::from_count(q.len());
    let qm = q.iter().copied().sum::<T>() / n;
    let xm = x.iter().copied().sum::<T>() / n;
    let sqq: T = q.iter().map(|&a| (a - qm) * (a - qm)).sum();
    if sqq == T::zero() {
        return Err(Error::Degenerate("ideal marks are constant".into()));
    }
    let sqx: T = q.iter().zip(x).map(|(&a, &b)| (a - qm) * (b - xm)).sum();
    Ok(sqx / sqq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn perfect_marks_have_zero_error() {
        let q = [55.0, 61.0, 70.0];
        let s = error_summary(&q, &q).unwrap();
        assert_eq!((s.e_max, s.e_mean, s.e_rms), (0.0, 0.0, 0.0));
    }

    #[test]
    fn two_student_arithmetic() {
        let s = error_summary(&[60.0, 60.0], &[61.0, 63.0]).unwrap();
        assert_eq!(s.e_max, 3.0);
        assert_eq!(s.e_mean, 2.0);
        assert_abs_diff_eq!(s.e_rms, 10f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.e_rms_standard, 5f64.sqrt(), epsilon = 1e-15);
        assert_eq!(s.rms(RmsConvention::Standard), s.e_rms_standard);
        assert_eq!(s.with_replicate(4).replicate_id, 4);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(error_summary(&[1.0], &[1.0, 2.0]), Err(Error::Shape(_))));
        assert!(matches!(error_summary::<f64>(&[], &[]), Err(Error::EmptyPopulation)));
        assert!(matches!(bias_slope(&[3.0, 3.0], &[1.0, 2.0]), Err(Error::Degenerate(_))));
        assert!(matches!(bias_slope(&[3.0], &[1.0]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn slopes() {
        let q = [40.0, 55.0, 61.0, 80.0];
        assert_abs_diff_eq!(bias_slope(&q, &q).unwrap(), 1.0, epsilon = 1e-15);
        let mean = q.iter().sum::<f64>() / 4.0;
        assert_eq!(bias_slope(&q, &[mean; 4]).unwrap(), 0.0);
    }

    #[test]
    fn conventions_parse() {
        assert_eq!("paper".parse::<RmsConvention>().unwrap(), RmsConvention::Paper);
        assert_eq!("Standard".parse::<RmsConvention>().unwrap(), RmsConvention::Standard);
        assert!("rms".parse::<RmsConvention>().is_err());
    }

    proptest! {
        #[test]
        fn permutation_invariant_and_ordered(
            pairs in proptest::collection::vec((0.0f64..100.0, 0.0f64..100.0), 1..40),
            rot in 0usize..40,
        ) {
            let q: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let x: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let s = error_summary(&q, &x).unwrap();
            let k = rot % q.len();
            let (mut q2, mut x2) = (q.clone(), x.clone());
            q2.rotate_left(k);
            x2.rotate_left(k);
            q2.reverse();
            x2.reverse();
            let s2 = error_summary(&q2, &x2).unwrap();
            prop_assert_eq!(s.e_max, s2.e_max);
            prop_assert!((s.e_mean - s2.e_mean).abs() < 1e-9);
            prop_assert!((s.e_rms - s2.e_rms).abs() < 1e-9);
            prop_assert!(s.e_max >= s.e_mean - 1e-12 && s.e_mean >= 0.0);
            prop_assert!(s.e_rms >= 0.0 && s.e_rms <= s.e_mean + 1e-9);
        }
    }
}
