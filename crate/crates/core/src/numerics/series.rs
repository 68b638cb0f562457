//! Compensated summation of convergent series.

use super::{IntegralResult, QuadratureConfig};
use crate::error::{Error, Result};
use serde::Serialize;

/// Neumaier's improved Kahan accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub result: IntegralResult,
    pub max_term: f64,
    pub abs_sum: f64,
}

/// Sums `term(0) + term(1) + ...` until the tail is below the tolerance.
///
/// The tail is bounded geometrically from the ratio of successive term
/// magnitudes, and summation stops only once the terms are decreasing.
pub fn try_sum_series<F>(mut term: F, cfg: &QuadratureConfig) -> Result<SeriesResult>
where
    F: FnMut(usize) -> Result<f64>,
{
    cfg.validate()?;
    let mut acc = NeumaierSum::new();
    let mut max_term = 0.0f64;
    let mut abs_sum = 0.0;
    let mut previous = f64::NAN;
    let mut quiet = 0;
    for k in 0..cfg.max_evaluations {
        let t = term(k)?;
        if t.is_nan() {
            return Err(Error::NanEncountered { at: k as f64 });
        }
        if t.is_infinite() {
            return Err(Error::TermOverflow { index: k });
        }
        acc.add(t);
        max_term = max_term.max(t.abs());
        abs_sum += t.abs();
        let value = acc.value();
        let ratio = if previous.is_nan() || previous == 0.0 {
            if t == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            t.abs() / previous.abs()
        };
        let tail = if ratio < 1.0 {
            t.abs() * ratio / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        let small = t.abs() <= cfg.budget(value) && (tail <= cfg.budget(value) || t == 0.0);
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 2 {
            let rounding = abs_sum * f64::EPSILON * 2.0;
            return Ok(SeriesResult {
                result: IntegralResult {
                    value,
                    error_estimate: rounding + tail.min(t.abs()),
                    evaluations: k + 1,
                    converged: true,
                },
                max_term,
                abs_sum,
            });
        }
        if t != 0.0 {
            previous = t;
        }
    }
    let value = acc.value();
    Err(Error::NotConverged {
        method: "series summation",
        value,
        error_estimate: previous.abs(),
        evaluations: cfg.max_evaluations,
    })
}

pub fn sum_series<F>(mut term: F, cfg: &QuadratureConfig) -> Result<SeriesResult>
where
    F: FnMut(usize) -> f64,
{
    try_sum_series(|k| Ok(term(k)), cfg)
}
