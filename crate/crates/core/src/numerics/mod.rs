//! Quadrature and summation primitives shared by every representation.

pub mod dd;
mod gauss_kronrod;
mod series;
mod tanh_sinh;

pub use dd::DoubleDouble;
pub use gauss_kronrod::{gauss_kronrod, try_gauss_kronrod};
pub use series::{sum_series, try_sum_series, NeumaierSum, SeriesResult};
pub use tanh_sinh::{
    exp_sinh, integrate_finite, integrate_semi_infinite, tanh_sinh, try_exp_sinh,
    try_integrate_finite, try_tanh_sinh, Abscissa, ExpSinhRule,
};

use crate::error::{Error, Result};
use serde::Serialize;

/// Tolerances and work limits for adaptive quadrature and series summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_refinements: usize,
    pub max_evaluations: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_refinements: 12,
            max_evaluations: 1_000_000,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        let cfg = Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tolerance(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) {
            return Err(Error::InvalidConfig("tolerances must be nonnegative"));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(Error::InvalidConfig(
                "at least one tolerance must be positive",
            ));
        }
        if self.max_refinements == 0 {
            return Err(Error::InvalidConfig("max_refinements must be at least 1"));
        }
        if self.max_evaluations < 16 {
            return Err(Error::InvalidConfig("max_evaluations must be at least 16"));
        }
        Ok(())
    }

    /// Error budget for a result of magnitude `value`.
    #[inline]
    pub fn budget(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value of an integral (or sum) with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl IntegralResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    /// Converts a non-converged result into an error.
    pub fn require_converged(self, method: &'static str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                method,
                value: self.value,
                error_estimate: self.error_estimate,
                evaluations: self.evaluations,
            })
        }
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }

    pub(crate) fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

#[inline]
pub(crate) fn check_nan(v: f64, at: f64) -> Result<f64> {
    if v.is_nan() {
        Err(Error::NanEncountered { at })
    } else {
        Ok(v)
    }
}
