//! Power-series evaluation of the three-parameter Mittag-Leffler (Prabhakar)
//! function and its Laplace transform.

use crate::error::{ensure_finite, Error, Result};
use crate::numerics::{DoubleDouble, IntegralResult, NeumaierSum, QuadratureConfig, SeriesResult};
use crate::special::{gamma, ln_gamma, ln_gamma_dd, rgamma};
use serde::Serialize;

/// Largest `|x|` accepted by the series route.
pub const X_MAX: f64 = 50.0;
const MAX_TERMS: usize = 100_000;
const DD_UNIT: f64 = 1.2e-32;

/// Which statements hold for a parameter triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// The series converges but complete monotonicity is not guaranteed.
    SeriesOnly,
    /// `0 < alpha < 1` and `beta > alpha * gamma`.
    CompletelyMonotone,
}

/// Parameters `(alpha, beta, gamma)` of `E^gamma_{alpha,beta}`.
///
/// `alpha = 0` is accepted so that the geometric case can be evaluated for
/// `|x| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MLParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        ensure_finite("alpha", alpha)?;
        ensure_finite("beta", beta)?;
        ensure_finite("gamma", gamma)?;
        if alpha < 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "must be nonnegative",
            });
        }
        if beta <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                reason: "must be positive",
            });
        }
        if gamma <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "must be positive",
            });
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// `E_alpha`.
    pub fn one(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0, 1.0)
    }

    /// `E_{alpha,beta}`.
    pub fn two(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0)
    }

    pub fn regime(&self) -> Regime {
        if self.alpha > 0.0 && self.alpha < 1.0 && self.beta > self.alpha * self.gamma {
            Regime::CompletelyMonotone
        } else {
            Regime::SeriesOnly
        }
    }
}

/// Laplace variable `s` and rate `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePair {
    pub lambda: f64,
    pub s: f64,
}

impl RatePair {
    pub fn new(lambda: f64, s: f64) -> Result<Self> {
        ensure_finite("lambda", lambda)?;
        ensure_finite("s", s)?;
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must be positive",
            });
        }
        if s < 0.0 {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason: "must be nonnegative",
            });
        }
        Ok(Self { lambda, s })
    }
}

fn gamma_ratio(a: f64, b: f64) -> f64 {
    if a < 170.0 && b < 170.0 {
        gamma(a) / gamma(b)
    } else {
        (ln_gamma(a) - ln_gamma(b)).exp()
    }
}

struct Pass {
    value: f64,
    error: f64,
    max_term: f64,
    abs_sum: f64,
    terms: usize,
}

/// Term recurrence in double precision with compensated accumulation.
fn double_pass(p: &MLParams, x: f64) -> Result<Pass> {
    let mut term = rgamma(p.beta);
    let mut sum = NeumaierSum::new();
    let mut abs_sum = 0.0;
    let mut error = 0.0;
    let mut max_term = 0.0f64;
    let mut previous = f64::INFINITY;
    for k in 0..MAX_TERMS {
        if !term.is_finite() {
            return Err(Error::TermOverflow { index: k });
        }
        sum.add(term);
        let mag = term.abs();
        abs_sum += mag;
        max_term = max_term.max(mag);
        error += mag * (k as f64 + 1.0) * 2e-15;
        let value = sum.value();
        if mag < previous && mag <= 1e-18 * value.abs().max(f64::MIN_POSITIVE) || mag == 0.0 {
            return Ok(Pass {
                value,
                error: error + 2.0 * f64::EPSILON * abs_sum,
                max_term,
                abs_sum,
                terms: k + 1,
            });
        }
        previous = mag;
        let kf = k as f64;
        let a = p.alpha * kf + p.beta;
        term *= x * (p.gamma + kf) / (kf + 1.0) * gamma_ratio(a, a + p.alpha);
    }
    Err(Error::NotConverged {
        method: "Mittag-Leffler series",
        value: sum.value(),
        error_estimate: previous,
        evaluations: MAX_TERMS,
    })
}

/// Terms formed from their logarithms in double-double arithmetic.
fn double_double_pass(p: &MLParams, x: f64) -> Result<Pass> {
    let ln_x = DoubleDouble::from_f64(x.abs()).ln();
    let gamma_dd = DoubleDouble::from_f64(p.gamma);
    let mut ln_coeff = DoubleDouble::ZERO;
    let mut sum = DoubleDouble::ZERO;
    let mut abs_sum = 0.0;
    let mut error = 0.0;
    let mut max_term = 0.0f64;
    let mut previous = f64::INFINITY;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        if k > 0 && p.gamma != 1.0 {
            let ratio = gamma_dd.add_f64(kf - 1.0).div_f64(kf);
            ln_coeff = ln_coeff + ratio.ln();
        }
        let arg = DoubleDouble::from_f64(p.alpha).mul_f64(kf).add_f64(p.beta);
        let ln_gam = ln_gamma_dd(arg);
        let ln_term = ln_coeff + ln_x.mul_f64(kf) - ln_gam;
        if ln_term.hi > 709.0 {
            return Err(Error::TermOverflow { index: k });
        }
        let mag = ln_term.exp();
        let term = if x < 0.0 && k % 2 == 1 { -mag } else { mag };
        sum = sum + term;
        let m = mag.to_f64();
        abs_sum += m;
        max_term = max_term.max(m);
        let scale = ln_coeff.hi.abs() + (kf * ln_x.hi).abs() + ln_gam.hi.abs() + 1.0;
        error += m * scale * 4.0 * DD_UNIT;
        let value = sum.to_f64();
        if m < previous && m <= 1e-34 * value.abs().max(1e-300) || m == 0.0 {
            return Ok(Pass {
                value,
                error: error + f64::EPSILON * value.abs() * 0.5,
                max_term,
                abs_sum,
                terms: k + 1,
            });
        }
        previous = m;
    }
    Err(Error::NotConverged {
        method: "Mittag-Leffler series (double-double)",
        value: sum.to_f64(),
        error_estimate: previous,
        evaluations: MAX_TERMS,
    })
}

/// Series value with diagnostics.
///
/// The double-precision pass is kept when its rounding estimate is within a
/// few units in the last place; otherwise the sum is recomputed from
/// double-double terms. `cfg` sets the budget beyond which the remaining
/// cancellation error is reported as `CancellationLoss`.
pub fn ml_series_with(p: &MLParams, x: f64, cfg: &QuadratureConfig) -> Result<SeriesResult> {
    cfg.validate()?;
    if x.is_nan() {
        return Err(Error::Domain {
            operation: "ml_series",
            value: x,
            reason: "argument is NaN",
        });
    }
    if x.abs() > X_MAX {
        return Err(Error::OutsideSeriesRange {
            abs_x: x.abs(),
            limit: X_MAX,
        });
    }
    if x == 0.0 {
        let v = rgamma(p.beta);
        return Ok(SeriesResult {
            result: IntegralResult {
                evaluations: 1,
                ..IntegralResult::exact(v)
            },
            max_term: v.abs(),
            abs_sum: v.abs(),
        });
    }
    let mut pass = match double_pass(p, x) {
        Ok(pass) if pass.error <= 8.0 * f64::EPSILON * pass.value.abs() => pass,
        Ok(_) | Err(Error::TermOverflow { .. }) => double_double_pass(p, x)?,
        Err(e) => return Err(e),
    };
    if pass.error > cfg.budget(pass.value) {
        return Err(Error::CancellationLoss {
            max_term: pass.max_term,
            error_estimate: pass.error,
            budget: cfg.budget(pass.value),
        });
    }
    pass.error = pass.error.max(f64::EPSILON * pass.value.abs() * 0.5);
    Ok(SeriesResult {
        result: IntegralResult {
            value: pass.value,
            error_estimate: pass.error,
            evaluations: pass.terms,
            converged: true,
        },
        max_term: pass.max_term,
        abs_sum: pass.abs_sum,
    })
}

/// `E^gamma_{alpha,beta}(x)` by its power series, for `|x| <= X_MAX`.
pub fn ml_series(p: &MLParams, x: f64) -> Result<f64> {
    Ok(ml_series_with(p, x, &QuadratureConfig::default())?
        .result
        .value)
}

/// `s^{alpha gamma - beta} / (lambda + s^alpha)^gamma`, the Laplace transform of
/// `x^{beta-1} E^gamma_{alpha,beta}(-lambda x^alpha)`.
pub fn ml_laplace_closed(p: &MLParams, r: RatePair) -> Result<f64> {
    if r.s <= 0.0 {
        return Err(Error::Domain {
            operation: "ml_laplace_closed",
            value: r.s,
            reason: "requires s > 0",
        });
    }
    let ln_s = r.s.ln();
    let ln_v =
        (p.alpha * p.gamma - p.beta) * ln_s - p.gamma * (r.lambda + (p.alpha * ln_s).exp()).ln();
    Ok(ln_v.exp())
}
