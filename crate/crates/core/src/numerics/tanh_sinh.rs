//! Double-exponential quadrature: tanh-sinh on finite intervals and exp-sinh
//! on half-lines.

use super::{check_nan, gauss_kronrod::try_gauss_kronrod, IntegralResult, QuadratureConfig};
use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

const TANH_SINH_T_MAX: f64 = 6.0;
const EXP_SINH_T_MAX: f64 = 6.5;
const MIN_LEVEL: usize = 2;
const TRIM_RATIO: f64 = 1e-22;

/// A quadrature node together with its distances to the interval ends.
///
/// Near an endpoint `x` itself is rounded; integrands with endpoint
/// singularities should use `from_left` / `from_right` instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_left: f64,
    pub from_right: f64,
}

trait DeMap {
    fn range(&self) -> (f64, f64);
    /// Node and weight at `t`, or `None` when the weight vanishes in floating point.
    fn node(&self, t: f64) -> Option<(Abscissa, f64)>;
}

struct TanhSinhMap {
    a: f64,
    b: f64,
}

impl DeMap for TanhSinhMap {
    fn range(&self) -> (f64, f64) {
        (-TANH_SINH_T_MAX, TANH_SINH_T_MAX)
    }

    fn node(&self, t: f64) -> Option<(Abscissa, f64)> {
        let half = 0.5 * (self.b - self.a);
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let dist = half * 2.0 * e / (1.0 + e);
        if dist == 0.0 {
            return None;
        }
        let w = half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if w == 0.0 {
            return None;
        }
        let width = self.b - self.a;
        let abscissa = if t >= 0.0 {
            Abscissa {
                x: self.b - dist,
                from_left: width - dist,
                from_right: dist,
            }
        } else {
            Abscissa {
                x: self.a + dist,
                from_left: dist,
                from_right: width - dist,
            }
        };
        Some((abscissa, w))
    }
}

struct ExpSinhMap {
    origin: f64,
    scale: f64,
}

impl DeMap for ExpSinhMap {
    fn range(&self) -> (f64, f64) {
        (-EXP_SINH_T_MAX, EXP_SINH_T_MAX)
    }

    fn node(&self, t: f64) -> Option<(Abscissa, f64)> {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let d = self.scale * e;
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let w = d * FRAC_PI_2 * t.cosh();
        if !w.is_finite() {
            return None;
        }
        Some((
            Abscissa {
                x: self.origin + d,
                from_left: d,
                from_right: f64::INFINITY,
            },
            w,
        ))
    }
}

fn de_integrate<M, F>(map: &M, mut f: F, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    M: DeMap,
    F: FnMut(Abscissa) -> Result<f64>,
{
    cfg.validate()?;
    let (t_min, t_max) = map.range();
    let mut evaluations = 0usize;
    let mut eval = |t: f64, evaluations: &mut usize| -> Result<f64> {
        match map.node(t) {
            None => Ok(0.0),
            Some((abscissa, w)) => {
                *evaluations += 1;
                let v = check_nan(f(abscissa)?, abscissa.x)?;
                Ok(w * v)
            }
        }
    };

    // Level 0: unit spacing, used to trim the range where contributions vanish.
    let k_min = t_min.ceil() as i64;
    let k_max = t_max.floor() as i64;
    let mut contributions = Vec::with_capacity((k_max - k_min + 1) as usize);
    for k in k_min..=k_max {
        contributions.push(eval(k as f64, &mut evaluations)?);
    }
    let peak = contributions.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let (mut lo, mut hi) = (t_min, t_max);
    if peak > 0.0 && peak.is_finite() {
        let significant = |c: &f64| c.abs() > TRIM_RATIO * peak;
        let first = contributions.iter().position(significant).unwrap_or(0);
        let last = contributions.iter().rposition(significant).unwrap_or(0);
        lo = ((k_min + first as i64) as f64 - 1.0).max(t_min);
        hi = ((k_min + last as i64) as f64 + 1.0).min(t_max);
    }
    let mut sum: f64 = contributions
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let t = (k_min + *i as i64) as f64;
            t >= lo && t <= hi
        })
        .map(|(_, c)| c)
        .sum();
    let mut estimate = sum;
    let mut previous = f64::NAN;
    let mut error = f64::INFINITY;

    for level in 1..=cfg.max_refinements {
        let h = 0.5f64.powi(level as i32);
        let j_min = ((lo / h - 1.0) / 2.0).ceil() as i64;
        let j_max = ((hi / h - 1.0) / 2.0).floor() as i64;
        let mut level_sum = 0.0;
        for j in j_min..=j_max {
            let t = (2 * j + 1) as f64 * h;
            level_sum += eval(t, &mut evaluations)?;
        }
        sum += level_sum;
        previous = estimate;
        estimate = sum * h;
        error = (estimate - previous).abs();
        if !estimate.is_finite() {
            break;
        }
        if level >= MIN_LEVEL && error <= cfg.budget(estimate) {
            return Ok(IntegralResult {
                value: estimate,
                error_estimate: error,
                evaluations,
                converged: true,
            });
        }
        if evaluations >= cfg.max_evaluations {
            break;
        }
    }
    let _ = previous;
    Ok(IntegralResult {
        value: estimate,
        error_estimate: error,
        evaluations,
        converged: false,
    })
}

/// Tanh-sinh quadrature of a fallible integrand over `(a, b)`.
///
/// The result carries `converged = false` rather than an error when the
/// tolerance is not met.
pub fn try_tanh_sinh<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: FnMut(Abscissa) -> Result<f64>,
{
    check_interval(a, b)?;
    if a == b {
        return Ok(IntegralResult::exact(0.0));
    }
    de_integrate(&TanhSinhMap { a, b }, f, cfg)
}

pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: FnMut(Abscissa) -> f64,
{
    try_tanh_sinh(|p| Ok(f(p)), a, b, cfg)
}

/// Exp-sinh quadrature over `(origin, inf)`; `scale` sets where the nodes
/// cluster and should match the width of the bulk of the integrand.
pub fn try_exp_sinh<F>(
    f: F,
    origin: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult>
where
    F: FnMut(Abscissa) -> Result<f64>,
{
    if !origin.is_finite() {
        return Err(Error::Domain {
            operation: "exp_sinh",
            value: origin,
            reason: "origin must be finite",
        });
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "scale",
            value: scale,
            reason: "must be positive and finite",
        });
    }
    de_integrate(&ExpSinhMap { origin, scale }, f, cfg)
}

pub fn exp_sinh<F>(
    mut f: F,
    origin: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult>
where
    F: FnMut(Abscissa) -> f64,
{
    try_exp_sinh(|p| Ok(f(p)), origin, scale, cfg)
}

/// Integral over `(0, inf)`; fails with `NotConverged` when the tolerance is missed.
pub fn integrate_semi_infinite<F>(mut f: F, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: FnMut(f64) -> f64,
{
    try_exp_sinh(|p| Ok(f(p.x)), 0.0, 1.0, cfg)?.require_converged("exp-sinh quadrature")
}

/// Integral over `(a, b)` by tanh-sinh, falling back to adaptive Gauss-Kronrod.
pub fn try_integrate_finite<F>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult>
where
    F: FnMut(Abscissa) -> Result<f64>,
{
    let primary = try_tanh_sinh(&mut f, a, b, cfg)?;
    if primary.converged {
        return Ok(primary);
    }
    let fallback = try_gauss_kronrod(
        |x| {
            f(Abscissa {
                x,
                from_left: x - a,
                from_right: b - x,
            })
        },
        a,
        b,
        cfg,
    )?;
    let best = if fallback.error_estimate < primary.error_estimate {
        fallback
    } else {
        primary
    };
    best.require_converged("tanh-sinh and Gauss-Kronrod quadrature")
}

pub fn integrate_finite<F>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_finite(|p| Ok(f(p.x)), a, b, cfg)
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain {
            operation: "tanh_sinh",
            value: if a.is_finite() { b } else { a },
            reason: "interval ends must be finite",
        });
    }
    if a > b {
        return Err(Error::Domain {
            operation: "tanh_sinh",
            value: a,
            reason: "lower end exceeds upper end",
        });
    }
    Ok(())
}

/// Exp-sinh abscissae and weights on `(origin, inf)` for a fixed number of
/// levels, for reuse across many integrands sharing the same measure.
#[derive(Debug, Clone)]
pub struct ExpSinhRule {
    levels: Vec<Vec<(Abscissa, f64)>>,
}

impl ExpSinhRule {
    /// Builds levels `0..=max_level`, restricted to `t` in `[t_lo, t_hi]`.
    pub fn new(origin: f64, scale: f64, t_lo: f64, t_hi: f64, max_level: usize) -> Self {
        let map = ExpSinhMap { origin, scale };
        let (t_min, t_max) = map.range();
        let (lo, hi) = (t_lo.max(t_min), t_hi.min(t_max));
        let mut levels = Vec::with_capacity(max_level + 1);
        let collect = |ts: &mut dyn Iterator<Item = f64>| -> Vec<(Abscissa, f64)> {
            ts.filter_map(|t| map.node(t)).collect()
        };
        levels.push(collect(
            &mut ((lo.ceil() as i64)..=(hi.floor() as i64)).map(|k| k as f64),
        ));
        for level in 1..=max_level {
            let h = 0.5f64.powi(level as i32);
            let j_min = ((lo / h - 1.0) / 2.0).ceil() as i64;
            let j_max = ((hi / h - 1.0) / 2.0).floor() as i64;
            levels.push(collect(
                &mut (j_min..=j_max).map(|j| (2 * j + 1) as f64 * h),
            ));
        }
        Self { levels }
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// New nodes introduced at `level`.
    pub fn level(&self, level: usize) -> &[(Abscissa, f64)] {
        &self.levels[level]
    }

    /// Step size of `level`.
    pub fn step(level: usize) -> f64 {
        0.5f64.powi(level as i32)
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}
