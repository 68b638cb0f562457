//! Spectral densities obtained by Stieltjes inversion along `s = u e^{-i pi}`.

use crate::error::{ensure_finite, Error, Result};
use crate::numerics::{try_exp_sinh, try_tanh_sinh, IntegralResult, QuadratureConfig};
use crate::pollard::PollardParams;
use crate::special::sin_pi;
use crate::stable::StableIndex;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Abscissa, rate and parameters at which `dR/du` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralPoint {
    pub u: f64,
    pub lambda: f64,
    pub params: PollardParams,
}

impl SpectralPoint {
    pub fn new(u: f64, lambda: f64, params: PollardParams) -> Result<Self> {
        check_positive("u", u)?;
        check_positive("lambda", lambda)?;
        Ok(Self { u, lambda, params })
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    ensure_finite(name, v)?;
    if v <= 0.0 {
        return Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be positive",
        });
    }
    Ok(())
}

fn cos_pi(x: f64) -> f64 {
    sin_pi(0.5 - x)
}

/// `(1/pi) Im{ (u e^{-i pi})^{alpha gamma - beta} / (lambda + (u e^{-i pi})^alpha)^gamma }`.
pub fn spectral_density_r(pt: SpectralPoint) -> Result<f64> {
    let SpectralPoint { u, lambda, params } = pt;
    check_positive("u", u)?;
    check_positive("lambda", lambda)?;
    let a = params.alpha.value();
    let g = params.gamma;
    let p = a * g - params.beta;
    let ua = u.powf(a);
    // Phase pi beta - gamma psi with psi = arg(lambda e^{i pi a} + u^a).
    let rotated = Complex64::new(ua + lambda * cos_pi(a), lambda * sin_pi(a));
    let psi = rotated.arg();
    let ln_mag = p * u.ln() - g * rotated.norm().ln();
    let sine = sin_pi(params.beta) * (g * psi).cos() - cos_pi(params.beta) * (g * psi).sin();
    Ok(ln_mag.exp() * sine / PI)
}

/// `(1/pi) lambda u^{alpha-1} sin(pi alpha) / (lambda^2 + 2 lambda u^alpha cos(pi alpha) + u^{2 alpha})`.
pub fn spectral_density_r1(a: StableIndex, lambda: f64, u: f64) -> Result<f64> {
    check_positive("lambda", lambda)?;
    check_positive("u", u)?;
    let a = a.value();
    let ua = u.powf(a);
    let c = cos_pi(a);
    let s = sin_pi(a);
    let denom = (lambda + ua * c).powi(2) + (ua * s).powi(2);
    Ok((lambda * s / PI) * (ua / u) / denom)
}

/// `(1/pi) Im{ (u e^{-i pi})^{alpha gamma - beta} exp(-t (u e^{-i pi})^alpha) }`.
pub fn spectral_density_s(params: PollardParams, t: f64, u: f64) -> Result<f64> {
    check_positive("t", t)?;
    check_positive("u", u)?;
    let a = params.alpha.value();
    let p = a * params.gamma - params.beta;
    let tua = t * u.powf(a);
    let ln_mag = p * u.ln() - tua * cos_pi(a);
    let phase = -PI * p + tua * sin_pi(a);
    Ok(ln_mag.exp() * phase.sin() / PI)
}

fn laplace_of<F>(density: F, x: f64, split: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let head = try_tanh_sinh(
        |p| Ok((-x * p.from_left).exp() * density(p.from_left)?),
        0.0,
        split,
        cfg,
    )?
    .require_converged("spectral integral (head)")?;
    let tail_scale = if x > 0.0 { (1.0 / x).max(split) } else { split };
    let tail = try_exp_sinh(
        |p| {
            let u = split + p.from_left;
            let e = (-x * u).exp();
            Ok(if e == 0.0 { 0.0 } else { e * density(u)? })
        },
        0.0,
        tail_scale,
        cfg,
    )?
    .require_converged("spectral integral (tail)")?;
    Ok(IntegralResult {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        evaluations: head.evaluations + tail.evaluations,
        converged: true,
    })
}

/// `int_0^inf e^{-x u} dR(u | lambda)`, which equals
/// `x^{beta-1} E^gamma_{alpha,beta}(-lambda x^alpha)`.
pub fn ml_via_spectral_with(
    params: &PollardParams,
    lambda: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    check_positive("lambda", lambda)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            operation: "ml_via_spectral",
            value: x,
            reason: "requires x > 0",
        });
    }
    laplace_of(
        |u| {
            spectral_density_r(SpectralPoint {
                u,
                lambda,
                params: *params,
            })
        },
        x,
        1.0,
        cfg,
    )
}

pub fn ml_via_spectral(params: &PollardParams, lambda: f64, x: f64) -> Result<f64> {
    Ok(ml_via_spectral_with(params, lambda, x, &QuadratureConfig::default())?.value)
}

/// `int_0^inf e^{-x u} dS(u | t)`, which equals `{rho * f_alpha(. | t)}(x)`.
pub fn spectral_s_laplace(params: &PollardParams, t: f64, x: f64) -> Result<f64> {
    check_positive("x", x)?;
    let r = laplace_of(
        |u| spectral_density_s(*params, t, u),
        x,
        1.0,
        &QuadratureConfig::default(),
    )?;
    Ok(r.value)
}

/// `int_0^inf dR_alpha(u | lambda)`; equal to one.
pub fn spectral_r1_mass(a: StableIndex, lambda: f64) -> Result<IntegralResult> {
    check_positive("lambda", lambda)?;
    let split = lambda.powf(1.0 / a.value());
    laplace_of(
        |u| spectral_density_r1(a, lambda, u),
        0.0,
        split,
        &QuadratureConfig::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_index_at_unit_point() {
        let a = StableIndex::new(0.5).unwrap();
        let v = spectral_density_r1(a, 1.0, 1.0).unwrap();
        assert!((v - 0.5 / PI).abs() < 1e-16);
        let p = PollardParams::one(0.5).unwrap();
        let r = spectral_density_r(SpectralPoint::new(1.0, 1.0, p).unwrap()).unwrap();
        assert!((r - 0.5 / PI).abs() < 1e-16);
    }

    #[test]
    fn general_density_reduces_to_closed_form() {
        for a in [0.2, 0.5, 0.8] {
            let p = PollardParams::one(a).unwrap();
            let alpha = StableIndex::new(a).unwrap();
            for lambda in [0.5, 2.0] {
                for u in [1e-3, 0.3, 1.0, 7.0, 1e4] {
                    let r = spectral_density_r(SpectralPoint::new(u, lambda, p).unwrap()).unwrap();
                    let r1 = spectral_density_r1(alpha, lambda, u).unwrap();
                    assert!(
                        (r - r1).abs() <= 1e-12 * r1.abs().max(1e-300),
                        "{a} {lambda} {u}: {r} {r1}"
                    );
                }
            }
        }
    }
}
