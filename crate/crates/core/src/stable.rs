//! One-sided stable laws with Laplace transform `exp(-s^alpha)`, their scale
//! family and the polynomially tilted variant.

use crate::error::{ensure_finite, Error, Result};
use crate::numerics::{try_tanh_sinh, IntegralResult, QuadratureConfig};
use crate::special::{gamma, ln_gamma};
use serde::Serialize;
use std::f64::consts::PI;

/// Stable index `alpha` in the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct StableIndex(f64);

impl StableIndex {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "stable index must lie in (0, 1)",
            })
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for StableIndex {
    type Error = Error;
    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

const TAIL_TERMS: usize = 120;
const CROSSOVER_SADDLE: f64 = 2.5;
const OVERLAP_BAND: f64 = 1.5;
const DISAGREEMENT_LIMIT: f64 = 1e-6;

/// Evaluator for `f_alpha` and `F_alpha` with precomputed tail coefficients.
///
/// Above the crossover the density comes from the convergent tail series in
/// `x^-alpha`; below it from a single integral over `(0, pi)` whose integrand
/// is positive.
#[derive(Debug, Clone)]
pub struct StableLaw {
    alpha: f64,
    kappa: f64,
    /// `Gamma(alpha k + 1) / k! * sin(pi k alpha) / pi`, signed, for k >= 1.
    density_coeffs: Vec<f64>,
    /// `Gamma(alpha k) / k! * sin(pi k alpha) / pi`, signed, for k >= 1.
    survival_coeffs: Vec<f64>,
    /// `Gamma(alpha k + 1) / (k! pi)`, a bound on the density coefficients.
    envelope: Vec<f64>,
    crossover: f64,
    ln_a_min: f64,
    cfg: QuadratureConfig,
}

impl StableLaw {
    pub fn new(alpha: StableIndex) -> Self {
        let a = alpha.value();
        let mut density_coeffs = Vec::with_capacity(TAIL_TERMS);
        let mut survival_coeffs = Vec::with_capacity(TAIL_TERMS);
        let mut envelope = Vec::with_capacity(TAIL_TERMS);
        for k in 1..=TAIL_TERMS {
            let kf = k as f64;
            let ln_fact = ln_gamma(kf + 1.0);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let s = (PI * kf * a).sin() / PI;
            let env = (ln_gamma(a * kf + 1.0) - ln_fact).exp() / PI;
            envelope.push(env);
            density_coeffs.push(sign * env * PI * s);
            survival_coeffs.push(sign * (ln_gamma(a * kf) - ln_fact).exp() * s);
        }
        // Largest y = x^-alpha for which the series is both short and free of
        // heavy cancellation.
        let y_saddle = (CROSSOVER_SADDLE / (1.0 - a)).powf(1.0 - a) / a.powf(a);
        let last = TAIL_TERMS - 1;
        let y_terms =
            ((1e-18f64.ln() + envelope[0].ln() - envelope[last].ln()) / last as f64).exp();
        let y_c = y_saddle.min(y_terms);
        let kappa = a / (1.0 - a);
        Self {
            alpha: a,
            kappa,
            density_coeffs,
            survival_coeffs,
            envelope,
            crossover: y_c.powf(-1.0 / a),
            ln_a_min: (1.0 - a).ln() + kappa * a.ln(),
            cfg: QuadratureConfig {
                abs_tol: 1e-290,
                rel_tol: 1e-14,
                max_refinements: 10,
                max_evaluations: 20_000,
            },
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Points at or above this use the tail series.
    pub fn crossover(&self) -> f64 {
        self.crossover
    }

    fn check_x(x: f64, operation: &'static str) -> Result<()> {
        if x > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain {
                operation,
                value: x,
                reason: "requires x > 0",
            })
        }
    }

    /// Tail series for the density; returns the value and a rounding estimate.
    pub fn density_series(&self, x: f64) -> (f64, f64) {
        let y = x.powf(-self.alpha);
        let (sum, abs) = self.tail_sum(&self.density_coeffs, y);
        (sum / x, abs / x * 8.0 * f64::EPSILON)
    }

    fn tail_sum(&self, coeffs: &[f64], y: f64) -> (f64, f64) {
        let mut sum = crate::numerics::NeumaierSum::new();
        let mut abs = 0.0;
        let mut power = 1.0;
        let mut peak = 0.0f64;
        for (k, c) in coeffs.iter().enumerate() {
            power *= y;
            let t = c * power;
            sum.add(t);
            abs += t.abs();
            let bound = self.envelope[k] * power;
            peak = peak.max(bound);
            if bound < peak && bound <= 1e-18 * sum.value().abs() {
                break;
            }
        }
        (sum.value(), abs)
    }

    #[inline]
    fn ln_a(&self, phi: f64, from_pi: f64) -> f64 {
        let a = self.alpha;
        let sin_phi = if phi <= 0.5 * PI {
            phi.sin()
        } else {
            from_pi.sin()
        };
        let r1 = (a * phi).sin() / sin_phi;
        let r2 = ((1.0 - a) * phi).sin() / sin_phi;
        (a * r1.ln() + (1.0 - a) * r2.ln()) / (1.0 - a)
    }

    /// Rounding in the exponent `A c` limits the attainable relative accuracy.
    fn cfg_for(&self, c: f64) -> QuadratureConfig {
        let floor = 8.0 * f64::EPSILON * self.ln_a_min.exp() * c;
        QuadratureConfig {
            rel_tol: self.cfg.rel_tol.max(floor),
            ..self.cfg
        }
    }

    /// Density by the integral over `(0, pi)`.
    pub fn density_integral(&self, x: f64) -> Result<IntegralResult> {
        let c = x.powf(-self.kappa);
        let ln_pref = (self.kappa / PI).ln() - x.ln() / (1.0 - self.alpha);
        let a_min = self.ln_a_min.exp();
        // A exp(-A c) is maximal at A = 1/c, or at the lower end when a_min > 1/c.
        let ln_peak = if a_min * c > 1.0 {
            self.ln_a_min - a_min * c
        } else {
            -(c.ln()) - 1.0
        };
        if ln_pref + ln_peak + PI.ln() < -745.0 {
            return Ok(IntegralResult::exact(0.0));
        }
        try_tanh_sinh(
            |p| {
                let ln_a = self.ln_a(p.from_left, p.from_right);
                let a = ln_a.exp();
                Ok((ln_pref + ln_a - a * c).exp())
            },
            0.0,
            PI,
            &self.cfg_for(c),
        )
    }

    /// Distribution function by the integral over `(0, pi)`.
    pub fn cdf_integral(&self, x: f64) -> Result<IntegralResult> {
        let c = x.powf(-self.kappa);
        if -self.ln_a_min.exp() * c < -745.0 {
            return Ok(IntegralResult::exact(0.0));
        }
        let r = try_tanh_sinh(
            |p| {
                let a = self.ln_a(p.from_left, p.from_right).exp();
                Ok((-a * c).exp())
            },
            0.0,
            PI,
            &self.cfg_for(c),
        )?;
        Ok(r.scaled(1.0 / PI))
    }

    /// `f_alpha(x)`.
    pub fn density(&self, x: f64) -> Result<f64> {
        Self::check_x(x, "stable_density")?;
        if x == f64::INFINITY {
            return Ok(0.0);
        }
        if x >= self.crossover {
            return Ok(self.density_series(x).0.max(0.0));
        }
        let r = self.density_integral(x)?;
        Ok(r.require_converged("stable density integral")?
            .value
            .max(0.0))
    }

    /// Evaluates both methods regardless of `x` and fails if they disagree.
    pub fn density_checked(&self, x: f64) -> Result<f64> {
        Self::check_x(x, "stable_density")?;
        let (series, _) = self.density_series(x);
        let integral = self.density_integral(x)?.value;
        self.agree(x, series, integral)?;
        self.density(x)
    }

    fn agree(&self, x: f64, series: f64, integral: f64) -> Result<()> {
        if (series - integral).abs() > DISAGREEMENT_LIMIT * integral.abs().max(1.0)
            || !series.is_finite()
        {
            return Err(Error::MethodDisagreement {
                at: x,
                first: "tail series",
                first_value: series,
                second: "integral",
                second_value: integral,
            });
        }
        Ok(())
    }

    /// `F_alpha(x)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        Self::check_x(x, "stable_cdf")?;
        if x == f64::INFINITY {
            return Ok(1.0);
        }
        if x >= self.crossover {
            let y = x.powf(-self.alpha);
            let (survival, _) = self.tail_sum(&self.survival_coeffs, y);
            return Ok((1.0 - survival).clamp(0.0, 1.0));
        }
        let r = self
            .cdf_integral(x)?
            .require_converged("stable distribution integral")?;
        Ok(r.value.clamp(0.0, 1.0))
    }

    /// `1 - F_alpha(x)`, accurate in the right tail.
    pub fn survival(&self, x: f64) -> Result<f64> {
        Self::check_x(x, "stable_survival")?;
        if x == f64::INFINITY {
            return Ok(0.0);
        }
        if x >= self.crossover {
            let y = x.powf(-self.alpha);
            return Ok(self.tail_sum(&self.survival_coeffs, y).0.clamp(0.0, 1.0));
        }
        Ok(1.0 - self.cdf(x)?)
    }
}

/// `f_alpha(x)`. Inside the band just above the crossover both methods are
/// evaluated and must agree.
pub fn stable_density(a: StableIndex, x: f64) -> Result<f64> {
    let law = StableLaw::new(a);
    if x >= law.crossover() && x <= OVERLAP_BAND * law.crossover() {
        law.density_checked(x)
    } else {
        law.density(x)
    }
}

/// `F_alpha(x)`.
pub fn stable_cdf(a: StableIndex, x: f64) -> Result<f64> {
    StableLaw::new(a).cdf(x)
}

/// The stable law rescaled so that its Laplace transform is `exp(-t s^alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledStable {
    pub alpha: StableIndex,
    pub t: f64,
}

impl ScaledStable {
    pub fn new(alpha: StableIndex, t: f64) -> Result<Self> {
        ensure_finite("t", t)?;
        if t <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t,
                reason: "scale must be positive",
            });
        }
        Ok(Self { alpha, t })
    }

    #[inline]
    fn factor(&self) -> f64 {
        self.t.powf(-1.0 / self.alpha.value())
    }

    pub fn density_with(&self, law: &StableLaw, x: f64) -> Result<f64> {
        StableLaw::check_x(x, "stable_density_scaled")?;
        let k = self.factor();
        if x * k == 0.0 {
            return Ok(0.0);
        }
        let f = law.density(x * k)?;
        Ok(if f == 0.0 { 0.0 } else { f * k })
    }

    pub fn cdf_with(&self, law: &StableLaw, x: f64) -> Result<f64> {
        StableLaw::check_x(x, "stable_cdf_scaled")?;
        let y = x * self.factor();
        if y == 0.0 {
            return Ok(0.0);
        }
        law.cdf(y)
    }

    pub fn density(&self, x: f64) -> Result<f64> {
        self.density_with(&StableLaw::new(self.alpha), x)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.cdf_with(&StableLaw::new(self.alpha), x)
    }
}

/// `f_alpha(x | t) = f_alpha(x t^{-1/alpha}) t^{-1/alpha}`.
pub fn stable_density_scaled(s: ScaledStable, x: f64) -> Result<f64> {
    s.density(x)
}

/// Index and tilt exponent of the polynomially tilted stable law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TiltParams {
    pub alpha: StableIndex,
    pub theta: f64,
}

impl TiltParams {
    pub fn new(alpha: StableIndex, theta: f64) -> Result<Self> {
        ensure_finite("theta", theta)?;
        if theta <= -alpha.value() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "tilt must exceed -alpha",
            });
        }
        Ok(Self { alpha, theta })
    }

    /// `Gamma(theta + 1) / Gamma(theta / alpha + 1)`.
    pub fn normalizer(&self) -> f64 {
        gamma(self.theta + 1.0) / gamma(self.theta / self.alpha.value() + 1.0)
    }

    pub fn density_with(&self, law: &StableLaw, x: f64, t: f64) -> Result<f64> {
        let scaled = ScaledStable::new(self.alpha, t)?;
        let base = scaled.density_with(law, x)?;
        if self.theta == 0.0 {
            return Ok(base);
        }
        let a = self.alpha.value();
        if base == 0.0 {
            return Ok(0.0);
        }
        let ln_weight = (self.theta / a) * t.ln() - self.theta * x.ln();
        Ok(self.normalizer() * (ln_weight + base.ln()).exp())
    }
}

/// `f_{alpha,theta}(x | t) = C t^{theta/alpha} x^{-theta} f_alpha(x | t)`.
pub fn tilted_stable_density(p: TiltParams, x: f64, t: f64) -> Result<f64> {
    p.density_with(&StableLaw::new(p.alpha), x, t)
}
