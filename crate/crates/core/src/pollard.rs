//! Convolution kernels, Pollard distributions, gamma-mixture marginals and the
//! Mittag-Leffler representations built from them.

use crate::error::{ensure_finite, Error, Result};
use crate::mittag_leffler::MLParams;
use crate::numerics::{
    try_exp_sinh, try_gauss_kronrod, try_tanh_sinh, ExpSinhRule, IntegralResult, NeumaierSum,
    QuadratureConfig,
};
use crate::special::{gamma, ln_gamma};
use crate::stable::{StableIndex, StableLaw, TiltParams};
use rayon::prelude::*;
use serde::Serialize;

const ASYMPTOTIC_SMALLNESS: f64 = 1e-17;
const DIRECT_RANGE: f64 = 8.0;
const HEAD: f64 = 4.0;
const ROUTE_AGREEMENT: f64 = 1e-8;
const TILT_ROUTE_AGREEMENT: f64 = 1e-6;

/// Parameters of the three-parameter Pollard distribution; requires
/// `beta > alpha * gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PollardParams {
    pub alpha: StableIndex,
    pub beta: f64,
    pub gamma: f64,
}

impl PollardParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let alpha = StableIndex::new(alpha)?;
        ensure_finite("beta", beta)?;
        ensure_finite("gamma", gamma)?;
        if gamma <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "must be positive",
            });
        }
        let threshold = alpha.value() * gamma;
        if beta == threshold {
            return Err(Error::DegenerateKernel { beta });
        }
        if beta < threshold {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                reason: "must exceed alpha * gamma",
            });
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// The one-parameter case `beta = gamma = 1`.
    pub fn one(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0, 1.0)
    }

    /// Exponent `beta - alpha * gamma` of the power kernel.
    pub fn kernel_exponent(&self) -> f64 {
        self.beta - self.alpha.value() * self.gamma
    }

    pub fn ml_params(&self) -> MLParams {
        MLParams {
            alpha: self.alpha.value(),
            beta: self.beta,
            gamma: self.gamma,
        }
    }
}

/// Gamma law with shape `mu` and rate `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaPrior {
    pub mu: f64,
    pub lambda: f64,
}

impl GammaPrior {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        check_positive("mu", mu)?;
        check_positive("lambda", lambda)?;
        Ok(Self { mu, lambda })
    }

    pub fn ln_density(&self, t: f64) -> f64 {
        self.mu * self.lambda.ln() - ln_gamma(self.mu) + (self.mu - 1.0) * t.ln() - self.lambda * t
    }

    pub fn density(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.ln_density(t).exp()
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

fn check_arg(operation: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            operation,
            value: x,
            reason: "requires a finite positive argument",
        })
    }
}

/// Power kernel `x^{beta - alpha gamma - 1} / Gamma(beta - alpha gamma)`.
pub fn rho_density(p: &PollardParams, x: f64) -> Result<f64> {
    check_arg("rho_density", x)?;
    let c = p.kernel_exponent();
    Ok(((c - 1.0) * x.ln() - ln_gamma(c)).exp())
}

/// Both evaluations of the kernel `w(x | t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelRoutes {
    /// `t^gamma` times the convolution with the scaled density, integrated in `u`.
    pub direct: f64,
    /// `t^{(beta-1)/alpha}` times the unit-scale convolution at `x t^{-1/alpha}`.
    pub rescaled: f64,
}

/// Evaluator for the kernel convolution and the Pollard distribution of one
/// parameter triple.
#[derive(Debug, Clone)]
pub struct Pollard {
    params: PollardParams,
    law: StableLaw,
    c: f64,
    ln_gamma_c: f64,
    ln_gamma_gamma: f64,
    inner: QuadratureConfig,
    outer: QuadratureConfig,
}

impl Pollard {
    pub fn new(params: PollardParams) -> Self {
        Self::with_config(params, QuadratureConfig::default())
    }

    /// `cfg` governs the outer integrals; the inner convolution is held two
    /// orders of magnitude tighter.
    pub fn with_config(params: PollardParams, cfg: QuadratureConfig) -> Self {
        let c = params.kernel_exponent();
        let inner = QuadratureConfig {
            abs_tol: 1e-280,
            rel_tol: (cfg.rel_tol.max(cfg.abs_tol) * 1e-2).clamp(1e-13, 1e-8),
            max_refinements: 10,
            max_evaluations: 50_000,
        };
        Self {
            params,
            law: StableLaw::new(params.alpha),
            c,
            ln_gamma_c: ln_gamma(c),
            ln_gamma_gamma: ln_gamma(params.gamma),
            inner,
            outer: cfg,
        }
    }

    pub fn params(&self) -> &PollardParams {
        &self.params
    }

    pub fn law(&self) -> &StableLaw {
        &self.law
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.outer
    }

    fn alpha(&self) -> f64 {
        self.params.alpha.value()
    }

    /// `(1/Gamma(c)) int_0^y (y - v)^{c-1} d(v) dv` for a probability density
    /// `d` whose bulk lies at scale `bulk`.
    fn convolve<D>(&self, y: f64, bulk: f64, density: D) -> Result<IntegralResult>
    where
        D: Fn(f64) -> Result<f64>,
    {
        let c = self.c;
        let norm = (-self.ln_gamma_c).exp();
        let ratio = y / bulk;
        if ratio.powf(-self.alpha()) <= ASYMPTOTIC_SMALLNESS || !ratio.is_finite() {
            return Ok(IntegralResult::exact(
                ((c - 1.0) * y.ln() - self.ln_gamma_c).exp(),
            ));
        }
        let kernel = |d: f64| if c == 1.0 { 1.0 } else { d.powf(c - 1.0) };
        if ratio <= DIRECT_RANGE {
            let r = try_tanh_sinh(
                |p| {
                    let f = density(p.from_left)?;
                    Ok(if f == 0.0 {
                        0.0
                    } else {
                        kernel(p.from_right) * f
                    })
                },
                0.0,
                y,
                &self.inner,
            )?;
            return Ok(r.require_converged("kernel convolution")?.scaled(norm));
        }
        let head_end = HEAD * bulk;
        let head = try_tanh_sinh(
            |p| {
                let f = density(p.from_left)?;
                Ok(if f == 0.0 {
                    0.0
                } else {
                    kernel(y - p.from_left) * f
                })
            },
            0.0,
            head_end,
            &self.inner,
        )?
        .require_converged("kernel convolution (head)")?;
        let mid_end = 0.5 * y;
        let middle = try_gauss_kronrod(
            |s| {
                let v = s.exp();
                Ok(kernel(y - v) * density(v)? * v)
            },
            head_end.ln(),
            mid_end.ln(),
            &self.inner,
        )?
        .require_converged("kernel convolution (middle)")?;
        let tail = try_tanh_sinh(
            |p| Ok(kernel(p.from_right) * density(mid_end + p.from_left)?),
            mid_end,
            y,
            &self.inner,
        )?
        .require_converged("kernel convolution (tail)")?;
        Ok(head.combine(middle).combine(tail).scaled(norm))
    }

    /// `{rho * f_alpha}(y)`, the convolution with the unit-scale stable density.
    pub fn convolution(&self, y: f64) -> Result<IntegralResult> {
        check_arg("kernel convolution", y)?;
        self.convolve(y, 1.0, |v| self.law.density(v))
    }

    /// `t^gamma {rho * f_alpha(. | t)}(x)` integrated directly in `u`.
    pub fn kernel_w_direct(&self, x: f64, t: f64) -> Result<IntegralResult> {
        check_arg("conv_kernel_w", x)?;
        check_arg("conv_kernel_w", t)?;
        let a = self.alpha();
        let k = t.powf(-1.0 / a);
        let r = self.convolve(x, t.powf(1.0 / a), |u| Ok(self.law.density(u * k)? * k))?;
        Ok(r.scaled(t.powf(self.params.gamma)))
    }

    /// `t^{(beta-1)/alpha} {rho * f_alpha}(x t^{-1/alpha})`.
    pub fn kernel_w_rescaled(&self, x: f64, t: f64) -> Result<IntegralResult> {
        check_arg("conv_kernel_w", x)?;
        check_arg("conv_kernel_w", t)?;
        let a = self.alpha();
        let y = x * t.powf(-1.0 / a);
        if y == 0.0 || y.is_infinite() {
            return Ok(IntegralResult::exact(0.0));
        }
        let r = self.convolution(y)?;
        Ok(r.scaled(t.powf((self.params.beta - 1.0) / a)))
    }

    pub fn kernel_w_routes(&self, x: f64, t: f64) -> Result<KernelRoutes> {
        Ok(KernelRoutes {
            direct: self.kernel_w_direct(x, t)?.value,
            rescaled: self.kernel_w_rescaled(x, t)?.value,
        })
    }

    /// Density of `P^gamma_{alpha,beta}` at `u > 0`.
    pub fn density(&self, u: f64) -> Result<f64> {
        Ok(self.density_result(u)?.value)
    }

    /// Density with the error estimate of its convolution.
    pub fn density_result(&self, u: f64) -> Result<IntegralResult> {
        check_arg("pollard density", u)?;
        let a = self.alpha();
        let g = self.params.gamma;
        if u <= ASYMPTOTIC_SMALLNESS {
            return Ok(IntegralResult::exact(
                ((g - 1.0) * u.ln() - self.ln_gamma_gamma - self.ln_gamma_c).exp(),
            ));
        }
        let y = u.powf(-1.0 / a);
        if y == 0.0 {
            return Ok(IntegralResult::exact(0.0));
        }
        let conv = self.convolution(y)?;
        if conv.value == 0.0 {
            return Ok(IntegralResult::exact(0.0));
        }
        let exponent = (self.params.beta - 1.0) / a - 1.0;
        let value = (conv.value.ln() + exponent * u.ln() - self.ln_gamma_gamma).exp();
        Ok(conv.scaled(value / conv.value))
    }

    /// `P^gamma_{alpha,beta}(t)`.
    pub fn cdf(&self, t: f64) -> Result<IntegralResult> {
        check_arg("pollard_cdf", t)?;
        let r = try_tanh_sinh(|p| self.density(p.from_left), 0.0, t, &self.outer)?
            .require_converged("pollard distribution")?;
        Ok(self.with_inner_error(r))
    }

    fn with_inner_error(&self, mut r: IntegralResult) -> IntegralResult {
        r.error_estimate += self.inner.rel_tol * r.value.abs();
        r
    }

    /// `int_0^inf e^{-z u} dP(u)`, which equals `E^gamma_{alpha,beta}(-z)`.
    pub fn laplace(&self, z: f64) -> Result<IntegralResult> {
        if !(z >= 0.0 && z.is_finite()) {
            return Err(Error::Domain {
                operation: "pollard laplace transform",
                value: z,
                reason: "requires z >= 0",
            });
        }
        try_exp_sinh(
            |p| {
                let d = self.density(p.from_left)?;
                Ok(if d == 0.0 {
                    0.0
                } else {
                    (-z * p.from_left).exp() * d
                })
            },
            0.0,
            1.0 / (1.0 + z),
            &self.outer,
        )?
        .require_converged("pollard laplace transform")
        .map(|r| self.with_inner_error(r))
    }

    /// Gamma mixture `int w(x | t) dG(t | mu, lambda)`.
    pub fn marginal_density(&self, prior: &GammaPrior, x: f64) -> Result<IntegralResult> {
        check_arg("marginal_density", x)?;
        let ln_norm = prior.mu * prior.lambda.ln() - ln_gamma(prior.mu);
        let r = try_exp_sinh(
            |p| {
                let t = p.from_left;
                let w = self.kernel_w_rescaled(x, t)?.value;
                if w == 0.0 {
                    return Ok(0.0);
                }
                Ok((w.ln() + (prior.mu - 1.0) * t.ln() - prior.lambda * t).exp())
            },
            0.0,
            1.0 / prior.lambda,
            &self.outer,
        )?
        .require_converged("marginal density")?;
        Ok(self.with_inner_error(r.scaled(ln_norm.exp())))
    }
}

/// `w(x | t)`; both routes are evaluated and must agree within `1e-8`.
pub fn conv_kernel_w(p: &PollardParams, x: f64, t: f64) -> Result<f64> {
    let routes = Pollard::new(*p).kernel_w_routes(x, t)?;
    let scale = routes.direct.abs().max(routes.rescaled.abs());
    if (routes.direct - routes.rescaled).abs() > ROUTE_AGREEMENT * scale + 1e-300 {
        return Err(Error::MethodDisagreement {
            at: x,
            first: "direct convolution",
            first_value: routes.direct,
            second: "rescaled convolution",
            second_value: routes.rescaled,
        });
    }
    Ok(routes.rescaled)
}

/// `P^gamma_{alpha,beta}(t)`.
pub fn pollard_cdf(p: &PollardParams, t: f64) -> Result<f64> {
    Ok(Pollard::new(*p).cdf(t)?.value)
}

/// Marginal density of the gamma mixture.
pub fn marginal_density(p: &PollardParams, prior: &GammaPrior, x: f64) -> Result<f64> {
    Ok(Pollard::new(*p).marginal_density(prior, x)?.value)
}

/// `(n / mu) m(x | mu / n, lambda)`, which tends to
/// `Gamma(gamma) x^{beta-1} E^gamma_{alpha,beta}(-lambda x^alpha)` as `n` grows.
pub fn ml_via_limit(p: &PollardParams, lambda: f64, x: f64, n: u32, mu: f64) -> Result<f64> {
    Ok(limit_with(&Pollard::new(*p), lambda, x, n, mu)?.value)
}

pub fn limit_with(
    pollard: &Pollard,
    lambda: f64,
    x: f64,
    n: u32,
    mu: f64,
) -> Result<IntegralResult> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "must be a positive integer",
        });
    }
    let shape = mu / n as f64;
    let prior = GammaPrior::new(shape, lambda)?;
    Ok(pollard.marginal_density(&prior, x)?.scaled(1.0 / shape))
}

/// `E^gamma_{alpha,beta}(-lambda x^alpha)` as the Laplace transform of the
/// Pollard distribution.
pub fn ml_via_pollard(p: &PollardParams, lambda: f64, x: f64) -> Result<f64> {
    check_positive("lambda", lambda)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            operation: "ml_via_pollard",
            value: x,
            reason: "requires x >= 0",
        });
    }
    let z = lambda * x.powf(p.alpha.value());
    Ok(Pollard::new(*p).laplace(z)?.value)
}

/// `lambda int F_alpha(x | t) e^{-lambda t} dt`, equal to `1 - E_alpha(-lambda x^alpha)`.
pub fn feller_mixture(a: StableIndex, lambda: f64, x: f64) -> Result<f64> {
    check_positive("lambda", lambda)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    check_arg("feller_mixture", x)?;
    let law = StableLaw::new(a);
    let inv = -1.0 / a.value();
    let r = try_exp_sinh(
        |p| {
            let y = x * p.from_left.powf(inv);
            if y == 0.0 {
                return Ok(0.0);
            }
            Ok(law.cdf(y)? * (-lambda * p.from_left).exp())
        },
        0.0,
        1.0 / lambda,
        &QuadratureConfig::default(),
    )?
    .require_converged("feller mixture")?;
    Ok((lambda * r.value).clamp(0.0, 1.0))
}

/// Laplace transform of the Pollard distribution on a fixed node set shared
/// by every argument in `[0, z_max]`.
///
/// The Pollard density is evaluated once per node at construction; each
/// transform is then a weighted sum, so a grid of transforms costs little more
/// than one.
#[derive(Debug, Clone)]
pub struct PollardTransform {
    /// `(u, weight * density(u))` per refinement level.
    levels: Vec<Vec<(f64, f64)>>,
    cfg: QuadratureConfig,
    node_rel_error: f64,
    z_max: f64,
}

impl PollardTransform {
    pub fn new(pollard: &Pollard, z_max: f64) -> Result<Self> {
        check_arg("pollard transform range", z_max.max(f64::MIN_POSITIVE))?;
        let cfg = *pollard.config();
        let eval_level = |nodes: &[(crate::numerics::Abscissa, f64)]| -> Result<Vec<(f64, f64)>> {
            nodes
                .par_iter()
                .map(|(p, w)| Ok((p.from_left, w * pollard.density(p.from_left)?)))
                .collect()
        };
        let coarse = ExpSinhRule::new(0.0, 1.0, -6.5, 6.5, 0);
        let level0 = eval_level(coarse.level(0))?;
        let peak = level0.iter().fold(0.0f64, |m, &(_, v)| m.max(v.abs()));
        let node_t = |u: f64| (std::f64::consts::FRAC_2_PI * u.ln()).asinh().round();
        let significant = level0
            .iter()
            .filter(|&&(_, v)| v.abs() > 1e-22 * peak)
            .map(|&(u, _)| node_t(u));
        let (lo, hi) = significant.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
            (lo.min(t), hi.max(t))
        });
        let (lo, hi) = if lo <= hi {
            (lo - 1.0, hi + 1.0)
        } else {
            (-6.5, 6.5)
        };
        let rule = ExpSinhRule::new(0.0, 1.0, lo, hi, cfg.max_refinements);
        let mut transform = Self {
            levels: vec![eval_level(rule.level(0))?],
            cfg,
            node_rel_error: pollard.inner.rel_tol + 4.0 * f64::EPSILON,
            z_max,
        };
        for level in 1..=rule.max_level() {
            transform.levels.push(eval_level(rule.level(level))?);
            if level >= 2 {
                let ok = [0.0, 0.25 * z_max, z_max].iter().all(|&z| {
                    let (v, e) = transform.estimate(z);
                    e <= cfg.budget(v)
                });
                if ok {
                    return Ok(transform);
                }
            }
        }
        let (v, e) = transform.estimate(z_max);
        Err(Error::NotConverged {
            method: "pollard transform nodes",
            value: v,
            error_estimate: e,
            evaluations: transform.node_count(),
        })
    }

    fn estimate(&self, z: f64) -> (f64, f64) {
        let mut total = NeumaierSum::new();
        let mut magnitude = 0.0;
        let mut previous = 0.0;
        let last = self.levels.len() - 1;
        for (level, nodes) in self.levels.iter().enumerate() {
            for &(u, wp) in nodes {
                if wp != 0.0 {
                    let term = (-z * u).exp() * wp;
                    total.add(term);
                    magnitude += term.abs();
                }
            }
            if level + 1 == last {
                previous = total.value() * ExpSinhRule::step(level);
            }
        }
        let step = ExpSinhRule::step(last);
        let value = total.value() * step;
        (
            value,
            (value - previous).abs() + self.node_rel_error * magnitude * step,
        )
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    /// `E^gamma_{alpha,beta}(-z)`.
    pub fn laplace(&self, z: f64) -> Result<IntegralResult> {
        if !(z >= 0.0 && z.is_finite()) {
            return Err(Error::Domain {
                operation: "pollard transform",
                value: z,
                reason: "requires z >= 0",
            });
        }
        let (value, error) = self.estimate(z);
        IntegralResult {
            value,
            error_estimate: error,
            evaluations: self.node_count(),
            converged: error <= self.cfg.budget(value),
        }
        .require_converged("pollard transform")
    }
}

/// Generalised Mittag-Leffler distribution from the tilted stable law.
#[derive(Debug, Clone)]
pub struct TiltedPollard {
    tilt: TiltParams,
    law: StableLaw,
    ln_norm: f64,
    cfg: QuadratureConfig,
}

impl TiltedPollard {
    pub fn new(tilt: TiltParams) -> Self {
        Self {
            tilt,
            law: StableLaw::new(tilt.alpha),
            ln_norm: tilt.normalizer().ln(),
            cfg: QuadratureConfig::default(),
        }
    }

    fn alpha(&self) -> f64 {
        self.tilt.alpha.value()
    }

    /// `(C / alpha) f_alpha(u^{-1/alpha}) u^{(theta-1)/alpha - 1}`.
    pub fn density(&self, u: f64) -> Result<f64> {
        check_arg("tilted pollard density", u)?;
        let a = self.alpha();
        let y = u.powf(-1.0 / a);
        if y == 0.0 {
            return Ok(0.0);
        }
        let f = self.law.density(y)?;
        if f == 0.0 {
            return Ok(0.0);
        }
        let exponent = (self.tilt.theta - 1.0) / a - 1.0;
        Ok((self.ln_norm - a.ln() + f.ln() + exponent * u.ln()).exp())
    }

    pub fn cdf(&self, t: f64) -> Result<IntegralResult> {
        check_arg("tilted_pollard_cdf", t)?;
        try_tanh_sinh(|p| self.density(p.from_left), 0.0, t, &self.cfg)?
            .require_converged("tilted pollard distribution")
    }

    /// `(x / alpha) int f_{alpha,theta}(x | t) t^{-1} e^{-lambda t} dt`.
    pub fn h_mixture(&self, lambda: f64, x: f64) -> Result<IntegralResult> {
        check_positive("lambda", lambda)?;
        check_arg("tilted_h", x)?;
        let a = self.alpha();
        let r = try_exp_sinh(
            |p| {
                let t = p.from_left;
                let f = self.tilt.density_with(&self.law, x, t)?;
                Ok(f / t * (-lambda * t).exp())
            },
            0.0,
            1.0 / lambda,
            &self.cfg,
        )?
        .require_converged("tilted h mixture")?;
        Ok(r.scaled(x / a))
    }

    /// `int e^{-lambda x^alpha u} dP_{alpha,theta}(u)`.
    pub fn h_distribution(&self, lambda: f64, x: f64) -> Result<IntegralResult> {
        check_positive("lambda", lambda)?;
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::Domain {
                operation: "tilted_h",
                value: x,
                reason: "requires x >= 0",
            });
        }
        let z = lambda * x.powf(self.alpha());
        try_exp_sinh(
            |p| {
                let d = self.density(p.from_left)?;
                Ok(if d == 0.0 {
                    0.0
                } else {
                    (-z * p.from_left).exp() * d
                })
            },
            0.0,
            1.0 / (1.0 + z),
            &self.cfg,
        )?
        .require_converged("tilted h distribution")
    }
}

/// `h_{alpha,theta}(x | lambda)`; the mixture and distribution routes must agree
/// within `1e-6`.
pub fn tilted_h(tp: TiltParams, lambda: f64, x: f64) -> Result<f64> {
    let tilted = TiltedPollard::new(tp);
    let mixture = tilted.h_mixture(lambda, x)?.value;
    let distribution = tilted.h_distribution(lambda, x)?.value;
    if (mixture - distribution).abs() > TILT_ROUTE_AGREEMENT {
        return Err(Error::MethodDisagreement {
            at: x,
            first: "tilted mixture",
            first_value: mixture,
            second: "tilted distribution",
            second_value: distribution,
        });
    }
    Ok(mixture)
}

/// `P_{alpha,theta}(t)`.
pub fn tilted_pollard_cdf(tp: TiltParams, t: f64) -> Result<f64> {
    Ok(TiltedPollard::new(tp).cdf(t)?.value.clamp(0.0, 1.0))
}

/// `Gamma(gamma + eps) / Gamma(1 + eps) lambda^eps x^{alpha eps} E^{gamma+eps}_{alpha,beta+alpha eps}(-lambda x^alpha)`
/// with `eps = mu / n`: the exact value of `(n/mu) m(x | mu/n, lambda)` expressed
/// through the series, used to report the finite-`n` bias.
pub fn limit_exact(p: &PollardParams, lambda: f64, x: f64, n: u32, mu: f64) -> Result<f64> {
    let eps = mu / n as f64;
    let a = p.alpha.value();
    let q = MLParams::new(a, p.beta + a * eps, p.gamma + eps)?;
    let e = crate::mittag_leffler::ml_series(&q, -lambda * x.powf(a))?;
    Ok(gamma(p.gamma + eps) / gamma(1.0 + eps)
        * lambda.powf(eps)
        * x.powf(a * eps + p.beta - 1.0)
        * e)
}
