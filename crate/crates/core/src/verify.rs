//! Finite-difference complete-monotonicity certificates and cross-route validation.

use crate::error::{Error, Result};
use crate::mittag_leffler::{ml_series_with, MLParams};
use crate::numerics::{try_exp_sinh, QuadratureConfig};
use crate::pollard::{limit_with, Pollard, PollardParams, PollardTransform};
use crate::special::gamma;
use crate::stable::StableIndex;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

const UNIFORMITY: f64 = 1e-9;

/// A named evaluator of a real function.
pub struct Route<'a> {
    pub name: String,
    eval: Box<dyn Fn(f64) -> Result<f64> + Send + Sync + 'a>,
}

impl<'a> Route<'a> {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'a,
    {
        Self {
            name: name.into(),
            eval: Box::new(eval),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        (self.eval)(x)
    }
}

impl std::fmt::Debug for Route<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Route").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteValue {
    pub route: String,
    pub value: Option<f64>,
    pub error: Option<String>,
}

impl RouteValue {
    fn from_result(route: &str, r: Result<f64>) -> Self {
        match r {
            Ok(v) => Self {
                route: route.to_string(),
                value: Some(v),
                error: None,
            },
            Err(e) => Self {
                route: route.to_string(),
                value: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub inputs: BTreeMap<String, f64>,
    pub values: Vec<RouteValue>,
    /// `None` when a route failed.
    pub max_discrepancy: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

/// A summary-level assertion of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub suite_name: String,
    /// `absolute` or `relative`.
    pub metric: String,
    pub tolerance: f64,
    pub cases: Vec<CaseRecord>,
    pub checks: Vec<Check>,
    /// Index into `cases` of the failing or tightest case.
    pub worst_case: Option<usize>,
    pub reference: Option<String>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn from_cases(
        suite_name: &str,
        metric: &str,
        tolerance: f64,
        cases: Vec<CaseRecord>,
        checks: Vec<Check>,
    ) -> Self {
        let worst_case = cases
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| {
                let key = |c: &CaseRecord| {
                    (
                        !c.passed,
                        c.max_discrepancy.map_or(f64::INFINITY, |d| d / c.tolerance),
                    )
                };
                let (fa, da) = key(a);
                let (fb, db) = key(b);
                fa.cmp(&fb).then(da.total_cmp(&db))
            })
            .map(|(i, _)| i);
        let passed = cases.iter().all(|c| c.passed) && checks.iter().all(|c| c.passed);
        Self {
            suite_name: suite_name.to_string(),
            metric: metric.to_string(),
            tolerance,
            cases,
            checks,
            worst_case,
            reference: None,
            passed,
        }
    }

    pub fn worst(&self) -> Option<&CaseRecord> {
        self.worst_case.map(|i| &self.cases[i])
    }

    /// One case per certificate; the discrepancy is the largest violation depth.
    pub fn from_certificates(
        suite_name: &str,
        certificates: Vec<(BTreeMap<String, f64>, CMCertificate)>,
    ) -> Self {
        let tolerance = certificates
            .iter()
            .map(|(_, c)| c.tolerance)
            .fold(0.0, f64::max);
        let cases = certificates
            .into_iter()
            .map(|(inputs, cert)| {
                let depth = cert.tableau.iter().map(|o| -o.min).fold(0.0, f64::max);
                CaseRecord {
                    inputs,
                    values: Vec::new(),
                    max_discrepancy: Some(depth),
                    tolerance: cert.tolerance,
                    passed: cert.passed(),
                }
            })
            .collect();
        Self::from_cases(suite_name, "absolute", tolerance, cases, Vec::new())
    }
}

pub fn inputs(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Pairwise comparison of every route at every grid point.
pub fn cross_validate(routes: &[Route], grid: &[f64], tol: f64) -> Result<ValidationReport> {
    if routes.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "routes",
            value: routes.len() as f64,
            reason: "cross validation needs at least two routes",
        });
    }
    let cases = grid
        .par_iter()
        .map(|&x| {
            let values: Vec<RouteValue> = routes
                .iter()
                .map(|r| RouteValue::from_result(&r.name, r.eval(x)))
                .collect();
            let finite: Option<Vec<f64>> = values.iter().map(|v| v.value).collect();
            let max_discrepancy = finite.map(|vs| {
                let mut d = 0.0f64;
                for (i, a) in vs.iter().enumerate() {
                    for b in &vs[i + 1..] {
                        d = d.max((a - b).abs());
                    }
                }
                d
            });
            CaseRecord {
                inputs: inputs(&[("x", x)]),
                values,
                max_discrepancy,
                tolerance: tol,
                passed: max_discrepancy.is_some_and(|d| d <= tol),
            }
        })
        .collect();
    Ok(ValidationReport::from_cases(
        "cross_validate",
        "absolute",
        tol,
        cases,
        Vec::new(),
    ))
}

/// Compares `int_0^inf e^{-s x} f(x) dx` with `closed_form(s)` in relative terms.
pub fn check_laplace_identity<F, G>(
    f: F,
    closed_form: G,
    s_grid: &[f64],
    tol: f64,
) -> Result<ValidationReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
    G: Fn(f64) -> Result<f64> + Sync,
{
    let cfg = QuadratureConfig::new(1e-300, (tol * 1e-2).clamp(1e-13, 1e-8))?;
    let cases = s_grid
        .par_iter()
        .map(|&s| {
            let numeric = try_exp_sinh(
                |p| {
                    let w = (-s * p.from_left).exp();
                    if w < 1e-300 {
                        return Ok(0.0);
                    }
                    Ok(w * f(p.from_left)?)
                },
                0.0,
                1.0 / s,
                &cfg,
            )
            .and_then(|r| r.require_converged("laplace identity"))
            .map(|r| r.value);
            let exact = closed_form(s);
            let max_discrepancy = match (&numeric, &exact) {
                (Ok(n), Ok(e)) => Some((n - e).abs() / e.abs().max(f64::MIN_POSITIVE)),
                _ => None,
            };
            CaseRecord {
                inputs: inputs(&[("s", s)]),
                values: vec![
                    RouteValue::from_result("numeric transform", numeric),
                    RouteValue::from_result("closed form", exact),
                ],
                max_discrepancy,
                tolerance: tol,
                passed: max_discrepancy.is_some_and(|d| d <= tol),
            }
        })
        .collect();
    Ok(ValidationReport::from_cases(
        "laplace_identity",
        "relative",
        tol,
        cases,
        Vec::new(),
    ))
}

/// Sign summary of one order of the difference tableau.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderSummary {
    pub order: usize,
    /// Smallest `(-1)^k Delta^k f` over the grid.
    pub min: f64,
    pub negatives: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub order: usize,
    pub x: f64,
    /// `(-1)^k Delta^k f` at `x`.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CMCertificate {
    pub grid: Vec<f64>,
    pub max_order: usize,
    pub tolerance: f64,
    pub tableau: Vec<OrderSummary>,
    pub violations: Vec<Violation>,
}

impl CMCertificate {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_grid(grid: &[f64], k_max: usize) -> Result<()> {
    if grid.len() <= k_max {
        return Err(Error::InvalidGrid(
            "grid needs more points than the highest difference order",
        ));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid("grid contains a non-finite abscissa"));
    }
    let h = grid[1] - grid[0];
    if h <= 0.0 {
        return Err(Error::InvalidGrid("grid must be strictly increasing"));
    }
    let span = grid[grid.len() - 1] - grid[0];
    for (i, &x) in grid.iter().enumerate() {
        if (x - (grid[0] + i as f64 * h)).abs() > UNIFORMITY * span.max(1.0) {
            return Err(Error::InvalidGrid("grid must be uniform"));
        }
    }
    Ok(())
}

/// `n` points `x0, x0 + h, ...`.
pub fn uniform_grid(x0: f64, h: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| x0 + i as f64 * h).collect()
}

/// Tests `(-1)^k Delta^k f >= -tol` for `k = 0..=k_max` on a uniform grid.
pub fn check_complete_monotonicity<F>(
    f: F,
    grid: &[f64],
    k_max: usize,
    tol: f64,
) -> Result<CMCertificate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    check_grid(grid, k_max)?;
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&x| match f(x) {
            Ok(v) if v.is_nan() => Err(Error::EvaluationFailed {
                at: x,
                source: Box::new(Error::NanEncountered { at: x }),
            }),
            Ok(v) => Ok(v),
            Err(e) => Err(Error::EvaluationFailed {
                at: x,
                source: Box::new(e),
            }),
        })
        .collect::<Result<_>>()?;
    certify(grid, &values, k_max, tol)
}

/// Certificate from precomputed values on a uniform grid.
pub fn certify(grid: &[f64], values: &[f64], k_max: usize, tol: f64) -> Result<CMCertificate> {
    check_grid(grid, k_max)?;
    if values.len() != grid.len() {
        return Err(Error::InvalidGrid("values and grid differ in length"));
    }
    let mut row = values.to_vec();
    let mut tableau = Vec::with_capacity(k_max + 1);
    let mut violations = Vec::new();
    for k in 0..=k_max {
        if k > 0 {
            row = row.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut summary = OrderSummary {
            order: k,
            min: f64::INFINITY,
            negatives: 0,
            violations: 0,
        };
        for (i, &d) in row.iter().enumerate() {
            let v = sign * d;
            summary.min = summary.min.min(v);
            if v < 0.0 {
                summary.negatives += 1;
            }
            if v < -tol {
                summary.violations += 1;
                violations.push(Violation {
                    order: k,
                    x: grid[i],
                    value: v,
                });
            }
        }
        tableau.push(summary);
    }
    Ok(CMCertificate {
        grid: grid.to_vec(),
        max_order: k_max,
        tolerance: tol,
        tableau,
        violations,
    })
}

/// Where a reference value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Source {
    Series,
    Pollard,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Series => "series",
            Source::Pollard => "pollard",
        }
    }
}

/// `E^gamma_{alpha,beta}(-z)` from the series where it is reliable and from
/// the Pollard transform elsewhere.
#[derive(Debug, Clone)]
pub struct ReferenceEvaluator {
    params: MLParams,
    pollard: Pollard,
    transform: Option<PollardTransform>,
    cfg: QuadratureConfig,
}

impl ReferenceEvaluator {
    pub fn new(params: PollardParams, cfg: QuadratureConfig) -> Self {
        Self {
            params: params.ml_params(),
            pollard: Pollard::with_config(params, cfg),
            transform: None,
            cfg,
        }
    }

    /// Precomputes the Pollard transform for arguments up to `z_max`.
    pub fn with_range(params: PollardParams, cfg: QuadratureConfig, z_max: f64) -> Result<Self> {
        let mut r = Self::new(params, cfg);
        r.transform = Some(PollardTransform::new(&r.pollard, z_max)?);
        Ok(r)
    }

    pub fn eval(&self, z: f64) -> Result<(f64, Source)> {
        match ml_series_with(&self.params, -z, &self.cfg) {
            Ok(r) => Ok((r.result.value, Source::Series)),
            Err(Error::CancellationLoss { .. } | Error::OutsideSeriesRange { .. }) => {
                let v = match &self.transform {
                    Some(t) if z <= t.z_max() => t.laplace(z)?.value,
                    _ => self.pollard.laplace(z)?.value,
                };
                Ok((v, Source::Pollard))
            }
            Err(e) => Err(e),
        }
    }
}

/// Certificate for `x -> E^gamma_{alpha,beta}(-lambda x^{a2})`.
pub fn bernstein_composition_check(
    params: PollardParams,
    lambda: f64,
    a2: StableIndex,
    grid: &[f64],
    k_max: usize,
    tol: f64,
) -> Result<CMCertificate> {
    composition_check(params, lambda, a2.value(), grid, k_max, tol)
}

/// As [`bernstein_composition_check`] with any exponent in `(0, 1]`; exponent
/// one certifies `E^gamma_{alpha,beta}(-lambda x)` itself.
pub fn composition_check(
    params: PollardParams,
    lambda: f64,
    a2: f64,
    grid: &[f64],
    k_max: usize,
    tol: f64,
) -> Result<CMCertificate> {
    if !(a2 > 0.0 && a2 <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "a2",
            value: a2,
            reason: "must lie in (0, 1]",
        });
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            reason: "must be positive",
        });
    }
    check_grid(grid, k_max)?;
    if grid[0] < 0.0 {
        return Err(Error::InvalidGrid("grid must lie in [0, inf)"));
    }
    let z_max = lambda * grid[grid.len() - 1].powf(a2);
    let transform = PollardTransform::new(&Pollard::new(params), z_max)?;
    check_complete_monotonicity(
        |x| Ok(transform.laplace(lambda * x.powf(a2))?.value),
        grid,
        k_max,
        tol,
    )
}

/// `(n / mu) m(x | mu / n, lambda)` against `Gamma(gamma) x^{beta-1} E^gamma_{alpha,beta}(-lambda x^alpha)`.
///
/// Each cell is a case whose discrepancy is the absolute error. The checks
/// record the spread across `mu` at the largest `n`, the shrinkage of every
/// column from the smallest to the largest `n`, and the largest error at the
/// largest `n`.
pub fn limit_convergence_report(
    params: PollardParams,
    lambda: f64,
    x: f64,
    mu_list: &[f64],
    n_list: &[u32],
) -> Result<ValidationReport> {
    limit_report_with(params, lambda, x, mu_list, n_list, 1e-4, 1e-3)
}

pub fn limit_report_with(
    params: PollardParams,
    lambda: f64,
    x: f64,
    mu_list: &[f64],
    n_list: &[u32],
    spread_tol: f64,
    error_tol: f64,
) -> Result<ValidationReport> {
    if mu_list.is_empty() || n_list.is_empty() {
        return Err(Error::InvalidGrid(
            "limit report needs at least one mu and one n",
        ));
    }
    let cfg = QuadratureConfig::default();
    let reference = ReferenceEvaluator::new(params, cfg);
    let (e, source) = reference.eval(lambda * x.powf(params.alpha.value()))?;
    let target = gamma(params.gamma) * x.powf(params.beta - 1.0) * e;
    let pollard = Pollard::with_config(params, cfg);
    let n_max = *n_list.iter().max().unwrap_or(&1);
    let n_min = *n_list.iter().min().unwrap_or(&1);
    let cells: Vec<(f64, u32)> = mu_list
        .iter()
        .flat_map(|&mu| n_list.iter().map(move |&n| (mu, n)))
        .collect();
    let cases: Vec<CaseRecord> = cells
        .par_iter()
        .map(|&(mu, n)| {
            let v = limit_with(&pollard, lambda, x, n, mu).map(|r| r.value);
            let max_discrepancy = v.as_ref().ok().map(|v| (v - target).abs());
            let tolerance = if n == n_max { error_tol } else { f64::INFINITY };
            CaseRecord {
                inputs: inputs(&[("mu", mu), ("n", n as f64)]),
                values: vec![
                    RouteValue::from_result("limit", v),
                    RouteValue::from_result("reference", Ok(target)),
                ],
                max_discrepancy,
                tolerance,
                passed: max_discrepancy.is_some_and(|d| d <= tolerance),
            }
        })
        .collect();
    let cell = |mu: f64, n: u32| -> Option<f64> {
        cases
            .iter()
            .zip(&cells)
            .find(|(_, &(m, k))| m == mu && k == n)
            .and_then(|(c, _)| c.values[0].value)
    };
    let mut checks = Vec::new();
    let finals: Vec<f64> = mu_list.iter().filter_map(|&mu| cell(mu, n_max)).collect();
    if finals.len() == mu_list.len() {
        let spread = finals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - finals.iter().cloned().fold(f64::INFINITY, f64::min);
        checks.push(Check {
            name: format!("mu spread at n = {n_max}"),
            value: spread,
            tolerance: spread_tol,
            passed: spread <= spread_tol,
        });
    } else {
        checks.push(Check {
            name: format!("mu spread at n = {n_max}"),
            value: f64::NAN,
            tolerance: spread_tol,
            passed: false,
        });
    }
    for &mu in mu_list {
        let (first, last) = (cell(mu, n_min), cell(mu, n_max));
        let ratio = match (first, last) {
            (Some(a), Some(b)) => (b - target).abs() / (a - target).abs(),
            _ => f64::NAN,
        };
        checks.push(Check {
            name: format!("error ratio n = {n_max} over n = {n_min} at mu = {mu}"),
            value: ratio,
            tolerance: 1.0,
            passed: ratio < 1.0,
        });
    }
    let mut report =
        ValidationReport::from_cases("limit_convergence", "absolute", error_tol, cases, checks);
    report.reference = Some(source.name().to_string());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_has_no_violations() {
        let grid = uniform_grid(0.0, 0.1, 60);
        let c = check_complete_monotonicity(|x| Ok((-x).exp()), &grid, 8, 0.0).unwrap();
        assert!(c.passed());
        assert!(c.tableau.iter().all(|o| o.min > 0.0));
    }

    #[test]
    fn cosine_is_flagged() {
        let grid = uniform_grid(0.0, 0.1, 101);
        let c = check_complete_monotonicity(|x| Ok(x.cos()), &grid, 4, 1e-12).unwrap();
        assert!(!c.passed());
    }

    #[test]
    fn grid_validation() {
        assert!(check_complete_monotonicity(Ok, &[0.0, 1.0, 3.0], 1, 0.0).is_err());
        assert!(check_complete_monotonicity(Ok, &[0.0, 1.0], 2, 0.0).is_err());
        let e = check_complete_monotonicity(
            |x| {
                if x > 0.5 {
                    Err(Error::NanEncountered { at: x })
                } else {
                    Ok(x)
                }
            },
            &uniform_grid(0.0, 0.25, 5),
            1,
            0.0,
        );
        assert!(matches!(e, Err(Error::EvaluationFailed { at, .. }) if at == 0.75));
    }

    #[test]
    fn identical_routes_agree_exactly() {
        let routes = [
            Route::new("a", |x: f64| Ok(x.sin())),
            Route::new("b", |x: f64| Ok(x.sin())),
        ];
        let r = cross_validate(&routes, &uniform_grid(0.0, 0.5, 11), 0.0).unwrap();
        assert!(r.passed);
        assert!(r.cases.iter().all(|c| c.max_discrepancy == Some(0.0)));
    }
}
