use crate::args::{
    Cli, Command, Family, FamilyArgs, Format, LimitArgs, Method, ParamArgs, RangeArgs, Suite,
};
use crate::output::{self, Row};
use mlcm_core::mittag_leffler::{ml_series_with, MLParams};
use mlcm_core::pollard::{limit_with, Pollard, PollardParams, PollardTransform, TiltedPollard};
use mlcm_core::special::gamma;
use mlcm_core::spectral::{ml_via_spectral_with, spectral_density_r, SpectralPoint};
use mlcm_core::stable::{StableIndex, StableLaw, TiltParams};
use mlcm_core::verify::{
    check_laplace_identity, composition_check, cross_validate, inputs, limit_convergence_report,
    uniform_grid, ReferenceEvaluator, Route, ValidationReport,
};
use mlcm_core::{Error, QuadratureConfig};
use rayon::prelude::*;
use serde_json::{json, Value};

const DEFAULT_TOL: f64 = 1e-10;
const DEFAULT_AGREEMENT: f64 = 1e-6;
const CM_SETS: [(f64, f64, f64); 3] = [(0.5, 1.0, 1.0), (0.5, 1.2, 1.5), (0.7, 1.5, 1.8)];

#[derive(Debug)]
pub enum Failure {
    /// Exit status 2.
    Usage(String),
    /// Exit status 3.
    Numerical(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

/// Text to emit and whether the run counts as a verification failure.
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            failed: false,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let full = cli.full_precision;
    match &cli.command {
        Command::Eval {
            params,
            x,
            method,
            limit,
        } => {
            let format = cli.format.unwrap_or(Format::Plain);
            if *method == Method::All {
                let tol = cli.tol.unwrap_or(DEFAULT_AGREEMENT);
                return validate_methods(params, &[*x], tol, format, full, "eval");
            }
            let cfg = quadrature(cli.tol)?;
            let (value, error) = evaluate(params, *method, *x, &cfg, limit)?;
            let text = match format {
                Format::Plain => format!("{}\n", output::number(value, full)),
                _ => {
                    let row = Row {
                        x: *x,
                        value,
                        error_estimate: error,
                        method: method.name().to_string(),
                    };
                    output::rows(
                        &[row],
                        format,
                        full,
                        meta("eval", ml_meta(params), cfg.rel_tol, Some(method.name())),
                    )
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Table {
            params,
            range,
            method,
            limit,
        } => {
            let format = cli.format.unwrap_or(Format::Csv);
            let grid = range_grid(range)?;
            if *method == Method::All {
                let tol = cli.tol.unwrap_or(DEFAULT_AGREEMENT);
                return validate_methods(params, &grid, tol, format, full, "table");
            }
            let cfg = quadrature(cli.tol)?;
            let rows = table(params, *method, &grid, &cfg, limit)?;
            let m = meta("table", ml_meta(params), cfg.rel_tol, Some(method.name()));
            Ok(Outcome::ok(output::rows(&rows, format, full, m)))
        }
        Command::Density { family, range } => {
            let format = cli.format.unwrap_or(Format::Csv);
            let cfg = quadrature(cli.tol)?;
            let grid = range_grid(range)?;
            let rows = family_rows(family, &grid, &cfg, false)?;
            let m = meta(
                "density",
                family_meta(family),
                cfg.rel_tol,
                Some(family.family.name()),
            );
            Ok(Outcome::ok(output::rows(&rows, format, full, m)))
        }
        Command::Cdf { family, range } => {
            let format = cli.format.unwrap_or(Format::Csv);
            let cfg = quadrature(cli.tol)?;
            let grid = range_grid(range)?;
            let rows = family_rows(family, &grid, &cfg, true)?;
            let m = meta(
                "cdf",
                family_meta(family),
                cfg.rel_tol,
                Some(family.family.name()),
            );
            Ok(Outcome::ok(output::rows(&rows, format, full, m)))
        }
        Command::Verify { suite, inject } => {
            let format = cli.format.unwrap_or(Format::Plain);
            let suites: Vec<Suite> = match suite {
                Suite::All => vec![Suite::Cm, Suite::Cross, Suite::Laplace],
                s => vec![*s],
            };
            let mut reports = Vec::new();
            for s in suites {
                reports.push(run_suite(s, cli.tol, *inject)?);
            }
            let failed = reports.iter().any(|r| !r.passed);
            let m = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "command": "verify",
                "suites": reports.iter().map(|r| r.suite_name.clone()).collect::<Vec<_>>(),
                "tolerances": reports.iter().map(|r| r.tolerance).collect::<Vec<_>>(),
                "inject": inject,
            });
            Ok(Outcome {
                text: output::reports(&reports, format, full, m),
                failed,
            })
        }
        Command::LimitDemo {
            params,
            lambda,
            x,
            mu_list,
            n_list,
        } => {
            let format = cli.format.unwrap_or(Format::Plain);
            let p = pollard_params(params)?;
            let report = limit_convergence_report(p, *lambda, *x, mu_list, n_list)?;
            let text = match format {
                Format::Json => {
                    let mut parameters = ml_meta(params);
                    parameters["lambda"] = json!(lambda);
                    parameters["x"] = json!(x);
                    output::reports(
                        &[report],
                        format,
                        full,
                        meta("limit-demo", parameters, DEFAULT_TOL, Some("limit")),
                    )
                }
                _ => limit_table(&report, format, full),
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn quadrature(tol: Option<f64>) -> Result<QuadratureConfig, Failure> {
    let tol = tol.unwrap_or(DEFAULT_TOL);
    Ok(QuadratureConfig::with_tolerance(tol)?)
}

fn range_grid(r: &RangeArgs) -> Result<Vec<f64>, Failure> {
    if r.steps < 2 {
        return Err(Failure::Usage("--steps must be at least 2".into()));
    }
    if !(r.x_min.is_finite() && r.x_max.is_finite()) || r.x_max < r.x_min {
        return Err(Failure::Usage("--x-max must not be below --x-min".into()));
    }
    let h = (r.x_max - r.x_min) / (r.steps - 1) as f64;
    Ok((0..r.steps)
        .map(|i| {
            if i + 1 == r.steps {
                r.x_max
            } else {
                r.x_min + i as f64 * h
            }
        })
        .collect())
}

fn ml_params(p: &ParamArgs) -> Result<MLParams, Failure> {
    Ok(MLParams::new(p.alpha, p.beta, p.gamma)?)
}

fn pollard_params(p: &ParamArgs) -> Result<PollardParams, Failure> {
    Ok(PollardParams::new(p.alpha, p.beta, p.gamma)?)
}

fn ml_meta(p: &ParamArgs) -> Value {
    json!({"alpha": p.alpha, "beta": p.beta, "gamma": p.gamma})
}

fn family_meta(f: &FamilyArgs) -> Value {
    json!({
        "family": f.family.name(),
        "alpha": f.alpha,
        "beta": f.beta,
        "gamma": f.gamma,
        "theta": f.theta,
        "lambda": f.lambda,
        "t": f.t,
    })
}

fn meta(command: &str, parameters: Value, tolerance: f64, method: Option<&str>) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "parameters": parameters,
        "tolerance": tolerance,
        "method": method,
    })
}

fn nonpositive(x: f64, method: Method) -> Result<f64, Failure> {
    if x > 0.0 {
        Err(Failure::Usage(format!(
            "the {} method requires x <= 0",
            method.name()
        )))
    } else {
        Ok(-x)
    }
}

/// `E(x)` with an error estimate.
fn evaluate(
    p: &ParamArgs,
    method: Method,
    x: f64,
    cfg: &QuadratureConfig,
    limit: &LimitArgs,
) -> Result<(f64, f64), Failure> {
    match method {
        Method::Series => {
            let r = ml_series_with(&ml_params(p)?, x, cfg)?;
            Ok((r.result.value, r.result.error_estimate))
        }
        Method::Pollard => {
            let z = nonpositive(x, method)?;
            let r = Pollard::with_config(pollard_params(p)?, *cfg).laplace(z)?;
            Ok((r.value, r.error_estimate))
        }
        Method::Spectral => {
            let pp = pollard_params(p)?;
            let z = nonpositive(x, method)?;
            if z == 0.0 {
                return Err(Failure::Usage("the spectral method requires x < 0".into()));
            }
            let y = z.powf(1.0 / p.alpha);
            let r = ml_via_spectral_with(&pp, 1.0, y, cfg)?;
            let scale = y.powf(1.0 - p.beta);
            Ok((r.value * scale, r.error_estimate * scale))
        }
        Method::Limit => {
            let pp = pollard_params(p)?;
            let z = nonpositive(x, method)?;
            if z == 0.0 {
                return Err(Failure::Usage("the limit method requires x < 0".into()));
            }
            let y = z.powf(1.0 / p.alpha);
            let r = limit_with(&Pollard::with_config(pp, *cfg), 1.0, y, limit.n, limit.mu)?;
            let scale = 1.0 / (gamma(p.gamma) * y.powf(p.beta - 1.0));
            Ok((r.value * scale, r.error_estimate * scale))
        }
        Method::All => unreachable!("handled by cross validation"),
    }
}

fn table(
    p: &ParamArgs,
    method: Method,
    grid: &[f64],
    cfg: &QuadratureConfig,
    limit: &LimitArgs,
) -> Result<Vec<Row>, Failure> {
    let values: Vec<(f64, f64)> = if method == Method::Pollard {
        let z: Vec<f64> = grid
            .iter()
            .map(|&x| nonpositive(x, method))
            .collect::<Result<_, _>>()?;
        let pollard = Pollard::with_config(pollard_params(p)?, *cfg);
        let transform = PollardTransform::new(&pollard, z.iter().cloned().fold(0.0, f64::max))?;
        z.par_iter()
            .map(|&z| {
                transform
                    .laplace(z)
                    .map(|r| (r.value, r.error_estimate))
                    .map_err(Failure::from)
            })
            .collect::<Result<_, _>>()?
    } else {
        grid.par_iter()
            .map(|&x| evaluate(p, method, x, cfg, limit))
            .collect::<Result<_, _>>()?
    };
    Ok(grid
        .iter()
        .zip(values)
        .map(|(&x, (value, error_estimate))| Row {
            x,
            value,
            error_estimate,
            method: method.name().to_string(),
        })
        .collect())
}

fn validate_methods(
    p: &ParamArgs,
    grid: &[f64],
    tol: f64,
    format: Format,
    full: bool,
    command: &str,
) -> Result<Outcome, Failure> {
    let pp = pollard_params(p)?;
    let q = ml_params(p)?;
    let cfg = QuadratureConfig::default();
    for &x in grid {
        if x >= 0.0 {
            return Err(Failure::Usage("--method all requires x < 0".into()));
        }
    }
    let pollard = Pollard::new(pp);
    let routes = [
        Route::new("series", move |x: f64| {
            Ok(ml_series_with(&q, x, &cfg)?.result.value)
        }),
        Route::new("pollard", |x: f64| Ok(pollard.laplace(-x)?.value)),
        Route::new("spectral", move |x: f64| {
            let y = (-x).powf(1.0 / pp.alpha.value());
            Ok(ml_via_spectral_with(&pp, 1.0, y, &cfg)?.value * y.powf(1.0 - pp.beta))
        }),
    ];
    let report = cross_validate(&routes, grid, tol)?;
    let failed = !report.passed;
    let text = output::reports(
        &[report],
        format,
        full,
        meta(command, ml_meta(p), tol, Some("all")),
    );
    Ok(Outcome { text, failed })
}

fn stable_density(law: &StableLaw, y: f64) -> Result<(f64, f64), Error> {
    if y >= law.crossover() {
        let (v, e) = law.density_series(y);
        Ok((v.max(0.0), e))
    } else {
        let r = law
            .density_integral(y)?
            .require_converged("stable density integral")?;
        Ok((r.value.max(0.0), r.error_estimate))
    }
}

fn family_rows(
    f: &FamilyArgs,
    grid: &[f64],
    cfg: &QuadratureConfig,
    cdf: bool,
) -> Result<Vec<Row>, Failure> {
    if grid.iter().any(|&x| x <= 0.0) {
        return Err(Failure::Usage(
            "densities and distribution functions are tabulated on x > 0".into(),
        ));
    }
    if !(f.t > 0.0 && f.t.is_finite()) {
        return Err(Failure::Usage("--t must be positive".into()));
    }
    let alpha = StableIndex::new(f.alpha)?;
    let law = StableLaw::new(alpha);
    let scale = f.t.powf(-1.0 / f.alpha);
    let eval = |x: f64| -> Result<(f64, f64), Error> {
        match (f.family, cdf) {
            (Family::Stable, false) => {
                let y = x * scale;
                if y == 0.0 {
                    return Ok((0.0, 0.0));
                }
                let (v, e) = stable_density(&law, y)?;
                Ok((v * scale, e * scale))
            }
            (Family::Stable, true) => {
                let y = x * scale;
                Ok((if y == 0.0 { 0.0 } else { law.cdf(y)? }, f64::EPSILON))
            }
            (Family::Pollard, false) => {
                let r = Pollard::with_config(PollardParams::new(f.alpha, f.beta, f.gamma)?, *cfg)
                    .density_result(x)?;
                Ok((r.value, r.error_estimate))
            }
            (Family::Pollard, true) => {
                let r = Pollard::with_config(PollardParams::new(f.alpha, f.beta, f.gamma)?, *cfg)
                    .cdf(x)?;
                Ok((r.value, r.error_estimate))
            }
            (Family::Spectral, false) => {
                let params = PollardParams::new(f.alpha, f.beta, f.gamma)?;
                let v = spectral_density_r(SpectralPoint::new(x, f.lambda, params)?)?;
                Ok((v, 4.0 * f64::EPSILON * v.abs()))
            }
            (Family::Spectral, true) => unreachable!("rejected before evaluation"),
            (Family::Tilted, false) => {
                let tp = TiltParams::new(alpha, f.theta)?;
                Ok((tp.density_with(&law, x, f.t)?, 0.0))
            }
            (Family::Tilted, true) => {
                let r = TiltedPollard::new(TiltParams::new(alpha, f.theta)?).cdf(x)?;
                Ok((r.value.clamp(0.0, 1.0), r.error_estimate))
            }
        }
    };
    if cdf && f.family == Family::Spectral {
        return Err(Failure::Usage(
            "the spectral family has no distribution function here; use density".into(),
        ));
    }
    let values: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&x| eval(x))
        .collect::<Result<_, _>>()?;
    Ok(grid
        .iter()
        .zip(values)
        .map(|(&x, (value, error_estimate))| Row {
            x,
            value,
            error_estimate,
            method: f.family.name().to_string(),
        })
        .collect())
}

fn run_suite(
    suite: Suite,
    tol: Option<f64>,
    inject: Option<f64>,
) -> Result<ValidationReport, Failure> {
    match suite {
        Suite::Cm => {
            let tol = tol.unwrap_or(1e-7);
            let grid = uniform_grid(0.1, 0.125, 81);
            let mut certificates = Vec::new();
            for (a, b, g) in CM_SETS {
                let p = PollardParams::new(a, b, g)?;
                for a2 in [1.0, 0.5, 0.7] {
                    let cert = composition_check(p, 1.0, a2, &grid, 8, tol)?;
                    certificates.push((
                        inputs(&[("alpha", a), ("beta", b), ("gamma", g), ("a2", a2)]),
                        cert,
                    ));
                }
            }
            Ok(ValidationReport::from_certificates(
                "complete_monotonicity",
                certificates,
            ))
        }
        Suite::Cross => cross_suite(tol.unwrap_or(1e-5), inject.unwrap_or(0.0)),
        Suite::Laplace => laplace_suite(tol.unwrap_or(1e-6)),
        Suite::Limit => {
            let mut cases = Vec::new();
            let mut checks = Vec::new();
            for (a, b, g) in [(0.5, 1.0, 1.0), (0.5, 1.2, 1.5)] {
                let p = PollardParams::new(a, b, g)?;
                let r = limit_convergence_report(
                    p,
                    1.0,
                    1.0,
                    &[0.5, 1.0, 2.0],
                    &[1, 2, 4, 8, 16, 32, 64],
                )?;
                for mut c in r.cases {
                    c.inputs
                        .extend(inputs(&[("alpha", a), ("beta", b), ("gamma", g)]));
                    cases.push(c);
                }
                for mut c in r.checks {
                    c.name = format!("({a}, {b}, {g}) {}", c.name);
                    checks.push(c);
                }
            }
            Ok(ValidationReport::from_cases(
                "limit_convergence",
                "absolute",
                1e-3,
                cases,
                checks,
            ))
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn cross_suite(tol: f64, inject: f64) -> Result<ValidationReport, Failure> {
    let mut cases = Vec::new();
    let plans = [
        ((0.5, 1.0, 1.0), uniform_grid(0.0, 0.5, 11), false),
        ((0.5, 1.2, 1.5), uniform_grid(0.25, 0.25, 12), true),
        ((0.7, 1.5, 1.8), uniform_grid(0.25, 0.25, 12), true),
    ];
    for ((a, b, g), grid, with_spectral) in plans {
        let p = PollardParams::new(a, b, g)?;
        let q = p.ml_params();
        let x_max = grid[grid.len() - 1];
        let transform = PollardTransform::new(&Pollard::new(p), x_max.powf(a))?;
        let mut routes = vec![
            Route::new("series", move |x: f64| {
                mlcm_core::mittag_leffler::ml_series(&q, -x.powf(a))
            }),
            Route::new("pollard", |x: f64| {
                Ok(transform.laplace(x.powf(a))?.value + inject * x)
            }),
        ];
        if with_spectral {
            routes.push(Route::new("spectral", move |x: f64| {
                Ok(mlcm_core::spectral::ml_via_spectral(&p, 1.0, x)? * x.powf(1.0 - b))
            }));
        }
        let report = cross_validate(&routes, &grid, tol)?;
        for mut c in report.cases {
            c.inputs
                .extend(inputs(&[("alpha", a), ("beta", b), ("gamma", g)]));
            cases.push(c);
        }
    }
    Ok(ValidationReport::from_cases(
        "cross_validate",
        "absolute",
        tol,
        cases,
        Vec::new(),
    ))
}

fn laplace_suite(tol: f64) -> Result<ValidationReport, Failure> {
    let s_grid = [1.0, 2.0, 4.0];
    let cfg = QuadratureConfig::default();
    let half = ReferenceEvaluator::with_range(PollardParams::one(0.5)?, cfg, 40.0)?;
    let three = ReferenceEvaluator::with_range(PollardParams::new(0.5, 1.2, 1.5)?, cfg, 40.0)?;
    let mut cases = Vec::new();
    let label = |r: ValidationReport, name: f64| -> Vec<mlcm_core::verify::CaseRecord> {
        r.cases
            .into_iter()
            .map(|mut c| {
                c.inputs.insert("identity".into(), name);
                c
            })
            .collect()
    };
    let r = check_laplace_identity(|x| Ok((-x).exp()), |s| Ok(1.0 / (1.0 + s)), &s_grid, tol)?;
    cases.extend(label(r, 0.0));
    let r = check_laplace_identity(
        |x| Ok(half.eval(x.sqrt())?.0),
        |s: f64| Ok(s.powf(-0.5) / (1.0 + s.sqrt())),
        &s_grid,
        tol,
    )?;
    cases.extend(label(r, 1.0));
    let r = check_laplace_identity(
        |x| Ok(x.powf(0.2) * three.eval(x.sqrt())?.0),
        |s: f64| Ok(s.powf(0.75 - 1.2) / (1.0 + s.sqrt()).powf(1.5)),
        &s_grid,
        tol,
    )?;
    cases.extend(label(r, 2.0));
    Ok(ValidationReport::from_cases(
        "laplace_identity",
        "relative",
        tol,
        cases,
        Vec::new(),
    ))
}

fn limit_table(report: &ValidationReport, format: Format, full: bool) -> String {
    let sep = if format == Format::Csv { "," } else { " " };
    let mut s = if format == Format::Csv {
        "mu,n,value,error\n".to_string()
    } else {
        String::new()
    };
    for c in &report.cases {
        let value = c.values[0]
            .value
            .map_or("nan".to_string(), |v| output::number(v, full));
        let error = c
            .max_discrepancy
            .map_or("nan".to_string(), |d| output::error_estimate(d, full));
        s.push_str(
            &[
                output::number(c.inputs["mu"], full),
                format!("{}", c.inputs["n"]),
                value,
                error,
            ]
            .join(sep),
        );
        s.push('\n');
    }
    if format == Format::Plain {
        if let Some(target) = report.cases.first().and_then(|c| c.values[1].value) {
            s.push_str(&format!(
                "reference {} ({})\n",
                output::number(target, full),
                report.reference.as_deref().unwrap_or("")
            ));
        }
        for c in &report.checks {
            s.push_str(&format!(
                "{}: {} {}\n",
                c.name,
                output::error_estimate(c.value, full),
                if c.passed { "ok" } else { "FAIL" }
            ));
        }
    }
    s
}
