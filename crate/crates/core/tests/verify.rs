use mlcm_core::mittag_leffler::{ml_series, MLParams};
use mlcm_core::pollard::{marginal_density, ml_via_pollard, GammaPrior, PollardParams};
use mlcm_core::spectral::ml_via_spectral;
use mlcm_core::stable::StableIndex;
use mlcm_core::verify::*;
use mlcm_core::QuadratureConfig;
use proptest::prelude::*;

fn series_route(p: PollardParams, lambda: f64) -> Route<'static> {
    let q = p.ml_params();
    let a = p.alpha.value();
    Route::new("series", move |x: f64| ml_series(&q, -lambda * x.powf(a)))
}

fn pollard_route(p: PollardParams, lambda: f64) -> Route<'static> {
    Route::new("pollard", move |x: f64| ml_via_pollard(&p, lambda, x))
}

#[test]
fn exponential_certificate_at_machine_tolerance() {
    let grid = uniform_grid(0.1, 0.125, 81);
    let c = check_complete_monotonicity(|x| Ok((-x).exp()), &grid, 8, 0.0).unwrap();
    assert!(c.passed());
    assert_eq!(c.tableau.len(), 9);
}

#[test]
fn cosine_is_not_completely_monotone() {
    let grid = uniform_grid(0.05, 0.1, 100);
    let c = check_complete_monotonicity(|x| Ok(x.cos()), &grid, 4, 1e-12).unwrap();
    assert!(!c.violations.is_empty());
    assert!(c.tableau[1].violations > 0);
}

#[test]
fn three_parameter_function_is_certified() {
    let grid = uniform_grid(0.1, 0.125, 81);
    let p = PollardParams::new(0.5, 1.2, 1.5).unwrap();
    let c = composition_check(p, 1.0, 1.0, &grid, 8, 1e-7).unwrap();
    assert!(c.passed(), "{:?}", c.violations);
}

#[test]
fn bernstein_compositions_are_certified() {
    let grid = uniform_grid(0.1, 0.125, 81);
    let p = PollardParams::one(0.5).unwrap();
    let c = bernstein_composition_check(p, 1.0, StableIndex::new(0.5).unwrap(), &grid, 8, 1e-7)
        .unwrap();
    assert!(c.passed());
    let p = PollardParams::new(0.5, 1.2, 1.5).unwrap();
    let c = bernstein_composition_check(p, 2.0, StableIndex::new(0.7).unwrap(), &grid, 8, 1e-6)
        .unwrap();
    assert!(c.passed());
    assert!(composition_check(p, 1.0, 1.5, &grid, 8, 1e-6).is_err());
}

#[test]
fn series_and_pollard_agree() {
    let p = PollardParams::one(0.5).unwrap();
    let grid = uniform_grid(0.0, 0.5, 11);
    let r = cross_validate(&[series_route(p, 1.0), pollard_route(p, 1.0)], &grid, 1e-6).unwrap();
    assert!(r.passed, "{:?}", r.worst());
}

#[test]
fn three_routes_agree() {
    let p = PollardParams::new(0.5, 1.2, 1.5).unwrap();
    let b = p.beta;
    let spectral = Route::new("spectral", move |x: f64| {
        Ok(ml_via_spectral(&p, 1.0, x)? * x.powf(1.0 - b))
    });
    let grid = uniform_grid(0.25, 0.25, 12);
    let r = cross_validate(
        &[series_route(p, 1.0), spectral, pollard_route(p, 1.0)],
        &grid,
        1e-5,
    )
    .unwrap();
    assert!(r.passed, "{:?}", r.worst());
    assert_eq!(r.cases.len(), 12);
}

#[test]
fn injected_error_is_detected() {
    let p = PollardParams::one(0.5).unwrap();
    let q = p.ml_params();
    let corrupted = Route::new("corrupted", move |x: f64| {
        Ok(ml_series(&q, -x.sqrt())? + 1e-3 * x)
    });
    let grid = uniform_grid(0.0, 0.5, 11);
    let r = cross_validate(&[series_route(p, 1.0), corrupted], &grid, 1e-5).unwrap();
    assert!(!r.passed);
    let worst = r.worst().unwrap();
    assert_eq!(worst.inputs["x"], 5.0);
    assert!(cross_validate(&[series_route(p, 1.0)], &grid, 1e-5).is_err());
}

#[test]
fn failing_route_is_recorded_and_suite_continues() {
    let routes = [
        Route::new("ok", |x: f64| Ok(x)),
        Route::new("fails", |x: f64| {
            if x > 1.0 {
                ml_series(&MLParams::one(0.5).unwrap(), -100.0)
            } else {
                Ok(x)
            }
        }),
    ];
    let r = cross_validate(&routes, &uniform_grid(0.0, 0.5, 5), 1e-12).unwrap();
    assert!(!r.passed);
    assert_eq!(r.cases.iter().filter(|c| c.passed).count(), 3);
    assert!(r.cases[4].values[1].error.is_some());
}

#[test]
fn reports_are_deterministic() {
    let p = PollardParams::new(0.7, 1.5, 1.8).unwrap();
    let grid = uniform_grid(0.0, 0.5, 7);
    let a = cross_validate(&[series_route(p, 1.0), pollard_route(p, 1.0)], &grid, 1e-6).unwrap();
    let b = cross_validate(&[series_route(p, 1.0), pollard_route(p, 1.0)], &grid, 1e-6).unwrap();
    assert_eq!(a, b);
}

#[test]
fn laplace_identities() {
    let r = check_laplace_identity(
        |x| Ok((-x).exp()),
        |s| Ok(1.0 / (1.0 + s)),
        &[0.5, 1.0, 3.0],
        1e-13,
    )
    .unwrap();
    assert!(r.passed, "{:?}", r.worst());

    let p = PollardParams::one(0.5).unwrap();
    let f = ReferenceEvaluator::with_range(p, QuadratureConfig::default(), 40.0).unwrap();
    let r = check_laplace_identity(
        |x| Ok(f.eval(x.sqrt())?.0),
        |s: f64| Ok(s.powf(-0.5) / (1.0 + s.sqrt())),
        &[1.0, 2.0, 4.0],
        1e-6,
    )
    .unwrap();
    assert!(r.passed, "{:?}", r.worst());

    let p = PollardParams::new(0.5, 1.2, 1.5).unwrap();
    let f = ReferenceEvaluator::with_range(p, QuadratureConfig::default(), 40.0).unwrap();
    let r = check_laplace_identity(
        |x| Ok(x.powf(0.2) * f.eval(x.sqrt())?.0),
        |s: f64| Ok(s.powf(0.75 - 1.2) / (1.0 + s.sqrt()).powf(1.5)),
        &[1.0, 2.0, 4.0],
        1e-5,
    )
    .unwrap();
    assert!(r.passed, "{:?}", r.worst());
}

#[test]
fn reference_switches_to_pollard_under_cancellation() {
    let p = PollardParams::new(0.5, 1.2, 1.5).unwrap();
    let r = ReferenceEvaluator::new(p, QuadratureConfig::default());
    assert_eq!(r.eval(1.0).unwrap().1, Source::Series);
    let (v, source) = r.eval(10.0).unwrap();
    assert_eq!(source, Source::Pollard);
    assert!((v - 0.016_131_451_892_730_875_76).abs() < 1e-10);
}

#[test]
fn limit_report_structure() {
    let p = PollardParams::one(0.5).unwrap();
    let r = limit_convergence_report(p, 1.0, 1.0, &[1.0], &[1, 4]).unwrap();
    assert_eq!(r.cases.len(), 2);
    assert_eq!(r.reference.as_deref(), Some("series"));
    let first = r.cases[0].values[0].value.unwrap();
    let marginal = marginal_density(&p, &GammaPrior::new(1.0, 1.0).unwrap(), 1.0).unwrap();
    assert_eq!(first, marginal);
    let shrink = r
        .checks
        .iter()
        .find(|c| c.name.starts_with("error ratio"))
        .unwrap();
    assert!(shrink.passed);
}

proptest! {
    #[test]
    fn exponentials_are_never_flagged(c in 0.1f64..5.0, h in 0.05f64..0.5, x0 in 0.0f64..2.0) {
        let grid = uniform_grid(x0, h, 40);
        let cert = check_complete_monotonicity(|x| Ok((-c * x).exp()), &grid, 8, 1e-13).unwrap();
        prop_assert!(cert.passed());
    }

    #[test]
    fn affine_perturbations_fail_validation(eps in 2e-5f64..1e-2) {
        let routes = [Route::new("f", |x: f64| Ok((-x).exp())), Route::new("g", move |x: f64| Ok((-x).exp() + eps * x))];
        let r = cross_validate(&routes, &uniform_grid(0.0, 0.5, 11), 1e-5).unwrap();
        prop_assert!(!r.passed);
    }
}
