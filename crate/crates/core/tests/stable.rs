use mlcm_core::numerics::{try_exp_sinh, try_tanh_sinh, QuadratureConfig};
use mlcm_core::stable::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn laplace(law: &StableLaw, t: f64, s: f64) -> f64 {
    let scaled = ScaledStable::new(StableIndex::new(law.alpha()).unwrap(), t).unwrap();
    let cfg = QuadratureConfig::new(1e-300, 1e-12).unwrap();
    let g = |x: f64| Ok((-s * x).exp() * scaled.density_with(law, x)?);
    let head = try_tanh_sinh(|p| g(p.x), 0.0, 1.0, &cfg).unwrap();
    let tail = try_exp_sinh(|p| g(p.x), 1.0, 1.0 / s, &cfg).unwrap();
    head.value + tail.value
}

#[test]
fn laplace_transform_is_stretched_exponential() {
    for a in [0.3, 0.5, 0.7] {
        let law = StableLaw::new(StableIndex::new(a).unwrap());
        for s in [0.5f64, 1.0, 2.0] {
            let want = (-s.powf(a)).exp();
            let got = laplace(&law, 1.0, s);
            assert!(
                (got - want).abs() <= 1e-9 * want,
                "alpha {a} s {s}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn scale_enters_the_exponent() {
    let law = StableLaw::new(StableIndex::new(0.6).unwrap());
    for t in [0.25, 0.5, 2.0, 3.0] {
        let want = (-t * 1.5f64.powf(0.6)).exp();
        let got = laplace(&law, t, 1.5);
        assert!((got - want).abs() <= 1e-9 * want, "t {t}");
    }
}

#[test]
fn levy_density_and_distribution() {
    let law = StableLaw::new(StableIndex::new(0.5).unwrap());
    // erfc(1 / (2 sqrt x)) at 40 digits.
    let cdf = [
        (0.1f64, 0.025_347_318_677_468_263_932),
        (0.25, 0.157_299_207_050_285_130_66),
        (0.5, 0.317_310_507_862_914_102_83),
        (1.0, 0.479_500_122_186_953_462_32),
        (2.0, 0.617_075_077_451_973_792_72),
        (3.0, 0.683_091_398_309_608_703_32),
        (5.0, 0.751_829_634_045_849_282_49),
    ];
    for (x, want) in cdf {
        let levy = x.powf(-1.5) * (-0.25 / x).exp() / (2.0 * PI.sqrt());
        assert!(
            (law.density(x).unwrap() - levy).abs() <= 1e-12,
            "density at {x}"
        );
        assert!((law.cdf(x).unwrap() - want).abs() <= 1e-12, "cdf at {x}");
        assert!(
            (law.survival(x).unwrap() - (1.0 - want)).abs() <= 1e-12,
            "survival at {x}"
        );
    }
}

#[test]
fn scaled_levy_density() {
    let a = StableIndex::new(0.5).unwrap();
    let got = stable_density_scaled(ScaledStable::new(a, 4.0).unwrap(), 2.0).unwrap();
    assert!((got - 0.053_990_966_513_188_052).abs() <= 1e-14);
}

#[test]
fn tilted_density_integrates_to_one() {
    let cfg = QuadratureConfig::new(1e-300, 1e-12).unwrap();
    for (a, theta) in [(0.5, 0.5), (0.5, -0.25), (0.3, -0.2), (0.7, 1.5)] {
        let tp = TiltParams::new(StableIndex::new(a).unwrap(), theta).unwrap();
        let law = StableLaw::new(tp.alpha);
        let g = |x: f64| tp.density_with(&law, x, 1.0);
        let head = try_tanh_sinh(|p| g(p.x), 0.0, 1.0, &cfg).unwrap();
        let tail = try_exp_sinh(|p| g(p.x), 1.0, 1.0, &cfg).unwrap();
        let mass = head.value + tail.value;
        assert!((mass - 1.0).abs() < 1e-8, "({a}, {theta}): {mass}");
    }
    assert!(TiltParams::new(StableIndex::new(0.5).unwrap(), -0.5).is_err());
}

#[test]
fn invalid_arguments_are_rejected() {
    let a = StableIndex::new(0.5).unwrap();
    assert!(stable_density(a, -1.0).is_err());
    assert!(stable_cdf(a, f64::NAN).is_err());
    assert!(ScaledStable::new(a, 0.0).is_err());
    assert!(stable_density(a, 0.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cdf_is_monotone_and_bounded(a in 0.1f64..0.95, x in 0.01f64..50.0, dx in 0.01f64..5.0) {
        let law = StableLaw::new(StableIndex::new(a).unwrap());
        let lo = law.cdf(x).unwrap();
        let hi = law.cdf(x + dx).unwrap();
        prop_assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        prop_assert!(hi >= lo - 1e-14);
        prop_assert!(law.density(x).unwrap() >= 0.0);
    }

    #[test]
    fn scaling_relation(a in 0.2f64..0.9, x in 0.05f64..10.0, t in 0.1f64..10.0) {
        let alpha = StableIndex::new(a).unwrap();
        let k = t.powf(-1.0 / a);
        let direct = stable_density_scaled(ScaledStable::new(alpha, t).unwrap(), x).unwrap();
        let base = stable_density(alpha, x * k).unwrap() * k;
        prop_assert!((direct - base).abs() <= 1e-14 * base.abs().max(1e-300));
    }
}
