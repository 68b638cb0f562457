//! Gamma function in double and double-double precision.

use crate::numerics::DoubleDouble;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(x: f64) -> f64 {
    // x >= 0.5; evaluated at x - 1 as in the usual presentation.
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// `sin(pi x)` with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x % 2.0;
    let r = if r > 1.0 {
        r - 2.0
    } else if r < -1.0 {
        r + 2.0
    } else {
        r
    };
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0 * r.signum();
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// The gamma function. Poles return `NaN`; overflow returns `+inf`.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    if x == x.floor() && x <= 23.0 {
        let mut f = 1.0;
        for k in 2..(x as u32) {
            f *= k as f64;
        }
        return f;
    }
    let t = x + LANCZOS_G - 0.5;
    let half = t.powf(0.5 * (x - 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(x)
}

/// `ln |Gamma(x)|`.
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return (PI / sin_pi(x).abs()).ln() - ln_gamma(1.0 - x);
    }
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if (x - 1.0).abs() < 0.25 || (x - 2.0).abs() < 0.25 || x < 15.0 {
        return gamma(x).ln();
    }
    let t = x + LANCZOS_G - 0.5;
    HALF_LN_2PI + (x - 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// `1 / Gamma(x)`, which is entire: zero at the poles of gamma.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 171.7 {
        return (-ln_gamma(x)).exp();
    }
    1.0 / gamma(x)
}

const STIRLING: [DoubleDouble; 15] = [
    DoubleDouble {
        hi: 0.08333333333333333,
        lo: 4.625929269271485e-18,
    },
    DoubleDouble {
        hi: -0.002777777777777778,
        lo: 1.0601087908747154e-19,
    },
    DoubleDouble {
        hi: 0.0007936507936507937,
        lo: 6.883823317368282e-22,
    },
    DoubleDouble {
        hi: -0.0005952380952380953,
        lo: 5.36938218754726e-20,
    },
    DoubleDouble {
        hi: 0.0008417508417508417,
        lo: 3.6870174889237694e-20,
    },
    DoubleDouble {
        hi: -0.0019175269175269176,
        lo: 1.0675702776872475e-19,
    },
    DoubleDouble {
        hi: 0.00641025641025641,
        lo: 2.2240044563805217e-19,
    },
    DoubleDouble {
        hi: -0.029550653594771242,
        lo: 4.861760957508855e-19,
    },
    DoubleDouble {
        hi: 0.17964437236883057,
        lo: -6.401600482710946e-19,
    },
    DoubleDouble {
        hi: -1.3924322169059011,
        lo: 1.5837056989230303e-17,
    },
    DoubleDouble {
        hi: 13.402864044168393,
        lo: -6.154114101993966e-16,
    },
    DoubleDouble {
        hi: -156.84828462600203,
        lo: 9.391823141715389e-15,
    },
    DoubleDouble {
        hi: 2193.1033333333335,
        lo: -1.3339255626002948e-13,
    },
    DoubleDouble {
        hi: -36108.77125372499,
        lo: 5.897583353514365e-13,
    },
    DoubleDouble {
        hi: 691472.268851313,
        lo: 2.5585296305158e-11,
    },
];
const STIRLING_SHIFT: f64 = 25.0;

/// `ln Gamma(z)` for `z > 0` in double-double precision.
pub fn ln_gamma_dd(z: DoubleDouble) -> DoubleDouble {
    debug_assert!(z.hi > 0.0);
    let mut w = z;
    let mut product = DoubleDouble::ONE;
    while w.hi < STIRLING_SHIFT {
        product = product * w;
        w = w.add_f64(1.0);
    }
    let inv = DoubleDouble::ONE / w;
    let inv2 = inv.sqr();
    let mut series = DoubleDouble::ZERO;
    for c in STIRLING.iter().rev() {
        series = series * inv2 + *c;
    }
    let series = series * inv;
    let ln_w = w.ln();
    let main = w.add_f64(-0.5) * ln_w - w + DoubleDouble::HALF_LN_2PI + series;
    if product == DoubleDouble::ONE {
        main
    } else {
        main - product.ln()
    }
}
