//! Double-double arithmetic built from error-free transformations.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`, giving
//! roughly 32 significant decimal digits.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const LN2: Self = Self {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_56e-17,
    };
    pub const PI: Self = Self {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_21e-16,
    };
    pub const HALF_LN_2PI: Self = Self {
        hi: 9.189_385_332_046_727_81e-1,
        lo: -3.878_294_158_067_241_45e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Self { hi, lo }
    }

    /// Multiplies by `2^k` exactly (barring underflow).
    pub fn ldexp(self, k: i32) -> Self {
        let scale = |x: f64| {
            let mut x = x;
            let mut k = k;
            while k > 1000 {
                x *= 2f64.powi(1000);
                k -= 1000;
            }
            while k < -1000 {
                x *= 2f64.powi(-1000);
                k += 1000;
            }
            x * 2f64.powi(k)
        };
        Self {
            hi: scale(self.hi),
            lo: scale(self.lo),
        }
    }

    #[inline]
    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.hi == 0.0 {
            return Self::ONE;
        }
        let k = (self.hi / Self::LN2.hi).round();
        let r = (self - Self::LN2.mul_f64(k)).ldexp(-10);
        // exp(r) - 1 by Taylor series, then undo the 2^-10 scaling by squaring.
        let mut s = r;
        let mut p = r;
        let mut i = 2.0;
        loop {
            p = (p * r).div_f64(i);
            s = s + p;
            if p.hi.abs() < 1e-34 * s.hi.abs().max(1e-300) || i > 20.0 {
                break;
            }
            i += 1.0;
        }
        for _ in 0..10 {
            s = s.mul_f64(2.0) + s.sqr();
        }
        (s + Self::ONE).ldexp(k as i32)
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p1, p2) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p1);
        let q2 = (s + (e - p2 + self.lo)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }
    }

    pub fn ln(self) -> Self {
        if self.hi.is_nan() || self.hi <= 0.0 {
            return Self::from_f64(f64::NAN);
        }
        if self.hi.is_infinite() {
            return self;
        }
        let x = Self::from_f64(self.hi.ln());
        x + self * (-x).exp() - Self::ONE
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p1, p2 + (self.hi * b.lo + self.lo * b.hi));
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }.add_f64(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(got: DoubleDouble, hi: f64, lo: f64) -> f64 {
        (got - DoubleDouble::new(hi, lo)).to_f64().abs() / hi.abs()
    }

    #[test]
    fn exp_frozen_values() {
        let cases = [
            (2.5, 1.218_249_396_070_347_3e1, 2.033_400_217_334_814_7e-16),
            (
                -30.7,
                4.646_858_044_746_973e-14,
                -1.792_947_852_331_202_6e-30,
            ),
            (0.001, 1.001_000_500_166_708_4, -4.290_842_058_948_394e-17),
            (
                700.0,
                1.014_232_054_735_004_5e304,
                1.666_657_192_073_467_3e287,
            ),
        ];
        for (x, hi, lo) in cases {
            let e = close(DoubleDouble::from_f64(x).exp(), hi, lo);
            assert!(e < 4e-32 * x.abs().max(25.0), "exp({x}): {e:e}");
        }
    }

    #[test]
    fn ln_frozen_values() {
        let cases = [
            (2.5, 9.162_907_318_741_551e-1, -4.141_195_369_011_963e-17),
            (30.7, 3.424_262_654_593_151_4, 6.825_622_913_736_639e-17),
            (0.001, -6.907_755_278_982_137, -2.161_348_709_737_287_2e-16),
            (700.0, 6.551_080_335_043_404, 3.052_184_321_776_931e-16),
        ];
        for (x, hi, lo) in cases {
            let e = close(DoubleDouble::from_f64(x).ln(), hi, lo);
            assert!(e < 1e-30, "ln({x}): {e:e}");
        }
    }

    #[test]
    fn division_round_trips() {
        let a = DoubleDouble::new(1.0, 1e-20);
        let b = DoubleDouble::from_f64(3.0);
        let r = (a / b) * b - a;
        assert!(r.to_f64().abs() < 1e-31);
    }
}
