//! Gamma functions (real and complex) and a small double-double type used by
//! the terminating hypergeometric series.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

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
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// ln|Γ(x)| for real x that is not a non-positive integer.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let s = (PI * x).sin().abs();
        return PI.ln() - s.ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Γ(x) for real x, with sign.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() && x <= 0.0 {
        return f64::NAN;
    }
    if x > 0.0 && x < 20.0 && x == x.floor() {
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return p;
    }
    let mag = ln_gamma(x).exp();
    if x > 0.0 || (x.floor() as i64).rem_euclid(2) == 0 {
        mag
    } else {
        -mag
    }
}

/// Principal-branch-free complex log-Gamma; only the real part is branch independent,
/// which is all the weight functions need (|Γ(z)| = exp(Re lnΓ(z))).
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        let s = (pi * z).sin();
        return pi.ln() - s.ln() - ln_gamma_complex(Complex64::new(1.0, 0.0) - z);
    }
    let zm = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += *c / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (zm + 0.5) * t.ln() - t + acc.ln()
}

/// ln|Γ(x + iy)|.
pub fn ln_abs_gamma_complex(x: f64, y: f64) -> f64 {
    if y == 0.0 {
        return ln_gamma(x);
    }
    ln_gamma_complex(Complex64::new(x, y)).re
}

/// Pochhammer symbol (a)_k for small integer k.
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |p, j| p * (a + j as f64))
}

/// ln sinh(y) for y > 0 without overflow.
pub fn ln_sinh(y: f64) -> f64 {
    if y > 20.0 {
        y - std::f64::consts::LN_2 + (-(-2.0 * y).exp()).ln_1p()
    } else {
        y.sinh().ln()
    }
}

/// Unevaluated sum hi + lo carrying roughly 32 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex number over [`Dd`], enough for the Pollaczek hypergeometric sum.
#[derive(Clone, Copy, Debug)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn new(re: Dd, im: Dd) -> Self {
        CDd { re, im }
    }

    pub fn from_c64(z: Complex64) -> Self {
        CDd::new(Dd::new(z.re), Dd::new(z.im))
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, s: Dd) -> Self {
        CDd::new(self.re * s, self.im * s)
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, o: CDd) -> CDd {
        CDd::new(self.re + o.re, self.im + o.im)
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, o: CDd) -> CDd {
        CDd::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_at_integers_and_half() {
        assert_eq!(gamma(5.0), 24.0);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!((ln_gamma(100.0) - 359.134_205_369_575_4).abs() < 1e-11);
    }

    #[test]
    fn complex_gamma_modulus_identity() {
        // |Γ(1+ix)|² = πx / sinh(πx)
        for &x in &[0.1, 0.7, 1.3, 4.0, 11.0, 30.0] {
            let lhs = 2.0 * ln_abs_gamma_complex(1.0, x);
            let rhs = (PI * x).ln() - ln_sinh(PI * x);
            assert!((lhs - rhs).abs() < 1e-13 * rhs.abs().max(1.0), "x={x}");
        }
        // |Γ(½+ix)|² = π / cosh(πx)
        for &x in &[0.2, 2.5, 9.0] {
            let lhs = 2.0 * ln_abs_gamma_complex(0.5, x);
            let rhs = PI.ln() - (PI * x).cosh().ln();
            assert!((lhs - rhs).abs() < 1e-13 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn complex_agrees_with_real_on_axis() {
        for &x in &[0.3, 1.0, 2.5, 17.2] {
            let c = ln_gamma_complex(Complex64::new(x, 0.0)).re;
            assert!((c - ln_gamma(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn dd_arithmetic_keeps_extra_digits() {
        let third = Dd::ONE / Dd::new(3.0);
        let back = third * Dd::new(3.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-30);
        let big = Dd::new(1e16) + Dd::new(1.0) - Dd::new(1e16);
        assert_eq!(big.to_f64(), 1.0);
    }
}
