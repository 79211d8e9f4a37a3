//! The four polynomial families behind the tridiagonal solutions: Laguerre,
//! Jacobi, Pollaczek and continuous dual Hahn.
//!
//! Pollaczek convention: the recurrence is
//! `(n+1) P_{n+1} = 2[(n+ν+a-1)x + b] P_n - (n+2ν-1) P_{n-1}`,
//! the form that makes the Coulomb/oscillator/Morse coefficient formulas
//! satisfy their three-term recursions. In this convention the hypergeometric
//! form and the weight use φ = ((a-1)x + b)/√(1-x²), and the norm is
//! 2πΓ(n+2ν) / (2^{2ν} (n+ν+a-1) n!).
//!
//! Continuous dual Hahn polynomials are the normalized ₃F₂, evaluated at the
//! argument t = x² (which may be negative when fed by physical parameters).

use crate::error::{domain, param, Error, Result};
use crate::quad::{self, Tolerance};
use crate::special::{ln_abs_gamma_complex, ln_gamma, ln_sinh, CDd, Dd};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PolyFamily {
    Laguerre { nu: f64 },
    Jacobi { mu: f64, nu: f64 },
    Pollaczek { nu: f64, a: f64, b: f64 },
    ContinuousDualHahn { a: f64, b: f64, c: f64 },
}

impl PolyFamily {
    /// Parameter invariants needed for evaluation.
    pub fn validate(&self) -> Result<()> {
        let all_finite = match *self {
            PolyFamily::Laguerre { nu } => nu.is_finite(),
            PolyFamily::Jacobi { mu, nu } => mu.is_finite() && nu.is_finite(),
            PolyFamily::Pollaczek { nu, a, b } => nu.is_finite() && a.is_finite() && b.is_finite(),
            PolyFamily::ContinuousDualHahn { a, b, c } => {
                a.is_finite() && b.is_finite() && c.is_finite()
            }
        };
        if !all_finite {
            return param(format!("{self:?}: parameters must be finite"));
        }
        match *self {
            PolyFamily::Laguerre { nu } if nu <= -1.0 => param(format!("Laguerre needs ν > -1, got {nu}")),
            PolyFamily::Jacobi { mu, nu } if mu <= -1.0 || nu <= -1.0 => {
                param(format!("Jacobi needs μ > -1 and ν > -1, got μ={mu}, ν={nu}"))
            }
            PolyFamily::Pollaczek { nu, .. } if nu <= 0.0 => param(format!("Pollaczek needs ν > 0, got {nu}")),
            PolyFamily::ContinuousDualHahn { a, b, c } if a + b <= 0.0 || a + c <= 0.0 => param(format!(
                "continuous dual Hahn needs a+b > 0 and a+c > 0, got a={a}, b={b}, c={c}"
            )),
            _ => Ok(()),
        }
    }

    /// Extra conditions under which the weight is a positive integrable density.
    pub fn validate_weight(&self) -> Result<()> {
        self.validate()?;
        match *self {
            PolyFamily::Pollaczek { a, b, .. } if a - 1.0 < b.abs() => param(format!(
                "Pollaczek weight needs a-1 ≥ |b|, got a={a}, b={b}"
            )),
            PolyFamily::ContinuousDualHahn { a, b, c } if a <= 0.0 || b <= 0.0 || c <= 0.0 => param(
                format!("continuous dual Hahn weight needs a, b, c > 0, got a={a}, b={b}, c={c}"),
            ),
            _ => Ok(()),
        }
    }

    /// Squared norm h_n = ∫ w P_n² over the support.
    pub fn norm(&self, n: usize) -> Result<f64> {
        Ok(self.ln_norm(n)?.exp())
    }

    pub fn ln_norm(&self, n: usize) -> Result<f64> {
        self.validate_weight()?;
        let nf = n as f64;
        Ok(match *self {
            PolyFamily::Laguerre { nu } => ln_gamma(nf + nu + 1.0) - ln_gamma(nf + 1.0),
            PolyFamily::Jacobi { mu, nu } => {
                let s = mu + nu;
                (s + 1.0) * std::f64::consts::LN_2 - (2.0 * nf + s + 1.0).ln()
                    + ln_gamma(nf + mu + 1.0)
                    + ln_gamma(nf + nu + 1.0)
                    - ln_gamma(nf + 1.0)
                    - ln_gamma(nf + s + 1.0)
            }
            PolyFamily::Pollaczek { nu, a, .. } => {
                (2.0 * PI).ln() + ln_gamma(nf + 2.0 * nu)
                    - 2.0 * nu * std::f64::consts::LN_2
                    - (nf + nu + a - 1.0).ln()
                    - ln_gamma(nf + 1.0)
            }
            PolyFamily::ContinuousDualHahn { a, b, c } => {
                ln_gamma(nf + 1.0) + ln_gamma(nf + b + c) - ln_gamma(nf + a + b) - ln_gamma(nf + a + c)
            }
        })
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        domain(format!("polynomial argument must be finite, got {x}"))
    }
}

/// P_0(x), ..., P_{n_max}(x) by upward recurrence from P_{-1} = 0, P_0 = 1.
///
/// Polynomials are entire, so any finite x is accepted; the family's support
/// only matters for [`weight`]. For the dual Hahn family `x` is the argument t = x².
pub fn eval_all(family: &PolyFamily, n_max: usize, x: f64) -> Result<Vec<f64>> {
    family.validate()?;
    check_arg(x)?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(cur);
    for k in 0..n_max {
        let kf = k as f64;
        let next = match *family {
            PolyFamily::Laguerre { nu } => ((2.0 * kf + nu + 1.0 - x) * cur - (kf + nu) * prev) / (kf + 1.0),
            PolyFamily::Jacobi { mu, nu } => {
                if k == 0 {
                    0.5 * ((mu + nu + 2.0) * x + mu - nu)
                } else {
                    let s = mu + nu;
                    let two = 2.0 * kf + s;
                    let lead = 2.0 * (kf + 1.0) * (kf + s + 1.0) * two;
                    ((two + 1.0) * ((two + 2.0) * two * x + mu * mu - nu * nu) * cur
                        - 2.0 * (kf + mu) * (kf + nu) * (two + 2.0) * prev)
                        / lead
                }
            }
            PolyFamily::Pollaczek { nu, a, b } => {
                (2.0 * ((kf + nu + a - 1.0) * x + b) * cur - (kf + 2.0 * nu - 1.0) * prev) / (kf + 1.0)
            }
            PolyFamily::ContinuousDualHahn { a, b, c } => {
                let up = (kf + a + b) * (kf + a + c);
                let down = kf * (kf + b + c - 1.0);
                ((up + down - a * a - x) * cur - down * prev) / up
            }
        };
        prev = cur;
        cur = next;
        out.push(cur);
    }
    Ok(out)
}

/// P_n(x) by the three-term recurrence.
pub fn eval_recursive(family: &PolyFamily, n: usize, x: f64) -> Result<f64> {
    Ok(*eval_all(family, n, x)?.last().expect("n+1 values"))
}

/// P_n(x) from the terminating hypergeometric series, summed in double-double
/// arithmetic so that the alternating terms do not destroy the result.
pub fn eval_hypergeometric(family: &PolyFamily, n: usize, x: f64) -> Result<f64> {
    family.validate()?;
    check_arg(x)?;
    let nf = n as f64;
    let kdd = |k: usize| Dd::new(k as f64);
    match *family {
        PolyFamily::Laguerre { nu } => {
            // Γ(n+ν+1)/(n!Γ(ν+1)) ₁F₁(-n; ν+1; x)
            let pref: f64 = (1..=n).map(|j| (nu + j as f64) / j as f64).product();
            let xd = Dd::new(x);
            let mut term = Dd::ONE;
            let mut sum = Dd::ONE;
            for k in 0..n {
                let num = (kdd(k) - Dd::new(nf)) * xd;
                let den = (kdd(k) + Dd::new(nu) + Dd::ONE) * (kdd(k) + Dd::ONE);
                term = term * num / den;
                sum = sum + term;
            }
            Ok(pref * sum.to_f64())
        }
        PolyFamily::Jacobi { mu, nu } => {
            // Γ(n+μ+1)/(n!Γ(μ+1)) ₂F₁(-n, n+μ+ν+1; μ+1; (1-x)/2)
            let pref: f64 = (1..=n).map(|j| (mu + j as f64) / j as f64).product();
            let z = (Dd::ONE - Dd::new(x)) * Dd::new(0.5);
            let mut term = Dd::ONE;
            let mut sum = Dd::ONE;
            for k in 0..n {
                let num = (kdd(k) - Dd::new(nf)) * (kdd(k) + Dd::new(nf) + Dd::new(mu) + Dd::new(nu) + Dd::ONE);
                let den = (kdd(k) + Dd::new(mu) + Dd::ONE) * (kdd(k) + Dd::ONE);
                term = term * num / den * z;
                sum = sum + term;
            }
            Ok(pref * sum.to_f64())
        }
        PolyFamily::Pollaczek { nu, a, b } => {
            if !(-1.0 < x && x < 1.0) {
                return domain(format!(
                    "Pollaczek hypergeometric form needs -1 < x < 1 (x = cos θ), got {x}"
                ));
            }
            // Γ(n+2ν)/(n!Γ(2ν)) e^{inθ} ₂F₁(-n, ν+iφ; 2ν; 1-e^{-2iθ})
            let theta = x.acos();
            let one_minus_x2 = Dd::ONE - Dd::new(x) * Dd::new(x);
            let sin_t = one_minus_x2.to_f64().sqrt();
            let phi = ((a - 1.0) * x + b) / sin_t;
            // 1 - e^{-2iθ} = 2 sin θ (sin θ + i cos θ)
            let z = CDd::new(one_minus_x2 * Dd::new(2.0), Dd::new(2.0) * Dd::new(x) * Dd::new(sin_t));
            let pref: f64 = (0..n).map(|j| (2.0 * nu + j as f64) / (j as f64 + 1.0)).product();
            let mut term = CDd::new(Dd::ONE, Dd::ZERO);
            let mut sum = term;
            for k in 0..n {
                let num = CDd::new(Dd::new(nu) + kdd(k), Dd::new(phi)).scale(kdd(k) - Dd::new(nf));
                let den = (Dd::new(2.0 * nu) + kdd(k)) * (kdd(k) + Dd::ONE);
                term = (term * num * z).scale(Dd::ONE / den);
                sum = sum + term;
            }
            let rot = Complex64::from_polar(1.0, nf * theta);
            Ok(pref * (rot * sum.to_c64()).re)
        }
        PolyFamily::ContinuousDualHahn { a, b, c } => {
            // ₃F₂(-n, a+ix, a-ix; a+b, a+c; 1) with (a+ix)_k(a-ix)_k = Π((a+j)² + t)
            let mut term = Dd::ONE;
            let mut sum = Dd::ONE;
            for k in 0..n {
                let ak = Dd::new(a) + kdd(k);
                let num = (kdd(k) - Dd::new(nf)) * (ak * ak + Dd::new(x));
                let den = (Dd::new(a + b) + kdd(k)) * (Dd::new(a + c) + kdd(k)) * (kdd(k) + Dd::ONE);
                term = term * num / den;
                sum = sum + term;
            }
            Ok(sum.to_f64())
        }
    }
}

/// ln of the weight density at x; `None` where the density vanishes.
pub fn ln_weight(family: &PolyFamily, x: f64) -> Result<Option<f64>> {
    family.validate_weight()?;
    check_arg(x)?;
    match *family {
        PolyFamily::Laguerre { nu } => {
            if x < 0.0 {
                return domain(format!("Laguerre weight support is x ≥ 0, got {x}"));
            }
            if x == 0.0 {
                return Ok(if nu == 0.0 { Some(0.0) } else if nu > 0.0 { None } else { Some(f64::INFINITY) });
            }
            Ok(Some(nu * x.ln() - x))
        }
        PolyFamily::Jacobi { mu, nu } => {
            if !(-1.0..=1.0).contains(&x) {
                return domain(format!("Jacobi weight support is [-1, 1], got {x}"));
            }
            let part = |p: f64, base: f64| -> Option<f64> {
                if base == 0.0 {
                    if p == 0.0 {
                        Some(0.0)
                    } else if p > 0.0 {
                        None
                    } else {
                        Some(f64::INFINITY)
                    }
                } else {
                    Some(p * base.ln())
                }
            };
            Ok(match (part(mu, 1.0 - x), part(nu, 1.0 + x)) {
                (Some(u), Some(v)) => Some(u + v),
                _ => None,
            })
        }
        PolyFamily::Pollaczek { .. } => {
            if !(-1.0..=1.0).contains(&x) {
                return domain(format!("Pollaczek weight support is [-1, 1], got {x}"));
            }
            if x.abs() == 1.0 {
                return Ok(None);
            }
            Ok(pollaczek_ln_weight_theta(family, x.acos()))
        }
        PolyFamily::ContinuousDualHahn { a, b, c } => {
            if x < 0.0 {
                return domain(format!("continuous dual Hahn weight support is x ≥ 0, got {x}"));
            }
            if x == 0.0 {
                return Ok(None);
            }
            // 1/|Γ(2ix)|² = 2x sinh(2πx)/π
            let v = -(2.0 * PI).ln()
                + 2.0 * (ln_abs_gamma_complex(a, x) + ln_abs_gamma_complex(b, x) + ln_abs_gamma_complex(c, x))
                - 2.0 * (ln_gamma(a + b) + ln_gamma(a + c))
                + (2.0 * x / PI).ln()
                + ln_sinh(2.0 * PI * x);
            Ok(Some(v))
        }
    }
}

fn pollaczek_ln_weight_theta(family: &PolyFamily, theta: f64) -> Option<f64> {
    let PolyFamily::Pollaczek { nu, a, b } = *family else {
        return None;
    };
    let (s, c) = theta.sin_cos();
    if s <= 0.0 {
        return None;
    }
    let phi = ((a - 1.0) * c + b) / s;
    let v = (2.0 * nu - 1.0) * s.ln() + (2.0 * theta - PI) * phi + 2.0 * ln_abs_gamma_complex(nu, phi);
    if v.is_nan() {
        None
    } else {
        Some(v)
    }
}

/// Weight density w(x) ≥ 0 on the family's support.
pub fn weight(family: &PolyFamily, x: f64) -> Result<f64> {
    Ok(match ln_weight(family, x)? {
        Some(v) => v.exp(),
        None => 0.0,
    })
}

/// ∫ w P_n P_m over the support by adaptive quadrature. Compare with
/// `family.norm(n)` for n = m and with 0 otherwise.
pub fn orthogonality_check(family: &PolyFamily, n: usize, m: usize) -> Result<f64> {
    family.validate_weight()?;
    let hn = family.ln_norm(n)?;
    let hm = family.ln_norm(m)?;
    let scale = (0.5 * (hn + hm)).exp();
    let tol = Tolerance {
        abs: 1e-12 * scale,
        rel: 1e-10,
    };
    let top = n.max(m);
    let prod = |x: f64| -> f64 {
        match eval_all(family, top, x) {
            Ok(p) => p[n] * p[m],
            Err(_) => f64::NAN,
        }
    };
    let r = match *family {
        PolyFamily::Laguerre { .. } => quad::integrate_to_infinity(
            |x| {
                if x > 1e6 {
                    return 0.0;
                }
                match ln_weight(family, x) {
                    Ok(Some(lw)) => lw.exp() * prod(x),
                    _ => 0.0,
                }
            },
            0.0,
            tol,
        )?,
        PolyFamily::Jacobi { mu, nu } => {
            // each half is integrated in the distance u to its endpoint so that
            // (1 ∓ x) is exact near the singular end
            let right = quad::integrate(
                |u: f64| {
                    if u <= 0.0 {
                        return 0.0;
                    }
                    (mu * u.ln() + nu * (2.0 - u).ln()).exp() * prod(1.0 - u)
                },
                0.0,
                1.0,
                tol,
            )?;
            let left = quad::integrate(
                |u: f64| {
                    if u <= 0.0 {
                        return 0.0;
                    }
                    (mu * (2.0 - u).ln() + nu * u.ln()).exp() * prod(u - 1.0)
                },
                0.0,
                1.0,
                tol,
            )?;
            quad::QuadResult {
                value: left.value + right.value,
                error: left.error + right.error,
                evaluations: left.evaluations + right.evaluations,
            }
        }
        PolyFamily::Pollaczek { .. } => quad::integrate_breaks(
            &|theta: f64| match pollaczek_ln_weight_theta(family, theta) {
                Some(lw) => {
                    let (s, c) = theta.sin_cos();
                    (lw.exp() * s) * prod(c)
                }
                None => 0.0,
            },
            &[0.0, 0.5 * PI, PI],
            tol,
        )?,
        PolyFamily::ContinuousDualHahn { .. } => quad::integrate_to_infinity(
            |x| {
                if x > 1e4 {
                    return 0.0;
                }
                match ln_weight(family, x) {
                    Ok(Some(lw)) => lw.exp() * prod(x * x),
                    _ => 0.0,
                }
            },
            0.0,
            tol,
        )?,
    };
    if !r.value.is_finite() {
        return Err(Error::Accuracy {
            what: "orthogonality integral".into(),
            achieved: f64::INFINITY,
            requested: tol.abs,
        });
    }
    Ok(r.value)
}

/// Coefficients of the Jacobi relation
/// `((1+x)/2) P_n = d_n P_n + c_n P_{n-1} + e_n P_{n+1}` for P^{(μ,ν)}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiHalfCoeffs {
    pub d: f64,
    pub c: f64,
    pub e: f64,
}

pub fn jacobi_half_coeffs(n: usize, mu: f64, nu: f64) -> JacobiHalfCoeffs {
    let nf = n as f64;
    let s = mu + nu;
    let two = 2.0 * nf + s;
    let d = if n == 0 {
        (nu + 1.0) / (s + 2.0)
    } else {
        (2.0 * nf * (nf + s + 1.0) + s * (nu + 1.0)) / (two * (two + 2.0))
    };
    let c = if n == 0 {
        0.0
    } else {
        (nf + mu) * (nf + nu) / (two * (two + 1.0))
    };
    let e = (nf + 1.0) * (nf + s + 1.0) / ((two + 1.0) * (two + 2.0));
    JacobiHalfCoeffs { d, c, e }
}

/// Entries of the symmetric matrix of (1+x)/2 in the orthonormal Jacobi basis:
/// diagonal d_n and off-diagonal √(c_{n+1} e_n).
pub fn jacobi_half_orthonormal(n: usize, mu: f64, nu: f64) -> (f64, f64) {
    let here = jacobi_half_coeffs(n, mu, nu);
    let next = jacobi_half_coeffs(n + 1, mu, nu);
    (here.d, (next.c * here.e).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_values() {
        let lag = PolyFamily::Laguerre { nu: 1.0 };
        assert!((eval_recursive(&lag, 1, 0.5).unwrap() - 1.5).abs() < 1e-15);
        let dh = PolyFamily::ContinuousDualHahn { a: 0.5, b: 0.5, c: 0.5 };
        assert!((eval_recursive(&dh, 1, 0.0).unwrap() - 0.75).abs() < 1e-15);
        let jac = PolyFamily::Jacobi { mu: 1.0, nu: 0.3 };
        assert!((eval_hypergeometric(&jac, 1, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(weight(&PolyFamily::Laguerre { nu: 0.0 }, 0.0).unwrap(), 1.0);
        assert_eq!(weight(&PolyFamily::Jacobi { mu: 2.0, nu: 0.0 }, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(matches!(
            eval_recursive(&PolyFamily::Laguerre { nu: -1.0 }, 2, 0.1),
            Err(Error::ParameterDomain(_))
        ));
        assert!(matches!(
            eval_recursive(&PolyFamily::ContinuousDualHahn { a: -1.0, b: 0.5, c: 2.0 }, 2, 0.1),
            Err(Error::ParameterDomain(_))
        ));
        assert!(matches!(
            weight(&PolyFamily::Jacobi { mu: 0.5, nu: 0.5 }, 1.5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn jacobi_norm_example() {
        let f = PolyFamily::Jacobi { mu: 1.0, nu: 1.0 };
        assert!((f.norm(0).unwrap() - 4.0 / 3.0).abs() < 1e-14);
        assert!((orthogonality_check(&f, 0, 0).unwrap() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn half_matrix_reproduces_multiplication() {
        let (mu, nu) = (0.7, -0.4);
        let f = PolyFamily::Jacobi { mu, nu };
        let x = 0.31;
        let p = eval_all(&f, 8, x).unwrap();
        for n in 1..7 {
            let k = jacobi_half_coeffs(n, mu, nu);
            let lhs = 0.5 * (1.0 + x) * p[n];
            let rhs = k.d * p[n] + k.c * p[n - 1] + k.e * p[n + 1];
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }
}
