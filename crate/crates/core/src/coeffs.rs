//! Expansion coefficients f_n(E) of ψ = Σ f_n φ_n from the three-term
//! recursion (a_n - y) f_n + b_{n-1} f_{n-1} + b_n f_{n+1} = 0.
//!
//! Pollaczek and continuous dual Hahn cases have closed forms; the
//! Hulthén and Rosen-Morse recursions are deformed Jacobi recursions and are
//! solved forward numerically.

use crate::basisgen::BasisKind;
use crate::error::{domain, Error, Result};
use crate::orthopoly::{eval_all, jacobi_half_coeffs, PolyFamily};
use crate::special::ln_gamma;
use crate::tridiag::{representation, PotentialCase, RepRequest, TridiagonalRep};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum CoefficientFamily {
    /// f_n = √(n!/Γ(n+ν+1)) P_n^{λ}(x; a, b), λ = (ν+1)/2.
    Pollaczek { lambda: f64, a: f64, b: f64, x: f64 },
    /// f_n = √(Γ(n+ν+1)/n!) S_n(x²; a, b, c).
    DualHahn { x2: f64, a: f64, b: f64, c: f64 },
    /// f_n = κ_n P_n with P_n obeying the deformed Jacobi recursion.
    DeformedJacobi { gamma: f64, mu: f64, nu: f64, y: f64 },
    NumericOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientSolution {
    pub values: Vec<f64>,
    pub family: CoefficientFamily,
    /// How f_0 is fixed.
    pub normalization: String,
    /// Index n at which b_n = 0 stopped the recursion.
    pub truncated_at: Option<usize>,
    /// The energy sits exactly on a quantization point: the recursion
    /// decouples and no polynomial form exists.
    pub bound_state_condition: bool,
    /// Set when the values are numerically unreliable.
    pub caution: Option<String>,
}

fn zero_cut(rep: &TridiagonalRep) -> f64 {
    1e-13 * rep.diag.iter().chain(&rep.off).fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE)
}

/// Forward solution from f_0 (f_{-1} = 0), one value per basis function.
/// A vanishing b_n ends the sequence at f_n and records the cut.
pub fn solve_forward(rep: &TridiagonalRep, f0: f64) -> CoefficientSolution {
    let cut = zero_cut(rep);
    let mut values = vec![f0];
    let mut truncated_at = None;
    for n in 0..rep.size.saturating_sub(1) {
        let b = rep.off[n];
        if b.abs() <= cut {
            truncated_at = Some(n);
            break;
        }
        let prev = if n > 0 { rep.off[n - 1] * values[n - 1] } else { 0.0 };
        let next = -((rep.diag[n] - rep.y) * values[n] + prev) / b;
        values.push(next);
    }
    CoefficientSolution {
        values,
        family: CoefficientFamily::NumericOnly,
        normalization: format!("f_0 = {f0}"),
        truncated_at,
        bound_state_condition: truncated_at.is_some(),
        caution: None,
    }
}

/// Scaled residual of the recursion at each interior row 1..len-2: the
/// absolute residual over the largest of its three terms.
pub fn recursion_residuals(rep: &TridiagonalRep, values: &[f64]) -> Vec<f64> {
    let n_max = values.len().min(rep.size);
    (1..n_max.saturating_sub(1))
        .map(|n| {
            let t = [
                (rep.diag[n] - rep.y) * values[n],
                rep.off[n - 1] * values[n - 1],
                rep.off[n] * values[n + 1],
            ];
            let big = t.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if big == 0.0 {
                0.0
            } else {
                (t[0] + t[1] + t[2]).abs() / big
            }
        })
        .collect()
}

/// The Γ-ratio maps between recursion coefficients f_n and polynomials P_n.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum Rescaling {
    /// f_n = √(Γ(n+1)/Γ(n+ν+1)) P_n
    Pollaczek { nu: f64 },
    /// f_n = √(Γ(n+ν+1)/Γ(n+1)) P_n
    DualHahn { nu: f64 },
    /// f_n = √((2n+s+1) n! Γ(n+s+1) / (Γ(n+μ+1)Γ(n+ν+1))) P_n, s = μ+ν
    DeformedJacobi { mu: f64, nu: f64 },
}

impl Rescaling {
    pub fn ln_factor(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            Rescaling::Pollaczek { nu } => 0.5 * (ln_gamma(nf + 1.0) - ln_gamma(nf + nu + 1.0)),
            Rescaling::DualHahn { nu } => 0.5 * (ln_gamma(nf + nu + 1.0) - ln_gamma(nf + 1.0)),
            Rescaling::DeformedJacobi { mu, nu } => {
                let s = mu + nu;
                0.5 * ((2.0 * nf + s + 1.0).ln() + ln_gamma(nf + 1.0) + ln_gamma(nf + s + 1.0)
                    - ln_gamma(nf + mu + 1.0)
                    - ln_gamma(nf + nu + 1.0))
            }
        }
    }

    pub fn to_coefficients(&self, polys: &[f64]) -> Vec<f64> {
        polys.iter().enumerate().map(|(n, p)| p * self.ln_factor(n).exp()).collect()
    }

    pub fn to_polynomials(&self, coeffs: &[f64]) -> Vec<f64> {
        coeffs.iter().enumerate().map(|(n, f)| f * (-self.ln_factor(n)).exp()).collect()
    }
}

fn laguerre_nu(rep: &TridiagonalRep) -> f64 {
    match rep.basis.kind {
        BasisKind::Laguerre { nu, .. } => nu,
        BasisKind::Jacobi { nu, .. } => nu,
    }
}

fn sized(req: &RepRequest, n_max: usize) -> RepRequest {
    RepRequest {
        size: n_max.max(1) + 1,
        ..*req
    }
}

/// Closed-form Pollaczek coefficients f_0..f_{n_max} for Coulomb 1,
/// Oscillator 1, Power law 1 and Morse 1.
pub fn pollaczek_coeffs(case: &PotentialCase, req: &RepRequest, n_max: usize) -> Result<CoefficientSolution> {
    use PotentialCase::*;
    if !matches!(case, CoulombPlain { .. } | Oscillator { .. } | PowerLaw1 { .. } | Morse1 { .. }) {
        return Err(Error::Unsupported(format!("{} has no Pollaczek solution", case.name())));
    }
    let rep = representation(case, &sized(req, n_max))?;
    let nu = laguerre_nu(&rep);
    let e = rep.energy;
    // x = σ_+/σ_-, a = 1 + Q, b = -Q
    let (sp, sm, q) = match *case {
        CoulombPlain { z } => {
            let lam = rep.lambda();
            let t = 2.0 * e / (lam * lam);
            (0.25 - t, -(0.25 + t), 2.0 * z / lam)
        }
        Oscillator { omega } => {
            let lam = rep.lambda();
            let w = (omega / (lam * lam)).powi(2);
            (w + 1.0, w - 1.0, -e / (2.0 * lam * lam))
        }
        PowerLaw1 { mu, lambda, a, b } => {
            let s = (mu * lambda).powi(2);
            (b / s + 0.25, b / s - 0.25, 2.0 * a / s)
        }
        Morse1 { lambda, a, b, .. } => {
            let l2 = lambda * lambda;
            (2.0 * b / l2 + 0.25, 2.0 * b / l2 - 0.25, 2.0 * a / l2)
        }
        _ => unreachable!(),
    };
    if sm == 0.0 {
        let mut sol = solve_forward(&rep, (-ln_gamma(nu + 1.0) / 2.0).exp());
        sol.bound_state_condition = true;
        sol.normalization = "f_0 = 1/sqrt(Gamma(nu+1))".into();
        return Ok(sol);
    }
    let x = sp / sm;
    let lambda = 0.5 * (nu + 1.0);
    let family = PolyFamily::Pollaczek {
        nu: lambda,
        a: 1.0 + q,
        b: -q,
    };
    let polys = eval_all(&family, n_max, x)?;
    let values = Rescaling::Pollaczek { nu }.to_coefficients(&polys);
    finite_values(case, &values)?;
    Ok(CoefficientSolution {
        values,
        family: CoefficientFamily::Pollaczek {
            lambda,
            a: 1.0 + q,
            b: -q,
            x,
        },
        normalization: "f_0 = 1/sqrt(Gamma(nu+1))".into(),
        truncated_at: None,
        bound_state_condition: false,
        caution: None,
    })
}

fn finite_values(case: &PotentialCase, values: &[f64]) -> Result<()> {
    if let Some(n) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Accuracy {
            what: format!("{} coefficient f_{n} overflowed", case.name()),
            achieved: f64::INFINITY,
            requested: f64::MAX,
        });
    }
    Ok(())
}

/// Closed-form continuous dual Hahn coefficients f_0..f_{n_max} for
/// Coulomb 2, Oscillator 2, Power law 2 and Morse 2.
pub fn cdhahn_coeffs(case: &PotentialCase, req: &RepRequest, n_max: usize) -> Result<CoefficientSolution> {
    use PotentialCase::*;
    if !matches!(case, CoulombBarrier { .. } | OscillatorBarrier { .. } | PowerLaw2 { .. } | Morse2 { .. }) {
        return Err(Error::Unsupported(format!("{} has no dual Hahn solution", case.name())));
    }
    let rep = representation(case, &sized(req, n_max))?;
    let nu = laguerre_nu(&rep);
    let l = req.ell as f64;
    let e = rep.energy;
    let (t, shift) = match *case {
        CoulombBarrier { z, b, .. } => (2.0 * z / rep.lambda(), (l + 0.5).powi(2) + 2.0 * b),
        OscillatorBarrier { lambda, b, .. } => (-e / (2.0 * lambda * lambda), ((l + 0.5) / 2.0).powi(2) + b / 2.0),
        PowerLaw2 { mu, lambda, a, b, .. } => {
            let s = (mu * lambda).powi(2);
            (b / s, ((l + 0.5) / mu).powi(2) + 2.0 * a / s)
        }
        Morse2 { lambda, a, .. } => {
            let l2 = lambda * lambda;
            (2.0 * a / l2, -2.0 * e / l2)
        }
        _ => unreachable!(),
    };
    let (a, b, c) = (0.5 * (nu + 1.0), t + 0.5, 0.5 * (nu + 1.0));
    if !(a + b > 0.0) {
        return domain(format!(
            "{}: dual Hahn parameters need a + b = nu/2 + 1 + t > 0, got {}",
            case.name(),
            a + b
        ));
    }
    if !(a + c > 0.0) {
        return domain(format!("{}: dual Hahn parameters need a + c = nu + 1 > 0, got {}", case.name(), a + c));
    }
    let x2 = -shift;
    let polys = eval_all(&PolyFamily::ContinuousDualHahn { a, b, c }, n_max, x2)?;
    let values = Rescaling::DualHahn { nu }.to_coefficients(&polys);
    finite_values(case, &values)?;
    Ok(CoefficientSolution {
        values,
        family: CoefficientFamily::DualHahn { x2, a, b, c },
        normalization: "f_0 = sqrt(Gamma(nu+1))".into(),
        truncated_at: None,
        bound_state_condition: false,
        caution: None,
    })
}

/// Which deformed Jacobi recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformedStyle {
    /// y P_n = [γ/4 (2n+s+1)² + d_n] P_n + c_n P_{n-1} + e_n P_{n+1}
    Additive,
    /// y P_n = [-n(n+μ)/(2n+s) + d_n F_{n+1}] P_n + c_n F_n P_{n-1} + e_n F_{n+1} P_{n+1},
    /// F_k = (2k+s)²/4 + γ
    Multiplicative,
}

/// Row n of a deformed Jacobi recursion: (diagonal, P_{n-1} coefficient,
/// P_{n+1} coefficient). d_n, c_n, e_n are the Jacobi (1+x)/2 coefficients.
pub fn deformed_recursion_row(style: DeformedStyle, n: usize, mu: f64, nu: f64, gamma: f64) -> (f64, f64, f64) {
    let j = jacobi_half_coeffs(n, mu, nu);
    let nf = n as f64;
    let s = mu + nu;
    match style {
        DeformedStyle::Additive => (0.25 * gamma * (2.0 * nf + s + 1.0).powi(2) + j.d, j.c, j.e),
        DeformedStyle::Multiplicative => {
            let f = |k: f64| 0.25 * (2.0 * k + s).powi(2) + gamma;
            let lead = if n == 0 { 0.0 } else { -nf * (nf + mu) / (2.0 * nf + s) };
            (lead + j.d * f(nf + 1.0), j.c * f(nf), j.e * f(nf + 1.0))
        }
    }
}

/// P_0..P_{n_max} of a deformed Jacobi recursion at y, with P_0 = 1.
pub fn deformed_jacobi_polys(style: DeformedStyle, mu: f64, nu: f64, gamma: f64, y: f64, n_max: usize) -> Result<Vec<f64>> {
    if !(mu > -1.0 && nu > -1.0) {
        return Err(Error::ParameterDomain(format!("deformed Jacobi needs mu, nu > -1, got ({mu}, {nu})")));
    }
    let mut p = vec![1.0];
    for n in 0..n_max {
        let (d, c, e) = deformed_recursion_row(style, n, mu, nu, gamma);
        if e == 0.0 {
            return domain(format!("deformed Jacobi recursion stops at n = {n}: P_(n+1) coefficient vanishes"));
        }
        let prev = if n > 0 { c * p[n - 1] } else { 0.0 };
        p.push(((y - d) * p[n] - prev) / e);
    }
    Ok(p)
}

/// Coefficients for Hulthén 1/2/3 and Rosen-Morse, solved forward from the
/// symmetric recursion with f_0 chosen so that P_0 = 1. The family tag
/// carries the (γ, μ, ν, y) of the deformed Jacobi recursion the rescaled
/// P_n obey. Hulthén 3 has μ and ν exchanged and P_n = (-1)^n f_n/κ_n.
pub fn deformed_jacobi_coeffs(case: &PotentialCase, req: &RepRequest, n_max: usize) -> Result<CoefficientSolution> {
    use PotentialCase::*;
    if !matches!(case, Hulthen1 { .. } | Hulthen2 { .. } | Hulthen3 { .. } | RosenMorse { .. }) {
        return Err(Error::Unsupported(format!("{} has no deformed Jacobi recursion", case.name())));
    }
    let rep = representation(case, &sized(req, n_max))?;
    let (bmu, bnu) = match rep.basis.kind {
        BasisKind::Jacobi { mu, nu, .. } => (mu, nu),
        BasisKind::Laguerre { .. } => unreachable!("Hulthén and Rosen-Morse use Jacobi bases"),
    };
    let (style, mu, nu) = match case {
        Hulthen3 { .. } => (DeformedStyle::Multiplicative, bnu, bmu),
        Hulthen2 { .. } => (DeformedStyle::Multiplicative, bmu, bnu),
        _ => (DeformedStyle::Additive, bmu, bnu),
    };
    let scaling = Rescaling::DeformedJacobi { mu, nu };
    let f0 = scaling.ln_factor(0).exp();
    let mut sol = solve_forward(&rep, f0);
    sol.normalization = "P_0 = 1".into();
    let Some(gamma) = rep.gamma else {
        // B = 0: the Jacobi couplings vanish and the recursion decouples
        sol.caution = Some("B = 0: no deformed Jacobi form; only the diagonalization route applies".into());
        return Ok(sol);
    };
    let y = match style {
        DeformedStyle::Multiplicative => rep.y,
        // the symmetric rows are (1/γ)·(additive row - y)
        DeformedStyle::Additive => {
            let (d0, _, _) = deformed_recursion_row(style, 0, mu, nu, gamma);
            d0 - gamma * (rep.diag[0] - rep.y)
        }
    };
    sol.family = CoefficientFamily::DeformedJacobi { gamma, mu, nu, y };
    let n_top = sol.values.len().saturating_sub(1) as f64;
    if style == DeformedStyle::Additive && gamma.abs() * n_top * n_top >= 0.5 {
        sol.caution = Some(format!(
            "gamma*n^2 = {:.3} is not small: the gamma term dominates at large n and the values lose meaning",
            gamma.abs() * n_top * n_top
        ));
    }
    finite_values(case, &sol.values)?;
    Ok(sol)
}

/// The polynomials P_n behind a deformed Jacobi solution.
pub fn deformed_polynomials(case: &PotentialCase, sol: &CoefficientSolution) -> Result<Vec<f64>> {
    let CoefficientFamily::DeformedJacobi { mu, nu, .. } = sol.family else {
        return domain("not a deformed Jacobi solution");
    };
    let mut p = Rescaling::DeformedJacobi { mu, nu }.to_polynomials(&sol.values);
    if matches!(case, PotentialCase::Hulthen3 { .. }) {
        for (n, v) in p.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -*v;
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_function_rep_gives_f0() {
        let rep = representation(&PotentialCase::CoulombPlain { z: -1.0 }, &RepRequest::new(0, Some(1.0), 0.3, 1)).unwrap();
        assert_eq!(solve_forward(&rep, 2.5).values, vec![2.5]);
    }

    #[test]
    fn coulomb_truncates_on_the_ladder() {
        let rep = representation(&PotentialCase::CoulombPlain { z: -1.0 }, &RepRequest::new(0, Some(2.0), -0.5, 8)).unwrap();
        let sol = solve_forward(&rep, 1.0);
        assert_eq!(sol.truncated_at, Some(0));
        assert_eq!(sol.values.len(), 1);
    }

    #[test]
    fn closed_form_first_terms() {
        let case = PotentialCase::CoulombPlain { z: -1.0 };
        let req = RepRequest::new(0, Some(1.0), 0.5, 2);
        let cf = pollaczek_coeffs(&case, &req, 5).unwrap();
        assert!((cf.values[0] - (-ln_gamma(2.0) / 2.0).exp()).abs() < 1e-15);
        let rep = representation(&case, &req).unwrap();
        let fw = solve_forward(&rep, cf.values[0]);
        assert!((fw.values[1] - cf.values[1]).abs() < 1e-13 * cf.values[1].abs());
        if let CoefficientFamily::Pollaczek { x, .. } = cf.family {
            assert!(x > -1.0 && x < 1.0);
        } else {
            panic!("wrong family");
        }
    }

    #[test]
    fn morse1_mapping() {
        let case = PotentialCase::Morse1 {
            lambda: 1.0,
            a: -1.0,
            b: 0.3,
            mu_hat: 1.0,
        };
        let cf = pollaczek_coeffs(&case, &RepRequest::new(0, None, -0.7, 2), 4).unwrap();
        assert_eq!(cf.family, CoefficientFamily::Pollaczek {
            lambda: 0.5 * (2.0 * (1.4f64).sqrt() + 1.0),
            a: -1.0,
            b: 2.0,
            x: (0.6 + 0.25) / (0.6 - 0.25),
        });
    }

    #[test]
    fn morse2_and_coulomb2_arguments() {
        let m2 = PotentialCase::Morse2 {
            lambda: 1.0,
            a: -0.4,
            mu_hat: 1.0,
            nu: Some(1.3),
        };
        let cf = cdhahn_coeffs(&m2, &RepRequest::new(0, None, -0.3, 2), 3).unwrap();
        match cf.family {
            CoefficientFamily::DualHahn { x2, a, b, c } => {
                assert!((x2 + 0.6).abs() < 1e-15);
                assert_eq!(a, c);
                assert!((b - (-0.8 + 0.5)).abs() < 1e-15);
            }
            _ => panic!(),
        }
        let c2 = PotentialCase::CoulombBarrier { z: 1.0, b: 0.2, nu: None };
        let cf = cdhahn_coeffs(&c2, &RepRequest::new(1, None, -0.1, 2), 3).unwrap();
        match cf.family {
            CoefficientFamily::DualHahn { x2, .. } => assert!((x2 - (-0.4 - 2.25)).abs() < 1e-14),
            _ => panic!(),
        }
        assert!((cf.values[0] - (ln_gamma(laguerre_nu(&representation(&c2, &RepRequest::new(1, None, -0.1, 2)).unwrap()) + 1.0) / 2.0).exp()).abs() < 1e-14);
    }

    #[test]
    fn wrong_family_is_unsupported() {
        let c = PotentialCase::Morse2 {
            lambda: 1.0,
            a: -2.0,
            mu_hat: 1.0,
            nu: None,
        };
        assert!(matches!(pollaczek_coeffs(&c, &RepRequest::new(0, None, -0.3, 2), 3), Err(Error::Unsupported(_))));
    }
}
