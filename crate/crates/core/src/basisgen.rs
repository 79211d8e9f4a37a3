//! Square-integrable bases φ_n(r) = A_n w(x) P_n(x) on the coordinate maps
//! used by the tridiagonal cases.
//!
//! Laguerre-type: `A_n x^α e^{-βx} L_n^ν(x)` on x ∈ (0, ∞).
//! Jacobi-type: `A_n (1+x)^α (1-x)^β P_n^{(μ,ν)}(x)` on x ∈ (-1, 1).
//!
//! Values are assembled in log space so that x^α against e^{-βx} never
//! overflows. Points near ±1 carry 1∓x separately to keep them exact.

use crate::eigen::SymTridiag;
use crate::error::{domain, param, Result};
use crate::orthopoly::{eval_recursive, jacobi_half_orthonormal, PolyFamily};
use crate::special::ln_gamma;
use serde::Serialize;
use std::f64::consts::LN_2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum CoordinateMap {
    /// x = λr
    Linear { lambda: f64 },
    /// x = (λr)²
    Quadratic { lambda: f64 },
    /// x = (λr)^μ, μ ∉ {0, 1, 2}
    Power { lambda: f64, mu: f64 },
    /// x = μ̂ e^{-λr}, r on the whole line
    ExpDecay { lambda: f64, mu_hat: f64 },
    /// x = 1 - 2e^{-λr}
    Logistic { lambda: f64 },
    /// z = tanh(λr), r on the whole line
    Tanh { lambda: f64 },
}

/// Where r lives for a given map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigSpace {
    HalfLine,
    FullLine,
}

impl CoordinateMap {
    pub fn lambda(&self) -> f64 {
        match *self {
            CoordinateMap::Linear { lambda }
            | CoordinateMap::Quadratic { lambda }
            | CoordinateMap::Power { lambda, .. }
            | CoordinateMap::ExpDecay { lambda, .. }
            | CoordinateMap::Logistic { lambda }
            | CoordinateMap::Tanh { lambda } => lambda,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lambda = self.lambda();
        if !(lambda.is_finite() && lambda > 0.0) {
            return param(format!("map scale λ must be finite and positive, got {lambda}"));
        }
        match *self {
            CoordinateMap::Power { mu, .. } => {
                if !mu.is_finite() || mu == 0.0 || mu == 1.0 || mu == 2.0 {
                    return param(format!(
                        "power map exponent must be finite and not 0, 1 or 2 (those are the Morse, Coulomb and oscillator maps), got {mu}"
                    ));
                }
            }
            CoordinateMap::ExpDecay { mu_hat, .. } => {
                if !(mu_hat.is_finite() && mu_hat > 0.0) {
                    return param(format!("exponential map needs μ̂ > 0, got {mu_hat}"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn config_space(&self) -> ConfigSpace {
        match self {
            CoordinateMap::ExpDecay { .. } | CoordinateMap::Tanh { .. } => ConfigSpace::FullLine,
            _ => ConfigSpace::HalfLine,
        }
    }

    /// True when x runs over (-1, 1) rather than (0, ∞).
    pub fn is_bounded(&self) -> bool {
        matches!(self, CoordinateMap::Logistic { .. } | CoordinateMap::Tanh { .. })
    }

    /// True when x increases with r.
    pub fn is_increasing(&self) -> bool {
        match *self {
            CoordinateMap::ExpDecay { .. } => false,
            CoordinateMap::Power { mu, .. } => mu > 0.0,
            _ => true,
        }
    }

    /// Factor c in A_n² = c λ n!/Γ(n+ν+1) for the Laguerre-type maps.
    fn laguerre_norm_factor(&self) -> f64 {
        match *self {
            CoordinateMap::Quadratic { .. } => 2.0,
            CoordinateMap::Power { mu, .. } => mu.abs(),
            _ => 1.0,
        }
    }

    /// Exponent k with dr = x^{-k} dx / (c λ).
    fn laguerre_measure_exponent(&self) -> f64 {
        match *self {
            CoordinateMap::Quadratic { .. } => 0.5,
            CoordinateMap::Power { mu, .. } => 1.0 - 1.0 / mu,
            CoordinateMap::ExpDecay { .. } => 1.0,
            _ => 0.0,
        }
    }

    /// Exponents (a, b) with dr = dx / (λ (1+x)^a (1-x)^b).
    fn jacobi_measure_exponents(&self) -> (f64, f64) {
        match self {
            CoordinateMap::Tanh { .. } => (1.0, 1.0),
            _ => (0.0, 1.0),
        }
    }
}

/// A point of the mapped coordinate with its distances to ±1 kept exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MappedPoint {
    pub x: f64,
    pub one_minus: f64,
    pub one_plus: f64,
}

impl MappedPoint {
    pub fn new(x: f64) -> Self {
        MappedPoint {
            x,
            one_minus: 1.0 - x,
            one_plus: 1.0 + x,
        }
    }

    /// x = 1 - u.
    pub fn below_one(u: f64) -> Self {
        MappedPoint {
            x: 1.0 - u,
            one_minus: u,
            one_plus: 2.0 - u,
        }
    }

    /// x = -1 + u.
    pub fn above_minus_one(u: f64) -> Self {
        MappedPoint {
            x: u - 1.0,
            one_minus: 2.0 - u,
            one_plus: u,
        }
    }
}

fn check_r(map: &CoordinateMap, r: f64) -> Result<()> {
    if !r.is_finite() && !r.is_infinite() {
        return domain(format!("r must be a number, got {r}"));
    }
    if map.config_space() == ConfigSpace::HalfLine && r < 0.0 {
        return domain(format!("radial coordinate must be nonnegative, got {r}"));
    }
    Ok(())
}

/// x(r) (or z(r) for the tanh map).
pub fn map_coordinate(map: &CoordinateMap, r: f64) -> Result<f64> {
    Ok(map_point(map, r)?.x)
}

/// x(r) together with exact 1∓x for the bounded maps.
pub fn map_point(map: &CoordinateMap, r: f64) -> Result<MappedPoint> {
    map.validate()?;
    check_r(map, r)?;
    let l = map.lambda();
    Ok(match *map {
        CoordinateMap::Linear { .. } => MappedPoint::new(l * r),
        CoordinateMap::Quadratic { .. } => MappedPoint::new((l * r).powi(2)),
        CoordinateMap::Power { mu, .. } => MappedPoint::new((l * r).powf(mu)),
        CoordinateMap::ExpDecay { mu_hat, .. } => MappedPoint::new(mu_hat * (-l * r).exp()),
        CoordinateMap::Logistic { .. } => {
            let e = (-l * r).exp();
            MappedPoint {
                x: 1.0 - 2.0 * e,
                one_minus: 2.0 * e,
                one_plus: -2.0 * (-l * r).exp_m1(),
            }
        }
        CoordinateMap::Tanh { .. } => {
            // 1 ± tanh t = 2 / (1 + e^{∓2t})
            let t = l * r;
            MappedPoint {
                x: t.tanh(),
                one_minus: 2.0 / (1.0 + (2.0 * t).exp()),
                one_plus: 2.0 / (1.0 + (-2.0 * t).exp()),
            }
        }
    })
}

/// r(x), the inverse of [`map_point`].
pub fn inverse_map(map: &CoordinateMap, p: &MappedPoint) -> Result<f64> {
    map.validate()?;
    let l = map.lambda();
    let x = p.x;
    let bad = || domain(format!("x = {x} lies outside the range of {map:?}"));
    if map.is_bounded() {
        if !(p.one_minus >= 0.0 && p.one_plus >= 0.0) {
            return bad();
        }
    } else if !(x >= 0.0) {
        return bad();
    }
    Ok(match *map {
        CoordinateMap::Linear { .. } => x / l,
        CoordinateMap::Quadratic { .. } => x.sqrt() / l,
        CoordinateMap::Power { mu, .. } => x.powf(1.0 / mu) / l,
        CoordinateMap::ExpDecay { mu_hat, .. } => -(x / mu_hat).ln() / l,
        CoordinateMap::Logistic { .. } => {
            if p.one_plus > 1.0 {
                -(0.5 * p.one_minus).ln() / l
            } else {
                -(-0.5 * p.one_plus).ln_1p() / l
            }
        }
        CoordinateMap::Tanh { .. } => 0.5 * (p.one_plus / p.one_minus).ln() / l,
    })
}

/// r(x) from a plain coordinate value.
pub fn inverse_coordinate(map: &CoordinateMap, x: f64) -> Result<f64> {
    inverse_map(map, &MappedPoint::new(x))
}

/// dx/dr and d²x/dr² written in terms of the point.
pub fn map_derivatives(map: &CoordinateMap, p: &MappedPoint) -> (f64, f64) {
    let l = map.lambda();
    let x = p.x;
    match *map {
        CoordinateMap::Linear { .. } => (l, 0.0),
        CoordinateMap::Quadratic { .. } => (2.0 * l * x.sqrt(), 2.0 * l * l),
        CoordinateMap::Power { mu, .. } => (
            mu * l * x.powf(1.0 - 1.0 / mu),
            mu * (mu - 1.0) * l * l * x.powf(1.0 - 2.0 / mu),
        ),
        CoordinateMap::ExpDecay { .. } => (-l * x, l * l * x),
        CoordinateMap::Logistic { .. } => (l * p.one_minus, -l * l * p.one_minus),
        CoordinateMap::Tanh { .. } => {
            let s = p.one_minus * p.one_plus;
            (l * s, -2.0 * l * l * x * s)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisKind {
    Laguerre { alpha: f64, beta: f64, nu: f64 },
    Jacobi { alpha: f64, beta: f64, mu: f64, nu: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BasisSpec {
    pub map: CoordinateMap,
    pub kind: BasisKind,
    /// Angular momentum for the radial cases; `None` on the line.
    pub ell: Option<u32>,
}

impl BasisSpec {
    pub fn new(map: CoordinateMap, kind: BasisKind, ell: Option<u32>) -> Result<Self> {
        let s = BasisSpec { map, kind, ell };
        s.validate()?;
        Ok(s)
    }

    pub fn family(&self) -> PolyFamily {
        match self.kind {
            BasisKind::Laguerre { nu, .. } => PolyFamily::Laguerre { nu },
            BasisKind::Jacobi { mu, nu, .. } => PolyFamily::Jacobi { mu, nu },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.map.validate()?;
        self.family().validate()?;
        match self.kind {
            BasisKind::Laguerre { alpha, beta, .. } => {
                if self.map.is_bounded() {
                    return param("Laguerre-type basis needs a map onto (0, ∞)");
                }
                if !(alpha.is_finite() && alpha > 0.0 && beta.is_finite() && beta > 0.0) {
                    return param(format!("basis exponents must be positive, got α={alpha}, β={beta}"));
                }
                let p = 2.0 * alpha - self.map.laguerre_measure_exponent();
                if p <= -1.0 {
                    return param(format!(
                        "basis is not square integrable: measure exponent 2α - k = {p} ≤ -1"
                    ));
                }
            }
            BasisKind::Jacobi { alpha, beta, .. } => {
                if !self.map.is_bounded() {
                    return param("Jacobi-type basis needs a map onto (-1, 1)");
                }
                if !(alpha.is_finite() && alpha > 0.0 && beta.is_finite() && beta > 0.0) {
                    return param(format!("basis exponents must be positive, got α={alpha}, β={beta}"));
                }
                let (a, b) = self.map.jacobi_measure_exponents();
                let (p, q) = (2.0 * alpha - a, 2.0 * beta - b);
                if p <= -1.0 || q <= -1.0 {
                    return param(format!(
                        "basis is not square integrable: measure exponents ({p}, {q}) must exceed -1"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Support of x, as (lower, upper).
    pub fn x_support(&self) -> (f64, f64) {
        if self.map.is_bounded() {
            (-1.0, 1.0)
        } else {
            (0.0, f64::INFINITY)
        }
    }
}

/// ln A_n.
pub fn ln_normalization(spec: &BasisSpec, n: usize) -> Result<f64> {
    spec.validate()?;
    let nf = n as f64;
    let l = spec.map.lambda();
    Ok(match spec.kind {
        BasisKind::Laguerre { nu, .. } => {
            0.5 * ((spec.map.laguerre_norm_factor() * l).ln() + ln_gamma(nf + 1.0) - ln_gamma(nf + nu + 1.0))
        }
        BasisKind::Jacobi { mu, nu, .. } => {
            let s = mu + nu;
            0.5 * (l.ln() + (2.0 * nf + s + 1.0).ln() + ln_gamma(nf + 1.0) + ln_gamma(nf + s + 1.0)
                - (s + 1.0) * LN_2
                - ln_gamma(nf + mu + 1.0)
                - ln_gamma(nf + nu + 1.0))
        }
    })
}

/// A_n > 0.
pub fn normalization(spec: &BasisSpec, n: usize) -> Result<f64> {
    Ok(ln_normalization(spec, n)?.exp())
}

/// φ_n and its first two r-derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisValues {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

struct WeightParts {
    ln_g: f64,
    dlog: f64,
    d2log: f64,
}

fn weight_parts(spec: &BasisSpec, p: &MappedPoint) -> Option<WeightParts> {
    match spec.kind {
        BasisKind::Laguerre { alpha, beta, .. } => {
            let x = p.x;
            if x <= 0.0 || !x.is_finite() {
                return None;
            }
            Some(WeightParts {
                ln_g: alpha * x.ln() - beta * x,
                dlog: alpha / x - beta,
                d2log: -alpha / (x * x),
            })
        }
        BasisKind::Jacobi { alpha, beta, .. } => {
            let (u, v) = (p.one_plus, p.one_minus);
            if u <= 0.0 || v <= 0.0 {
                return None;
            }
            Some(WeightParts {
                ln_g: alpha * u.ln() + beta * v.ln(),
                dlog: alpha / u - beta / v,
                d2log: -alpha / (u * u) - beta / (v * v),
            })
        }
    }
}

/// Polynomial and its first two x-derivatives.
fn poly_and_derivatives(spec: &BasisSpec, n: usize, x: f64) -> Result<(f64, f64, f64)> {
    let p = eval_recursive(&spec.family(), n, x)?;
    let nf = n as f64;
    let (d1, d2) = match spec.kind {
        BasisKind::Laguerre { nu, .. } => {
            let d1 = if n >= 1 {
                -eval_recursive(&PolyFamily::Laguerre { nu: nu + 1.0 }, n - 1, x)?
            } else {
                0.0
            };
            let d2 = if n >= 2 {
                eval_recursive(&PolyFamily::Laguerre { nu: nu + 2.0 }, n - 2, x)?
            } else {
                0.0
            };
            (d1, d2)
        }
        BasisKind::Jacobi { mu, nu, .. } => {
            let s = mu + nu;
            let d1 = if n >= 1 {
                0.5 * (nf + s + 1.0)
                    * eval_recursive(&PolyFamily::Jacobi { mu: mu + 1.0, nu: nu + 1.0 }, n - 1, x)?
            } else {
                0.0
            };
            let d2 = if n >= 2 {
                0.25 * (nf + s + 1.0)
                    * (nf + s + 2.0)
                    * eval_recursive(&PolyFamily::Jacobi { mu: mu + 2.0, nu: nu + 2.0 }, n - 2, x)?
            } else {
                0.0
            };
            (d1, d2)
        }
    };
    Ok((p, d1, d2))
}

/// φ_n, φ_n' and φ_n'' (derivatives in r) at a mapped point.
pub fn basis_at_point(spec: &BasisSpec, n: usize, p: &MappedPoint) -> Result<BasisValues> {
    spec.validate()?;
    let ln_a = ln_normalization(spec, n)?;
    let Some(w) = weight_parts(spec, p) else {
        // boundary of configuration space, where the weight factor vanishes
        return Ok(BasisValues {
            value: 0.0,
            d1: 0.0,
            d2: 0.0,
        });
    };
    let ag = (ln_a + w.ln_g).exp();
    if ag == 0.0 {
        return Ok(BasisValues {
            value: 0.0,
            d1: 0.0,
            d2: 0.0,
        });
    }
    let (pn, dp, d2p) = poly_and_derivatives(spec, n, p.x)?;
    let g1 = w.dlog * pn + dp;
    let g2 = (w.d2log + w.dlog * w.dlog) * pn + 2.0 * w.dlog * dp + d2p;
    let (xp, xpp) = map_derivatives(&spec.map, p);
    Ok(BasisValues {
        value: ag * pn,
        d1: ag * g1 * xp,
        d2: ag * (g2 * xp * xp + g1 * xpp),
    })
}

/// φ_n(r).
pub fn basis_eval(spec: &BasisSpec, n: usize, r: f64) -> Result<f64> {
    Ok(basis_derivatives(spec, n, r)?.value)
}

/// φ_n(r), φ_n'(r), φ_n''(r).
pub fn basis_derivatives(spec: &BasisSpec, n: usize, r: f64) -> Result<BasisValues> {
    let p = map_point(&spec.map, r)?;
    basis_at_point(spec, n, &p)
}

/// Decay of φ_n towards both ends of configuration space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub n: usize,
    /// |φ_n| at the sample points approaching the lower end of r, outermost last.
    pub lower_samples: Vec<f64>,
    /// The same towards the upper end of r.
    pub upper_samples: Vec<f64>,
    pub max_boundary_magnitude: f64,
    pub decays_lower: bool,
    pub decays_upper: bool,
    pub passed: bool,
}

fn decays(v: &[f64]) -> bool {
    let tail = &v[v.len().saturating_sub(4)..];
    tail.windows(2).all(|w| w[1] <= w[0]) && tail[tail.len() - 1] < tail[0].max(f64::MIN_POSITIVE)
        || tail.iter().all(|&t| t == 0.0)
}

/// Evaluates φ_n on geometric sequences approaching each boundary of the
/// x-support and reports whether it decays to zero there.
pub fn boundary_check(spec: &BasisSpec, n: usize) -> Result<BoundaryReport> {
    spec.validate()?;
    let eval = |p: MappedPoint| -> Result<f64> { Ok(basis_at_point(spec, n, &p)?.value.abs()) };
    let mut at_low_x = Vec::new();
    let mut at_high_x = Vec::new();
    for k in 0..9 {
        let u = 1e-6 * 10f64.powi(-k);
        if spec.map.is_bounded() {
            at_low_x.push(eval(MappedPoint::above_minus_one(u))?);
            at_high_x.push(eval(MappedPoint::below_one(u))?);
        } else {
            at_low_x.push(eval(MappedPoint::new(u))?);
            at_high_x.push(eval(MappedPoint::new(50.0 * 2f64.powi(k)))?);
        }
    }
    let (lower, upper) = if spec.map.is_increasing() {
        (at_low_x, at_high_x)
    } else {
        (at_high_x, at_low_x)
    };
    let max_boundary_magnitude = lower.last().copied().unwrap_or(0.0).max(upper.last().copied().unwrap_or(0.0));
    let decays_lower = decays(&lower);
    let decays_upper = decays(&upper);
    Ok(BoundaryReport {
        n,
        passed: decays_lower && decays_upper && max_boundary_magnitude.is_finite(),
        lower_samples: lower,
        upper_samples: upper,
        max_boundary_magnitude,
        decays_lower,
        decays_upper,
    })
}

/// ⟨φ_n|φ_m⟩ for n, m < size, from the polynomial relations.
///
/// Tridiagonal closed forms exist when the measure exponent matches the
/// polynomial weight or exceeds it by one power of the linear factor.
/// Anything else is unsupported, except the single entry at size 1.
pub fn overlap_matrix(spec: &BasisSpec, size: usize) -> Result<SymTridiag> {
    spec.validate()?;
    if size == 0 {
        return domain("overlap matrix needs size ≥ 1");
    }
    match spec.kind {
        BasisKind::Laguerre { alpha, beta, nu } => {
            let p = 2.0 * alpha - spec.map.laguerre_measure_exponent();
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + b.abs());
            if beta == 0.5 && close(p, nu) {
                return Ok(SymTridiag::identity(size));
            }
            if beta == 0.5 && close(p, nu + 1.0) {
                let diag = (0..size).map(|n| 2.0 * n as f64 + nu + 1.0).collect();
                let off = (0..size - 1)
                    .map(|n| {
                        let nf = n as f64;
                        -((nf + 1.0) * (nf + nu + 1.0)).sqrt()
                    })
                    .collect();
                return SymTridiag::new(diag, off);
            }
            if size == 1 {
                // A_0² ∫ x^p e^{-2βx} dx / (cλ)
                let v = ln_gamma(p + 1.0) - (p + 1.0) * (2.0 * beta).ln() - ln_gamma(nu + 1.0);
                return SymTridiag::new(vec![v.exp()], vec![]);
            }
            Err(crate::Error::Unsupported(format!(
                "overlap of {spec:?} is not tridiagonal (measure exponent {p} vs ν = {nu})"
            )))
        }
        BasisKind::Jacobi { alpha, beta, mu, nu } => {
            let (a, b) = spec.map.jacobi_measure_exponents();
            let (p, q) = (2.0 * alpha - a, 2.0 * beta - b);
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * (1.0 + y.abs());
            if close(p, nu) && close(q, mu) {
                return Ok(SymTridiag::identity(size));
            }
            let half = |k: usize| jacobi_half_orthonormal(k, mu, nu);
            if close(p, nu + 1.0) && close(q, mu) {
                let diag = (0..size).map(|k| 2.0 * half(k).0).collect();
                let off = (0..size - 1).map(|k| 2.0 * half(k).1).collect();
                return SymTridiag::new(diag, off);
            }
            if close(p, nu) && close(q, mu + 1.0) {
                let diag = (0..size).map(|k| 2.0 * (1.0 - half(k).0)).collect();
                let off = (0..size - 1).map(|k| -2.0 * half(k).1).collect();
                return SymTridiag::new(diag, off);
            }
            if size == 1 {
                // ∫(1+x)^p (1-x)^q dx / h_0 with h_0 the Jacobi norm
                let s = mu + nu;
                let ln_int = (p + q + 1.0) * LN_2 + ln_gamma(p + 1.0) + ln_gamma(q + 1.0) - ln_gamma(p + q + 2.0);
                let ln_h0 = (s + 1.0) * LN_2 + ln_gamma(mu + 1.0) + ln_gamma(nu + 1.0) - ln_gamma(s + 2.0);
                return SymTridiag::new(vec![(ln_int - ln_h0).exp()], vec![]);
            }
            Err(crate::Error::Unsupported(format!(
                "overlap of {spec:?} is not tridiagonal (measure exponents ({p}, {q}) vs (ν, μ) = ({nu}, {mu}))"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coulomb1(ell: u32, lambda: f64) -> BasisSpec {
        let l = ell as f64;
        BasisSpec::new(
            CoordinateMap::Linear { lambda },
            BasisKind::Laguerre {
                alpha: l + 1.0,
                beta: 0.5,
                nu: 2.0 * l + 1.0,
            },
            Some(ell),
        )
        .unwrap()
    }

    #[test]
    fn map_examples() {
        let m = CoordinateMap::Logistic { lambda: 1.0 };
        assert_eq!(map_coordinate(&m, 0.0).unwrap(), -1.0);
        assert_eq!(map_coordinate(&m, f64::INFINITY).unwrap(), 1.0);
        let e = CoordinateMap::ExpDecay { lambda: 1.0, mu_hat: 2.0 };
        assert!((map_coordinate(&e, 2f64.ln()).unwrap() - 1.0).abs() < 1e-15);
        assert!(map_coordinate(&CoordinateMap::Linear { lambda: 1.0 }, -0.1).is_err());
        assert!(CoordinateMap::Power { lambda: 1.0, mu: 2.0 }.validate().is_err());
    }

    #[test]
    fn normalization_examples() {
        assert!((normalization(&coulomb1(0, 1.0), 0).unwrap() - 1.0).abs() < 1e-15);
        let q = BasisSpec::new(
            CoordinateMap::Quadratic { lambda: 1.0 },
            BasisKind::Laguerre { alpha: 1.0, beta: 0.5, nu: 0.0 },
            Some(0),
        )
        .unwrap();
        assert!((normalization(&q, 0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let j = BasisSpec::new(
            CoordinateMap::Logistic { lambda: 1.0 },
            BasisKind::Jacobi { alpha: 1.0, beta: 1.0, mu: 0.0, nu: 0.0 },
            Some(0),
        )
        .unwrap();
        assert!((normalization(&j, 0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn vanishes_at_origin() {
        assert_eq!(basis_eval(&coulomb1(0, 1.0), 0, 0.0).unwrap(), 0.0);
        assert_eq!(basis_eval(&coulomb1(0, 1.0), 0, 1e4).unwrap(), 0.0);
        let h = BasisSpec::new(
            CoordinateMap::Logistic { lambda: 1.0 },
            BasisKind::Jacobi { alpha: 1.0, beta: 0.5, mu: 1.0, nu: 1.0 },
            Some(0),
        )
        .unwrap();
        assert_eq!(basis_eval(&h, 2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn square_integrability_rejects_negative_power_at_s_wave() {
        // α = 0 is not allowed; α small with μ < 0 fails 2α + 1/μ > 0
        let s = BasisSpec::new(
            CoordinateMap::Power { lambda: 1.0, mu: -1.0 },
            BasisKind::Laguerre { alpha: 0.25, beta: 0.5, nu: 1.0 },
            Some(0),
        );
        assert!(s.is_err());
    }

    #[test]
    fn round_trip_maps() {
        let maps = [
            CoordinateMap::Linear { lambda: 1.3 },
            CoordinateMap::Quadratic { lambda: 0.7 },
            CoordinateMap::Power { lambda: 0.9, mu: -1.5 },
            CoordinateMap::Power { lambda: 0.9, mu: 3.5 },
            CoordinateMap::ExpDecay { lambda: 1.1, mu_hat: 3.0 },
            CoordinateMap::Logistic { lambda: 0.6 },
            CoordinateMap::Tanh { lambda: 2.0 },
        ];
        for m in maps {
            for &r in &[1e-3, 0.2, 1.0, 4.5, 17.0] {
                let rr = if m.config_space() == ConfigSpace::FullLine { r - 2.0 } else { r };
                let p = map_point(&m, rr).unwrap();
                let back = inverse_map(&m, &p).unwrap();
                assert!((back - rr).abs() <= 1e-12 * rr.abs().max(1.0), "{m:?} r={rr} back={back}");
            }
        }
    }
}
