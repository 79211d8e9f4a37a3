//! Tridiagonal representations ⟨φ_n|H - E|φ_m⟩ for the twelve solvable cases.
//!
//! Each representation stores the scaled sequences a_n, b_n, the scalar y
//! and the overall factor κ separately, so that
//! `κ ⟨φ_n|H - E|φ_m⟩ = (a_n - y) δ_{nm} + b_n δ_{n,m-1} + b_{n-1} δ_{n,m+1}`.
//! The Hamiltonian is `-½ d²/dr² + ℓ(ℓ+1)/(2r²) + V(r)` in atomic units.

use crate::basisgen::{BasisKind, BasisSpec, CoordinateMap};
use crate::eigen::SymTridiag;
use crate::error::{domain, param, Error, Result};
use crate::orthopoly::jacobi_half_orthonormal;
use serde::Serialize;

pub use crate::basisgen::overlap_matrix;

/// The potential/basis pairings with their physical parameters.
///
/// Optional `nu`/`mu` fields are free basis parameters; `None` selects the
/// value that makes the representation's y vanish (or the energy-matched one).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "case")]
pub enum PotentialCase {
    /// V = Z/r on the x = λr basis; λ is chosen by the request.
    #[serde(rename = "coulomb1")]
    CoulombPlain { z: f64 },
    /// V = Z/r + B/r², basis scale λ = √(-8E).
    #[serde(rename = "coulomb2")]
    CoulombBarrier { z: f64, b: f64, nu: Option<f64> },
    /// V = ½Ω²r² on the x = (λr)² basis; λ is chosen by the request.
    #[serde(rename = "oscillator1")]
    Oscillator { omega: f64 },
    /// V = ½λ⁴r² + B/r².
    #[serde(rename = "oscillator2")]
    OscillatorBarrier { lambda: f64, b: f64, nu: Option<f64> },
    /// V = (λr)^{-2} [A(λr)^μ + ½B(λr)^{2μ}] at E = 0.
    #[serde(rename = "powerlaw1")]
    PowerLaw1 { mu: f64, lambda: f64, a: f64, b: f64 },
    /// V = (λr)^{-2} [A + ½B(λr)^μ + ½(μλ/2)²(λr)^{2μ}] at E = 0.
    #[serde(rename = "powerlaw2")]
    PowerLaw2 { mu: f64, lambda: f64, a: f64, b: f64, nu: Option<f64> },
    /// V = C/(e^{λr}-1)² + A/(e^{λr}-1) + B e^{-λr}, C = λ²(ν²-1)/8.
    #[serde(rename = "hulthen1")]
    Hulthen1 { lambda: f64, a: f64, b: f64, nu: f64 },
    /// V = A/(e^{λr}-1) + B e^{λr}/(e^{λr}-1)².
    #[serde(rename = "hulthen2")]
    Hulthen2 { lambda: f64, a: f64, b: f64, nu: Option<f64> },
    /// V = C/(e^{λr}-1)² + A/(e^{λr}-1) + B e^{λr}/(e^{λr}-1), C = λ²(ν²-1)/8.
    #[serde(rename = "hulthen3")]
    Hulthen3 { lambda: f64, a: f64, b: f64, nu: f64, mu: Option<f64> },
    /// V = Aμ̂e^{-λr} + Bμ̂²e^{-2λr} on the whole line.
    #[serde(rename = "morse1")]
    Morse1 { lambda: f64, a: f64, b: f64, mu_hat: f64 },
    /// V = Aμ̂e^{-λr} + ½(μ̂λ/2)²e^{-2λr} on the whole line.
    #[serde(rename = "morse2")]
    Morse2 { lambda: f64, a: f64, mu_hat: f64, nu: Option<f64> },
    /// V = C tanh λr + A/cosh²λr + ½B(1 + tanh λr)/cosh²λr on the whole line,
    /// C = (λμ/2)² - (λν/2)², with E fixed at -(λμ/2)² - (λν/2)².
    #[serde(rename = "rosenmorse")]
    RosenMorse { lambda: f64, a: f64, b: f64, mu: f64, nu: f64 },
}

impl PotentialCase {
    pub fn name(&self) -> &'static str {
        match self {
            PotentialCase::CoulombPlain { .. } => "coulomb1",
            PotentialCase::CoulombBarrier { .. } => "coulomb2",
            PotentialCase::Oscillator { .. } => "oscillator1",
            PotentialCase::OscillatorBarrier { .. } => "oscillator2",
            PotentialCase::PowerLaw1 { .. } => "powerlaw1",
            PotentialCase::PowerLaw2 { .. } => "powerlaw2",
            PotentialCase::Hulthen1 { .. } => "hulthen1",
            PotentialCase::Hulthen2 { .. } => "hulthen2",
            PotentialCase::Hulthen3 { .. } => "hulthen3",
            PotentialCase::Morse1 { .. } => "morse1",
            PotentialCase::Morse2 { .. } => "morse2",
            PotentialCase::RosenMorse { .. } => "rosenmorse",
        }
    }

    /// Whether the configuration space is the whole line (no centrifugal term).
    pub fn full_line(&self) -> bool {
        matches!(
            self,
            PotentialCase::Morse1 { .. } | PotentialCase::Morse2 { .. } | PotentialCase::RosenMorse { .. }
        )
    }

    /// Only S-waves are exactly tridiagonal for these cases.
    pub fn s_wave_only(&self) -> bool {
        matches!(
            self,
            PotentialCase::Hulthen1 { .. } | PotentialCase::Hulthen2 { .. } | PotentialCase::Hulthen3 { .. }
        ) || self.full_line()
    }

    fn values(&self) -> Vec<(&'static str, Option<f64>)> {
        use PotentialCase::*;
        match *self {
            CoulombPlain { z } => vec![("Z", Some(z))],
            CoulombBarrier { z, b, nu } => vec![("Z", Some(z)), ("B", Some(b)), ("nu", nu)],
            Oscillator { omega } => vec![("omega", Some(omega))],
            OscillatorBarrier { lambda, b, nu } => vec![("lambda", Some(lambda)), ("B", Some(b)), ("nu", nu)],
            PowerLaw1 { mu, lambda, a, b } => {
                vec![("mu", Some(mu)), ("lambda", Some(lambda)), ("A", Some(a)), ("B", Some(b))]
            }
            PowerLaw2 { mu, lambda, a, b, nu } => vec![
                ("mu", Some(mu)),
                ("lambda", Some(lambda)),
                ("A", Some(a)),
                ("B", Some(b)),
                ("nu", nu),
            ],
            Hulthen1 { lambda, a, b, nu } => {
                vec![("lambda", Some(lambda)), ("A", Some(a)), ("B", Some(b)), ("nu", Some(nu))]
            }
            Hulthen2 { lambda, a, b, nu } => vec![("lambda", Some(lambda)), ("A", Some(a)), ("B", Some(b)), ("nu", nu)],
            Hulthen3 { lambda, a, b, nu, mu } => vec![
                ("lambda", Some(lambda)),
                ("A", Some(a)),
                ("B", Some(b)),
                ("nu", Some(nu)),
                ("mu", mu),
            ],
            Morse1 { lambda, a, b, mu_hat } => vec![
                ("lambda", Some(lambda)),
                ("A", Some(a)),
                ("B", Some(b)),
                ("mu_hat", Some(mu_hat)),
            ],
            Morse2 { lambda, a, mu_hat, nu } => {
                vec![("lambda", Some(lambda)), ("A", Some(a)), ("mu_hat", Some(mu_hat)), ("nu", nu)]
            }
            RosenMorse { lambda, a, b, mu, nu } => vec![
                ("lambda", Some(lambda)),
                ("A", Some(a)),
                ("B", Some(b)),
                ("mu", Some(mu)),
                ("nu", Some(nu)),
            ],
        }
    }

    /// Finite parameters, positive scales.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.values() {
            if let Some(v) = v {
                if !v.is_finite() {
                    return param(format!("{}: {name} must be finite, got {v}", self.name()));
                }
            }
        }
        if let Some(l) = self.case_lambda() {
            if l <= 0.0 {
                return param(format!("{}: λ must be positive, got {l}", self.name()));
            }
        }
        match *self {
            PotentialCase::PowerLaw1 { mu, .. } | PotentialCase::PowerLaw2 { mu, .. }
                if mu == 0.0 || mu == 1.0 || mu == 2.0 =>
            {
                param(format!("power-law exponent μ = {mu} is excluded (μ ∉ {{0, 1, 2}})"))
            }
            PotentialCase::Morse1 { mu_hat, .. } | PotentialCase::Morse2 { mu_hat, .. } if mu_hat <= 0.0 => {
                param(format!("Morse scale μ̂ must be positive, got {mu_hat}"))
            }
            PotentialCase::Oscillator { omega } if omega <= 0.0 => {
                param(format!("oscillator frequency must be positive, got {omega}"))
            }
            _ => Ok(()),
        }
    }

    /// λ when the case fixes it; `None` for the two cases where it is a free basis scale
    /// and for the barrier Coulomb case where it follows from E.
    pub fn case_lambda(&self) -> Option<f64> {
        use PotentialCase::*;
        match *self {
            CoulombPlain { .. } | CoulombBarrier { .. } | Oscillator { .. } => None,
            OscillatorBarrier { lambda, .. }
            | PowerLaw1 { lambda, .. }
            | PowerLaw2 { lambda, .. }
            | Hulthen1 { lambda, .. }
            | Hulthen2 { lambda, .. }
            | Hulthen3 { lambda, .. }
            | Morse1 { lambda, .. }
            | Morse2 { lambda, .. }
            | RosenMorse { lambda, .. } => Some(lambda),
        }
    }

    /// V(r), without the centrifugal term.
    pub fn potential(&self, r: f64) -> f64 {
        use PotentialCase::*;
        match *self {
            CoulombPlain { z } => z / r,
            CoulombBarrier { z, b, .. } => z / r + b / (r * r),
            Oscillator { omega } => 0.5 * omega * omega * r * r,
            OscillatorBarrier { lambda, b, .. } => 0.5 * lambda.powi(4) * r * r + b / (r * r),
            PowerLaw1 { mu, lambda, a, b } => {
                let t = lambda * r;
                let tm = t.powf(mu);
                (a * tm + 0.5 * b * tm * tm) / (t * t)
            }
            PowerLaw2 { mu, lambda, a, b, .. } => {
                let t = lambda * r;
                let tm = t.powf(mu);
                let k = 0.5 * mu * lambda;
                (a + 0.5 * b * tm + 0.5 * k * k * tm * tm) / (t * t)
            }
            Hulthen1 { lambda, a, b, nu } => {
                let c = hulthen_c(lambda, nu);
                let q = 1.0 / (lambda * r).exp_m1();
                c * q * q + a * q + b * (-lambda * r).exp()
            }
            Hulthen2 { lambda, a, b, .. } => {
                let em = (lambda * r).exp_m1();
                // e^{λr}/(e^{λr}-1)² = 1/((e^{λr}-1)(1-e^{-λr}))
                a / em + b / (em * -(-lambda * r).exp_m1())
            }
            Hulthen3 { lambda, a, b, nu, .. } => {
                let c = hulthen_c(lambda, nu);
                let q = 1.0 / (lambda * r).exp_m1();
                c * q * q + a * q + b / -(-lambda * r).exp_m1()
            }
            Morse1 { lambda, a, b, mu_hat } => {
                let e = mu_hat * (-lambda * r).exp();
                a * e + b * e * e
            }
            Morse2 { lambda, a, mu_hat, .. } => {
                let e = mu_hat * (-lambda * r).exp();
                let k = 0.5 * lambda;
                a * e + 0.5 * k * k * e * e
            }
            RosenMorse { lambda, a, b, mu, nu } => {
                let t = lambda * r;
                let sech2 = 1.0 / t.cosh().powi(2);
                rosen_morse_c(lambda, mu, nu) * t.tanh() + a * sech2 + 0.5 * b * sech2 * (1.0 + t.tanh())
            }
        }
    }
}

/// C = λ²(ν²-1)/8, the strength of the squared Hulthén term.
pub fn hulthen_c(lambda: f64, nu: f64) -> f64 {
    lambda * lambda * (nu * nu - 1.0) / 8.0
}

pub fn rosen_morse_c(lambda: f64, mu: f64, nu: f64) -> f64 {
    (0.5 * lambda * mu).powi(2) - (0.5 * lambda * nu).powi(2)
}

pub fn rosen_morse_energy(lambda: f64, mu: f64, nu: f64) -> f64 {
    -(0.5 * lambda * mu).powi(2) - (0.5 * lambda * nu).powi(2)
}

/// What to build: angular momentum, the free basis scale (Coulomb and
/// oscillator only), the energy and the matrix size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RepRequest {
    pub ell: u32,
    pub lambda: Option<f64>,
    pub energy: f64,
    pub size: usize,
}

impl RepRequest {
    pub fn new(ell: u32, lambda: Option<f64>, energy: f64, size: usize) -> Self {
        RepRequest {
            ell,
            lambda,
            energy,
            size,
        }
    }
}

/// H and S with ⟨φ_n|H - E|φ_m⟩ = H - E S (physical units, no κ).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ELinearSplit {
    pub h: SymTridiag,
    pub s: SymTridiag,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TridiagonalRep {
    pub case: PotentialCase,
    pub ell: u32,
    pub size: usize,
    /// a_0 .. a_{N-1}
    pub diag: Vec<f64>,
    /// b_0 .. b_{N-2}
    pub off: Vec<f64>,
    pub y: f64,
    /// κ with κ⟨H - E⟩ equal to the scaled entries.
    pub scale: f64,
    pub energy: f64,
    pub basis: BasisSpec,
    /// Deformation parameter γ of the Hulthén and Rosen-Morse recursions.
    pub gamma: Option<f64>,
    pub e_linear: Option<ELinearSplit>,
}

impl TridiagonalRep {
    /// ⟨φ_n|H - E|φ_m⟩ as a symmetric tridiagonal matrix.
    pub fn wave_matrix(&self) -> SymTridiag {
        SymTridiag {
            diag: self.diag.iter().map(|a| (a - self.y) / self.scale).collect(),
            off: self.off.iter().map(|b| b / self.scale).collect(),
        }
    }

    /// Scaled entry (a_n - y)δ + b_n δ_{n,m-1} + b_{n-1} δ_{n,m+1}.
    pub fn scaled_entry(&self, n: usize, m: usize) -> f64 {
        if n == m {
            self.diag[n] - self.y
        } else if n + 1 == m {
            self.off[n]
        } else if m + 1 == n {
            self.off[m]
        } else {
            0.0
        }
    }

    /// Physical matrix element ⟨φ_n|H - E|φ_m⟩.
    pub fn entry(&self, n: usize, m: usize) -> f64 {
        self.scaled_entry(n, m) / self.scale
    }

    /// Largest magnitude among the physical entries.
    pub fn max_entry(&self) -> f64 {
        let w = self.wave_matrix();
        w.diag.iter().chain(w.off.iter()).fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn lambda(&self) -> f64 {
        self.basis.map.lambda()
    }
}

fn sqrt_lag(n: usize, nu: f64) -> f64 {
    let nf = n as f64;
    ((nf + 1.0) * (nf + nu + 1.0)).sqrt()
}

fn check_ell(case: &PotentialCase, ell: u32) -> Result<()> {
    if case.s_wave_only() && ell != 0 {
        return domain(format!(
            "{} is tridiagonal only for the S-wave (ℓ = 0), got ℓ = {ell}",
            case.name()
        ));
    }
    Ok(())
}

fn bound_energy_scale(name: &str, energy: f64) -> Result<f64> {
    if !(energy < 0.0) {
        return domain(format!("{name} needs E < 0 so that the decay scale is real, got E = {energy}"));
    }
    Ok((-2.0 * energy).sqrt())
}

fn nu_default(name: &str, radicand: f64, shift_scale: f64) -> Result<f64> {
    // ν = shift_scale·√radicand - 1
    if radicand < 0.0 {
        return domain(format!("{name}: default ν needs a nonnegative square-root argument, got {radicand}"));
    }
    Ok(shift_scale * radicand.sqrt() - 1.0)
}

/// Builds the representation for any case.
pub fn representation(case: &PotentialCase, req: &RepRequest) -> Result<TridiagonalRep> {
    let mut rep = build(case, req)?;
    rep.e_linear = e_linear_split(case, req, &rep)?;
    Ok(rep)
}

/// Fixes the free parameters at the values a build resolved, so the same basis
/// is used at other energies.
fn pin_case(case: &PotentialCase, rep: &TridiagonalRep) -> PotentialCase {
    match (*case, rep.basis.kind) {
        (PotentialCase::Hulthen3 { lambda, a, b, nu, .. }, BasisKind::Jacobi { mu, .. }) => {
            PotentialCase::Hulthen3 {
                lambda,
                a,
                b,
                nu,
                mu: Some(mu),
            }
        }
        (PotentialCase::OscillatorBarrier { lambda, b, .. }, BasisKind::Laguerre { nu, .. }) => {
            PotentialCase::OscillatorBarrier { lambda, b, nu: Some(nu) }
        }
        (PotentialCase::Morse2 { lambda, a, mu_hat, .. }, BasisKind::Laguerre { nu, .. }) => PotentialCase::Morse2 {
            lambda,
            a,
            mu_hat,
            nu: Some(nu),
        },
        (c, _) => c,
    }
}

fn e_linear_split(case: &PotentialCase, req: &RepRequest, rep: &TridiagonalRep) -> Result<Option<ELinearSplit>> {
    let affine = matches!(
        case,
        PotentialCase::CoulombPlain { .. }
            | PotentialCase::Oscillator { .. }
            | PotentialCase::OscillatorBarrier { .. }
            | PotentialCase::Hulthen3 { .. }
            | PotentialCase::Morse2 { .. }
    );
    if !affine {
        return Ok(None);
    }
    let pinned = pin_case(case, rep);
    let at = |e: f64| -> Result<SymTridiag> { Ok(build(&pinned, &RepRequest { energy: e, ..*req })?.wave_matrix()) };
    let h = at(0.0)?;
    let one = at(1.0)?;
    let s = SymTridiag {
        diag: h.diag.iter().zip(&one.diag).map(|(a, b)| a - b).collect(),
        off: h.off.iter().zip(&one.off).map(|(a, b)| a - b).collect(),
    };
    Ok(Some(ELinearSplit { h, s }))
}

struct Built {
    basis: BasisSpec,
    scale: f64,
    y: f64,
    energy: f64,
    gamma: Option<f64>,
    diag: Vec<f64>,
    off: Vec<f64>,
}

fn laguerre(map: CoordinateMap, alpha: f64, nu: f64, ell: Option<u32>) -> Result<BasisSpec> {
    BasisSpec::new(map, BasisKind::Laguerre { alpha, beta: 0.5, nu }, ell)
}

fn jacobi(map: CoordinateMap, alpha: f64, beta: f64, mu: f64, nu: f64, ell: Option<u32>) -> Result<BasisSpec> {
    BasisSpec::new(map, BasisKind::Jacobi { alpha, beta, mu, nu }, ell)
}

/// Dual-Hahn-type entries shared by Coulomb 2, oscillator 2, power law 2 and Morse 2:
/// a_n = (2n+ν+1)(n+ν/2+1+t) - n - ((ν+1)/2)² + shift, b_n = -(n+ν/2+1+t)√((n+1)(n+ν+1)).
fn dual_hahn_entries(size: usize, nu: f64, t: f64, shift: f64) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..size)
        .map(|n| {
            let nf = n as f64;
            (2.0 * nf + nu + 1.0) * (nf + 0.5 * nu + 1.0 + t) - nf - (0.5 * (nu + 1.0)).powi(2) + shift
        })
        .collect();
    let off = (0..size.saturating_sub(1))
        .map(|n| -(n as f64 + 0.5 * nu + 1.0 + t) * sqrt_lag(n, nu))
        .collect();
    (diag, off)
}

/// Pollaczek-type entries: a_n = (2n+ν+1)p + q, b_n = r√((n+1)(n+ν+1)).
fn pollaczek_entries(size: usize, nu: f64, p: f64, q: f64, r: f64) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..size).map(|n| (2.0 * n as f64 + nu + 1.0) * p + q).collect();
    let off = (0..size.saturating_sub(1)).map(|n| r * sqrt_lag(n, nu)).collect();
    (diag, off)
}

fn build(case: &PotentialCase, req: &RepRequest) -> Result<TridiagonalRep> {
    case.validate()?;
    check_ell(case, req.ell)?;
    let n = req.size;
    if n == 0 {
        return domain("representation size must be at least 1");
    }
    let e = req.energy;
    if !e.is_finite() {
        return domain(format!("energy must be finite, got {e}"));
    }
    let l = req.ell as f64;
    let radial = Some(req.ell);
    let req_lambda = |name: &str| -> Result<f64> {
        match req.lambda {
            Some(v) if v.is_finite() && v > 0.0 => Ok(v),
            Some(v) => param(format!("{name}: basis scale λ must be positive, got {v}")),
            None => param(format!("{name}: the basis scale λ must be given")),
        }
    };
    use PotentialCase::*;
    let built = match *case {
        CoulombPlain { z } => {
            let lam = req_lambda("coulomb1")?;
            let nu = 2.0 * l + 1.0;
            let basis = laguerre(CoordinateMap::Linear { lambda: lam }, l + 1.0, nu, radial)?;
            let t = 2.0 * e / (lam * lam);
            let (diag, off) = pollaczek_entries(n, nu, 0.25 - t, 2.0 * z / lam, 0.25 + t);
            Built {
                basis,
                scale: 2.0 / (lam * lam),
                y: 0.0,
                energy: e,
                gamma: None,
                diag,
                off,
            }
        }
        CoulombBarrier { z, b, nu } => {
            let lam = 2.0 * bound_energy_scale("coulomb2", e)?;
            let nu = match nu {
                Some(v) => v,
                None => nu_default("coulomb2", (l + 0.5).powi(2) + 2.0 * b, 2.0)?,
            };
            let basis = laguerre(CoordinateMap::Linear { lambda: lam }, 0.5 * nu + 1.0, nu, radial)?;
            let (diag, off) = dual_hahn_entries(n, nu, 2.0 * z / lam, (l + 0.5).powi(2) + 2.0 * b);
            Built {
                basis,
                scale: 2.0 / (lam * lam),
                y: 0.0,
                energy: e,
                gamma: None,
                diag,
                off,
            }
        }
        Oscillator { omega } => {
            let lam = req_lambda("oscillator1")?;
            let nu = l + 0.5;
            let basis = laguerre(CoordinateMap::Quadratic { lambda: lam }, 0.5 * (nu + 0.5), nu, radial)?;
            let w = omega * omega / lam.powi(4);
            let (diag, off) = pollaczek_entries(n, nu, w + 1.0, -2.0 * e / (lam * lam), -(w - 1.0));
            Built {
                basis,
                scale: 2.0 / (lam * lam),
                y: 0.0,
                energy: e,
                gamma: None,
                diag,
                off,
            }
        }
        OscillatorBarrier { lambda, b, nu } => {
            let nu = match nu {
                Some(v) => v,
                None => nu_default("oscillator2", (l + 0.5).powi(2) + 2.0 * b, 1.0)?,
            };
            let basis = laguerre(CoordinateMap::Quadratic { lambda }, 0.5 * (nu + 1.5), nu, radial)?;
            let tau = e / (2.0 * lambda * lambda);
            let (diag, off) = dual_hahn_entries(n, nu, -tau, (0.5 * (l + 0.5)).powi(2) + 0.5 * b);
            Built {
                basis,
                scale: 1.0 / (2.0 * lambda * lambda),
                y: 0.0,
                energy: e,
                gamma: None,
                diag,
                off,
            }
        }
        PowerLaw1 { mu, lambda, a, b } => {
            require_zero_energy("powerlaw1", e)?;
            let s = (mu * lambda).powi(2);
            let nu = (2.0 * l + 1.0) / mu.abs();
            let basis = laguerre(CoordinateMap::Power { lambda, mu }, 0.5 * (nu + 1.0 / mu), nu, radial)?;
            let (diag, off) = pollaczek_entries(n, nu, b / s + 0.25, 2.0 * a / s, -(b / s - 0.25));
            Built {
                basis,
                scale: 2.0 / s,
                y: 0.0,
                energy: 0.0,
                gamma: None,
                diag,
                off,
            }
        }
        PowerLaw2 { mu, lambda, a, b, nu } => {
            require_zero_energy("powerlaw2", e)?;
            let s = (mu * lambda).powi(2);
            let lm = ((l + 0.5) / mu).powi(2);
            let nu = match nu {
                Some(v) => v,
                None => nu_default("powerlaw2", lm + 2.0 * a / s, 2.0)?,
            };
            let basis = laguerre(
                CoordinateMap::Power { lambda, mu },
                0.5 * (1.0 + nu + 1.0 / mu),
                nu,
                radial,
            )?;
            let (diag, off) = dual_hahn_entries(n, nu, b / s, lm + 2.0 * a / s);
            Built {
                basis,
                scale: 2.0 / s,
                y: 0.0,
                energy: 0.0,
                gamma: None,
                diag,
                off,
            }
        }
        Hulthen1 { lambda, a, b, nu } => {
            let k = bound_energy_scale("hulthen1", e)?;
            let mu = 2.0 * k / lambda;
            let basis = jacobi(CoordinateMap::Logistic { lambda }, 0.5 * (nu + 1.0), 0.5 * mu, mu, nu, radial)?;
            let s = mu + nu;
            let g = 2.0 * b / (lambda * lambda);
            let diag = (0..n)
                .map(|i| {
                    let nf = i as f64;
                    nf * (nf + s + 1.0)
                        + 0.5 * (mu + 1.0) * (nu + 1.0)
                        + 2.0 * a / (lambda * lambda)
                        + g * jacobi_half_orthonormal(i, mu, nu).0
                })
                .collect();
            let off = (0..n.saturating_sub(1))
                .map(|i| g * jacobi_half_orthonormal(i, mu, nu).1)
                .collect();
            Built {
                basis,
                scale: 2.0 / (lambda * lambda),
                y: 0.0,
                energy: e,
                gamma: (b != 0.0).then(|| lambda * lambda / (2.0 * b)),
                diag,
                off,
            }
        }
        Hulthen2 { lambda, a, b, nu } => {
            let k = bound_energy_scale("hulthen2", e)?;
            let mu = 2.0 * k / lambda;
            let l2 = lambda * lambda;
            let nu = match nu {
                Some(v) => v,
                None => nu_default("hulthen2", 1.0 + 8.0 * b / l2, 1.0)?,
            };
            let basis = jacobi(CoordinateMap::Logistic { lambda }, 1.0 + 0.5 * nu, 0.5 * mu, mu, nu, radial)?;
            let gamma = 2.0 * (e + a) / l2;
            let y = (0.5 * (nu + 1.0)).powi(2) - 2.0 * b / l2 - 0.25;
            let (diag, off) = deformed_entries(n, mu, nu, gamma, false);
            Built {
                basis,
                scale: 1.0 / l2,
                y,
                energy: e,
                gamma: Some(gamma),
                diag,
                off,
            }
        }
        Hulthen3 { lambda, a, b, nu, mu } => {
            let l2 = lambda * lambda;
            let mu = match mu {
                Some(v) => v,
                None => {
                    if !(e < b) {
                        return domain(format!("hulthen3: default μ needs E < B, got E = {e}, B = {b}"));
                    }
                    2.0 / lambda * (2.0 * (b - e)).sqrt() - 1.0
                }
            };
            let basis = jacobi(
                CoordinateMap::Logistic { lambda },
                0.5 * (nu + 1.0),
                0.5 * (mu + 1.0),
                mu,
                nu,
                radial,
            )?;
            let gamma = 2.0 * (e + a - hulthen_c(lambda, nu)) / l2;
            let y = 2.0 * (e - b) / l2 + (0.5 * (mu + 1.0)).powi(2);
            let (diag, off) = deformed_entries(n, mu, nu, gamma, true);
            Built {
                basis,
                scale: 1.0 / l2,
                y,
                energy: e,
                gamma: Some(gamma),
                diag,
                off,
            }
        }
        Morse1 { lambda, a, b, mu_hat } => {
            let k = bound_energy_scale("morse1", e)?;
            let nu = 2.0 * k / lambda;
            let l2 = lambda * lambda;
            let basis = laguerre(CoordinateMap::ExpDecay { lambda, mu_hat }, 0.5 * nu, nu, None)?;
            let (diag, off) = pollaczek_entries(n, nu, 2.0 * b / l2 + 0.25, 2.0 * a / l2, -(2.0 * b / l2 - 0.25));
            Built {
                basis,
                scale: 2.0 / l2,
                y: 0.0,
                energy: e,
                gamma: None,
                diag,
                off,
            }
        }
        Morse2 { lambda, a, mu_hat, nu } => {
            let l2 = lambda * lambda;
            let nu = nu.unwrap_or(-2.0 * (1.0 + 2.0 * a / l2));
            let basis = laguerre(CoordinateMap::ExpDecay { lambda, mu_hat }, 0.5 * (nu + 1.0), nu, None)?;
            let (diag, off) = dual_hahn_entries(n, nu, 2.0 * a / l2, -2.0 * e / l2);
            Built {
                basis,
                scale: 2.0 / l2,
                y: 0.0,
                energy: e,
                gamma: None,
                diag,
                off,
            }
        }
        RosenMorse { lambda, a, b, mu, nu } => {
            let l2 = lambda * lambda;
            let basis = jacobi(CoordinateMap::Tanh { lambda }, 0.5 * nu, 0.5 * mu, mu, nu, None)?;
            let s = mu + nu;
            let g = 2.0 * b / l2;
            let diag = (0..n)
                .map(|i| {
                    0.25 * (2.0 * i as f64 + s + 1.0).powi(2) + g * jacobi_half_orthonormal(i, mu, nu).0 + 2.0 * a / l2
                        - 0.25
                })
                .collect();
            let off = (0..n.saturating_sub(1))
                .map(|i| g * jacobi_half_orthonormal(i, mu, nu).1)
                .collect();
            Built {
                basis,
                scale: 2.0 / l2,
                y: 0.0,
                energy: rosen_morse_energy(lambda, mu, nu),
                gamma: (b != 0.0).then(|| l2 / (2.0 * b)),
                diag,
                off,
            }
        }
    };
    if built.diag.iter().chain(built.off.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!(
            "{}: representation entries are not finite for these parameters",
            case.name()
        )));
    }
    Ok(TridiagonalRep {
        case: *case,
        ell: req.ell,
        size: n,
        diag: built.diag,
        off: built.off,
        y: built.y,
        scale: built.scale,
        energy: built.energy,
        basis: built.basis,
        gamma: built.gamma,
        e_linear: None,
    })
}

fn require_zero_energy(name: &str, e: f64) -> Result<()> {
    if e != 0.0 {
        return domain(format!("{name} is tridiagonal only at zero energy, got E = {e}"));
    }
    Ok(())
}

/// Entries of the Hulthén 2 (`swap = false`) and Hulthén 3 (`swap = true`) matrices:
/// a_n = -n(n+μ)/(2n+s) + J_d F_{n+1}, b_n = ±J_o F_{n+1}, F_k = ¼(2k+s)² + γ.
/// Case 3 uses the (1+x)/2 coefficients with μ and ν exchanged and a minus sign.
pub(crate) fn deformed_entries(size: usize, mu: f64, nu: f64, gamma: f64, swap: bool) -> (Vec<f64>, Vec<f64>) {
    let s = mu + nu;
    let (p, q) = if swap { (nu, mu) } else { (mu, nu) };
    let f = |k: usize| 0.25 * (2.0 * k as f64 + s).powi(2) + gamma;
    let sign = if swap { -1.0 } else { 1.0 };
    let diag = (0..size)
        .map(|i| {
            let nf = i as f64;
            let lead = if i == 0 { 0.0 } else { -nf * (nf + p) / (2.0 * nf + s) };
            lead + jacobi_half_orthonormal(i, p, q).0 * f(i + 1)
        })
        .collect();
    let off = (0..size.saturating_sub(1))
        .map(|i| sign * jacobi_half_orthonormal(i, p, q).1 * f(i + 1))
        .collect();
    (diag, off)
}

fn expect_family(case: &PotentialCase, ok: bool, family: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{} is not a {family} case", case.name())))
    }
}

pub fn coulomb_rep(case: &PotentialCase, req: &RepRequest) -> Result<TridiagonalRep> {
    expect_family(
        case,
        matches!(case, PotentialCase::CoulombPlain { .. } | PotentialCase::CoulombBarrier { .. }),
        "Coulomb",
    )?;
    representation(case, req)
}

pub fn oscillator_rep(case: &PotentialCase, req: &RepRequest) -> Result<TridiagonalRep> {
    expect_family(
        case,
        matches!(case, PotentialCase::Oscillator { .. } | PotentialCase::OscillatorBarrier { .. }),
        "oscillator",
    )?;
    representation(case, req)
}

/// Power-law representations exist only at E = 0; `req.energy` must be zero.
pub fn powerlaw_rep(case: &PotentialCase, req: &RepRequest) -> Result<TridiagonalRep> {
    expect_family(
        case,
        matches!(case, PotentialCase::PowerLaw1 { .. } | PotentialCase::PowerLaw2 { .. }),
        "power-law",
    )?;
    representation(case, req)
}

pub fn hulthen_rep(case: &PotentialCase, req: &RepRequest) -> Result<TridiagonalRep> {
    expect_family(
        case,
        matches!(
            case,
            PotentialCase::Hulthen1 { .. } | PotentialCase::Hulthen2 { .. } | PotentialCase::Hulthen3 { .. }
        ),
        "Hulthén",
    )?;
    representation(case, req)
}

pub fn morse_rep(case: &PotentialCase, req: &RepRequest) -> Result<TridiagonalRep> {
    expect_family(
        case,
        matches!(case, PotentialCase::Morse1 { .. } | PotentialCase::Morse2 { .. }),
        "Morse",
    )?;
    representation(case, req)
}

/// The energy is fixed by (μ, ν); `req.energy` is ignored.
pub fn rosenmorse_rep(case: &PotentialCase, req: &RepRequest) -> Result<TridiagonalRep> {
    expect_family(case, matches!(case, PotentialCase::RosenMorse { .. }), "Rosen-Morse")?;
    representation(case, req)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coulomb_on_ladder_point() {
        let rep = representation(
            &PotentialCase::CoulombPlain { z: -1.0 },
            &RepRequest::new(0, Some(2.0), -0.5, 6),
        )
        .unwrap();
        assert!(rep.off.iter().all(|b| b.abs() < 1e-15));
        for (n, a) in rep.diag.iter().enumerate() {
            assert!((a - n as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn free_coulomb_entries() {
        let rep = representation(&PotentialCase::CoulombPlain { z: 0.0 }, &RepRequest::new(1, Some(1.0), 0.0, 4)).unwrap();
        // ⟨φ_0|T|φ_0⟩ = ¼ by hand at ℓ = 0; scaled entries carry κ = 2
        for n in 0..4 {
            let nf = n as f64;
            assert!((rep.diag[n] - 0.5 * (nf + 2.0)).abs() < 1e-14);
        }
        for n in 0..3 {
            let nf = n as f64;
            assert!((rep.off[n] - 0.25 * ((nf + 1.0) * (nf + 4.0)).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn e_linear_reproduces_entries() {
        let cases = [
            (PotentialCase::CoulombPlain { z: -0.7 }, RepRequest::new(1, Some(1.3), -0.2, 7)),
            (PotentialCase::Oscillator { omega: 1.4 }, RepRequest::new(2, Some(0.9), 2.1, 7)),
            (
                PotentialCase::OscillatorBarrier { lambda: 1.1, b: 0.3, nu: None },
                RepRequest::new(0, None, 1.7, 7),
            ),
            (
                PotentialCase::Hulthen3 { lambda: 0.8, a: -1.0, b: 0.4, nu: 1.5, mu: None },
                RepRequest::new(0, None, -0.6, 7),
            ),
            (
                PotentialCase::Morse2 { lambda: 1.0, a: -2.0, mu_hat: 1.5, nu: None },
                RepRequest::new(0, None, -0.9, 7),
            ),
        ];
        for (case, req) in cases {
            let rep = representation(&case, &req).unwrap();
            let split = rep.e_linear.clone().unwrap();
            let w = rep.wave_matrix();
            let e = rep.energy;
            for i in 0..w.len() {
                let v = split.h.diag[i] - e * split.s.diag[i];
                assert!((v - w.diag[i]).abs() <= 1e-13 * w.diag[i].abs().max(1.0), "{case:?}");
            }
            for i in 0..w.off.len() {
                let v = split.h.off[i] - e * split.s.off[i];
                assert!((v - w.off[i]).abs() <= 1e-13 * w.off[i].abs().max(1.0), "{case:?}");
            }
            // S is the overlap of the basis actually used
            let s = overlap_matrix(&rep.basis, req.size).unwrap();
            for i in 0..s.len() {
                assert!((s.diag[i] - split.s.diag[i]).abs() < 1e-12, "{case:?} diag {i}");
            }
            for i in 0..s.off.len() {
                assert!((s.off[i] - split.s.off[i]).abs() < 1e-12, "{case:?} off {i}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        let bad = representation(
            &PotentialCase::CoulombBarrier { z: -1.0, b: 0.0, nu: None },
            &RepRequest::new(0, None, 0.1, 4),
        );
        assert!(matches!(bad, Err(Error::Domain(_))));
        let bad = representation(
            &PotentialCase::Hulthen1 { lambda: 1.0, a: -1.0, b: 0.0, nu: 1.0 },
            &RepRequest::new(1, None, -0.1, 4),
        );
        assert!(matches!(bad, Err(Error::Domain(_))));
        let bad = representation(
            &PotentialCase::PowerLaw1 { mu: 2.0, lambda: 1.0, a: 0.0, b: 0.0 },
            &RepRequest::new(0, None, 0.0, 4),
        );
        assert!(matches!(bad, Err(Error::ParameterDomain(_))));
        let bad = coulomb_rep(&PotentialCase::Oscillator { omega: 1.0 }, &RepRequest::new(0, Some(1.0), 0.0, 3));
        assert!(matches!(bad, Err(Error::Unsupported(_))));
    }
}
