//! Discrete spectra: closed-form ladders, the diagonalization conditions
//! b_n = 0 and a_n = y, and the finite-basis generalized eigenproblem.

use crate::eigen::{generalized_eigenvalues, SymTridiag};
use crate::error::{domain, Error, Result};
use crate::tridiag::{hulthen_c, rosen_morse_c, PotentialCase, TridiagonalRep};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    /// Bound-state energies.
    Energy,
    /// Coupling strengths that support a zero-energy state.
    CriticalCoupling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Numeric,
    FiniteDifference,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Level {
    pub n: usize,
    pub value: f64,
    /// Side-condition value tied to this level (λ_n, ν_n, ...), if any.
    pub side: Option<f64>,
    /// Estimated numerical error, for numeric results.
    pub error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub case: Option<PotentialCase>,
    pub kind: SpectrumKind,
    /// Name of the ladder quantity ("E", "A", "B").
    pub quantity: String,
    /// Name of the per-level side parameter, if one is reported.
    pub side_name: Option<String>,
    /// Parameter constraints the ladder relies on.
    pub constraints: Vec<String>,
    pub provenance: Provenance,
    pub levels: Vec<Level>,
    /// Why the ladder is empty or shorter than requested.
    pub reason: Option<String>,
}

impl SpectrumResult {
    pub fn values(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.value).collect()
    }
}

fn ladder(case: &PotentialCase, kind: SpectrumKind, quantity: &str, side_name: Option<&str>) -> SpectrumResult {
    SpectrumResult {
        case: Some(*case),
        kind,
        quantity: quantity.into(),
        side_name: side_name.map(Into::into),
        constraints: Vec::new(),
        provenance: Provenance::ClosedForm,
        levels: Vec::new(),
        reason: None,
    }
}

fn push(res: &mut SpectrumResult, value: f64, side: Option<f64>) {
    let n = res.levels.len();
    res.levels.push(Level {
        n,
        value,
        side,
        error: None,
    });
}

fn empty_because(mut res: SpectrumResult, why: impl Into<String>) -> SpectrumResult {
    res.levels.clear();
    res.reason = Some(why.into());
    res
}

/// Closed-form ladder of `case` at angular momentum `ell`, at most `n_max`
/// levels. Ladders that end (Hulthén, Morse, Rosen-Morse) stop early and say
/// why; cases without bound states return an empty ladder with a reason.
pub fn closed_form_spectrum(case: &PotentialCase, ell: u32, n_max: usize) -> Result<SpectrumResult> {
    use PotentialCase::*;
    case.validate()?;
    if case.s_wave_only() && ell != 0 {
        return domain(format!("{} has a closed-form ladder only for ℓ = 0", case.name()));
    }
    let l = ell as f64;
    let energy = SpectrumKind::Energy;
    let res = match *case {
        CoulombPlain { z } => {
            let mut res = ladder(case, energy, "E", Some("lambda"));
            res.constraints.push("lambda = lambda_n = 2|Z|/(n+l+1)".into());
            if z >= 0.0 {
                return Ok(empty_because(res, "no bound states for Z >= 0"));
            }
            for n in 0..n_max {
                let k = n as f64 + l + 1.0;
                push(&mut res, -0.5 * (z / k).powi(2), Some(2.0 * z.abs() / k));
            }
            res
        }
        CoulombBarrier { z, b, .. } => {
            let mut res = ladder(case, energy, "E", Some("lambda"));
            let rad = (l + 0.5).powi(2) + 2.0 * b;
            res.constraints.push("(nu+1)/2 = sqrt((l+1/2)^2 + 2B)".into());
            res.constraints.push("lambda = lambda_n = 2|Z|/(n+nu/2+1)".into());
            if rad < 0.0 {
                return Ok(empty_because(res, "(l+1/2)^2 + 2B < 0: the barrier makes the problem fall to the center"));
            }
            if z >= 0.0 {
                return Ok(empty_because(res, "no bound states for Z >= 0"));
            }
            for n in 0..n_max {
                let k = n as f64 + 0.5 + rad.sqrt();
                push(&mut res, -0.5 * (z / k).powi(2), Some(2.0 * z.abs() / k));
            }
            res
        }
        Oscillator { omega } => {
            let mut res = ladder(case, energy, "E", None);
            res.constraints.push(format!("lambda^2 = Omega = {omega}"));
            for n in 0..n_max {
                push(&mut res, omega * (2.0 * n as f64 + l + 1.5), None);
            }
            res
        }
        OscillatorBarrier { lambda, b, .. } => {
            let mut res = ladder(case, energy, "E", None);
            let rad = (l + 0.5).powi(2) + 2.0 * b;
            res.constraints.push("nu+1 = sqrt((l+1/2)^2 + 2B)".into());
            if rad < 0.0 {
                return Ok(empty_because(res, "(l+1/2)^2 + 2B < 0: the barrier makes the problem fall to the center"));
            }
            for n in 0..n_max {
                push(&mut res, lambda * lambda * (2.0 * n as f64 + 1.0 + rad.sqrt()), None);
            }
            res
        }
        PowerLaw1 { mu, lambda, .. } => {
            let mut res = ladder(case, SpectrumKind::CriticalCoupling, "A", None);
            let s = (mu * lambda).powi(2);
            let nu = (2.0 * l + 1.0) / mu.abs();
            res.constraints.push(format!("E = 0, B = (mu*lambda/2)^2 = {}", s / 4.0));
            for n in 0..n_max {
                push(&mut res, -0.25 * s * (2.0 * n as f64 + nu + 1.0), None);
            }
            res
        }
        PowerLaw2 { mu, lambda, a, .. } => {
            let mut res = ladder(case, SpectrumKind::CriticalCoupling, "B", Some("nu"));
            let s = (mu * lambda).powi(2);
            let rad = ((l + 0.5) / mu).powi(2) + 2.0 * a / s;
            res.constraints.push("E = 0, (nu+1)/2 = sqrt(((l+1/2)/mu)^2 + 2A/(mu*lambda)^2)".into());
            if rad < 0.0 {
                return Ok(empty_because(res, "((l+1/2)/mu)^2 + 2A/(mu*lambda)^2 < 0"));
            }
            let nu = 2.0 * rad.sqrt() - 1.0;
            for n in 0..n_max {
                push(&mut res, -s * (n as f64 + nu / 2.0 + 1.0), Some(nu));
            }
            res
        }
        Hulthen1 { lambda, a, b, nu } => {
            let mut res = ladder(case, energy, "E", Some("mu"));
            res.constraints.push("B = 0".into());
            if b != 0.0 {
                return Ok(empty_because(res, "a closed-form ladder needs B = 0"));
            }
            let g = 2.0 * (a - hulthen_c(lambda, nu)) / (lambda * lambda);
            hulthen_ladder(&mut res, n_max, lambda, 0.0, (nu.abs() + 1.0) / 2.0, g);
            res
        }
        Hulthen2 { lambda, a, b, .. } => {
            let mut res = ladder(case, energy, "E", Some("mu"));
            let rad = 1.0 + 8.0 * b / (lambda * lambda);
            res.constraints.push("nu = sqrt(1 + 8B/lambda^2) - 1".into());
            if rad < 0.0 {
                return Ok(empty_because(res, "1 + 8B/lambda^2 < 0"));
            }
            let nu = rad.sqrt() - 1.0;
            hulthen_ladder(&mut res, n_max, lambda, 0.0, nu / 2.0 + 1.0, 2.0 * a / (lambda * lambda));
            res
        }
        Hulthen3 { lambda, a, b, nu, .. } => {
            let mut res = ladder(case, energy, "E", Some("mu+1"));
            res.constraints.push("(mu+1)/2 = sqrt(2(B-E))/lambda".into());
            let g = 2.0 * (a + b - hulthen_c(lambda, nu)) / (lambda * lambda);
            hulthen_ladder(&mut res, n_max, lambda, b, (nu.abs() + 1.0) / 2.0, g);
            res
        }
        Morse1 { lambda, a, b, .. } => {
            let mut res = ladder(case, energy, "E", Some("nu"));
            let want = lambda * lambda / 8.0;
            res.constraints.push(format!("B = (lambda/2)^2/2 = {want}"));
            if (b - want).abs() > 1e-12 * want {
                return Ok(empty_because(res, format!("a closed-form ladder needs B = {want}")));
            }
            morse_ladder(&mut res, n_max, lambda, a);
            res
        }
        Morse2 { lambda, a, .. } => {
            let mut res = ladder(case, energy, "E", Some("nu"));
            res.constraints.push("nu = -2(n + 1 + 2A/lambda^2)".into());
            morse_ladder(&mut res, n_max, lambda, a);
            res
        }
        RosenMorse { lambda, a, b, mu, nu } => {
            let mut res = ladder(case, energy, "E", Some("mu"));
            res.constraints.push("B = 0".into());
            if b != 0.0 {
                return Ok(empty_because(res, "a closed-form ladder needs B = 0"));
            }
            let l2 = lambda * lambda;
            let rad = l2 - 8.0 * a;
            if rad < 0.0 {
                return Ok(empty_because(res, "lambda^2 - 8A < 0"));
            }
            let d = 0.5 * (-lambda + rad.sqrt());
            let c = rosen_morse_c(lambda, mu, nu) / l2;
            res.constraints.push("D(D+lambda) = -2A, valid while (D/lambda - n)^2 > |C|/lambda^2".into());
            for n in 0..n_max {
                let q = d / lambda - n as f64;
                if !(q > 0.0 && q * q > c.abs()) {
                    res.reason = Some(format!("ladder ends at n = {n}: (D/lambda - n)^2 <= |C|/lambda^2"));
                    break;
                }
                push(&mut res, -0.5 * l2 * (q * q + c * c / (q * q)), Some(q + c / q));
            }
            res
        }
    };
    Ok(res)
}

/// E_n = shift - λ²/8·m², m = -(k + g/k), k = n + k0, while m > 0.
fn hulthen_ladder(res: &mut SpectrumResult, n_max: usize, lambda: f64, shift: f64, k0: f64, g: f64) {
    for n in 0..n_max {
        let k = n as f64 + k0;
        let m = -(k + g / k);
        if !(m > 0.0) {
            res.reason = Some(format!("ladder ends at n = {n}: the decay exponent is no longer positive"));
            break;
        }
        push(res, shift - lambda * lambda * m * m / 8.0, Some(m));
    }
}

/// E_n = -λ²/2·(2A/λ² + n + ½)² while the bracket is negative.
fn morse_ladder(res: &mut SpectrumResult, n_max: usize, lambda: f64, a: f64) {
    let l2 = lambda * lambda;
    for n in 0..n_max {
        let k = 2.0 * a / l2 + n as f64 + 0.5;
        if !(k < 0.0) {
            res.reason = Some(format!("ladder ends at n = {n}: 2A/lambda^2 + n + 1/2 >= 0"));
            break;
        }
        push(res, -0.5 * l2 * k * k, Some(-2.0 * k));
    }
}

/// The pair of conditions (off-diagonal termination, diagonal condition)
/// that select the n-th level, as residuals of two unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiagonalizationConditions {
    pub case: PotentialCase,
    pub ell: u32,
    pub n: usize,
    pub unknowns: [&'static str; 2],
}

pub fn diagonalization_conditions(case: &PotentialCase, ell: u32, n: usize) -> Result<DiagonalizationConditions> {
    use PotentialCase::*;
    case.validate()?;
    let unknowns = match case {
        CoulombPlain { .. } | Oscillator { .. } => ["E", "lambda"],
        CoulombBarrier { .. } | OscillatorBarrier { .. } | Hulthen2 { .. } | Morse2 { .. } => ["E", "nu"],
        PowerLaw1 { .. } => ["A", "B"],
        PowerLaw2 { .. } => ["B", "nu"],
        Hulthen1 { .. } | Morse1 { .. } => ["E", "B"],
        Hulthen3 { .. } => ["E", "mu"],
        RosenMorse { .. } => ["B", "q"],
    };
    Ok(DiagonalizationConditions {
        case: *case,
        ell,
        n,
        unknowns,
    })
}

impl DiagonalizationConditions {
    /// Both residuals at the given values of the two unknowns; the other
    /// parameters come from the case.
    pub fn residuals(&self, u: [f64; 2]) -> [f64; 2] {
        use PotentialCase::*;
        let n = self.n as f64;
        let l = self.ell as f64;
        let [u0, u1] = u;
        match self.case {
            CoulombPlain { z } => {
                let (e, lam) = (u0, u1);
                let p = 0.25 - 2.0 * e / (lam * lam);
                [0.25 + 2.0 * e / (lam * lam), 2.0 * (n + l + 1.0) * p + 2.0 * z / lam]
            }
            CoulombBarrier { z, b, .. } => {
                let (e, nu) = (u0, u1);
                let t = z / (-2.0 * e).sqrt();
                [n + nu / 2.0 + 1.0 + t, -((nu + 1.0) / 2.0).powi(2) + (l + 0.5).powi(2) + 2.0 * b]
            }
            Oscillator { omega } => {
                let (e, lam) = (u0, u1);
                let nu = l + 0.5;
                [omega * omega / lam.powi(4) - 1.0, 2.0 * n + nu + 1.0 - e / (lam * lam)]
            }
            OscillatorBarrier { lambda, b, .. } => {
                let (e, nu) = (u0, u1);
                [
                    n + nu / 2.0 + 1.0 - e / (2.0 * lambda * lambda),
                    -((nu + 1.0) / 2.0).powi(2) + ((l + 0.5) / 2.0).powi(2) + b / 2.0,
                ]
            }
            PowerLaw1 { mu, lambda, .. } => {
                let (a, b) = (u0, u1);
                let s = (mu * lambda).powi(2);
                let nu = (2.0 * l + 1.0) / mu.abs();
                [b / s - 0.25, (b / s + 0.25) * (2.0 * n + nu + 1.0) + 2.0 * a / s]
            }
            PowerLaw2 { mu, lambda, a, .. } => {
                let (b, nu) = (u0, u1);
                let s = (mu * lambda).powi(2);
                [
                    n + nu / 2.0 + 1.0 + b / s,
                    -((nu + 1.0) / 2.0).powi(2) + ((l + 0.5) / mu).powi(2) + 2.0 * a / s,
                ]
            }
            Hulthen1 { lambda, a, nu, .. } => {
                let (e, b) = (u0, u1);
                let l2 = lambda * lambda;
                let mu = 2.0 * (-2.0 * e).sqrt() / lambda;
                let nu = nu.abs();
                [
                    2.0 * b / l2,
                    n * (n + mu + nu + 1.0) + 0.5 * (mu + 1.0) * (nu + 1.0) + 2.0 * a / l2,
                ]
            }
            Hulthen2 { lambda, a, b, .. } => {
                let (e, nu) = (u0, u1);
                let l2 = lambda * lambda;
                let mu = 2.0 * (-2.0 * e).sqrt() / lambda;
                [
                    0.25 * (2.0 * n + mu + nu + 2.0).powi(2) + 2.0 * (e + a) / l2,
                    ((nu + 1.0) / 2.0).powi(2) - 2.0 * b / l2 - 0.25,
                ]
            }
            Hulthen3 { lambda, a, b, nu, .. } => {
                let (e, mu) = (u0, u1);
                let l2 = lambda * lambda;
                let nu_r = nu.abs();
                [
                    0.25 * (2.0 * n + mu + nu_r + 2.0).powi(2) + 2.0 * (e + a - hulthen_c(lambda, nu)) / l2,
                    2.0 * (e - b) / l2 + ((mu + 1.0) / 2.0).powi(2),
                ]
            }
            Morse1 { lambda, a, .. } => {
                let (e, b) = (u0, u1);
                let l2 = lambda * lambda;
                let nu = 2.0 * (-2.0 * e).sqrt() / lambda;
                [2.0 * b / l2 - 0.25, (2.0 * n + nu + 1.0) * (2.0 * b / l2 + 0.25) + 2.0 * a / l2]
            }
            Morse2 { lambda, a, .. } => {
                let (e, nu) = (u0, u1);
                let l2 = lambda * lambda;
                [n + nu / 2.0 + 1.0 + 2.0 * a / l2, -((nu + 1.0) / 2.0).powi(2) - 2.0 * e / l2]
            }
            RosenMorse { lambda, a, .. } => {
                let (b, q) = (u0, u1);
                let l2 = lambda * lambda;
                [2.0 * b / l2, 0.25 * (2.0 * n + 2.0 * q + 1.0).powi(2) + 2.0 * a / l2 - 0.25]
            }
        }
    }

    /// The root the closed-form ladder predicts, or None past the end of
    /// the ladder.
    pub fn closed_form_root(&self) -> Result<Option<[f64; 2]>> {
        use PotentialCase::*;
        let spec = closed_form_spectrum(&self.case, self.ell, self.n + 1)?;
        let Some(level) = spec.levels.get(self.n) else {
            return Ok(None);
        };
        let e = level.value;
        let side = level.side.unwrap_or(f64::NAN);
        let l = self.ell as f64;
        let root = match self.case {
            CoulombPlain { .. } => [e, side],
            CoulombBarrier { b, .. } | OscillatorBarrier { b, .. } => {
                let k = if matches!(self.case, CoulombBarrier { .. }) { 2.0 } else { 1.0 };
                [e, k * ((l + 0.5).powi(2) + 2.0 * b).sqrt() - 1.0]
            }
            Oscillator { omega } => [e, omega.sqrt()],
            PowerLaw1 { mu, lambda, .. } => [e, (mu * lambda / 2.0).powi(2)],
            PowerLaw2 { .. } => [e, side],
            Hulthen1 { .. } => [e, 0.0],
            Hulthen2 { lambda, b, .. } => [e, (1.0 + 8.0 * b / (lambda * lambda)).sqrt() - 1.0],
            Hulthen3 { .. } => [e, side - 1.0],
            Morse1 { lambda, .. } => [e, lambda * lambda / 8.0],
            Morse2 { .. } => [e, side - 1.0],
            RosenMorse { lambda, a, .. } => {
                let d = 0.5 * (-lambda + (lambda * lambda - 8.0 * a).sqrt());
                [0.0, d / lambda - self.n as f64]
            }
        };
        Ok(Some(root))
    }
}

/// Lowest `n_states` eigenvalues of the finite-basis problem H f = E S f
/// built from the E-linear split of `rep`.
pub fn numeric_spectrum(rep: &TridiagonalRep, n_states: usize) -> Result<SpectrumResult> {
    let Some(split) = &rep.e_linear else {
        return Err(Error::Unsupported(format!(
            "{} has no E-linear split, so it has no finite-basis eigenproblem",
            rep.case.name()
        )));
    };
    let mut res = numeric_pencil_spectrum(&split.h, &split.s, n_states)?;
    res.case = Some(rep.case);
    res.constraints.push(format!("basis size N = {}, lambda = {}", rep.size, rep.lambda()));
    Ok(res)
}

/// Generalized eigenvalues of a symmetric tridiagonal pencil, ascending.
pub fn numeric_pencil_spectrum(h: &SymTridiag, s: &SymTridiag, n_states: usize) -> Result<SpectrumResult> {
    let values = generalized_eigenvalues(h, s)?;
    let levels = values
        .into_iter()
        .take(n_states)
        .enumerate()
        .map(|(n, value)| Level {
            n,
            value,
            side: None,
            error: None,
        })
        .collect();
    Ok(SpectrumResult {
        case: None,
        kind: SpectrumKind::Energy,
        quantity: "E".into(),
        side_name: None,
        constraints: Vec::new(),
        provenance: Provenance::Numeric,
        levels,
        reason: None,
    })
}
