//! Independent numerical ground truth.
//!
//! * matrix elements ⟨φ_n|H - E|φ_m⟩ by adaptive quadrature in the mapped
//!   coordinate, with the kinetic term applied either through the analytic
//!   chain rule or by Richardson-extrapolated central differences;
//! * a finite-difference bound-state solver (Langer log grid on the half
//!   line, uniform grid on the whole line) refined over three resolutions;
//! * residuals ‖(H - E)ψ‖/‖ψ‖ of reconstructed wavefunctions.

use crate::basisgen::{
    basis_at_point, basis_eval, inverse_map, map_derivatives, map_point, BasisSpec, BasisValues, ConfigSpace,
    MappedPoint,
};
use crate::eigen::{pencil_eigenvalue, SymTridiag};
use crate::error::{domain, param, Error, Result};
use crate::quad::{self, QuadResult, Tolerance};
use crate::spectra::{Level, Provenance, SpectrumKind, SpectrumResult};
use crate::tridiag::PotentialCase;
use serde::Serialize;

/// Quadrature tolerance for matrix elements.
pub const MATRIX_TOL: Tolerance = Tolerance {
    abs: 1e-12,
    rel: 1e-10,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub quantity: String,
    pub computed: f64,
    pub error: f64,
    pub target: Option<f64>,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub pass: bool,
}

impl OracleReport {
    pub fn new(quantity: impl Into<String>, computed: f64, error: f64) -> Self {
        OracleReport {
            quantity: quantity.into(),
            computed,
            error,
            target: None,
            abs_tol: 0.0,
            rel_tol: 0.0,
            pass: computed.is_finite() && error.is_finite(),
        }
    }

    /// pass ⇔ |computed - target| ≤ max(abs_tol, rel_tol·|target|).
    pub fn against(mut self, target: f64, abs_tol: f64, rel_tol: f64) -> Self {
        self.target = Some(target);
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self.pass = (self.computed - target).abs() <= abs_tol.max(rel_tol * target.abs());
        self
    }
}

/// How the kinetic term -½φ'' is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KineticPath {
    Analytic,
    FiniteDifference,
}

/// φ_n'' by Richardson extrapolation of central differences in r.
pub fn second_derivative_fd(spec: &BasisSpec, n: usize, r: f64) -> Result<f64> {
    let p = map_point(&spec.map, r)?;
    let (xp, _) = map_derivatives(&spec.map, &p);
    // local variation scale of the basis in x, carried to r
    let sx = if spec.map.is_bounded() {
        p.one_minus.min(p.one_plus).min(1.0)
    } else {
        p.x.min(1.0)
    };
    let mut h = 0.08 * sx / xp.abs();
    if spec.map.config_space() == ConfigSpace::HalfLine {
        h = h.min(0.08 * r);
    }
    if !(h > 0.0 && h.is_finite()) {
        return domain(format!("no finite-difference step available at r = {r}"));
    }
    let f0 = basis_eval(spec, n, r)?;
    let d = |h: f64| -> Result<f64> { Ok((basis_eval(spec, n, r + h)? - 2.0 * f0 + basis_eval(spec, n, r - h)?) / (h * h)) };
    const LEVELS: usize = 4;
    let mut table = [[0.0; LEVELS]; LEVELS];
    for i in 0..LEVELS {
        table[i][0] = d(h / 2f64.powi(i as i32))?;
        let mut f = 1.0;
        for j in 1..=i {
            f *= 4.0;
            table[i][j] = (f * table[i][j - 1] - table[i - 1][j - 1]) / (f - 1.0);
        }
    }
    Ok(table[LEVELS - 1][LEVELS - 1])
}

fn centrifugal(case: &PotentialCase, ell: u32, r: f64) -> f64 {
    if case.full_line() {
        0.0
    } else {
        let l = ell as f64;
        0.5 * l * (l + 1.0) / (r * r)
    }
}

/// Integrates g(point, r) dr over the whole configuration space, working in
/// the mapped coordinate (dr = dx/|x'|).
pub fn integrate_configuration<G>(spec: &BasisSpec, g: G, tol: Tolerance) -> Result<QuadResult>
where
    G: Fn(&MappedPoint, f64) -> Result<f64>,
{
    let map = spec.map;
    let err_cell = std::cell::RefCell::new(None::<Error>);
    let eval = |p: MappedPoint| -> f64 {
        let r = match inverse_map(&map, &p) {
            Ok(r) => r,
            Err(e) => {
                err_cell.borrow_mut().get_or_insert(e);
                return 0.0;
            }
        };
        if !r.is_finite() {
            return 0.0;
        }
        let (xp, _) = map_derivatives(&map, &p);
        match g(&p, r) {
            Ok(v) if v == 0.0 => 0.0,
            Ok(v) => v / xp.abs(),
            Err(e) => {
                err_cell.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let res = if map.is_bounded() {
        let left = quad::integrate_breaks(
            &|u: f64| if u <= 0.0 { 0.0 } else { eval(MappedPoint::above_minus_one(u)) },
            &[0.0, 0.05, 0.3, 1.0],
            tol,
        )?;
        let right = quad::integrate_breaks(
            &|u: f64| if u <= 0.0 { 0.0 } else { eval(MappedPoint::below_one(u)) },
            &[0.0, 0.05, 0.3, 1.0],
            tol,
        )?;
        QuadResult {
            value: left.value + right.value,
            error: left.error + right.error,
            evaluations: left.evaluations + right.evaluations,
        }
    } else {
        let f = |x: f64| if x <= 0.0 { 0.0 } else { eval(MappedPoint::new(x)) };
        let head = quad::integrate_breaks(&f, &[0.0, 0.25, 1.0, 4.0, 12.0, 30.0, 64.0], tol)?;
        let tail = quad::integrate_to_infinity(f, 64.0, tol)?;
        QuadResult {
            value: head.value + tail.value,
            error: head.error + tail.error,
            evaluations: head.evaluations + tail.evaluations,
        }
    };
    if let Some(e) = err_cell.into_inner() {
        return Err(e);
    }
    Ok(res)
}

/// (H - E)φ_m at one point, with φ_m itself.
fn wave_action(
    spec: &BasisSpec,
    case: &PotentialCase,
    ell: u32,
    m: usize,
    energy: f64,
    p: &MappedPoint,
    r: f64,
    path: KineticPath,
) -> Result<(f64, f64)> {
    let BasisValues { value, d2, .. } = basis_at_point(spec, m, p)?;
    if value == 0.0 && d2 == 0.0 {
        return Ok((0.0, 0.0));
    }
    let second = match path {
        KineticPath::Analytic => d2,
        KineticPath::FiniteDifference => second_derivative_fd(spec, m, r)?,
    };
    let pot = case.potential(r) + centrifugal(case, ell, r) - energy;
    Ok((value, -0.5 * second + pot * value))
}

/// ⟨φ_n|H - E|φ_m⟩ by quadrature.
#[allow(clippy::too_many_arguments)]
pub fn matrix_element(
    spec: &BasisSpec,
    case: &PotentialCase,
    ell: u32,
    n: usize,
    m: usize,
    energy: f64,
    path: KineticPath,
    tol: Tolerance,
) -> Result<QuadResult> {
    integrate_configuration(
        spec,
        |p, r| {
            let phi_n = basis_at_point(spec, n, p)?.value;
            if phi_n == 0.0 {
                return Ok(0.0);
            }
            let (_, act) = wave_action(spec, case, ell, m, energy, p, r, path)?;
            Ok(phi_n * act)
        },
        tol,
    )
}

/// ⟨φ_n|H - E|φ_m⟩ through the analytic kinetic template, as a report whose
/// pass flag reflects only quadrature convergence (compare with
/// [`OracleReport::against`]).
pub fn integrate_matrix_element(
    spec: &BasisSpec,
    case: &PotentialCase,
    ell: u32,
    n: usize,
    m: usize,
    energy: f64,
) -> Result<OracleReport> {
    if n > 15 || m > 15 {
        return domain(format!("matrix elements are supported for n, m ≤ 15, got ({n}, {m})"));
    }
    let q = matrix_element(spec, case, ell, n, m, energy, KineticPath::Analytic, MATRIX_TOL)?;
    Ok(OracleReport::new(format!("<{n}|H-E|{m}>"), q.value, q.error))
}

/// ⟨φ_n|φ_m⟩ by quadrature.
pub fn overlap_element(spec: &BasisSpec, n: usize, m: usize, tol: Tolerance) -> Result<QuadResult> {
    integrate_configuration(
        spec,
        |p, _| Ok(basis_at_point(spec, n, p)?.value * basis_at_point(spec, m, p)?.value),
        tol,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Geometric,
    Uniform,
}

/// Grid for the finite-difference solver. Geometric grids live on (0, ∞)
/// and need r_min > 0; uniform grids may span the whole line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl RadialGrid {
    pub fn geometric(r_min: f64, r_max: f64, count: usize) -> Result<Self> {
        let g = RadialGrid {
            r_min,
            r_max,
            count,
            spacing: Spacing::Geometric,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn uniform(r_min: f64, r_max: f64, count: usize) -> Result<Self> {
        let g = RadialGrid {
            r_min,
            r_max,
            count,
            spacing: Spacing::Uniform,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 100 {
            return param(format!("grid needs at least 100 points, got {}", self.count));
        }
        if !(self.r_min.is_finite() && self.r_max.is_finite() && self.r_max > self.r_min) {
            return param(format!("grid bounds must satisfy r_min < r_max, got [{}, {}]", self.r_min, self.r_max));
        }
        if self.spacing == Spacing::Geometric && self.r_min <= 0.0 {
            return param(format!("geometric grid needs r_min > 0, got {}", self.r_min));
        }
        Ok(())
    }

    /// Grid points, endpoints included.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        match self.spacing {
            Spacing::Geometric => {
                let (a, b) = (self.r_min.ln(), self.r_max.ln());
                (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
            }
            Spacing::Uniform => (0..n)
                .map(|i| self.r_min + (self.r_max - self.r_min) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }

    /// Same span with the step halved.
    pub fn refined(&self) -> Self {
        RadialGrid {
            count: 2 * self.count - 1,
            ..*self
        }
    }

    /// The default grid for basis checks, geometric over [1e-6/λ, 50/λ].
    pub fn for_basis(spec: &BasisSpec) -> Self {
        let l = spec.map.lambda();
        match spec.map.config_space() {
            ConfigSpace::HalfLine => RadialGrid {
                r_min: 1e-6 / l,
                r_max: 50.0 / l,
                count: 2000,
                spacing: Spacing::Geometric,
            },
            ConfigSpace::FullLine => {
                let c = match spec.map {
                    crate::basisgen::CoordinateMap::ExpDecay { mu_hat, .. } => mu_hat.ln() / l,
                    _ => 0.0,
                };
                RadialGrid {
                    r_min: c - 25.0 / l,
                    r_max: c + 25.0 / l,
                    count: 2000,
                    spacing: Spacing::Uniform,
                }
            }
        }
    }
}

/// Natural length scale of a case.
fn length_scale(case: &PotentialCase) -> f64 {
    match *case {
        PotentialCase::CoulombPlain { z } | PotentialCase::CoulombBarrier { z, .. } => {
            if z != 0.0 {
                1.0 / z.abs()
            } else {
                1.0
            }
        }
        PotentialCase::Oscillator { omega } => 1.0 / omega.sqrt(),
        _ => 1.0 / case.case_lambda().unwrap_or(1.0),
    }
}

/// A grid that resolves the lowest `n_states` levels of `case` in typical
/// parameter ranges; `fd_spectrum` enlarges it when needed.
pub fn suggested_grid(case: &PotentialCase, ell: u32, n_states: usize) -> Result<RadialGrid> {
    let lc = length_scale(case);
    let k = n_states.max(1) as f64;
    if case.full_line() {
        let c = match *case {
            PotentialCase::Morse1 { lambda, mu_hat, .. } | PotentialCase::Morse2 { lambda, mu_hat, .. } => {
                mu_hat.ln() / lambda
            }
            _ => 0.0,
        };
        let half = 40.0 * lc;
        let count = (2.0 * half / (0.01 * lc)).round() as usize + 1;
        return RadialGrid::uniform(c - half, c + half, count);
    }
    // Langer exponent q = √((ℓ+½)² + lim 2r²V) fixes how fast w vanishes at 0
    let l = ell as f64;
    let r0 = 1e-9 * lc;
    let q2 = (l + 0.5).powi(2) + 2.0 * r0 * r0 * case.potential(r0);
    if !(q2 > 0.0) {
        return domain(format!(
            "{}: the potential is too singular at the origin (Langer exponent² = {q2})",
            case.name()
        ));
    }
    let q = q2.sqrt();
    let r_min = lc * 10f64.powf((-8.0 / q).max(-250.0)).min(1e-10);
    let r_max = lc * (40.0 * (k + l).powi(2)).max(80.0);
    let count = ((r_max / r_min).ln() / 0.01).round() as usize + 1;
    RadialGrid::geometric(r_min, r_max, count)
}

/// Lowest eigenvalues of one discretization.
fn fd_levels(case: &PotentialCase, ell: u32, grid: &RadialGrid, n_states: usize) -> Result<Vec<f64>> {
    let pts = grid.points();
    let inner = &pts[1..pts.len() - 1];
    let n = inner.len();
    let (k, m) = match grid.spacing {
        Spacing::Geometric => {
            if case.full_line() {
                return param("whole-line cases need a uniform grid");
            }
            let h = (grid.r_max / grid.r_min).ln() / (grid.count - 1) as f64;
            let l = ell as f64;
            let diag: Vec<f64> = inner
                .iter()
                .map(|&r| 2.0 / (h * h) + (l + 0.5).powi(2) + 2.0 * r * r * case.potential(r))
                .collect();
            let mass: Vec<f64> = inner.iter().map(|&r| 2.0 * r * r).collect();
            (
                SymTridiag {
                    diag,
                    off: vec![-1.0 / (h * h); n - 1],
                },
                SymTridiag {
                    diag: mass,
                    off: vec![0.0; n - 1],
                },
            )
        }
        Spacing::Uniform => {
            let h = (grid.r_max - grid.r_min) / (grid.count - 1) as f64;
            let diag: Vec<f64> = inner
                .iter()
                .map(|&r| 1.0 / (h * h) + case.potential(r) + centrifugal(case, ell, r))
                .collect();
            (
                SymTridiag {
                    diag,
                    off: vec![-0.5 / (h * h); n - 1],
                },
                SymTridiag::identity(n),
            )
        }
    };
    if k.diag.iter().any(|v| !v.is_finite()) {
        return domain(format!("{}: potential is not finite on the grid", case.name()));
    }
    (0..n_states)
        .map(|i| pencil_eigenvalue(&k, &m, i, -1.0, 1.0, 1e-15))
        .collect()
}

/// Lowest `n_states` eigenvalues of the three-point discretization on
/// `grid`, `grid` refined once and twice, Richardson-combined (h², h⁴).
/// The error estimate is the change between the last two extrapolants.
pub fn fd_bound_states(
    case: &PotentialCase,
    ell: u32,
    grid: &RadialGrid,
    n_states: usize,
    tol: f64,
) -> Result<SpectrumResult> {
    case.validate()?;
    grid.validate()?;
    if case.s_wave_only() && case.full_line() && ell != 0 {
        return domain("whole-line cases have no angular momentum");
    }
    let g1 = *grid;
    let g2 = g1.refined();
    let g3 = g2.refined();
    let e1 = fd_levels(case, ell, &g1, n_states)?;
    let e2 = fd_levels(case, ell, &g2, n_states)?;
    let e3 = fd_levels(case, ell, &g3, n_states)?;
    let mut levels = Vec::with_capacity(n_states);
    let mut worst: f64 = 0.0;
    for i in 0..n_states {
        let r1a = (4.0 * e2[i] - e1[i]) / 3.0;
        let r1b = (4.0 * e3[i] - e2[i]) / 3.0;
        let r2 = (16.0 * r1b - r1a) / 15.0;
        let err = (r2 - r1b).abs();
        worst = worst.max(err);
        levels.push(Level {
            n: i,
            value: r2,
            side: None,
            error: Some(err),
        });
    }
    if worst > tol {
        return Err(Error::Accuracy {
            what: format!("finite-difference spectrum of {}", case.name()),
            achieved: worst,
            requested: tol,
        });
    }
    Ok(SpectrumResult {
        case: Some(*case),
        kind: SpectrumKind::Energy,
        quantity: "E".into(),
        side_name: None,
        constraints: vec![format!("Dirichlet walls at {} and {}", grid.r_min, grid.r_max)],
        provenance: Provenance::FiniteDifference,
        levels,
        reason: None,
    })
}

/// [`fd_bound_states`] on the suggested grid, widening the box until the
/// levels stop moving.
pub fn fd_spectrum(case: &PotentialCase, ell: u32, n_states: usize, tol: f64) -> Result<SpectrumResult> {
    let mut grid = suggested_grid(case, ell, n_states)?;
    let mut prev = fd_bound_states(case, ell, &grid, n_states, tol)?;
    for _ in 0..4 {
        let wider = match grid.spacing {
            Spacing::Geometric => {
                let r_max = grid.r_max * 2.0;
                let h = (grid.r_max / grid.r_min).ln() / (grid.count - 1) as f64;
                RadialGrid::geometric(grid.r_min, r_max, ((r_max / grid.r_min).ln() / h).round() as usize + 1)?
            }
            Spacing::Uniform => {
                let c = 0.5 * (grid.r_min + grid.r_max);
                let half = grid.r_max - c;
                RadialGrid::uniform(c - 2.0 * half, c + 2.0 * half, 2 * grid.count - 1)?
            }
        };
        let next = fd_bound_states(case, ell, &wider, n_states, tol)?;
        let moved = prev
            .levels
            .iter()
            .zip(&next.levels)
            .fold(0.0f64, |m, (a, b)| m.max((a.value - b.value).abs()));
        grid = wider;
        prev = next;
        if moved <= 0.1 * tol {
            return Ok(prev);
        }
    }
    Err(Error::Accuracy {
        what: format!("box size for {}", case.name()),
        achieved: f64::NAN,
        requested: tol,
    })
}

/// ‖(H - E)ψ‖ / ‖ψ‖ on `grid` for ψ = Σ f_n φ_n (trapezoidal norms).
pub fn ode_residual(
    spec: &BasisSpec,
    coeffs: &[f64],
    case: &PotentialCase,
    ell: u32,
    energy: f64,
    grid: &RadialGrid,
) -> Result<OracleReport> {
    grid.validate()?;
    if coeffs.is_empty() {
        return domain("no coefficients");
    }
    let pts = grid.points();
    let mut psi = Vec::with_capacity(pts.len());
    let mut res = Vec::with_capacity(pts.len());
    for &r in &pts {
        let p = map_point(&spec.map, r)?;
        let mut v = 0.0;
        let mut hv = 0.0;
        for (n, f) in coeffs.iter().enumerate() {
            if *f == 0.0 {
                continue;
            }
            let b = basis_at_point(spec, n, &p)?;
            v += f * b.value;
            hv += f * (-0.5 * b.d2 + (case.potential(r) + centrifugal(case, ell, r) - energy) * b.value);
        }
        psi.push(v * v);
        res.push(hv * hv);
    }
    let trap = |vals: &[f64]| -> f64 {
        pts.windows(2)
            .zip(vals.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    };
    let norm = trap(&psi).sqrt();
    if norm == 0.0 {
        return domain("reconstructed wavefunction vanishes on the grid");
    }
    let value = trap(&res).sqrt() / norm;
    Ok(OracleReport::new("residual ||(H-E)psi||/||psi||", value, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basisgen::{BasisKind, CoordinateMap};

    #[test]
    fn infinite_well_self_test() {
        // V = 0 between hard walls: E_k = (k+1)²π²/(2 L²)
        let case = PotentialCase::Morse2 {
            lambda: 1.0,
            a: 0.0,
            mu_hat: 1e-300,
            nu: None,
        };
        let l = 10.0;
        let grid = RadialGrid::uniform(0.0, l, 1001).unwrap();
        let s = fd_bound_states(&case, 0, &grid, 3, 1e-6).unwrap();
        for (k, lev) in s.levels.iter().enumerate() {
            let exact = ((k + 1) as f64 * std::f64::consts::PI / l).powi(2) / 2.0;
            assert!((lev.value - exact).abs() < 1e-8, "{k}: {} vs {exact}", lev.value);
        }
    }

    #[test]
    fn fd_and_analytic_derivatives_agree_pointwise() {
        let spec = BasisSpec::new(
            CoordinateMap::Linear { lambda: 1.3 },
            BasisKind::Laguerre { alpha: 1.0, beta: 0.5, nu: 1.0 },
            Some(0),
        )
        .unwrap();
        for n in [0, 3, 7] {
            for &r in &[0.05, 0.7, 3.0, 9.0] {
                let a = crate::basisgen::basis_derivatives(&spec, n, r).unwrap().d2;
                let f = second_derivative_fd(&spec, n, r).unwrap();
                assert!((a - f).abs() <= 1e-8 * a.abs().max(1.0), "n={n} r={r}: {a} vs {f}");
            }
        }
    }
}
