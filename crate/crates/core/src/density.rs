//! Density (weight) functions of the deformed Jacobi polynomials, estimated
//! from a truncated Jacobi matrix: Gauss nodes and weights by Golub-Welsch,
//! then a Gaussian-kernel curve with unit mass.

use crate::coeffs::{deformed_recursion_row, DeformedStyle};
use crate::eigen::{tridiag_eigen, SymTridiag};
use crate::error::{domain, finite, param, Result};
use crate::output::sig17;
use serde::Serialize;

/// Symmetric Jacobi matrix of the N×N truncation: diagonal from each row,
/// off-diagonal √(c_{k+1}·e_k).
pub fn jacobi_matrix(style: DeformedStyle, mu: f64, nu: f64, gamma: f64, n: usize) -> Result<SymTridiag> {
    if !(mu > -1.0 && nu > -1.0) {
        return param(format!("Jacobi matrix needs mu, nu > -1, got ({mu}, {nu})"));
    }
    finite("gamma", gamma)?;
    if n < 2 {
        return param(format!("Jacobi matrix needs N >= 2, got {n}"));
    }
    let rows: Vec<(f64, f64, f64)> = (0..n).map(|k| deformed_recursion_row(style, k, mu, nu, gamma)).collect();
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n - 1 {
        let prod = rows[k + 1].1 * rows[k].2;
        if !(prod > 0.0) {
            return domain(format!("recursion cannot be symmetrized at k = {k}: c_(k+1)*e_k = {prod} is not positive"));
        }
        off.push(prod.sqrt());
    }
    SymTridiag::new(rows.iter().map(|r| r.0).collect(), off)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Golub-Welsch: nodes are the eigenvalues, weights the squared first
/// eigenvector components, normalized to unit sum.
pub fn quadrature_from_matrix(j: &SymTridiag) -> Result<Quadrature> {
    if j.is_empty() {
        return param("empty Jacobi matrix");
    }
    if let Some(k) = j.off.iter().position(|b| !(*b > 0.0)) {
        return domain(format!("Jacobi matrix off-diagonal {k} is {}, not positive", j.off[k]));
    }
    let eig = tridiag_eigen(j, 1)?;
    let mut w: Vec<f64> = eig.rows[0].iter().map(|v| v * v).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    Ok(Quadrature {
        nodes: eig.values,
        weights: w,
    })
}

/// m_k = Σ w_i y_i^k for k = 0..=k_max.
pub fn quadrature_moments(q: &Quadrature, k_max: usize) -> Vec<f64> {
    (0..=k_max)
        .map(|k| q.nodes.iter().zip(&q.weights).map(|(y, w)| w * y.powi(k as i32)).sum())
        .collect()
}

/// m_k = e_1ᵀ J^k e_1 for k = 0..=k_max.
pub fn matrix_moments(j: &SymTridiag, k_max: usize) -> Vec<f64> {
    let mut v = vec![0.0; j.len()];
    v[0] = 1.0;
    let mut out = Vec::with_capacity(k_max + 1);
    for _ in 0..=k_max {
        out.push(v[0]);
        v = j.matvec(&v);
    }
    out
}

/// Worst disagreement between quadrature and matrix moments k = 0..=k_max,
/// each measured against Σ w|y|^k. Both sides use J scaled by its
/// Gershgorin radius so that high powers stay in range.
pub fn moment_mismatch(j: &SymTridiag, q: &Quadrature, k_max: usize) -> f64 {
    let s = j.gershgorin_radius().max(f64::MIN_POSITIVE);
    let scaled = SymTridiag::new(
        j.diag.iter().map(|d| d / s).collect(),
        j.off.iter().map(|o| o / s).collect(),
    )
    .expect("scaling keeps the shape");
    let nodes: Vec<f64> = q.nodes.iter().map(|y| y / s).collect();
    let qs = Quadrature {
        nodes: nodes.clone(),
        weights: q.weights.clone(),
    };
    let a = quadrature_moments(&qs, k_max);
    let b = matrix_moments(&scaled, k_max);
    (0..=k_max)
        .map(|k| {
            let size: f64 = nodes.iter().zip(&q.weights).map(|(y, w)| w * y.abs().powi(k as i32)).sum();
            (a[k] - b[k]).abs() / size.max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

/// Silverman's rule with weighted spread: 0.9·min(σ, IQR/1.34)·n_eff^{-1/5},
/// n_eff = 1/Σw².
pub fn silverman_bandwidth(nodes: &[f64], weights: &[f64]) -> f64 {
    let mean: f64 = nodes.iter().zip(weights).map(|(y, w)| w * y).sum();
    let var: f64 = nodes.iter().zip(weights).map(|(y, w)| w * (y - mean).powi(2)).sum();
    let sigma = var.max(0.0).sqrt();
    let quantile = |p: f64| -> f64 {
        let mut acc = 0.0;
        for (y, w) in nodes.iter().zip(weights) {
            acc += w;
            if acc >= p {
                return *y;
            }
        }
        *nodes.last().unwrap_or(&0.0)
    };
    let iqr = (quantile(0.75) - quantile(0.25)) / 1.34;
    let spread = if iqr > 0.0 { sigma.min(iqr) } else { sigma };
    let n_eff = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();
    let h = 0.9 * spread * n_eff.powf(-0.2);
    if h > 0.0 {
        h
    } else {
        0.05 * nodes.first().map_or(1.0, |y| y.abs().max(1.0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityCurve {
    pub y: Vec<f64>,
    pub rho: Vec<f64>,
    pub bandwidth: f64,
}

impl DensityCurve {
    /// Trapezoidal ∫ y^k ρ dy.
    pub fn moment(&self, k: i32) -> f64 {
        self.y
            .windows(2)
            .zip(self.rho.windows(2))
            .map(|(y, r)| 0.5 * (y[1] - y[0]) * (r[0] * y[0].powi(k) + r[1] * y[1].powi(k)))
            .sum()
    }
}

/// Minimum number of curve samples.
pub const CURVE_POINTS: usize = 1001;
/// Nodes carrying less weight than this do not stretch the grid.
pub const NEGLIGIBLE_WEIGHT: f64 = 1e-15;

/// Gaussian-kernel curve on a uniform grid over the range of the nodes with
/// non-negligible weight, padded by three bandwidths, sampled at least eight
/// points per bandwidth and rescaled to unit trapezoidal mass.
pub fn smooth_density(nodes: &[f64], weights: &[f64], bandwidth: f64) -> Result<DensityCurve> {
    if nodes.is_empty() || nodes.len() != weights.len() {
        return param("nodes and weights must be nonempty and of equal length");
    }
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return param(format!("bandwidth must be positive, got {bandwidth}"));
    }
    let wmax = weights.iter().cloned().fold(0.0, f64::max);
    let kept = nodes.iter().zip(weights).filter(|(_, w)| **w >= NEGLIGIBLE_WEIGHT * wmax).map(|(y, _)| *y);
    let (lo, hi) = kept.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    let (lo, hi) = (lo - 3.0 * bandwidth, hi + 3.0 * bandwidth);
    let count = CURVE_POINTS.max((8.0 * (hi - lo) / bandwidth).ceil() as usize + 1);
    let step = (hi - lo) / (count - 1) as f64;
    let y: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
    let norm = 1.0 / (bandwidth * (2.0 * std::f64::consts::PI).sqrt());
    let mut rho: Vec<f64> = y
        .iter()
        .map(|&t| {
            nodes
                .iter()
                .zip(weights)
                .map(|(c, w)| w * (-0.5 * ((t - c) / bandwidth).powi(2)).exp())
                .sum::<f64>()
                * norm
        })
        .collect();
    let mut curve = DensityCurve {
        y,
        rho: Vec::new(),
        bandwidth,
    };
    curve.rho = rho.clone();
    let mass = curve.moment(0);
    rho.iter_mut().for_each(|r| *r /= mass);
    curve.rho = rho;
    Ok(curve)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityMeta {
    pub style: DeformedStyle,
    pub mu: f64,
    pub nu: f64,
    pub gamma: f64,
    pub n: usize,
    pub bandwidth: f64,
    pub smoothing: &'static str,
    pub normalization: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub curve: DensityCurve,
    pub meta: DensityMeta,
}

/// The whole pipeline: Jacobi matrix, Gauss rule, smoothed curve.
/// `bandwidth = None` picks Silverman's rule.
pub fn density_estimate(
    style: DeformedStyle,
    mu: f64,
    nu: f64,
    gamma: f64,
    n: usize,
    bandwidth: Option<f64>,
) -> Result<DensityEstimate> {
    let j = jacobi_matrix(style, mu, nu, gamma, n)?;
    let q = quadrature_from_matrix(&j)?;
    let h = bandwidth.unwrap_or_else(|| silverman_bandwidth(&q.nodes, &q.weights));
    let curve = smooth_density(&q.nodes, &q.weights, h)?;
    Ok(DensityEstimate {
        meta: DensityMeta {
            style,
            mu,
            nu,
            gamma,
            n,
            bandwidth: h,
            smoothing: "gaussian kernel",
            normalization: "unit mass",
        },
        nodes: q.nodes,
        weights: q.weights,
        curve,
    })
}

impl DensityEstimate {
    /// `y,rho` CSV preceded by `#` lines carrying the parameters.
    pub fn to_csv(&self) -> String {
        let m = &self.meta;
        let style = match m.style {
            DeformedStyle::Additive => "additive",
            DeformedStyle::Multiplicative => "multiplicative",
        };
        let mut s = format!(
            "# style={style},mu={},nu={},gamma={},N={},bandwidth={},smoothing=gaussian kernel,normalization=unit mass\ny,rho\n",
            sig17(m.mu),
            sig17(m.nu),
            sig17(m.gamma),
            m.n,
            sig17(m.bandwidth)
        );
        for (y, r) in self.curve.y.iter().zip(&self.curve.rho) {
            s.push_str(&sig17(*y));
            s.push(',');
            s.push_str(&sig17(*r));
            s.push('\n');
        }
        s
    }
}
