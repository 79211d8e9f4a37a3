//! Symmetric eigensolvers: implicit QL on tridiagonal matrices (optionally
//! tracking selected eigenvector rows), Householder reduction for the dense
//! matrices produced by the generalized problem, and Sturm counts for
//! tridiagonal pencils.

use crate::error::{Error, Result};
use serde::Serialize;

/// Symmetric tridiagonal matrix: `diag[i]` and `off[i]` = entry (i, i+1).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Matrix("empty matrix".into()));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::Matrix(format!(
                "off-diagonal length {} does not match size {}",
                off.len(),
                diag.len()
            )));
        }
        Ok(SymTridiag { diag, off })
    }

    pub fn identity(n: usize) -> Self {
        SymTridiag {
            diag: vec![1.0; n],
            off: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Leading k×k block.
    pub fn leading(&self, k: usize) -> SymTridiag {
        SymTridiag {
            diag: self.diag[..k].to_vec(),
            off: self.off[..k.saturating_sub(1)].to_vec(),
        }
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn gershgorin_radius(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.off[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.off[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = self.diag[i];
            if i + 1 < n {
                a[i][i + 1] = self.off[i];
                a[i + 1][i] = self.off[i];
            }
        }
        a
    }
}

/// Eigenvalues (ascending) and the requested leading rows of the eigenvector matrix.
/// `rows[k][j]` is component k of eigenvector j.
pub struct TridiagEigen {
    pub values: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

/// Implicit QL with Wilkinson-style shifts. `track_rows` eigenvector rows are
/// accumulated (1 is enough for Gauss quadrature weights, `n` gives full vectors).
pub fn tridiag_eigen(m: &SymTridiag, track_rows: usize) -> Result<TridiagEigen> {
    let n = m.len();
    let mut d = m.diag.clone();
    let mut e = m.off.clone();
    e.push(0.0);
    let track = track_rows.min(n);
    let mut z: Vec<Vec<f64>> = (0..track)
        .map(|k| {
            let mut row = vec![0.0; n];
            row[k] = 1.0;
            row
        })
        .collect();

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < n {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Matrix("QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[mm] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = mm;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&j| d[j]).collect();
    let rows = z
        .iter()
        .map(|row| order.iter().map(|&j| row[j]).collect())
        .collect();
    Ok(TridiagEigen { values, rows })
}

/// Householder reduction of a dense symmetric matrix to tridiagonal form
/// (eigenvalues only; the input is consumed).
pub fn householder_tridiagonalize(mut a: Vec<Vec<f64>>) -> SymTridiag {
    let n = a.len();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i][k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut ff = 0.0;
                for j in 0..=l {
                    let mut gg = 0.0;
                    for k in 0..=j {
                        gg += a[j][k] * a[i][k];
                    }
                    for k in (j + 1)..=l {
                        gg += a[k][j] * a[i][k];
                    }
                    e[j] = gg / h;
                    ff += e[j] * a[i][j];
                }
                let hh = ff / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i][i];
    }
    SymTridiag {
        diag: d,
        off: e[1..].to_vec(),
    }
}

/// Cholesky factor of a symmetric positive definite tridiagonal matrix:
/// lower bidiagonal with diagonal `l` and subdiagonal `m`.
pub fn tridiag_cholesky(s: &SymTridiag) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = s.len();
    let mut l = vec![0.0; n];
    let mut m = vec![0.0; n.saturating_sub(1)];
    for i in 0..n {
        let mut piv = s.diag[i];
        if i > 0 {
            m[i - 1] = s.off[i - 1] / l[i - 1];
            piv -= m[i - 1] * m[i - 1];
        }
        if piv <= 0.0 || !piv.is_finite() {
            return Err(Error::Matrix(format!(
                "overlap matrix is not positive definite (pivot {piv:e} at row {i})"
            )));
        }
        l[i] = piv.sqrt();
    }
    Ok((l, m))
}

/// All eigenvalues of H f = E S f with S positive definite, ascending.
/// S = L Lᵀ, C = L⁻¹ H L⁻ᵀ (dense), Householder to tridiagonal, then QL.
pub fn generalized_eigenvalues(h: &SymTridiag, s: &SymTridiag) -> Result<Vec<f64>> {
    let n = h.len();
    if s.len() != n {
        return Err(Error::Matrix("H and S sizes differ".into()));
    }
    let (l, m) = tridiag_cholesky(s)?;
    // forward substitution L y = b, column by column
    let solve = |b: &mut [f64]| {
        b[0] /= l[0];
        for i in 1..n {
            b[i] = (b[i] - m[i - 1] * b[i - 1]) / l[i];
        }
    };
    let hd = h.to_dense();
    // W = L⁻¹ H (columns of H solved independently); C = L⁻¹ Wᵀ
    let mut w = vec![vec![0.0; n]; n];
    for j in 0..n {
        let mut col: Vec<f64> = (0..n).map(|i| hd[i][j]).collect();
        solve(&mut col);
        for i in 0..n {
            w[i][j] = col[i];
        }
    }
    let mut c = vec![vec![0.0; n]; n];
    for j in 0..n {
        let mut col: Vec<f64> = w[j].clone();
        solve(&mut col);
        for i in 0..n {
            c[i][j] = col[i];
        }
    }
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (c[i][j] + c[j][i]);
            c[i][j] = avg;
            c[j][i] = avg;
        }
    }
    let t = householder_tridiagonalize(c);
    Ok(tridiag_eigen(&t, 0)?.values)
}

/// Number of eigenvalues of the pencil (H, S) strictly below `sigma`
/// (Sylvester inertia of H - σS through its LDLᵀ pivots; S must be positive definite).
pub fn pencil_count_below(h: &SymTridiag, s: &SymTridiag, sigma: f64) -> usize {
    let n = h.len();
    let mut count = 0;
    let mut q = h.diag[0] - sigma * s.diag[0];
    let tiny = f64::EPSILON * f64::MIN_POSITIVE.sqrt();
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let off = h.off[i - 1] - sigma * s.off[i - 1];
        if q == 0.0 {
            q = -tiny;
        }
        q = (h.diag[i] - sigma * s.diag[i]) - off * off / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th (0-based) pencil eigenvalue by bisection inside [lo, hi].
pub fn pencil_eigenvalue(
    h: &SymTridiag,
    s: &SymTridiag,
    k: usize,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
) -> Result<f64> {
    let mut guard = 0;
    while pencil_count_below(h, s, lo) > k {
        lo -= (hi - lo).abs().max(1.0);
        guard += 1;
        if guard > 200 {
            return Err(Error::Matrix("could not bracket eigenvalue from below".into()));
        }
    }
    guard = 0;
    while pencil_count_below(h, s, hi) <= k {
        hi += (hi - lo).abs().max(1.0);
        guard += 1;
        if guard > 200 {
            return Err(Error::Matrix(format!("fewer than {} eigenvalues found", k + 1)));
        }
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        if pencil_count_below(h, s, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
