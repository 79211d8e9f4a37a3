use proptest::prelude::*;
use tridiag_spectra::coeffs::DeformedStyle::{self, Additive, Multiplicative};
use tridiag_spectra::density::*;

const GAMMAS: [f64; 5] = [0.0, 0.05, 0.1, 0.2, 0.4];

/// E[y^k] for the Beta(ν+1, μ+1) law, by the ratio B(ν+k+1, μ+1)/B(ν+1, μ+1).
fn beta_moment(mu: f64, nu: f64, k: usize) -> f64 {
    (0..k).map(|j| (nu + 1.0 + j as f64) / (nu + mu + 2.0 + j as f64)).product()
}

#[test]
fn zero_gamma_gives_jacobi_gauss_rule() {
    for (mu, nu, n) in [(1.0, 1.5, 51), (0.0, 0.0, 10), (-0.5, 2.5, 20), (3.0, -0.4, 7)] {
        let q = quadrature_from_matrix(&jacobi_matrix(Additive, mu, nu, 0.0, n).unwrap()).unwrap();
        let got = quadrature_moments(&q, 2 * n - 1);
        for (k, g) in got.iter().enumerate() {
            let want = beta_moment(mu, nu, k);
            assert!((g - want).abs() <= 1e-12 * want.max(1e-300) + 1e-15, "({mu},{nu},N={n}) k={k}: {g} vs {want}");
        }
        // one past exactness must fail for the Beta law
        let k = 2 * n;
        let miss = (quadrature_moments(&q, k)[k] - beta_moment(mu, nu, k)).abs();
        assert!(miss > 1e-15 * beta_moment(mu, nu, k), "k = 2N unexpectedly exact");
    }
}

fn check_estimate(style: DeformedStyle, gamma: f64) {
    let est = density_estimate(style, 1.0, 1.5, gamma, 51, None).unwrap();
    assert_eq!(est.nodes.len(), 51);
    assert!(est.nodes.windows(2).all(|w| w[0] < w[1]), "nodes not increasing");
    assert!(est.weights.iter().all(|w| *w >= 0.0));
    assert!((est.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    assert!((est.curve.moment(0) - 1.0).abs() < 1e-6);
    assert!(est.curve.rho.iter().all(|r| *r >= 0.0));
    let mean: f64 = est.nodes.iter().zip(&est.weights).map(|(y, w)| y * w).sum();
    assert!((est.curve.moment(1) - mean).abs() < 1e-3, "{style:?} γ={gamma}: mean {} vs {mean}", est.curve.moment(1));
    let j = jacobi_matrix(style, 1.0, 1.5, gamma, 51).unwrap();
    let q = quadrature_from_matrix(&j).unwrap();
    let bad = moment_mismatch(&j, &q, 2 * 51 - 1);
    assert!(bad <= 1e-10, "{style:?} γ={gamma}: moment mismatch {bad:e}");
}

#[test]
fn mu_one_nu_one_and_a_half_gives_unit_mass_curves() {
    for g in GAMMAS {
        check_estimate(Multiplicative, g);
        check_estimate(Additive, g);
    }
}

#[test]
fn csv_header_and_rows() {
    let est = density_estimate(Multiplicative, 1.0, 1.5, 0.2, 51, None).unwrap();
    let csv = est.to_csv();
    let mut lines = csv.lines();
    let head = lines.next().unwrap();
    assert!(head.starts_with("# style=multiplicative,mu=1"));
    assert!(head.contains("N=51") && head.contains("bandwidth=") && head.contains("gamma=2"));
    assert_eq!(lines.next(), Some("y,rho"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), est.curve.y.len());
    assert!(rows.len() >= CURVE_POINTS);
    assert_eq!(rows[10], (est.curve.y[10], est.curve.rho[10]));
    assert!(!csv.contains('\r'));
}

#[test]
fn explicit_bandwidth_is_kept() {
    let est = density_estimate(Additive, 1.0, 1.5, 0.1, 20, Some(0.02)).unwrap();
    assert_eq!(est.meta.bandwidth, 0.02);
    assert!(density_estimate(Additive, 1.0, 1.5, 0.1, 20, Some(-1.0)).is_err());
    assert!(density_estimate(Additive, 1.0, 1.5, 0.1, 1, None).is_err());
}

proptest! {
    #[test]
    fn nodes_move_continuously_in_gamma(g in 0.0f64..0.5, mu in -0.5f64..3.0, nu in -0.5f64..3.0) {
        let dg = 1e-6;
        for style in [Additive, Multiplicative] {
            let a = quadrature_from_matrix(&jacobi_matrix(style, mu, nu, g, 30).unwrap()).unwrap();
            let b = quadrature_from_matrix(&jacobi_matrix(style, mu, nu, g + dg, 30).unwrap()).unwrap();
            let scale = a.nodes.iter().fold(1.0f64, |m, y| m.max(y.abs()));
            let shift = a.nodes.iter().zip(&b.nodes).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            // the diagonal grows like γ n², so the slope is bounded by a polynomial in N
            prop_assert!(shift <= 1e4 * dg * scale.max(1.0), "{style:?}: shift {shift:e}");
        }
    }

    #[test]
    fn quadrature_matches_matrix_moments(g in 0.0f64..0.5, mu in -0.5f64..3.0, nu in -0.5f64..3.0, n in 2usize..40) {
        for style in [Additive, Multiplicative] {
            let j = jacobi_matrix(style, mu, nu, g, n).unwrap();
            let q = quadrature_from_matrix(&j).unwrap();
            prop_assert!((q.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
            prop_assert!(moment_mismatch(&j, &q, 2 * n - 1) <= 1e-10);
        }
    }
}
