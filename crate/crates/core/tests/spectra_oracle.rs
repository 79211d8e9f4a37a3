use tridiag_spectra::eigen::tridiag_eigen;
use tridiag_spectra::oracle::fd_spectrum;
use tridiag_spectra::spectra::{closed_form_spectrum, diagonalization_conditions, numeric_spectrum, SpectrumKind};
use tridiag_spectra::tridiag::{representation, PotentialCase, RepRequest};
use PotentialCase::*;

fn fd_cases() -> Vec<(PotentialCase, u32)> {
    vec![
        (CoulombPlain { z: -1.0 }, 0),
        (CoulombPlain { z: -1.0 }, 1),
        (CoulombBarrier { z: -1.0, b: 0.0, nu: None }, 0),
        (CoulombBarrier { z: -1.5, b: 0.3, nu: None }, 1),
        (Oscillator { omega: 1.0 }, 0),
        (Oscillator { omega: 0.7 }, 2),
        (OscillatorBarrier { lambda: 1.0, b: 0.4, nu: None }, 0),
        (Hulthen1 { lambda: 1.0, a: -4.0, b: 0.0, nu: 1.5 }, 0),
        (Hulthen1 { lambda: 1.0, a: -1.0, b: 0.0, nu: 1.0 }, 0),
        (Hulthen2 { lambda: 1.0, a: -5.0, b: 0.5, nu: None }, 0),
        (Hulthen3 { lambda: 1.0, a: -3.0, b: 0.2, nu: 1.5, mu: None }, 0),
        (Morse1 { lambda: 1.0, a: -1.0, b: 0.125, mu_hat: 1.0 }, 0),
        (Morse2 { lambda: 1.0, a: -2.0, mu_hat: 1.0, nu: None }, 0),
        (RosenMorse { lambda: 1.0, a: -6.0, b: 0.0, mu: 1.5, nu: 0.8 }, 0),
    ]
}

#[test]
fn ladders_match_finite_differences() {
    for (case, ell) in fd_cases() {
        let cf = closed_form_spectrum(&case, ell, 3).unwrap();
        assert!(!cf.levels.is_empty(), "{}: empty ladder ({:?})", case.name(), cf.reason);
        let fd = fd_spectrum(&case, ell, cf.levels.len(), 1e-7).unwrap();
        for (c, f) in cf.levels.iter().zip(&fd.levels) {
            assert!(
                (c.value - f.value).abs() <= 1e-6,
                "{} l={ell} n={}: closed {} fd {} (est {:?})",
                case.name(),
                c.n,
                c.value,
                f.value,
                f.error
            );
        }
    }
}

#[test]
fn reference_values() {
    let c = closed_form_spectrum(&CoulombPlain { z: -1.0 }, 0, 3).unwrap();
    assert_eq!(c.values()[..2], [-0.5, -0.125]);
    assert!((c.values()[2] + 1.0 / 18.0).abs() < 1e-16);
    let m = closed_form_spectrum(&Morse1 { lambda: 1.0, a: -1.0, b: 0.125, mu_hat: 1.0 }, 0, 5).unwrap();
    assert_eq!(m.values()[0], -1.125);
    let b0 = closed_form_spectrum(&CoulombBarrier { z: -1.0, b: 0.0, nu: None }, 2, 6).unwrap();
    let plain = closed_form_spectrum(&CoulombPlain { z: -1.0 }, 2, 6).unwrap();
    for (a, b) in b0.values().iter().zip(plain.values()) {
        assert!((a - b).abs() <= 1e-15 * b.abs());
    }
}

#[test]
fn oscillator_spacing_is_two_omega() {
    for (case, om) in [(Oscillator { omega: 1.3 }, 1.3), (OscillatorBarrier { lambda: 0.9, b: 0.7, nu: None }, 0.81)] {
        let v = closed_form_spectrum(&case, 1, 6).unwrap().values();
        for w in v.windows(2) {
            assert!((w[1] - w[0] - 2.0 * om).abs() < 1e-12);
        }
    }
}

fn condition_cases() -> Vec<(PotentialCase, u32)> {
    let mut v = fd_cases();
    v.extend([
        (PowerLaw1 { mu: 0.5, lambda: 1.0, a: -0.4, b: 0.3 }, 1),
        (PowerLaw1 { mu: -0.75, lambda: 1.2, a: -0.3, b: 1.1 }, 1),
        (PowerLaw2 { mu: 0.5, lambda: 1.0, a: 0.3, b: -0.7, nu: None }, 0),
        (PowerLaw2 { mu: 1.25, lambda: 0.9, a: -0.05, b: 0.4, nu: None }, 2),
        (Morse2 { lambda: 0.5, a: -3.0, mu_hat: 2.0, nu: None }, 0),
        (Hulthen2 { lambda: 0.5, a: -3.0, b: 0.2, nu: None }, 0),
    ]);
    v
}

#[test]
fn conditions_vanish_on_the_ladder() {
    for (case, ell) in condition_cases() {
        for n in 0..=10 {
            let cond = diagonalization_conditions(&case, ell, n).unwrap();
            let Some(root) = cond.closed_form_root().unwrap() else { break };
            let r = cond.residuals(root);
            let scale = 1.0 + root[0].abs() + root[1].abs() + (n * n) as f64;
            assert!(
                r[0].abs() <= 1e-12 * scale && r[1].abs() <= 1e-12 * scale,
                "{} n={n}: residuals {r:?} at {root:?}",
                case.name()
            );
        }
    }
}

/// The case with the free parameters pinned to the n-th root.
fn pinned(case: &PotentialCase, root: [f64; 2]) -> (PotentialCase, RepRequest) {
    let mut c = *case;
    let mut lam = None;
    let mut e = root[0];
    match &mut c {
        CoulombPlain { .. } | Oscillator { .. } => lam = Some(root[1]),
        CoulombBarrier { nu, .. } | OscillatorBarrier { nu, .. } | Hulthen2 { nu, .. } | Morse2 { nu, .. } => {
            *nu = Some(root[1])
        }
        PowerLaw1 { a, b, .. } => {
            *a = root[0];
            *b = root[1];
            e = 0.0;
        }
        PowerLaw2 { b, nu, .. } => {
            *b = root[0];
            *nu = Some(root[1]);
            e = 0.0;
        }
        Hulthen1 { b, .. } | Morse1 { b, .. } => *b = root[1],
        Hulthen3 { mu, .. } => *mu = Some(root[1]),
        RosenMorse { lambda, b, mu, nu, .. } => {
            let c = tridiag_spectra::tridiag::rosen_morse_c(*lambda, *mu, *nu) / (*lambda * *lambda);
            let q = root[1];
            *b = root[0];
            *mu = q + c / q;
            *nu = q - c / q;
        }
    }
    (c, RepRequest::new(0, lam, e, 1))
}

#[test]
fn leading_block_is_singular_at_each_level() {
    for (case, ell) in condition_cases() {
        for n in 0..=6 {
            let cond = diagonalization_conditions(&case, ell, n).unwrap();
            let Some(root) = cond.closed_form_root().unwrap() else { break };
            let (c, mut req) = pinned(&case, root);
            req.ell = ell;
            req.size = n + 2;
            let rep = representation(&c, &req).unwrap();
            let w = rep.wave_matrix();
            assert!(w.off[n].abs() <= 1e-10 * rep.max_entry().max(1.0), "{} n={n}: b_n = {}", case.name(), w.off[n]);
            let ev = tridiag_eigen(&w.leading(n + 1), 0).unwrap().values;
            let smallest = ev.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
            assert!(
                smallest <= 1e-10 * rep.max_entry().max(1.0),
                "{} n={n}: smallest |eigenvalue| {smallest} of {ev:?}",
                case.name()
            );
        }
    }
}

#[test]
fn power_law_ladders_are_couplings() {
    let s = closed_form_spectrum(&PowerLaw1 { mu: 0.5, lambda: 1.0, a: -0.4, b: 0.3 }, 0, 3).unwrap();
    assert_eq!(s.kind, SpectrumKind::CriticalCoupling);
    assert_eq!(s.quantity, "A");
}

#[test]
fn numeric_coulomb_converges_monotonically() {
    let case = CoulombPlain { z: -1.0 };
    let mut last = f64::INFINITY;
    for n in [10, 20, 40] {
        let rep = representation(&case, &RepRequest::new(0, Some(1.3), -0.1, n)).unwrap();
        let e0 = numeric_spectrum(&rep, 1).unwrap().levels[0].value;
        assert!(e0 <= last + 1e-13, "N={n}: {e0} > {last}");
        assert!(e0 >= -0.5 - 1e-10);
        last = e0;
    }
    assert!((last + 0.5).abs() < 1e-6, "{last}");
    let rep = representation(&case, &RepRequest::new(0, Some(2.0), -0.1, 40)).unwrap();
    assert!((numeric_spectrum(&rep, 1).unwrap().levels[0].value + 0.5).abs() < 1e-6);
}

#[test]
fn numeric_oscillator_ladder() {
    let rep = representation(&Oscillator { omega: 1.0 }, &RepRequest::new(0, Some(1.0), 0.0, 40)).unwrap();
    let v = numeric_spectrum(&rep, 3).unwrap().values();
    for (a, b) in v.iter().zip([1.5, 3.5, 5.5]) {
        assert!((a - b).abs() < 1e-8, "{v:?}");
    }
}

#[test]
fn numeric_spectrum_needs_split() {
    let rep = representation(&Morse1 { lambda: 1.0, a: -1.0, b: 0.125, mu_hat: 1.0 }, &RepRequest::new(0, None, -0.5, 5)).unwrap();
    assert!(numeric_spectrum(&rep, 1).is_err());
}

#[test]
fn ladders_end_with_a_reason() {
    let s = closed_form_spectrum(&Morse1 { lambda: 1.0, a: -1.0, b: 0.125, mu_hat: 1.0 }, 0, 10).unwrap();
    assert_eq!(s.levels.len(), 2);
    assert!(s.reason.is_some());
    let s = closed_form_spectrum(&CoulombPlain { z: 1.0 }, 0, 10).unwrap();
    assert!(s.levels.is_empty() && s.reason.is_some());
}
