use proptest::prelude::*;
use tridiag_spectra::basisgen::BasisSpec;
use tridiag_spectra::coeffs::*;
use tridiag_spectra::oracle::{ode_residual, RadialGrid};
use tridiag_spectra::orthopoly::{eval_all, PolyFamily};
use tridiag_spectra::spectra::closed_form_spectrum;
use tridiag_spectra::tridiag::{representation, PotentialCase, RepRequest};
use PotentialCase::*;

const N_MAX: usize = 30;

fn pollaczek_cases() -> Vec<(PotentialCase, RepRequest)> {
    let r = RepRequest::new;
    vec![
        (CoulombPlain { z: -1.0 }, r(0, Some(1.0), 0.5, 1)),
        (CoulombPlain { z: 0.7 }, r(2, Some(0.8), -0.1, 1)),
        (CoulombPlain { z: -2.5 }, r(1, Some(2.0), -0.3, 1)),
        (Oscillator { omega: 1.0 }, r(0, Some(1.1), 0.6, 1)),
        (Oscillator { omega: 2.3 }, r(1, Some(0.9), 3.0, 1)),
        (PowerLaw1 { mu: 0.5, lambda: 1.0, a: -0.4, b: 0.3 }, r(0, None, 0.0, 1)),
        (PowerLaw1 { mu: 1.5, lambda: 0.7, a: 0.2, b: 0.6 }, r(1, None, 0.0, 1)),
        (Morse1 { lambda: 1.0, a: -1.0, b: 0.3, mu_hat: 1.0 }, r(0, None, -0.7, 1)),
        (Morse1 { lambda: 0.7, a: -1.0, b: 0.4, mu_hat: 2.5 }, r(0, None, -0.2, 1)),
    ]
}

fn dual_hahn_cases() -> Vec<(PotentialCase, RepRequest)> {
    let r = RepRequest::new;
    vec![
        (CoulombBarrier { z: 1.0, b: 0.2, nu: None }, r(1, None, -0.1, 1)),
        (CoulombBarrier { z: -0.3, b: 0.5, nu: None }, r(0, None, -0.5, 1)),
        (OscillatorBarrier { lambda: 1.0, b: 0.4, nu: None }, r(0, None, 1.0, 1)),
        (OscillatorBarrier { lambda: 0.8, b: 1.1, nu: None }, r(2, None, -0.5, 1)),
        (PowerLaw2 { mu: 0.5, lambda: 1.0, a: 0.3, b: 0.4, nu: None }, r(0, None, 0.0, 1)),
        (PowerLaw2 { mu: 1.25, lambda: 0.9, a: -0.05, b: 0.4, nu: None }, r(1, None, 0.0, 1)),
        (Morse2 { lambda: 1.0, a: -0.4, mu_hat: 1.0, nu: Some(1.3) }, r(0, None, -0.3, 1)),
        (Morse2 { lambda: 0.8, a: 0.5, mu_hat: 2.0, nu: Some(2.0) }, r(0, None, -0.9, 1)),
    ]
}

fn check_recursion(case: &PotentialCase, req: &RepRequest, sol: &CoefficientSolution) {
    assert_eq!(sol.values.len(), N_MAX + 1);
    let rep = representation(case, &RepRequest { size: N_MAX + 1, ..*req }).unwrap();
    let worst = recursion_residuals(&rep, &sol.values).into_iter().fold(0.0f64, f64::max);
    assert!(worst <= 1e-10, "{}: scaled residual {worst:e}", case.name());
    // first row has no f_{-1}
    let r0 = (rep.diag[0] - rep.y) * sol.values[0] + rep.off[0] * sol.values[1];
    assert!(r0.abs() <= 1e-10 * ((rep.diag[0] - rep.y) * sol.values[0]).abs().max(1e-300));
}

#[test]
fn pollaczek_solutions_satisfy_their_recursions() {
    for (case, req) in pollaczek_cases() {
        let sol = pollaczek_coeffs(&case, &req, N_MAX).unwrap();
        check_recursion(&case, &req, &sol);
    }
}

#[test]
fn dual_hahn_solutions_satisfy_their_recursions() {
    for (case, req) in dual_hahn_cases() {
        let sol = cdhahn_coeffs(&case, &req, N_MAX).unwrap();
        check_recursion(&case, &req, &sol);
    }
}

#[test]
fn closed_forms_agree_with_forward_solution() {
    for (case, req) in pollaczek_cases().into_iter().chain(dual_hahn_cases()) {
        let cf = match case {
            CoulombPlain { .. } | Oscillator { .. } | PowerLaw1 { .. } | Morse1 { .. } => pollaczek_coeffs(&case, &req, 8),
            _ => cdhahn_coeffs(&case, &req, 8),
        }
        .unwrap();
        let rep = representation(&case, &RepRequest { size: 9, ..req }).unwrap();
        let fw = solve_forward(&rep, cf.values[0]);
        for (a, b) in cf.values.iter().zip(&fw.values) {
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-12), "{}: {a} vs {b}", case.name());
        }
    }
}

#[test]
fn quantization_point_is_a_signal() {
    let sol = pollaczek_coeffs(&CoulombPlain { z: -1.0 }, &RepRequest::new(0, Some(2.0), -0.5, 1), 10).unwrap();
    assert!(sol.bound_state_condition);
    assert_eq!(sol.family, CoefficientFamily::NumericOnly);
    assert_eq!(sol.truncated_at, Some(0));
}

#[test]
fn deformed_recursion_at_zero_gamma_is_jacobi() {
    let (mu, nu) = (1.0, 1.5);
    for &y in &[0.1, 0.37, 0.8, 1.3] {
        let p = deformed_jacobi_polys(DeformedStyle::Additive, mu, nu, 0.0, y, 20).unwrap();
        let j = eval_all(&PolyFamily::Jacobi { mu, nu }, 20, 2.0 * y - 1.0).unwrap();
        // J_n obeys the same recursion up to a y-independent rescaling
        let ratio: Vec<f64> = p.iter().zip(&j).map(|(a, b)| a / b).collect();
        let p2 = deformed_jacobi_polys(DeformedStyle::Additive, mu, nu, 0.0, 0.55, 20).unwrap();
        let j2 = eval_all(&PolyFamily::Jacobi { mu, nu }, 20, 0.1).unwrap();
        for n in 0..=20 {
            let r2 = p2[n] / j2[n];
            assert!((ratio[n] - r2).abs() <= 1e-9 * r2.abs(), "n={n}: {} vs {r2}", ratio[n]);
        }
    }
}

#[test]
fn deformed_coefficients_map_to_the_deformed_polynomials() {
    let r = RepRequest::new;
    let cases = [
        (Hulthen1 { lambda: 1.0, a: -1.0, b: 40.0, nu: 1.5 }, r(0, None, -0.3, 1), DeformedStyle::Additive),
        (Hulthen2 { lambda: 1.0, a: -1.2, b: 0.3, nu: None }, r(0, None, -0.2, 1), DeformedStyle::Multiplicative),
        (Hulthen3 { lambda: 1.0, a: -1.0, b: 0.2, nu: 1.5, mu: None }, r(0, None, -0.5, 1), DeformedStyle::Multiplicative),
        (RosenMorse { lambda: 1.0, a: -0.5, b: 30.0, mu: 1.5, nu: 0.8 }, r(0, None, 0.0, 1), DeformedStyle::Additive),
    ];
    for (case, req, style) in cases {
        let sol = deformed_jacobi_coeffs(&case, &req, 15).unwrap();
        let CoefficientFamily::DeformedJacobi { gamma, mu, nu, y } = sol.family else { panic!("{}", case.name()) };
        let want = deformed_jacobi_polys(style, mu, nu, gamma, y, 15).unwrap();
        let got = deformed_polynomials(&case, &sol).unwrap();
        assert!((got[0] - 1.0).abs() < 1e-14);
        for n in 0..=15 {
            assert!((got[n] - want[n]).abs() <= 1e-9 * want[n].abs().max(1e-9), "{} n={n}: {} vs {}", case.name(), got[n], want[n]);
        }
    }
}

#[test]
fn large_gamma_is_flagged() {
    let small = deformed_jacobi_coeffs(&Hulthen1 { lambda: 1.0, a: -1.0, b: 400.0, nu: 1.5 }, &RepRequest::new(0, None, -0.3, 1), 10).unwrap();
    assert!(small.caution.is_none());
    let big = deformed_jacobi_coeffs(&Hulthen1 { lambda: 1.0, a: -1.0, b: 0.5, nu: 1.5 }, &RepRequest::new(0, None, -0.3, 1), 10).unwrap();
    assert!(big.caution.is_some());
}

proptest! {
    #[test]
    fn rescaling_is_involutive(mu in -0.9f64..5.0, nu in -0.9f64..5.0, vals in prop::collection::vec(-1e3f64..1e3, 1..40)) {
        let mut maps = vec![Rescaling::Pollaczek { nu }, Rescaling::DualHahn { nu }];
        if mu + nu > -1.0 {
            maps.push(Rescaling::DeformedJacobi { mu, nu });
        }
        for map in maps {
            let back = map.to_polynomials(&map.to_coefficients(&vals));
            for (a, b) in vals.iter().zip(&back) {
                prop_assert!((a - b).abs() <= 1e-13 * a.abs());
            }
        }
    }

    #[test]
    fn forward_solution_satisfies_recursion(z in -3.0f64..3.0, lam in 0.3f64..3.0, e in -2.0f64..2.0, ell in 0u32..4) {
        let rep = representation(&CoulombPlain { z }, &RepRequest::new(ell, Some(lam), e, 25)).unwrap();
        let sol = solve_forward(&rep, 1.0);
        prop_assume!(sol.truncated_at.is_none());
        let worst = recursion_residuals(&rep, &sol.values).into_iter().fold(0.0f64, f64::max);
        prop_assert!(worst <= 1e-12);
    }
}

#[test]
fn ode_residual_of_exact_coulomb_state() {
    let case = CoulombPlain { z: -1.0 };
    let rep = representation(&case, &RepRequest::new(0, Some(2.0), -0.5, 10)).unwrap();
    let mut f = vec![0.0; 10];
    f[0] = 1.0;
    let grid = RadialGrid::for_basis(&rep.basis);
    let rep_ok = ode_residual(&rep.basis, &f, &case, 0, -0.5, &grid).unwrap();
    assert!(rep_ok.computed < 1e-8, "{}", rep_ok.computed);
    let noise: Vec<f64> = (0..10).map(|i| ((i * 7919) % 13) as f64 / 13.0 - 0.4).collect();
    let bad = ode_residual(&rep.basis, &noise, &case, 0, -0.5, &grid).unwrap();
    assert!(bad.computed > 1e-2, "{}", bad.computed);
}

#[test]
fn ode_residual_of_hulthen_state() {
    let case = Hulthen1 { lambda: 1.0, a: -4.0, b: 0.0, nu: 1.5 };
    let lev = closed_form_spectrum(&case, 0, 2).unwrap().levels[1];
    let rep = representation(&case, &RepRequest::new(0, None, lev.value, 30)).unwrap();
    let mut f = vec![0.0; 30];
    f[1] = 1.0;
    let spec: BasisSpec = rep.basis;
    let r = ode_residual(&spec, &f, &case, 0, lev.value, &RadialGrid::for_basis(&spec)).unwrap();
    assert!(r.computed < 1e-6, "{}", r.computed);
}
