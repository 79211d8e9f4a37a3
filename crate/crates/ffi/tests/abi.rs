use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;
use tridiag_spectra_ffi::*;

fn params() -> TsParams {
    TsParams {
        z: f64::NAN,
        a: f64::NAN,
        b: f64::NAN,
        lambda: f64::NAN,
        omega: f64::NAN,
        mu: f64::NAN,
        nu: f64::NAN,
        mu_hat: f64::NAN,
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ts_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn coulomb_ladder_through_the_abi() {
    let p = TsParams { z: -1.0, ..params() };
    let mut out = [0.0; 3];
    let mut n = 0;
    let s = unsafe { ts_closed_form_spectrum(TsCaseKind::Coulomb1, &p, 0, 3, out.as_mut_ptr(), 3, &mut n) };
    assert_eq!(s, TsStatus::Ok);
    assert_eq!(n, 3);
    assert_eq!(out[..2], [-0.5, -0.125]);
    assert_eq!(last_error(), "");
}

#[test]
fn small_buffer_reports_needed_size() {
    let p = TsParams { z: -1.0, ..params() };
    let mut out = [0.0; 2];
    let mut n = 0;
    let s = unsafe { ts_closed_form_spectrum(TsCaseKind::Coulomb1, &p, 0, 5, out.as_mut_ptr(), 2, &mut n) };
    assert_eq!(s, TsStatus::BufferTooSmall);
    assert_eq!(n, 5);
    assert!(last_error().contains("need 5"));
}

#[test]
fn representation_handle_round_trip() {
    let p = TsParams { omega: 1.0, ..params() };
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { ts_rep_new(TsCaseKind::Oscillator1, &p, 0, 1.0, 0.0, 30, &mut rep) }, TsStatus::Ok);
    assert_eq!(unsafe { ts_rep_size(rep) }, 30);
    let (mut d, mut o, mut y, mut sc) = (vec![0.0; 30], vec![0.0; 29], 0.0, 0.0);
    assert_eq!(unsafe { ts_rep_entries(rep, d.as_mut_ptr(), o.as_mut_ptr(), &mut y, &mut sc) }, TsStatus::Ok);
    assert!(sc > 0.0 && d.iter().all(|v| v.is_finite()));
    let mut ev = [0.0; 3];
    let mut n = 0;
    assert_eq!(unsafe { ts_numeric_spectrum(rep, 3, ev.as_mut_ptr(), &mut n) }, TsStatus::Ok);
    for (a, b) in ev.iter().zip([1.5, 3.5, 5.5]) {
        assert!((a - b).abs() < 1e-6, "{ev:?}");
    }
    unsafe { ts_rep_free(rep) };
    unsafe { ts_rep_free(ptr::null_mut()) };
}

#[test]
fn errors_map_to_codes() {
    let p = TsParams { omega: -1.0, ..params() };
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { ts_rep_new(TsCaseKind::Oscillator1, &p, 0, 1.0, 0.0, 4, &mut rep) }, TsStatus::ParameterDomain);
    assert!(rep.is_null());
    assert!(last_error().contains("frequency"));
    assert_eq!(unsafe { ts_rep_new(TsCaseKind::Oscillator1, ptr::null(), 0, 1.0, 0.0, 4, &mut rep) }, TsStatus::NullPointer);
    assert_eq!(unsafe { ts_rep_size(ptr::null()) }, 0);
    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { ts_density_new(TsDensityStyle::Additive, -2.0, 1.0, 0.0, 10, f64::NAN, &mut d) },
        TsStatus::ParameterDomain
    );
}

#[test]
fn errors_are_per_thread() {
    let p = TsParams { omega: -1.0, ..params() };
    let mut rep = ptr::null_mut();
    unsafe { ts_rep_new(TsCaseKind::Oscillator1, &p, 0, 1.0, 0.0, 4, &mut rep) };
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert!(!last_error().is_empty());
}

#[test]
fn density_handle() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { ts_density_new(TsDensityStyle::Multiplicative, 1.0, 1.5, 0.2, 51, f64::NAN, &mut d) }, TsStatus::Ok);
    let (mut x, mut w, mut n) = (vec![0.0; 51], vec![0.0; 51], 0);
    assert_eq!(unsafe { ts_density_rule(d, x.as_mut_ptr(), w.as_mut_ptr(), 51, &mut n) }, TsStatus::Ok);
    assert_eq!(n, 51);
    assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-13);
    assert_eq!(unsafe { ts_density_curve(d, ptr::null_mut(), ptr::null_mut(), 0, &mut n) }, TsStatus::BufferTooSmall);
    let (mut y, mut rho) = (vec![0.0; n], vec![0.0; n]);
    assert_eq!(unsafe { ts_density_curve(d, y.as_mut_ptr(), rho.as_mut_ptr(), n, &mut n) }, TsStatus::Ok);
    let mass: f64 = y.windows(2).zip(rho.windows(2)).map(|(a, b)| 0.5 * (a[1] - a[0]) * (b[0] + b[1])).sum();
    assert!((mass - 1.0).abs() < 1e-6);
    assert!(unsafe { ts_density_bandwidth(d) } > 0.0);
    unsafe { ts_density_free(d) };
    assert!(unsafe { ts_density_bandwidth(ptr::null()) }.is_nan());
}

fn shared_library() -> Option<PathBuf> {
    // tests run from target/<profile>/deps
    let deps = std::env::current_exe().ok()?.parent()?.to_path_buf();
    let name = format!("{}tridiag_spectra_ffi{}", std::env::consts::DLL_PREFIX, std::env::consts::DLL_SUFFIX);
    [deps.join(&name), deps.parent()?.join(&name)].into_iter().find(|p| p.exists())
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/tridiag_spectra.h");
    assert!(std::fs::read_to_string(&header).unwrap().contains("ts_density_new"));
    let Some(lib) = shared_library() else {
        panic!("shared library not found next to the test binary");
    };
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .arg(format!("-Wl,-rpath,{}", lib.parent().unwrap().display()))
        .arg("-lm")
        .arg("-o")
        .arg(&exe)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "C compile failed"),
        Err(e) => panic!("no C compiler ({cc}): {e}"),
    }
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke exited {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
