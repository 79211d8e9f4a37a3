//! C ABI over `tridiag_spectra`.
//!
//! Every function returns a `TsStatus`; on failure the message is kept per
//! thread and read with `ts_last_error`. Handles are opaque and owned by the
//! caller until passed to the matching `_free`. Optional real parameters are
//! passed as NaN to mean "use the default".

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tridiag_spectra::coeffs::DeformedStyle;
use tridiag_spectra::density::{density_estimate, DensityEstimate};
use tridiag_spectra::spectra::{closed_form_spectrum, numeric_spectrum};
use tridiag_spectra::tridiag::{representation, PotentialCase, RepRequest, TridiagonalRep};
use tridiag_spectra::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    ParameterDomain = 2,
    Domain = 3,
    Unsupported = 4,
    Accuracy = 5,
    Matrix = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsCaseKind {
    Coulomb1 = 0,
    Coulomb2,
    Oscillator1,
    Oscillator2,
    Powerlaw1,
    Powerlaw2,
    Hulthen1,
    Hulthen2,
    Hulthen3,
    Morse1,
    Morse2,
    Rosenmorse,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsDensityStyle {
    /// Hulthén 1 and Rosen-Morse recursion.
    Additive = 0,
    /// Hulthén 2 recursion.
    Multiplicative = 1,
}

/// Physical parameters. Unused fields are ignored; `nu`, `mu` may be NaN
/// where the case treats them as optional, `lambda` and `mu_hat` default
/// to 1 and `b` to 0 when NaN.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TsParams {
    pub z: f64,
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    pub omega: f64,
    pub mu: f64,
    pub nu: f64,
    pub mu_hat: f64,
}

/// A tridiagonal representation of H - E.
pub struct TsRep(TridiagonalRep);

/// Gauss rule and smoothed curve of a deformed Jacobi density.
pub struct TsDensity(DensityEstimate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::ParameterDomain(_) => TsStatus::ParameterDomain,
        Error::Domain(_) => TsStatus::Domain,
        Error::Unsupported(_) => TsStatus::Unsupported,
        Error::Accuracy { .. } => TsStatus::Accuracy,
        Error::Matrix(_) => TsStatus::Matrix,
    }
}

/// Runs `f`, records any failure, and converts panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), (TsStatus, String)>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TsStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            TsStatus::Panic
        }
    }
}

fn lib<T>(r: tridiag_spectra::Result<T>) -> Result<T, (TsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (TsStatus, String) {
    (TsStatus::NullPointer, format!("{what} is null"))
}

fn opt(v: f64) -> Option<f64> {
    (!v.is_nan()).then_some(v)
}

fn build_case(kind: TsCaseKind, p: &TsParams) -> tridiag_spectra::Result<PotentialCase> {
    use PotentialCase::*;
    let lambda = opt(p.lambda).unwrap_or(1.0);
    let b = opt(p.b).unwrap_or(0.0);
    let mu_hat = opt(p.mu_hat).unwrap_or(1.0);
    let case = match kind {
        TsCaseKind::Coulomb1 => CoulombPlain { z: p.z },
        TsCaseKind::Coulomb2 => CoulombBarrier { z: p.z, b, nu: opt(p.nu) },
        TsCaseKind::Oscillator1 => Oscillator { omega: p.omega },
        TsCaseKind::Oscillator2 => OscillatorBarrier { lambda, b, nu: opt(p.nu) },
        TsCaseKind::Powerlaw1 => PowerLaw1 { mu: p.mu, lambda, a: p.a, b },
        TsCaseKind::Powerlaw2 => PowerLaw2 { mu: p.mu, lambda, a: p.a, b, nu: opt(p.nu) },
        TsCaseKind::Hulthen1 => Hulthen1 { lambda, a: p.a, b, nu: p.nu },
        TsCaseKind::Hulthen2 => Hulthen2 { lambda, a: p.a, b, nu: opt(p.nu) },
        TsCaseKind::Hulthen3 => Hulthen3 { lambda, a: p.a, b, nu: p.nu, mu: opt(p.mu) },
        TsCaseKind::Morse1 => Morse1 { lambda, a: p.a, b, mu_hat },
        TsCaseKind::Morse2 => Morse2 { lambda, a: p.a, mu_hat, nu: opt(p.nu) },
        TsCaseKind::Rosenmorse => RosenMorse { lambda, a: p.a, b, mu: p.mu, nu: p.nu },
    };
    case.validate()?;
    Ok(case)
}

/// Message of the last failed call on this thread ("" after a success).
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the size × size representation. `basis_lambda` is NaN except for
/// coulomb1 and oscillator1, where it is the free basis scale.
///
/// # Safety
/// `params` must point to a valid `TsParams`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_rep_new(
    kind: TsCaseKind,
    params: *const TsParams,
    ell: u32,
    basis_lambda: f64,
    energy: f64,
    size: usize,
    out: *mut *mut TsRep,
) -> TsStatus {
    guard(|| {
        let p = unsafe { params.as_ref() }.ok_or_else(|| null("params"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let case = lib(build_case(kind, p))?;
        let rep = lib(representation(&case, &RepRequest::new(ell, opt(basis_lambda), energy, size)))?;
        unsafe { *out = Box::into_raw(Box::new(TsRep(rep))) };
        Ok(())
    })
}

/// # Safety
/// `rep` must come from `ts_rep_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ts_rep_free(rep: *mut TsRep) {
    if !rep.is_null() {
        drop(unsafe { Box::from_raw(rep) });
    }
}

/// Basis size, or 0 for a null handle.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_rep_size(rep: *const TsRep) -> usize {
    unsafe { rep.as_ref() }.map_or(0, |r| r.0.size)
}

/// Copies the scaled form: `diag` gets `size` values a_n, `off` gets
/// `size - 1` values b_n; `y` and `scale` (entry = scaled / scale) are
/// written when non-null.
///
/// # Safety
/// `diag` and `off` must hold `size` and `size - 1` doubles.
#[no_mangle]
pub unsafe extern "C" fn ts_rep_entries(rep: *const TsRep, diag: *mut f64, off: *mut f64, y: *mut f64, scale: *mut f64) -> TsStatus {
    guard(|| {
        let r = &unsafe { rep.as_ref() }.ok_or_else(|| null("rep"))?.0;
        if diag.is_null() || (off.is_null() && r.size > 1) {
            return Err(null("output buffer"));
        }
        unsafe {
            ptr::copy_nonoverlapping(r.diag.as_ptr(), diag, r.size);
            if r.size > 1 {
                ptr::copy_nonoverlapping(r.off.as_ptr(), off, r.size - 1);
            }
            if !y.is_null() {
                *y = r.y;
            }
            if !scale.is_null() {
                *scale = r.scale;
            }
        }
        Ok(())
    })
}

fn fill(values: &[f64], out: *mut f64, cap: usize, count: *mut usize) -> Result<(), (TsStatus, String)> {
    if count.is_null() {
        return Err(null("count"));
    }
    unsafe { *count = values.len() };
    if values.len() > cap {
        return Err((TsStatus::BufferTooSmall, format!("need {} values, buffer holds {cap}", values.len())));
    }
    if !values.is_empty() {
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { ptr::copy_nonoverlapping(values.as_ptr(), out, values.len()) };
    }
    Ok(())
}

/// Closed-form ladder, at most `n_max` levels. `*count` is always set to
/// the number of levels; `BufferTooSmall` if it exceeds `cap`.
///
/// # Safety
/// `out` must hold `cap` doubles; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_closed_form_spectrum(
    kind: TsCaseKind,
    params: *const TsParams,
    ell: u32,
    n_max: usize,
    out: *mut f64,
    cap: usize,
    count: *mut usize,
) -> TsStatus {
    guard(|| {
        let p = unsafe { params.as_ref() }.ok_or_else(|| null("params"))?;
        let case = lib(build_case(kind, p))?;
        let s = lib(closed_form_spectrum(&case, ell, n_max))?;
        fill(&s.values(), out, cap, count)
    })
}

/// Lowest `n_states` eigenvalues of the finite-basis problem.
///
/// # Safety
/// `rep` must be a live handle; `out` must hold `n_states` doubles.
#[no_mangle]
pub unsafe extern "C" fn ts_numeric_spectrum(rep: *const TsRep, n_states: usize, out: *mut f64, count: *mut usize) -> TsStatus {
    guard(|| {
        let r = &unsafe { rep.as_ref() }.ok_or_else(|| null("rep"))?.0;
        let s = lib(numeric_spectrum(r, n_states))?;
        fill(&s.values(), out, n_states, count)
    })
}

/// Density estimate from the N × N Jacobi matrix. `bandwidth` NaN selects
/// Silverman's rule.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_density_new(
    style: TsDensityStyle,
    mu: f64,
    nu: f64,
    gamma: f64,
    n: usize,
    bandwidth: f64,
    out: *mut *mut TsDensity,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let style = match style {
            TsDensityStyle::Additive => DeformedStyle::Additive,
            TsDensityStyle::Multiplicative => DeformedStyle::Multiplicative,
        };
        let est = lib(density_estimate(style, mu, nu, gamma, n, opt(bandwidth)))?;
        unsafe { *out = Box::into_raw(Box::new(TsDensity(est))) };
        Ok(())
    })
}

/// # Safety
/// `d` must come from `ts_density_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ts_density_free(d: *mut TsDensity) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Gauss nodes and weights (N each).
///
/// # Safety
/// `nodes` and `weights` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn ts_density_rule(d: *const TsDensity, nodes: *mut f64, weights: *mut f64, cap: usize, count: *mut usize) -> TsStatus {
    guard(|| {
        let e = &unsafe { d.as_ref() }.ok_or_else(|| null("density"))?.0;
        fill(&e.nodes, nodes, cap, count)?;
        fill(&e.weights, weights, cap, count)
    })
}

/// Sampled curve (y, rho) and its length.
///
/// # Safety
/// `y` and `rho` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn ts_density_curve(d: *const TsDensity, y: *mut f64, rho: *mut f64, cap: usize, count: *mut usize) -> TsStatus {
    guard(|| {
        let e = &unsafe { d.as_ref() }.ok_or_else(|| null("density"))?.0;
        fill(&e.curve.y, y, cap, count)?;
        fill(&e.curve.rho, rho, cap, count)
    })
}

/// Kernel bandwidth used, or NaN for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_density_bandwidth(d: *const TsDensity) -> f64 {
    unsafe { d.as_ref() }.map_or(f64::NAN, |e| e.0.meta.bandwidth)
}
