//! Tridiagonal matrix representations of exactly solvable Schrödinger problems.
//!
//! The crate builds L² bases whose wave-operator matrix `H - E` is tridiagonal,
//! solves the resulting three-term recursions, extracts spectra and checks every
//! closed form against independent quadrature and finite-difference oracles.
//! Atomic units (ħ = m = 1) are used throughout.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Lanczos and Gauss-Kronrod constants are kept as published.
#![allow(clippy::excessive_precision)]

pub mod basisgen;
pub mod cli;
pub mod coeffs;
pub mod density;
pub mod eigen;
pub mod error;
pub mod oracle;
pub mod output;
pub mod orthopoly;
pub mod quad;
pub mod special;
pub mod spectra;
pub mod tridiag;

pub use error::{Error, Result};
