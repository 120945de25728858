//! Numerical tolerances shared by every module.
//!
//! All values are relative unless stated otherwise. They are sized for
//! binary64 arithmetic on dense matrices up to a few hundred rows.

use serde::{Deserialize, Serialize};

/// Positive definiteness: smallest eigenvalue (or Cholesky pivot) must exceed
/// `PD_TOL * ||H||`.
pub const PD_TOL: f64 = 1e-12;

/// Relative residual allowed in reconstruction checks.
pub const RTOL: f64 = 1e-10;

/// Elimination pivots must exceed `PIVOT_TOL * max |a_ij|` of the input.
pub const PIVOT_TOL: f64 = 1e-13;

/// Relative Hermitian / complex-symmetric defect accepted as exact symmetry.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Certificate tolerance: `tol = CERT_TOL * max(1, |measured|)`.
pub const CERT_TOL: f64 = 1e-9;

/// Absolute slack for asserting that a sharp bound is attained.
pub const SHARP_EQUALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub pd_tol: f64,
    pub rtol: f64,
    pub pivot_tol: f64,
    pub symmetry_tol: f64,
    pub cert_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pd_tol: PD_TOL,
            rtol: RTOL,
            pivot_tol: PIVOT_TOL,
            symmetry_tol: SYMMETRY_TOL,
            cert_tol: CERT_TOL,
        }
    }
}
