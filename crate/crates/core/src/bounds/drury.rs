//! The sectorial determinant route: `W(e^{-i pi/4} A)` lies in the sector of
//! half-angle `alpha_A = arctan delta_A`, and a Fischer-type determinant
//! inequality bounds every active diagonal entry.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use crate::classes::{HermitianSplit, HighamMatrix};
use crate::elimination::{eliminate_no_pivot_with, growth_report};
use crate::error::{Error, Result};
use crate::linalg::{cholesky, determinant, hermitian_eigenvalues, solve_lower};
use crate::matrix::ComplexDenseMatrix;
use crate::tolerances::Tolerances;

use super::BoundCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorInfo {
    /// `|| (B+C)^{-1/2} (C-B) (B+C)^{-1/2} ||_2`, in `[0, 1)`.
    pub delta: f64,
    /// `arctan delta`, in `[0, pi/4)`.
    pub alpha: f64,
    /// `1 + delta^2 = sec^2 alpha`.
    pub refined_bound: f64,
}

/// `delta_A` from `L^{-1} (C-B) L^{-*}` with `L L^* = B + C`, which is similar
/// to the symmetric normalization.
pub fn drury_sector(a: &HighamMatrix) -> Result<SectorInfo> {
    let (b, c) = (a.real_part(), a.imag_part());
    let l = cholesky(&(b + c))?;
    let x = solve_lower(&l, &(c - b));
    let w = solve_lower(&l, &x.adjoint()).hermitian_symmetrized();
    let spectrum = hermitian_eigenvalues(&w)?;
    let delta = spectrum.min().abs().max(spectrum.max().abs());
    if delta >= 1.0 {
        return Err(Error::NotInClass(format!(
            "sector radius {delta} is not below 1"
        )));
    }
    Ok(SectorInfo {
        delta,
        alpha: delta.atan(),
        refined_bound: 1.0 + delta * delta,
    })
}

/// `|det A| <= sec^2(m alpha) |det A11| |det A22|` with `A11` the leading
/// `p x p` block and `m = min(p, n-p)`.
///
/// Sector membership of `A` is the caller's claim and is not tested here.
pub fn fischer_sector_check(
    a: &ComplexDenseMatrix,
    alpha: f64,
    p: usize,
) -> Result<BoundCertificate> {
    let n = a.require_square()?;
    if p == 0 || p >= n {
        return Err(Error::DimensionMismatch(format!(
            "need 1 <= p < n, got p = {p}, n = {n}"
        )));
    }
    let m_alpha = (p.min(n - p)) as f64 * alpha;
    if !(0.0..FRAC_PI_2).contains(&m_alpha) {
        return Err(Error::AngleOutOfRange { m_alpha });
    }
    let sec2 = 1.0 / m_alpha.cos().powi(2);
    let d = determinant(a)?.norm();
    let d11 = determinant(&a.block(0, p, 0, p))?.norm();
    let d22 = determinant(&a.block(p, n, p, n))?.norm();
    Ok(
        BoundCertificate::new("fischer.sector", d, None, Some(sec2 * d11 * d22))
            .context(format!("p={p}, alpha={alpha}")),
    )
}

/// Certificates of the full determinant route for one Higham matrix:
/// `rho_n <= 1 + delta^2`, `1 + delta^2 < 2`, and the scalar-block Fischer
/// inequality on every `A[{j} + I_k]` (scalar first) at both `pi/4` and
/// `alpha_A`.
pub fn drury_certificates(
    a: &HighamMatrix,
    tol: &Tolerances,
) -> Result<(SectorInfo, Vec<BoundCertificate>)> {
    let sector = drury_sector(a)?;
    let trace = eliminate_no_pivot_with(a.matrix(), tol.pivot_tol)?;
    let report = growth_report(&trace);
    let mut certs = vec![
        BoundCertificate::upper_bound(
            "drury.refined_growth",
            report.rho,
            sector.refined_bound,
            tol.cert_tol,
        )
        .context(format!("delta={}", sector.delta)),
        BoundCertificate::upper_bound(
            "drury.refined_below_two",
            sector.refined_bound,
            2.0,
            tol.cert_tol,
        ),
    ];
    let n = a.n();
    let original = a.matrix();
    for k in 1..n {
        for j in k..n {
            let mut idx = vec![j];
            idx.extend(0..k);
            let sub = original.principal(&idx);
            for (label, alpha) in [("quarter", FRAC_PI_4), ("refined", sector.alpha)] {
                let cert = fischer_sector_check(&sub, alpha, 1)?;
                certs.push(BoundCertificate {
                    name: format!("drury.fischer_{label}"),
                    context: format!("k={k}, j={j}, alpha={alpha}"),
                    ..cert
                });
            }
            let ratio = trace.active_diagonal(k, j).norm() / original[(j, j)].norm();
            certs.push(
                BoundCertificate::upper_bound(
                    "drury.active_diagonal",
                    ratio,
                    sector.refined_bound,
                    tol.cert_tol,
                )
                .context(format!("k={k}, j={j}")),
            );
        }
    }
    Ok((sector, certs))
}
