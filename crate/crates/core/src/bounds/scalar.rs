//! Scalar Schur-complement estimates for a block `[[G, z], [w, alpha]]`.

use serde::Serialize;

use crate::classes::HermitianSplit;
use crate::error::{Error, Result};
use crate::linalg::{cholesky, condition_number, simultaneous_congruence, solve_lower, PivotedLu};
use crate::matrix::{ComplexDenseMatrix, C64};
use crate::tolerances::{CERT_TOL, PIVOT_TOL};

use super::{kantorovich_constant, lower_scalar_constant, upper_constant, BoundCertificate};

fn check_cap(kappa: f64, cap: f64) -> Result<()> {
    if kappa > cap * (1.0 + CERT_TOL) {
        Err(Error::KappaExceeded { kappa, cap })
    } else {
        Ok(())
    }
}

/// Block Kantorovich estimate `h* H11^{-1} h <= ((w-1)/(w+1))^2 eta` for a
/// Hermitian positive definite `H = [[H11, h], [h*, eta]]`.
///
/// The bound is evaluated at the measured `kappa(H)`; `cap` only guards the
/// caller's assumption `kappa(H) <= cap`.
pub fn kantorovich_check(h: &ComplexDenseMatrix, cap: f64) -> Result<BoundCertificate> {
    let n = h.require_square()?;
    if n < 2 {
        return Err(Error::DimensionMismatch("need at least a 2x2 block".into()));
    }
    let kappa = condition_number(h)?;
    check_cap(kappa, cap)?;
    let m = n - 1;
    let l = cholesky(&h.block(0, m, 0, m))?;
    let y = solve_lower(&l, &h.block(0, m, m, n));
    let measured: f64 = (0..m).map(|i| y[(i, 0)].norm_sqr()).sum();
    let eta = h[(m, m)].re;
    Ok(BoundCertificate::upper_bound(
        "kantorovich",
        measured,
        kantorovich_constant(kappa) * eta,
        CERT_TOL,
    )
    .context(format!("kappa={kappa}, eta={eta}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarSchurCertificates {
    pub alpha: C64,
    /// `q = w G^{-1} z`, the update subtracted from `alpha`.
    pub q: C64,
    /// `sigma = alpha - q`.
    pub sigma: C64,
    pub omega: f64,
    pub q_cert: BoundCertificate,
    pub sigma_cert: BoundCertificate,
}

/// `q` and `sigma` for the trailing scalar of a square block.
pub fn scalar_update(m: &ComplexDenseMatrix) -> Result<(C64, C64)> {
    let n = m.require_square()?;
    if n < 2 {
        return Err(Error::DimensionMismatch("need at least a 2x2 block".into()));
    }
    let k = n - 1;
    let lu = PivotedLu::factor(&m.block(0, k, 0, k))?;
    if let Some(index) = lu.first_small_pivot(PIVOT_TOL * m.max_abs()) {
        return Err(Error::SingularLeadingBlock { index });
    }
    let x = lu.solve(&m.block(0, k, k, n));
    let q = (0..k).map(|i| m[(k, i)] * x[(i, 0)]).sum::<C64>();
    let alpha = m[(k, k)];
    Ok((alpha, alpha - q))
}

/// Certificates `|q| <= ((w-1)/(w+1))^2 |alpha|` and
/// `4w/(1+w)^2 |alpha| <= |sigma| <= 2(1+w^2)/(1+w)^2 |alpha|` for the trailing
/// scalar of a Higham or accretive-dissipative block, with `w` the block's
/// measured `max(kappa(B), kappa(C))`.
pub fn scalar_schur_certificate<M: HermitianSplit>(
    m: &M,
    cap: f64,
) -> Result<ScalarSchurCertificates> {
    let omega = m.omega();
    check_cap(omega, cap)?;
    let (alpha, sigma) = scalar_update(m.matrix())?;
    let q = alpha - sigma;
    let a = alpha.norm();
    let ctx = format!("omega={omega}, |alpha|={a}");
    Ok(ScalarSchurCertificates {
        alpha,
        q,
        sigma,
        omega,
        q_cert: BoundCertificate::upper_bound(
            "scalar.q",
            q.norm(),
            kantorovich_constant(omega) * a,
            CERT_TOL,
        )
        .context(ctx.clone()),
        sigma_cert: BoundCertificate::two_sided(
            "scalar.sigma",
            sigma.norm(),
            lower_scalar_constant(omega) * a,
            upper_constant(omega) * a,
            CERT_TOL,
        )
        .context(ctx),
    })
}

/// `q` assembled in simultaneous-congruence coordinates,
/// `sum_j (conj(x_j) + i conj(y_j)) (x_j + i y_j) / (1 + i d_j)`, where
/// `R* P R = I`, `R* Q R = diag(d)`, `x = R* b`, `y = R* c` and the trailing
/// column of the block is `b + i c`.
pub fn congruence_q_sum<M: HermitianSplit>(m: &M) -> Result<C64> {
    let n = m.n();
    if n < 2 {
        return Err(Error::DimensionMismatch("need at least a 2x2 block".into()));
    }
    let k = n - 1;
    let (b, c) = (m.real_part(), m.imag_part());
    let pair = simultaneous_congruence(&b.block(0, k, 0, k), &c.block(0, k, 0, k))?;
    let rt = pair.transform.adjoint();
    let x = &rt * &b.block(0, k, k, n);
    let y = &rt * &c.block(0, k, k, n);
    let i = C64::new(0.0, 1.0);
    Ok(pair
        .diagonal
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            let (xj, yj) = (x[(j, 0)], y[(j, 0)]);
            (xj.conj() + i * yj.conj()) * (xj + i * yj) / (C64::new(1.0, d))
        })
        .sum())
}
