//! The two-dimensional domination inequality
//!
//! `Re(e^{-i phi} (conj(s) + i conj(t)) (s + i t) / (1 + i d))
//!     <= cos(theta(phi)) |s|^2 + sin(theta(phi)) |t|^2 / d`
//!
//! and its matrix form `K_{phi,d} = diag(cos theta, sin theta) - H_{phi,d} >= 0`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::C64;

use super::BoundCertificate;

/// Piecewise angle `theta: [-pi, pi] -> [0, pi/2]`.
pub fn theta(phi: f64) -> Result<f64> {
    if !(-PI..=PI).contains(&phi) {
        return Err(Error::DomainError(format!("phi = {phi} outside [-pi, pi]")));
    }
    Ok(if phi < 0.0 {
        -phi / 3.0
    } else if phi <= FRAC_PI_2 {
        phi
    } else {
        (2.0 * PI - phi) / 3.0
    })
}

fn check_d(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("d = {d} must be positive")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominationWitness {
    pub phi: f64,
    pub d: f64,
    pub theta: f64,
    /// `H_{phi,d}`, the quadratic form of the left-hand side in `(s, t / sqrt d)`.
    pub h: [[f64; 2]; 2],
    pub k: [[f64; 2]; 2],
    pub lambda_min_k: f64,
    /// `(1 + d^2) det K`.
    pub scaled_det: f64,
    /// The closed form of `(1 + d^2) det K` on the branch of `phi`.
    pub scaled_det_closed_form: f64,
    /// `|scaled_det - closed form| / max(1, |closed form|)`.
    pub det_identity_residual: f64,
}

pub fn domination_witness(phi: f64, d: f64) -> Result<DominationWitness> {
    check_d(d)?;
    let th = theta(phi)?;
    let (sin_p, cos_p) = phi.sin_cos();
    let (sin_t, cos_t) = th.sin_cos();
    let scale = 1.0 / (1.0 + d * d);
    let sd = d.sqrt();
    let h11 = scale * (cos_p - d * sin_p);
    let h12 = scale * sd * (d * cos_p + sin_p);
    let h22 = scale * d * (d * sin_p - cos_p);
    let k11 = cos_t - h11;
    let k22 = sin_t - h22;
    let k12 = -h12;

    // With h11 h22 - h12^2 = -d/(1+d^2) the determinant expands to
    // (1+d^2) det K = 2 sin u (d^2 cos th cos v - d sin u - sin th sin v),
    // u = (th - phi)/2, v = (th + phi)/2, free of the O(d^2) cancellation
    // in k11 k22 - k12^2 and valid on every branch of theta.
    let (sin_u, sin_v, cos_v) = {
        let u = 0.5 * (th - phi);
        let v = 0.5 * (th + phi);
        (u.sin(), v.sin(), v.cos())
    };
    let scaled_det = 2.0 * sin_u * (d * d * cos_t * cos_v - d * sin_u - sin_t * sin_v);
    let det = scale * scaled_det;

    let half_trace = 0.5 * (k11 + k22);
    let radius = (0.5 * (k11 - k22)).hypot(k12);
    let lambda_max = half_trace + radius;
    // det / lambda_max avoids the cancellation in half_trace - radius.
    let lambda_min = if lambda_max > 0.0 {
        det / lambda_max
    } else {
        half_trace - radius
    };

    let closed_form = if (0.0..=FRAC_PI_2).contains(&phi) {
        // K is a nonnegative multiple of the rank-one form [[d, -sqrt d], [-sqrt d, 1]].
        0.0
    } else {
        4.0 * sin_t * cos_t * (sin_t - d * cos_t).powi(2)
    };
    let det_identity_residual = (scaled_det - closed_form).abs() / closed_form.abs().max(1.0);

    Ok(DominationWitness {
        phi,
        d,
        theta: th,
        h: [[h11, h12], [h12, h22]],
        k: [[k11, k12], [k12, k22]],
        lambda_min_k: lambda_min,
        scaled_det,
        scaled_det_closed_form: closed_form,
        det_identity_residual,
    })
}

/// Left side against right side of the domination inequality, evaluated
/// directly in complex arithmetic.
pub fn domination_inequality_check(phi: f64, d: f64, s: C64, t: C64) -> Result<BoundCertificate> {
    check_d(d)?;
    let th = theta(phi)?;
    let i = C64::new(0.0, 1.0);
    let lhs = (C64::from_polar(1.0, -phi) * (s.conj() + i * t.conj()) * (s + i * t)
        / (C64::new(1.0, 0.0) + i * d))
        .re;
    let rhs = th.cos() * s.norm_sqr() + th.sin() * t.norm_sqr() / d;
    Ok(BoundCertificate::new("domination", lhs, None, Some(rhs))
        .context(format!("phi={phi}, d={d}, s={s}, t={t}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_branches() {
        assert!((theta(PI / 4.0).unwrap() - PI / 4.0).abs() < 1e-16);
        assert!((theta(-PI).unwrap() - PI / 3.0).abs() < 1e-15);
        assert!((theta(PI).unwrap() - PI / 3.0).abs() < 1e-15);
        assert_eq!(theta(0.0).unwrap(), 0.0);
        assert_eq!(theta(FRAC_PI_2).unwrap(), FRAC_PI_2);
        assert!(matches!(theta(3.5), Err(Error::DomainError(_))));
    }

    #[test]
    fn theta_is_continuous_at_branch_points() {
        let eps = 1e-12;
        assert!(theta(-eps).unwrap() < 1e-12);
        assert!((theta(FRAC_PI_2 + eps).unwrap() - FRAC_PI_2).abs() < 1e-11);
    }

    #[test]
    fn middle_branch_is_rank_one() {
        let w = domination_witness(PI / 4.0, 1.0).unwrap();
        // K = ((d cos phi + sin phi)/(1 + d^2)) [[d, -sqrt d], [-sqrt d, 1]].
        let f = (PI / 4.0).cos();
        assert!((w.k[0][0] - f).abs() < 1e-15);
        assert!((w.k[0][1] + f).abs() < 1e-15);
        assert!((w.k[1][1] - f).abs() < 1e-15);
        assert!(w.lambda_min_k.abs() < 1e-15);
    }

    #[test]
    fn lower_branch_determinant() {
        let w = domination_witness(-FRAC_PI_2, 1.0).unwrap();
        assert!((w.theta - PI / 6.0).abs() < 1e-15);
        let expected = 4.0 * 0.5 * (3f64.sqrt() / 2.0) * (0.5 - 3f64.sqrt() / 2.0).powi(2);
        assert!((w.scaled_det - expected).abs() < 1e-14);
        assert!(w.lambda_min_k >= 0.0);
    }

    #[test]
    fn expanded_determinant_matches_entries() {
        for phi in [-3.0, -1.2, -0.1, 0.4, 1.5, 2.0, 3.1] {
            for d in [1e-3, 0.3, 1.0, 7.0, 1e3] {
                let w = domination_witness(phi, d).unwrap();
                let k = w.k;
                let direct = (1.0 + d * d) * (k[0][0] * k[1][1] - k[0][1] * k[0][1]);
                let noise = 1e-14
                    * (1.0 + d * d)
                    * (k[0][0] * k[1][1]).abs().max(k[0][1] * k[0][1]).max(1.0);
                assert!((w.scaled_det - direct).abs() <= noise, "phi={phi}, d={d}");
            }
        }
    }

    #[test]
    fn phi_zero_is_psd() {
        for d in [0.01, 1.0, 50.0] {
            let w = domination_witness(0.0, d).unwrap();
            assert_eq!(w.theta, 0.0);
            let f = d / (1.0 + d * d);
            assert!((w.k[0][0] - f * d).abs() < 1e-14);
            assert!((w.k[1][1] - f).abs() < 1e-14);
            assert!(w.lambda_min_k > -1e-15);
        }
    }

    #[test]
    fn inequality_examples() {
        let zero =
            domination_inequality_check(0.3, 2.0, C64::new(0.0, 0.0), C64::new(0.0, 0.0)).unwrap();
        assert_eq!(zero.measured, 0.0);
        assert!(zero.satisfied);

        let c = domination_inequality_check(PI / 4.0, 1.0, C64::new(1.0, 0.0), C64::new(0.0, 1.0))
            .unwrap();
        assert!(c.satisfied);
        // (s̄ + i t̄)(s + i t) = (1 + 1)(1 - 1) = 0 for s = 1, t = i.
        assert!(c.measured.abs() < 1e-15);
        assert!((c.upper.unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_domain() {
        assert!(domination_witness(0.0, 0.0).is_err());
        assert!(domination_witness(4.0, 1.0).is_err());
        assert!(
            domination_inequality_check(0.0, -1.0, C64::new(1.0, 0.0), C64::new(1.0, 0.0)).is_err()
        );
    }
}
