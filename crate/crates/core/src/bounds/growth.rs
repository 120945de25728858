//! Growth-factor certificates for whole eliminations.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::classes::{hermitian_parts, AccretiveDissipativeMatrix, HermitianSplit, HighamMatrix};
use crate::elimination::{eliminate_no_pivot_with, growth_report, EliminationTrace, GrowthReport};
use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, loewner_margin, schur_complement};
use crate::matrix::ComplexDenseMatrix;
use crate::tolerances::Tolerances;

use super::{ad_upper_constant, lower_scalar_constant, upper_constant, BoundCertificate};

pub fn higham_growth_certificates(a: &HighamMatrix) -> Result<Vec<BoundCertificate>> {
    higham_growth_certificates_with(a, &Tolerances::default())
}

/// Stage-wise `1/w <= rho_{n,k} <= 2(1+w^2)/(1+w)^2`, the same for `rho_n`,
/// and `rho_n < 2`.
pub fn higham_growth_certificates_with(
    a: &HighamMatrix,
    tol: &Tolerances,
) -> Result<Vec<BoundCertificate>> {
    let trace = eliminate_no_pivot_with(a.matrix(), tol.pivot_tol)?;
    Ok(higham_certificates_for(
        a.omega(),
        &growth_report(&trace),
        tol,
    ))
}

pub(crate) fn higham_certificates_for(
    omega: f64,
    report: &GrowthReport,
    tol: &Tolerances,
) -> Vec<BoundCertificate> {
    let lower = 1.0 / omega;
    let upper = upper_constant(omega);
    let mut certs: Vec<BoundCertificate> = report
        .rho_stage
        .iter()
        .enumerate()
        .map(|(i, &rho_k)| {
            BoundCertificate::two_sided("higham.stage_growth", rho_k, lower, upper, tol.cert_tol)
                .context(format!("k={}, omega={omega}", i + 1))
        })
        .collect();
    certs.push(
        BoundCertificate::two_sided("higham.growth", report.rho, lower, upper, tol.cert_tol)
            .context(format!("omega={omega}")),
    );
    certs.push(BoundCertificate::upper_bound(
        "higham.growth_below_two",
        report.rho,
        2.0,
        tol.cert_tol,
    ));
    certs
}

pub fn ad_growth_certificates(a: &AccretiveDissipativeMatrix) -> Result<Vec<BoundCertificate>> {
    ad_growth_certificates_with(a, &Tolerances::default())
}

/// Certificates for an accretive-dissipative elimination:
/// overall `1/w <= rho_n <= 2 sqrt2 (1+w^2)/(1+w)^2`, two-sided bounds on every
/// active diagonal relative to the original diagonal, the entry-versus-diagonal
/// factor `sqrt 2` on every active matrix, and the non-binding conjectured
/// bound `rho_n <= 2(1+w^2)/(1+w)^2`.
pub fn ad_growth_certificates_with(
    a: &AccretiveDissipativeMatrix,
    tol: &Tolerances,
) -> Result<Vec<BoundCertificate>> {
    let trace = eliminate_no_pivot_with(a.matrix(), tol.pivot_tol)?;
    let report = growth_report(&trace);
    Ok(ad_certificates_for(a.omega(), &trace, &report, tol))
}

pub(crate) fn ad_certificates_for(
    omega: f64,
    trace: &EliminationTrace,
    report: &GrowthReport,
    tol: &Tolerances,
) -> Vec<BoundCertificate> {
    let upper = upper_constant(omega);
    let diag_lower = lower_scalar_constant(omega);
    let mut certs = vec![BoundCertificate::two_sided(
        "ad.growth",
        report.rho,
        1.0 / omega,
        ad_upper_constant(omega),
        tol.cert_tol,
    )
    .context(format!("omega={omega}"))];

    let original = trace.original();
    let n = trace.n();
    for k in 1..n {
        let active = trace.active(k);
        for j in k..n {
            let ratio = trace.active_diagonal(k, j).norm() / original[(j, j)].norm();
            certs.push(
                BoundCertificate::two_sided(
                    "ad.active_diagonal",
                    ratio,
                    diag_lower,
                    upper,
                    tol.cert_tol,
                )
                .context(format!("k={k}, j={j}, omega={omega}")),
            );
        }
        let entry_ratio = active.max_abs() / active.max_abs_diagonal();
        certs.push(
            BoundCertificate::upper_bound(
                "ad.entry_vs_diagonal",
                entry_ratio,
                SQRT_2,
                tol.cert_tol,
            )
            .context(format!("k={k}")),
        );
    }
    certs.push(
        BoundCertificate::upper_bound("ad.conjectured_growth", report.rho, upper, tol.cert_tol)
            .non_binding()
            .context(format!("omega={omega}")),
    );
    certs
}

/// Loewner lower bounds on the Hermitian parts `S_k = R_k + i T_k` of an
/// active matrix: `R_k >= B/B11`, `T_k >= C/C11`, `R_k >= m_B I`, `T_k >= m_C I`.
#[derive(Debug, Clone, Serialize)]
pub struct LoewnerSchurCheck {
    pub real_vs_schur: BoundCertificate,
    pub imag_vs_schur: BoundCertificate,
    pub real_floor: BoundCertificate,
    pub imag_floor: BoundCertificate,
}

impl LoewnerSchurCheck {
    pub fn certificates(&self) -> [&BoundCertificate; 4] {
        [
            &self.real_vs_schur,
            &self.imag_vs_schur,
            &self.real_floor,
            &self.imag_floor,
        ]
    }

    pub fn into_vec(self) -> Vec<BoundCertificate> {
        vec![
            self.real_vs_schur,
            self.imag_vs_schur,
            self.real_floor,
            self.imag_floor,
        ]
    }
}

pub fn loewner_schur_check<M: HermitianSplit>(a: &M, k: usize) -> Result<LoewnerSchurCheck> {
    let active = schur_complement(a.matrix(), k)?;
    loewner_schur_check_active(a, k, &active, &Tolerances::default())
}

pub(crate) fn loewner_schur_check_active<M: HermitianSplit>(
    a: &M,
    k: usize,
    active: &ComplexDenseMatrix,
    tol: &Tolerances,
) -> Result<LoewnerSchurCheck> {
    let (r, t) = hermitian_parts(active)?;
    let b_schur = schur_complement(a.real_part(), k)?;
    let c_schur = schur_complement(a.imag_part(), k)?;
    let ctx = format!("k={k}");
    let cert = |name: &str, measured: f64, lower: f64| {
        BoundCertificate::lower_bound(name, measured, lower, tol.cert_tol).context(ctx.clone())
    };
    Ok(LoewnerSchurCheck {
        real_vs_schur: cert("loewner.real_vs_schur", loewner_margin(&r, &b_schur)?, 0.0),
        imag_vs_schur: cert("loewner.imag_vs_schur", loewner_margin(&t, &c_schur)?, 0.0),
        real_floor: cert(
            "loewner.real_floor",
            hermitian_eigenvalues(&r)?.min(),
            a.spectrum_b().min(),
        ),
        imag_floor: cert(
            "loewner.imag_floor",
            hermitian_eigenvalues(&t)?.min(),
            a.spectrum_c().min(),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn diagonal_lower_example_attains_lower_bound() {
        let omega = 6.0;
        let d = [omega, 1.0, 1.0, 1.0];
        let b = ComplexDenseMatrix::from_real_diagonal(&d);
        let a = HighamMatrix::from_parts(b.clone(), b).unwrap();
        let certs = higham_growth_certificates(&a).unwrap();
        assert!(certs.iter().all(|c| c.satisfied));
        for cert in certs.iter().filter(|c| c.name == "higham.stage_growth") {
            assert!((cert.measured - 1.0 / omega).abs() < 1e-15);
            assert!(cert.slack_lower.unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn triangular_ad_example() {
        let a = AccretiveDissipativeMatrix::new(ComplexDenseMatrix::from_rows(&[
            [c(1.0, 1.0), c(1.8, 0.0)],
            [c(0.0, 0.0), c(1.0, 1.0)],
        ]))
        .unwrap();
        assert!((a.omega() - 19.0).abs() < 1e-11);
        let certs = ad_growth_certificates(&a).unwrap();
        assert!(certs.iter().all(|c| c.satisfied), "{certs:#?}");
        let growth = certs.iter().find(|c| c.name == "ad.growth").unwrap();
        assert!((growth.measured - 2f64.sqrt() / 1.8).abs() < 1e-15);
    }

    #[test]
    fn loewner_block_diagonal_is_tight() {
        let b = ComplexDenseMatrix::from_real_rows(&[
            [2.0, 0.0, 0.0],
            [0.0, 1.0, 0.3],
            [0.0, 0.3, 1.0],
        ]);
        let cpart = ComplexDenseMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0],
            [0.0, 2.0, -0.5],
            [0.0, -0.5, 1.5],
        ]);
        let a = HighamMatrix::from_parts(b, cpart).unwrap();
        let check = loewner_schur_check(&a, 1).unwrap();
        assert!(check.certificates().iter().all(|c| c.satisfied));
        assert!(check.real_vs_schur.measured.abs() < 1e-15);
        assert!(check.imag_vs_schur.measured.abs() < 1e-15);
    }
}
