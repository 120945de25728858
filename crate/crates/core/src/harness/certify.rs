use serde::Serialize;

use crate::bounds::{
    ad_growth_certificates_with, drury_certificates, higham_growth_certificates_with,
    loewner_schur_check_active, scalar_schur_certificate, BoundCertificate,
};
use crate::classes::{
    classify_with, AccretiveDissipativeMatrix, ClassMembershipReport, HermitianSplit, HighamMatrix,
};
use crate::elimination::eliminate_no_pivot_with;
use crate::error::Result;
use crate::matrix::ComplexDenseMatrix;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Serialize)]
pub struct Certification {
    pub classification: ClassMembershipReport,
    pub binding_violations: usize,
    pub certificates: Vec<BoundCertificate>,
}

impl Certification {
    pub fn is_member(&self) -> bool {
        self.classification.is_ad
    }
}

/// Every applicable certificate for one matrix: the accretive-dissipative set
/// (growth, active diagonals, entry factor, Loewner bounds, trailing scalar)
/// and, for Higham inputs, the Higham growth and sectorial sets as well.
/// Non-members get an empty certificate list.
pub fn certify_matrix(a: &ComplexDenseMatrix, tol: &Tolerances) -> Result<Certification> {
    let classification = classify_with(a, tol)?;
    let mut certs = Vec::new();
    if classification.is_higham {
        let h = HighamMatrix::new(a.clone())?;
        certs.extend(higham_growth_certificates_with(&h, tol)?);
        certs.extend(drury_certificates(&h, tol)?.1);
    }
    if classification.is_ad {
        let ad = AccretiveDissipativeMatrix::new(a.clone())?;
        certs.extend(ad_growth_certificates_with(&ad, tol)?);
        let trace = eliminate_no_pivot_with(ad.matrix(), tol.pivot_tol)?;
        for k in 1..ad.n() {
            certs.extend(loewner_schur_check_active(&ad, k, trace.active(k), tol)?.into_vec());
        }
        let scalar = scalar_schur_certificate(&ad, f64::INFINITY)?;
        certs.push(scalar.q_cert);
        certs.push(scalar.sigma_cert);
    }
    Ok(Certification {
        binding_violations: certs.iter().filter(|c| c.is_violation()).count(),
        classification,
        certificates: certs,
    })
}
