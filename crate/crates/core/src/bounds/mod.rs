//! Checkable certificates for every inequality used by the growth analysis.

mod certificate;
mod domination;
mod drury;
mod growth;
mod scalar;

pub use certificate::BoundCertificate;
pub use domination::{domination_inequality_check, domination_witness, theta, DominationWitness};
pub use drury::{drury_certificates, drury_sector, fischer_sector_check, SectorInfo};
pub(crate) use growth::{ad_certificates_for, higham_certificates_for, loewner_schur_check_active};
pub use growth::{
    ad_growth_certificates, ad_growth_certificates_with, higham_growth_certificates,
    higham_growth_certificates_with, loewner_schur_check, LoewnerSchurCheck,
};
pub use scalar::{
    congruence_q_sum, kantorovich_check, scalar_schur_certificate, scalar_update,
    ScalarSchurCertificates,
};

/// `2(1+w^2)/(1+w)^2`: sharp upper constant for Higham growth and for the
/// scalar Schur update.
pub fn upper_constant(omega: f64) -> f64 {
    2.0 * (1.0 + omega * omega) / ((1.0 + omega) * (1.0 + omega))
}

/// `4w/(1+w)^2`: sharp lower constant for `|sigma| / |alpha|`.
pub fn lower_scalar_constant(omega: f64) -> f64 {
    4.0 * omega / ((1.0 + omega) * (1.0 + omega))
}

/// `((w-1)/(w+1))^2`.
pub fn kantorovich_constant(omega: f64) -> f64 {
    let t = (omega - 1.0) / (omega + 1.0);
    t * t
}

/// `2 sqrt2 (1+w^2)/(1+w)^2`.
pub fn ad_upper_constant(omega: f64) -> f64 {
    std::f64::consts::SQRT_2 * upper_constant(omega)
}

/// `1/w`.
pub fn lower_growth_constant(omega: f64) -> f64 {
    1.0 / omega
}
