//! Dense Hermitian and complex linear algebra used by the rest of the crate.

mod eigen;
mod factor;

pub use eigen::{
    condition_number, hermitian_eigen, hermitian_eigenvalues, HermitianEigen, HermitianSpectrum,
};
pub use factor::{
    cholesky, determinant, inverse, inverse_sqrt_pd, loewner_geq, loewner_margin, schur_complement,
    simultaneous_congruence, solve_lower, solve_upper, CongruencePair, PivotedLu,
};
