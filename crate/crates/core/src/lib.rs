//! Gaussian elimination without pivoting on Higham (complex symmetric with
//! positive definite real and imaginary parts) and accretive-dissipative
//! matrices, with numerical certificates for the sharp growth-factor bounds.

pub mod bounds;
pub mod classes;
pub mod elimination;
pub mod error;
pub mod generators;
pub mod harness;
pub mod linalg;
pub mod matrix;
pub mod tolerances;

pub use error::{Error, Result};
pub use matrix::{ComplexDenseMatrix, C64};
