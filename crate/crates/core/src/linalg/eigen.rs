//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot entry with a diagonal
//! unitary, then applies a real plane rotation, so the working matrix stays
//! exactly Hermitian up to rounding.

use crate::error::{Error, Result};
use crate::matrix::{ComplexDenseMatrix, C64, ONE, ZERO};
use crate::tolerances::{PD_TOL, SYMMETRY_TOL};

const MAX_SWEEPS: usize = 100;

/// Ascending eigenvalues of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    eigenvalues: Vec<f64>,
}

impl HermitianSpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is never empty")
    }

    /// Spectral norm, `max |lambda|`.
    pub fn norm(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    pub fn is_positive_definite(&self) -> bool {
        self.min() > PD_TOL * self.norm()
    }

    /// `lambda_max / lambda_min`, or `NotPositiveDefinite`.
    pub fn condition_number(&self) -> Result<f64> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite { value: self.min() });
        }
        Ok(self.max() / self.min())
    }
}

/// Eigenvalues (ascending) with the matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub spectrum: HermitianSpectrum,
    pub vectors: ComplexDenseMatrix,
}

fn check_hermitian(h: &ComplexDenseMatrix) -> Result<usize> {
    let n = h.require_square()?;
    let defect = h.hermitian_defect();
    if defect > SYMMETRY_TOL {
        return Err(Error::NonHermitianInput { defect });
    }
    Ok(n)
}

pub fn hermitian_eigenvalues(h: &ComplexDenseMatrix) -> Result<HermitianSpectrum> {
    let n = check_hermitian(h)?;
    let (values, _) = jacobi(h, n, false);
    Ok(HermitianSpectrum {
        eigenvalues: values,
    })
}

pub fn hermitian_eigen(h: &ComplexDenseMatrix) -> Result<HermitianEigen> {
    let n = check_hermitian(h)?;
    let (values, vectors) = jacobi(h, n, true);
    Ok(HermitianEigen {
        spectrum: HermitianSpectrum {
            eigenvalues: values,
        },
        vectors: vectors.expect("vectors requested"),
    })
}

/// Spectral condition number of a Hermitian positive definite matrix.
pub fn condition_number(h: &ComplexDenseMatrix) -> Result<f64> {
    hermitian_eigenvalues(h)?.condition_number()
}

fn jacobi(
    h: &ComplexDenseMatrix,
    n: usize,
    want_vectors: bool,
) -> (Vec<f64>, Option<ComplexDenseMatrix>) {
    let mut a: Vec<C64> = h.hermitian_symmetrized().entries().to_vec();
    for i in 0..n {
        a[i * n + i] = C64::new(a[i * n + i].re, 0.0);
    }
    let mut v: Vec<C64> = if want_vectors {
        ComplexDenseMatrix::identity(n).entries().to_vec()
    } else {
        Vec::new()
    };

    let frob: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i * n + j].norm_sqr();
            }
        }
        if off.sqrt() <= f64::EPSILON * frob || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q, want_vectors);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x * n + x].re.total_cmp(&a[y * n + y].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors =
        want_vectors.then(|| ComplexDenseMatrix::from_fn(n, n, |i, j| v[i * n + order[j]]));
    (values, vectors)
}

fn rotate(a: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize, want_vectors: bool) {
    let apq = a[p * n + q];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    // Diagonal unitary making a_pq real and positive.
    let u = apq.conj() / b;
    if u != ONE {
        for k in 0..n {
            a[k * n + q] *= u;
        }
        let uc = u.conj();
        for k in 0..n {
            a[q * n + k] *= uc;
        }
        a[q * n + q] = C64::new(a[q * n + q].re, 0.0);
        if want_vectors {
            for k in 0..n {
                v[k * n + q] *= u;
            }
        }
    }

    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - akq * s;
        a[k * n + q] = akp * s + akq * c;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - aqk * s;
        a[q * n + k] = apk * s + aqk * c;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = C64::new(app - t * b, 0.0);
    a[q * n + q] = C64::new(aqq + t * b, 0.0);

    if want_vectors {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = vkp * c - vkq * s;
            v[k * n + q] = vkp * s + vkq * c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn diagonal_input() {
        let s =
            hermitian_eigenvalues(&ComplexDenseMatrix::from_real_diagonal(&[3.0, 2.0])).unwrap();
        assert_eq!(s.eigenvalues(), &[2.0, 3.0]);
    }

    #[test]
    fn two_by_two_with_half_offdiagonal() {
        let h = ComplexDenseMatrix::from_real_rows(&[[1.0, 0.5], [0.5, 1.0]]);
        let s = hermitian_eigenvalues(&h).unwrap();
        assert!((s.min() - 0.5).abs() < 1e-15);
        assert!((s.max() - 1.5).abs() < 1e-15);
        assert!((condition_number(&h).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = ComplexDenseMatrix::from_rows(&[
            [c(1.0, 0.0), c(1.0, 0.0)],
            [c(0.0, 0.0), c(1.0, 0.0)],
        ]);
        assert!(matches!(
            hermitian_eigenvalues(&h),
            Err(Error::NonHermitianInput { .. })
        ));
        let rect = ComplexDenseMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_eigenvalues(&rect),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn complex_reconstruction() {
        let h = ComplexDenseMatrix::from_rows(&[
            [c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5)],
            [c(1.0, 1.0), c(3.0, 0.0), c(-0.25, 0.0)],
            [c(0.0, -0.5), c(-0.25, 0.0), c(1.0, 0.0)],
        ]);
        let e = hermitian_eigen(&h).unwrap();
        let lambda: Vec<C64> = e
            .spectrum
            .eigenvalues()
            .iter()
            .map(|&x| c(x, 0.0))
            .collect();
        let recon =
            &(&e.vectors * &ComplexDenseMatrix::from_diagonal(&lambda)) * &e.vectors.adjoint();
        assert!(recon.max_abs_diff(&h) < 1e-13);
        let gram = &e.vectors.adjoint() * &e.vectors;
        assert!(gram.max_abs_diff(&ComplexDenseMatrix::identity(3)) < 1e-13);
    }

    #[test]
    fn condition_number_rejects_indefinite() {
        let h = ComplexDenseMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 1.0]]);
        assert!(matches!(
            condition_number(&h),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }
}
