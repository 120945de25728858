use crate::error::{Error, Result};
use crate::matrix::{ComplexDenseMatrix, C64, ZERO};
use crate::tolerances::{PD_TOL, PIVOT_TOL, SYMMETRY_TOL};

use super::eigen::hermitian_eigen;

/// Lower-triangular `L` with positive real diagonal and `L L* = P`.
pub fn cholesky(p: &ComplexDenseMatrix) -> Result<ComplexDenseMatrix> {
    let n = p.require_square()?;
    let defect = p.hermitian_defect();
    if defect > SYMMETRY_TOL {
        return Err(Error::NonHermitianInput { defect });
    }
    let threshold = PD_TOL * p.max_abs();
    let mut l = ComplexDenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut pivot = p[(j, j)].re;
        for k in 0..j {
            pivot -= l[(j, k)].norm_sqr();
        }
        if pivot <= threshold {
            return Err(Error::NotPositiveDefinite { value: pivot });
        }
        let ljj = pivot.sqrt();
        l[(j, j)] = C64::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut acc = p[(i, j)];
            for k in 0..j {
                acc -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = acc / ljj;
        }
    }
    Ok(l)
}

/// Solves `L X = B` for lower-triangular `L`.
pub fn solve_lower(l: &ComplexDenseMatrix, b: &ComplexDenseMatrix) -> ComplexDenseMatrix {
    let n = l.rows();
    let mut x = b.clone();
    for col in 0..b.cols() {
        for i in 0..n {
            let mut acc = x[(i, col)];
            for k in 0..i {
                acc -= l[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = acc / l[(i, i)];
        }
    }
    x
}

/// Solves `U X = B` for upper-triangular `U`.
pub fn solve_upper(u: &ComplexDenseMatrix, b: &ComplexDenseMatrix) -> ComplexDenseMatrix {
    let n = u.rows();
    let mut x = b.clone();
    for col in 0..b.cols() {
        for i in (0..n).rev() {
            let mut acc = x[(i, col)];
            for k in (i + 1)..n {
                acc -= u[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = acc / u[(i, i)];
        }
    }
    x
}

/// `R* P R = I`, `R* Q R = diag(D)` for a Hermitian positive definite pair.
///
/// For real symmetric inputs `R` is real.
#[derive(Debug, Clone)]
pub struct CongruencePair {
    pub transform: ComplexDenseMatrix,
    pub diagonal: Vec<f64>,
}

pub fn simultaneous_congruence(
    p: &ComplexDenseMatrix,
    q: &ComplexDenseMatrix,
) -> Result<CongruencePair> {
    p.require_same_shape(q)?;
    let l = cholesky(p)?;
    // W = L^{-1} Q L^{-*}, using Q = Q*.
    let lq = solve_lower(&l, &q.hermitian_symmetrized());
    let w = solve_lower(&l, &lq.adjoint()).hermitian_symmetrized();
    let eig = hermitian_eigen(&w)?;
    if !eig.spectrum.is_positive_definite() {
        return Err(Error::NotPositiveDefinite {
            value: eig.spectrum.min(),
        });
    }
    let transform = solve_upper(&l.adjoint(), &eig.vectors);
    Ok(CongruencePair {
        transform,
        diagonal: eig.spectrum.eigenvalues().to_vec(),
    })
}

/// Row-pivoted LU factorization `P A = L U`, unit lower `L`.
#[derive(Debug, Clone)]
pub struct PivotedLu {
    lu: ComplexDenseMatrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl PivotedLu {
    pub fn factor(a: &ComplexDenseMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for col in 0..n {
            let (pivot_row, pivot_abs) =
                (col..n)
                    .map(|r| (r, lu[(r, col)].norm()))
                    .fold(
                        (col, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pivot_abs == 0.0 {
                singular = true;
                continue;
            }
            if pivot_row != col {
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(col, pivot_row);
                sign = -sign;
            }
            let pivot = lu[(col, col)];
            for r in (col + 1)..n {
                let m = lu[(r, col)] / pivot;
                lu[(r, col)] = m;
                if m == ZERO {
                    continue;
                }
                for j in (col + 1)..n {
                    let upd = m * lu[(col, j)];
                    lu[(r, j)] -= upd;
                }
            }
        }
        Ok(PivotedLu {
            lu,
            perm,
            sign,
            singular,
        })
    }

    pub fn determinant(&self) -> C64 {
        if self.singular {
            return ZERO;
        }
        self.lu
            .diagonal()
            .into_iter()
            .fold(C64::new(self.sign, 0.0), |acc, d| acc * d)
    }

    pub fn pivot_moduli(&self) -> Vec<f64> {
        self.lu.diagonal().iter().map(|z| z.norm()).collect()
    }

    /// Index of the first pivot whose modulus is at most `tol`.
    pub fn first_small_pivot(&self, tol: f64) -> Option<usize> {
        self.pivot_moduli().iter().position(|&m| m <= tol)
    }

    /// Solves `A X = B`; the caller is responsible for checking pivots.
    pub fn solve(&self, b: &ComplexDenseMatrix) -> ComplexDenseMatrix {
        let n = self.lu.rows();
        let mut x = ComplexDenseMatrix::zeros(n, b.cols());
        for col in 0..b.cols() {
            for i in 0..n {
                let mut acc = b[(self.perm[i], col)];
                for k in 0..i {
                    acc -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = x[(i, col)];
                for k in (i + 1)..n {
                    acc -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = acc / self.lu[(i, i)];
            }
        }
        x
    }
}

/// Determinant by row-pivoted LU; exactly singular inputs give zero.
pub fn determinant(m: &ComplexDenseMatrix) -> Result<C64> {
    Ok(PivotedLu::factor(m)?.determinant())
}

pub fn inverse(m: &ComplexDenseMatrix) -> Result<ComplexDenseMatrix> {
    let n = m.require_square()?;
    let lu = PivotedLu::factor(m)?;
    if let Some(index) = lu.first_small_pivot(PIVOT_TOL * m.max_abs()) {
        return Err(Error::SingularLeadingBlock { index });
    }
    Ok(lu.solve(&ComplexDenseMatrix::identity(n)))
}

/// `A/A[0..k, 0..k] = A22 - A21 A11^{-1} A12`.
pub fn schur_complement(m: &ComplexDenseMatrix, k: usize) -> Result<ComplexDenseMatrix> {
    let n = m.require_square()?;
    if k == 0 || k >= n {
        return Err(Error::DimensionMismatch(format!(
            "leading block size {k} must satisfy 1 <= k < {n}"
        )));
    }
    let a11 = m.block(0, k, 0, k);
    let lu = PivotedLu::factor(&a11)?;
    if let Some(index) = lu.first_small_pivot(PIVOT_TOL * m.max_abs()) {
        return Err(Error::SingularLeadingBlock { index });
    }
    let x = lu.solve(&m.block(0, k, k, n));
    let a21x = &m.block(k, n, 0, k) * &x;
    Ok(&m.block(k, n, k, n) - &a21x)
}

/// `lambda_min(X - Y)`, the Loewner margin of `X >= Y`.
pub fn loewner_margin(x: &ComplexDenseMatrix, y: &ComplexDenseMatrix) -> Result<f64> {
    x.require_same_shape(y)?;
    x.require_square()?;
    // Hermitian-ness is judged on the operands: when X and Y agree to
    // roundoff the difference is pure noise and its own defect is meaningless.
    for m in [x, y] {
        let defect = m.hermitian_defect();
        if defect > SYMMETRY_TOL {
            return Err(Error::NonHermitianInput { defect });
        }
    }
    Ok(super::hermitian_eigenvalues(&(x - y).hermitian_symmetrized())?.min())
}

/// `X >= Y` in the Loewner order, up to `tol * max(1, ||X||, ||Y||)`.
pub fn loewner_geq(x: &ComplexDenseMatrix, y: &ComplexDenseMatrix, tol: f64) -> Result<bool> {
    let margin = loewner_margin(x, y)?;
    let scale = 1f64
        .max(super::hermitian_eigenvalues(x)?.norm())
        .max(super::hermitian_eigenvalues(y)?.norm());
    Ok(margin >= -tol * scale)
}

/// `P^{-1/2}` for Hermitian positive definite `P`, via its eigendecomposition.
pub fn inverse_sqrt_pd(p: &ComplexDenseMatrix) -> Result<ComplexDenseMatrix> {
    let eig = hermitian_eigen(p)?;
    if !eig.spectrum.is_positive_definite() {
        return Err(Error::NotPositiveDefinite {
            value: eig.spectrum.min(),
        });
    }
    let scales: Vec<C64> = eig
        .spectrum
        .eigenvalues()
        .iter()
        .map(|&l| C64::new(l.sqrt().recip(), 0.0))
        .collect();
    let v = &eig.vectors;
    Ok((&(v * &ComplexDenseMatrix::from_diagonal(&scales)) * &v.adjoint()).hermitian_symmetrized())
}
