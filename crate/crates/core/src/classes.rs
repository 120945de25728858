//! Higham (complex symmetric, positive definite parts) and
//! accretive-dissipative matrices.
//!
//! Both classes are described by the Hermitian split `A = B + iC` with
//! `B = (A + A*)/2` and `C = (A - A*)/(2i)`. A Higham matrix is complex
//! symmetric, so its split coincides with the entrywise real and imaginary
//! parts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, HermitianSpectrum};
use crate::matrix::{ComplexDenseMatrix, C64};
use crate::tolerances::Tolerances;

/// Slack allowed when testing `|a_ij|^2 < |a_ii| |a_jj|` as a ratio.
const DIAGONAL_RATIO_TOL: f64 = 1e-12;

/// `(B, C)` with `A = B + iC`, both Hermitian.
pub fn hermitian_parts(a: &ComplexDenseMatrix) -> Result<(ComplexDenseMatrix, ComplexDenseMatrix)> {
    let n = a.require_square()?;
    let half = C64::new(0.5, 0.0);
    let minus_half_i = C64::new(0.0, -0.5);
    let b = ComplexDenseMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * half);
    let c = ComplexDenseMatrix::from_fn(n, n, |i, j| (a[(i, j)] - a[(j, i)].conj()) * minus_half_i);
    Ok((b, c))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMembershipReport {
    pub n: usize,
    pub is_higham: bool,
    pub is_ad: bool,
    pub lambda_min_b: f64,
    pub lambda_max_b: f64,
    pub lambda_min_c: f64,
    pub lambda_max_c: f64,
    pub symmetry_defect: f64,
    /// `None` when the corresponding part is not positive definite.
    pub kappa_b: Option<f64>,
    pub kappa_c: Option<f64>,
    /// `max(kappa_b, kappa_c)`, present only for accretive-dissipative inputs.
    pub omega: Option<f64>,
}

pub fn classify(a: &ComplexDenseMatrix) -> Result<ClassMembershipReport> {
    classify_with(a, &Tolerances::default())
}

pub fn classify_with(a: &ComplexDenseMatrix, tol: &Tolerances) -> Result<ClassMembershipReport> {
    let (b, c) = hermitian_parts(a)?;
    let sb = hermitian_eigenvalues(&b)?;
    let sc = hermitian_eigenvalues(&c)?;
    Ok(report_from_spectra(a, &sb, &sc, tol))
}

fn is_pd(s: &HermitianSpectrum, tol: &Tolerances) -> bool {
    s.min() > tol.pd_tol * s.norm()
}

fn report_from_spectra(
    a: &ComplexDenseMatrix,
    sb: &HermitianSpectrum,
    sc: &HermitianSpectrum,
    tol: &Tolerances,
) -> ClassMembershipReport {
    let kappa_b = is_pd(sb, tol).then(|| sb.max() / sb.min());
    let kappa_c = is_pd(sc, tol).then(|| sc.max() / sc.min());
    let is_ad = kappa_b.is_some() && kappa_c.is_some();
    let symmetry_defect = a.symmetry_defect();
    let omega = match (kappa_b, kappa_c) {
        (Some(kb), Some(kc)) => Some(kb.max(kc)),
        _ => None,
    };
    ClassMembershipReport {
        n: a.rows(),
        is_higham: is_ad && symmetry_defect <= tol.symmetry_tol,
        is_ad,
        lambda_min_b: sb.min(),
        lambda_max_b: sb.max(),
        lambda_min_c: sc.min(),
        lambda_max_c: sc.max(),
        symmetry_defect,
        kappa_b,
        kappa_c,
        omega,
    }
}

/// Common view of a validated member of either class.
pub trait HermitianSplit {
    fn matrix(&self) -> &ComplexDenseMatrix;
    fn real_part(&self) -> &ComplexDenseMatrix;
    fn imag_part(&self) -> &ComplexDenseMatrix;
    fn spectrum_b(&self) -> &HermitianSpectrum;
    fn spectrum_c(&self) -> &HermitianSpectrum;

    fn n(&self) -> usize {
        self.matrix().rows()
    }

    fn kappa_b(&self) -> f64 {
        self.spectrum_b().max() / self.spectrum_b().min()
    }

    fn kappa_c(&self) -> f64 {
        self.spectrum_c().max() / self.spectrum_c().min()
    }

    /// `max(kappa(B), kappa(C))` from exact (Jacobi) eigenvalues.
    fn omega(&self) -> f64 {
        self.kappa_b().max(self.kappa_c())
    }
}

#[derive(Debug, Clone)]
struct Split {
    a: ComplexDenseMatrix,
    b: ComplexDenseMatrix,
    c: ComplexDenseMatrix,
    spectrum_b: HermitianSpectrum,
    spectrum_c: HermitianSpectrum,
}

impl Split {
    fn from_parts(b: ComplexDenseMatrix, c: ComplexDenseMatrix) -> Result<Self> {
        b.require_same_shape(&c)?;
        b.require_square()?;
        let a = &b + &c.scale(C64::new(0.0, 1.0));
        let spectrum_b = hermitian_eigenvalues(&b)?;
        let spectrum_c = hermitian_eigenvalues(&c)?;
        Ok(Split {
            a,
            b,
            c,
            spectrum_b,
            spectrum_c,
        })
    }

    fn check_pd(&self, tol: &Tolerances) -> Result<()> {
        for (name, s) in [("B", &self.spectrum_b), ("C", &self.spectrum_c)] {
            if !is_pd(s, tol) {
                return Err(Error::NotInClass(format!(
                    "{name} is not positive definite (lambda_min = {:.6e})",
                    s.min()
                )));
            }
        }
        Ok(())
    }
}

/// `A = B + iC` with `B`, `C` real symmetric positive definite.
#[derive(Debug, Clone)]
pub struct HighamMatrix(Split);

impl HighamMatrix {
    /// Validates `a` as a Higham matrix.
    pub fn new(a: ComplexDenseMatrix) -> Result<Self> {
        a.require_square()?;
        let tol = Tolerances::default();
        let defect = a.symmetry_defect();
        if defect > tol.symmetry_tol {
            return Err(Error::NotInClass(format!(
                "not complex symmetric (relative defect {defect:.3e})"
            )));
        }
        let (b, c) = hermitian_parts(&a)?;
        // Complex symmetry makes both parts real; drop the rounding residue.
        let split = Split::from_parts(b.real_part(), c.real_part())?;
        split.check_pd(&tol)?;
        Ok(HighamMatrix(Split { a, ..split }))
    }

    /// Assembles `B + iC` from real symmetric parts.
    pub fn from_parts(b: ComplexDenseMatrix, c: ComplexDenseMatrix) -> Result<Self> {
        let tol = Tolerances::default();
        for (name, m) in [("B", &b), ("C", &c)] {
            if m.max_abs_imag() > 0.0 {
                return Err(Error::NotInClass(format!("{name} is not real")));
            }
            if m.symmetry_defect() > tol.symmetry_tol {
                return Err(Error::NotInClass(format!("{name} is not symmetric")));
            }
        }
        let split = Split::from_parts(b, c)?;
        split.check_pd(&tol)?;
        Ok(HighamMatrix(split))
    }

    pub fn into_matrix(self) -> ComplexDenseMatrix {
        self.0.a
    }

    /// The same matrix viewed as a member of the accretive-dissipative class.
    pub fn to_ad(&self) -> AccretiveDissipativeMatrix {
        AccretiveDissipativeMatrix(self.0.clone())
    }
}

/// `A = B + iC` with `B`, `C` Hermitian positive definite.
#[derive(Debug, Clone)]
pub struct AccretiveDissipativeMatrix(Split);

impl AccretiveDissipativeMatrix {
    pub fn new(a: ComplexDenseMatrix) -> Result<Self> {
        let (b, c) = hermitian_parts(&a)?;
        let split = Split::from_parts(b, c)?;
        split.check_pd(&Tolerances::default())?;
        Ok(AccretiveDissipativeMatrix(Split { a, ..split }))
    }

    pub fn from_parts(b: ComplexDenseMatrix, c: ComplexDenseMatrix) -> Result<Self> {
        let tol = Tolerances::default();
        for (name, m) in [("B", &b), ("C", &c)] {
            if m.hermitian_defect() > tol.symmetry_tol {
                return Err(Error::NotInClass(format!("{name} is not Hermitian")));
            }
        }
        let split = Split::from_parts(b, c)?;
        split.check_pd(&tol)?;
        Ok(AccretiveDissipativeMatrix(split))
    }

    pub fn into_matrix(self) -> ComplexDenseMatrix {
        self.0.a
    }
}

macro_rules! impl_split {
    ($ty:ty) => {
        impl HermitianSplit for $ty {
            fn matrix(&self) -> &ComplexDenseMatrix {
                &self.0.a
            }
            fn real_part(&self) -> &ComplexDenseMatrix {
                &self.0.b
            }
            fn imag_part(&self) -> &ComplexDenseMatrix {
                &self.0.c
            }
            fn spectrum_b(&self) -> &HermitianSpectrum {
                &self.0.spectrum_b
            }
            fn spectrum_c(&self) -> &HermitianSpectrum {
                &self.0.spectrum_c
            }
        }
    };
}

impl_split!(HighamMatrix);
impl_split!(AccretiveDissipativeMatrix);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalMaximality {
    pub holds: bool,
    /// Off-diagonal position attaining `worst_ratio`; `None` for 1x1 input.
    pub worst_pair: Option<(usize, usize)>,
    /// `max_{i != j} |a_ij|^2 / (|a_ii| |a_jj|)`.
    pub worst_ratio: f64,
}

pub fn diagonal_maximality_check(a: &ComplexDenseMatrix) -> Result<DiagonalMaximality> {
    let n = a.require_square()?;
    let mut worst_ratio: f64 = 0.0;
    let mut worst_pair = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let off = a[(i, j)].norm_sqr();
            let diag = a[(i, i)].norm() * a[(j, j)].norm();
            let ratio = if off == 0.0 {
                0.0
            } else if diag == 0.0 {
                f64::INFINITY
            } else {
                off / diag
            };
            if worst_pair.is_none() || ratio > worst_ratio {
                worst_ratio = ratio;
                worst_pair = Some((i, j));
            }
        }
    }
    Ok(DiagonalMaximality {
        holds: worst_ratio < 1.0 + DIAGONAL_RATIO_TOL,
        worst_pair,
        worst_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn gap2(r: f64) -> ComplexDenseMatrix {
        ComplexDenseMatrix::from_rows(&[[c(1.0, 1.0), c(2.0 * r, 0.0)], [c(0.0, 0.0), c(1.0, 1.0)]])
    }

    #[test]
    fn hermitian_parts_of_triangular_example() {
        let r = 0.6;
        let (b, cc) = hermitian_parts(&gap2(r)).unwrap();
        let b_expected = ComplexDenseMatrix::from_real_rows(&[[1.0, r], [r, 1.0]]);
        let c_expected =
            ComplexDenseMatrix::from_rows(&[[c(1.0, 0.0), c(0.0, -r)], [c(0.0, r), c(1.0, 0.0)]]);
        assert!(b.max_abs_diff(&b_expected) < 1e-15);
        assert!(cc.max_abs_diff(&c_expected) < 1e-15);
        let recon = &b + &cc.scale(c(0.0, 1.0));
        assert!(recon.max_abs_diff(&gap2(r)) < 1e-15);
    }

    #[test]
    fn complex_symmetric_split_is_entrywise() {
        let a = ComplexDenseMatrix::from_rows(&[
            [c(2.0, 3.0), c(0.5, -0.25)],
            [c(0.5, -0.25), c(1.0, 4.0)],
        ]);
        let (b, cc) = hermitian_parts(&a).unwrap();
        assert_eq!(b, a.real_part());
        assert_eq!(cc, a.imag_part());
    }

    #[test]
    fn classify_triangular_example() {
        let report = classify(&gap2(0.8)).unwrap();
        assert!(!report.is_higham);
        assert!(report.is_ad);
        assert!((report.omega.unwrap() - 9.0).abs() < 1e-12);
    }

    #[test]
    fn classify_indefinite_real_part() {
        let a = ComplexDenseMatrix::from_rows(&[
            [c(1.0, 1.0), c(2.0, 0.0)],
            [c(2.0, 0.0), c(1.0, 1.0)],
        ]);
        let report = classify(&a).unwrap();
        assert!(!report.is_higham && !report.is_ad);
        assert!((report.lambda_min_b + 1.0).abs() < 1e-14);
        assert!((report.lambda_max_b - 3.0).abs() < 1e-14);
        assert_eq!(report.omega, None);
    }

    #[test]
    fn diagonal_maximality_cases() {
        let d = ComplexDenseMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let check = diagonal_maximality_check(&d).unwrap();
        assert!(check.holds);
        assert_eq!(check.worst_ratio, 0.0);

        let check = diagonal_maximality_check(&gap2(0.9)).unwrap();
        assert!(!check.holds);
        assert_eq!(check.worst_pair, Some((0, 1)));
        assert!((check.worst_ratio - 1.62).abs() < 1e-12);
    }

    #[test]
    fn higham_constructor_rejects_non_symmetric() {
        assert!(matches!(
            HighamMatrix::new(gap2(0.5)),
            Err(Error::NotInClass(_))
        ));
        assert!(AccretiveDissipativeMatrix::new(gap2(0.5)).is_ok());
    }

    #[test]
    fn from_parts_validates() {
        let b = ComplexDenseMatrix::from_real_rows(&[[2.0, 1.0], [1.0, 2.0]]);
        let bad = ComplexDenseMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 1.0]]);
        let h = HighamMatrix::from_parts(b.clone(), b.clone()).unwrap();
        assert!((h.omega() - 3.0).abs() < 1e-13);
        assert!(HighamMatrix::from_parts(b, bad).is_err());
    }
}
