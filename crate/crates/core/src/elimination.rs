//! Gaussian elimination without pivoting and growth factors.
//!
//! Growth uses the post-elimination convention: the stage-`k` ratio is
//! `max |a_ij^(k)| / max |a_ij|` for `1 <= k <= n-1`, and the original matrix
//! (`k = 0`) is not part of the maximum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::PivotedLu;
use crate::matrix::{ComplexDenseMatrix, C64};
use crate::tolerances::PIVOT_TOL;

/// Active matrices `A^(1), ..., A^(n-1)` of a pivotless elimination.
#[derive(Debug, Clone)]
pub struct EliminationTrace {
    original: ComplexDenseMatrix,
    actives: Vec<ComplexDenseMatrix>,
    stage_max: Vec<f64>,
    pivot_moduli: Vec<f64>,
}

impl EliminationTrace {
    pub fn original(&self) -> &ComplexDenseMatrix {
        &self.original
    }

    pub fn n(&self) -> usize {
        self.original.rows()
    }

    /// Active matrices; `actives()[k - 1]` is `A^(k)`, of size `(n-k) x (n-k)`.
    pub fn actives(&self) -> &[ComplexDenseMatrix] {
        &self.actives
    }

    /// `A^(k)` for `1 <= k <= n-1`.
    pub fn active(&self, k: usize) -> &ComplexDenseMatrix {
        &self.actives[k - 1]
    }

    pub fn stage_max(&self) -> &[f64] {
        &self.stage_max
    }

    /// `|a_kk^(k-1)|` for the `n - 1` pivots used.
    pub fn pivot_moduli(&self) -> &[f64] {
        &self.pivot_moduli
    }

    /// `a_jj^(k)` with `j` in the original 0-based numbering, `k <= j < n`.
    pub fn active_diagonal(&self, k: usize, j: usize) -> C64 {
        self.active(k)[(j - k, j - k)]
    }
}

pub fn eliminate_no_pivot(a: &ComplexDenseMatrix) -> Result<EliminationTrace> {
    eliminate_no_pivot_with(a, PIVOT_TOL)
}

/// Pivotless elimination; a pivot with modulus `<= pivot_tol * max |a_ij|`
/// aborts with `ZeroPivot(stage)` (stages are 1-based).
pub fn eliminate_no_pivot_with(a: &ComplexDenseMatrix, pivot_tol: f64) -> Result<EliminationTrace> {
    let n = a.require_square()?;
    if n < 2 {
        return Err(Error::DimensionMismatch(
            "elimination needs n >= 2".to_string(),
        ));
    }
    let threshold = pivot_tol * a.max_abs();
    let mut work = a.clone();
    let mut actives = Vec::with_capacity(n - 1);
    let mut stage_max = Vec::with_capacity(n - 1);
    let mut pivot_moduli = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let pivot = work[(k, k)];
        if pivot.norm() <= threshold {
            return Err(Error::ZeroPivot { stage: k + 1 });
        }
        pivot_moduli.push(pivot.norm());
        for i in (k + 1)..n {
            let multiplier = work[(i, k)] / pivot;
            if multiplier.norm_sqr() == 0.0 {
                continue;
            }
            for j in (k + 1)..n {
                let update = multiplier * work[(k, j)];
                work[(i, j)] -= update;
            }
        }
        let active = work.block(k + 1, n, k + 1, n);
        stage_max.push(active.max_abs());
        actives.push(active);
    }
    Ok(EliminationTrace {
        original: a.clone(),
        actives,
        stage_max,
        pivot_moduli,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    /// `max |a_ij|` of the original matrix.
    pub m0: f64,
    /// `rho_stage[k - 1] = rho_{n,k}` for `k = 1..n-1`.
    pub rho_stage: Vec<f64>,
    pub rho: f64,
    /// 1-based stage attaining `rho`.
    pub argmax_stage: usize,
    /// `max(1, rho)`: the growth factor when `A^(0) = A` is included.
    pub rho_with_initial: f64,
}

pub fn growth_report(trace: &EliminationTrace) -> GrowthReport {
    let m0 = trace.original.max_abs();
    let rho_stage: Vec<f64> = trace.stage_max.iter().map(|&m| m / m0).collect();
    let (argmax, rho) =
        rho_stage
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
    GrowthReport {
        m0,
        rho,
        argmax_stage: argmax + 1,
        rho_with_initial: rho.max(1.0),
        rho_stage,
    }
}

/// Eliminates and reports growth in one call.
pub fn growth_factor(a: &ComplexDenseMatrix) -> Result<GrowthReport> {
    Ok(growth_report(&eliminate_no_pivot(a)?))
}

/// `a_jj^(k) = det A[I_k + {j}] / det A[I_k]` with row-pivoted determinants.
///
/// `j` is a 0-based original index with `k <= j < n`, and `I_k = {0..k}`.
pub fn active_diagonal_oracle(a: &ComplexDenseMatrix, k: usize, j: usize) -> Result<C64> {
    let n = a.require_square()?;
    if k == 0 || k >= n || j < k || j >= n {
        return Err(Error::DimensionMismatch(format!(
            "need 1 <= k < n and k <= j < n, got k = {k}, j = {j}, n = {n}"
        )));
    }
    let lead: Vec<usize> = (0..k).collect();
    let lead_lu = PivotedLu::factor(&a.principal(&lead))?;
    if let Some(index) = lead_lu.first_small_pivot(PIVOT_TOL * a.max_abs()) {
        return Err(Error::SingularLeadingBlock { index });
    }
    let mut bordered = lead;
    bordered.push(j);
    let num = PivotedLu::factor(&a.principal(&bordered))?.determinant();
    Ok(num / lead_lu.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn extremal_plus(omega: f64) -> ComplexDenseMatrix {
        let t = (omega - 1.0) / (omega + 1.0);
        ComplexDenseMatrix::from_rows(&[[c(1.0, 1.0), c(t, -t)], [c(t, -t), c(1.0, 1.0)]])
    }

    #[test]
    fn diagonal_input_has_no_fill_in() {
        let omega = 4.0;
        let mut d = vec![c(1.0, 1.0); 5];
        d[0] = c(omega, omega);
        let a = ComplexDenseMatrix::from_diagonal(&d);
        let trace = eliminate_no_pivot(&a).unwrap();
        for (k, active) in trace.actives().iter().enumerate() {
            assert_eq!(active.rows(), 5 - (k + 1));
            assert_eq!(*active, a.block(k + 1, 5, k + 1, 5));
        }
        let report = growth_report(&trace);
        assert!((report.rho - 0.25).abs() < 1e-15);
        assert_eq!(report.rho_with_initial, 1.0);
    }

    #[test]
    fn extremal_plus_trailing_scalar() {
        let omega = 3.0;
        let trace = eliminate_no_pivot(&extremal_plus(omega)).unwrap();
        let expected = 2.0 * (1.0 + omega * omega) / (1.0 + omega).powi(2);
        let scalar = trace.active(1)[(0, 0)];
        assert!((scalar - c(expected, expected)).norm() < 1e-15);
        assert!((growth_report(&trace).rho - 1.25).abs() < 1e-15);
    }

    #[test]
    fn zero_leading_pivot() {
        let a = ComplexDenseMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(
            eliminate_no_pivot(&a).unwrap_err(),
            Error::ZeroPivot { stage: 1 }
        );
    }

    #[test]
    fn identity_like_growth_is_one() {
        let a = ComplexDenseMatrix::identity(4).scale(c(1.0, 1.0));
        let report = growth_factor(&a).unwrap();
        assert_eq!(report.rho, 1.0);
        assert_eq!(report.rho_stage, vec![1.0; 3]);
    }

    #[test]
    fn rejects_one_by_one() {
        assert!(eliminate_no_pivot(&ComplexDenseMatrix::identity(1)).is_err());
    }

    #[test]
    fn oracle_cases() {
        let omega = 5.0;
        let a = extremal_plus(omega);
        let expected = 2.0 * (1.0 + omega * omega) / (1.0 + omega).powi(2);
        let got = active_diagonal_oracle(&a, 1, 1).unwrap();
        assert!((got - c(expected, expected)).norm() < 1e-14);

        let block = ComplexDenseMatrix::from_rows(&[
            [c(2.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(1.0, 3.0), c(0.5, 0.0)],
            [c(0.0, 0.0), c(0.5, 0.0), c(1.0, 1.0)],
        ]);
        assert!((active_diagonal_oracle(&block, 1, 2).unwrap() - c(1.0, 1.0)).norm() < 1e-15);
        assert!(active_diagonal_oracle(&block, 0, 1).is_err());
        assert!(active_diagonal_oracle(&block, 2, 1).is_err());
    }
}
