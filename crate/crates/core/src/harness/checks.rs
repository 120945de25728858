//! Reproductions of the counterexample claims and the extremal equalities.

use std::f64::consts::SQRT_2;

use crate::bounds::{
    ad_growth_certificates, drury_sector, kantorovich_check, lower_scalar_constant,
    scalar_schur_certificate, scalar_update, upper_constant,
};
use crate::classes::{classify, diagonal_maximality_check, HermitianSplit};
use crate::elimination::growth_factor;
use crate::error::Result;
use crate::generators::{diag_lower_example, extremal_pair, gap_examples};
use crate::matrix::ComplexDenseMatrix;
use crate::tolerances::SHARP_EQUALITY_TOL;

use super::report::Check;

pub const DEFAULT_OMEGAS: [f64; 5] = [1.0, 2.0, 3.0, 10.0, 100.0];
pub const DEFAULT_DIMENSIONS: [usize; 3] = [2, 5, 10];

/// `c* C11^{-1} c` for the imaginary part `C` of a 2x2 block.
fn imag_coupling(c: &ComplexDenseMatrix) -> Result<f64> {
    Ok(kantorovich_check(c, f64::INFINITY)?.measured)
}

fn gap1_checks(r: f64, full: bool) -> Result<Vec<Check>> {
    let g = gap_examples(r, 2.0)?;
    let (alpha, sigma) = scalar_update(g.gap1.matrix())?;
    let q = alpha - sigma;
    let coupling = imag_coupling(g.gap1.imag_part())?;
    let r2 = r * r;
    let at = |c: Check| c.detail(format!("r={r}"));
    let mut out = vec![at(Check::greater(
        "gap1.squaring_fails",
        q.im * q.im,
        coupling * coupling,
    ))];
    if full {
        out.extend([
            at(Check::equal("gap1.q_re", q.re, 3.0 * r2 / 8.0, 1e-14)),
            at(Check::equal("gap1.q_im", q.im, -3.0 * r2 / 8.0, 1e-14)),
            at(Check::equal(
                "gap1.imag_coupling",
                coupling,
                r2 / 4.0,
                1e-14,
            )),
            at(Check::equal(
                "gap1.im_q_squared",
                q.im * q.im,
                9.0 * r2 * r2 / 64.0,
                1e-14,
            )),
            at(Check::new(
                "gap1.componentwise_bound_holds",
                q.im,
                super::report::Relation::AtMost,
                coupling,
                0.0,
            )),
        ]);
    }
    Ok(out)
}

fn gap2_checks(r: f64) -> Result<Vec<Check>> {
    let g = gap_examples(r, 2.0)?;
    let a = g.gap2.matrix();
    let report = classify(a)?;
    let dm = diagonal_maximality_check(a)?;
    let rho = growth_factor(a)?.rho;
    let certs = ad_growth_certificates(&g.gap2)?;
    let at = |c: Check| c.detail(format!("r={r}"));
    Ok(vec![
        at(Check::holds("gap2.is_ad", report.is_ad)),
        at(Check::holds("gap2.not_higham", !report.is_higham)),
        at(Check::equal(
            "gap2.off_diagonal",
            a[(0, 1)].norm(),
            2.0 * r,
            1e-15,
        )),
        at(Check::greater(
            "gap2.off_diagonal_exceeds_diagonal",
            a[(0, 1)].norm(),
            SQRT_2,
        )),
        at(Check::holds("gap2.diagonal_maximality_fails", !dm.holds)),
        at(Check::equal(
            "gap2.omega",
            g.gap2.omega(),
            (1.0 + r) / (1.0 - r),
            1e-10,
        )),
        at(Check::equal("gap2.growth", rho, SQRT_2 / (2.0 * r), 1e-14)),
        at(Check::holds(
            "gap2.ad_certificates",
            certs.iter().all(|c| !c.is_violation()),
        )),
    ])
}

fn gap3_checks(omega: f64) -> Result<Vec<Check>> {
    let g = gap_examples(0.5, omega)?;
    let report = growth_factor(g.gap3.matrix())?;
    let lower = lower_scalar_constant(omega);
    let at = |c: Check| c.at(Some(g.gap3.n()), Some(omega));
    Ok(vec![
        at(Check::equal(
            "gap3.kappa_real",
            g.gap3.kappa_b(),
            omega,
            1e-12 * omega,
        )),
        at(Check::equal(
            "gap3.kappa_imag",
            g.gap3.kappa_c(),
            omega,
            1e-12 * omega,
        )),
        at(Check::equal("gap3.growth", report.rho, 1.0 / omega, 1e-12)),
        at(Check::less(
            "gap3.growth_below_scalar_lower",
            report.rho,
            lower,
        )),
        at(Check::new(
            "gap3.scalar_lower_at_most_one",
            lower,
            super::report::Relation::AtMost,
            1.0,
            0.0,
        )),
        at(Check::equal(
            "gap3.growth_with_initial",
            report.rho_with_initial,
            1.0,
            0.0,
        )),
    ])
}

/// Every numeric claim about the three gaps, at `r = 1/2` (Gap 1), `r = 0.9`
/// (Gap 2) and `w = 4` (Gap 3), plus the Gap 1 squaring failure on a grid of `r`.
pub fn gap_checks() -> Result<Vec<Check>> {
    let mut out = gap1_checks(0.5, true)?;
    for i in 1..20 {
        out.extend(gap1_checks(i as f64 / 20.0, false)?);
    }
    out.extend(gap2_checks(0.9)?);
    out.extend(gap3_checks(4.0)?);
    Ok(out)
}

/// Sharpness of the extremal families for each `w`, and the diagonal lower
/// example at every stage for each `(n, w)`.
pub fn extremal_checks(omegas: &[f64], dims: &[usize]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &omega in omegas {
        let (minus, plus) = extremal_pair(omega)?;
        let upper = upper_constant(omega);
        let lower = lower_scalar_constant(omega);
        let at = |c: Check| c.at(Some(2), Some(omega));

        let rho = growth_factor(plus.matrix())?.rho;
        out.push(at(Check::equal("extremal.plus_growth", rho, upper, 1e-10)));
        if omega == 3.0 {
            out.push(at(Check::equal(
                "extremal.plus_growth_value",
                rho,
                1.25,
                1e-10,
            )));
        }
        if omega == 10.0 {
            out.push(at(Check::equal(
                "extremal.plus_growth_value",
                rho,
                202.0 / 121.0,
                1e-10,
            )));
        }
        let plus_cert = scalar_schur_certificate(&plus, omega)?;
        out.push(at(Check::equal(
            "extremal.plus_sigma_upper_slack",
            plus_cert.sigma_cert.slack_upper.unwrap_or(f64::NAN),
            0.0,
            SHARP_EQUALITY_TOL,
        )));

        let minus_cert = scalar_schur_certificate(&minus, omega)?;
        out.push(at(Check::equal(
            "extremal.minus_sigma_modulus",
            minus_cert.sigma.norm(),
            lower * SQRT_2,
            1e-10,
        )));
        out.push(at(Check::equal(
            "extremal.minus_sigma_re",
            minus_cert.sigma.re,
            lower,
            1e-10,
        )));
        out.push(at(Check::equal(
            "extremal.minus_sigma_im",
            minus_cert.sigma.im,
            lower,
            1e-10,
        )));
        out.push(at(Check::equal(
            "extremal.minus_sigma_lower_slack",
            minus_cert.sigma_cert.slack_lower.unwrap_or(f64::NAN),
            0.0,
            SHARP_EQUALITY_TOL,
        )));

        out.push(at(Check::equal(
            "extremal.plus_refined_sector",
            drury_sector(&plus)?.refined_bound,
            upper,
            1e-10,
        )));

        let t = (omega - 1.0) / (omega + 1.0);
        let k = kantorovich_check(
            &ComplexDenseMatrix::from_real_rows(&[[1.0, t], [t, 1.0]]),
            omega,
        )?;
        out.push(at(Check::equal(
            "kantorovich.equality_slack",
            k.slack_upper.unwrap_or(f64::NAN),
            0.0,
            1e-12,
        )));

        for &n in dims {
            let a = diag_lower_example(omega, n)?;
            let report = growth_factor(a.matrix())?;
            let worst = report
                .rho_stage
                .iter()
                .map(|r| (r - 1.0 / omega).abs())
                .fold(0.0, f64::max);
            out.push(
                Check::equal("diag_lower.stage_deviation", worst, 0.0, 1e-12)
                    .at(Some(n), Some(omega))
                    .detail(format!("max_k |rho_(n,k) - 1/omega| over {} stages", n - 1)),
            );
        }
    }
    Ok(out)
}
