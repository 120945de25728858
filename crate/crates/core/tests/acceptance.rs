//! Acceptance suite: each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use higham_growth::bounds::{
    domination_inequality_check, domination_witness, drury_sector, fischer_sector_check,
    kantorovich_check, lower_scalar_constant, scalar_update, upper_constant,
};
use higham_growth::classes::{
    classify, diagonal_maximality_check, hermitian_parts, HermitianSplit, HighamMatrix,
};
use higham_growth::elimination::{active_diagonal_oracle, eliminate_no_pivot, growth_factor};
use higham_growth::generators::{
    diag_lower_example, extremal_pair, gap_examples, random_ad, random_higham, sample_seed,
    SamplerConfig,
};
use higham_growth::harness::{
    emit_report, parse_matrix, run_campaign, CampaignConfig, CampaignMode, CampaignReport,
    FindingKind, ReportFormat,
};
use higham_growth::linalg::{loewner_margin, schur_complement};
use higham_growth::{ComplexDenseMatrix, C64};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const OMEGAS: [f64; 5] = [1.0, 2.0, 3.0, 10.0, 100.0];

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The trailing scalar `a22 - a21 a12 / a11` of a 2x2 matrix, by hand.
fn trailing_scalar(a: &ComplexDenseMatrix) -> C64 {
    a[(1, 1)] - a[(1, 0)] * a[(0, 1)] / a[(0, 0)]
}

fn c01_extremal_upper() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut at_three = f64::NAN;
    for omega in OMEGAS {
        let (_, plus) = extremal_pair(omega).map_err(fail)?;
        let rho = growth_factor(plus.matrix()).map_err(fail)?.rho;
        let by_hand = trailing_scalar(plus.matrix()).norm() / plus.matrix().max_abs();
        worst = worst
            .max((rho - upper_constant(omega)).abs())
            .max((rho - by_hand).abs());
        if omega == 3.0 {
            at_three = rho;
        }
    }
    ensure(
        worst <= 1e-10 && (at_three - 1.25).abs() <= 1e-10,
        format!("max |rho_2(A+) - 2(1+w^2)/(1+w)^2| = {worst:.2e} (tol 1e-10); rho at w=3 is {at_three}"),
    )
}

fn c02_scalar_lower() -> Outcome {
    let mut worst: f64 = 0.0;
    for omega in OMEGAS {
        let (minus, _) = extremal_pair(omega).map_err(fail)?;
        let (_, sigma) = scalar_update(minus.matrix()).map_err(fail)?;
        let expected = lower_scalar_constant(omega) * SQRT_2;
        worst = worst
            .max((sigma.norm() - expected).abs())
            .max((trailing_scalar(minus.matrix()).norm() - expected).abs());
    }
    ensure(
        worst <= 1e-10,
        format!("max ||sigma(A-)| - 4w/(1+w)^2 sqrt2| = {worst:.2e} (tol 1e-10)"),
    )
}

fn c03_diagonal_lower() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut stages = 0;
    for n in [2, 5, 10] {
        for omega in [2.0, 10.0, 100.0] {
            let report = growth_factor(diag_lower_example(omega, n).map_err(fail)?.matrix())
                .map_err(fail)?;
            for r in report.rho_stage.iter().chain([&report.rho]) {
                worst = worst.max((r - 1.0 / omega).abs());
                stages += 1;
            }
        }
    }
    ensure(
        worst <= 1e-12,
        format!("{stages} stage values, max |rho_(n,k) - 1/w| = {worst:.2e} (tol 1e-12)"),
    )
}

fn sweep_config(mode: CampaignMode, seed: u64) -> CampaignConfig {
    CampaignConfig {
        n_list: (2..=10).collect(),
        omega_grid: vec![1.0, 2.0, 5.0, 20.0, 100.0],
        samples_per_cell: 1000,
        seed,
        ..CampaignConfig::new(mode)
    }
}

fn summarize(report: &CampaignReport) -> (usize, usize, f64, f64) {
    let samples = report.cells.iter().map(|c| c.samples).sum();
    let certs = report.cells.iter().map(|c| c.certificates).sum();
    let rho_max = report
        .cells
        .iter()
        .filter_map(|c| c.rho_max)
        .fold(0.0, f64::max);
    let slack = report
        .cells
        .iter()
        .filter_map(|c| c.worst_slack)
        .fold(f64::INFINITY, f64::min);
    (samples, certs, rho_max, slack)
}

fn c04_higham_sweep(report: &CampaignReport) -> Outcome {
    let (samples, certs, rho_max, slack) = summarize(report);
    let failed: usize = report.cells.iter().map(|c| c.failed_samples).sum();
    let ok = report.binding_violations() == 0 && failed == 0 && samples == 45_000 && rho_max < 2.0;
    ensure(
        ok,
        format!(
            "{samples} samples, {certs} certificates, {} violations, max rho_n = {rho_max:.6}, worst slack {slack:.2e}",
            report.binding_violations()
        ),
    )
}

fn c05_ad_sweep() -> Outcome {
    let report = run_campaign(&sweep_config(CampaignMode::VerifyAd, 5)).map_err(fail)?;
    let (samples, certs, rho_max, slack) = summarize(&report);
    let failed: usize = report.cells.iter().map(|c| c.failed_samples).sum();
    ensure(
        report.binding_violations() == 0 && failed == 0 && samples == 45_000,
        format!(
            "{samples} samples, {certs} certificates, {} violations, max rho_n = {rho_max:.6}, worst slack {slack:.2e}",
            report.binding_violations()
        ),
    )
}

fn c06_kantorovich() -> Outcome {
    let mut worst: f64 = 0.0;
    for omega in OMEGAS.into_iter().chain([1.5, 7.0, 1e3]) {
        let t = (omega - 1.0) / (omega + 1.0);
        let h = ComplexDenseMatrix::from_real_rows(&[[1.0, t], [t, 1.0]]);
        let cert = kantorovich_check(&h, omega).map_err(fail)?;
        if !cert.satisfied {
            return Err(format!("not satisfied at w={omega}"));
        }
        worst = worst.max(cert.slack_upper.unwrap().abs());
    }
    ensure(
        worst <= 1e-12,
        format!("max |slack| = {worst:.2e} (tol 1e-12)"),
    )
}

fn c07_domination() -> Outcome {
    let mut min_lambda = f64::INFINITY;
    let mut max_residual: f64 = 0.0;
    let mut points = 0;
    for j in 0..=400 {
        let phi = (-PI + j as f64 * PI / 200.0).min(PI);
        for e in 0..=60 {
            let d = 10f64.powf(-3.0 + e as f64 * 0.1);
            let w = domination_witness(phi, d).map_err(fail)?;
            min_lambda = min_lambda.min(w.lambda_min_k);
            max_residual = max_residual.max(w.det_identity_residual);
            points += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = 0;
    for _ in 0..100_000 {
        let phi = rng.gen_range(-PI..=PI);
        let d = 10f64.powf(rng.gen_range(-3.0..3.0));
        let mut z = || C64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let (s, t) = (z(), z());
        if !domination_inequality_check(phi, d, s, t)
            .map_err(fail)?
            .satisfied
        {
            failures += 1;
        }
    }
    ensure(
        points == 401 * 61 && min_lambda >= -1e-12 && max_residual <= 1e-12 && failures == 0,
        format!(
            "{points} grid points: min lambda_min(K) = {min_lambda:.2e}, max det-identity residual = {max_residual:.2e}; \
             {failures} of 100000 random inequality checks failed"
        ),
    )
}

fn c08_gaps() -> Outcome {
    let r = 0.5;
    let g = gap_examples(r, 4.0).map_err(fail)?;
    let (alpha, sigma) = scalar_update(g.gap1.matrix()).map_err(fail)?;
    let q = alpha - sigma;
    let q_err = (q - C64::new(3.0 / 32.0, -3.0 / 32.0)).norm();
    let c = g.gap1.imag_part();
    let coupling = (c[(0, 1)].conj() * c[(0, 1)] / c[(0, 0)]).re;
    let a_ok = q_err <= 1e-14
        && (q.im * q.im - 9.0 * r.powi(4) / 64.0).abs() <= 1e-15
        && (coupling - r * r / 4.0).abs() <= 1e-15
        && q.im * q.im > coupling * coupling;

    let g2 = gap_examples(0.9, 4.0).map_err(fail)?;
    let a2 = g2.gap2.matrix();
    let dm = diagonal_maximality_check(a2).map_err(fail)?;
    let b_ok = (a2[(0, 1)].norm() - 1.8).abs() <= 1e-15 && a2[(0, 1)].norm() > SQRT_2 && !dm.holds;

    let rho3 = growth_factor(g.gap3.matrix()).map_err(fail)?.rho;
    let l = lower_scalar_constant(4.0);
    let c_ok = (rho3 - 0.25).abs() <= 1e-15 && (l - 16.0 / 25.0).abs() <= 1e-15 && rho3 < l;
    ensure(
        a_ok && b_ok && c_ok,
        format!(
            "(a) |q - 3/32(1-i)| = {q_err:.1e}, (Im q)^2 = {} > {} ; (b) |a12| = {}, diag-max ratio {:.3} ; \
             (c) rho = {rho3} < {l}",
            q.im * q.im,
            coupling * coupling,
            a2[(0, 1)].norm(),
            dm.worst_ratio
        ),
    )
}

fn oracle_deviation(a: &ComplexDenseMatrix) -> Result<(f64, usize), String> {
    let trace = eliminate_no_pivot(a).map_err(fail)?;
    let n = a.rows();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for k in 1..n {
        for j in k..n {
            let oracle = active_diagonal_oracle(a, k, j).map_err(fail)?;
            worst = worst.max((trace.active_diagonal(k, j) - oracle).norm() / oracle.norm());
            count += 1;
        }
    }
    Ok((worst, count))
}

fn c09_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut entries = 0;
    for i in 0..200u64 {
        let cfg = SamplerConfig::new(
            2 + (i % 9) as usize,
            [2.0, 10.0, 100.0, 1e3][(i % 4) as usize],
            900 + i,
        );
        for m in [
            random_higham(&cfg).map_err(fail)?.into_matrix(),
            random_ad(&cfg).map_err(fail)?.into_matrix(),
        ] {
            let (w, c) = oracle_deviation(&m)?;
            worst = worst.max(w);
            entries += c;
        }
    }
    ensure(
        worst <= 1e-8,
        format!("400 matrices, {entries} active diagonals, max relative deviation {worst:.2e} (tol 1e-8)"),
    )
}

fn c10_drury() -> Outcome {
    let cfg = CampaignConfig {
        n_list: vec![2, 3, 4, 6, 8],
        omega_grid: vec![1.5, 10.0, 100.0, 1000.0],
        samples_per_cell: 25,
        seed: 10,
        ..CampaignConfig::new(CampaignMode::Drury)
    };
    let report = run_campaign(&cfg).map_err(fail)?;
    let (samples, certs, _, _) = summarize(&report);

    // |det A_S| <= 2 |a_ss| |det A_S\s| on every principal submatrix A_S,
    // with the first index of S as the scalar block.
    let mut fischer = 0;
    let mut fischer_failed = 0;
    for &n in &cfg.n_list {
        for (j, &omega) in cfg.omega_grid.iter().enumerate() {
            for i in 0..cfg.samples_per_cell as u64 {
                let a = random_higham(&SamplerConfig::new(
                    n,
                    omega,
                    sample_seed(cfg.seed, n, j, i),
                ))
                .map_err(fail)?;
                for mask in 1u32..(1 << n) {
                    if mask.count_ones() < 2 {
                        continue;
                    }
                    let idx: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
                    let cert = fischer_sector_check(&a.matrix().principal(&idx), FRAC_PI_4, 1)
                        .map_err(fail)?;
                    fischer += 1;
                    fischer_failed += usize::from(!cert.satisfied);
                }
            }
        }
    }

    let mut worst: f64 = 0.0;
    for omega in OMEGAS {
        let (_, plus) = extremal_pair(omega).map_err(fail)?;
        worst = worst
            .max((drury_sector(&plus).map_err(fail)?.refined_bound - upper_constant(omega)).abs());
    }
    ensure(
        samples == 500 && report.binding_violations() == 0 && fischer_failed == 0 && worst <= 1e-10,
        format!(
            "{samples} samples, {certs} sector certificates, {} violations; {fischer} principal-block Fischer checks, \
             {fischer_failed} failed; max |1+delta^2 - 2(1+w^2)/(1+w)^2| on A+ = {worst:.2e}",
            report.binding_violations()
        ),
    )
}

fn c11_heredity() -> Outcome {
    let mut actives = 0;
    let mut not_higham = 0;
    let mut off_diagonal_max = 0;
    let mut min_slack = f64::INFINITY;
    for i in 0..2000u64 {
        let cfg = SamplerConfig::new(
            2 + (i % 11) as usize,
            [1.0, 2.0, 20.0, 100.0][(i % 4) as usize],
            11_000 + i,
        );
        let a = random_higham(&cfg).map_err(fail)?;
        let trace = eliminate_no_pivot(a.matrix()).map_err(fail)?;
        for k in 1..cfg.n {
            let active = trace.active(k);
            actives += 1;
            if HighamMatrix::new(active.clone()).is_err() {
                not_higham += 1;
            }
            if active.max_abs() > active.max_abs_diagonal() {
                off_diagonal_max += 1;
            }
            let (r, t) = hermitian_parts(active).map_err(fail)?;
            let b_schur = schur_complement(a.real_part(), k).map_err(fail)?;
            let c_schur = schur_complement(a.imag_part(), k).map_err(fail)?;
            min_slack = min_slack
                .min(loewner_margin(&r, &b_schur).map_err(fail)?)
                .min(loewner_margin(&t, &c_schur).map_err(fail)?);
        }
    }
    ensure(
        not_higham == 0 && off_diagonal_max == 0 && min_slack >= -1e-9,
        format!(
            "{actives} active matrices: {not_higham} fail re-validation, {off_diagonal_max} with an off-diagonal \
             maximum; min Loewner slack {min_slack:.2e} (tol -1e-9)"
        ),
    )
}

fn c12_conjecture() -> Outcome {
    let cfg = CampaignConfig {
        n_list: (2..=8).collect(),
        omega_grid: vec![2.0, 10.0, 100.0],
        samples_per_cell: 477,
        seed: 12,
        ..CampaignConfig::new(CampaignMode::ConjectureSearch)
    };
    let report = run_campaign(&cfg).map_err(fail)?;
    let (samples, _, _, _) = summarize(&report);
    let exceed = report.conjecture_exceedances();
    let findings: Vec<_> = report
        .findings
        .iter()
        .filter(|f| f.kind == FindingKind::Conjecture)
        .collect();
    let serialized = findings
        .iter()
        .all(|f| f.matrix.as_deref().is_some_and(|m| parse_matrix(m).is_ok()));
    let ratio = report
        .cells
        .iter()
        .filter_map(|c| c.max_conjecture_ratio)
        .fold(0.0, f64::max);
    ensure(
        samples >= 10_000 && report.binding_violations() == 0 && serialized && report.exit_code() == 0,
        format!(
            "{samples} samples, {} binding violations, {exceed} conjecture exceedances ({} serialized), \
             max rho_n / (2(1+w^2)/(1+w)^2) = {ratio:.6}",
            report.binding_violations(),
            findings.len()
        ),
    )
}

fn c13_determinism(first: &[u8]) -> Outcome {
    let second = run_campaign(&sweep_config(CampaignMode::VerifyHigham, 4)).map_err(fail)?;
    let second = emit_report(&second, ReportFormat::Json).map_err(fail)?;
    ensure(
        first == second.as_slice(),
        format!(
            "report bodies of {} and {} bytes are identical",
            first.len(),
            second.len()
        ),
    )
}

fn main() -> ExitCode {
    // The AD sampler must produce members of its class.
    assert!(
        classify(random_ad(&SamplerConfig::new(3, 2.0, 0)).unwrap().matrix())
            .unwrap()
            .is_ad
    );

    let start = Instant::now();
    let sweep = run_campaign(&sweep_config(CampaignMode::VerifyHigham, 4));
    let sweep_bytes = sweep
        .as_ref()
        .ok()
        .and_then(|r| emit_report(r, ReportFormat::Json).ok());

    let criteria: Vec<Criterion> = vec![
        ("extremal upper equality", Box::new(c01_extremal_upper)),
        ("scalar lower equality", Box::new(c02_scalar_lower)),
        ("diagonal lower sharpness", Box::new(c03_diagonal_lower)),
        (
            "Higham sweep",
            Box::new(|| {
                sweep
                    .as_ref()
                    .map_err(|e| e.to_string())
                    .and_then(c04_higham_sweep)
            }),
        ),
        ("accretive-dissipative sweep", Box::new(c05_ad_sweep)),
        ("Kantorovich equality", Box::new(c06_kantorovich)),
        ("domination lemma grid", Box::new(c07_domination)),
        ("gap reproductions", Box::new(c08_gaps)),
        ("oracle equivalence", Box::new(c09_oracle)),
        ("sectorial route", Box::new(c10_drury)),
        ("heredity suite", Box::new(c11_heredity)),
        ("conjecture campaign", Box::new(c12_conjecture)),
        (
            "determinism",
            Box::new(|| {
                sweep_bytes
                    .as_deref()
                    .ok_or_else(|| "first sweep failed".to_string())
                    .and_then(c13_determinism)
            }),
        ),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, msg) = match run() {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!(
            "{tag} criterion {:>2} {name}: {msg} [{:.1}s]",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
