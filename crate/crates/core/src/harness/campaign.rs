use rayon::prelude::*;

use crate::bounds::{
    ad_certificates_for, drury_certificates, higham_certificates_for, loewner_schur_check_active,
    upper_constant, BoundCertificate,
};
use crate::classes::{
    diagonal_maximality_check, hermitian_parts, AccretiveDissipativeMatrix, HermitianSplit,
    HighamMatrix,
};
use crate::elimination::{eliminate_no_pivot_with, growth_report, EliminationTrace};
use crate::error::{Error, Result};
use crate::generators::{random_ad, random_higham, sample_seed, SamplerConfig, SpectrumStyle};
use crate::linalg::hermitian_eigenvalues;
use crate::matrix::ComplexDenseMatrix;
use crate::tolerances::Tolerances;

use super::checks::{extremal_checks, gap_checks, DEFAULT_DIMENSIONS, DEFAULT_OMEGAS};
use super::config::{CampaignConfig, CampaignMode};
use super::io::emit_matrix;
use super::report::{CampaignReport, CellRecord, Finding, FindingKind, Metadata, Violation};

/// Violations and findings kept per cell; counts are always complete.
pub const MAX_RECORDED_PER_CELL: usize = 50;

struct Evaluation {
    rho: f64,
    certs: Vec<BoundCertificate>,
    matrix: ComplexDenseMatrix,
    /// `(measured rho_n, conjectured bound)` for accretive-dissipative modes.
    conjecture: Option<(f64, f64)>,
}

struct SampleOutcome {
    index: u64,
    seed: u64,
    rho: Option<f64>,
    cert_count: usize,
    worst_slack: f64,
    violations: Vec<Violation>,
    conjecture: Option<(f64, f64)>,
    matrix: Option<ComplexDenseMatrix>,
}

fn pd_margin(h: &ComplexDenseMatrix) -> Result<f64> {
    let s = hermitian_eigenvalues(h)?;
    Ok(s.min() / s.norm())
}

/// Class re-validation of every active matrix: positive definite Hermitian
/// parts, and for Higham inputs complex symmetry and maximal entries on the
/// diagonal.
fn heredity_certificates(
    trace: &EliminationTrace,
    higham: bool,
    tol: &Tolerances,
) -> Result<Vec<BoundCertificate>> {
    let mut out = Vec::new();
    for (i, active) in trace.actives().iter().enumerate() {
        let ctx = format!("k={}", i + 1);
        let (r, t) = hermitian_parts(active)?;
        out.push(
            BoundCertificate::lower_bound(
                "heredity.real_part_pd",
                pd_margin(&r)?,
                tol.pd_tol,
                tol.cert_tol,
            )
            .context(ctx.clone()),
        );
        out.push(
            BoundCertificate::lower_bound(
                "heredity.imag_part_pd",
                pd_margin(&t)?,
                tol.pd_tol,
                tol.cert_tol,
            )
            .context(ctx.clone()),
        );
        if higham {
            out.push(
                BoundCertificate::upper_bound(
                    "heredity.symmetry",
                    active.symmetry_defect(),
                    tol.symmetry_tol,
                    tol.cert_tol,
                )
                .context(ctx.clone()),
            );
            out.push(
                BoundCertificate::upper_bound(
                    "heredity.diagonal_maximality",
                    diagonal_maximality_check(active)?.worst_ratio,
                    1.0,
                    tol.cert_tol,
                )
                .context(ctx.clone()),
            );
            out.push(
                BoundCertificate::upper_bound(
                    "heredity.max_on_diagonal",
                    active.max_abs() / active.max_abs_diagonal(),
                    1.0,
                    tol.cert_tol,
                )
                .context(ctx),
            );
        }
    }
    Ok(out)
}

fn loewner_certificates<M: HermitianSplit>(
    a: &M,
    trace: &EliminationTrace,
    tol: &Tolerances,
) -> Result<Vec<BoundCertificate>> {
    let mut out = Vec::new();
    for k in 1..a.n() {
        out.extend(loewner_schur_check_active(a, k, trace.active(k), tol)?.into_vec());
    }
    Ok(out)
}

fn evaluate(mode: CampaignMode, cfg: &SamplerConfig, tol: &Tolerances) -> Result<Evaluation> {
    match mode {
        CampaignMode::VerifyHigham => {
            let a = random_higham(cfg)?;
            let trace = eliminate_no_pivot_with(a.matrix(), tol.pivot_tol)?;
            let report = growth_report(&trace);
            let mut certs = higham_certificates_for(a.omega(), &report, tol);
            certs.extend(heredity_certificates(&trace, true, tol)?);
            certs.extend(loewner_certificates(&a, &trace, tol)?);
            Ok(Evaluation {
                rho: report.rho,
                certs,
                matrix: a.into_matrix(),
                conjecture: None,
            })
        }
        CampaignMode::VerifyAd | CampaignMode::ConjectureSearch => {
            let a: AccretiveDissipativeMatrix = random_ad(cfg)?;
            let trace = eliminate_no_pivot_with(a.matrix(), tol.pivot_tol)?;
            let report = growth_report(&trace);
            let mut certs = ad_certificates_for(a.omega(), &trace, &report, tol);
            if mode == CampaignMode::VerifyAd {
                certs.extend(heredity_certificates(&trace, false, tol)?);
                certs.extend(loewner_certificates(&a, &trace, tol)?);
            }
            let conjecture = Some((report.rho, upper_constant(a.omega())));
            Ok(Evaluation {
                rho: report.rho,
                certs,
                matrix: a.into_matrix(),
                conjecture,
            })
        }
        CampaignMode::Drury => {
            let a: HighamMatrix = random_higham(cfg)?;
            let (_, certs) = drury_certificates(&a, tol)?;
            let rho = certs
                .iter()
                .find(|c| c.name == "drury.refined_growth")
                .map(|c| c.measured)
                .unwrap_or(f64::NAN);
            Ok(Evaluation {
                rho,
                certs,
                matrix: a.into_matrix(),
                conjecture: None,
            })
        }
        CampaignMode::Counterexamples | CampaignMode::ExtremalSweep => {
            Err(Error::Config(format!("{mode:?} does not sample")))
        }
    }
}

fn run_sample(
    mode: CampaignMode,
    cfg: SamplerConfig,
    index: u64,
    tol: &Tolerances,
) -> SampleOutcome {
    match evaluate(mode, &cfg, tol) {
        Ok(ev) => {
            let binding = ev.certs.iter().filter(|c| c.binding);
            let worst_slack = binding
                .clone()
                .map(BoundCertificate::worst_slack)
                .fold(f64::INFINITY, f64::min);
            let violations: Vec<Violation> = ev
                .certs
                .iter()
                .filter(|c| c.is_violation())
                .map(|c| Violation::from_certificate(index, cfg.seed, c))
                .collect();
            let exceeded = ev.conjecture.is_some_and(|(rho, bound)| rho > bound);
            let keep = !violations.is_empty() || exceeded;
            SampleOutcome {
                index,
                seed: cfg.seed,
                rho: Some(ev.rho),
                cert_count: ev.certs.len(),
                worst_slack,
                violations,
                conjecture: ev.conjecture,
                matrix: keep.then_some(ev.matrix),
            }
        }
        Err(err) => SampleOutcome {
            index,
            seed: cfg.seed,
            rho: None,
            cert_count: 0,
            worst_slack: f64::INFINITY,
            violations: vec![Violation::from_error(index, cfg.seed, &err)],
            conjecture: None,
            matrix: None,
        },
    }
}

fn aggregate(
    n: usize,
    omega: f64,
    outcomes: Vec<SampleOutcome>,
    findings: &mut Vec<Finding>,
) -> CellRecord {
    let rhos: Vec<f64> = outcomes.iter().filter_map(|o| o.rho).collect();
    let worst = outcomes
        .iter()
        .map(|o| o.worst_slack)
        .fold(f64::INFINITY, f64::min);
    let mut cell = CellRecord {
        n,
        omega,
        samples: outcomes.len(),
        failed_samples: outcomes.iter().filter(|o| o.rho.is_none()).count(),
        certificates: outcomes.iter().map(|o| o.cert_count).sum(),
        rho_min: rhos.iter().copied().reduce(f64::min),
        rho_max: rhos.iter().copied().reduce(f64::max),
        rho_mean: (!rhos.is_empty()).then(|| rhos.iter().sum::<f64>() / rhos.len() as f64),
        worst_slack: worst.is_finite().then_some(worst),
        violation_count: 0,
        violations: Vec::new(),
        conjecture_exceedances: 0,
        max_conjecture_ratio: None,
    };
    let mut recorded = 0;
    for o in outcomes {
        cell.violation_count += o.violations.len();
        if let Some((rho, bound)) = o.conjecture {
            let ratio = rho / bound;
            cell.max_conjecture_ratio = Some(
                cell.max_conjecture_ratio
                    .map_or(ratio, |m: f64| m.max(ratio)),
            );
        }
        let exceeded = o.conjecture.filter(|(rho, bound)| rho > bound);
        if exceeded.is_some() {
            cell.conjecture_exceedances += 1;
        }
        let matrix = o.matrix.as_ref().map(emit_matrix);
        if let Some(first) = o.violations.first() {
            if recorded < MAX_RECORDED_PER_CELL {
                findings.push(Finding {
                    kind: FindingKind::BindingViolation,
                    n,
                    omega,
                    sample: o.index,
                    seed: o.seed,
                    certificate: first.certificate.clone(),
                    measured: first.measured,
                    bound: first.upper.or(first.lower),
                    matrix: matrix.clone(),
                });
                recorded += 1;
            }
        }
        if let Some((rho, bound)) = exceeded {
            if recorded < MAX_RECORDED_PER_CELL {
                findings.push(Finding {
                    kind: FindingKind::Conjecture,
                    n,
                    omega,
                    sample: o.index,
                    seed: o.seed,
                    certificate: "ad.conjectured_growth".into(),
                    measured: Some(rho),
                    bound: Some(bound),
                    matrix,
                });
                recorded += 1;
            }
        }
        let room = MAX_RECORDED_PER_CELL.saturating_sub(cell.violations.len());
        cell.violations.extend(o.violations.into_iter().take(room));
    }
    cell
}

fn sampling_model(style: SpectrumStyle) -> String {
    let interior = match style {
        SpectrumStyle::PinnedEndpointsUniform => "uniform",
        SpectrumStyle::LogUniform => "log-uniform",
    };
    format!(
        "B and C drawn independently as Q diag(1, omega, ...) Q^*, Q Haar orthogonal (Higham) or unitary \
         (accretive-dissipative), interior eigenvalues {interior} in [1, omega]"
    )
}

/// Runs a campaign. Results depend only on the configuration: sample `i` of
/// cell `(n, omega_grid[j])` uses seed `sample_seed(seed, n, j, i)`, and
/// outcomes are merged in sample order.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let tol = config.tolerances;
    let mut cells = Vec::new();
    let mut checks = Vec::new();
    let mut findings = Vec::new();
    match config.mode {
        CampaignMode::Counterexamples | CampaignMode::ExtremalSweep => {
            let omegas: &[f64] = if config.omega_grid.is_empty() {
                &DEFAULT_OMEGAS
            } else {
                &config.omega_grid
            };
            let dims: &[usize] = if config.n_list.is_empty() {
                &DEFAULT_DIMENSIONS
            } else {
                &config.n_list
            };
            if config.mode == CampaignMode::Counterexamples {
                checks.extend(gap_checks()?);
            }
            checks.extend(extremal_checks(omegas, dims)?);
        }
        mode => {
            let grid: Vec<(usize, usize, f64)> = config
                .n_list
                .iter()
                .flat_map(|&n| {
                    config
                        .omega_grid
                        .iter()
                        .enumerate()
                        .map(move |(j, &w)| (n, j, w))
                })
                .collect();
            let outcomes: Vec<Vec<SampleOutcome>> = grid
                .par_iter()
                .map(|&(n, j, omega)| {
                    (0..config.samples_per_cell as u64)
                        .into_par_iter()
                        .map(|i| {
                            let cfg = SamplerConfig {
                                n,
                                omega,
                                seed: sample_seed(config.seed, n, j, i),
                                spectrum_style: config.spectrum_style,
                            };
                            run_sample(mode, cfg, i, &tol)
                        })
                        .collect()
                })
                .collect();
            for ((n, _, omega), cell_outcomes) in grid.into_iter().zip(outcomes) {
                cells.push(aggregate(n, omega, cell_outcomes, &mut findings));
            }
        }
    }
    Ok(CampaignReport {
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            mode: config.mode,
            seed: config.seed,
            n_list: config.n_list.clone(),
            omega_grid: config.omega_grid.clone(),
            samples_per_cell: config.samples_per_cell,
            spectrum_style: config.spectrum_style,
            tolerances: tol,
            sampling_model: sampling_model(config.spectrum_style),
        },
        cells,
        checks,
        findings,
    })
}
