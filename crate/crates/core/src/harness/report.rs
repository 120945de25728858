use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::BoundCertificate;
use crate::error::{Error, Result};
use crate::generators::SpectrumStyle;
use crate::tolerances::Tolerances;

use super::config::{CampaignMode, ReportFormat};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub version: String,
    pub mode: CampaignMode,
    pub seed: u64,
    pub n_list: Vec<usize>,
    pub omega_grid: Vec<f64>,
    pub samples_per_cell: usize,
    pub spectrum_style: SpectrumStyle,
    pub tolerances: Tolerances,
    pub sampling_model: String,
}

/// A failed binding certificate, or a sample that could not be certified
/// (`certificate = "sample.error"`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub sample: u64,
    pub seed: u64,
    pub certificate: String,
    pub context: String,
    pub measured: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl Violation {
    pub fn from_certificate(sample: u64, seed: u64, cert: &BoundCertificate) -> Self {
        Violation {
            sample,
            seed,
            certificate: cert.name.clone(),
            context: cert.context.clone(),
            measured: finite(cert.measured),
            lower: cert.lower,
            upper: cert.upper,
        }
    }

    pub fn from_error(sample: u64, seed: u64, err: &Error) -> Self {
        Violation {
            sample,
            seed,
            certificate: "sample.error".into(),
            context: err.to_string(),
            measured: None,
            lower: None,
            upper: None,
        }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRecord {
    pub n: usize,
    pub omega: f64,
    pub samples: usize,
    pub failed_samples: usize,
    pub certificates: usize,
    pub rho_min: Option<f64>,
    pub rho_max: Option<f64>,
    pub rho_mean: Option<f64>,
    /// Smallest slack over all binding certificates of the cell.
    pub worst_slack: Option<f64>,
    pub violation_count: usize,
    /// The first violations in sample order.
    pub violations: Vec<Violation>,
    /// Samples with `rho_n` above `2(1+w^2)/(1+w)^2` (accretive-dissipative modes).
    pub conjecture_exceedances: usize,
    /// Largest `rho_n / (2(1+w^2)/(1+w)^2)` (accretive-dissipative modes).
    pub max_conjecture_ratio: Option<f64>,
}

impl CellRecord {
    /// `(statistic, value)` rows; counts print as integers and reals in
    /// shortest round-trip form.
    fn statistics(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("samples", self.samples.to_string()),
            ("failed_samples", self.failed_samples.to_string()),
            ("certificates", self.certificates.to_string()),
        ];
        let reals = [
            ("rho_min", self.rho_min),
            ("rho_max", self.rho_max),
            ("rho_mean", self.rho_mean),
            ("worst_slack", self.worst_slack),
        ];
        out.extend(
            reals
                .into_iter()
                .filter_map(|(k, v)| v.map(|v| (k, format!("{v:?}")))),
        );
        out.push(("violation_count", self.violation_count.to_string()));
        out.push((
            "conjecture_exceedances",
            self.conjecture_exceedances.to_string(),
        ));
        if let Some(v) = self.max_conjecture_ratio {
            out.push(("max_conjecture_ratio", format!("{v:?}")));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `|measured - reference| <= tol`.
    Equal,
    /// `measured < reference`.
    Less,
    /// `measured > reference`.
    Greater,
    /// `measured <= reference + tol`.
    AtMost,
}

/// One reproduced numeric claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub reference: f64,
    pub relation: Relation,
    pub tol: f64,
    pub n: Option<usize>,
    pub omega: Option<f64>,
    pub detail: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        measured: f64,
        relation: Relation,
        reference: f64,
        tol: f64,
    ) -> Self {
        let passed = measured.is_finite()
            && match relation {
                Relation::Equal => (measured - reference).abs() <= tol,
                Relation::Less => measured < reference,
                Relation::Greater => measured > reference,
                Relation::AtMost => measured <= reference + tol,
            };
        Check {
            name: name.into(),
            passed,
            measured,
            reference,
            relation,
            tol,
            n: None,
            omega: None,
            detail: String::new(),
        }
    }

    pub fn equal(name: impl Into<String>, measured: f64, reference: f64, tol: f64) -> Self {
        Self::new(name, measured, Relation::Equal, reference, tol)
    }

    pub fn less(name: impl Into<String>, measured: f64, reference: f64) -> Self {
        Self::new(name, measured, Relation::Less, reference, 0.0)
    }

    pub fn greater(name: impl Into<String>, measured: f64, reference: f64) -> Self {
        Self::new(name, measured, Relation::Greater, reference, 0.0)
    }

    /// A boolean claim, recorded as `measured = 1` against `reference = 1`.
    pub fn holds(name: impl Into<String>, value: bool) -> Self {
        Self::equal(name, if value { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    pub fn at(mut self, n: Option<usize>, omega: Option<f64>) -> Self {
        self.n = n;
        self.omega = omega;
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    BindingViolation,
    Conjecture,
}

/// A sample worth re-checking by hand, with its matrix in the text format.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub n: usize,
    pub omega: f64,
    pub sample: u64,
    pub seed: u64,
    pub certificate: String,
    pub measured: Option<f64>,
    pub bound: Option<f64>,
    pub matrix: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub metadata: Metadata,
    pub cells: Vec<CellRecord>,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
}

impl CampaignReport {
    pub fn binding_violations(&self) -> usize {
        self.cells.iter().map(|c| c.violation_count).sum::<usize>()
            + self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn conjecture_exceedances(&self) -> usize {
        self.cells.iter().map(|c| c.conjecture_exceedances).sum()
    }

    /// 0 when every binding certificate and check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.binding_violations() == 0 {
            0
        } else {
            2
        }
    }
}

pub const CSV_HEADER: &str = "n,omega,statistic,value";

/// JSON (pretty, newline-terminated) or CSV with one row per
/// `(n, omega, statistic)`; checks appear as `check:<name>` rows.
pub fn emit_report(report: &CampaignReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut out =
                serde_json::to_vec_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for cell in &report.cells {
                for (stat, value) in cell.statistics() {
                    let _ = writeln!(out, "{},{:?},{stat},{value}", cell.n, cell.omega);
                }
            }
            for check in &report.checks {
                let n = check.n.map(|n| n.to_string()).unwrap_or_default();
                let omega = check.omega.map(|w| format!("{w:?}")).unwrap_or_default();
                let _ = writeln!(out, "{n},{omega},check:{},{:?}", check.name, check.measured);
            }
            Ok(out.into_bytes())
        }
    }
}
