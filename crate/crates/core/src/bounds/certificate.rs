use serde::Serialize;

use crate::tolerances::CERT_TOL;

/// One instance of an inequality `lower <= measured <= upper`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub name: String,
    pub measured: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// `measured - lower`.
    pub slack_lower: Option<f64>,
    /// `upper - measured`.
    pub slack_upper: Option<f64>,
    pub satisfied: bool,
    /// Non-binding certificates record evidence for open conjectures and
    /// never count as violations.
    pub binding: bool,
    pub context: String,
}

impl BoundCertificate {
    pub fn new(
        name: impl Into<String>,
        measured: f64,
        lower: Option<f64>,
        upper: Option<f64>,
    ) -> Self {
        Self::with_tol(name, measured, lower, upper, CERT_TOL)
    }

    /// Satisfied iff each present bound holds up to `cert_tol * max(1, |measured|)`.
    pub fn with_tol(
        name: impl Into<String>,
        measured: f64,
        lower: Option<f64>,
        upper: Option<f64>,
        cert_tol: f64,
    ) -> Self {
        let tol = cert_tol * measured.abs().max(1.0);
        let slack_lower = lower.map(|l| measured - l);
        let slack_upper = upper.map(|u| u - measured);
        let satisfied = measured.is_finite()
            && slack_lower.is_none_or(|s| s >= -tol)
            && slack_upper.is_none_or(|s| s >= -tol);
        BoundCertificate {
            name: name.into(),
            measured,
            lower,
            upper,
            slack_lower,
            slack_upper,
            satisfied,
            binding: true,
            context: String::new(),
        }
    }

    pub fn upper_bound(name: impl Into<String>, measured: f64, upper: f64, cert_tol: f64) -> Self {
        Self::with_tol(name, measured, None, Some(upper), cert_tol)
    }

    pub fn lower_bound(name: impl Into<String>, measured: f64, lower: f64, cert_tol: f64) -> Self {
        Self::with_tol(name, measured, Some(lower), None, cert_tol)
    }

    pub fn two_sided(
        name: impl Into<String>,
        measured: f64,
        lower: f64,
        upper: f64,
        cert_tol: f64,
    ) -> Self {
        Self::with_tol(name, measured, Some(lower), Some(upper), cert_tol)
    }

    pub fn non_binding(mut self) -> Self {
        self.binding = false;
        self
    }

    pub fn context(mut self, context: impl Into<String>) -> Self {
        self.context = context.into();
        self
    }

    /// Smallest present slack; `+inf` when no bound is present.
    pub fn worst_slack(&self) -> f64 {
        self.slack_lower
            .into_iter()
            .chain(self.slack_upper)
            .fold(f64::INFINITY, f64::min)
    }

    /// A binding certificate that failed.
    pub fn is_violation(&self) -> bool {
        self.binding && !self.satisfied
    }
}
