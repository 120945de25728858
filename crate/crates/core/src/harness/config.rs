use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::SpectrumStyle;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignMode {
    VerifyHigham,
    VerifyAd,
    ConjectureSearch,
    Drury,
    Counterexamples,
    ExtremalSweep,
}

impl CampaignMode {
    pub fn is_sampling(self) -> bool {
        matches!(
            self,
            CampaignMode::VerifyHigham
                | CampaignMode::VerifyAd
                | CampaignMode::ConjectureSearch
                | CampaignMode::Drury
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl ReportFormat {
    /// `.csv` selects CSV; anything else is JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => ReportFormat::Csv,
            _ => ReportFormat::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub mode: CampaignMode,
    #[serde(default)]
    pub n_list: Vec<usize>,
    #[serde(default)]
    pub omega_grid: Vec<f64>,
    #[serde(default)]
    pub samples_per_cell: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub spectrum_style: SpectrumStyle,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<ReportFormat>,
}

impl CampaignConfig {
    pub fn new(mode: CampaignMode) -> Self {
        CampaignConfig {
            mode,
            n_list: Vec::new(),
            omega_grid: Vec::new(),
            samples_per_cell: 0,
            seed: 0,
            spectrum_style: SpectrumStyle::default(),
            tolerances: Tolerances::default(),
            output_path: None,
            format: None,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: CampaignConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// The explicit `format`, else the one implied by `output_path`, else JSON.
    pub fn report_format(&self) -> ReportFormat {
        self.format
            .or_else(|| self.output_path.as_deref().map(ReportFormat::from_path))
            .unwrap_or(ReportFormat::Json)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&w) = self
            .omega_grid
            .iter()
            .find(|w| !(**w >= 1.0 && w.is_finite()))
        {
            return Err(Error::Config(format!(
                "omega_grid entry {w} must be finite and >= 1"
            )));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 2) {
            return Err(Error::Config(format!("n_list entry {n} must be >= 2")));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("pd_tol", t.pd_tol),
            ("rtol", t.rtol),
            ("pivot_tol", t.pivot_tol),
            ("symmetry_tol", t.symmetry_tol),
            ("cert_tol", t.cert_tol),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!(
                    "tolerance {name} = {v} must be finite and >= 0"
                )));
            }
        }
        if self.mode.is_sampling() {
            if self.samples_per_cell == 0 {
                return Err(Error::Config("samples_per_cell must be >= 1".into()));
            }
            if self.n_list.is_empty() || self.omega_grid.is_empty() {
                return Err(Error::Config(
                    "sampling modes need non-empty n_list and omega_grid".into(),
                ));
            }
        }
        Ok(())
    }
}
