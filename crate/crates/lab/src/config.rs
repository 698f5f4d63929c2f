use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{LabError, LabResult};
use crate::registry;

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_COEFFS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Human,
}

/// Everything needed to re-run one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    /// Overrides of named tolerances of the experiment.
    pub tolerances: BTreeMap<String, f64>,
    /// Number of sample points; the experiment's own default when absent.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Truncation `M` of coefficient series.
    pub coeffs: usize,
    pub out: Option<PathBuf>,
    pub format: ReportFormat,
    /// Directory of the coefficient cache; next to `out` when absent.
    pub cache_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: String::new(),
            tolerances: BTreeMap::new(),
            samples: None,
            seed: DEFAULT_SEED,
            coeffs: DEFAULT_COEFFS,
            out: None,
            format: ReportFormat::Json,
            cache_dir: None,
        }
    }
}

impl ExperimentConfig {
    pub fn named(experiment: &str) -> Self {
        Self { experiment: experiment.into(), ..Self::default() }
    }

    pub fn from_file(path: &Path) -> LabResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> LabResult<()> {
        registry::find(&self.experiment)?;
        if self.samples == Some(0) {
            return Err(LabError::Config("samples must be positive".into()));
        }
        if self.coeffs < 64 {
            return Err(LabError::Config(format!("coeffs = {} is below 64", self.coeffs)));
        }
        for (k, v) in &self.tolerances {
            if !(*v > 0.0 && v.is_finite()) {
                return Err(LabError::Config(format!("tolerance {k} = {v} must be positive")));
            }
        }
        Ok(())
    }

    pub fn tol(&self, key: &str, default: f64) -> f64 {
        self.tolerances.get(key).copied().unwrap_or(default)
    }

    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    pub fn resolved_cache_dir(&self) -> Option<PathBuf> {
        self.cache_dir.clone().or_else(|| {
            let out = self.out.as_ref()?;
            Some(out.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new(".")).join("coeff-cache"))
        })
    }
}

/// Parses `KEY=VAL` tolerance overrides.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VAL, got {s:?}"))?;
    let v: f64 = v.parse().map_err(|e| format!("{v:?}: {e}"))?;
    Ok((k.trim().to_string(), v))
}
