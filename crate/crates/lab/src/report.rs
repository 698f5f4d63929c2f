use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use monodromy::C64;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, ReportFormat};
use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Cx {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// One two-sided comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub inputs: serde_json::Value,
    pub lhs: Cx,
    pub rhs: Cx,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(default)]
    pub err_estimates: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Case {
    /// Residual `|lhs − rhs|` against `tol`.
    pub fn compare(id: impl Into<String>, inputs: serde_json::Value, lhs: C64, rhs: C64, tol: f64) -> Self {
        Self::with_residual(id, inputs, lhs, rhs, (lhs - rhs).norm(), tol)
    }

    pub fn with_residual(id: impl Into<String>, inputs: serde_json::Value, lhs: C64, rhs: C64, residual: f64, tol: f64) -> Self {
        Self {
            id: id.into(),
            inputs,
            lhs: lhs.into(),
            rhs: rhs.into(),
            residual,
            tol,
            pass: residual <= tol,
            err_estimates: Vec::new(),
            error: None,
        }
    }

    /// A case whose evaluation failed; it never passes.
    pub fn failed(id: impl Into<String>, inputs: serde_json::Value, tol: f64, error: impl std::fmt::Display) -> Self {
        Self {
            id: id.into(),
            inputs,
            lhs: Cx { re: 0.0, im: 0.0 },
            rhs: Cx { re: 0.0, im: 0.0 },
            residual: f64::MAX,
            tol,
            pass: false,
            err_estimates: Vec::new(),
            error: Some(error.to_string()),
        }
    }

    pub fn with_err(mut self, err: Vec<f64>) -> Self {
        self.err_estimates = err;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub cases: Vec<Case>,
    pub pass: bool,
    pub duration_ms: u64,
}

impl Report {
    pub fn new(config: ExperimentConfig, cases: Vec<Case>, duration_ms: u64) -> Self {
        let pass = !cases.is_empty() && cases.iter().all(|c| c.pass);
        Self { experiment: config.experiment.clone(), config, cases, pass, duration_ms }
    }

    pub fn worst(&self) -> Option<&Case> {
        self.cases.iter().max_by(|a, b| (a.residual / a.tol).total_cmp(&(b.residual / b.tol)))
    }
}

pub fn render(r: &Report, format: ReportFormat) -> LabResult<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(r).expect("reports serialize") + "\n"),
        ReportFormat::Csv => render_csv(r),
        ReportFormat::Human => Ok(render_human(r)),
    }
}

fn render_csv(r: &Report) -> LabResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = ["id", "inputs", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "tol", "pass", "error"];
    let to_err = |e: csv::Error| LabError::Config(e.to_string());
    w.write_record(header).map_err(to_err)?;
    for c in &r.cases {
        w.write_record([
            c.id.clone(),
            c.inputs.to_string(),
            c.lhs.re.to_string(),
            c.lhs.im.to_string(),
            c.rhs.re.to_string(),
            c.rhs.im.to_string(),
            format!("{:e}", c.residual),
            format!("{:e}", c.tol),
            c.pass.to_string(),
            c.error.clone().unwrap_or_default(),
        ])
        .map_err(to_err)?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render_human(r: &Report) -> String {
    let id_w = r.cases.iter().map(|c| c.id.chars().count()).max().unwrap_or(2).max(2);
    let mut s = String::new();
    let _ = writeln!(s, "{}  ({} cases, {} ms)", r.experiment, r.cases.len(), r.duration_ms);
    let _ = writeln!(s, "{:<4}  {:<id_w$}  {:>10}  {:>9}  {:>26}  {:>26}", "", "id", "residual", "tol", "lhs", "rhs");
    for c in &r.cases {
        let mark = if c.pass { "ok" } else { "FAIL" };
        let fmt = |z: &Cx| format!("{:+.6e}{:+.3e}i", z.re, z.im);
        let _ = writeln!(
            s,
            "{:<4}  {:<id_w$}  {:>10.2e}  {:>9.1e}  {:>26}  {:>26}",
            mark,
            c.id,
            c.residual,
            c.tol,
            fmt(&c.lhs),
            fmt(&c.rhs)
        );
        if let Some(e) = &c.error {
            let _ = writeln!(s, "      error: {e}");
        }
    }
    let _ = writeln!(s, "verdict: {}", if r.pass { "PASS" } else { "FAIL" });
    s
}

/// Writes `contents` to `path` through a temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> LabResult<()> {
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = std::fs::File::create(&tmp).map_err(|e| LabError::io(&tmp, e))?;
    f.write_all(contents).and_then(|_| f.sync_all()).map_err(|e| LabError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| LabError::io(path, e))
}

pub fn emit_report(r: &Report, format: ReportFormat, path: &Path) -> LabResult<()> {
    write_atomic(path, render(r, format)?.as_bytes())
}
