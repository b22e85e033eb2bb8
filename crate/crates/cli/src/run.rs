//! Writing a scenario's artifacts and manifest to disk.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use poisson_mech::sampling::GENERATOR_NAME;
use serde::Serialize;

use crate::config::{OutputKind, ScenarioConfig};
use crate::models::{execute, Check, ScenarioOutput};
use crate::table::{Cell, Table};

pub const MANIFEST: &str = "manifest.json";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    pub fn encode(self, table: &Table) -> String {
        match self {
            Format::Csv => table.to_csv(),
            Format::Json => table.to_json(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ArtifactEntry {
    pub kind: OutputKind,
    pub file: String,
    pub rows: usize,
    pub columns: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub rng: &'static str,
    pub config: ScenarioConfig,
    /// Every parameter of the model, defaults filled in.
    pub resolved_params: BTreeMap<String, f64>,
    pub format: Format,
    pub artifacts: Vec<ArtifactEntry>,
    pub summaries: BTreeMap<String, Cell>,
    pub certificates: Vec<Check>,
    pub certificates_pass: bool,
    pub files: Vec<String>,
}

pub fn resolved_params(cfg: &ScenarioConfig) -> BTreeMap<String, f64> {
    cfg.model.defaults().iter().map(|(k, _)| (k.to_string(), cfg.param(k))).collect()
}

/// Creates `dir`, refusing one that already holds files so that the
/// manifest lists everything on disk.
pub fn prepare_out_dir(dir: &Path) -> anyhow::Result<()> {
    if dir.exists() {
        if fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))?.next().is_some() {
            bail!("output directory {} is not empty", dir.display());
        }
    } else {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Builds the manifest for a finished scenario and writes every file.
pub fn write_outputs(cfg: &ScenarioConfig, output: &ScenarioOutput, dir: &Path, format: Format) -> anyhow::Result<Manifest> {
    prepare_out_dir(dir)?;
    let mut artifacts = Vec::new();
    for (kind, table) in &output.artifacts {
        let file = format!("{}.{}", kind.name(), format.extension());
        fs::write(dir.join(&file), format.encode(table)).with_context(|| format!("writing {file}"))?;
        artifacts.push(ArtifactEntry { kind: *kind, file, rows: table.rows.len(), columns: table.columns.clone() });
    }
    let mut files: Vec<String> = artifacts.iter().map(|a| a.file.clone()).collect();
    files.push(MANIFEST.to_string());
    files.sort();
    let manifest = Manifest {
        tool: "pmech",
        version: VERSION,
        rng: GENERATOR_NAME,
        config: cfg.clone(),
        resolved_params: resolved_params(cfg),
        format,
        artifacts,
        summaries: output.summaries.clone(),
        certificates: output.checks.clone(),
        certificates_pass: output.certificates_pass(),
        files,
    };
    write_json(&dir.join(MANIFEST), &manifest)?;
    Ok(manifest)
}

/// `run <config> --out <dir>`: executes and writes. The manifest is
/// returned even when certificates fail.
pub fn run(cfg: &ScenarioConfig, dir: &Path, format: Format) -> anyhow::Result<Manifest> {
    let output = execute(cfg)?;
    write_outputs(cfg, &output, dir, format)
}

/// One line per certificate.
pub fn certificate_report(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        let value = c.value.map_or("skipped".to_string(), |v| format!("{v:.3e}"));
        s.push_str(&format!("{verdict:4} {:28} {value:>10} < {:.0e}", c.name, c.threshold));
        if let Some(note) = &c.note {
            s.push_str(&format!("  ({note})"));
        }
        s.push('\n');
    }
    s
}
