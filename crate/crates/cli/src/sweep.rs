//! Parameter sweeps: one scenario per value, run in parallel, reported in
//! input order.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use poisson_mech::sampling::GENERATOR_NAME;
use poisson_mech::special::convergence_slope;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::models::execute;
use crate::run::{prepare_out_dir, resolved_params, write_json, Format, MANIFEST, VERSION};
use crate::table::{Cell, Table};

/// Environment variable holding the sweep worker count.
pub const WORKERS_ENV: &str = "POISSON_MECH_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    CertificateFailed,
    Error,
}

impl RowStatus {
    pub fn name(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::CertificateFailed => "certificate_failed",
            RowStatus::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub value: f64,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub summaries: BTreeMap<String, Cell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub rng: &'static str,
    pub config: ScenarioConfig,
    pub resolved_params: BTreeMap<String, f64>,
    pub param: String,
    pub values: Vec<f64>,
    pub format: Format,
    pub rows: Vec<SweepRow>,
    /// Log-log slope of `classical_limit_deviation` against `|epsilon|` over
    /// the successful rows with nonzero epsilon, for epsilon sweeps.
    pub convergence_slope: Option<f64>,
    pub all_ok: bool,
    pub files: Vec<String>,
}

/// Worker count from the environment; `None` lets rayon decide.
pub fn workers_from_env() -> anyhow::Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => {
            let n: usize = s.trim().parse().with_context(|| format!("{WORKERS_ENV}={s} is not a count"))?;
            if n == 0 {
                bail!("{WORKERS_ENV} must be at least 1");
            }
            Ok(Some(n))
        }
    }
}

fn run_one(base: &ScenarioConfig, param: &str, index: usize, value: f64) -> SweepRow {
    let mut cfg = base.clone();
    cfg.params.insert(param.to_string(), value);
    let result = cfg
        .validate()
        .map_err(anyhow::Error::from)
        .and_then(|_| execute(&cfg));
    match result {
        Ok(out) => SweepRow {
            index,
            value,
            status: if out.certificates_pass() { RowStatus::Ok } else { RowStatus::CertificateFailed },
            error: None,
            summaries: out.summaries,
        },
        Err(e) => SweepRow { index, value, status: RowStatus::Error, error: Some(format!("{e:#}")), summaries: BTreeMap::new() },
    }
}

/// Runs every value; the returned rows are in input order.
pub fn sweep_rows(base: &ScenarioConfig, param: &str, values: &[f64], workers: Option<usize>) -> anyhow::Result<Vec<SweepRow>> {
    if !base.has_param(param) {
        bail!("--param {param}: not a parameter of model {}", base.model);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    Ok(pool.install(|| {
        values
            .par_iter()
            .enumerate()
            .map(|(i, v)| run_one(base, param, i, *v))
            .collect()
    }))
}

pub fn slope_of(param: &str, rows: &[SweepRow]) -> Option<f64> {
    if param != "epsilon" {
        return None;
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.status != RowStatus::Error && r.value != 0.0)
        .filter_map(|r| match r.summaries.get("classical_limit_deviation") {
            Some(Cell::Num(d)) if *d > 0.0 => Some((r.value.abs(), *d)),
            _ => None,
        })
        .unzip();
    if xs.len() < 2 {
        return None;
    }
    convergence_slope(&xs, &ys)
}

pub fn sweep_table(param: &str, rows: &[SweepRow]) -> Table {
    let keys: BTreeSet<&String> = rows.iter().flat_map(|r| r.summaries.keys()).collect();
    let mut cols = vec!["index".to_string(), param.to_string(), "status".to_string()];
    cols.extend(keys.iter().map(|k| k.to_string()));
    let mut t = Table::new(cols);
    for r in rows {
        let mut row = vec![Cell::Int(r.index as i64), Cell::Num(r.value), Cell::Text(r.status.name().into())];
        row.extend(keys.iter().map(|k| r.summaries.get(*k).cloned().unwrap_or(Cell::Empty)));
        t.push(row);
    }
    t
}

pub fn sweep(
    base: &ScenarioConfig,
    param: &str,
    values: &[f64],
    dir: &Path,
    format: Format,
    workers: Option<usize>,
) -> anyhow::Result<SweepManifest> {
    let rows = sweep_rows(base, param, values, workers)?;
    prepare_out_dir(dir)?;
    let file = format!("sweep.{}", format.extension());
    let table = sweep_table(param, &rows);
    fs::write(dir.join(&file), format.encode(&table)).with_context(|| format!("writing {file}"))?;
    let mut files = vec![file, MANIFEST.to_string()];
    files.sort();
    let manifest = SweepManifest {
        tool: "pmech",
        version: VERSION,
        rng: GENERATOR_NAME,
        config: base.clone(),
        resolved_params: resolved_params(base),
        param: param.to_string(),
        values: values.to_vec(),
        format,
        convergence_slope: slope_of(param, &rows),
        all_ok: rows.iter().all(|r| r.status == RowStatus::Ok),
        rows,
        files,
    };
    write_json(&dir.join(MANIFEST), &manifest)?;
    Ok(manifest)
}
