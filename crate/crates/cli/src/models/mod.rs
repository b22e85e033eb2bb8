//! Scenario execution, one submodule per model. Nothing here touches the
//! filesystem.

use std::collections::BTreeMap;

use poisson_mech::poisson::{jacobi_certificate, BivectorSpec};
use poisson_mech::sampling::Sampler;
use serde::Serialize;

use crate::config::{Model, OutputKind, ScenarioConfig};
use crate::table::{Cell, Table};

mod kappa;
mod minkowski2d;
mod su2;

/// One certificate: a measured quantity against its threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `None` when the check does not apply to this parameter set.
    pub value: Option<f64>,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes when `value < threshold`; a NaN value fails.
    pub fn below(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value: Some(value), threshold, passed: value < threshold, note: None }
    }

    pub fn skipped(name: &str, threshold: f64, note: &str) -> Self {
        Self { name: name.into(), value: None, threshold, passed: true, note: Some(note.into()) }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScenarioOutput {
    pub artifacts: Vec<(OutputKind, Table)>,
    pub summaries: BTreeMap<String, Cell>,
    pub checks: Vec<Check>,
}

impl ScenarioOutput {
    pub fn summary(&mut self, key: &str, value: impl Into<Cell>) {
        self.summaries.insert(key.to_string(), value.into());
    }

    pub fn certificates_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn execute(cfg: &ScenarioConfig) -> anyhow::Result<ScenarioOutput> {
    let mut out = match cfg.model {
        Model::Minkowski2d => minkowski2d::execute(cfg)?,
        Model::Kappa => kappa::execute(cfg)?,
        Model::Su2 => su2::execute(cfg)?,
    };
    if cfg.wants(OutputKind::Certificate) {
        let table = certificate_table(&out.checks);
        out.artifacts.push((OutputKind::Certificate, table));
    }
    // artifacts in the order requested
    out.artifacts.sort_by_key(|(kind, _)| cfg.outputs.iter().position(|o| o == kind));
    Ok(out)
}

pub fn certificate_table(checks: &[Check]) -> Table {
    let mut t = Table::new(["name", "value", "threshold", "passed", "note"]);
    for c in checks {
        t.push(vec![
            Cell::Text(c.name.clone()),
            c.value.map_or(Cell::Empty, Cell::Num),
            Cell::Num(c.threshold),
            Cell::Flag(c.passed),
            c.note.clone().map_or(Cell::Empty, Cell::Text),
        ]);
    }
    t
}

/// Jacobi certificate over `count` seeded points of the unit box.
pub(crate) fn jacobi_check(name: &str, biv: &BivectorSpec, sampler: &mut Sampler, count: usize) -> anyhow::Result<Check> {
    let pts = sampler.unit_box_points(biv.dim(), count);
    let cert = jacobi_certificate(biv, &pts)?;
    let check = Check::below(name, cert.max_residual, 1e-6);
    Ok(if cert.vacuous { check.with_note("no coordinate triples in fewer than three dimensions") } else { check })
}

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
