//! Scenario configuration files (TOML).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { path: path.into(), message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Minkowski2d,
    Kappa,
    Su2,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Minkowski2d => "minkowski2d",
            Model::Kappa => "kappa",
            Model::Su2 => "su2",
        }
    }

    pub fn parse(s: &str) -> Option<Model> {
        match s {
            "minkowski2d" => Some(Model::Minkowski2d),
            "kappa" => Some(Model::Kappa),
            "su2" => Some(Model::Su2),
            _ => None,
        }
    }

    /// Accepted parameters with their defaults.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            Model::Minkowski2d => &[
                ("epsilon", 0.2),
                ("mass", 1.0),
                ("alpha", 0.3),
                ("beta", 1.0),
                ("p_min", -10.0),
                ("p_max", 10.0),
                ("samples", 201.0),
                ("c_plus", 0.5),
                ("c_minus", -0.5),
                ("x_min", -4.0),
                ("x_max", 4.0),
                ("x_plus", 0.8),
                ("x_minus", 1.3),
                ("p_plus", 0.7),
                ("p_minus", -0.4),
                ("t_end", 3.0),
                ("step", 0.01),
                ("alpha_span", 1.0),
                ("beta_span", 2.0),
                ("grid", 5.0),
                ("points", 100.0),
            ],
            Model::Kappa => &[
                ("epsilon", 0.5),
                ("mass", 1.0),
                ("spatial_dim", 3.0),
                ("momentum", 1.0),
                ("t_end", 4.0),
                ("samples", 64.0),
                ("p_max", 10.0),
                ("p_samples", 41.0),
                ("points", 100.0),
            ],
            Model::Su2 => &[
                ("epsilon", 0.2),
                ("t_end", 5.0),
                ("step", 1e-3),
                ("tol", 1e-8),
                ("mom_x", 0.4),
                ("mom_y", 0.1),
                ("mom_z", 0.7),
                ("u_alpha_re", 0.6),
                ("u_alpha_im", 0.0),
                ("u_gamma_re", 0.0),
                ("u_gamma_im", 0.8),
                ("points", 100.0),
            ],
        }
    }

    /// Parameters that must hold positive integers.
    fn integer_params(self) -> &'static [&'static str] {
        match self {
            Model::Minkowski2d => &["samples", "grid", "points"],
            Model::Kappa => &["spatial_dim", "samples", "p_samples", "points"],
            Model::Su2 => &["points"],
        }
    }

    pub fn outputs(self) -> &'static [OutputKind] {
        use OutputKind::*;
        match self {
            Model::Minkowski2d => &[Trajectory, Projection, Hyperbola, Scattering, Certificate],
            Model::Kappa => &[Trajectory, Projection, Profile, Certificate],
            Model::Su2 => &[Trajectory, Projection, Certificate],
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Trajectory,
    Projection,
    Profile,
    Certificate,
    Scattering,
    Hyperbola,
}

impl OutputKind {
    pub fn name(self) -> &'static str {
        match self {
            OutputKind::Trajectory => "trajectory",
            OutputKind::Projection => "projection",
            OutputKind::Profile => "profile",
            OutputKind::Certificate => "certificate",
            OutputKind::Scattering => "scattering",
            OutputKind::Hyperbola => "hyperbola",
        }
    }
}

/// Hamiltonian driving the su2 flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianChoice {
    #[default]
    Free,
    Prime,
    DoublePrime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub model: Model,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub outputs: Vec<OutputKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<HamiltonianChoice>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    /// A config with default parameters and the given outputs.
    pub fn default_for(model: Model, seed: u64, outputs: Vec<OutputKind>) -> Self {
        Self { model, seed, outputs, hamiltonian: None, params: BTreeMap::new() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let defaults = self.model.defaults();
        for (key, value) in &self.params {
            if !defaults.iter().any(|(k, _)| k == key) {
                return Err(invalid(format!("params.{key}"), format!("not a parameter of model {}", self.model)));
            }
            if !value.is_finite() {
                return Err(invalid(format!("params.{key}"), "must be finite"));
            }
            if self.model.integer_params().contains(&key.as_str()) && !(value.fract() == 0.0 && *value >= 1.0) {
                return Err(invalid(format!("params.{key}"), "must be a positive integer"));
            }
        }
        for (i, out) in self.outputs.iter().enumerate() {
            if !self.model.outputs().contains(out) {
                return Err(invalid(
                    format!("outputs[{i}]"),
                    format!("{} is not available for model {}", out.name(), self.model),
                ));
            }
            if self.outputs[..i].contains(out) {
                return Err(invalid(format!("outputs[{i}]"), format!("{} listed twice", out.name())));
            }
        }
        if self.hamiltonian.is_some() && self.model != Model::Su2 {
            return Err(invalid("hamiltonian", "only the su2 model takes a hamiltonian"));
        }
        let check = |key: &str, ok: bool, msg: &str| if ok { Ok(()) } else { Err(invalid(format!("params.{key}"), msg.to_string())) };
        match self.model {
            Model::Minkowski2d => {
                check("mass", self.param("mass") > 0.0, "must be positive")?;
                check("p_max", self.param("p_max") > self.param("p_min"), "must exceed p_min")?;
                check("x_max", self.param("x_max") > self.param("x_min"), "must exceed x_min")?;
                check("c_minus", self.param("c_plus") * self.param("c_minus") < 0.0, "c_plus and c_minus need opposite signs")?;
                check("t_end", self.param("t_end") > 0.0, "must be positive")?;
                check("step", self.param("step") > 0.0, "must be positive")?;
            }
            Model::Kappa => {
                check("mass", self.param("mass") > 0.0, "must be positive")?;
                check("momentum", self.param("momentum") >= 0.0, "must be non-negative")?;
                check("p_max", self.param("p_max") > 0.0, "must be positive")?;
                check("t_end", self.param("t_end") > 0.0, "must be positive")?;
                check("samples", self.param("samples") >= 32.0, "needs at least 32 samples for the tail fit")?;
            }
            Model::Su2 => {
                check("t_end", self.param("t_end") > 0.0, "must be positive")?;
                check("step", self.param("step") > 0.0, "must be positive")?;
                check("tol", self.param("tol") > 0.0, "must be positive")?;
                let q = [self.param("u_alpha_re"), self.param("u_alpha_im"), self.param("u_gamma_re"), self.param("u_gamma_im")];
                check("u_alpha_re", q.iter().map(|v| v * v).sum::<f64>() > 0.0, "configuration quaternion is zero")?;
                let eps = self.param("epsilon");
                let h = self.hamiltonian.unwrap_or_default();
                check("epsilon", eps != 0.0 || h == HamiltonianChoice::Free, "prime hamiltonians need epsilon != 0")?;
            }
        }
        Ok(())
    }

    /// Parameter value or its model default.
    pub fn param(&self, key: &str) -> f64 {
        if let Some(v) = self.params.get(key) {
            return *v;
        }
        self.model
            .defaults()
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("{key} is not a parameter of {}", self.model))
    }

    pub fn count(&self, key: &str) -> usize {
        self.param(key) as usize
    }

    pub fn has_param(&self, key: &str) -> bool {
        self.model.defaults().iter().any(|(k, _)| *k == key)
    }

    pub fn wants(&self, out: OutputKind) -> bool {
        self.outputs.contains(&out)
    }
}
