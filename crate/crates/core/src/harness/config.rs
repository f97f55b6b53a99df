//! Suite configuration as read from JSON.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::TheoremId;
use crate::convexity::DEFAULT_GRID;
use crate::exec::Execution;
use crate::expr::parse;
use crate::quadrature::DEFAULT_TOL;

use super::corpus::{self, CorpusEntry};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerConfig {
    pub a_range: [f64; 2],
    pub len_range: [f64; 2],
    /// Angles drawn with probability `phi_grid_weight`.
    pub phi_grid: Vec<f64>,
    pub phi_grid_weight: f64,
    /// Otherwise φ is uniform on this range.
    pub phi_range: [f64; 2],
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            a_range: [-2.0, 2.0],
            len_range: [0.1, 3.0],
            phi_grid: vec![0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2],
            phi_grid_weight: 0.5,
            phi_range: [0.0, FRAC_PI_2],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamConfig {
    /// `p` is drawn from `(lo, hi]`.
    pub p_range: [f64; 2],
    pub q_range: [f64; 2],
}

impl Default for ParamConfig {
    fn default() -> Self {
        ParamConfig { p_range: [1.0, 10.0], q_range: [1.0, 10.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomEntry {
    pub id: String,
    pub expr: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Built-in corpus ids; absent means all.
    pub corpus: Option<Vec<String>>,
    /// Extra entries sampled with the plain sampler ranges.
    pub custom: Vec<CustomEntry>,
    /// Theorem ids; absent means all, empty means none.
    pub theorems: Option<Vec<TheoremId>>,
    /// Segments per corpus entry in a suite run.
    pub segments: usize,
    /// Total draws in a falsification run.
    pub draws: usize,
    pub seed: u64,
    pub tol: f64,
    pub grid: usize,
    pub sampler: SamplerConfig,
    pub params: ParamConfig,
    pub execution: Execution,
    pub output: OutputConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            corpus: None,
            custom: Vec::new(),
            theorems: None,
            segments: 10,
            draws: 10,
            seed: 0,
            tol: DEFAULT_TOL,
            grid: DEFAULT_GRID,
            sampler: SamplerConfig::default(),
            params: ParamConfig::default(),
            execution: Execution::default(),
            output: OutputConfig::default(),
        }
    }
}

fn check_range(name: &str, r: [f64; 2]) -> Result<(), ConfigError> {
    if !(r[0].is_finite() && r[1].is_finite()) || r[0] > r[1] {
        return Err(invalid(format!("{name} must be a finite [lo, hi] with lo <= hi (got {r:?})")));
    }
    Ok(())
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: SuiteConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.entries()?;
        let s = &self.sampler;
        check_range("sampler.a_range", s.a_range)?;
        check_range("sampler.len_range", s.len_range)?;
        check_range("sampler.phi_range", s.phi_range)?;
        check_range("params.p_range", self.params.p_range)?;
        check_range("params.q_range", self.params.q_range)?;
        if s.len_range[0] <= 0.0 {
            return Err(invalid("sampler.len_range must be positive"));
        }
        let angle_ok = |phi: f64| (0.0..=PI).contains(&phi);
        if !angle_ok(s.phi_range[0]) || !angle_ok(s.phi_range[1]) || !s.phi_grid.iter().all(|&p| angle_ok(p)) {
            return Err(invalid("angles must lie in [0, pi]"));
        }
        if !(0.0..=1.0).contains(&s.phi_grid_weight) || (s.phi_grid.is_empty() && s.phi_grid_weight > 0.0) {
            return Err(invalid("sampler.phi_grid_weight must be in [0, 1] and needs a non-empty phi_grid"));
        }
        if self.params.p_range[0] < 1.0 || self.params.p_range[1] <= 1.0 {
            return Err(invalid("params.p_range must lie in [1, inf) with hi > 1"));
        }
        if self.params.q_range[0] < 1.0 {
            return Err(invalid("params.q_range must lie in [1, inf)"));
        }
        if self.grid < 3 {
            return Err(invalid("grid needs at least 3 nodes"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(invalid("tol must be positive"));
        }
        Ok(())
    }

    /// Selected corpus entries, built-ins first, in corpus order.
    pub fn entries(&self) -> Result<Vec<CorpusEntry>, ConfigError> {
        let all = corpus::corpus();
        let mut out = match &self.corpus {
            None => all,
            Some(ids) => {
                let mut picked = Vec::new();
                for id in ids {
                    let e = all.iter().find(|e| &e.id == id).ok_or_else(|| invalid(format!("unknown corpus id `{id}`")))?;
                    if !picked.contains(e) {
                        picked.push(e.clone());
                    }
                }
                picked
            }
        };
        for c in &self.custom {
            parse(&c.expr).map_err(|e| invalid(format!("custom entry `{}`: {e}", c.id)))?;
            if out.iter().any(|e| e.id == c.id) {
                return Err(invalid(format!("duplicate corpus id `{}`", c.id)));
            }
            out.push(corpus::custom(&c.id, &c.expr));
        }
        Ok(out)
    }

    pub fn theorem_list(&self) -> Vec<TheoremId> {
        let mut t = self.theorems.clone().unwrap_or_else(|| TheoremId::ALL.to_vec());
        t.sort();
        t.dedup();
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_from_empty_object() {
        let c = SuiteConfig::from_json("{}").unwrap();
        assert_eq!(c, SuiteConfig::default());
        assert_eq!(c.entries().unwrap().len(), corpus::corpus().len());
        assert_eq!(c.theorem_list().len(), 12);
    }

    #[test]
    fn subsets_and_errors() {
        let c = SuiteConfig::from_json(r#"{"corpus":["square"],"theorems":["tt2"],"segments":3,"seed":7}"#).unwrap();
        assert_eq!(c.entries().unwrap().len(), 1);
        assert_eq!(c.theorem_list(), vec![TheoremId::Tt2]);
        assert!(SuiteConfig::from_json(r#"{"corpus":["nope"]}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"theorems":["tt9"]}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"grid":2}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"bogus":1}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"custom":[{"id":"bad","expr":"x+"}]}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"params":{"p_range":[0.5,2]}}"#).is_err());
        let empty = SuiteConfig::from_json(r#"{"theorems":[]}"#).unwrap();
        assert!(empty.theorem_list().is_empty());
    }
}
