//! Declarative world configuration (TOML).
//!
//! ```toml
//! dim = 2
//! seed = 7                        # optional default generation seed
//!
//! [arms]
//! count = 3                       # fixed K = 3 (arms 0, 1, 2)
//! # or a schedule of arms entering and leaving:
//! # window = [{ arm = 0, from = 0, until = 500 }, { arm = 1, from = 0 }]
//!
//! [contexts]
//! kind = "unit-box"               # | "constant" (value = [...])
//!                                 # | "finite" (support = [[...]], weights = [...])
//!
//! [payoff]
//! kind = "linear"                 # weights = [[w_0], [w_1], ...]
//!                                 # | "constant" (means = [...])
//!                                 # | "table" (table = [[...] per context])
//!
//! [logger]                        # optional, default uniform
//! kind = "explicit"
//! probs = [0.8, 0.2]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{ArmId, Context};
use crate::world::{ArmSchedule, ArmWindow, ContextSampler, LoggingPolicy, PayoffModel, WorldModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldConfig {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub arms: ArmsConfig,
    pub contexts: ContextsConfig,
    pub payoff: PayoffConfig,
    #[serde(default)]
    pub logger: LoggerConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArmsConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub window: Vec<WindowConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub arm: u32,
    #[serde(default)]
    pub from: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub until: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ContextsConfig {
    Constant { value: Vec<f64> },
    Finite { support: Vec<Vec<f64>>, weights: Vec<f64> },
    UnitBox,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PayoffConfig {
    Constant { means: Vec<f64> },
    Table { table: Vec<Vec<f64>> },
    Linear { weights: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LoggerConfig {
    #[default]
    Uniform,
    Explicit { probs: Vec<f64> },
}

fn scalars<S: Scalar>(v: &[f64]) -> Vec<S> {
    v.iter().map(|&x| S::of(x)).collect()
}

impl WorldConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("world config serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn schedule(&self) -> Result<ArmSchedule> {
        match (self.arms.count, self.arms.window.is_empty()) {
            (Some(k), true) => Ok(ArmSchedule::Fixed(k)),
            (None, false) => Ok(ArmSchedule::Windows(
                self.arms
                    .window
                    .iter()
                    .map(|w| ArmWindow { arm: ArmId(w.arm), from: w.from, until: w.until })
                    .collect(),
            )),
            _ => Err(Error::Config("[arms] needs exactly one of `count` or `window`".into())),
        }
    }

    pub fn world<S: Scalar>(&self) -> Result<WorldModel<S>> {
        let contexts = match &self.contexts {
            ContextsConfig::Constant { value } => ContextSampler::Constant(Context::new(scalars(value))),
            ContextsConfig::Finite { support, weights } => ContextSampler::Finite {
                support: support.iter().map(|c| Context::new(scalars(c))).collect(),
                weights: scalars(weights),
            },
            ContextsConfig::UnitBox => ContextSampler::UnitBox,
        };
        let payoffs = match &self.payoff {
            PayoffConfig::Constant { means } => PayoffModel::Constant(scalars(means)),
            PayoffConfig::Table { table } => PayoffModel::Table(table.iter().map(|r| scalars(r)).collect()),
            PayoffConfig::Linear { weights } => {
                PayoffModel::Linear(weights.iter().map(|r| scalars(r)).collect())
            }
        };
        WorldModel::new(self.dim, self.schedule()?, contexts, payoffs)
    }

    pub fn logger<S: Scalar>(&self) -> LoggingPolicy<S> {
        match &self.logger {
            LoggerConfig::Uniform => LoggingPolicy::Uniform,
            LoggerConfig::Explicit { probs } => LoggingPolicy::Explicit(scalars(probs)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINEAR: &str = r#"
dim = 2
seed = 7

[arms]
count = 3

[contexts]
kind = "unit-box"

[payoff]
kind = "linear"
weights = [[0.1, 0.2], [0.3, 0.1], [0.2, 0.2]]
"#;

    #[test]
    fn parses_linear_world() {
        let cfg = WorldConfig::from_toml_str(LINEAR).unwrap();
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.logger, LoggerConfig::Uniform);
        let world = cfg.world::<f64>().unwrap();
        assert_eq!(world.dim(), 2);
        assert_eq!(world.arms_at(0).len(), 3);
        let again = WorldConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn parses_schedule_and_explicit_logger() {
        let text = r#"
dim = 1
[arms]
window = [{ arm = 0, from = 0, until = 10 }, { arm = 1 }, { arm = 2, from = 5 }]
[contexts]
kind = "finite"
support = [[0.0], [1.0]]
weights = [1.0, 3.0]
[payoff]
kind = "table"
table = [[0.1, 0.2, 0.3], [0.4, 0.5, 0.6]]
[logger]
kind = "explicit"
probs = [0.5, 0.25, 0.25]
"#;
        let cfg = WorldConfig::from_toml_str(text).unwrap();
        let world = cfg.world::<f32>().unwrap();
        assert_eq!(world.arms_at(12), vec![ArmId(1), ArmId(2)]);
        assert_eq!(cfg.logger::<f64>(), LoggingPolicy::Explicit(vec![0.5, 0.25, 0.25]));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(WorldConfig::from_toml_str("dim = 1").is_err());
        let both = LINEAR.replace("count = 3", "count = 3\nwindow = [{ arm = 0 }]");
        assert!(WorldConfig::from_toml_str(&both).unwrap().world::<f64>().is_err());
        let unknown = LINEAR.replace("unit-box", "gaussian");
        assert!(WorldConfig::from_toml_str(&unknown).is_err());
        let out_of_range = LINEAR.replace("[0.1, 0.2], [0.3", "[0.9, 0.2], [0.3");
        assert!(WorldConfig::from_toml_str(&out_of_range).unwrap().world::<f64>().is_err());
    }
}
