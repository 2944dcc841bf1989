//! The JSON run-configuration document and its mapping onto the library
//! types. One document has four sections:
//!
//! ```json
//! {
//!   "grid":     {"x_min": -15.0, "x_max": 10.0, "dx": 0.01, "boundary": "constant_extension"},
//!   "model":    {"variant": "look_ab", "gamma_a": 1.0, "gamma_b": 0.5,
//!                "kernel_a_shape": "constant", "kernel_b_shape": "constant"},
//!   "scenario": {"kind": "two_plateaus"},
//!   "run":      {"cfl": 0.5, "t_end": 2.0, "snapshots": [1.0, 2.0], "diag_every": 10}
//! }
//! ```
//!
//! Model variants: `lwr` (no parameters), `look_a` (`gamma_a`, optional
//! `kernel_a_shape`), `look_ab` (plus `gamma_b`, `kernel_b_shape`),
//! `whitham` (`c0`, `h0`), `suspension` (`a`). Kernel shapes default to
//! `constant`. Scenario kinds: the four presets, `riemann`
//! (`u_left`/`u_right`/`x0`), or `profile` with a `terms` array.

use crate::error::CliError;
use nlflux::flux::FluxModel;
use nlflux::grid::{Boundary, GridSpec};
use nlflux::kernel::KernelSpec;
use nlflux::scenario::{ProfileTerm, ScenarioSpec};
use nlflux::solver::SimConfig;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub grid: GridSection,
    pub model: ModelSection,
    pub scenario: ScenarioSection,
    pub run: RunSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
    pub boundary: BoundaryOpt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryOpt {
    Periodic,
    ConstantExtension,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_a_shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_b_shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_left: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_right: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum TermDoc {
    Constant { c: f64 },
    Gaussian { a: f64, c: f64 },
    QuarticBump { a: f64, c: f64, k: f64 },
    Box { h: f64, x_lo: f64, x_hi: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub cfl: f64,
    pub t_end: f64,
    pub snapshots: Vec<f64>,
    pub diag_every: u64,
}

/// Reads and parses a config file, reporting the line and column of any
/// JSON error.
pub fn load(path: &Path) -> Result<ConfigDoc, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn field(section: &str, name: &str, value: Option<f64>) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Config(format!("{section} section is missing `{name}`")))
}

fn kernel_for(direction: &str, shape: Option<&str>, reach: f64) -> Result<KernelSpec, CliError> {
    let spec = match (direction, shape.unwrap_or("constant")) {
        ("ahead", "constant") => KernelSpec::ahead_constant(reach),
        ("ahead", "linear") => KernelSpec::ahead_linear(reach),
        ("behind", "constant") => KernelSpec::behind_constant(reach),
        ("behind", "linear") => KernelSpec::behind_linear(reach),
        (_, other) => {
            return Err(CliError::Config(format!(
                "unknown kernel shape `{other}` (expected `constant` or `linear`)"
            )))
        }
    };
    Ok(spec?)
}

impl ModelSection {
    pub fn to_model(&self) -> Result<FluxModel, CliError> {
        match self.variant.as_str() {
            "lwr" => Ok(FluxModel::lwr()),
            "look_a" => {
                let ga = field("model", "gamma_a", self.gamma_a)?;
                let ka = kernel_for("ahead", self.kernel_a_shape.as_deref(), ga)?;
                Ok(FluxModel::look_ahead(ka)?)
            }
            "look_ab" => {
                let ga = field("model", "gamma_a", self.gamma_a)?;
                let gb = field("model", "gamma_b", self.gamma_b)?;
                let ka = kernel_for("ahead", self.kernel_a_shape.as_deref(), ga)?;
                let kb = kernel_for("behind", self.kernel_b_shape.as_deref(), gb)?;
                Ok(FluxModel::look_ahead_behind(ka, kb)?)
            }
            "whitham" => {
                let c0 = field("model", "c0", self.c0)?;
                let h0 = field("model", "h0", self.h0)?;
                Ok(FluxModel::whitham(c0, h0)?)
            }
            "suspension" => {
                let a = field("model", "a", self.a)?;
                Ok(FluxModel::suspension(a)?)
            }
            other => Err(CliError::Config(format!(
                "unknown model variant `{other}` (expected lwr, look_a, look_ab, whitham, suspension)"
            ))),
        }
    }
}

impl ScenarioSection {
    pub fn to_scenario(&self) -> Result<ScenarioSpec, CliError> {
        match self.kind.as_str() {
            "two_plateaus" => Ok(ScenarioSpec::TwoPlateaus),
            "red_light" => Ok(ScenarioSpec::RedLight),
            "three_plateaus" => Ok(ScenarioSpec::ThreePlateaus),
            "steep_plateau" => Ok(ScenarioSpec::SteepPlateau),
            "riemann" => Ok(ScenarioSpec::Riemann {
                u_left: field("scenario", "u_left", self.u_left)?,
                u_right: field("scenario", "u_right", self.u_right)?,
                x0: field("scenario", "x0", self.x0)?,
            }),
            "profile" => {
                let terms = self.terms.as_ref().ok_or_else(|| {
                    CliError::Config("profile scenario needs a `terms` array".into())
                })?;
                let terms = terms
                    .iter()
                    .map(|t| match *t {
                        TermDoc::Constant { c } => ProfileTerm::Constant { c },
                        TermDoc::Gaussian { a, c } => ProfileTerm::Gaussian { a, c },
                        TermDoc::QuarticBump { a, c, k } => ProfileTerm::QuarticBump { a, c, k },
                        TermDoc::Box { h, x_lo, x_hi } => ProfileTerm::Box { h, x_lo, x_hi },
                    })
                    .collect();
                Ok(ScenarioSpec::Profile { terms })
            }
            other => Err(CliError::Config(format!("unknown scenario kind `{other}`"))),
        }
    }
}

impl ConfigDoc {
    pub fn to_sim_config(&self) -> Result<SimConfig, CliError> {
        let boundary = match self.grid.boundary {
            BoundaryOpt::Periodic => Boundary::Periodic,
            BoundaryOpt::ConstantExtension => Boundary::ConstantExtension,
        };
        let grid = GridSpec::new(self.grid.x_min, self.grid.x_max, self.grid.dx, boundary)?;
        let config = SimConfig {
            grid,
            model: self.model.to_model()?,
            scenario: self.scenario.to_scenario()?,
            cfl: self.run.cfl,
            t_end: self.run.t_end,
            snapshot_times: self.run.snapshots.clone(),
            diag_every: self.run.diag_every,
        };
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(json: &str) -> ConfigDoc {
        serde_json::from_str(json).unwrap()
    }

    const LOOK_AB: &str = r#"{
        "grid": {"x_min": -15.0, "x_max": 10.0, "dx": 0.01, "boundary": "constant_extension"},
        "model": {"variant": "look_ab", "gamma_a": 1.0, "gamma_b": 0.5},
        "scenario": {"kind": "two_plateaus"},
        "run": {"cfl": 0.5, "t_end": 2.0, "snapshots": [1.0, 2.0], "diag_every": 10}
    }"#;

    #[test]
    fn parses_and_converts_look_ab() {
        let config = doc(LOOK_AB).to_sim_config().unwrap();
        assert_eq!(config.grid.n(), 2501);
        assert!(matches!(config.model, FluxModel::LookAheadBehind { .. }));
        assert_eq!(config.scenario, ScenarioSpec::TwoPlateaus);
    }

    #[test]
    fn round_trips_through_json() {
        let d = doc(LOOK_AB);
        let text = serde_json::to_string(&d).unwrap();
        let back: ConfigDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn missing_fields_are_reported() {
        let bad = r#"{
            "grid": {"x_min": 0.0, "x_max": 1.0, "dx": 0.1, "boundary": "periodic"},
            "model": {"variant": "look_a"},
            "scenario": {"kind": "red_light"},
            "run": {"cfl": 0.5, "t_end": 1.0, "snapshots": [], "diag_every": 1}
        }"#;
        let err = doc(bad).to_sim_config().unwrap_err();
        assert!(err.to_string().contains("gamma_a"), "{err}");
    }

    #[test]
    fn unknown_variant_and_kind_rejected() {
        let m = ModelSection {
            variant: "weird".into(),
            gamma_a: None,
            gamma_b: None,
            kernel_a_shape: None,
            kernel_b_shape: None,
            c0: None,
            h0: None,
            a: None,
        };
        assert!(m.to_model().is_err());
        let s = ScenarioSection {
            kind: "weird".into(),
            terms: None,
            u_left: None,
            u_right: None,
            x0: None,
        };
        assert!(s.to_scenario().is_err());
    }

    #[test]
    fn profile_terms_map_over() {
        let json = r#"{
            "grid": {"x_min": -5.0, "x_max": 5.0, "dx": 0.1, "boundary": "periodic"},
            "model": {"variant": "lwr"},
            "scenario": {"kind": "profile", "terms": [
                {"type": "constant", "c": 0.1},
                {"type": "gaussian", "a": 0.3, "c": -1.0},
                {"type": "quartic_bump", "a": 0.2, "c": 1.0, "k": 4.0},
                {"type": "box", "h": 0.2, "x_lo": -3.0, "x_hi": -2.0}
            ]},
            "run": {"cfl": 0.25, "t_end": 0.5, "snapshots": [0.5], "diag_every": 5}
        }"#;
        let config = doc(json).to_sim_config().unwrap();
        match config.scenario {
            ScenarioSpec::Profile { terms } => assert_eq!(terms.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_json_keys_rejected() {
        let json = LOOK_AB.replace("\"cfl\"", "\"cfl_number\"");
        assert!(serde_json::from_str::<ConfigDoc>(&json).is_err());
    }
}
