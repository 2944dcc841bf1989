//! Initial-data presets and a small declarative profile language.
//!
//! The four presets reproduce the published experiments: two plateaus
//! riding on light background traffic, a red-light jam released at t = 0,
//! three overlapping plateaus, and a single steep quartic plateau.

use crate::error::{Error, Result};
use crate::grid::{Field, GridSpec};

/// One additive term of a density profile.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileTerm {
    Constant {
        c: f64,
    },
    /// `a * exp(-(x - c)^2)`
    Gaussian {
        a: f64,
        c: f64,
    },
    /// `a * exp(-k (x - c)^4)`
    QuarticBump {
        a: f64,
        c: f64,
        k: f64,
    },
    /// `h` on the closed interval `[x_lo, x_hi]`, zero outside.
    Box {
        h: f64,
        x_lo: f64,
        x_hi: f64,
    },
}

impl ProfileTerm {
    fn value_at(&self, x: f64) -> f64 {
        match *self {
            ProfileTerm::Constant { c } => c,
            ProfileTerm::Gaussian { a, c } => a * (-(x - c) * (x - c)).exp(),
            ProfileTerm::QuarticBump { a, c, k } => {
                let s = x - c;
                a * (-k * s * s * s * s).exp()
            }
            ProfileTerm::Box { h, x_lo, x_hi } => {
                if (x_lo..=x_hi).contains(&x) {
                    h
                } else {
                    0.0
                }
            }
        }
    }

    /// Analytic derivative, `None` for the discontinuous box.
    fn derivative_at(&self, x: f64) -> Option<f64> {
        match *self {
            ProfileTerm::Constant { .. } => Some(0.0),
            ProfileTerm::Gaussian { a, c } => Some(-2.0 * a * (x - c) * (-(x - c) * (x - c)).exp()),
            ProfileTerm::QuarticBump { a, c, k } => {
                let s = x - c;
                Some(-4.0 * a * k * s * s * s * (-k * s * s * s * s).exp())
            }
            ProfileTerm::Box { .. } => None,
        }
    }
}

/// Initial condition description: a named preset, a Riemann step, or an
/// explicit sum of profile terms.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSpec {
    /// `0.1 + 0.35 exp(-(x+5)^2) + 0.55 exp(-(x+3)^2)`
    TwoPlateaus,
    /// `0.9` on `[-7, -2]`, zero elsewhere.
    RedLight,
    /// `0.35 exp(-(x+5)^2) + 0.65 exp(-(x+2)^2) + 0.45 exp(-x^2)`
    ThreePlateaus,
    /// `0.8 exp(-8 (x+2)^4)`
    SteepPlateau,
    /// `u_left` for `x < x0`, `u_right` for `x >= x0`.
    Riemann {
        u_left: f64,
        u_right: f64,
        x0: f64,
    },
    Profile {
        terms: Vec<ProfileTerm>,
    },
}

impl ScenarioSpec {
    /// Profile terms of the presets; `None` for the Riemann step, which is
    /// not a term sum.
    fn terms(&self) -> Option<Vec<ProfileTerm>> {
        match self {
            ScenarioSpec::TwoPlateaus => Some(vec![
                ProfileTerm::Constant { c: 0.1 },
                ProfileTerm::Gaussian { a: 0.35, c: -5.0 },
                ProfileTerm::Gaussian { a: 0.55, c: -3.0 },
            ]),
            ScenarioSpec::RedLight => Some(vec![ProfileTerm::Box {
                h: 0.9,
                x_lo: -7.0,
                x_hi: -2.0,
            }]),
            ScenarioSpec::ThreePlateaus => Some(vec![
                ProfileTerm::Gaussian { a: 0.35, c: -5.0 },
                ProfileTerm::Gaussian { a: 0.65, c: -2.0 },
                ProfileTerm::Gaussian { a: 0.45, c: 0.0 },
            ]),
            ScenarioSpec::SteepPlateau => Some(vec![ProfileTerm::QuarticBump {
                a: 0.80,
                c: -2.0,
                k: 8.0,
            }]),
            ScenarioSpec::Riemann { .. } => None,
            ScenarioSpec::Profile { terms } => Some(terms.clone()),
        }
    }

    /// Profile value at `x`.
    pub fn value_at(&self, x: f64) -> f64 {
        match self {
            ScenarioSpec::Riemann {
                u_left,
                u_right,
                x0,
            } => {
                if x < *x0 {
                    *u_left
                } else {
                    *u_right
                }
            }
            other => other
                .terms()
                .expect("non-Riemann scenarios expand to terms")
                .iter()
                .map(|t| t.value_at(x))
                .sum(),
        }
    }

    /// Samples the profile at every grid node, after validating on a
    /// 10x-refined sample that it stays inside `[0, 1]`.
    pub fn build_initial(&self, grid: &GridSpec) -> Result<Field> {
        if let ScenarioSpec::Riemann {
            u_left, u_right, ..
        } = self
        {
            for (name, v) in [("u_left", *u_left), ("u_right", *u_right)] {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::Config(format!(
                        "Riemann state {name} = {v} outside [0, 1]"
                    )));
                }
            }
        }
        let refine = 10;
        let h = grid.dx() / refine as f64;
        let fine_count = (grid.n() - 1) * refine + 1;
        for i in 0..fine_count {
            let x = grid.x_min() + i as f64 * h;
            let v = self.value_at(x);
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!(
                    "initial profile leaves [0, 1]: u({x}) = {v}"
                )));
            }
        }
        Ok(Field::from_fn(grid.clone(), |x| self.value_at(x)))
    }

    /// Analytic spatial derivative of the profile, when every term has one.
    /// `None` for box/Riemann data (distributional derivative).
    pub fn closed_form_derivative(&self) -> Option<impl Fn(f64) -> f64> {
        let terms = self.terms()?;
        if terms.iter().any(|t| matches!(t, ProfileTerm::Box { .. })) {
            return None;
        }
        Some(move |x: f64| {
            terms
                .iter()
                .map(|t| t.derivative_at(x).expect("box terms excluded above"))
                .sum()
        })
    }

    /// True when the profile is smooth (no box or Riemann jump), i.e. the
    /// threshold theorems' regularity hypothesis can hold.
    pub fn is_smooth(&self) -> bool {
        match self {
            ScenarioSpec::Riemann { .. } => false,
            other => other
                .terms()
                .map(|ts| !ts.iter().any(|t| matches!(t, ProfileTerm::Box { .. })))
                .unwrap_or(false),
        }
    }

    /// Computational domain large enough that no wave reaches the boundary
    /// for the run lengths used in the experiments.
    pub fn default_domain(&self) -> (f64, f64) {
        match self {
            ScenarioSpec::SteepPlateau => (-15.0, 12.0),
            _ => (-15.0, 10.0),
        }
    }

    /// Look-ahead / look-behind reaches used in the published runs.
    pub fn default_gammas(&self) -> (f64, f64) {
        match self {
            ScenarioSpec::SteepPlateau => (3.0, 1.5),
            _ => (1.0, 0.5),
        }
    }
}
