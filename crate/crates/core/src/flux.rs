//! The flux family `F(u, u_bar, u_tilde)` and wave-speed estimates.

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;

/// One member of the model family. The traffic variants share the
/// `u (1 - u)` profile; the look-ahead factor `exp(-u_bar)` relaxes the
/// flux under congestion ahead, the look-behind factor `exp(u_tilde)`
/// intensifies it under pressure from behind.
#[derive(Debug, Clone, PartialEq)]
pub enum FluxModel {
    /// Local `F(u) = u (1 - u)`.
    Lwr,
    /// `F = u (1 - u) exp(-u_bar)`.
    LookAhead { kernel_a: KernelSpec },
    /// `F = u (1 - u) exp(-u_bar + u_tilde)`.
    LookAheadBehind {
        kernel_a: KernelSpec,
        kernel_b: KernelSpec,
    },
    /// Shallow-water flux `F = (3 c0 / 4 h0) u^2 + u_bar` with the
    /// exponential kernel.
    Whitham { c0: f64, h0: f64 },
    /// Particle-suspension flux `F = u + u_bar u` with the scaled bump
    /// kernel of radius `2a`.
    Suspension { a: f64 },
}

impl FluxModel {
    pub fn lwr() -> Self {
        FluxModel::Lwr
    }

    pub fn look_ahead(kernel_a: KernelSpec) -> Result<Self> {
        if !kernel_a.shape().is_ahead() {
            return Err(Error::Config(format!(
                "look-ahead model needs an ahead-shaped kernel, got {:?}",
                kernel_a.shape()
            )));
        }
        Ok(FluxModel::LookAhead { kernel_a })
    }

    pub fn look_ahead_behind(kernel_a: KernelSpec, kernel_b: KernelSpec) -> Result<Self> {
        if !kernel_a.shape().is_ahead() {
            return Err(Error::Config(format!(
                "look-ahead-behind model needs an ahead-shaped first kernel, got {:?}",
                kernel_a.shape()
            )));
        }
        if !kernel_b.shape().is_behind() {
            return Err(Error::Config(format!(
                "look-ahead-behind model needs a behind-shaped second kernel, got {:?}",
                kernel_b.shape()
            )));
        }
        if !(kernel_a.reach() >= kernel_b.reach() && kernel_b.reach() > 0.0) {
            return Err(Error::Config(format!(
                "look-ahead-behind model requires gamma_a >= gamma_b > 0, got gamma_a = {}, gamma_b = {}",
                kernel_a.reach(),
                kernel_b.reach()
            )));
        }
        Ok(FluxModel::LookAheadBehind { kernel_a, kernel_b })
    }

    pub fn whitham(c0: f64, h0: f64) -> Result<Self> {
        if !(c0.is_finite() && h0.is_finite() && h0 > 0.0) {
            return Err(Error::Config(format!(
                "Whitham model needs finite c0 and positive h0, got c0 = {c0}, h0 = {h0}"
            )));
        }
        Ok(FluxModel::Whitham { c0, h0 })
    }

    pub fn suspension(a: f64) -> Result<Self> {
        KernelSpec::suspension(a)?;
        Ok(FluxModel::Suspension { a })
    }

    /// Kernel producing `u_bar`, when the model has one.
    pub fn kernel_ahead(&self) -> Option<KernelSpec> {
        match self {
            FluxModel::Lwr => None,
            FluxModel::LookAhead { kernel_a } => Some(kernel_a.clone()),
            FluxModel::LookAheadBehind { kernel_a, .. } => Some(kernel_a.clone()),
            FluxModel::Whitham { .. } => Some(KernelSpec::whitham()),
            FluxModel::Suspension { a } => {
                Some(KernelSpec::suspension(*a).expect("validated at construction"))
            }
        }
    }

    /// Kernel producing `u_tilde`; only the look-ahead-behind model has one.
    pub fn kernel_behind(&self) -> Option<KernelSpec> {
        match self {
            FluxModel::LookAheadBehind { kernel_b, .. } => Some(kernel_b.clone()),
            _ => None,
        }
    }

    /// True for the models whose state is a vehicle density in `[0, 1]`.
    pub fn is_traffic(&self) -> bool {
        matches!(
            self,
            FluxModel::Lwr | FluxModel::LookAhead { .. } | FluxModel::LookAheadBehind { .. }
        )
    }

    /// Flux value at one node. `u_tilde` is ignored by every variant except
    /// look-ahead-behind.
    pub fn eval_flux(&self, u: f64, u_bar: f64, u_tilde: f64) -> f64 {
        match self {
            FluxModel::Lwr => u * (1.0 - u),
            FluxModel::LookAhead { .. } => u * (1.0 - u) * (-u_bar).exp(),
            FluxModel::LookAheadBehind { .. } => u * (1.0 - u) * (-u_bar + u_tilde).exp(),
            FluxModel::Whitham { c0, h0 } => 3.0 * c0 / (4.0 * h0) * u * u + u_bar,
            FluxModel::Suspension { .. } => u + u_bar * u,
        }
    }

    /// `|dF/du|` with the nonlocal terms frozen as coefficients; this is the
    /// transport speed used for CFL control.
    pub fn local_wave_speed(&self, u: f64, u_bar: f64, u_tilde: f64) -> f64 {
        match self {
            FluxModel::Lwr => (1.0 - 2.0 * u).abs(),
            FluxModel::LookAhead { .. } => (1.0 - 2.0 * u).abs() * (-u_bar).exp(),
            FluxModel::LookAheadBehind { .. } => (1.0 - 2.0 * u).abs() * (-u_bar + u_tilde).exp(),
            FluxModel::Whitham { c0, h0 } => 3.0 * c0 / (2.0 * h0) * u.abs(),
            FluxModel::Suspension { .. } => (1.0 + u_bar).abs(),
        }
    }

    /// Short name used for CSV columns and report lines.
    pub fn label(&self) -> String {
        fn shape_tag(spec: &KernelSpec) -> &'static str {
            if matches!(
                spec.shape(),
                crate::kernel::KernelShape::AheadLinear | crate::kernel::KernelShape::BehindLinear
            ) {
                "linear"
            } else {
                "const"
            }
        }
        match self {
            FluxModel::Lwr => "lwr".into(),
            FluxModel::LookAhead { kernel_a } => format!("look_a_{}", shape_tag(kernel_a)),
            FluxModel::LookAheadBehind { kernel_a, kernel_b } => {
                let a = shape_tag(kernel_a);
                let b = shape_tag(kernel_b);
                if a == b {
                    format!("look_ab_{a}")
                } else {
                    format!("look_ab_{a}_{b}")
                }
            }
            FluxModel::Whitham { .. } => "whitham".into(),
            FluxModel::Suspension { .. } => "suspension".into(),
        }
    }
}
