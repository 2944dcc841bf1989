//! Interaction potentials and their discrete moving-window quadrature.
//!
//! A kernel `K` turns the solution into the averaged terms
//! `u_bar = K * u` (look-ahead) and `u_tilde = K_b * u` (look-behind).
//! Discretization uses the trapezoidal rule on the grid nodes, so a
//! compact kernel's reach must be an integer multiple of `dx` — the
//! support endpoints then land exactly on nodes and no partial-cell rule
//! is needed.

use crate::error::{Error, Result};
use crate::grid::{Field, COMMENSURATE_TOL};

/// Weight below which the (infinite-support) Whitham kernel is truncated.
const WHITHAM_CUTOFF: f64 = 1e-12;

/// Kernel shapes. Ahead kernels integrate over `[x, x + reach]`, behind
/// kernels over `[x - reach, x]`; the exponential and bump kernels are
/// two-sided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelShape {
    AheadConstant,
    AheadLinear,
    BehindConstant,
    BehindLinear,
    WhithamExponential,
    SuspensionBump,
}

impl KernelShape {
    pub fn is_ahead(self) -> bool {
        matches!(self, KernelShape::AheadConstant | KernelShape::AheadLinear)
    }

    pub fn is_behind(self) -> bool {
        matches!(
            self,
            KernelShape::BehindConstant | KernelShape::BehindLinear
        )
    }
}

/// An interaction potential: shape plus reach. The interaction strength
/// K0 is fixed to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    shape: KernelShape,
    reach: f64,
    strength: f64,
}

impl KernelSpec {
    pub fn new(shape: KernelShape, reach: f64) -> Result<Self> {
        if !(reach.is_finite() && reach > 0.0) {
            return Err(Error::Parameter(format!(
                "kernel reach must be positive and finite, got {reach}"
            )));
        }
        Ok(KernelSpec {
            shape,
            reach,
            strength: 1.0,
        })
    }

    pub fn ahead_constant(gamma_a: f64) -> Result<Self> {
        Self::new(KernelShape::AheadConstant, gamma_a)
    }

    pub fn ahead_linear(gamma_a: f64) -> Result<Self> {
        Self::new(KernelShape::AheadLinear, gamma_a)
    }

    pub fn behind_constant(gamma_b: f64) -> Result<Self> {
        Self::new(KernelShape::BehindConstant, gamma_b)
    }

    pub fn behind_linear(gamma_b: f64) -> Result<Self> {
        Self::new(KernelShape::BehindLinear, gamma_b)
    }

    /// `K(r) = (pi/4) exp(-pi |r| / 2)`, truncated where `K < 1e-12`.
    /// The reach reported here is that truncation radius.
    pub fn whitham() -> Self {
        let reach =
            2.0 / std::f64::consts::PI * (std::f64::consts::PI / (4.0 * WHITHAM_CUTOFF)).ln();
        KernelSpec {
            shape: KernelShape::WhithamExponential,
            reach,
            strength: 1.0,
        }
    }

    /// `K_a(r) = a^{-1} K(r/a)` with `K(r) = 2 / (3 (r^2/4 - 1))` on
    /// `|r| < 2` and zero outside; the support radius is `2a`.
    pub fn suspension(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Parameter(format!(
                "suspension scale must be positive and finite, got {a}"
            )));
        }
        Ok(KernelSpec {
            shape: KernelShape::SuspensionBump,
            reach: a,
            strength: 1.0,
        })
    }

    pub fn shape(&self) -> KernelShape {
        self.shape
    }

    pub fn reach(&self) -> f64 {
        self.reach
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }
}

/// Trapezoidal-rule weights for a kernel on a specific grid spacing.
/// `weights[k]` multiplies the sample at node offset `j_lo + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteKernel {
    weights: Vec<f64>,
    j_lo: isize,
    dx: f64,
}

impl DiscreteKernel {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Inclusive offset range `[j_lo, j_hi]` relative to the evaluation node.
    pub fn offsets(&self) -> (isize, isize) {
        (self.j_lo, self.j_lo + self.weights.len() as isize - 1)
    }

    /// Grid spacing the kernel was discretized with.
    pub fn dx(&self) -> f64 {
        self.dx
    }
}

/// Number of cells spanned by `reach`, failing unless `reach / dx` is an
/// integer `>= 1` (tolerance 1e-9).
fn reach_cells(reach: f64, dx: f64) -> Result<usize> {
    let ratio = reach / dx;
    let m = ratio.round();
    if (ratio - m).abs() > COMMENSURATE_TOL * ratio.max(1.0) || m < 1.0 {
        return Err(Error::Config(format!(
            "kernel reach {reach} is not a positive integer multiple of dx = {dx}"
        )));
    }
    Ok(m as usize)
}

/// Trapezoid end-halving factor for index `j` in `[0, m]`.
fn trapezoid_factor(j: usize, m: usize) -> f64 {
    if j == 0 || j == m {
        0.5
    } else {
        1.0
    }
}

/// Builds the quadrature weights for `spec` on spacing `dx`.
pub fn discretize(spec: &KernelSpec, dx: f64) -> Result<DiscreteKernel> {
    if !(dx.is_finite() && dx > 0.0) {
        return Err(Error::Config(format!(
            "dx must be positive and finite, got {dx}"
        )));
    }
    let k0 = spec.strength();
    let gamma = spec.reach();
    let (weights, j_lo) = match spec.shape() {
        KernelShape::AheadConstant => {
            let m = reach_cells(gamma, dx)?;
            let w: Vec<f64> = (0..=m)
                .map(|j| k0 * dx / gamma * trapezoid_factor(j, m))
                .collect();
            (w, 0)
        }
        KernelShape::AheadLinear => {
            // integrand (2/gamma)(1 + (x - y)/gamma) at y = x + j dx
            let m = reach_cells(gamma, dx)?;
            let w: Vec<f64> = (0..=m)
                .map(|j| {
                    let shape = 2.0 / gamma * (1.0 - j as f64 * dx / gamma);
                    k0 * dx * shape * trapezoid_factor(j, m)
                })
                .collect();
            (w, 0)
        }
        KernelShape::BehindConstant => {
            let m = reach_cells(gamma, dx)?;
            let w: Vec<f64> = (0..=m)
                .map(|j| k0 * dx / gamma * trapezoid_factor(j, m))
                .collect();
            (w, -(m as isize))
        }
        KernelShape::BehindLinear => {
            // integrand (2/gamma)(1 - (x - y)/gamma) at y = x + j dx, j in [-m, 0]
            let m = reach_cells(gamma, dx)?;
            let w: Vec<f64> = (0..=m)
                .map(|idx| {
                    let j = idx as isize - m as isize;
                    let shape = 2.0 / gamma * (1.0 + j as f64 * dx / gamma);
                    k0 * dx * shape * trapezoid_factor(idx, m)
                })
                .collect();
            (w, -(m as isize))
        }
        KernelShape::WhithamExponential => {
            // truncate at the first node at or beyond the cutoff radius,
            // then rescale so the weights sum to the full integral K0
            let m = (gamma / dx).ceil() as usize;
            let mut w: Vec<f64> = (0..=2 * m)
                .map(|idx| {
                    let r = (idx as isize - m as isize) as f64 * dx;
                    let k =
                        std::f64::consts::PI / 4.0 * (-std::f64::consts::PI * r.abs() / 2.0).exp();
                    dx * k * trapezoid_factor(idx, 2 * m)
                })
                .collect();
            let sum: f64 = w.iter().sum();
            let scale = k0 / sum;
            for v in &mut w {
                *v *= scale;
            }
            (w, -(m as isize))
        }
        KernelShape::SuspensionBump => {
            // support radius is 2a; the formula has poles at |r| = 2a, where
            // the outside value 0 applies instead
            let a = gamma;
            let m = reach_cells(2.0 * a, dx)?;
            let w: Vec<f64> = (0..=2 * m)
                .map(|idx| {
                    let j = idx as isize - m as isize;
                    if j.unsigned_abs() == m {
                        return 0.0;
                    }
                    let r = j as f64 * dx / a;
                    let k = 2.0 / (3.0 * (r * r / 4.0 - 1.0)) / a;
                    k0 * dx * k
                })
                .collect();
            (w, -(m as isize))
        }
    };
    Ok(DiscreteKernel { weights, j_lo, dx })
}

/// Discrete moving-window convolution: output node `i` is
/// `sum_j w_j * u_{i+j}` with boundary-policy ghost access. Summation is
/// fixed left-to-right per node, so results do not depend on evaluation
/// order across nodes.
pub fn convolve(field: &Field, kernel: &DiscreteKernel) -> Result<Field> {
    let grid = field.grid();
    if kernel.dx() != grid.dx() {
        return Err(Error::Usage(format!(
            "kernel discretized with dx = {} used on grid with dx = {}",
            kernel.dx(),
            grid.dx()
        )));
    }
    let n = grid.n();
    let values = field.values();
    let weights = kernel.weights();
    let j_lo = kernel.j_lo;
    let j_hi = kernel.j_lo + weights.len() as isize - 1;

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let i = i as isize;
        let mut acc = 0.0;
        if i + j_lo >= 0 && i + j_hi < n as isize {
            let base = (i + j_lo) as usize;
            for (k, w) in weights.iter().enumerate() {
                acc += w * values[base + k];
            }
        } else {
            for (k, w) in weights.iter().enumerate() {
                acc += w * field.sample_at(i + j_lo + k as isize);
            }
        }
        out.push(acc);
    }
    Ok(Field::from_values_unchecked(grid.clone(), out))
}
