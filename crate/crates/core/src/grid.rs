//! Uniform 1-D grid, field storage, and boundary extension policies.
//!
//! Fields are node-centered: `values[i]` samples the solution at
//! `x_min + i * dx`. Out-of-range node access goes through the grid's
//! boundary policy, which always selects an existing sample (clamp or
//! wrap), never interpolates.

use crate::error::{Error, Result};

/// Relative tolerance for "length is an integer multiple of dx" checks.
pub(crate) const COMMENSURATE_TOL: f64 = 1e-9;

/// How node indices outside `[0, n-1]` are mapped back into the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// First and last node are identified; indices wrap with period `n - 1`.
    Periodic,
    /// Indices clamp to the nearest edge node (constant extension).
    ConstantExtension,
}

/// A uniform grid on `[x_min, x_max]` with `n` nodes spaced `dx` apart.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    dx: f64,
    n: usize,
    boundary: Boundary,
}

impl GridSpec {
    /// Builds a grid, validating that the domain length is an integer
    /// multiple of `dx` (within 1e-9 relative) and that `n >= 3`.
    pub fn new(x_min: f64, x_max: f64, dx: f64, boundary: Boundary) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && dx.is_finite()) {
            return Err(Error::Config("grid bounds and dx must be finite".into()));
        }
        if x_min >= x_max {
            return Err(Error::Config(format!(
                "grid requires x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if dx <= 0.0 {
            return Err(Error::Config(format!(
                "grid spacing must be positive, got {dx}"
            )));
        }
        let ratio = (x_max - x_min) / dx;
        let cells = ratio.round();
        if (ratio - cells).abs() > COMMENSURATE_TOL * ratio.max(1.0) {
            return Err(Error::Config(format!(
                "domain not commensurate: [{x_min}, {x_max}] is not an integer number of cells of width {dx}"
            )));
        }
        let n = cells as usize + 1;
        if n < 3 {
            return Err(Error::Config(format!(
                "grid needs at least 3 nodes, got {n} for [{x_min}, {x_max}] with dx = {dx}"
            )));
        }
        Ok(GridSpec {
            x_min,
            x_max,
            dx,
            n,
            boundary,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Node count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Position of node `i`.
    pub fn node(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    /// Iterator over node positions.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Maps a possibly out-of-range signed node index to an in-range one
    /// according to the boundary policy. In-range indices map to themselves.
    pub fn resolve_index(&self, i: isize) -> usize {
        let n = self.n as isize;
        if (0..n).contains(&i) {
            return i as usize;
        }
        match self.boundary {
            Boundary::ConstantExtension => {
                if i < 0 {
                    0
                } else {
                    (n - 1) as usize
                }
            }
            Boundary::Periodic => {
                // first and last node are identified, so the period is n - 1
                let period = n - 1;
                i.rem_euclid(period) as usize
            }
        }
    }
}

/// A density sample on a grid, one value per node.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: GridSpec,
    values: Vec<f64>,
}

impl Field {
    /// Wraps `values` on `grid`, rejecting length mismatch and non-finite
    /// entries.
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::Config(format!(
                "field length {} does not match grid node count {}",
                values.len(),
                grid.n()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Config(format!(
                "field value at node {i} is not finite"
            )));
        }
        Ok(Field { grid, values })
    }

    /// Constant field `u = c` everywhere.
    pub fn constant(grid: GridSpec, c: f64) -> Self {
        let values = vec![c; grid.n()];
        Field { grid, values }
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().map(f).collect();
        Field { grid, values }
    }

    /// Internal constructor that skips finiteness checks; the solver scans
    /// for NaN/Inf once per step instead.
    pub(crate) fn from_values_unchecked(grid: GridSpec, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.n());
        Field { grid, values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at a signed node index, extended by the boundary policy.
    pub fn sample_at(&self, i: isize) -> f64 {
        self.values[self.grid.resolve_index(i)]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
