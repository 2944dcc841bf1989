//! Simulation toolkit for 1-D scalar conservation laws with nonlocal
//! fluxes, built around the traffic family with look-ahead relaxation and
//! look-behind intensification.
//!
//! The pieces:
//!
//! - [`grid`]: uniform grids, fields, boundary extension policies
//! - [`kernel`]: interaction potentials and trapezoidal moving-window
//!   convolution of the nonlocal terms
//! - [`flux`]: the model family (LWR, look-ahead, look-ahead-behind,
//!   Whitham, suspension) and wave-speed estimates
//! - [`scenario`]: initial-data presets and a small profile language
//! - [`solver`]: Lax-Friedrichs stepping with CFL-controlled adaptive dt
//! - [`threshold`]: closed-form shock-formation thresholds and slope
//!   extremes of the initial data
//! - [`analysis`]: mass/gradient diagnostics, the exact local Riemann
//!   solution, L1 errors, refinement-based shock classification

pub mod analysis;
pub mod error;
pub mod flux;
pub mod grid;
pub mod kernel;
pub mod scenario;
pub mod solver;
pub mod threshold;

pub use error::{Error, Result};
