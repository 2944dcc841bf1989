//! Diagnostics and oracles: mass, gradient indicators, exact solutions of
//! the local Riemann problem, blow-up time of the slope ODE, L1 errors,
//! refinement-based shock classification, and wave-front location.

use crate::error::{Error, Result};
use crate::grid::{Field, GridSpec};
use crate::solver::{run, SimConfig};

/// Trapezoidal mass `sum_i u_i dx` with half-weights at the end nodes.
/// On a periodic grid (end nodes identified) this sums exactly one period.
pub fn total_mass(field: &Field) -> f64 {
    let v = field.values();
    let n = v.len();
    // compensated summation keeps the reported drift close to the true
    // drift of the state rather than the error of this sum
    let mut sum = 0.0;
    let mut carry = 0.0;
    for (i, &u) in v.iter().enumerate() {
        let w = if i == 0 || i == n - 1 { 0.5 * u } else { u };
        let y = w - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum * field.grid().dx()
}

/// Largest one-sided difference quotient `|u_{i+1} - u_i| / dx`.
pub fn max_gradient(field: &Field) -> f64 {
    let v = field.values();
    let dx = field.grid().dx();
    v.windows(2)
        .map(|w| (w[1] - w[0]).abs() / dx)
        .fold(0.0, f64::max)
}

/// Two constant states separated by a jump at `x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannState {
    pub u_left: f64,
    pub u_right: f64,
    pub x0: f64,
}

impl RiemannState {
    pub fn new(u_left: f64, u_right: f64, x0: f64) -> Result<Self> {
        for (name, v) in [("u_left", u_left), ("u_right", u_right)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Parameter(format!(
                    "Riemann density {name} = {v} outside [0, 1]"
                )));
            }
        }
        Ok(RiemannState {
            u_left,
            u_right,
            x0,
        })
    }
}

/// Exact entropy solution of `u_t + (u(1-u))_x = 0` for step data.
///
/// With the concave flux, `u_left < u_right` gives a shock moving at
/// `s = 1 - u_left - u_right` (Rankine-Hugoniot); `u_left > u_right`
/// gives a rarefaction fan `u = (1 - (x - x0)/t) / 2` between the
/// characteristic speeds of the two states.
pub fn lwr_riemann_exact(state: &RiemannState, x: f64, t: f64) -> f64 {
    let RiemannState {
        u_left,
        u_right,
        x0,
    } = *state;
    if t <= 0.0 {
        return if x < x0 { u_left } else { u_right };
    }
    let xi = (x - x0) / t;
    if u_left == u_right {
        u_left
    } else if u_left < u_right {
        let s = 1.0 - u_left - u_right;
        if xi < s {
            u_left
        } else {
            u_right
        }
    } else {
        let head = 1.0 - 2.0 * u_left;
        let tail = 1.0 - 2.0 * u_right;
        if xi <= head {
            u_left
        } else if xi >= tail {
            u_right
        } else {
            (1.0 - xi) / 2.0
        }
    }
}

/// Exact solution for the red-light release: density 0.9 on `[-7, -2]`
/// under the local model. The left edge is a shock moving at 0.1, the
/// right edge a rarefaction; they stay apart for `t <= 2`, so the two
/// Riemann solutions are glued at x = -4.5.
pub fn red_light_exact(x: f64, t: f64) -> f64 {
    debug_assert!((0.0..=2.0).contains(&t), "waves interact after t = 2");
    let left = RiemannState {
        u_left: 0.0,
        u_right: 0.9,
        x0: -7.0,
    };
    let right = RiemannState {
        u_left: 0.9,
        u_right: 0.0,
        x0: -2.0,
    };
    if x <= -4.5 {
        lwr_riemann_exact(&left, x, t)
    } else {
        lwr_riemann_exact(&right, x, t)
    }
}

/// Nodal L1 distance `sum_i |u_i - ref(x_i)| dx` with trapezoid
/// end-halving.
pub fn l1_error(field: &Field, reference: impl Fn(f64) -> f64) -> f64 {
    let v = field.values();
    let n = v.len();
    let grid = field.grid();
    let mut sum = 0.0;
    for (i, &u) in v.iter().enumerate() {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        sum += w * (u - reference(grid.node(i))).abs();
    }
    sum * grid.dx()
}

/// Blow-up time of `d' = d^2, d(0) = d0`: `1/d0` for positive slope,
/// infinite otherwise.
pub fn riccati_blowup_time(d0: f64) -> f64 {
    if d0 > 0.0 {
        1.0 / d0
    } else {
        f64::INFINITY
    }
}

/// One row of a refinement study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub dx: f64,
    /// L1 distance to the oracle, when one was supplied.
    pub l1_error: Option<f64>,
    pub max_grad: f64,
}

/// Verdict of the refinement-growth test on the steepest gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShockClass {
    /// Gradient grows by at least 1.8x per dx halving.
    ShockSuspected,
    /// Gradient grows by at most 1.2x per halving.
    Smooth,
    /// Mixed growth, or too few successful rows to tell.
    Indeterminate,
}

impl std::fmt::Display for ShockClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ShockClass::ShockSuspected => "shock_suspected",
            ShockClass::Smooth => "smooth",
            ShockClass::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// Rows (one per dx, failures kept in place) plus the classification.
#[derive(Debug)]
pub struct RefinementStudy {
    pub rows: Vec<Result<ConvergenceRow>>,
    pub class: ShockClass,
}

const SHOCK_GROWTH: f64 = 1.8;
const SMOOTH_GROWTH: f64 = 1.2;

fn classify(rows: &[Result<ConvergenceRow>]) -> ShockClass {
    let ok: Vec<&ConvergenceRow> = rows.iter().filter_map(|r| r.as_ref().ok()).collect();
    if ok.len() < 2 {
        return ShockClass::Indeterminate;
    }
    let mut all_shock = true;
    let mut all_smooth = true;
    for pair in ok.windows(2) {
        let (coarse, fine) = (pair[0].max_grad, pair[1].max_grad);
        if coarse <= 1e-12 && fine <= 1e-12 {
            // flat data stays flat under refinement
            all_shock = false;
            continue;
        }
        let ratio = fine / coarse;
        if ratio < SHOCK_GROWTH {
            all_shock = false;
        }
        if ratio > SMOOTH_GROWTH {
            all_smooth = false;
        }
    }
    if all_shock {
        ShockClass::ShockSuspected
    } else if all_smooth {
        ShockClass::Smooth
    } else {
        ShockClass::Indeterminate
    }
}

/// Reruns `config`'s scenario on each grid spacing in `dx_list` (sorted
/// descending) up to `t_probe`, recording the steepest gradient and, when
/// `oracle` gives the exact profile at `t_probe`, the L1 error. Rows that
/// fail keep their error; the remaining rows still run. `threads` caps
/// concurrent simulations (<= 1 means sequential); aggregation order is
/// by dx regardless.
pub fn shock_refinement_study(
    config: &SimConfig,
    dx_list: &[f64],
    t_probe: f64,
    oracle: Option<&(dyn Fn(f64) -> f64 + Sync)>,
    threads: usize,
) -> Result<RefinementStudy> {
    if dx_list.is_empty() {
        return Err(Error::Usage(
            "refinement study needs at least one dx".into(),
        ));
    }
    if dx_list.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Usage(
            "dx list must be sorted in strictly descending order".into(),
        ));
    }
    if !(t_probe.is_finite() && t_probe >= 0.0) {
        return Err(Error::Usage(format!(
            "probe time must be nonnegative, got {t_probe}"
        )));
    }

    let one_row = |dx: f64| -> Result<ConvergenceRow> {
        let grid = GridSpec::new(
            config.grid.x_min(),
            config.grid.x_max(),
            dx,
            config.grid.boundary(),
        )?;
        let probe_config = SimConfig {
            grid,
            model: config.model.clone(),
            scenario: config.scenario.clone(),
            cfl: config.cfl,
            t_end: t_probe,
            snapshot_times: vec![t_probe],
            diag_every: u64::MAX,
        };
        let result = run(&probe_config)?;
        let last = result.snapshots.last().expect("run always emits snapshots");
        Ok(ConvergenceRow {
            dx,
            l1_error: oracle.map(|f| l1_error(&last.field, f)),
            max_grad: last.max_grad,
        })
    };

    let rows: Vec<Result<ConvergenceRow>> = if threads <= 1 || dx_list.len() <= 1 {
        dx_list.iter().map(|&dx| one_row(dx)).collect()
    } else {
        let slots: Vec<std::sync::Mutex<Option<Result<ConvergenceRow>>>> = dx_list
            .iter()
            .map(|_| std::sync::Mutex::new(None))
            .collect();
        let next = std::sync::atomic::AtomicUsize::new(0);
        let workers = threads.min(dx_list.len());
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= dx_list.len() {
                        break;
                    }
                    let row = one_row(dx_list[i]);
                    *slots[i].lock().unwrap() = Some(row);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().unwrap().expect("every slot filled"))
            .collect()
    };

    let class = classify(&rows);
    Ok(RefinementStudy { rows, class })
}

/// Which end of the wave to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontSide {
    /// Largest x where the field crosses the level.
    Leading,
    /// Smallest such x.
    Trailing,
}

/// Position where the field crosses `level`, linearly interpolated between
/// the bracketing nodes. A crossing means the sign of `u - level` actually
/// changes: values that only touch the level (or sit at it over a region
/// without the sides differing) do not count. Fails when no crossing
/// exists.
pub fn front_position(field: &Field, level: f64, side: FrontSide) -> Result<f64> {
    let v = field.values();
    let grid = field.grid();
    let mut crossings: Vec<f64> = Vec::new();
    // previous node with a nonzero sign of (u - level)
    let mut prev: Option<(usize, f64)> = None;
    for (i, &u) in v.iter().enumerate() {
        let d = u - level;
        if d == 0.0 {
            continue;
        }
        if let Some((j, dj)) = prev {
            if dj * d < 0.0 {
                if i == j + 1 {
                    crossings.push(grid.node(j) + grid.dx() * dj / (v[j] - v[i]));
                } else {
                    // the field sat exactly at the level between j and i;
                    // the crossing spans that run, report its midpoint
                    crossings.push(0.5 * (grid.node(j + 1) + grid.node(i - 1)));
                }
            }
        }
        prev = Some((i, d));
    }
    if crossings.is_empty() {
        return Err(Error::Analysis(format!(
            "field never crosses level {level}"
        )));
    }
    Ok(match side {
        FrontSide::Leading => crossings.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        FrontSide::Trailing => crossings.iter().copied().fold(f64::INFINITY, f64::min),
    })
}
