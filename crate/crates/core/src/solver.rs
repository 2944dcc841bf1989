//! Conservative Lax-Friedrichs time stepping with CFL-controlled dt.
//!
//! One step reads
//!
//! `u_i' = (u_{i-1} + u_{i+1}) / 2 - dt / (2 dx) * (F_{i+1} - F_{i-1})`
//!
//! with ghost access through the grid's boundary policy. The nonlocal
//! terms are recomputed once per step from the current state and frozen
//! within the step. Snapshot times are hit exactly by shortening the last
//! step before each one; nothing is interpolated in time.

use crate::analysis;
use crate::error::{Error, Result};
use crate::flux::FluxModel;
use crate::grid::Field;
use crate::kernel::{convolve, discretize, DiscreteKernel};
use crate::scenario::ScenarioSpec;

/// Lower bound on the wave-speed maximum used in the CFL ratio, so a
/// quiescent state falls back to event-gap-sized steps.
pub const WAVE_SPEED_FLOOR: f64 = 1e-10;

/// Full description of one simulation run.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub grid: crate::grid::GridSpec,
    pub model: FluxModel,
    pub scenario: ScenarioSpec,
    /// CFL number in (0, 1]; the published runs use 0.5 or 0.25.
    pub cfl: f64,
    pub t_end: f64,
    /// Sorted times in [0, t_end]; a snapshot is emitted exactly at each.
    pub snapshot_times: Vec<f64>,
    /// Record a diagnostics row every this many steps.
    pub diag_every: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::Config(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::Config(format!(
                "t_end must be finite and nonnegative, got {}",
                self.t_end
            )));
        }
        if self.snapshot_times.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Config("snapshot times must be sorted".into()));
        }
        if let Some(&t) = self
            .snapshot_times
            .iter()
            .find(|&&t| !(0.0..=self.t_end).contains(&t))
        {
            return Err(Error::Config(format!(
                "snapshot time {t} outside [0, {}]",
                self.t_end
            )));
        }
        if self.diag_every == 0 {
            return Err(Error::Config("diag_every must be at least 1".into()));
        }
        Ok(())
    }
}

/// Solution state at one instant, with recomputable diagnostics attached.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub field: Field,
    pub mass: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub max_grad: f64,
}

impl Snapshot {
    fn of(t: f64, field: Field) -> Self {
        let mass = analysis::total_mass(&field);
        let u_min = field.min();
        let u_max = field.max();
        let max_grad = analysis::max_gradient(&field);
        Snapshot {
            t,
            field,
            mass,
            u_min,
            u_max,
            max_grad,
        }
    }
}

/// One diagnostics record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagRow {
    pub t: f64,
    pub mass: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub max_grad: f64,
}

impl DiagRow {
    fn of(t: f64, field: &Field) -> Self {
        DiagRow {
            t,
            mass: analysis::total_mass(field),
            u_min: field.min(),
            u_max: field.max(),
            max_grad: analysis::max_gradient(field),
        }
    }
}

/// Everything a run produced. The first snapshot is always the initial
/// condition at t = 0; requested snapshot times follow in order.
#[derive(Debug, Clone)]
pub struct SimResult {
    pub snapshots: Vec<Snapshot>,
    pub diagnostics: Vec<DiagRow>,
    pub steps_taken: u64,
    /// (smallest, largest) dt used, `None` when no step was taken.
    pub dt_range: Option<(f64, f64)>,
}

/// Computes the nonlocal terms (u_bar, u_tilde) for `model` on the current
/// state; either is the zero field when the model has no matching kernel.
pub fn nonlocal_terms(field: &Field, model: &FluxModel) -> Result<(Field, Field)> {
    let dx = field.grid().dx();
    let u_bar = match model.kernel_ahead() {
        Some(spec) => convolve(field, &discretize(&spec, dx)?)?,
        None => Field::constant(field.grid().clone(), 0.0),
    };
    let u_tilde = match model.kernel_behind() {
        Some(spec) => convolve(field, &discretize(&spec, dx)?)?,
        None => Field::constant(field.grid().clone(), 0.0),
    };
    Ok((u_bar, u_tilde))
}

/// One Lax-Friedrichs step with caller-supplied nonlocal terms. The input
/// field is untouched; the output may contain non-finite values (the run
/// loop scans for them).
pub fn lf_step_with_terms(
    field: &Field,
    model: &FluxModel,
    u_bar: &Field,
    u_tilde: &Field,
    dt: f64,
) -> Field {
    let grid = field.grid();
    debug_assert_eq!(u_bar.grid().n(), grid.n());
    debug_assert_eq!(u_tilde.grid().n(), grid.n());
    let n = grid.n();
    let u = field.values();
    let ub = u_bar.values();
    let ut = u_tilde.values();
    let lambda = dt / (2.0 * grid.dx());

    let flux: Vec<f64> = (0..n)
        .map(|i| model.eval_flux(u[i], ub[i], ut[i]))
        .collect();
    let out: Vec<f64> = (0..n)
        .map(|i| {
            let i = i as isize;
            let im = grid.resolve_index(i - 1);
            let ip = grid.resolve_index(i + 1);
            0.5 * (u[im] + u[ip]) - lambda * (flux[ip] - flux[im])
        })
        .collect();
    Field::from_values_unchecked(grid.clone(), out)
}

/// One Lax-Friedrichs step, computing the nonlocal terms from `field`.
pub fn lf_step(field: &Field, model: &FluxModel, dt: f64) -> Result<Field> {
    let (u_bar, u_tilde) = nonlocal_terms(field, model)?;
    Ok(lf_step_with_terms(field, model, &u_bar, &u_tilde, dt))
}

/// Largest local wave speed over the grid for the given frozen terms.
pub fn max_wave_speed(field: &Field, model: &FluxModel, u_bar: &Field, u_tilde: &Field) -> f64 {
    let u = field.values();
    let ub = u_bar.values();
    let ut = u_tilde.values();
    (0..u.len())
        .map(|i| model.local_wave_speed(u[i], ub[i], ut[i]))
        .fold(0.0, f64::max)
}

/// CFL time step, shortened to land exactly on the next event.
pub fn choose_dt(
    field: &Field,
    model: &FluxModel,
    cfl: f64,
    t_now: f64,
    t_next_event: f64,
) -> Result<f64> {
    if t_next_event <= t_now {
        return Err(Error::Usage(format!(
            "next event time {t_next_event} is not after current time {t_now}"
        )));
    }
    let (u_bar, u_tilde) = nonlocal_terms(field, model)?;
    let alpha = max_wave_speed(field, model, &u_bar, &u_tilde).max(WAVE_SPEED_FLOOR);
    Ok((cfl * field.grid().dx() / alpha).min(t_next_event - t_now))
}

struct Stepper<'a> {
    config: &'a SimConfig,
    kernel_a: Option<DiscreteKernel>,
    kernel_b: Option<DiscreteKernel>,
    zero: Field,
    state: Field,
    t: f64,
    steps: u64,
    dt_min: f64,
    dt_max: f64,
    diagnostics: Vec<DiagRow>,
}

impl<'a> Stepper<'a> {
    fn terms(&self) -> Result<(Field, Field)> {
        let u_bar = match &self.kernel_a {
            Some(k) => convolve(&self.state, k)?,
            None => self.zero.clone(),
        };
        let u_tilde = match &self.kernel_b {
            Some(k) => convolve(&self.state, k)?,
            None => self.zero.clone(),
        };
        Ok((u_bar, u_tilde))
    }

    /// Advances the state to exactly `target`.
    fn advance_to(&mut self, target: f64) -> Result<()> {
        while self.t < target {
            let (u_bar, u_tilde) = self.terms()?;
            let alpha = max_wave_speed(&self.state, &self.config.model, &u_bar, &u_tilde)
                .max(WAVE_SPEED_FLOOR);
            let gap = target - self.t;
            let dt = (self.config.cfl * self.config.grid.dx() / alpha).min(gap);
            let next = lf_step_with_terms(&self.state, &self.config.model, &u_bar, &u_tilde, dt);
            let t_next = if dt == gap { target } else { self.t + dt };
            self.steps += 1;
            if let Some(node) = next.values().iter().position(|v| !v.is_finite()) {
                return Err(Error::Diverged {
                    t: t_next,
                    step: self.steps,
                    node,
                });
            }
            self.state = next;
            self.t = t_next;
            self.dt_min = self.dt_min.min(dt);
            self.dt_max = self.dt_max.max(dt);
            if self.steps.is_multiple_of(self.config.diag_every) {
                self.diagnostics.push(DiagRow::of(self.t, &self.state));
            }
        }
        Ok(())
    }
}

/// Runs the configured simulation from t = 0 to t_end.
pub fn run(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let initial = config.scenario.build_initial(&config.grid)?;
    if config.model.is_traffic() {
        if let Some(i) = initial
            .values()
            .iter()
            .position(|&v| !(0.0..=1.0).contains(&v))
        {
            return Err(Error::Config(format!(
                "traffic model requires initial density in [0, 1]; node {i} has {}",
                initial.values()[i]
            )));
        }
    }
    let dx = config.grid.dx();
    let kernel_a = config
        .model
        .kernel_ahead()
        .map(|s| discretize(&s, dx))
        .transpose()?;
    let kernel_b = config
        .model
        .kernel_behind()
        .map(|s| discretize(&s, dx))
        .transpose()?;

    let mut snapshots = vec![Snapshot::of(0.0, initial.clone())];
    let mut stepper = Stepper {
        config,
        kernel_a,
        kernel_b,
        zero: Field::constant(config.grid.clone(), 0.0),
        state: initial,
        t: 0.0,
        steps: 0,
        dt_min: f64::INFINITY,
        dt_max: 0.0,
        diagnostics: vec![DiagRow::of(0.0, &snapshots[0].field)],
    };

    for &t_snap in &config.snapshot_times {
        stepper.advance_to(t_snap)?;
        snapshots.push(Snapshot::of(stepper.t, stepper.state.clone()));
    }
    stepper.advance_to(config.t_end)?;
    if !stepper.steps.is_multiple_of(config.diag_every) {
        stepper
            .diagnostics
            .push(DiagRow::of(stepper.t, &stepper.state));
    }

    let dt_range = if stepper.steps > 0 {
        Some((stepper.dt_min, stepper.dt_max))
    } else {
        None
    };
    Ok(SimResult {
        snapshots,
        diagnostics: stepper.diagnostics,
        steps_taken: stepper.steps,
        dt_range,
    })
}
