//! Time integration.
//!
//! Space-homogeneous runs advance `df/dt = Q(f)` with classical RK4. The 1D
//! periodic transport extension uses Strang splitting around the same
//! collision step, with first-order upwind advection along `x` for every
//! velocity node.

use crate::closures::MixtureConfig;
use crate::collision::{rhs, MixtureState};
use crate::diagnostics::DiagnosticsRecord;
use crate::error::{KineticError, Result};
use crate::vgrid::GridField;

/// Default bound on `Δt` times the largest total collision rate.
pub const DEFAULT_STABILITY_FACTOR: f64 = 0.9;
/// Accepted steps never dip below `−NEGATIVITY_TOLERANCE · peak`.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-13;

/// Largest total relaxation rate `νₖₖ nₖ + νₖₗ nₗ` over the two species.
pub fn stability_rate(state: &MixtureState, config: &MixtureConfig) -> f64 {
    let f = config.frequencies();
    let (n1, n2) = (state.moments(0).density, state.moments(1).density);
    (f.nu11 * n1 + f.nu12 * n2).max(f.nu22 * n2 + f.nu21 * n1)
}

/// Largest `Δt` allowed by `factor` at the current state.
pub fn stable_dt(state: &MixtureState, config: &MixtureConfig, factor: f64) -> f64 {
    let rate = stability_rate(state, config);
    if rate > 0.0 {
        factor / rate
    } else {
        f64::INFINITY
    }
}

fn check_stability(
    state: &MixtureState,
    config: &MixtureConfig,
    dt: f64,
    factor: f64,
) -> Result<()> {
    let limit = stable_dt(state, config, factor);
    if dt > limit {
        return Err(KineticError::StabilityBound { dt, limit });
    }
    Ok(())
}

fn check_positivity(state: &MixtureState, time: f64) -> Result<()> {
    for k in 0..2 {
        let f = state.field(k);
        let (min, peak) = (f.min(), f.max());
        if min < -NEGATIVITY_TOLERANCE * peak {
            return Err(KineticError::StepRejected {
                time,
                species: k + 1,
                min,
                peak,
            });
        }
    }
    Ok(())
}

fn stage(state: &MixtureState, h: f64, k: &(GridField, GridField)) -> Result<MixtureState> {
    state.with_fields(
        state.field(0).add_scaled(h, &k.0),
        state.field(1).add_scaled(h, &k.1),
    )
}

fn rk4(state: &MixtureState, config: &MixtureConfig, dt: f64) -> Result<MixtureState> {
    let k1 = rhs(state, config)?;
    let k2 = rhs(&stage(state, 0.5 * dt, &k1)?, config)?;
    let k3 = rhs(&stage(state, 0.5 * dt, &k2)?, config)?;
    let k4 = rhs(&stage(state, dt, &k3)?, config)?;
    let combine = |s: usize| {
        let (a, b, c, d) = match s {
            0 => (&k1.0, &k2.0, &k3.0, &k4.0),
            _ => (&k1.1, &k2.1, &k3.1, &k4.1),
        };
        let h = dt / 6.0;
        let values = state
            .field(s)
            .values()
            .iter()
            .enumerate()
            .map(|(i, f)| f + h * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]));
        GridField::from_vec(values.collect())
    };
    state.with_fields(combine(0), combine(1))
}

/// One RK4 step at the default stability factor.
pub fn step_homogeneous(
    state: &MixtureState,
    config: &MixtureConfig,
    dt: f64,
) -> Result<MixtureState> {
    step_homogeneous_at(state, config, dt, 0.0, DEFAULT_STABILITY_FACTOR)
}

/// One RK4 step from time `time`; `time + dt` is reported if the step is rejected.
pub fn step_homogeneous_at(
    state: &MixtureState,
    config: &MixtureConfig,
    dt: f64,
    time: f64,
    stability_factor: f64,
) -> Result<MixtureState> {
    check_stability(state, config, dt, stability_factor)?;
    let next = rk4(state, config, dt)?;
    check_positivity(&next, time + dt)?;
    Ok(next)
}

/// Number of steps of size `dt` covering `span`, rounding to the nearest
/// integer and never below one for a positive span.
fn steps_for(span: f64, dt: f64) -> usize {
    if span <= 0.0 {
        0
    } else {
        ((span / dt).round() as usize).max(1)
    }
}

#[derive(Clone, Debug)]
pub struct HomogeneousRun {
    pub initial: MixtureState,
    pub config: MixtureConfig,
    pub dt: f64,
    pub t_end: f64,
    /// Time between diagnostics records.
    pub cadence: f64,
    pub stability_factor: f64,
}

impl HomogeneousRun {
    pub fn new(
        initial: MixtureState,
        config: MixtureConfig,
        dt: f64,
        t_end: f64,
        cadence: f64,
    ) -> Self {
        Self {
            initial,
            config,
            dt,
            t_end,
            cadence,
            stability_factor: DEFAULT_STABILITY_FACTOR,
        }
    }

    pub fn total_steps(&self) -> usize {
        steps_for(self.t_end, self.dt)
    }

    /// Steps between records.
    pub fn record_every(&self) -> usize {
        steps_for(self.cadence, self.dt).max(1)
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput<S> {
    pub records: Vec<DiagnosticsRecord>,
    pub final_state: S,
}

pub fn run_homogeneous(run: &HomogeneousRun) -> Result<RunOutput<MixtureState>> {
    run_homogeneous_with(run, |_, _, _| {})
}

/// [`run_homogeneous`] calling `observer(step, time, state)` on the initial
/// state and after every accepted step.
pub fn run_homogeneous_with(
    run: &HomogeneousRun,
    mut observer: impl FnMut(usize, f64, &MixtureState),
) -> Result<RunOutput<MixtureState>> {
    let total = run.total_steps();
    let every = run.record_every();
    let mut state = run.initial.clone();
    let mut records = vec![DiagnosticsRecord::capture(0.0, &state, &run.config)?];
    observer(0, 0.0, &state);
    for step in 1..=total {
        let t0 = (step - 1) as f64 * run.dt;
        state = step_homogeneous_at(&state, &run.config, run.dt, t0, run.stability_factor)?;
        let t = step as f64 * run.dt;
        observer(step, t, &state);
        if step % every == 0 || step == total {
            records.push(DiagnosticsRecord::capture(t, &state, &run.config)?);
        }
    }
    Ok(RunOutput {
        records,
        final_state: state,
    })
}

/// Periodic slab of `cells.len()` equal cells on `[0, length)`.
#[derive(Clone, Debug)]
pub struct Transport1DRun {
    pub cells: Vec<MixtureState>,
    pub config: MixtureConfig,
    pub length: f64,
    /// Bound on `Δt·V/Δx`.
    pub cfl: f64,
    pub stability_factor: f64,
    pub time: f64,
}

impl Transport1DRun {
    pub fn new(cells: Vec<MixtureState>, config: MixtureConfig, length: f64) -> Self {
        Self {
            cells,
            config,
            length,
            cfl: 1.0,
            stability_factor: DEFAULT_STABILITY_FACTOR,
            time: 0.0,
        }
    }

    pub fn dx(&self) -> f64 {
        self.length / self.cells.len() as f64
    }

    /// Largest `Δt` meeting the CFL bound.
    pub fn cfl_dt(&self) -> f64 {
        self.cfl * self.dx() / self.cells[0].grid().extent()
    }

    /// Largest `Δt` meeting both the CFL bound and the collision stability bound.
    pub fn max_dt(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| stable_dt(c, &self.config, self.stability_factor))
            .fold(self.cfl_dt(), f64::min)
    }

    /// Upwind advection over `tau` for every velocity node, periodic in `x`.
    fn advect(&mut self, tau: f64) -> Result<()> {
        let nx = self.cells.len();
        let grid = self.cells[0].grid().clone();
        let ratio = tau / self.dx();
        let mut next: Vec<[GridField; 2]> = self.cells.iter().map(|c| c.fields().clone()).collect();
        for (j, v) in grid.velocities() {
            let c = ratio * v[0];
            if c == 0.0 {
                continue;
            }
            for k in 0..2 {
                for (i, out) in next.iter_mut().enumerate() {
                    let here = self.cells[i].field(k)[j];
                    let upwind = if c > 0.0 {
                        self.cells[(i + nx - 1) % nx].field(k)[j]
                    } else {
                        self.cells[(i + 1) % nx].field(k)[j]
                    };
                    out[k][j] = here - c.abs() * (here - upwind);
                }
            }
        }
        for (cell, [f1, f2]) in self.cells.iter_mut().zip(next) {
            cell.set_fields(f1, f2)?;
        }
        Ok(())
    }

    /// One Strang-split step: half advection, collision, half advection.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        let limit = self.cfl_dt();
        if dt > limit {
            return Err(KineticError::StabilityBound { dt, limit });
        }
        self.advect(0.5 * dt)?;
        for cell in &mut self.cells {
            *cell = step_homogeneous_at(cell, &self.config, dt, self.time, self.stability_factor)?;
        }
        self.advect(0.5 * dt)?;
        self.time += dt;
        for cell in &self.cells {
            check_positivity(cell, self.time)?;
        }
        Ok(())
    }

    pub fn capture(&self) -> Result<DiagnosticsRecord> {
        DiagnosticsRecord::capture_domain(self.time, &self.cells, self.dx(), &self.config)
    }
}

/// [`Transport1DRun::step`] on a copy.
pub fn step_transport_1d(run: &Transport1DRun, dt: f64) -> Result<Transport1DRun> {
    let mut next = run.clone();
    next.step(dt)?;
    Ok(next)
}

/// Advances `run` to `t_end` in steps of `dt`, recording every `cadence`.
/// `observer(step, time, run)` sees the initial slab and every accepted step.
pub fn run_transport_with(
    run: &mut Transport1DRun,
    dt: f64,
    t_end: f64,
    cadence: f64,
    mut observer: impl FnMut(usize, f64, &Transport1DRun),
) -> Result<Vec<DiagnosticsRecord>> {
    let total = steps_for(t_end, dt);
    let every = steps_for(cadence, dt).max(1);
    let start = run.time;
    let mut records = vec![run.capture()?];
    observer(0, run.time, run);
    for step in 1..=total {
        run.step(dt)?;
        run.time = start + step as f64 * dt;
        observer(step, run.time, run);
        if step % every == 0 || step == total {
            records.push(run.capture()?);
        }
    }
    Ok(records)
}
