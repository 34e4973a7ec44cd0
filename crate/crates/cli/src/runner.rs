//! Builds the initial state of a scenario, runs it and writes the results.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use mixkin_core::closures::{build_gaussian, build_maxwellian, validate_restrictions};
use mixkin_core::diagnostics::fmt17;
use mixkin_core::moments::mixture_invariants;
use mixkin_core::solver::{
    run_homogeneous_with, run_transport_with, stability_rate, HomogeneousRun, Transport1DRun,
};
use mixkin_core::vgrid::auto_extent;
use mixkin_core::{
    DiagnosticsRecord, GridField, KineticError, MixtureState, Moments, VelocityGrid,
};
use thiserror::Error;

use crate::config::{Extent, Mode, Problem, ScenarioConfig, SpeciesSpec, TimeStep};
use crate::dump;

/// Fraction of the inverse collision rate used when `run.dt = auto`.
const AUTO_DT_FRACTION: f64 = 0.25;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{}", .0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Problem>),
    #[error(transparent)]
    Kinetic(#[from] KineticError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Invalid(_) => 3,
            RunError::Kinetic(_) => 4,
            RunError::Io(_) => 1,
        }
    }
}

/// Initial cells, grid and time step of a validated scenario.
#[derive(Debug)]
pub struct Prepared {
    pub grid: Arc<VelocityGrid>,
    pub cells: Vec<MixtureState>,
    pub dt: f64,
}

/// Species moments used to size the velocity box: every initial component,
/// each species as a whole, and the joint equilibrium of the pair.
fn extent_states(cfg: &ScenarioConfig) -> Vec<(Moments, f64)> {
    let masses = [cfg.mixture.mass1, cfg.mixture.mass2];
    let mut out = Vec::new();
    for (s, m) in cfg.species.iter().zip(masses) {
        out.extend(s.components().into_iter().map(|c| (c, m)));
        out.push((s.moments(m), m));
    }
    let a = cfg.species[0].moments(masses[0]);
    let b = cfg.species[1].moments(masses[1]);
    let rho = a.density * masses[0] + b.density * masses[1];
    let n = a.density + b.density;
    let (p, e) = mixture_invariants(&a, &b, masses[0], masses[1]);
    let u = [p[0] / rho, p[1] / rho, p[2] / rho];
    let t = (e - 0.5 * rho * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2])) / (1.5 * n);
    let eq = Moments::maxwellian(n, u, t);
    out.push((eq, masses[0]));
    out.push((eq, masses[1]));
    out
}

fn sample_species(
    s: &SpeciesSpec,
    mass: f64,
    factor: f64,
    grid: &VelocityGrid,
) -> Result<GridField, KineticError> {
    let mut total = grid.zeros();
    for c in s.components() {
        let part = if c.anisotropy() == 0.0 {
            build_maxwellian(c.density * factor, &c.velocity, c.temperature, mass, grid)
        } else {
            build_gaussian(
                c.density * factor,
                &c.velocity,
                &c.pressure_per_density(),
                mass,
                grid,
            )?
        };
        total = total.add_scaled(1.0, &part);
    }
    Ok(total)
}

pub fn prepare(cfg: &ScenarioConfig) -> Result<Prepared, RunError> {
    let mut problems = cfg.validate();
    if problems.is_empty() {
        let n1 = cfg.species[0].moments(cfg.mixture.mass1).density;
        let n2 = cfg.species[1].moments(cfg.mixture.mass2).density;
        problems.extend(
            validate_restrictions(&cfg.mixture, n1, n2)
                .into_iter()
                .map(|v| Problem::new(format!("mixture.{}", v.parameter), v.value, v.bound)),
        );
    }
    if !problems.is_empty() {
        return Err(RunError::Invalid(problems));
    }

    let extent = match cfg.grid.extent {
        Extent::Fixed(v) => v,
        Extent::Auto => auto_extent(&extent_states(cfg), cfg.grid.safety),
    };
    let grid = Arc::new(VelocityGrid::new(extent, cfg.grid.points)?);
    let masses = [cfg.mixture.mass1, cfg.mixture.mass2];

    let (count, length) = match cfg.run.mode {
        Mode::Homogeneous => (1, 1.0),
        Mode::Transport1D => (cfg.run.cells, cfg.run.length),
    };
    let dx = length / count as f64;
    let mut cells = Vec::with_capacity(count);
    for i in 0..count {
        let x = (i as f64 + 0.5) * dx;
        let mut fields = Vec::with_capacity(2);
        for (s, m) in cfg.species.iter().zip(masses) {
            let factor = match cfg.run.mode {
                Mode::Homogeneous => 1.0,
                Mode::Transport1D => s.density_factor(x, length),
            };
            fields.push(sample_species(s, m, factor, &grid)?);
        }
        let f2 = fields.pop().unwrap();
        let f1 = fields.pop().unwrap();
        cells.push(MixtureState::new(Arc::clone(&grid), masses, f1, f2)?);
    }

    let rate = cells
        .iter()
        .map(|c| stability_rate(c, &cfg.mixture))
        .fold(0.0, f64::max);
    let cfl_dt = match cfg.run.mode {
        Mode::Homogeneous => f64::INFINITY,
        Mode::Transport1D => cfg.run.cfl * dx / extent,
    };
    let dt = match cfg.run.dt {
        TimeStep::Auto => {
            let collision = if rate > 0.0 {
                AUTO_DT_FRACTION / rate
            } else {
                cfg.run.cadence
            };
            collision.min(cfl_dt).min(cfg.run.cadence)
        }
        TimeStep::Fixed(dt) => {
            let limit = cfg.run.stability / rate;
            if rate > 0.0 && dt > limit {
                problems.push(Problem::new(
                    "run.dt".into(),
                    dt,
                    format!("dt <= {limit} (collision stability)"),
                ));
            }
            if dt > cfl_dt {
                problems.push(Problem::new(
                    "run.dt".into(),
                    dt,
                    format!("dt <= {cfl_dt} (CFL)"),
                ));
            }
            dt
        }
    };
    if !problems.is_empty() {
        return Err(RunError::Invalid(problems));
    }
    Ok(Prepared { grid, cells, dt })
}

/// Headline numbers written to `summary.txt`.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub rows: usize,
    pub final_time: f64,
    pub final_gap_u: f64,
    pub final_gap_t: f64,
    pub final_aniso: [f64; 2],
    pub mass_drift: [f64; 2],
    pub momentum_drift: f64,
    pub energy_drift: f64,
    pub min_entropy_slope: f64,
    pub max_entropy_slope: f64,
    pub max_entropy_production: f64,
    pub lemma2_min_slack: f64,
}

impl Summary {
    /// Drifts are maxima over all rows relative to the first row. Momentum is
    /// measured against `max(|p₀|, Σ m n √(T/m))`, since the total momentum
    /// itself may vanish.
    pub fn from_records(records: &[DiagnosticsRecord], masses: [f64; 2]) -> Self {
        let first = &records[0];
        let last = records.last().unwrap();
        let p0 = first.momentum;
        let thermal: f64 = (0..2)
            .map(|k| {
                let s = &first.species[k];
                masses[k] * s.density * (s.temperature / masses[k]).sqrt()
            })
            .sum();
        let pscale = (p0[0] * p0[0] + p0[1] * p0[1] + p0[2] * p0[2])
            .sqrt()
            .max(thermal);
        let mut s = Summary {
            rows: records.len(),
            final_time: last.time,
            final_gap_u: last.gap_u,
            final_gap_t: last.gap_t,
            final_aniso: last.aniso,
            mass_drift: [0.0; 2],
            momentum_drift: 0.0,
            energy_drift: 0.0,
            min_entropy_slope: f64::INFINITY,
            max_entropy_slope: f64::NEG_INFINITY,
            max_entropy_production: f64::NEG_INFINITY,
            lemma2_min_slack: f64::INFINITY,
        };
        for r in records {
            for k in 0..2 {
                s.mass_drift[k] =
                    s.mass_drift[k].max((r.mass[k] - first.mass[k]).abs() / first.mass[k]);
            }
            for (now, start) in r.momentum.iter().zip(&p0) {
                s.momentum_drift = s.momentum_drift.max((now - start).abs() / pscale);
            }
            s.energy_drift = s
                .energy_drift
                .max((r.energy - first.energy).abs() / first.energy.abs());
            s.max_entropy_production = s.max_entropy_production.max(r.entropy_production);
            s.lemma2_min_slack = s.lemma2_min_slack.min(r.lemma2_slack);
        }
        for w in records.windows(2) {
            let slope = (w[1].entropy - w[0].entropy) / (w[1].time - w[0].time);
            s.min_entropy_slope = s.min_entropy_slope.min(slope);
            s.max_entropy_slope = s.max_entropy_slope.max(slope);
        }
        s
    }

    pub fn max_drift(&self) -> f64 {
        [
            self.mass_drift[0],
            self.mass_drift[1],
            self.momentum_drift,
            self.energy_drift,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn to_text(&self, scenario: &str, cfg: &ScenarioConfig, dt: f64) -> String {
        let mut lines = vec![
            format!("scenario = {scenario}"),
            format!("variant = {}", cfg.mixture.variant.name()),
            format!("dt = {}", fmt17(dt)),
            format!("rows = {}", self.rows),
            format!("final_time = {}", fmt17(self.final_time)),
            format!("final_gap_u = {}", fmt17(self.final_gap_u)),
            format!("final_gap_t = {}", fmt17(self.final_gap_t)),
            format!("final_aniso1 = {}", fmt17(self.final_aniso[0])),
            format!("final_aniso2 = {}", fmt17(self.final_aniso[1])),
            format!("mass1_drift = {}", fmt17(self.mass_drift[0])),
            format!("mass2_drift = {}", fmt17(self.mass_drift[1])),
            format!("momentum_drift = {}", fmt17(self.momentum_drift)),
            format!("energy_drift = {}", fmt17(self.energy_drift)),
        ];
        for (name, v) in [
            ("min_entropy_slope", self.min_entropy_slope),
            ("max_entropy_slope", self.max_entropy_slope),
        ] {
            // a single row has no slope
            let text = if v.is_finite() {
                fmt17(v)
            } else {
                "nan".into()
            };
            lines.push(format!("{name} = {text}"));
        }
        lines.push(format!(
            "max_entropy_production = {}",
            fmt17(self.max_entropy_production)
        ));
        lines.push(format!(
            "lemma2_min_slack = {}",
            fmt17(self.lemma2_min_slack)
        ));
        lines.join("\n") + "\n"
    }
}

pub struct Outcome {
    pub records: Vec<DiagnosticsRecord>,
    pub summary: Summary,
    pub dumps: Vec<PathBuf>,
    pub dt: f64,
}

fn write_csv(path: &Path, records: &[DiagnosticsRecord]) -> io::Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "{}", DiagnosticsRecord::csv_header())?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    out.flush()
}

/// Runs `cfg`, writing `diagnostics.csv`, `summary.txt` and, when
/// `dump_every` is set, `dump_t<step>.bin` files into `out_dir`.
pub fn execute(
    cfg: &ScenarioConfig,
    scenario: &str,
    out_dir: &Path,
    dump_every: Option<usize>,
) -> Result<Outcome, RunError> {
    let prepared = prepare(cfg)?;
    fs::create_dir_all(out_dir)?;
    let points = prepared.grid.points();
    let dt = prepared.dt;
    let mut dumps = Vec::new();
    let mut dump_error: Option<io::Error> = None;
    let mut maybe_dump = |step: usize, cells: &[[&GridField; 2]]| {
        let Some(every) = dump_every else { return };
        if !step.is_multiple_of(every) || dump_error.is_some() {
            return;
        }
        let path = out_dir.join(format!("dump_t{step:06}.bin"));
        match dump::write(&path, points, cells) {
            Ok(()) => dumps.push(path),
            Err(e) => dump_error = Some(e),
        }
    };

    let records = match cfg.run.mode {
        Mode::Homogeneous => {
            let initial = prepared.cells.into_iter().next().unwrap();
            let mut run =
                HomogeneousRun::new(initial, cfg.mixture, dt, cfg.run.t_end, cfg.run.cadence);
            run.stability_factor = cfg.run.stability;
            run_homogeneous_with(&run, |step, _, s| {
                maybe_dump(step, &[[s.field(0), s.field(1)]])
            })?
            .records
        }
        Mode::Transport1D => {
            let mut slab = Transport1DRun::new(prepared.cells, cfg.mixture, cfg.run.length);
            slab.cfl = cfg.run.cfl;
            slab.stability_factor = cfg.run.stability;
            run_transport_with(
                &mut slab,
                dt,
                cfg.run.t_end,
                cfg.run.cadence,
                |step, _, s| {
                    let cells: Vec<[&GridField; 2]> =
                        s.cells.iter().map(|c| [c.field(0), c.field(1)]).collect();
                    maybe_dump(step, &cells)
                },
            )?
        }
    };
    if let Some(e) = dump_error {
        return Err(e.into());
    }

    write_csv(&out_dir.join("diagnostics.csv"), &records)?;
    let summary = Summary::from_records(&records, [cfg.mixture.mass1, cfg.mixture.mass2]);
    fs::write(
        out_dir.join("summary.txt"),
        summary.to_text(scenario, cfg, dt),
    )?;
    Ok(Outcome {
        records,
        summary,
        dumps,
        dt,
    })
}
