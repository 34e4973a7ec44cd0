//! Entropy, entropy production and distances from global equilibrium.
//!
//! `H(f₁, f₂) = ∫ f₁ ln f₁ + f₂ ln f₂ dv` is non-increasing along solutions
//! and the production `S = Σₖ ∫ ln fₖ Qₖ dv` is non-positive, vanishing only at
//! a global Maxwellian equilibrium with shared velocity and temperature.

use crate::closures::{
    build_maxwellian, interspecies_tensors, match_density, MixtureConfig, TargetMode,
};
use crate::collision::{rhs, MixtureState};
use crate::error::Result;
use crate::moments::mixture_invariants;
use crate::sym3::SymTensor3;
use crate::vgrid::{GridField, VelocityGrid};
use crate::{norm_sq, sub, Vec3};

/// Floor applied inside logarithms.
pub const LOG_FLOOR: f64 = 1e-300;

fn ln_floor(x: f64) -> f64 {
    x.max(LOG_FLOOR).ln()
}

/// `∫ f ln f dv` with `0 ln 0 = 0`.
pub fn entropy_of(f: &GridField, grid: &VelocityGrid) -> f64 {
    grid.weights()
        .iter()
        .zip(f.values())
        .map(|(w, &f)| if f == 0.0 { 0.0 } else { w * f * ln_floor(f) })
        .sum()
}

pub fn entropy(f1: &GridField, f2: &GridField, grid: &VelocityGrid) -> f64 {
    entropy_of(f1, grid) + entropy_of(f2, grid)
}

/// `∫ ln f · q dv`.
fn log_weighted(f: &GridField, q: &GridField, grid: &VelocityGrid) -> f64 {
    grid.weights()
        .iter()
        .zip(f.values().iter().zip(q.values()))
        .map(|(w, (&f, q))| w * ln_floor(f) * q)
        .sum()
}

/// Entropy production of all four collision terms.
pub fn entropy_production(state: &MixtureState, config: &MixtureConfig) -> Result<f64> {
    let (q1, q2) = rhs(state, config)?;
    let grid = state.grid();
    Ok(log_weighted(state.field(0), &q1, grid) + log_weighted(state.field(1), &q2, grid))
}

/// `ln[det(𝒯₁₂)^ε det(𝒯₂₁)] − ln[det(ℙ₁/n₁)^ε det(ℙ₂/n₂)]`; non-negative for
/// the variant-B tensors.
pub fn lemma2_slack(
    t12: &SymTensor3,
    t21: &SymTensor3,
    p1n: &SymTensor3,
    p2n: &SymTensor3,
    epsilon: f64,
) -> f64 {
    epsilon * t12.det().ln() + t21.det().ln() - epsilon * p1n.det().ln() - p2n.det().ln()
}

/// [`lemma2_slack`] of the configured interspecies tensors at `state`.
pub fn state_lemma2_slack(state: &MixtureState, config: &MixtureConfig) -> Result<f64> {
    let (m1, m2) = (state.moments(0), state.moments(1));
    let (t12, t21) = interspecies_tensors(m1, m2, config)?;
    Ok(lemma2_slack(
        &t12,
        &t21,
        &m1.pressure_per_density(),
        &m2.pressure_per_density(),
        config.epsilon,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquilibriumDistance {
    /// `|u₁ − u₂|`.
    pub gap_u: f64,
    /// `|T₁ − T₂|`.
    pub gap_t: f64,
    /// Max-norm deviation of `ℙₖ/(nₖTₖ)` from the identity.
    pub aniso: [f64; 2],
    /// Max-norm of `(fₖ − Mₖ)/peak(Mₖ)` with `Mₖ` the Maxwellian of `fₖ`'s moments.
    pub maxwellian_residual: [f64; 2],
}

impl EquilibriumDistance {
    pub fn max(&self) -> f64 {
        [
            self.gap_u,
            self.gap_t,
            self.aniso[0],
            self.aniso[1],
            self.maxwellian_residual[0],
            self.maxwellian_residual[1],
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn equilibrium_distance(state: &MixtureState, mode: TargetMode) -> Result<EquilibriumDistance> {
    let grid = state.grid();
    let masses = state.masses();
    let mut aniso = [0.0; 2];
    let mut maxwellian_residual = [0.0; 2];
    for k in 0..2 {
        let m = state.moments(k);
        aniso[k] = m.anisotropy();
        let mut mk = build_maxwellian(m.density, &m.velocity, m.temperature, masses[k], grid);
        if mode == TargetMode::MassExact {
            match_density(&mut mk, m.density, grid)?;
        }
        maxwellian_residual[k] = state.field(k).max_abs_diff(&mk) / mk.max();
    }
    let (m1, m2) = (state.moments(0), state.moments(1));
    Ok(EquilibriumDistance {
        gap_u: norm_sq(&sub(&m1.velocity, &m2.velocity)).sqrt(),
        gap_t: (m1.temperature - m2.temperature).abs(),
        aniso,
        maxwellian_residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpeciesSummary {
    pub density: f64,
    pub velocity: Vec3,
    pub temperature: f64,
    /// Eigenvalues of `ℙ/n`, ascending.
    pub eigenvalues: [f64; 3],
}

/// One row of the diagnostics time series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticsRecord {
    pub time: f64,
    pub species: [SpeciesSummary; 2],
    pub mass: [f64; 2],
    pub momentum: Vec3,
    pub energy: f64,
    pub entropy: f64,
    pub entropy_production: f64,
    pub gap_u: f64,
    pub gap_t: f64,
    pub aniso: [f64; 2],
    pub lemma2_slack: f64,
}

/// Column names of [`DiagnosticsRecord::csv_row`], in order.
pub const CSV_COLUMNS: [&str; 30] = [
    "t",
    "n1",
    "u1x",
    "u1y",
    "u1z",
    "T1",
    "n2",
    "u2x",
    "u2y",
    "u2z",
    "T2",
    "lam1_1",
    "lam1_2",
    "lam1_3",
    "lam2_1",
    "lam2_2",
    "lam2_3",
    "mass1",
    "mass2",
    "momX",
    "momY",
    "momZ",
    "energy",
    "H",
    "S",
    "gapU",
    "gapT",
    "aniso1",
    "aniso2",
    "lemma2_slack",
];

/// Formats with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn summarize(state: &MixtureState, k: usize) -> SpeciesSummary {
    let m = state.moments(k);
    SpeciesSummary {
        density: m.density,
        velocity: m.velocity,
        temperature: m.temperature,
        eigenvalues: m.pressure_per_density().eigenvalues(),
    }
}

impl DiagnosticsRecord {
    /// Diagnostics of a space-homogeneous state.
    pub fn capture(time: f64, state: &MixtureState, config: &MixtureConfig) -> Result<Self> {
        let (m1, m2) = (state.moments(0), state.moments(1));
        let (momentum, energy) = mixture_invariants(m1, m2, config.mass1, config.mass2);
        let distance = equilibrium_distance(state, config.target_mode)?;
        Ok(Self {
            time,
            species: [summarize(state, 0), summarize(state, 1)],
            mass: [m1.density, m2.density],
            momentum,
            energy,
            entropy: entropy(state.field(0), state.field(1), state.grid()),
            entropy_production: entropy_production(state, config)?,
            gap_u: distance.gap_u,
            gap_t: distance.gap_t,
            aniso: distance.aniso,
            lemma2_slack: state_lemma2_slack(state, config)?,
        })
    }

    /// Diagnostics of a periodic slab of cells of width `dx`.
    ///
    /// Species columns describe the cell-averaged distribution; masses, momentum,
    /// energy, entropy and entropy production are integrals over the slab; the
    /// Lemma-2 slack is the minimum over cells.
    pub fn capture_domain(
        time: f64,
        cells: &[MixtureState],
        dx: f64,
        config: &MixtureConfig,
    ) -> Result<Self> {
        let first = &cells[0];
        let len = first.grid().len();
        let mut avg = [vec![0.0; len], vec![0.0; len]];
        let mut mass = [0.0; 2];
        let mut momentum = [0.0; 3];
        let mut energy = 0.0;
        let mut h = 0.0;
        let mut s = 0.0;
        let mut slack = f64::INFINITY;
        let inv = 1.0 / cells.len() as f64;
        for cell in cells {
            for (k, acc) in avg.iter_mut().enumerate() {
                for (a, f) in acc.iter_mut().zip(cell.field(k).values()) {
                    *a += inv * f;
                }
                mass[k] += dx * cell.moments(k).density;
            }
            let (p, e) =
                mixture_invariants(cell.moments(0), cell.moments(1), config.mass1, config.mass2);
            for d in 0..3 {
                momentum[d] += dx * p[d];
            }
            energy += dx * e;
            h += dx * entropy(cell.field(0), cell.field(1), cell.grid());
            s += dx * entropy_production(cell, config)?;
            slack = slack.min(state_lemma2_slack(cell, config)?);
        }
        let [a1, a2] = avg;
        let mean = first.with_fields(GridField::from_vec(a1), GridField::from_vec(a2))?;
        let distance = equilibrium_distance(&mean, config.target_mode)?;
        Ok(Self {
            time,
            species: [summarize(&mean, 0), summarize(&mean, 1)],
            mass,
            momentum,
            energy,
            entropy: h,
            entropy_production: s,
            gap_u: distance.gap_u,
            gap_t: distance.gap_t,
            aniso: distance.aniso,
            lemma2_slack: slack,
        })
    }

    pub fn csv_header() -> String {
        CSV_COLUMNS.join(",")
    }

    pub fn values(&self) -> [f64; 30] {
        let [a, b] = &self.species;
        [
            self.time,
            a.density,
            a.velocity[0],
            a.velocity[1],
            a.velocity[2],
            a.temperature,
            b.density,
            b.velocity[0],
            b.velocity[1],
            b.velocity[2],
            b.temperature,
            a.eigenvalues[0],
            a.eigenvalues[1],
            a.eigenvalues[2],
            b.eigenvalues[0],
            b.eigenvalues[1],
            b.eigenvalues[2],
            self.mass[0],
            self.mass[1],
            self.momentum[0],
            self.momentum[1],
            self.momentum[2],
            self.energy,
            self.entropy,
            self.entropy_production,
            self.gap_u,
            self.gap_t,
            self.aniso[0],
            self.aniso[1],
            self.lemma2_slack,
        ]
    }

    pub fn csv_row(&self) -> String {
        self.values()
            .iter()
            .map(|v| fmt17(*v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Centered finite-difference `dH/dt` at the interior records.
pub fn entropy_slope_centered(records: &[DiagnosticsRecord]) -> Vec<(f64, f64)> {
    records
        .windows(3)
        .map(|w| {
            (
                w[1].time,
                (w[2].entropy - w[0].entropy) / (w[2].time - w[0].time),
            )
        })
        .collect()
}
