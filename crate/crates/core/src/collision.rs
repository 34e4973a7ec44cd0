//! Right-hand side of the two-species relaxation system.
//!
//! ```text
//! Q₁ = ν₁₁ n₁ (target₁ − f₁) + ν₁₂ n₂ (target₁₂ − f₁)
//! Q₂ = ν₂₂ n₂ (target₂ − f₂) + ν₂₁ n₁ (target₂₁ − f₂)
//! ```
//!
//! | variant    | self target | interspecies target |
//! |------------|-------------|---------------------|
//! | BGK        | `Mₖ`        | `Mₖₗ`               |
//! | ES single  | `Gₖ`        | `Mₖₗ`               |
//! | ES full A  | `Gₖ`        | `Gₖₗ` (mixed tensors)  |
//! | ES full B  | `Gₖ`        | `Gₖₗ` (own tensor + partner temperature) |
//!
//! Targets are always rebuilt from the current moments. A [`MixtureState`]
//! caches the targets of its fields for one configuration; mutating the fields
//! bumps the version and drops the cache.

use std::borrow::Cow;
use std::sync::{Arc, OnceLock};

use crate::closures::{
    build_gaussian, build_maxwellian, interspecies_params, interspecies_tensors, match_density,
    tensor_single, Frequencies, MixtureConfig, TargetMode, Variant,
};
use crate::error::Result;
use crate::moments::{compute_moments, Moments};
use crate::vgrid::{GridField, VelocityGrid};
use crate::{norm_sq, Vec3};

/// The four relaxation targets of one state.
#[derive(Clone, Debug, PartialEq)]
pub struct Targets {
    pub self1: GridField,
    pub cross12: GridField,
    pub self2: GridField,
    pub cross21: GridField,
}

#[derive(Debug)]
struct CachedTargets {
    config: MixtureConfig,
    targets: Targets,
}

/// Distributions of both species on a shared velocity grid, with their
/// moments.
#[derive(Debug)]
pub struct MixtureState {
    grid: Arc<VelocityGrid>,
    masses: [f64; 2],
    fields: [GridField; 2],
    moments: [Moments; 2],
    version: u64,
    cache: OnceLock<CachedTargets>,
}

impl Clone for MixtureState {
    fn clone(&self) -> Self {
        Self {
            grid: Arc::clone(&self.grid),
            masses: self.masses,
            fields: self.fields.clone(),
            moments: self.moments,
            version: self.version,
            cache: OnceLock::new(),
        }
    }
}

impl MixtureState {
    pub fn new(
        grid: Arc<VelocityGrid>,
        masses: [f64; 2],
        f1: GridField,
        f2: GridField,
    ) -> Result<Self> {
        let moments = [
            compute_moments(&f1, &grid, masses[0])?,
            compute_moments(&f2, &grid, masses[1])?,
        ];
        Ok(Self {
            grid,
            masses,
            fields: [f1, f2],
            moments,
            version: 0,
            cache: OnceLock::new(),
        })
    }

    /// Both species sampled as Maxwellians with the given moments.
    pub fn maxwellian(
        grid: Arc<VelocityGrid>,
        masses: [f64; 2],
        m1: &Moments,
        m2: &Moments,
    ) -> Result<Self> {
        let f1 = build_maxwellian(m1.density, &m1.velocity, m1.temperature, masses[0], &grid);
        let f2 = build_maxwellian(m2.density, &m2.velocity, m2.temperature, masses[1], &grid);
        Self::new(grid, masses, f1, f2)
    }

    pub fn grid(&self) -> &Arc<VelocityGrid> {
        &self.grid
    }

    pub fn masses(&self) -> [f64; 2] {
        self.masses
    }

    pub fn field(&self, species: usize) -> &GridField {
        &self.fields[species]
    }

    pub fn fields(&self) -> &[GridField; 2] {
        &self.fields
    }

    pub fn moments(&self, species: usize) -> &Moments {
        &self.moments[species]
    }

    /// Incremented on every field update.
    pub fn version(&self) -> u64 {
        self.version
    }

    /// Replaces both distributions and recomputes the moments.
    pub fn set_fields(&mut self, f1: GridField, f2: GridField) -> Result<()> {
        let moments = [
            compute_moments(&f1, &self.grid, self.masses[0])?,
            compute_moments(&f2, &self.grid, self.masses[1])?,
        ];
        self.fields = [f1, f2];
        self.moments = moments;
        self.version += 1;
        self.cache = OnceLock::new();
        Ok(())
    }

    /// A state on the same grid with new fields.
    pub fn with_fields(&self, f1: GridField, f2: GridField) -> Result<Self> {
        let mut s = Self::new(Arc::clone(&self.grid), self.masses, f1, f2)?;
        s.version = self.version + 1;
        Ok(s)
    }

    /// `|u₁ − u₂|²` of the current moments.
    pub fn drift_sq(&self) -> f64 {
        let (a, b) = (&self.moments[0].velocity, &self.moments[1].velocity);
        norm_sq(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]])
    }

    /// Relaxation targets for `config`, served from the cache when possible.
    pub fn targets(&self, config: &MixtureConfig) -> Result<Cow<'_, Targets>> {
        if let Some(c) = self.cache.get() {
            if c.config == *config {
                return Ok(Cow::Borrowed(&c.targets));
            }
            return build_targets(&self.grid, &self.moments[0], &self.moments[1], config)
                .map(Cow::Owned);
        }
        let targets = build_targets(&self.grid, &self.moments[0], &self.moments[1], config)?;
        match self.cache.set(CachedTargets {
            config: *config,
            targets,
        }) {
            Ok(()) => Ok(Cow::Borrowed(
                &self.cache.get().expect("cache was just set").targets,
            )),
            Err(lost) => Ok(Cow::Owned(lost.targets)),
        }
    }
}

fn finish(
    mut field: GridField,
    n: f64,
    mode: TargetMode,
    grid: &VelocityGrid,
) -> Result<GridField> {
    if mode == TargetMode::MassExact {
        match_density(&mut field, n, grid)?;
    }
    Ok(field)
}

/// Builds the four targets from the species moments.
pub fn build_targets(
    grid: &VelocityGrid,
    m1: &Moments,
    m2: &Moments,
    config: &MixtureConfig,
) -> Result<Targets> {
    let (mass1, mass2) = (config.mass1, config.mass2);
    let mode = config.target_mode;

    let (self1, self2) = if config.variant.uses_self_tensor() {
        (
            build_gaussian(
                m1.density,
                &m1.velocity,
                &tensor_single(m1, config.mu1),
                mass1,
                grid,
            )?,
            build_gaussian(
                m2.density,
                &m2.velocity,
                &tensor_single(m2, config.mu2),
                mass2,
                grid,
            )?,
        )
    } else {
        (
            build_maxwellian(m1.density, &m1.velocity, m1.temperature, mass1, grid),
            build_maxwellian(m2.density, &m2.velocity, m2.temperature, mass2, grid),
        )
    };

    let p = interspecies_params(m1, m2, config)?;
    let (cross12, cross21) = match config.variant {
        Variant::Bgk | Variant::EsSingle => (
            build_maxwellian(m1.density, &p.u12, p.t12, mass1, grid),
            build_maxwellian(m2.density, &p.u21, p.t21, mass2, grid),
        ),
        Variant::EsFullA | Variant::EsFullB => {
            let (t12, t21) = interspecies_tensors(m1, m2, config)?;
            (
                build_gaussian(m1.density, &p.u12, &t12, mass1, grid)?,
                build_gaussian(m2.density, &p.u21, &t21, mass2, grid)?,
            )
        }
    };

    Ok(Targets {
        self1: finish(self1, m1.density, mode, grid)?,
        cross12: finish(cross12, m1.density, mode, grid)?,
        self2: finish(self2, m2.density, mode, grid)?,
        cross21: finish(cross21, m2.density, mode, grid)?,
    })
}

/// Collision right-hand side for given targets and frequencies.
pub fn rhs_from_targets(
    state: &MixtureState,
    targets: &Targets,
    freq: &Frequencies,
) -> (GridField, GridField) {
    let n1 = state.moments[0].density;
    let n2 = state.moments[1].density;
    let relax = |f: &GridField, own: &GridField, cross: &GridField, a: f64, b: f64| {
        GridField::from_vec(
            f.values()
                .iter()
                .zip(own.values())
                .zip(cross.values())
                .map(|((f, own), cross)| a * (own - f) + b * (cross - f))
                .collect(),
        )
    };
    (
        relax(
            &state.fields[0],
            &targets.self1,
            &targets.cross12,
            freq.nu11 * n1,
            freq.nu12 * n2,
        ),
        relax(
            &state.fields[1],
            &targets.self2,
            &targets.cross21,
            freq.nu22 * n2,
            freq.nu21 * n1,
        ),
    )
}

pub fn rhs(state: &MixtureState, config: &MixtureConfig) -> Result<(GridField, GridField)> {
    let targets = state.targets(config)?;
    Ok(rhs_from_targets(state, &targets, &config.frequencies()))
}

/// Quadrature moments of the collision right-hand side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantRates {
    pub mass: [f64; 2],
    pub momentum: Vec3,
    pub energy: f64,
}

pub fn collision_invariants_residual(
    state: &MixtureState,
    config: &MixtureConfig,
) -> Result<InvariantRates> {
    let (q1, q2) = rhs(state, config)?;
    let grid = state.grid();
    let mut mass = [0.0; 2];
    let mut momentum = [0.0; 3];
    let mut energy = 0.0;
    for (k, (q, m)) in [(&q1, config.mass1), (&q2, config.mass2)]
        .into_iter()
        .enumerate()
    {
        mass[k] = grid.integrate(q)?;
        for (d, p) in momentum.iter_mut().enumerate() {
            *p += m * grid.integrate_with(q, |v| v[d])?;
        }
        energy += 0.5 * m * grid.integrate_with(q, |v| norm_sq(&v))?;
    }
    Ok(InvariantRates {
        mass,
        momentum,
        energy,
    })
}
