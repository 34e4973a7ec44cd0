//! Discrete-velocity simulation of a two-species gas mixture relaxing under
//! BGK and ES-BGK collision operators.
//!
//! Velocity space is a truncated cubic lattice ([`vgrid`]); every velocity
//! integral is a quadrature over that lattice. The crate is organised bottom-up:
//!
//! - [`sym3`]: symmetric 3x3 tensors (pressure and relaxation tensors)
//! - [`vgrid`]: the velocity lattice, its quadrature weights and grid fields
//! - [`moments`]: density, mean velocity, temperature and pressure tensor
//! - [`closures`]: model parameters, interspecies closures and relaxation targets
//! - [`collision`]: right-hand side of the four model variants
//! - [`solver`]: homogeneous relaxation and 1D periodic transport
//! - [`diagnostics`]: entropy, entropy production, equilibrium distances
//!
//! Temperatures are in energy units (Boltzmann's constant is 1).

pub mod closures;
pub mod collision;
pub mod diagnostics;
pub mod error;
pub mod moments;
pub mod solver;
pub mod sym3;
pub mod vgrid;

pub use closures::{Frequencies, MixtureConfig, TargetMode, Variant, Violation};
pub use collision::MixtureState;
pub use diagnostics::DiagnosticsRecord;
pub use error::{KineticError, Result};
pub use moments::Moments;
pub use sym3::SymTensor3;
pub use vgrid::{GridField, VelocityGrid};

/// Plain 3-vector used for velocities and momenta.
pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm_sq(a: &Vec3) -> f64 {
    dot(a, a)
}

pub(crate) fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
