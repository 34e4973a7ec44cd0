use thiserror::Error;

pub type Result<T> = std::result::Result<T, KineticError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KineticError {
    #[error("tensor is singular or ill-conditioned (det = {det:e}, condition = {condition:e})")]
    SingularTensor { det: f64, condition: f64 },

    #[error("tensor {what} is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite {
        what: &'static str,
        min_eigenvalue: f64,
    },

    #[error("velocity grid needs an odd point count >= 9, got {points}")]
    BadResolution { points: usize },

    #[error("velocity grid extent must be positive and finite, got {extent}")]
    BadExtent { extent: f64 },

    #[error("field has {got} values but the grid has {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },

    #[error("density {density:e} is too small for moments to be defined")]
    VacuumState { density: f64 },

    #[error("temperature {which} = {value} is not positive")]
    NonpositiveTemperature { which: &'static str, value: f64 },

    #[error("no admissible root of the mu21 restriction (roots: {roots:?})")]
    NoAdmissibleMu21 { roots: Vec<f64> },

    #[error("time step {dt} exceeds the stability bound {limit}")]
    StabilityBound { dt: f64, limit: f64 },

    #[error("step rejected at t = {time}: species {species} has value {min:e} below tolerance (peak {peak:e})")]
    StepRejected {
        time: f64,
        species: usize,
        min: f64,
        peak: f64,
    },
}
