//! Macroscopic fields of a discrete distribution.
//!
//! For a species of mass `m` the moments are
//!
//! ```text
//! n     = ∫ f dv
//! n u   = ∫ v f dv
//! P     = ∫ m (v − u) ⊗ (v − u) f dv
//! 3 n T = trace(P)
//! ```
//!
//! `T` is read off the trace of `P` rather than integrated separately, so the
//! identity `trace(P) = 3 n T` holds exactly at the discrete level.

use crate::error::{KineticError, Result};
use crate::sym3::SymTensor3;
use crate::vgrid::{GridField, VelocityGrid};
use crate::{norm_sq, sub, Vec3};

/// Densities below this are treated as vacuum.
pub const VACUUM_DENSITY: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub density: f64,
    pub velocity: Vec3,
    pub temperature: f64,
    /// Pressure tensor, energy per volume.
    pub pressure: SymTensor3,
}

impl Moments {
    /// Moments of a Maxwellian: isotropic pressure `n T · 1`.
    pub fn maxwellian(density: f64, velocity: Vec3, temperature: f64) -> Self {
        Self {
            density,
            velocity,
            temperature,
            pressure: SymTensor3::scaled_identity(density * temperature),
        }
    }

    /// Moments of an anisotropic Gaussian with tensor `t`: `P = n t`, `T = tr(t)/3`.
    pub fn gaussian(density: f64, velocity: Vec3, tensor: SymTensor3) -> Self {
        Self {
            density,
            velocity,
            temperature: tensor.trace() / 3.0,
            pressure: tensor * density,
        }
    }

    pub fn pressure_per_density(&self) -> SymTensor3 {
        self.pressure * (1.0 / self.density)
    }

    /// Max-norm deviation of `P / (n T)` from the identity.
    pub fn anisotropy(&self) -> f64 {
        self.pressure
            .deviation_from_isotropic(self.density * self.temperature)
    }

    /// `m n u`.
    pub fn momentum(&self, mass: f64) -> Vec3 {
        let s = mass * self.density;
        [
            s * self.velocity[0],
            s * self.velocity[1],
            s * self.velocity[2],
        ]
    }

    /// `(3/2) n T + (m/2) n |u|²`.
    pub fn energy(&self, mass: f64) -> f64 {
        1.5 * self.density * self.temperature + 0.5 * mass * self.density * norm_sq(&self.velocity)
    }
}

pub fn compute_moments(f: &GridField, grid: &VelocityGrid, mass: f64) -> Result<Moments> {
    grid.check(f)?;
    let weights = grid.weights();
    let values = f.values();

    let mut density = 0.0;
    let mut flux = [0.0; 3];
    for (i, v) in grid.velocities() {
        let wf = weights[i] * values[i];
        density += wf;
        flux[0] += wf * v[0];
        flux[1] += wf * v[1];
        flux[2] += wf * v[2];
    }
    if density.is_nan() || density.abs() < VACUUM_DENSITY {
        return Err(KineticError::VacuumState { density });
    }
    let velocity = [flux[0] / density, flux[1] / density, flux[2] / density];

    let mut p = [0.0; 6];
    for (i, v) in grid.velocities() {
        let wf = weights[i] * values[i];
        let c = sub(&v, &velocity);
        p[0] += wf * c[0] * c[0];
        p[1] += wf * c[1] * c[1];
        p[2] += wf * c[2] * c[2];
        p[3] += wf * c[0] * c[1];
        p[4] += wf * c[0] * c[2];
        p[5] += wf * c[1] * c[2];
    }
    let pressure = SymTensor3::new(p[0], p[1], p[2], p[3], p[4], p[5]) * mass;
    let temperature = pressure.trace() / (3.0 * density);
    Ok(Moments {
        density,
        velocity,
        temperature,
        pressure,
    })
}

/// Total momentum `Σ m n u` and total energy `Σ (3/2) n T + (m/2) n |u|²` of
/// the two species.
pub fn mixture_invariants(first: &Moments, second: &Moments, m1: f64, m2: f64) -> (Vec3, f64) {
    let p1 = first.momentum(m1);
    let p2 = second.momentum(m2);
    (
        [p1[0] + p2[0], p1[1] + p2[1], p1[2] + p2[2]],
        first.energy(m1) + second.energy(m2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn sampled_gaussian(grid: &VelocityGrid, n: f64, u: Vec3, t: SymTensor3, m: f64) -> GridField {
        let cov = t * (1.0 / m);
        let inv = cov.inverse().unwrap();
        let norm = n / ((2.0 * PI).powi(3) * cov.det()).sqrt();
        grid.sample(|v| norm * (-0.5 * inv.quadratic_form(&sub(&v, &u))).exp())
    }

    #[test]
    fn recovers_maxwellian_moments() {
        let grid = VelocityGrid::new(6.0, 33).unwrap();
        let f = sampled_gaussian(
            &grid,
            2.0,
            [1.0, 0.0, 0.0],
            SymTensor3::scaled_identity(0.5),
            1.0,
        );
        let m = compute_moments(&f, &grid, 1.0).unwrap();
        assert!(rel(m.density, 2.0) < 1e-7);
        assert!((m.velocity[0] - 1.0).abs() < 1e-7);
        assert!(m.velocity[1].abs() < 1e-12 && m.velocity[2].abs() < 1e-12);
        assert!(rel(m.temperature, 0.5) < 1e-7);
        assert!(m.pressure.deviation_from_isotropic(1.0) < 1e-7);
    }

    #[test]
    fn recovers_anisotropic_pressure() {
        let grid = VelocityGrid::new(13.0, 33).unwrap();
        let f = sampled_gaussian(&grid, 1.0, [0.0; 3], SymTensor3::diag(1.0, 2.0, 3.0), 1.0);
        let m = compute_moments(&f, &grid, 1.0).unwrap();
        let pn = m.pressure_per_density();
        assert!((pn - SymTensor3::diag(1.0, 2.0, 3.0)).max_abs() < 1e-7);
        assert!(rel(m.temperature, 2.0) < 1e-7);
    }

    #[test]
    fn vacuum_is_rejected() {
        let grid = VelocityGrid::new(1.0, 9).unwrap();
        assert!(matches!(
            compute_moments(&grid.zeros(), &grid, 1.0),
            Err(KineticError::VacuumState { .. })
        ));
    }

    #[test]
    fn trace_identity_is_exact() {
        let grid = VelocityGrid::new(5.0, 17).unwrap();
        let f =
            grid.sample(|v| (1.0 + 0.3 * v[0] + 0.1 * v[1] * v[2]).abs() * (-norm_sq(&v)).exp());
        let m = compute_moments(&f, &grid, 2.5).unwrap();
        assert!(
            (m.pressure.trace() - 3.0 * m.density * m.temperature).abs()
                <= 1e-15 * m.pressure.trace()
        );
    }

    #[test]
    fn galilean_shift_by_one_node() {
        let grid = VelocityGrid::new(4.0, 17).unwrap();
        let n = grid.points();
        let h = grid.spacing();
        // compact support well inside the box so the shift loses nothing
        let bump = |v: Vec3| {
            let r2 = norm_sq(&v);
            if r2 < 4.0 {
                (4.0 - r2) * (1.0 + 0.2 * v[1])
            } else {
                0.0
            }
        };
        let f = grid.sample(bump);
        let mut shifted = grid.zeros();
        for iz in 0..n {
            for iy in 0..n {
                for ix in 1..n {
                    shifted[grid.index(ix, iy, iz)] = f[grid.index(ix - 1, iy, iz)];
                }
            }
        }
        let a = compute_moments(&f, &grid, 1.0).unwrap();
        let b = compute_moments(&shifted, &grid, 1.0).unwrap();
        assert!(rel(b.density, a.density) < 1e-14);
        assert!((b.velocity[0] - a.velocity[0] - h).abs() < 1e-13);
        assert!((b.velocity[1] - a.velocity[1]).abs() < 1e-13);
        assert!((b.pressure - a.pressure).max_abs() < 1e-13 * a.pressure.max_abs());
        assert!(rel(b.temperature, a.temperature) < 1e-13);
    }

    #[test]
    fn mixture_invariant_examples() {
        let a = Moments::maxwellian(1.0, [1.0, 0.0, 0.0], 1.0);
        let b = Moments::maxwellian(1.0, [-1.0, 0.0, 0.0], 1.0);
        let (p, e) = mixture_invariants(&a, &b, 1.0, 1.0);
        assert_eq!(p, [0.0; 3]);
        assert_eq!(e, 4.0);

        let rest = Moments::maxwellian(2.0, [0.0; 3], 3.0);
        let (p1, e1) =
            mixture_invariants(&rest, &Moments::maxwellian(0.0, [0.0; 3], 1.0), 1.0, 1.0);
        assert_eq!(p1, [0.0; 3]);
        assert_eq!(e1, 9.0);

        let (p2, e2) = mixture_invariants(&a, &a, 2.0, 2.0);
        assert_eq!(p2, [4.0, 0.0, 0.0]);
        assert_eq!(e2, 2.0 * a.energy(2.0));
    }
}
