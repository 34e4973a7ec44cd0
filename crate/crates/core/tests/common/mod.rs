#![allow(dead_code)]

use std::sync::Arc;

use mixkin_core::closures::build_gaussian;
use mixkin_core::vgrid::{auto_extent, DEFAULT_POINTS, DEFAULT_SAFETY};
use mixkin_core::{MixtureConfig, MixtureState, Moments, SymTensor3, Variant, VelocityGrid};
use rand::Rng;

/// Mass ratio, frequency ratio and drift heating shared by the mixture scenarios.
pub fn mixture_config(variant: Variant) -> MixtureConfig {
    let es = variant != Variant::Bgk;
    MixtureConfig {
        mass2: 1.5,
        epsilon: 0.5,
        gamma: 0.05,
        mu1: if es { -0.5 } else { 0.0 },
        mu2: if es { 0.5 } else { 0.0 },
        variant,
        ..Default::default()
    }
}

/// Mixture velocity and temperature the pair relaxes to.
pub fn equilibrium_of(a: &Moments, b: &Moments, m1: f64, m2: f64) -> Moments {
    let rho = a.density * m1 + b.density * m2;
    let n = a.density + b.density;
    let (p, e) = mixkin_core::moments::mixture_invariants(a, b, m1, m2);
    let u = [p[0] / rho, p[1] / rho, p[2] / rho];
    let kinetic = 0.5 * rho * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    Moments::maxwellian(n, u, (e - kinetic) / (1.5 * n))
}

/// Default-resolution grid covering both species and their joint equilibrium.
pub fn grid_for(a: &Moments, b: &Moments, m1: f64, m2: f64) -> Arc<VelocityGrid> {
    let eq = equilibrium_of(a, b, m1, m2);
    let v = auto_extent(&[(*a, m1), (*b, m2), (eq, m1), (eq, m2)], DEFAULT_SAFETY);
    Arc::new(VelocityGrid::new(v, DEFAULT_POINTS).unwrap())
}

/// State whose species are Gaussians with the given moments.
pub fn gaussian_state(a: &Moments, b: &Moments, config: &MixtureConfig) -> MixtureState {
    let (m1, m2) = (config.mass1, config.mass2);
    let grid = grid_for(a, b, m1, m2);
    let f1 = build_gaussian(a.density, &a.velocity, &a.pressure_per_density(), m1, &grid).unwrap();
    let f2 = build_gaussian(b.density, &b.velocity, &b.pressure_per_density(), m2, &grid).unwrap();
    MixtureState::new(grid, [m1, m2], f1, f2).unwrap()
}

pub fn velocity_gap() -> (Moments, Moments) {
    (
        Moments::maxwellian(1.0, [0.5, 0.0, 0.0], 1.0),
        Moments::maxwellian(1.0, [-0.5, 0.0, 0.0], 1.0),
    )
}

pub fn temperature_gap() -> (Moments, Moments) {
    (
        Moments::maxwellian(1.0, [0.0; 3], 1.0),
        Moments::maxwellian(1.0, [0.0; 3], 1.5),
    )
}

/// Counter-streaming species at different temperatures.
pub fn cross_relaxation() -> (Moments, Moments) {
    (
        Moments::maxwellian(1.0, [0.5, 0.0, 0.0], 1.0),
        Moments::maxwellian(1.0, [-0.5, 0.0, 0.0], 1.5),
    )
}

pub fn anisotropic() -> (Moments, Moments) {
    let t = SymTensor3::new(0.7, 1.0, 1.3, 0.1, 0.0, 0.0);
    (
        Moments::gaussian(1.0, [0.0; 3], t),
        Moments::maxwellian(1.0, [0.0; 3], 1.0),
    )
}

/// `L Lᵀ + floor·1` with `L` uniform in `[-1, 1]`.
pub fn random_spd(rng: &mut impl Rng, floor: f64) -> SymTensor3 {
    let l: [[f64; 3]; 3] =
        std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| l[i][k] * l[j][k]).sum::<f64>();
        }
        m[i][i] += floor;
    }
    SymTensor3::from_matrix(&m)
}

pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Random parameters inside every validated window.
pub fn random_valid_config(rng: &mut impl Rng, variant: Variant) -> MixtureConfig {
    let mut c = MixtureConfig {
        mass1: log_uniform(rng, 0.1, 10.0),
        mass2: log_uniform(rng, 0.1, 10.0),
        epsilon: log_uniform(rng, 0.01, 1.0),
        alpha: rng.gen_range(0.0..=1.0),
        variant,
        ..Default::default()
    };
    let (lo, hi) = c.delta_window();
    c.delta = rng.gen_range(lo..=hi);
    c.gamma = rng.gen_range(0.0..=1.0) * c.gamma_upper();
    c
}

pub fn relative_drift(now: f64, start: f64, scale: f64) -> f64 {
    (now - start).abs() / scale
}
