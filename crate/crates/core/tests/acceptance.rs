//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always printed.
//! Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use common::*;
use mixkin_core::closures::{
    build_maxwellian, interspecies_temperature_12, interspecies_temperature_21,
    tensor_interspecies_b, tensor_single, validate_config,
};
use mixkin_core::collision::{build_targets, rhs};
use mixkin_core::diagnostics::{entropy, equilibrium_distance, lemma2_slack};
use mixkin_core::solver::{
    run_homogeneous, run_transport_with, HomogeneousRun, RunOutput, Transport1DRun,
};
use mixkin_core::vgrid::{auto_extent, DEFAULT_POINTS, DEFAULT_SAFETY};
use mixkin_core::{
    DiagnosticsRecord, Frequencies, KineticError, MixtureConfig, MixtureState, Moments, SymTensor3,
    Variant, VelocityGrid,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DT: f64 = 0.05;
const CADENCE: f64 = 0.5;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn run(state: MixtureState, config: MixtureConfig, t_end: f64) -> RunOutput<MixtureState> {
    run_homogeneous(&HomogeneousRun::new(state, config, DT, t_end, CADENCE)).unwrap()
}

/// Thermal momentum scale `Σ m n √(T/m)`, used when the total momentum is small.
fn momentum_scale(a: &Moments, b: &Moments, m1: f64, m2: f64) -> f64 {
    m1 * a.density * (a.temperature / m1).sqrt() + m2 * b.density * (b.temperature / m2).sqrt()
}

fn conservation() -> Outcome {
    let (a, b) = cross_relaxation();
    let mut worst = [0.0f64; 3];
    let mut notes = Vec::new();
    for variant in Variant::ALL {
        let config = mixture_config(variant);
        let t_end = 20.0 / (config.nu12 * b.density);
        let state = gaussian_state(&a, &b, &config);
        let out = run(state, config, t_end);
        let first = &out.records[0];
        let (m1, m2) = (config.mass1, config.mass2);
        let p0 = first.momentum;
        let pscale = (p0[0] * p0[0] + p0[1] * p0[1] + p0[2] * p0[2])
            .sqrt()
            .max(momentum_scale(&a, &b, m1, m2));
        let (mut dm, mut dp, mut de) = (0.0f64, 0.0f64, 0.0f64);
        for r in &out.records {
            for k in 0..2 {
                dm = dm.max(relative_drift(r.mass[k], first.mass[k], first.mass[k]));
            }
            for (now, start) in r.momentum.iter().zip(&p0) {
                dp = dp.max(relative_drift(*now, *start, pscale));
            }
            de = de.max(relative_drift(r.energy, first.energy, first.energy));
        }
        worst = [worst[0].max(dm), worst[1].max(dp), worst[2].max(de)];
        notes.push(format!(
            "{}: mass {dm:.1e} mom {dp:.1e} energy {de:.1e}",
            variant.name()
        ));
    }
    Outcome::new(
        worst[0] < 1e-10 && worst[1] < 1e-6 && worst[2] < 1e-6,
        notes.join("; "),
    )
}

struct EntropyRuns {
    /// (variant, initial condition, output)
    runs: Vec<(Variant, &'static str, RunOutput<MixtureState>)>,
}

type Setup = fn() -> (Moments, Moments);

fn entropy_runs() -> EntropyRuns {
    let cases: [(&str, Setup); 3] = [
        ("velocity-gap", velocity_gap),
        ("temperature-gap", temperature_gap),
        ("anisotropic", anisotropic),
    ];
    let mut runs = Vec::new();
    for variant in [Variant::Bgk, Variant::EsSingle, Variant::EsFullB] {
        for (name, init) in cases {
            let (a, b) = init();
            let config = mixture_config(variant);
            runs.push((
                variant,
                name,
                run(gaussian_state(&a, &b, &config), config, 30.0),
            ));
        }
    }
    EntropyRuns { runs }
}

fn h_theorem(runs: &EntropyRuns) -> Outcome {
    let mut worst_rise = f64::NEG_INFINITY;
    let mut worst_s = f64::NEG_INFINITY;
    let mut worst_slack = f64::INFINITY;
    for (variant, _, out) in &runs.runs {
        for w in out.records.windows(2) {
            worst_rise = worst_rise.max((w[1].entropy - w[0].entropy) / w[0].entropy.abs());
        }
        for r in &out.records {
            worst_s = worst_s.max(r.entropy_production / r.entropy.abs());
            if *variant == Variant::EsFullB {
                worst_slack = worst_slack.min(r.lemma2_slack);
            }
        }
    }
    Outcome::new(
        worst_rise <= 1e-10 && worst_s <= 1e-9,
        format!(
            "9 runs; max relative H rise {worst_rise:.2e} (<= 1e-10), max S/|H| {worst_s:.2e} (<= 1e-9), \
             min ES_FULL_B lemma2 slack {worst_slack:.2e}"
        ),
    )
}

fn equilibrium(runs: &EntropyRuns) -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    for (variant, name, out) in &runs.runs {
        let d =
            equilibrium_distance(&out.final_state, mixture_config(*variant).target_mode).unwrap();
        if d.max() >= worst {
            worst = d.max();
            worst_case = format!("{}/{name}", variant.name());
        }
    }

    let (a, b) = cross_relaxation();
    let config = MixtureConfig {
        delta: 1.0,
        alpha: 1.0,
        gamma: 0.0,
        ..mixture_config(Variant::Bgk)
    };
    let out = run(gaussian_state(&a, &b, &config), config, 30.0);
    let first = &out.records[0];
    let kept = out
        .records
        .iter()
        .map(|r| (r.gap_u / first.gap_u).min(r.gap_t / first.gap_t))
        .fold(f64::INFINITY, f64::min);
    Outcome::new(
        worst < 1e-5 && kept > 0.5,
        format!(
            "max final distance {worst:.2e} ({worst_case}, < 1e-5); delta=alpha=1 keeps {:.1}% of the initial gaps",
            100.0 * kept
        ),
    )
}

/// `(u₁, u₂, T₁, T₂)` of the closed BGK moment system.
#[derive(Clone, Copy)]
struct MomentState {
    u1: [f64; 3],
    u2: [f64; 3],
    t1: f64,
    t2: f64,
}

impl MomentState {
    fn flat(&self) -> [f64; 8] {
        [
            self.u1[0], self.u1[1], self.u1[2], self.u2[0], self.u2[1], self.u2[2], self.t1,
            self.t2,
        ]
    }

    fn from_flat(x: &[f64; 8]) -> Self {
        Self {
            u1: [x[0], x[1], x[2]],
            u2: [x[3], x[4], x[5]],
            t1: x[6],
            t2: x[7],
        }
    }
}

fn moment_rhs(x: &[f64; 8], c: &MixtureConfig, n1: f64, n2: f64) -> [f64; 8] {
    let s = MomentState::from_flat(x);
    let (m1, m2, eps, delta, alpha, gamma) =
        (c.mass1, c.mass2, c.epsilon, c.delta, c.alpha, c.gamma);
    let nu12 = c.nu12;
    let nu21 = nu12 / eps;
    let du: [f64; 3] = std::array::from_fn(|i| s.u2[i] - s.u1[i]);
    let drift = du.iter().map(|d| d * d).sum::<f64>();
    let u12: [f64; 3] = std::array::from_fn(|i| delta * s.u1[i] + (1.0 - delta) * s.u2[i]);
    let u21: [f64; 3] = std::array::from_fn(|i| s.u2[i] - m1 / m2 * eps * (1.0 - delta) * du[i]);
    let t12 = alpha * s.t1 + (1.0 - alpha) * s.t2 + gamma * drift;
    let cc = eps * m1 * (1.0 - delta) / 3.0 * (m1 / m2 * eps * (delta - 1.0) + delta + 1.0)
        - eps * gamma;
    let t21 = cc * drift + eps * (1.0 - alpha) * s.t1 + (1.0 - eps * (1.0 - alpha)) * s.t2;
    let r1 = nu12 * n2;
    let r2 = nu21 * n1;
    let slip1 = (0..3).map(|i| (u12[i] - s.u1[i]).powi(2)).sum::<f64>();
    let slip2 = (0..3).map(|i| (u21[i] - s.u2[i]).powi(2)).sum::<f64>();
    [
        r1 * (u12[0] - s.u1[0]),
        r1 * (u12[1] - s.u1[1]),
        r1 * (u12[2] - s.u1[2]),
        r2 * (u21[0] - s.u2[0]),
        r2 * (u21[1] - s.u2[1]),
        r2 * (u21[2] - s.u2[2]),
        r1 * ((t12 - s.t1) + m1 / 3.0 * slip1),
        r2 * ((t21 - s.t2) + m2 / 3.0 * slip2),
    ]
}

fn rk4_moments(x: &[f64; 8], h: f64, c: &MixtureConfig, n1: f64, n2: f64) -> [f64; 8] {
    let add = |a: &[f64; 8], k: &[f64; 8], s: f64| -> [f64; 8] {
        std::array::from_fn(|i| a[i] + s * k[i])
    };
    let k1 = moment_rhs(x, c, n1, n2);
    let k2 = moment_rhs(&add(x, &k1, 0.5 * h), c, n1, n2);
    let k3 = moment_rhs(&add(x, &k2, 0.5 * h), c, n1, n2);
    let k4 = moment_rhs(&add(x, &k3, h), c, n1, n2);
    std::array::from_fn(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

fn moment_oracle() -> Outcome {
    let (a, b) = cross_relaxation();
    let config = mixture_config(Variant::Bgk);
    let out = run(gaussian_state(&a, &b, &config), config, 20.0);
    let first = &out.records[0];
    let (n1, n2) = (first.species[0].density, first.species[1].density);
    let flat = |r: &DiagnosticsRecord| -> [f64; 8] {
        MomentState {
            u1: r.species[0].velocity,
            u2: r.species[1].velocity,
            t1: r.species[0].temperature,
            t2: r.species[1].temperature,
        }
        .flat()
    };
    let mut x = flat(first);
    let h = DT / 100.0;
    let mut t = 0.0;
    let mut step = 0usize;
    let mut worst = 0.0f64;
    for r in &out.records[1..] {
        let target_steps = (r.time / h).round() as usize;
        while step < target_steps {
            x = rk4_moments(&x, h, &config, n1, n2);
            step += 1;
            t = step as f64 * h;
        }
        let k = flat(r);
        let err = (0..8).map(|i| (k[i] - x[i]).powi(2)).sum::<f64>().sqrt();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        worst = worst.max(err / norm);
    }
    Outcome::new(
        worst < 1e-4,
        format!(
            "{} cadence points to t={t:.1}; max relative deviation {worst:.2e} (< 1e-4)",
            out.records.len() - 1
        ),
    )
}

fn positivity_windows() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let samples = 10_000;
    let mut inside_bad = 0;
    let mut min_t = f64::INFINITY;
    let mut outside_missed = 0;
    for i in 0..samples {
        let c = random_valid_config(&mut rng, Variant::Bgk);
        let t1 = log_uniform(&mut rng, 0.01, 100.0);
        let t2 = log_uniform(&mut rng, 0.01, 100.0);
        let drift: f64 = (0..3).map(|_| rng.gen_range(-5.0f64..5.0).powi(2)).sum();
        let ok = validate_config(&c).is_empty();
        let t12 = interspecies_temperature_12(t1, t2, c.alpha, c.gamma, drift);
        let t21 = interspecies_temperature_21(
            t1, t2, c.alpha, c.gamma, c.delta, c.epsilon, c.mass1, c.mass2, drift,
        );
        match (ok, t12, t21) {
            (true, Ok(a), Ok(b)) if a > 0.0 && b > 0.0 => min_t = min_t.min(a.min(b)),
            _ => inside_bad += 1,
        }

        let mut out = c;
        let (lo, _) = c.delta_window();
        let nudge = 1e-6;
        match i % 5 {
            0 => out.delta = lo - nudge * (1.0 + lo.abs()),
            1 => out.delta = 1.0 + nudge,
            2 => out.gamma = c.gamma_upper() + nudge * (1.0 + c.gamma_upper()),
            3 => out.gamma = -nudge,
            _ => {
                out.alpha = if rng.gen_bool(0.5) {
                    -nudge
                } else {
                    1.0 + nudge
                }
            }
        }
        let flagged = !validate_config(&out).is_empty()
            || matches!(
                interspecies_temperature_12(t1, t2, out.alpha, out.gamma, drift),
                Err(KineticError::NonpositiveTemperature { .. })
            )
            || matches!(
                interspecies_temperature_21(
                    t1,
                    t2,
                    out.alpha,
                    out.gamma,
                    out.delta,
                    out.epsilon,
                    out.mass1,
                    out.mass2,
                    drift
                ),
                Err(KineticError::NonpositiveTemperature { .. })
            );
        if !flagged {
            outside_missed += 1;
        }
    }
    Outcome::new(
        inside_bad == 0 && outside_missed == 0,
        format!(
            "{samples} inside samples: {inside_bad} failures, min T = {min_t:.2e}; \
             {samples} just-outside samples: {outside_missed} unflagged"
        ),
    )
}

fn tensor_theorems() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut min_eig = f64::INFINITY;
    for _ in 0..100 {
        let p = random_spd(&mut rng, 1e-3);
        let n = log_uniform(&mut rng, 0.1, 10.0);
        let m = Moments::gaussian(n, [0.0; 3], p);
        for mu in [-0.5, 0.0, 1.0] {
            let e = tensor_single(&m, mu).eigenvalues();
            min_eig = min_eig.min(e[0] / e[2]);
        }
    }

    let mut lemma1 = f64::INFINITY;
    for _ in 0..1000 {
        let a = random_spd(&mut rng, 0.05);
        let b = random_spd(&mut rng, 0.05);
        for j in 0..10 {
            let w = (j as f64 + 0.5) / 10.0;
            let c = SymTensor3::convex_combine(w, &a, &b);
            let slack = c.det().ln() - w * a.det().ln() - (1.0 - w) * b.det().ln();
            lemma1 = lemma1.min(slack);
        }
    }

    let mut lemma2 = f64::INFINITY;
    for _ in 0..1000 {
        let c = random_valid_config(&mut rng, Variant::EsFullB);
        let m1 = Moments::gaussian(
            log_uniform(&mut rng, 0.1, 10.0),
            std::array::from_fn(|_| rng.gen_range(-2.0..2.0)),
            random_spd(&mut rng, 0.05),
        );
        let m2 = Moments::gaussian(
            log_uniform(&mut rng, 0.1, 10.0),
            std::array::from_fn(|_| rng.gen_range(-2.0..2.0)),
            random_spd(&mut rng, 0.05),
        );
        let (t12, t21) = tensor_interspecies_b(&m1, &m2, &c).unwrap();
        let slack = lemma2_slack(
            &t12,
            &t21,
            &m1.pressure_per_density(),
            &m2.pressure_per_density(),
            c.epsilon,
        );
        lemma2 = lemma2.min(slack);
    }
    Outcome::new(
        min_eig > 0.0 && lemma1 >= -1e-12 && lemma2 >= -1e-12,
        format!(
            "min eigenvalue ratio of T_k {min_eig:.2e} (> 0); Lemma 1 min slack {lemma1:.2e}; \
             Lemma 2 min slack {lemma2:.2e} (>= -1e-12)"
        ),
    )
}

fn variant_reductions() -> Outcome {
    let (a, b) = anisotropic();
    let bgk = mixture_config(Variant::Bgk);
    let state = gaussian_state(&a, &b, &bgk);
    let single = MixtureConfig {
        variant: Variant::EsSingle,
        ..bgk
    };
    let (q1, q2) = rhs(&state, &bgk).unwrap();
    let (s1, s2) = rhs(&state, &single).unwrap();
    let scale = q1
        .values()
        .iter()
        .chain(q2.values())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let rhs_gap = q1.max_abs_diff(&s1).max(q2.max_abs_diff(&s2)) / scale;

    let grid = state.grid();
    let iso1 = Moments::maxwellian(1.0, [0.3, 0.0, 0.1], 1.0);
    let iso2 = Moments::maxwellian(0.8, [-0.2, 0.1, 0.0], 1.4);
    let mut target_gap = 0.0f64;
    for (mu1, mu2) in [(0.0, 0.0), (-0.5, 0.5), (1.0, -0.5)] {
        let es_single = MixtureConfig {
            variant: Variant::EsSingle,
            mu1,
            mu2,
            ..bgk
        };
        let es_b = MixtureConfig {
            variant: Variant::EsFullB,
            ..es_single
        };
        let x = build_targets(grid, &iso1, &iso2, &es_single).unwrap();
        let y = build_targets(grid, &iso1, &iso2, &es_b).unwrap();
        for (p, q) in [
            (&x.self1, &y.self1),
            (&x.cross12, &y.cross12),
            (&x.self2, &y.self2),
            (&x.cross21, &y.cross21),
        ] {
            target_gap = target_gap.max(p.max_abs_diff(q) / p.max());
        }
    }
    Outcome::new(
        rhs_gap < 1e-13 && target_gap < 1e-13,
        format!(
            "ES_SINGLE(mu=0) vs BGK rhs {rhs_gap:.2e}; ES_FULL_B vs ES_SINGLE targets (isotropic) {target_gap:.2e} \
             (< 1e-13 relative)"
        ),
    )
}

fn transport_sanity() -> Outcome {
    // free streaming of a top hat
    let (nx, length) = (64usize, 64.0);
    let background = Moments::maxwellian(0.1, [0.0; 3], 1.0);
    let v = auto_extent(&[(background, 1.0)], DEFAULT_SAFETY);
    let grid = Arc::new(VelocityGrid::new(v, DEFAULT_POINTS).unwrap());
    let frozen = MixtureConfig {
        frequency_override: Some(Frequencies {
            nu11: 0.0,
            nu12: 0.0,
            nu21: 0.0,
            nu22: 0.0,
        }),
        ..Default::default()
    };
    let cells: Vec<MixtureState> = (0..nx)
        .map(|i| {
            let n = if (24..40).contains(&i) { 1.0 } else { 0.1 };
            let m = Moments::maxwellian(n, [0.0; 3], 1.0);
            MixtureState::maxwellian(Arc::clone(&grid), [1.0, 1.0], &m, &background).unwrap()
        })
        .collect();
    let mut slab = Transport1DRun::new(cells, frozen, length);
    let dt = 0.125;
    let steps = 4;
    let base = build_maxwellian(0.1, &[0.0; 3], 1.0, 1.0, &grid);
    let mass =
        |s: &Transport1DRun| s.cells.iter().map(|c| c.moments(0).density).sum::<f64>() * s.dx();
    let mass0 = mass(&slab);
    let centroids = |s: &Transport1DRun| -> Vec<f64> {
        let mut out = Vec::with_capacity(grid.len());
        for j in 0..grid.len() {
            let (mut num, mut den) = (0.0, 0.0);
            for (i, c) in s.cells.iter().enumerate() {
                let excess = c.field(0)[j] - base[j];
                let x = (i as f64 + 0.5) * s.dx();
                num += x * excess;
                den += excess;
            }
            out.push(num / den);
        }
        out
    };
    let before = centroids(&slab);
    for _ in 0..steps {
        slab.step(dt).unwrap();
    }
    let after = centroids(&slab);
    let t = dt * steps as f64;
    let shift_err = grid
        .velocities()
        .map(|(j, v)| (after[j] - before[j] - v[0] * t).abs())
        .fold(0.0f64, f64::max);
    let mass_err = relative_drift(mass(&slab), mass0, mass0);

    // collisional sine perturbation
    let (nx, length) = (16usize, 16.0);
    let config = mixture_config(Variant::Bgk);
    let k = 2.0 * std::f64::consts::PI / length;
    let profile: Vec<(Moments, Moments)> = (0..nx)
        .map(|i| {
            let x = (i as f64 + 0.5) * length / nx as f64;
            (
                Moments::maxwellian(
                    1.0 + 0.2 * (k * x).sin(),
                    [0.2 * (k * x).sin(), 0.0, 0.0],
                    1.0,
                ),
                Moments::maxwellian(1.0, [0.0; 3], 1.2 + 0.1 * (k * x).cos()),
            )
        })
        .collect();
    let mut covered = Vec::new();
    for (a, b) in &profile {
        covered.push((*a, config.mass1));
        covered.push((*b, config.mass2));
        covered.push((
            common::equilibrium_of(a, b, config.mass1, config.mass2),
            config.mass2,
        ));
    }
    let grid =
        Arc::new(VelocityGrid::new(auto_extent(&covered, DEFAULT_SAFETY), DEFAULT_POINTS).unwrap());
    let cells = profile
        .iter()
        .map(|(a, b)| {
            MixtureState::maxwellian(Arc::clone(&grid), [config.mass1, config.mass2], a, b).unwrap()
        })
        .collect();
    let mut slab = Transport1DRun::new(cells, config, length);
    let dt = 0.1;
    let t_end = 5.0;
    let records = run_transport_with(&mut slab, dt, t_end, CADENCE, |_, _, _| {}).unwrap();
    let first = &records[0];
    let last = records.last().unwrap();
    let (m1, m2) = (config.mass1, config.mass2);
    let pscale = momentum_scale(&profile[0].0, &profile[0].1, m1, m2) * length;
    let drift = [
        relative_drift(last.mass[0], first.mass[0], first.mass[0]),
        relative_drift(last.mass[1], first.mass[1], first.mass[1]),
        (0..3)
            .map(|d| relative_drift(last.momentum[d], first.momentum[d], pscale))
            .fold(0.0, f64::max),
        relative_drift(last.energy, first.energy, first.energy),
    ]
    .into_iter()
    .fold(0.0, f64::max)
        / t_end;
    let rise = records
        .windows(2)
        .map(|w| (w[1].entropy - w[0].entropy) / w[0].entropy.abs())
        .fold(f64::NEG_INFINITY, f64::max);
    let direct = slab
        .cells
        .iter()
        .map(|c| entropy(c.field(0), c.field(1), c.grid()))
        .sum::<f64>()
        * slab.dx();
    let consistent = (direct - last.entropy).abs() <= 1e-12 * direct.abs();

    Outcome::new(
        shift_err < 1e-9 && mass_err < 1e-13 && drift < 1e-6 && rise <= 1e-10 && consistent,
        format!(
            "free streaming: centroid error {shift_err:.1e}, mass drift {mass_err:.1e}; collisional: \
             totals drift {drift:.1e} per unit time (< 1e-6), max relative rise of integral H {rise:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |id: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failures += 1;
        }
        println!(
            "[{status}] criterion {id} {name}: {} ({:.1}s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
    };
    report(1, "conservation", &conservation);
    let runs = entropy_runs();
    report(2, "h-theorem", &|| h_theorem(&runs));
    report(3, "equilibrium characterization", &|| equilibrium(&runs));
    report(4, "moment-ode oracle", &moment_oracle);
    report(5, "positivity windows", &positivity_windows);
    report(6, "tensor theorems", &tensor_theorems);
    report(7, "variant reductions", &variant_reductions);
    report(8, "transport sanity", &transport_sanity);
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
