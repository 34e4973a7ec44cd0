//! Model parameters and relaxation targets.
//!
//! Every relaxation target of the mixture model is a Gaussian in velocity:
//! isotropic Maxwellians `M` for the BGK terms and anisotropic Gaussians `G`
//! for the ES-BGK terms. This module holds the parameter set, the admissible
//! windows for `δ`, `γ` and `μₖ`, the interspecies closure formulas for
//! `u₁₂, u₂₁, T₁₂, T₂₁` and the relaxation tensors `𝒯`.
//!
//! The closures are chosen so that the two interspecies terms together conserve
//! total momentum and energy; the identities are checked in the tests below.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{KineticError, Result};
use crate::moments::Moments;
use crate::sym3::SymTensor3;
use crate::vgrid::{GridField, VelocityGrid};
use crate::{norm_sq, sub, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Maxwellian targets for all four terms.
    Bgk,
    /// ES-BGK self terms, Maxwellian interspecies terms.
    EsSingle,
    /// ES-BGK everywhere, interspecies tensors built from mixed pressure
    /// tensors with weights `μ₁₂, μ₂₁`.
    EsFullA,
    /// ES-BGK everywhere, interspecies tensors keeping the own pressure tensor
    /// and the partner temperature.
    EsFullB,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Bgk,
        Variant::EsSingle,
        Variant::EsFullA,
        Variant::EsFullB,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Bgk => "bgk",
            Variant::EsSingle => "es-single",
            Variant::EsFullA => "es-full-a",
            Variant::EsFullB => "es-full-b",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }

    pub fn uses_self_tensor(&self) -> bool {
        !matches!(self, Variant::Bgk)
    }
}

/// How sampled targets are normalised on the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetMode {
    /// Closed-form samples, no correction.
    Sampled,
    /// Amplitude rescaled so the discrete density equals the intended one.
    MassExact,
}

/// Collision frequencies `ν₁₁, ν₁₂, ν₂₁, ν₂₂`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frequencies {
    pub nu11: f64,
    pub nu12: f64,
    pub nu21: f64,
    pub nu22: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixtureConfig {
    pub mass1: f64,
    pub mass2: f64,
    /// `ν₁₂ = ε ν₂₁`, `0 < ε ≤ 1`.
    pub epsilon: f64,
    /// `ν₁₁ = β₁ ν₁₂`.
    pub beta1: f64,
    /// `ν₂₂ = β₂ ν₂₁`.
    pub beta2: f64,
    /// Base interspecies frequency `ν₁₂`.
    pub nu12: f64,
    pub delta: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub mu1: f64,
    pub mu2: f64,
    /// Fixed `μ₁₂` for [`Variant::EsFullA`]; `None` derives it from the
    /// equilibrium restriction at the current densities.
    pub mu12: Option<f64>,
    /// Fixed `μ₂₁` for [`Variant::EsFullA`]; `None` solves the quadratic
    /// restriction at the current densities.
    pub mu21: Option<f64>,
    pub variant: Variant,
    pub target_mode: TargetMode,
    /// Replaces the frequencies derived from `ν₁₂, ε, β₁, β₂`. Used to switch
    /// off the interspecies coupling while keeping self collisions.
    pub frequency_override: Option<Frequencies>,
}

impl Default for MixtureConfig {
    fn default() -> Self {
        Self {
            mass1: 1.0,
            mass2: 1.0,
            epsilon: 1.0,
            beta1: 1.0,
            beta2: 1.0,
            nu12: 1.0,
            delta: 0.5,
            alpha: 0.5,
            gamma: 0.0,
            mu1: 0.0,
            mu2: 0.0,
            mu12: None,
            mu21: None,
            variant: Variant::Bgk,
            target_mode: TargetMode::MassExact,
            frequency_override: None,
        }
    }
}

impl MixtureConfig {
    pub fn frequencies(&self) -> Frequencies {
        if let Some(f) = self.frequency_override {
            return f;
        }
        let nu21 = self.nu12 / self.epsilon;
        Frequencies {
            nu11: self.beta1 * self.nu12,
            nu12: self.nu12,
            nu21,
            nu22: self.beta2 * nu21,
        }
    }

    /// `ε m₁ / m₂`.
    fn scaled_mass_ratio(&self) -> f64 {
        self.epsilon * self.mass1 / self.mass2
    }

    /// Admissible interval for `δ`.
    pub fn delta_window(&self) -> (f64, f64) {
        let r = self.scaled_mass_ratio();
        ((r - 1.0) / (1.0 + r), 1.0)
    }

    /// Upper end of the admissible interval `[0, γ_max]` for `γ`.
    pub fn gamma_upper(&self) -> f64 {
        let r = self.scaled_mass_ratio();
        self.mass1 / 3.0 * (1.0 - self.delta) * ((1.0 + r) * self.delta + 1.0 - r)
    }

    /// Coefficient of `|u₁ − u₂|²` in `T₂₁`.
    pub fn t21_drift_coefficient(&self) -> f64 {
        t21_drift_coefficient(self.gamma, self.delta, self.epsilon, self.mass1, self.mass2)
    }

    /// The same physical model with species 1 and 2 relabelled.
    ///
    /// The relabelled model has `ε' = 1/ε`, which lies outside the normal
    /// parameter window; it is meant for symmetry checks, not for runs.
    pub fn swapped(&self) -> Self {
        let f = self.frequencies();
        let eps = 1.0 / self.epsilon;
        let one_minus_delta = self.mass1 / self.mass2 * self.epsilon * (1.0 - self.delta);
        let one_minus_alpha = self.epsilon * (1.0 - self.alpha);
        Self {
            mass1: self.mass2,
            mass2: self.mass1,
            epsilon: eps,
            beta1: self.beta2,
            beta2: self.beta1,
            nu12: f.nu21,
            delta: 1.0 - one_minus_delta,
            alpha: 1.0 - one_minus_alpha,
            gamma: self.t21_drift_coefficient(),
            mu1: self.mu2,
            mu2: self.mu1,
            mu12: self.mu21,
            mu21: self.mu12,
            variant: self.variant,
            target_mode: self.target_mode,
            frequency_override: self.frequency_override.map(|f| Frequencies {
                nu11: f.nu22,
                nu12: f.nu21,
                nu21: f.nu12,
                nu22: f.nu11,
            }),
        }
    }
}

/// One failed parameter check.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub parameter: &'static str,
    pub value: f64,
    pub bound: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} violates {}",
            self.parameter, self.value, self.bound
        )
    }
}

fn require(out: &mut Vec<Violation>, parameter: &'static str, value: f64, ok: bool, bound: String) {
    if !ok {
        out.push(Violation {
            parameter,
            value,
            bound,
        });
    }
}

/// Checks every parameter constraint that does not depend on the state.
pub fn validate_config(c: &MixtureConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    require(
        &mut out,
        "m1",
        c.mass1,
        c.mass1 > 0.0 && c.mass1.is_finite(),
        "m1 > 0".into(),
    );
    require(
        &mut out,
        "m2",
        c.mass2,
        c.mass2 > 0.0 && c.mass2.is_finite(),
        "m2 > 0".into(),
    );
    require(
        &mut out,
        "epsilon",
        c.epsilon,
        c.epsilon > 0.0 && c.epsilon <= 1.0,
        "0 < epsilon <= 1".into(),
    );
    require(
        &mut out,
        "beta1",
        c.beta1,
        c.beta1 > 0.0,
        "beta1 > 0".into(),
    );
    require(
        &mut out,
        "beta2",
        c.beta2,
        c.beta2 > 0.0,
        "beta2 > 0".into(),
    );
    require(
        &mut out,
        "nu12",
        c.nu12,
        c.nu12 > 0.0 && c.nu12.is_finite(),
        "nu12 > 0".into(),
    );
    if !out.is_empty() {
        // the windows below are meaningless without valid masses and epsilon
        return out;
    }

    let (lo, hi) = c.delta_window();
    require(
        &mut out,
        "delta",
        c.delta,
        c.delta >= lo && c.delta <= hi,
        format!("{lo} <= delta <= {hi}"),
    );
    require(
        &mut out,
        "alpha",
        c.alpha,
        (0.0..=1.0).contains(&c.alpha),
        "0 <= alpha <= 1".into(),
    );
    let gmax = c.gamma_upper();
    require(
        &mut out,
        "gamma",
        c.gamma,
        c.gamma >= 0.0 && c.gamma <= gmax,
        format!("0 <= gamma <= {gmax}"),
    );
    if c.variant.uses_self_tensor() {
        require(
            &mut out,
            "mu1",
            c.mu1,
            (-0.5..=1.0).contains(&c.mu1),
            "-1/2 <= mu1 <= 1".into(),
        );
        require(
            &mut out,
            "mu2",
            c.mu2,
            (-0.5..=1.0).contains(&c.mu2),
            "-1/2 <= mu2 <= 1".into(),
        );
    }
    out
}

/// Checks explicit `μ₁₂, μ₂₁` against the equilibrium restrictions at the
/// given densities. Only meaningful for [`Variant::EsFullA`].
pub fn validate_restrictions(c: &MixtureConfig, n1: f64, n2: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    if c.variant != Variant::EsFullA {
        return out;
    }
    let forced = mu12_restriction(c, n1, n2);
    if let Some(mu12) = c.mu12 {
        require(
            &mut out,
            "mu12",
            mu12,
            (mu12 - forced).abs() <= 1e-10 * forced.abs().max(1.0),
            format!("mu12 = {forced} (equilibrium restriction)"),
        );
    }
    let mu12 = c.mu12.unwrap_or(forced);
    match c.mu21 {
        Some(mu21) => {
            let r = mu21_residual(c, n1, n2, mu12, mu21);
            let scale = mu21_restriction_coefficients(c, n1, n2, mu12)
                .iter()
                .fold(0.0_f64, |m, x| m.max(x.abs()));
            require(
                &mut out,
                "mu21",
                mu21,
                r.abs() <= 1e-10 * scale.max(1e-300),
                format!("quadratic restriction residual {r:e} = 0"),
            );
        }
        None => {
            if let Err(e) = solve_mu21_restriction(c, n1, n2) {
                out.push(Violation {
                    parameter: "mu21",
                    value: f64::NAN,
                    bound: e.to_string(),
                });
            }
        }
    }
    out
}

/// `u₁₂ = δ u₁ + (1 − δ) u₂`.
pub fn interspecies_velocity_12(u1: &Vec3, u2: &Vec3, delta: f64) -> Vec3 {
    std::array::from_fn(|i| delta * u1[i] + (1.0 - delta) * u2[i])
}

/// `u₂₁ = u₂ − (m₁/m₂) ε (1 − δ)(u₂ − u₁)`.
pub fn interspecies_velocity_21(
    u1: &Vec3,
    u2: &Vec3,
    delta: f64,
    epsilon: f64,
    m1: f64,
    m2: f64,
) -> Vec3 {
    let k = m1 / m2 * epsilon * (1.0 - delta);
    std::array::from_fn(|i| u2[i] - k * (u2[i] - u1[i]))
}

fn positive(which: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(KineticError::NonpositiveTemperature { which, value })
    }
}

/// `T₁₂ = α T₁ + (1 − α) T₂ + γ |u₁ − u₂|²`.
pub fn interspecies_temperature_12(
    t1: f64,
    t2: f64,
    alpha: f64,
    gamma: f64,
    drift_sq: f64,
) -> Result<f64> {
    positive("T12", alpha * t1 + (1.0 - alpha) * t2 + gamma * drift_sq)
}

pub fn t21_drift_coefficient(gamma: f64, delta: f64, epsilon: f64, m1: f64, m2: f64) -> f64 {
    epsilon * m1 / 3.0 * (1.0 - delta) * (m1 / m2 * epsilon * (delta - 1.0) + delta + 1.0)
        - epsilon * gamma
}

/// `T₂₁ = c |u₁ − u₂|² + ε(1 − α) T₁ + (1 − ε(1 − α)) T₂` with the drift
/// coefficient `c` fixed by energy conservation.
#[allow(clippy::too_many_arguments)]
pub fn interspecies_temperature_21(
    t1: f64,
    t2: f64,
    alpha: f64,
    gamma: f64,
    delta: f64,
    epsilon: f64,
    m1: f64,
    m2: f64,
    drift_sq: f64,
) -> Result<f64> {
    let c = t21_drift_coefficient(gamma, delta, epsilon, m1, m2);
    let w = epsilon * (1.0 - alpha);
    positive("T21", c * drift_sq + w * t1 + (1.0 - w) * t2)
}

/// Samples `n / (2πT/m)^{3/2} · exp(−|v − u|² / (2T/m))`.
pub fn build_maxwellian(n: f64, u: &Vec3, t: f64, m: f64, grid: &VelocityGrid) -> GridField {
    let var = t / m;
    let norm = n / (2.0 * PI * var).powf(1.5);
    let k = -0.5 / var;
    grid.sample(|v| norm * (k * norm_sq(&sub(&v, u))).exp())
}

/// Samples `n / √det(2π𝒯/m) · exp(−½ (v − u)·(𝒯/m)⁻¹·(v − u))`.
pub fn build_gaussian(
    n: f64,
    u: &Vec3,
    tensor: &SymTensor3,
    m: f64,
    grid: &VelocityGrid,
) -> Result<GridField> {
    let cov = *tensor * (1.0 / m);
    let inv = cov.inverse()?;
    let norm = n / (cov * (2.0 * PI)).det().sqrt();
    Ok(grid.sample(|v| norm * (-0.5 * inv.quadratic_form(&sub(&v, u))).exp()))
}

/// Rescales `field` so its discrete density is `n`.
pub fn match_density(field: &mut GridField, n: f64, grid: &VelocityGrid) -> Result<()> {
    let got = grid.integrate(field)?;
    if got > 0.0 {
        field.scale(n / got);
    }
    Ok(())
}

/// `𝒯ₖ = (1 − μₖ) Tₖ 1 + μₖ ℙₖ/nₖ`.
pub fn tensor_single(m: &Moments, mu: f64) -> SymTensor3 {
    SymTensor3::scaled_identity((1.0 - mu) * m.temperature) + m.pressure_per_density() * mu
}

/// Interspecies velocities, temperatures and the squared drift `|u₁ − u₂|²`
/// they were built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterspeciesParams {
    pub drift_sq: f64,
    pub u12: Vec3,
    pub u21: Vec3,
    pub t12: f64,
    pub t21: f64,
}

pub fn interspecies_params(
    m1: &Moments,
    m2: &Moments,
    c: &MixtureConfig,
) -> Result<InterspeciesParams> {
    let drift_sq = norm_sq(&sub(&m1.velocity, &m2.velocity));
    Ok(InterspeciesParams {
        drift_sq,
        u12: interspecies_velocity_12(&m1.velocity, &m2.velocity, c.delta),
        u21: interspecies_velocity_21(
            &m1.velocity,
            &m2.velocity,
            c.delta,
            c.epsilon,
            c.mass1,
            c.mass2,
        ),
        t12: interspecies_temperature_12(
            m1.temperature,
            m2.temperature,
            c.alpha,
            c.gamma,
            drift_sq,
        )?,
        t21: interspecies_temperature_21(
            m1.temperature,
            m2.temperature,
            c.alpha,
            c.gamma,
            c.delta,
            c.epsilon,
            c.mass1,
            c.mass2,
            drift_sq,
        )?,
    })
}

/// `μ₁₂ = 1 + (1 − μ₁)(n₁/n₂)(ν₁₁/ν₁₂)`.
pub fn mu12_restriction(c: &MixtureConfig, n1: f64, n2: f64) -> f64 {
    let f = c.frequencies();
    1.0 + (1.0 - c.mu1) * n1 / n2 * f.nu11 / f.nu12
}

/// Coefficients `[a, b, c]` of the restriction `a μ₂₁² + b μ₂₁ + c = 0`.
pub fn mu21_restriction_coefficients(c: &MixtureConfig, n1: f64, n2: f64, mu12: f64) -> [f64; 3] {
    let f = c.frequencies();
    let (eps, alpha) = (c.epsilon, c.alpha);
    // first factor: a1 μ + b1
    let a1 = (1.0 / eps - 1.0 + alpha) * n1 * f.nu12;
    let b1 = (c.mu2 - 1.0) * n2 * f.nu22;
    // second factor: a2 μ + b2
    let a2 = n1 * f.nu12 * ((alpha - 1.0) * n1 + n2 / eps);
    let b2 = -n1 * f.nu12 * n2 / eps + (c.mu2 - 1.0) * n2 * n2 * f.nu22;
    let s = n1 / (n2 * n2);
    let constant = (alpha - 1.0).powi(2) * mu12 * mu12 * n2 * n2 * f.nu12 * f.nu12;
    let outer = 1.0 / (n1 * n1);
    [
        outer * s * a1 * a2,
        outer * s * (a1 * b2 + a2 * b1),
        outer * (s * b1 * b2 - constant),
    ]
}

/// Left-hand side of the `μ₂₁` restriction as written, for substitution checks.
pub fn mu21_residual(c: &MixtureConfig, n1: f64, n2: f64, mu12: f64, mu21: f64) -> f64 {
    let f = c.frequencies();
    let (eps, alpha) = (c.epsilon, c.alpha);
    let first = (mu21 / eps - mu21 + alpha * mu21) * n1 * f.nu12 + (c.mu2 - 1.0) * n2 * f.nu22;
    let second = n1 * ((alpha - 1.0) * mu21 * n1 + (mu21 - 1.0) * n2 / eps) * f.nu12
        + (c.mu2 - 1.0) * n2 * n2 * f.nu22;
    (-(alpha - 1.0).powi(2) * mu12 * mu12 * n2 * n2 * f.nu12 * f.nu12
        + n1 / (n2 * n2) * first * second)
        / (n1 * n1)
}

/// Real roots of the `μ₂₁` restriction, ascending. A vanishing leading
/// coefficient falls back to the linear equation.
pub fn mu21_restriction_roots(c: &MixtureConfig, n1: f64, n2: f64) -> Vec<f64> {
    let mu12 = c.mu12.unwrap_or_else(|| mu12_restriction(c, n1, n2));
    let [a, b, k] = mu21_restriction_coefficients(c, n1, n2, mu12);
    let scale = a.abs().max(b.abs()).max(k.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-14 * scale {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-k / b];
    }
    let disc = b * b - 4.0 * a * k;
    if disc < 0.0 {
        return Vec::new();
    }
    // cancellation-free quadratic formula
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = if q == 0.0 {
        vec![0.0, 0.0]
    } else {
        vec![q / a, k / q]
    };
    roots.sort_by(f64::total_cmp);
    roots
}

/// Picks the root of the `μ₂₁` restriction that keeps both coefficients of
/// `𝒯₂₁` (`1 − μ₂₁` and `μ₂₁`) non-negative. Ties go to the smaller `|μ₂₁|`.
pub fn solve_mu21_restriction(c: &MixtureConfig, n1: f64, n2: f64) -> Result<f64> {
    let roots = mu21_restriction_roots(c, n1, n2);
    roots
        .iter()
        .copied()
        .filter(|mu| (0.0..=1.0).contains(mu))
        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
        .ok_or(KineticError::NoAdmissibleMu21 { roots })
}

fn require_positive_definite(t: SymTensor3, what: &'static str) -> Result<SymTensor3> {
    let min_eigenvalue = t.eigenvalues()[0];
    if min_eigenvalue > 0.0 {
        Ok(t)
    } else {
        Err(KineticError::NotPositiveDefinite {
            what,
            min_eigenvalue,
        })
    }
}

/// Interspecies tensors with mixed pressure tensors weighted by `μ₁₂, μ₂₁`.
pub fn tensor_interspecies_a(
    m1: &Moments,
    m2: &Moments,
    c: &MixtureConfig,
) -> Result<(SymTensor3, SymTensor3)> {
    let (n1, n2) = (m1.density, m2.density);
    let mu12 = c.mu12.unwrap_or_else(|| mu12_restriction(c, n1, n2));
    let mu21 = match c.mu21 {
        Some(mu) => mu,
        None => solve_mu21_restriction(c, n1, n2)?,
    };
    tensor_interspecies_a_with(m1, m2, c, mu12, mu21)
}

/// [`tensor_interspecies_a`] with explicit weights.
pub fn tensor_interspecies_a_with(
    m1: &Moments,
    m2: &Moments,
    c: &MixtureConfig,
    mu12: f64,
    mu21: f64,
) -> Result<(SymTensor3, SymTensor3)> {
    let drift_sq = norm_sq(&sub(&m1.velocity, &m2.velocity));
    let (alpha, eps) = (c.alpha, c.epsilon);
    let (t1, t2) = (m1.temperature, m2.temperature);
    let (p1, p2) = (m1.pressure, m2.pressure);

    let mixed12 = (p1 * alpha + p2 * (1.0 - alpha)) * (1.0 / m1.density);
    let t12 = SymTensor3::scaled_identity((1.0 - mu12) * (alpha * t1 + (1.0 - alpha) * t2))
        + mixed12 * mu12
        + SymTensor3::scaled_identity(c.gamma * drift_sq);

    let w = eps * (1.0 - alpha);
    let mixed21 = (p2 * (1.0 - w) + p1 * w) * (1.0 / m2.density);
    let t21 = SymTensor3::scaled_identity((1.0 - mu21) * ((1.0 - w) * t2 + w * t1))
        + mixed21 * mu21
        + SymTensor3::scaled_identity(c.t21_drift_coefficient() * drift_sq);

    Ok((
        require_positive_definite(t12, "T12")?,
        require_positive_definite(t21, "T21")?,
    ))
}

/// Interspecies tensors keeping the own pressure tensor and the partner
/// temperature:
///
/// ```text
/// 𝒯₁₂ = α ℙ₁/n₁ + (1 − α) T₂ 1 + γ |u₁ − u₂|² 1
/// 𝒯₂₁ = (1 − ε(1 − α)) ℙ₂/n₂ + ε(1 − α) T₁ 1 + c |u₁ − u₂|² 1
/// ```
pub fn tensor_interspecies_b(
    m1: &Moments,
    m2: &Moments,
    c: &MixtureConfig,
) -> Result<(SymTensor3, SymTensor3)> {
    let drift_sq = norm_sq(&sub(&m1.velocity, &m2.velocity));
    let alpha = c.alpha;
    let w = c.epsilon * (1.0 - alpha);
    let t12 = m1.pressure_per_density() * alpha
        + SymTensor3::scaled_identity((1.0 - alpha) * m2.temperature + c.gamma * drift_sq);
    let t21 = m2.pressure_per_density() * (1.0 - w)
        + SymTensor3::scaled_identity(w * m1.temperature + c.t21_drift_coefficient() * drift_sq);
    Ok((
        require_positive_definite(t12, "T12")?,
        require_positive_definite(t21, "T21")?,
    ))
}

/// Tensors of the interspecies targets for the configured variant; the BGK
/// and ES-single variants use the isotropic `T₁₂ 1, T₂₁ 1`.
pub fn interspecies_tensors(
    m1: &Moments,
    m2: &Moments,
    c: &MixtureConfig,
) -> Result<(SymTensor3, SymTensor3)> {
    match c.variant {
        Variant::Bgk | Variant::EsSingle => {
            let p = interspecies_params(m1, m2, c)?;
            Ok((
                SymTensor3::scaled_identity(p.t12),
                SymTensor3::scaled_identity(p.t21),
            ))
        }
        Variant::EsFullA => tensor_interspecies_a(m1, m2, c),
        Variant::EsFullB => tensor_interspecies_b(m1, m2, c),
    }
}
