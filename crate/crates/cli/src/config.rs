//! Scenario files.
//!
//! A scenario is plain text with one `section.key = value` per line. `#`
//! starts a comment, blank lines are ignored, keys are case-insensitive and
//! every key is optional. Vectors and tensors are written as whitespace- or
//! comma-separated numbers; tensors list `xx yy zz xy xz yz`.
//!
//! ```text
//! mixture.variant = es-full-b
//! mixture.m2      = 1.5
//! species1.kind   = maxwellian
//! species1.u      = 0.5 0 0
//! run.t_end       = 20
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use mixkin_core::closures::validate_config;
use mixkin_core::vgrid::{DEFAULT_POINTS, DEFAULT_SAFETY, MIN_POINTS};
use mixkin_core::{MixtureConfig, Moments, SymTensor3, TargetMode, Variant, Vec3};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is not tied to one line.
    pub line: usize,
    pub message: String,
}

pub struct KeySpec {
    pub key: &'static str,
    pub kind: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

const fn key(
    key: &'static str,
    kind: &'static str,
    default: &'static str,
    doc: &'static str,
) -> KeySpec {
    KeySpec {
        key,
        kind,
        default,
        doc,
    }
}

/// Every accepted key. `speciesK` stands for `species1` and `species2`.
pub const SCHEMA: &[KeySpec] = &[
    key(
        "mixture.variant",
        "bgk|es-single|es-full-a|es-full-b",
        "bgk",
        "collision model",
    ),
    key(
        "mixture.targets",
        "mass-exact|sampled",
        "mass-exact",
        "rescale targets to the exact discrete density",
    ),
    key("mixture.m1", "number > 0", "1", "mass of species 1"),
    key("mixture.m2", "number > 0", "1", "mass of species 2"),
    key(
        "mixture.epsilon",
        "0 < number <= 1",
        "1",
        "nu12 = epsilon * nu21",
    ),
    key("mixture.beta1", "number >= 0", "1", "nu11 = beta1 * nu12"),
    key("mixture.beta2", "number >= 0", "1", "nu22 = beta2 * nu21"),
    key(
        "mixture.nu12",
        "number >= 0",
        "1",
        "interspecies collision frequency",
    ),
    key("mixture.delta", "number", "0.5", "mixing weight of u12"),
    key(
        "mixture.alpha",
        "0 <= number <= 1",
        "0.5",
        "mixing weight of T12",
    ),
    key(
        "mixture.gamma",
        "number >= 0",
        "0",
        "drift heating coefficient of T12",
    ),
    key(
        "mixture.mu1",
        "-1/2 <= number <= 1",
        "0",
        "ES parameter of species 1",
    ),
    key(
        "mixture.mu2",
        "-1/2 <= number <= 1",
        "0",
        "ES parameter of species 2",
    ),
    key(
        "mixture.mu12",
        "number|derived",
        "derived",
        "es-full-a mixed parameter",
    ),
    key(
        "mixture.mu21",
        "number|derived",
        "derived",
        "es-full-a mixed parameter",
    ),
    key(
        "grid.extent",
        "number > 0|auto",
        "auto",
        "velocity box half-width",
    ),
    key(
        "grid.points",
        "odd integer >= 9",
        "33",
        "velocity nodes per axis",
    ),
    key(
        "grid.safety",
        "number > 0",
        "7",
        "thermal widths covered by an auto extent",
    ),
    key(
        "speciesK.kind",
        "maxwellian|gaussian|bimaxwellian",
        "maxwellian",
        "initial distribution",
    ),
    key("speciesK.n", "number > 0", "1", "density"),
    key("speciesK.u", "vector", "0 0 0", "mean velocity"),
    key("speciesK.T", "number > 0", "1", "temperature (maxwellian)"),
    key(
        "speciesK.tensor",
        "xx yy zz xy xz yz",
        "1 1 1 0 0 0",
        "temperature tensor (gaussian)",
    ),
    key(
        "speciesK.a.n",
        "number > 0",
        "0.5",
        "first bimaxwellian summand: density",
    ),
    key(
        "speciesK.a.u",
        "vector",
        "0 0 0",
        "first bimaxwellian summand: velocity",
    ),
    key(
        "speciesK.a.T",
        "number > 0",
        "1",
        "first bimaxwellian summand: temperature",
    ),
    key(
        "speciesK.b.n",
        "number > 0",
        "0.5",
        "second bimaxwellian summand: density",
    ),
    key(
        "speciesK.b.u",
        "vector",
        "0 0 0",
        "second bimaxwellian summand: velocity",
    ),
    key(
        "speciesK.b.T",
        "number > 0",
        "1",
        "second bimaxwellian summand: temperature",
    ),
    key(
        "speciesK.profile",
        "uniform|sine|tophat",
        "uniform",
        "density profile along x (transport1d)",
    ),
    key(
        "speciesK.amplitude",
        "number",
        "0",
        "relative amplitude of the profile",
    ),
    key(
        "run.mode",
        "homogeneous|transport1d",
        "homogeneous",
        "space-homogeneous or 1D periodic slab",
    ),
    key("run.dt", "number > 0|auto", "auto", "time step"),
    key("run.t_end", "number > 0", "10", "final time"),
    key(
        "run.cadence",
        "number > 0",
        "0.5",
        "time between diagnostics rows",
    ),
    key(
        "run.cells",
        "integer >= 1",
        "16",
        "spatial cells (transport1d)",
    ),
    key(
        "run.length",
        "number > 0",
        "16",
        "slab length (transport1d)",
    ),
    key(
        "run.cfl",
        "0 < number <= 1",
        "0.9",
        "bound on dt * V / dx (transport1d)",
    ),
    key(
        "run.stability",
        "0 < number <= 1",
        "0.9",
        "bound on dt * largest collision rate",
    ),
    key(
        "output.directory",
        "path",
        "out/<scenario>",
        "where results are written",
    ),
    key("output.dump", "bool", "false", "write distribution dumps"),
    key(
        "output.dump_every",
        "integer >= 1",
        "10",
        "steps between dumps",
    ),
    key(
        "output.deterministic",
        "bool",
        "true",
        "fixed-order reductions (always on)",
    ),
];

fn known(key: &str) -> bool {
    let generic = match key.split_once('.') {
        Some(("species1" | "species2", rest)) => format!("speciesk.{rest}"),
        _ => key.to_string(),
    };
    SCHEMA.iter().any(|k| k.key.to_lowercase() == generic)
}

pub fn schema_text() -> String {
    let mut out = String::from("# key = default    (type) description\n");
    out.push_str("# speciesK stands for species1 and species2\n");
    for k in SCHEMA {
        out.push_str(&format!(
            "{} = {}    ({}) {}\n",
            k.key, k.default, k.kind, k.doc
        ));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extent {
    Auto,
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub extent: Extent,
    pub points: usize,
    pub safety: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Drifting {
    pub n: f64,
    pub u: Vec3,
    pub t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Maxwellian(Drifting),
    Gaussian { n: f64, u: Vec3, tensor: SymTensor3 },
    BiMaxwellian(Drifting, Drifting),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    Uniform,
    Sine,
    TopHat,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpeciesSpec {
    pub shape: Shape,
    pub profile: Profile,
    pub amplitude: f64,
}

impl SpeciesSpec {
    /// Moments of the unmodulated initial distribution.
    pub fn moments(&self, mass: f64) -> Moments {
        match self.shape {
            Shape::Maxwellian(d) => Moments::maxwellian(d.n, d.u, d.t),
            Shape::Gaussian { n, u, tensor } => Moments::gaussian(n, u, tensor),
            Shape::BiMaxwellian(a, b) => {
                let n = a.n + b.n;
                let u: Vec3 = std::array::from_fn(|i| (a.n * a.u[i] + b.n * b.u[i]) / n);
                let mut p = SymTensor3::scaled_identity(a.n * a.t + b.n * b.t);
                for part in [a, b] {
                    let c: Vec3 = std::array::from_fn(|i| part.u[i] - u[i]);
                    p = p + SymTensor3::outer(&c) * (mass * part.n);
                }
                Moments {
                    density: n,
                    velocity: u,
                    temperature: p.trace() / (3.0 * n),
                    pressure: p,
                }
            }
        }
    }

    /// Maxwellian or Gaussian pieces the distribution is built from.
    pub fn components(&self) -> Vec<Moments> {
        match self.shape {
            Shape::Maxwellian(d) => vec![Moments::maxwellian(d.n, d.u, d.t)],
            Shape::Gaussian { n, u, tensor } => vec![Moments::gaussian(n, u, tensor)],
            Shape::BiMaxwellian(a, b) => vec![
                Moments::maxwellian(a.n, a.u, a.t),
                Moments::maxwellian(b.n, b.u, b.t),
            ],
        }
    }

    /// Density multiplier at position `x` of a slab of length `length`.
    pub fn density_factor(&self, x: f64, length: f64) -> f64 {
        match self.profile {
            Profile::Uniform => 1.0,
            Profile::Sine => 1.0 + self.amplitude * (std::f64::consts::TAU * x / length).sin(),
            Profile::TopHat => {
                if (0.25 * length..0.75 * length).contains(&x) {
                    1.0 + self.amplitude
                } else {
                    1.0
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Homogeneous,
    Transport1D,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TimeStep {
    Auto,
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunSpec {
    pub mode: Mode,
    pub dt: TimeStep,
    pub t_end: f64,
    pub cadence: f64,
    pub cells: usize,
    pub length: f64,
    pub cfl: f64,
    pub stability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputSpec {
    pub directory: Option<PathBuf>,
    pub dump: bool,
    pub dump_every: usize,
    pub deterministic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub mixture: MixtureConfig,
    pub grid: GridSpec,
    pub species: [SpeciesSpec; 2],
    pub run: RunSpec,
    pub output: OutputSpec,
}

struct Entries(BTreeMap<String, (usize, String)>);

impl Entries {
    fn raw(&self, key: &str) -> Option<(usize, &str)> {
        self.0.get(key).map(|(line, v)| (*line, v.as_str()))
    }

    fn err(line: usize, key: &str, what: &str, value: &str) -> ParseError {
        ParseError {
            line,
            message: format!("{key}: expected {what}, got '{value}'"),
        }
    }

    fn number(&self, key: &str, default: f64) -> Result<f64, ParseError> {
        match self.raw(key) {
            None => Ok(default),
            Some((line, v)) => v.parse().map_err(|_| Self::err(line, key, "a number", v)),
        }
    }

    fn integer(&self, key: &str, default: usize) -> Result<usize, ParseError> {
        match self.raw(key) {
            None => Ok(default),
            Some((line, v)) => v
                .parse()
                .map_err(|_| Self::err(line, key, "a non-negative integer", v)),
        }
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool, ParseError> {
        match self.raw(key) {
            None => Ok(default),
            Some((line, v)) => match v.to_lowercase().as_str() {
                "true" | "yes" | "on" | "1" => Ok(true),
                "false" | "no" | "off" | "0" => Ok(false),
                _ => Err(Self::err(line, key, "true or false", v)),
            },
        }
    }

    fn numbers<const K: usize>(
        &self,
        key: &str,
        default: [f64; K],
    ) -> Result<[f64; K], ParseError> {
        let Some((line, v)) = self.raw(key) else {
            return Ok(default);
        };
        let parts: Vec<&str> = v
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let what = format!("{K} numbers");
        if parts.len() != K {
            return Err(Self::err(line, key, &what, v));
        }
        let mut out = [0.0; K];
        for (o, p) in out.iter_mut().zip(parts) {
            *o = p.parse().map_err(|_| Self::err(line, key, &what, v))?;
        }
        Ok(out)
    }

    fn number_or_auto(&self, key: &str) -> Result<Option<f64>, ParseError> {
        match self.raw(key) {
            None => Ok(None),
            Some((_, v)) if v.eq_ignore_ascii_case("auto") || v.eq_ignore_ascii_case("derived") => {
                Ok(None)
            }
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| Self::err(line, key, "a number or auto", v)),
        }
    }

    fn choice<T: Copy>(
        &self,
        key: &str,
        default: T,
        options: &[(&str, T)],
    ) -> Result<T, ParseError> {
        let Some((line, v)) = self.raw(key) else {
            return Ok(default);
        };
        let wanted = v.to_lowercase();
        options
            .iter()
            .find(|(name, _)| *name == wanted)
            .map(|(_, t)| *t)
            .ok_or_else(|| {
                let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
                Self::err(line, key, &names.join("|"), v)
            })
    }

    fn drifting(&self, prefix: &str, default_n: f64) -> Result<Drifting, ParseError> {
        Ok(Drifting {
            n: self.number(&format!("{prefix}.n"), default_n)?,
            u: self.numbers(&format!("{prefix}.u"), [0.0; 3])?,
            t: self.number(&format!("{prefix}.t"), 1.0)?,
        })
    }

    fn species(&self, k: usize) -> Result<SpeciesSpec, ParseError> {
        let p = format!("species{k}");
        #[derive(Clone, Copy)]
        enum Kind {
            Maxwellian,
            Gaussian,
            Bi,
        }
        let kind = self.choice(
            &format!("{p}.kind"),
            Kind::Maxwellian,
            &[
                ("maxwellian", Kind::Maxwellian),
                ("gaussian", Kind::Gaussian),
                ("bimaxwellian", Kind::Bi),
            ],
        )?;
        let shape = match kind {
            Kind::Maxwellian => Shape::Maxwellian(self.drifting(&p, 1.0)?),
            Kind::Gaussian => {
                let t = self.numbers(&format!("{p}.tensor"), [1.0, 1.0, 1.0, 0.0, 0.0, 0.0])?;
                Shape::Gaussian {
                    n: self.number(&format!("{p}.n"), 1.0)?,
                    u: self.numbers(&format!("{p}.u"), [0.0; 3])?,
                    tensor: SymTensor3::new(t[0], t[1], t[2], t[3], t[4], t[5]),
                }
            }
            Kind::Bi => Shape::BiMaxwellian(
                self.drifting(&format!("{p}.a"), 0.5)?,
                self.drifting(&format!("{p}.b"), 0.5)?,
            ),
        };
        Ok(SpeciesSpec {
            shape,
            profile: self.choice(
                &format!("{p}.profile"),
                Profile::Uniform,
                &[
                    ("uniform", Profile::Uniform),
                    ("sine", Profile::Sine),
                    ("tophat", Profile::TopHat),
                ],
            )?,
            amplitude: self.number(&format!("{p}.amplitude"), 0.0)?,
        })
    }
}

fn tokenize(text: &str) -> Result<Entries, ParseError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((k, v)) = content.split_once('=') else {
            return Err(ParseError {
                line,
                message: format!("expected 'section.key = value', got '{content}'"),
            });
        };
        let k = k.trim().to_lowercase();
        let v = v.trim();
        if !known(&k) {
            return Err(ParseError {
                line,
                message: format!("unknown key '{k}'"),
            });
        }
        if v.is_empty() {
            return Err(ParseError {
                line,
                message: format!("{k}: missing value"),
            });
        }
        if let Some((first, _)) = map.insert(k.clone(), (line, v.to_string())) {
            return Err(ParseError {
                line,
                message: format!("{k}: already set on line {first}"),
            });
        }
    }
    Ok(Entries(map))
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let e = tokenize(text)?;
        let variants: Vec<(&str, Variant)> = Variant::ALL.iter().map(|v| (v.name(), *v)).collect();
        let mixture = MixtureConfig {
            mass1: e.number("mixture.m1", 1.0)?,
            mass2: e.number("mixture.m2", 1.0)?,
            epsilon: e.number("mixture.epsilon", 1.0)?,
            beta1: e.number("mixture.beta1", 1.0)?,
            beta2: e.number("mixture.beta2", 1.0)?,
            nu12: e.number("mixture.nu12", 1.0)?,
            delta: e.number("mixture.delta", 0.5)?,
            alpha: e.number("mixture.alpha", 0.5)?,
            gamma: e.number("mixture.gamma", 0.0)?,
            mu1: e.number("mixture.mu1", 0.0)?,
            mu2: e.number("mixture.mu2", 0.0)?,
            mu12: e.number_or_auto("mixture.mu12")?,
            mu21: e.number_or_auto("mixture.mu21")?,
            variant: e.choice("mixture.variant", Variant::Bgk, &variants)?,
            target_mode: e.choice(
                "mixture.targets",
                TargetMode::MassExact,
                &[
                    ("mass-exact", TargetMode::MassExact),
                    ("sampled", TargetMode::Sampled),
                ],
            )?,
            frequency_override: None,
        };
        let grid = GridSpec {
            extent: e
                .number_or_auto("grid.extent")?
                .map_or(Extent::Auto, Extent::Fixed),
            points: e.integer("grid.points", DEFAULT_POINTS)?,
            safety: e.number("grid.safety", DEFAULT_SAFETY)?,
        };
        let run = RunSpec {
            mode: e.choice(
                "run.mode",
                Mode::Homogeneous,
                &[
                    ("homogeneous", Mode::Homogeneous),
                    ("transport1d", Mode::Transport1D),
                ],
            )?,
            dt: e
                .number_or_auto("run.dt")?
                .map_or(TimeStep::Auto, TimeStep::Fixed),
            t_end: e.number("run.t_end", 10.0)?,
            cadence: e.number("run.cadence", 0.5)?,
            cells: e.integer("run.cells", 16)?,
            length: e.number("run.length", 16.0)?,
            cfl: e.number("run.cfl", 0.9)?,
            stability: e.number("run.stability", 0.9)?,
        };
        let output = OutputSpec {
            directory: e.raw("output.directory").map(|(_, v)| PathBuf::from(v)),
            dump: e.flag("output.dump", false)?,
            dump_every: e.integer("output.dump_every", 10)?,
            deterministic: e.flag("output.deterministic", true)?,
        };
        Ok(Self {
            mixture,
            grid,
            species: [e.species(1)?, e.species(2)?],
            run,
            output,
        })
    }

    /// Every parameter problem found before any grid is built.
    pub fn validate(&self) -> Vec<Problem> {
        let mut out: Vec<Problem> = validate_config(&self.mixture)
            .into_iter()
            .map(|v| Problem::new(format!("mixture.{}", v.parameter), v.value, v.bound))
            .collect();
        let mut check = |name: String, value: f64, ok: bool, bound: &str| {
            if !ok {
                out.push(Problem::new(name, value, bound.to_string()));
            }
        };

        let g = &self.grid;
        if let Extent::Fixed(v) = g.extent {
            check(
                "grid.extent".into(),
                v,
                v > 0.0 && v.is_finite(),
                "extent > 0",
            );
        }
        let p = g.points;
        check(
            "grid.points".into(),
            p as f64,
            p >= MIN_POINTS && p % 2 == 1,
            "odd point count >= 9",
        );
        check("grid.safety".into(), g.safety, g.safety > 0.0, "safety > 0");

        for (k, s) in self.species.iter().enumerate() {
            let p = format!("species{}", k + 1);
            match s.shape {
                Shape::Maxwellian(d) => {
                    check(format!("{p}.n"), d.n, d.n > 0.0, "n > 0");
                    check(format!("{p}.T"), d.t, d.t > 0.0, "T > 0");
                }
                Shape::Gaussian { n, tensor, .. } => {
                    check(format!("{p}.n"), n, n > 0.0, "n > 0");
                    let low = tensor.eigenvalues()[0];
                    check(
                        format!("{p}.tensor"),
                        low,
                        low > 0.0,
                        "positive definite tensor",
                    );
                }
                Shape::BiMaxwellian(a, b) => {
                    for (tag, d) in [("a", a), ("b", b)] {
                        check(format!("{p}.{tag}.n"), d.n, d.n > 0.0, "n > 0");
                        check(format!("{p}.{tag}.T"), d.t, d.t > 0.0, "T > 0");
                    }
                }
            }
            let a = s.amplitude;
            match s.profile {
                Profile::Uniform => {}
                Profile::Sine => check(
                    format!("{p}.amplitude"),
                    a,
                    a.abs() < 1.0,
                    "|amplitude| < 1",
                ),
                Profile::TopHat => check(format!("{p}.amplitude"), a, a > -1.0, "amplitude > -1"),
            }
        }

        let r = &self.run;
        if let TimeStep::Fixed(dt) = r.dt {
            check("run.dt".into(), dt, dt > 0.0, "dt > 0");
        }
        check("run.t_end".into(), r.t_end, r.t_end > 0.0, "t_end > 0");
        check(
            "run.cadence".into(),
            r.cadence,
            r.cadence > 0.0,
            "cadence > 0",
        );
        check(
            "run.stability".into(),
            r.stability,
            r.stability > 0.0 && r.stability <= 1.0,
            "0 < stability <= 1",
        );
        if r.mode == Mode::Transport1D {
            check(
                "run.cells".into(),
                r.cells as f64,
                r.cells >= 1,
                "cells >= 1",
            );
            check("run.length".into(), r.length, r.length > 0.0, "length > 0");
            check(
                "run.cfl".into(),
                r.cfl,
                r.cfl > 0.0 && r.cfl <= 1.0,
                "0 < cfl <= 1",
            );
        }
        check(
            "output.dump_every".into(),
            self.output.dump_every as f64,
            self.output.dump_every >= 1,
            "dump_every >= 1",
        );
        out
    }
}

/// One rejected parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub parameter: String,
    pub value: f64,
    pub bound: String,
}

impl Problem {
    pub fn new(parameter: String, value: f64, bound: String) -> Self {
        Self {
            parameter,
            value,
            bound,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} violates {}",
            self.parameter, self.value, self.bound
        )
    }
}
