//! Built-in scenarios, stored in the same text format as scenario files.

pub struct Builtin {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "equilibrium-check",
        summary: "both species already share velocity and temperature; nothing may move",
        text: "\
mixture.m2 = 1.5
mixture.epsilon = 0.5
species1.u = 0.2 0 0
species2.u = 0.2 0 0
run.dt = 0.05
run.t_end = 2
run.cadence = 0.5
",
    },
    Builtin {
        name: "cross-relaxation",
        summary: "counter-streaming species at different temperatures relax to a common state",
        text: "\
mixture.m2 = 1.5
mixture.epsilon = 0.5
mixture.gamma = 0.05
species1.u = 0.5 0 0
species2.u = -0.5 0 0
species2.T = 1.5
run.dt = 0.05
run.t_end = 20
run.cadence = 0.5
",
    },
    Builtin {
        name: "decoupled-delta1-alpha1",
        summary: "delta = alpha = 1: the species never exchange momentum or energy",
        text: "\
mixture.m2 = 1.5
mixture.epsilon = 0.5
mixture.delta = 1
mixture.alpha = 1
species1.u = 0.5 0 0
species2.u = -0.5 0 0
species2.T = 1.5
run.dt = 0.05
run.t_end = 20
run.cadence = 0.5
",
    },
    Builtin {
        name: "anisotropic-relaxation",
        summary: "ES-BGK relaxation of an anisotropic Gaussian against a Maxwellian",
        text: "\
mixture.variant = es-full-b
mixture.m2 = 1.5
mixture.epsilon = 0.5
mixture.mu1 = -0.5
mixture.mu2 = 0.5
species1.kind = gaussian
species1.tensor = 0.7 1.0 1.3 0.1 0 0
run.dt = 0.05
run.t_end = 20
run.cadence = 0.5
",
    },
    Builtin {
        name: "bimaxwellian-beams",
        summary: "two beams of species 1 thermalise against a resting background",
        text: "\
mixture.variant = es-single
mixture.mu1 = 0.5
species1.kind = bimaxwellian
species1.a.u = 1 0 0
species1.b.u = -1 0 0
species1.a.T = 0.5
species1.b.T = 0.5
run.dt = 0.05
run.t_end = 20
run.cadence = 0.5
",
    },
    Builtin {
        name: "transport-sine",
        summary: "1D periodic slab with a sinusoidal density perturbation",
        text: "\
mixture.m2 = 1.5
mixture.epsilon = 0.5
species1.profile = sine
species1.amplitude = 0.2
species2.T = 1.2
run.mode = transport1d
run.cells = 16
run.length = 16
run.dt = 0.1
run.t_end = 5
run.cadence = 0.5
",
    },
];

pub fn find(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

pub fn listing() -> String {
    BUILTINS
        .iter()
        .map(|b| format!("{:<26}{}\n", b.name, b.summary))
        .collect()
}
