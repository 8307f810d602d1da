use super::config::{parse_config, ExperimentConfig};
use crate::{Error, Result};

/// A named, ready-to-run configuration document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub figure: &'static str,
    pub summary: &'static str,
    model: &'static str,
    body: &'static str,
}

impl Preset {
    pub fn document(&self) -> String {
        format!("name = {}\n{}{}", self.name, self.model, self.body)
    }

    pub fn config(&self) -> Result<ExperimentConfig> {
        parse_config(&self.document())
    }
}

const AP_FOCK: &str = "model = ap
ap.omega = 1
ap.omega0 = 1
ap.gamma = 0.01
ap.g = 1
initial.field = fock 10
initial.atom = fock 0
";

const AP_COHERENT: &str = "model = ap
ap.omega = 1
ap.omega0 = 1
ap.gamma = 0.01
ap.g = 1
initial.field = coherent 2.23606797749979 0
initial.atom = fock 0
";

const LAMBDA: &str = "model = lambda
lambda.omega_atomic = 0, 0, 1
lambda.omega_fields = 1, 1
lambda.chi = 5
lambda.kappa = 1
initial.field1 = coherent 1 0
initial.field2 = coherent 1 0
";

const fn entry(
    name: &'static str,
    figure: &'static str,
    summary: &'static str,
    model: &'static str,
    body: &'static str,
) -> Preset {
    Preset {
        name,
        figure,
        summary,
        model,
        body,
    }
}

const KERR: &str = "model = kerr
kerr.lambda = 1
initial.field = coherent 0 7
";

pub const PRESETS: &[Preset] = &[
    entry(
        "fig1",
        "Fig. 1",
        "Kerr |α|² = 49 (α = 7i), λ = 1: tomograms at λt = T_rev/2 − 0.005, T_rev/2, T_rev/2 + 0.005",
        KERR,
        "time.subpackets = 2\ntime.offsets = -0.005, 0, 0.005\nproducts = tomogram, fidelity\n"
    ),
    entry(
        "fig2a",
        "Fig. 2(a)",
        "field + oscillator atom, ω = ω₀ = 1, γ/g = 0.01, |10; 0⟩: SLE for gt = 0..700 (Δ = 1)",
        AP_FOCK,
        "time.start = 0\ntime.stop = 700\ntime.step = 1\nproducts = sle\n"
    ),
    entry(
        "fig2b",
        "Fig. 2(b)",
        "field + oscillator atom, ω = ω₀ = 1, γ/g = 0.01, |α = √5; 0⟩: SLE for gt = 0..1400 (Δ = 1)",
        AP_COHERENT,
        "time.start = 0\ntime.stop = 1400\ntime.step = 1\nproducts = sle\n"
    ),
    entry(
        "fig3top",
        "Fig. 3 (top)",
        "field tomograms for |10; 0⟩ at gt = 625, 626, 627",
        AP_FOCK,
        "time.list = 625, 626, 627\nproducts = tomogram, sle\n"
    ),
    entry(
        "fig3bottom",
        "Fig. 3 (bottom)",
        "field tomograms for |α = √5; 0⟩ at gt = 1268, 1269, 1270",
        AP_COHERENT,
        "time.list = 1268, 1269, 1270\nproducts = tomogram, sle\n"
    ),
    entry(
        "fig4",
        "Fig. 4",
        "Λ atom, κ = 1, χ = 5, Δ_i = 0, |α|² = 1: S_c for τ = 0..5000 (Δτ = 5)",
        LAMBDA,
        "time.start = 0\ntime.stop = 5000\ntime.step = 5\nproducts = s_c\n"
    ),
    entry(
        "fig5",
        "Fig. 5",
        "Λ atom: tomogram and Wigner function of field F₁ at τ = 0, 5, 10, 15",
        LAMBDA,
        "time.list = 0, 5, 10, 15\nproducts = tomogram, wigner, s_c\n"
    ),
    entry(
        "fig6a",
        "Fig. 6(a)",
        "Λ atom: ξ_IPR of the two fields for τ = 0..150 (Δτ = 5)",
        LAMBDA,
        "time.start = 0\ntime.stop = 150\ntime.step = 5\nproducts = xi_ipr\n"
    ),
    entry(
        "fig6b",
        "Fig. 6(b)",
        "Λ atom: ξ_IPR of the two fields for τ = 2000..2400 (Δτ = 50)",
        LAMBDA,
        "time.start = 2000\ntime.stop = 2400\ntime.step = 50\nproducts = xi_ipr\n"
    ),
    entry(
        "fig7top",
        "Fig. 7 (top)",
        "Λ atom: field F₁ tomograms at τ = 55, 60, 65",
        LAMBDA,
        "time.list = 55, 60, 65\nproducts = tomogram, xi_ipr\n"
    ),
    entry(
        "fig7bottom",
        "Fig. 7 (bottom)",
        "Λ atom: field F₁ tomograms at τ = 2200, 2250, 2300",
        LAMBDA,
        "time.list = 2200, 2250, 2300\nproducts = tomogram, xi_ipr\n"
    ),
];

pub fn preset(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        Error::Config(vec![format!("unknown preset `{name}`; available: {}", names.join(", "))])
    })
}

/// One line per preset: name, figure, summary and its time grid.
pub fn list_presets() -> String {
    let mut out = String::new();
    for p in PRESETS {
        let grid = p
            .config()
            .map(|c| describe_times(&c))
            .unwrap_or_else(|e| format!("invalid: {e}"));
        out.push_str(&format!("{:<11} {:<16} {} [{}]\n", p.name, p.figure, p.summary, grid));
    }
    out
}

fn describe_times(cfg: &ExperimentConfig) -> String {
    use super::config::TimeSpec;
    let label = cfg.model.convention().label();
    match &cfg.time {
        TimeSpec::List(ts) => format!(
            "{label} ∈ {{{}}}",
            ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
        ),
        TimeSpec::Range { start, stop, step } => format!("{label} = {start}..{stop}, Δ = {step}"),
        TimeSpec::Revival {
            subpackets,
            multiple,
            offsets,
        } => format!(
            "{label} = {multiple}·π/{subpackets} + {{{}}}",
            offsets.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
        ),
    }
}
