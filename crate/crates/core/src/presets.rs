//! Scenario catalog: named parameter sets that regenerate the reference
//! figures as data tables.
//!
//! Every scenario shares the same atomic ensemble (Γ = 6.1 MHz,
//! ω_ph = 477 Hz, Δ = 45 MHz, η = 0.15) and mechanical damping κ = 2 Hz;
//! they differ in mode layout, Rabi frequency, coupling, temperature and the
//! swept detuning range. The `notes` string of each preset records the full
//! parameter provenance.

use crate::error::{Error, Result};
use crate::params::{AtomicParams, MechanicalMode, SystemConfig};
use crate::sweep::{Bipartition, SweepAxis, SweepSpec};

/// A named, self-contained sweep scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    /// One-line description of what the scenario shows.
    pub title: &'static str,
    /// Parameter provenance: every number the scenario fixes, plus the
    /// documented variants reachable with overrides.
    pub notes: String,
    pub spec: SweepSpec,
    /// When present, the scenario is a nested scan: the inner sweep runs
    /// once per value of this outer axis grid.
    pub outer: Option<(SweepAxis, Vec<f64>)>,
}

/// Default grid resolution for scenario sweeps.
pub const DEFAULT_GRID_POINTS: usize = 401;

/// Evenly spaced, endpoint-inclusive grid.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    (0..points)
        .map(|k| start + (stop - start) * k as f64 / (points - 1) as f64)
        .collect()
}

fn atoms(rabi: f64) -> AtomicParams {
    AtomicParams {
        gamma_sp: 6.1e6,
        rabi,
        detuning: 45e6,
        lamb_dicke: 0.15,
        omega_ph: 477.0,
    }
}

fn mode(nu: f64, g: f64) -> MechanicalMode {
    MechanicalMode {
        nu,
        kappa: 2.0,
        g,
        omega_cp: None,
    }
}

fn config(rabi: f64, modes: Vec<MechanicalMode>, temperature: f64) -> SystemConfig {
    SystemConfig {
        atoms: atoms(rabi),
        modes,
        temperature,
        // Placeholder; sweeps overwrite ϑ at every grid point.
        theta: 2e6,
    }
}

fn spec(
    base: SystemConfig,
    grid: Vec<f64>,
    bipartitions: Vec<Bipartition>,
    reference_mode: usize,
) -> SweepSpec {
    SweepSpec {
        axis: SweepAxis::ThetaOverNu,
        grid,
        base,
        bipartitions,
        reference_mode,
    }
}

fn build(name: &str) -> Option<Preset> {
    let preset = match name {
        "fig2" => Preset {
            name: "fig2",
            title: "single-mode cooling and decay rate vs normalised detuning",
            notes: "single membrane: nu=2 MHz, kappa=2 Hz, g=-6.5 kHz, T=0.01 K, \
                    Omega=12 MHz; detuning scan theta/nu in [0.5, 1.5]. Variants: \
                    --set g=-5e3, --set g=0, --set temperature=0.1"
                .into(),
            spec: spec(
                config(12e6, vec![mode(2e6, -6.5e3)], 0.01),
                linspace(0.5, 1.5, DEFAULT_GRID_POINTS),
                vec![],
                0,
            ),
            outer: None,
        },
        "fig3" => Preset {
            name: "fig3",
            title: "single-mode acoustomechanical entanglement vs normalised detuning",
            notes: "single membrane: nu=2 MHz, kappa=2 Hz, g=-6.5 kHz, T=0.01 K, \
                    Omega=12 MHz; detuning scan theta/nu in [0.5, 1.5]; bipartition \
                    m1_ph. Variants: --set g=-5e3, --set temperature=0.1"
                .into(),
            spec: spec(
                config(12e6, vec![mode(2e6, -6.5e3)], 0.01),
                linspace(0.5, 1.5, DEFAULT_GRID_POINTS),
                vec![Bipartition::MechPhonon(0)],
                0,
            ),
            outer: None,
        },
        "fig4_top" => Preset {
            name: "fig4_top",
            title: "two side-by-side membranes, warm/strong-drive variant",
            notes: "two membranes: nu1=2 MHz, nu2=0.99 nu1, kappa=2 Hz, \
                    g1=g2=43 kHz, T=0.1 K, Omega=17.5 MHz; detuning scan \
                    theta/nu1 in [0.95, 1.05]; bipartition m1_m2"
                .into(),
            spec: spec(
                config(17.5e6, vec![mode(2e6, 43e3), mode(0.99 * 2e6, 43e3)], 0.1),
                linspace(0.95, 1.05, DEFAULT_GRID_POINTS),
                vec![Bipartition::MechMech(0, 1)],
                0,
            ),
            outer: None,
        },
        "fig4_bottom" => Preset {
            name: "fig4_bottom",
            title: "two side-by-side membranes, cold/simultaneous-cooling variant",
            notes: "two membranes: nu1=2 MHz, nu2=0.99 nu1, kappa=2 Hz, \
                    g1=g2=40.4 kHz (nominal 40 kHz), T=0.01 K, Omega=12 MHz; \
                    detuning scan theta/nu1 in [0.95, 1.05]; bipartition m1_m2"
                .into(),
            spec: spec(
                config(12e6, vec![mode(2e6, 40.4e3), mode(0.99 * 2e6, 40.4e3)], 0.01),
                linspace(0.95, 1.05, DEFAULT_GRID_POINTS),
                vec![Bipartition::MechMech(0, 1)],
                0,
            ),
            outer: None,
        },
        "fig5" => Preset {
            name: "fig5",
            title: "three side-by-side membranes, simultaneous cooling",
            notes: "three membranes: nu2=2 MHz, nu1=0.999 nu2, nu3=1.001 nu2, \
                    kappa=2 Hz, g1=g2=g3=-4.8 kHz, T=0.01 K, Omega=17.5 MHz; \
                    detuning scan theta/nu2 in [0.99, 1.01]; bipartitions m1_m2, \
                    m1_m3, m2_m3"
                .into(),
            spec: spec(
                config(
                    17.5e6,
                    vec![
                        mode(0.999 * 2e6, -4.8e3),
                        mode(2e6, -4.8e3),
                        mode(1.001 * 2e6, -4.8e3),
                    ],
                    0.01,
                ),
                linspace(0.99, 1.01, DEFAULT_GRID_POINTS),
                vec![
                    Bipartition::MechMech(0, 1),
                    Bipartition::MechMech(0, 2),
                    Bipartition::MechMech(1, 2),
                ],
                1,
            ),
            outer: None,
        },
        "figB1" => Preset {
            name: "figB1",
            title: "two well-separated flexural modes of one membrane: cooling",
            notes: "one membrane, two modes: nu1=2 MHz, nu2=1.5 nu1, kappa=2 Hz, \
                    g1=g2=-6.5 kHz, T=0.01 K, Omega=12 MHz; detuning scan \
                    theta/nu1 in [0.5, 2.0]"
                .into(),
            spec: spec(
                config(12e6, vec![mode(2e6, -6.5e3), mode(3e6, -6.5e3)], 0.01),
                linspace(0.5, 2.0, DEFAULT_GRID_POINTS),
                vec![],
                0,
            ),
            outer: None,
        },
        "figB2" => Preset {
            name: "figB2",
            title: "two well-separated flexural modes: acoustomechanical entanglement",
            notes: "same parameters as figB1; bipartitions m1_ph and m2_ph".into(),
            spec: spec(
                config(12e6, vec![mode(2e6, -6.5e3), mode(3e6, -6.5e3)], 0.01),
                linspace(0.5, 2.0, DEFAULT_GRID_POINTS),
                vec![Bipartition::MechPhonon(0), Bipartition::MechPhonon(1)],
                0,
            ),
            outer: None,
        },
        "figB3" => Preset {
            name: "figB3",
            title: "two well-separated flexural modes: mechanical entanglement",
            notes: "same parameters as figB1; bipartition m1_m2".into(),
            spec: spec(
                config(12e6, vec![mode(2e6, -6.5e3), mode(3e6, -6.5e3)], 0.01),
                linspace(0.5, 2.0, DEFAULT_GRID_POINTS),
                vec![Bipartition::MechMech(0, 1)],
                0,
            ),
            outer: None,
        },
        "figB_density" => Preset {
            name: "figB_density",
            title: "single-mode occupation over the (coupling, detuning) plane",
            notes: "single membrane: nu=2 MHz, kappa=2 Hz, T=0.01 K, Omega=12 MHz; \
                    outer coupling scan g in [-10 kHz, 0] (41 values), inner \
                    detuning scan theta/nu in [0.5, 1.5]. Variants: --set \
                    temperature=0.1 / 10 / 100"
                .into(),
            spec: spec(
                config(12e6, vec![mode(2e6, -6.5e3)], 0.01),
                linspace(0.5, 1.5, DEFAULT_GRID_POINTS),
                vec![],
                0,
            ),
            outer: Some((SweepAxis::Coupling, linspace(-10e3, 0.0, 41))),
        },
        _ => return None,
    };
    Some(preset)
}

const PRESET_NAMES: [&str; 9] = [
    "fig2",
    "fig3",
    "fig4_top",
    "fig4_bottom",
    "fig5",
    "figB1",
    "figB2",
    "figB3",
    "figB_density",
];

/// Looks up a preset by name.
pub fn preset(name: &str) -> Result<Preset> {
    build(name).ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

/// The full catalog, in display order.
pub fn list_presets() -> Vec<Preset> {
    PRESET_NAMES
        .iter()
        .map(|name| build(name).expect("catalog names are buildable"))
        .collect()
}
