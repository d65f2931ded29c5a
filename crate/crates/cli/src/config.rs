//! Configuration documents: a JSON tree with `atoms`, `modes`, `bath`,
//! `control` and optional `sweep` sections, plus `--set key=value` overrides
//! applied on top of the parsed tree.

use std::path::Path;

use phonoflex::params::{AtomicParams, MechanicalMode, SystemConfig};
use phonoflex::presets::{linspace, Preset};
use phonoflex::sweep::{Bipartition, SweepAxis, SweepSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub atoms: AtomicParams,
    pub modes: Vec<MechanicalMode>,
    pub bath: BathSection,
    pub control: ControlSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathSection {
    pub temperature: f64,
}

/// Control detuning: either absolute (`theta`, Hz) or normalised to a
/// reference mode frequency (`theta_over_nu` with 1-based `reference_mode`,
/// default mode 1).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_over_nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_mode: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: SweepAxis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Explicit grid; takes precedence over start/stop/points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bipartitions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_mode: Option<usize>,
}

impl ConfigDocument {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{} is not a valid config: {e}", path.display())))
    }

    /// Converts a scenario preset into a document. The control section
    /// defaults to the resonance point of the preset's reference mode.
    pub fn from_preset(preset: &Preset) -> Self {
        let spec = &preset.spec;
        let grid = &spec.grid;
        let uniform = is_uniform(grid);
        ConfigDocument {
            atoms: spec.base.atoms.clone(),
            modes: spec.base.modes.clone(),
            bath: BathSection {
                temperature: spec.base.temperature,
            },
            control: ControlSection {
                theta: None,
                theta_over_nu: Some(1.0),
                reference_mode: Some(spec.reference_mode + 1),
            },
            sweep: Some(SweepSection {
                axis: spec.axis,
                start: uniform.then(|| grid[0]),
                stop: uniform.then(|| grid[grid.len() - 1]),
                points: uniform.then_some(grid.len()),
                grid: (!uniform).then(|| grid.clone()),
                bipartitions: spec.bipartitions.iter().map(|b| b.label()).collect(),
                reference_mode: Some(spec.reference_mode + 1),
            }),
        }
    }

    /// Applies one `key=value` override. Keys are dotted paths into the
    /// sections (`atoms.rabi`, `modes.1.nu`, `bath.temperature`,
    /// `control.theta`, `sweep.points`, …) or one of the short aliases:
    /// `gamma_sp`, `rabi`, `detuning`, `lamb_dicke`, `omega_ph`,
    /// `temperature`, `theta`, `theta_over_nu`, `g` (all modes), `nu`,
    /// `kappa` (single-mode configs only).
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, raw) = assignment.split_once('=').ok_or_else(|| {
            CliError::Config(format!("override `{assignment}` is not of the form key=value"))
        })?;
        let bad_value =
            |raw: &str| CliError::Config(format!("override `{key}`: `{raw}` is not a number"));
        let number = |raw: &str| raw.parse::<f64>().map_err(|_| bad_value(raw));
        let integer = |raw: &str| raw.parse::<usize>().map_err(|_| bad_value(raw));

        match key {
            "gamma_sp" | "atoms.gamma_sp" => self.atoms.gamma_sp = number(raw)?,
            "rabi" | "atoms.rabi" => self.atoms.rabi = number(raw)?,
            "detuning" | "atoms.detuning" => self.atoms.detuning = number(raw)?,
            "lamb_dicke" | "atoms.lamb_dicke" => self.atoms.lamb_dicke = number(raw)?,
            "omega_ph" | "atoms.omega_ph" => self.atoms.omega_ph = number(raw)?,
            "temperature" | "bath.temperature" => self.bath.temperature = number(raw)?,
            "theta" | "control.theta" => {
                self.control.theta = Some(number(raw)?);
                self.control.theta_over_nu = None;
            }
            "theta_over_nu" | "control.theta_over_nu" => {
                self.control.theta_over_nu = Some(number(raw)?);
                self.control.theta = None;
            }
            "control.reference_mode" => self.control.reference_mode = Some(integer(raw)?),
            "g" => {
                let g = number(raw)?;
                for mode in &mut self.modes {
                    mode.g = g;
                }
            }
            "nu" | "kappa" => {
                if self.modes.len() != 1 {
                    return Err(CliError::Config(format!(
                        "override `{key}` is ambiguous with {} modes; use modes.<i>.{key}",
                        self.modes.len()
                    )));
                }
                if key == "nu" {
                    self.modes[0].nu = number(raw)?;
                } else {
                    self.modes[0].kappa = number(raw)?;
                }
            }
            "sweep.axis" => {
                self.sweep_mut()?.axis = match raw {
                    "theta_over_nu" => SweepAxis::ThetaOverNu,
                    "coupling" => SweepAxis::Coupling,
                    "temperature" => SweepAxis::Temperature,
                    other => {
                        return Err(CliError::Config(format!(
                            "override `sweep.axis`: unknown axis `{other}`"
                        )))
                    }
                }
            }
            "sweep.start" => {
                let v = number(raw)?;
                let sweep = self.sweep_mut()?;
                sweep.start = Some(v);
                sweep.grid = None;
            }
            "sweep.stop" => {
                let v = number(raw)?;
                let sweep = self.sweep_mut()?;
                sweep.stop = Some(v);
                sweep.grid = None;
            }
            "sweep.points" => {
                let v = integer(raw)?;
                let sweep = self.sweep_mut()?;
                sweep.points = Some(v);
                sweep.grid = None;
            }
            "sweep.reference_mode" => self.sweep_mut()?.reference_mode = Some(integer(raw)?),
            other => {
                if let Some(rest) = other.strip_prefix("modes.") {
                    return self.apply_mode_override(rest, raw, other);
                }
                return Err(CliError::Config(format!("unknown override key `{other}`")));
            }
        }
        Ok(())
    }

    fn apply_mode_override(&mut self, rest: &str, raw: &str, full: &str) -> Result<(), CliError> {
        let (index, field) = rest.split_once('.').ok_or_else(|| {
            CliError::Config(format!("override `{full}`: expected modes.<i>.<field>"))
        })?;
        let index: usize = index
            .parse()
            .map_err(|_| CliError::Config(format!("override `{full}`: bad mode index")))?;
        let n = self.modes.len();
        let mode = self.modes.get_mut(index).ok_or_else(|| {
            CliError::Config(format!(
                "override `{full}`: mode index {index} out of range for {n} modes (0-based)"
            ))
        })?;
        let value: f64 = raw
            .parse()
            .map_err(|_| CliError::Config(format!("override `{full}`: `{raw}` is not a number")))?;
        match field {
            "nu" => mode.nu = value,
            "kappa" => mode.kappa = value,
            "g" => mode.g = value,
            "omega_cp" => mode.omega_cp = Some(value),
            other => {
                return Err(CliError::Config(format!(
                    "override `{full}`: unknown mode field `{other}`"
                )))
            }
        }
        Ok(())
    }

    fn sweep_mut(&mut self) -> Result<&mut SweepSection, CliError> {
        self.sweep
            .as_mut()
            .ok_or_else(|| CliError::Config("config has no sweep section to override".into()))
    }

    /// Resolves the document into a core configuration; the control section
    /// must define the detuning exactly one way.
    pub fn resolve_config(&self) -> Result<SystemConfig, CliError> {
        let theta = match (self.control.theta, self.control.theta_over_nu) {
            (Some(theta), None) => theta,
            (None, Some(ratio)) => {
                let reference = self.control.reference_mode.unwrap_or(1);
                let mode = self.checked_mode(reference, "control.reference_mode")?;
                ratio * mode.nu
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "control section defines both theta and theta_over_nu".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Config(
                    "control section must define theta or theta_over_nu".into(),
                ))
            }
        };
        let config = SystemConfig {
            atoms: self.atoms.clone(),
            modes: self.modes.clone(),
            temperature: self.bath.temperature,
            theta,
        };
        config
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(config)
    }

    /// Resolves the sweep section into an executable spec.
    pub fn resolve_sweep(&self) -> Result<SweepSpec, CliError> {
        let section = self
            .sweep
            .as_ref()
            .ok_or_else(|| CliError::Config("config has no sweep section".into()))?;
        let grid = match (&section.grid, section.start, section.stop, section.points) {
            (Some(grid), ..) => grid.clone(),
            (None, Some(start), Some(stop), Some(points)) => {
                if points < 1 {
                    return Err(CliError::Config("sweep.points must be at least 1".into()));
                }
                linspace(start, stop, points)
            }
            _ => {
                return Err(CliError::Config(
                    "sweep section needs either `grid` or all of `start`, `stop`, `points`".into(),
                ))
            }
        };
        let reference = section.reference_mode.unwrap_or(1);
        self.checked_mode(reference, "sweep.reference_mode")?;
        let bipartitions = section
            .bipartitions
            .iter()
            .map(|label| label.parse::<Bipartition>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let spec = SweepSpec {
            axis: section.axis,
            grid,
            base: self.resolve_config()?,
            bipartitions,
            reference_mode: reference - 1,
        };
        spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(spec)
    }

    fn checked_mode(&self, one_based: usize, what: &str) -> Result<&MechanicalMode, CliError> {
        if one_based == 0 {
            return Err(CliError::Config(format!("{what} is 1-based; got 0")));
        }
        self.modes.get(one_based - 1).ok_or_else(|| {
            CliError::Config(format!(
                "{what} = {one_based} out of range for {} modes",
                self.modes.len()
            ))
        })
    }

    /// Bipartitions for single-point reports: the sweep selection when
    /// present, every pairing otherwise.
    pub fn report_bipartitions(&self) -> Result<Vec<Bipartition>, CliError> {
        match &self.sweep {
            Some(section) if !section.bipartitions.is_empty() => section
                .bipartitions
                .iter()
                .map(|label| label.parse::<Bipartition>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Config(e.to_string())),
            _ => Ok(Bipartition::all_for(self.modes.len())),
        }
    }
}

fn is_uniform(grid: &[f64]) -> bool {
    if grid.len() < 3 {
        return true;
    }
    let step = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    grid.windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-12 * step.abs().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use phonoflex::presets::preset;

    fn document() -> ConfigDocument {
        serde_json::from_str(
            r#"{
                "atoms": {"gamma_sp": 6.1e6, "rabi": 12e6, "detuning": 45e6,
                          "lamb_dicke": 0.15, "omega_ph": 477.0},
                "modes": [{"nu": 2e6, "kappa": 2.0, "g": -6.5e3}],
                "bath": {"temperature": 0.01},
                "control": {"theta_over_nu": 1.0},
                "sweep": {"axis": "theta_over_nu", "start": 0.5, "stop": 1.5,
                          "points": 11, "bipartitions": ["m1_ph"]}
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn resolves_normalised_control() {
        let config = document().resolve_config().unwrap();
        assert_eq!(config.theta, 2e6);
    }

    #[test]
    fn rejects_double_or_missing_control() {
        let mut doc = document();
        doc.control.theta = Some(1e6);
        assert!(doc.resolve_config().is_err());
        doc.control.theta = None;
        doc.control.theta_over_nu = None;
        assert!(doc.resolve_config().is_err());
    }

    #[test]
    fn unknown_document_keys_are_rejected() {
        let err = serde_json::from_str::<ConfigDocument>(
            r#"{
                "atoms": {"gamma_sp": 6.1e6, "rabi": 12e6, "detuning": 45e6,
                          "lamb_dicke": 0.15, "omega_ph": 477.0},
                "modes": [{"nu": 2e6, "kappa": 2.0, "g": 0.0}],
                "bath": {"temperature": 0.01},
                "control": {"theta": 2e6},
                "extra_section": 1
            }"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("extra_section"), "{err}");

        let err = serde_json::from_str::<ConfigDocument>(
            r#"{
                "atoms": {"gamma_sp": 6.1e6, "rabi": 12e6, "detuning": 45e6,
                          "lamb_dicke": 0.15, "omega_ph": 477.0},
                "modes": [{"nu": 2e6, "kappa": 2.0, "g": 0.0, "q_factor": 7}],
                "bath": {"temperature": 0.01},
                "control": {"theta": 2e6}
            }"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("q_factor"), "{err}");
    }

    #[test]
    fn overrides_apply_after_parsing() {
        let mut doc = document();
        doc.apply_override("g=-5e3").unwrap();
        doc.apply_override("temperature=0.1").unwrap();
        doc.apply_override("theta=1.9e6").unwrap();
        doc.apply_override("modes.0.kappa=4").unwrap();
        assert_eq!(doc.modes[0].g, -5e3);
        assert_eq!(doc.modes[0].kappa, 4.0);
        assert_eq!(doc.bath.temperature, 0.1);
        // `theta` replaces the normalised control entirely.
        assert_eq!(doc.control.theta, Some(1.9e6));
        assert_eq!(doc.control.theta_over_nu, None);
        assert_eq!(doc.resolve_config().unwrap().theta, 1.9e6);
    }

    #[test]
    fn unknown_override_keys_are_errors() {
        let mut doc = document();
        assert!(doc.apply_override("not_a_key=1").is_err());
        assert!(doc.apply_override("modes.0.color=1").is_err());
        assert!(doc.apply_override("modes.7.g=1").is_err());
        assert!(doc.apply_override("g").is_err());
        assert!(doc.apply_override("g=abc").is_err());
    }

    #[test]
    fn sweep_resolution_builds_the_grid() {
        let spec = document().resolve_sweep().unwrap();
        assert_eq!(spec.grid.len(), 11);
        assert_eq!(spec.grid[0], 0.5);
        assert_eq!(spec.grid[10], 1.5);
        assert_eq!(spec.bipartitions.len(), 1);
    }

    #[test]
    fn preset_documents_round_trip_through_json() {
        for p in phonoflex::presets::list_presets() {
            let doc = ConfigDocument::from_preset(&p);
            let text = serde_json::to_string_pretty(&doc).unwrap();
            let reread: ConfigDocument = serde_json::from_str(&text).unwrap();
            let a = doc.resolve_config().unwrap();
            let b = reread.resolve_config().unwrap();
            assert_eq!(a, b, "preset {}", p.name);
            let sa = doc.resolve_sweep().unwrap();
            let sb = reread.resolve_sweep().unwrap();
            assert_eq!(sa.grid, sb.grid, "preset {}", p.name);
        }
    }

    #[test]
    fn preset_document_reproduces_the_preset_grid() {
        let p = preset("fig3").unwrap();
        let doc = ConfigDocument::from_preset(&p);
        let spec = doc.resolve_sweep().unwrap();
        assert_eq!(spec.grid, p.spec.grid);
        assert_eq!(spec.bipartitions, p.spec.bipartitions);
        assert_eq!(spec.reference_mode, p.spec.reference_mode);
    }
}
