//! Parameter-scan engine: drives the full pipeline (effective parameters →
//! drift/diffusion → stability → Lyapunov → observables) over a grid of one
//! control variable and collects tabular results.
//!
//! Grid points are independent, so the engine evaluates them in parallel;
//! rows are emitted in grid order regardless of scheduling, and a serial
//! evaluation path exists for determinism checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::build_system;
use crate::entanglement::{log_negativity, reduce_mech_mech, reduce_mech_phonon};
use crate::error::{Error, Result};
use crate::params::{EffectiveParams, SystemConfig};
use crate::stability::{spectral_stability, StabilityReport};
use crate::steadystate::{occupation, phonon_variances, solve_lyapunov};
use crate::{entanglement::eta_minus, steadystate::CovarianceMatrix};

/// Control variable swept along the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// ϑ normalised to a reference mode frequency: ϑ = value · ν_ref.
    ThetaOverNu,
    /// Coupling strength in Hz, applied to every mode.
    Coupling,
    /// Bath temperature in K.
    Temperature,
}

impl SweepAxis {
    /// Column header used in emitted tables.
    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::ThetaOverNu => "theta_over_nu",
            SweepAxis::Coupling => "g_hz",
            SweepAxis::Temperature => "temperature_k",
        }
    }
}

/// One bipartite reduction of the covariance matrix, using 0-based mode
/// indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bipartition {
    /// Two mechanical modes.
    MechMech(usize, usize),
    /// A mechanical mode and the phonon mode.
    MechPhonon(usize),
}

impl Bipartition {
    /// Stable label used in column headers, e.g. `m1_m2` or `m1_ph`.
    pub fn label(&self) -> String {
        match self {
            Bipartition::MechMech(i, j) => format!("m{}_m{}", i + 1, j + 1),
            Bipartition::MechPhonon(i) => format!("m{}_ph", i + 1),
        }
    }

    pub fn validate(&self, n_modes: usize) -> Result<()> {
        let check = |index: usize| {
            if index >= n_modes {
                Err(Error::ModeIndex { index, n_modes })
            } else {
                Ok(())
            }
        };
        match self {
            Bipartition::MechMech(i, j) => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(Error::DegenerateBipartition(*i));
                }
                Ok(())
            }
            Bipartition::MechPhonon(i) => check(*i),
        }
    }

    /// All mechanical-phonon pairs followed by all mechanical pairs, the
    /// default selection for single-point reports.
    pub fn all_for(n_modes: usize) -> Vec<Bipartition> {
        let mut parts: Vec<Bipartition> =
            (0..n_modes).map(Bipartition::MechPhonon).collect();
        for i in 0..n_modes {
            for j in (i + 1)..n_modes {
                parts.push(Bipartition::MechMech(i, j));
            }
        }
        parts
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

impl std::str::FromStr for Bipartition {
    type Err = Error;

    /// Parses labels of the form `m1_ph` and `m1_m2` (1-based mode numbers).
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::InvalidConfig(format!("unrecognised bipartition label `{s}`"));
        let rest = s.strip_prefix('m').ok_or_else(err)?;
        let (first, second) = rest.split_once('_').ok_or_else(err)?;
        let i: usize = first.parse().map_err(|_| err())?;
        if i == 0 {
            return Err(err());
        }
        if second == "ph" {
            return Ok(Bipartition::MechPhonon(i - 1));
        }
        let j: usize = second.strip_prefix('m').ok_or_else(err)?.parse().map_err(|_| err())?;
        if j == 0 {
            return Err(err());
        }
        Ok(Bipartition::MechMech(i - 1, j - 1))
    }
}

/// Definition of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    /// Strictly monotone, nonempty list of axis values.
    pub grid: Vec<f64>,
    /// Fixed parameters; the axis value overrides the corresponding field at
    /// each grid point.
    pub base: SystemConfig,
    /// Bipartitions evaluated at every stable point.
    pub bipartitions: Vec<Bipartition>,
    /// Mode whose frequency normalises the `theta_over_nu` axis (0-based).
    pub reference_mode: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.grid.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        if self.grid.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("grid contains non-finite values".into()));
        }
        if self.grid.len() > 1 {
            let increasing = self.grid.windows(2).all(|w| w[1] > w[0]);
            let decreasing = self.grid.windows(2).all(|w| w[1] < w[0]);
            if !increasing && !decreasing {
                return Err(Error::InvalidGrid("grid must be strictly monotone".into()));
            }
        }
        if self.reference_mode >= self.base.n_modes() {
            return Err(Error::ModeIndex {
                index: self.reference_mode,
                n_modes: self.base.n_modes(),
            });
        }
        for bip in &self.bipartitions {
            bip.validate(self.base.n_modes())?;
        }
        Ok(())
    }
}

/// Applies one axis value to a copy of the base configuration.
pub fn apply_axis(
    base: &SystemConfig,
    axis: SweepAxis,
    value: f64,
    reference_mode: usize,
) -> SystemConfig {
    let mut config = base.clone();
    match axis {
        SweepAxis::ThetaOverNu => config.theta = value * base.modes[reference_mode].nu,
        SweepAxis::Coupling => {
            for mode in &mut config.modes {
                mode.g = value;
            }
        }
        SweepAxis::Temperature => config.temperature = value,
    }
    config
}

/// Full single-point report as produced by the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct PointReport {
    pub eff: EffectiveParams,
    pub stability: StabilityReport,
    /// m_eff per mode; `None` when the point is unstable.
    pub occupations: Option<Vec<f64>>,
    /// (⟨δX²⟩, ⟨δY²⟩); `None` when the point is unstable.
    pub phonon_variances: Option<(f64, f64)>,
    /// (η⁻, E_N) per requested bipartition, in request order; `None` entries
    /// mark unstable points or per-bipartition evaluation failures.
    pub entanglement: Vec<Option<(f64, f64)>>,
    /// Description of any per-point failure.
    pub error: Option<String>,
    /// The solved covariance, for callers that need the full matrix.
    pub covariance: Option<CovarianceMatrix>,
}

/// Runs the full pipeline at a single configuration.
///
/// Unstable points are first-class results: the stability report is filled
/// in and every observable is `None`. Only configuration errors propagate as
/// `Err`.
pub fn evaluate_point(
    config: &SystemConfig,
    bipartitions: &[Bipartition],
) -> Result<PointReport> {
    for bip in bipartitions {
        bip.validate(config.n_modes())?;
    }
    let (system, eff) = build_system(config)?;
    let stability = spectral_stability(&system)?;
    let mut report = PointReport {
        eff,
        stability,
        occupations: None,
        phonon_variances: None,
        entanglement: vec![None; bipartitions.len()],
        error: None,
        covariance: None,
    };
    if !stability.stable {
        return Ok(report);
    }
    let cov = match solve_lyapunov(&system) {
        Ok(cov) => cov,
        Err(err) => {
            report.error = Some(err.to_string());
            return Ok(report);
        }
    };
    let occupations = (0..config.n_modes())
        .map(|j| occupation(&cov, j))
        .collect::<Result<Vec<f64>>>()?;
    report.occupations = Some(occupations);
    report.phonon_variances = Some(phonon_variances(&cov));
    let mut failures = Vec::new();
    for (slot, bip) in report.entanglement.iter_mut().zip(bipartitions) {
        let reduced = match bip {
            Bipartition::MechMech(i, j) => reduce_mech_mech(&cov, *i, *j),
            Bipartition::MechPhonon(i) => reduce_mech_phonon(&cov, *i),
        }?;
        match eta_minus(&reduced).and_then(|eta| Ok((eta, log_negativity(&reduced)?))) {
            Ok(pair) => *slot = Some(pair),
            Err(err) => failures.push(format!("{}: {err}", bip.label())),
        }
    }
    if !failures.is_empty() {
        report.error = Some(failures.join("; "));
    }
    report.covariance = Some(cov);
    Ok(report)
}

/// One sweep row: the axis value plus every requested observable.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub stable: bool,
    pub decay_rate: Option<f64>,
    pub occupations: Option<Vec<f64>>,
    pub entanglement: Vec<Option<(f64, f64)>>,
    pub error: Option<String>,
}

/// Result table of one sweep, rows in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub n_modes: usize,
    pub bipartitions: Vec<Bipartition>,
    pub rows: Vec<SweepRow>,
}

fn evaluate_row(spec: &SweepSpec, value: f64) -> SweepRow {
    let config = apply_axis(&spec.base, spec.axis, value, spec.reference_mode);
    match evaluate_point(&config, &spec.bipartitions) {
        Ok(report) => SweepRow {
            axis_value: value,
            stable: report.stability.stable,
            decay_rate: report.stability.decay_rate,
            occupations: report.occupations,
            entanglement: report.entanglement,
            error: report.error,
        },
        Err(err) => SweepRow {
            axis_value: value,
            stable: false,
            decay_rate: None,
            occupations: None,
            entanglement: vec![None; spec.bipartitions.len()],
            error: Some(err.to_string()),
        },
    }
}

/// Runs the sweep, evaluating grid points in parallel. Rows come back in
/// grid order and are bit-identical to the serial path.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let rows: Vec<SweepRow> = spec
        .grid
        .par_iter()
        .map(|&value| evaluate_row(spec, value))
        .collect();
    Ok(SweepResult {
        axis: spec.axis,
        n_modes: spec.base.n_modes(),
        bipartitions: spec.bipartitions.clone(),
        rows,
    })
}

/// Serial evaluation path; exists so determinism against the parallel
/// engine can be asserted.
pub fn run_sweep_serial(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let rows: Vec<SweepRow> = spec
        .grid
        .iter()
        .map(|&value| evaluate_row(spec, value))
        .collect();
    Ok(SweepResult {
        axis: spec.axis,
        n_modes: spec.base.n_modes(),
        bipartitions: spec.bipartitions.clone(),
        rows,
    })
}

/// Nested scan: for each value of the outer axis, runs the full inner sweep.
/// Used by the density-map scenarios (e.g. occupation over the (ϑ/ν, g)
/// plane).
pub fn run_nested(
    outer_axis: SweepAxis,
    outer_grid: &[f64],
    spec: &SweepSpec,
) -> Result<Vec<(f64, SweepResult)>> {
    if outer_grid.is_empty() {
        return Err(Error::InvalidGrid("outer grid is empty".into()));
    }
    outer_grid
        .iter()
        .map(|&outer_value| {
            let mut inner = spec.clone();
            inner.base = apply_axis(&spec.base, outer_axis, outer_value, spec.reference_mode);
            run_sweep(&inner).map(|result| (outer_value, result))
        })
        .collect()
}
