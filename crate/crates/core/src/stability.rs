//! Stability analysis of the linearised dynamics: the spectral test on the
//! drift matrix, the explicit Routh-Hurwitz inequalities available for a
//! single mechanical mode, and relaxation-rate extraction.

use crate::dynamics::LinearSystem;
use crate::error::{Error, Result};
use crate::params::{EffectiveParams, SystemConfig};

/// Relative stability tolerance: eigenvalue real parts above −ε·max(ν_j) are
/// treated as marginal and the system is reported unstable, keeping the
/// Lyapunov solve safe.
pub const STABILITY_TOLERANCE: f64 = 1e-9;

const SCHUR_MAX_ITER: usize = 10_000;

/// Outcome of a spectral stability test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    /// True when every eigenvalue real part lies below the tolerance margin.
    pub stable: bool,
    /// Largest eigenvalue real part of the drift matrix (Hz).
    pub max_real_part: f64,
    /// Slowest damping rate −max_real_part (Hz); present only when stable.
    pub decay_rate: Option<f64>,
    /// 1/decay_rate (s); present only when stable.
    pub relaxation_time: Option<f64>,
}

/// Computes the full eigenvalue set of the drift matrix and classifies the
/// system. An eigensolver convergence failure surfaces as
/// [`Error::EigenvalueFailure`], never as an unstable verdict.
pub fn spectral_stability(system: &LinearSystem) -> Result<StabilityReport> {
    let schur = system
        .drift
        .clone()
        .try_schur(f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or(Error::EigenvalueFailure)?;
    let max_real_part = schur
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let margin = STABILITY_TOLERANCE * system.max_mode_frequency();
    let stable = max_real_part < -margin;
    Ok(StabilityReport {
        stable,
        max_real_part,
        decay_rate: stable.then_some(-max_real_part),
        relaxation_time: stable.then_some(-1.0 / max_real_part),
    })
}

/// Routh-Hurwitz stability test for a single mechanical mode.
///
/// The characteristic quartic of the 4×4 drift matrix is Hurwitz exactly when
///
/// ```text
/// ν²(ϑ² + γ²) − 4ν|α|²g²ϑ > 0
/// 2γκ[ϑ⁴ + ϑ²(κ² + 2κγ + 2γ² − 2ν²) + (κγ + γ² + ν²)²]
///     + 4ν|α|²g²ϑ(κ + 2γ)² > 0
/// ```
///
/// both hold strictly (the remaining coefficient conditions are automatic for
/// positive rates).
pub fn routh_hurwitz_n1(config: &SystemConfig, eff: &EffectiveParams) -> Result<bool> {
    if config.n_modes() != 1 {
        return Err(Error::RequiresSingleMode {
            n_modes: config.n_modes(),
        });
    }
    let nu = config.modes[0].nu;
    let kappa = config.modes[0].kappa;
    let g = config.modes[0].g;
    let gamma = eff.gamma_eff;
    let theta = config.theta;
    let coupling = 4.0 * nu * eff.alpha_abs * eff.alpha_abs * g * g * theta;

    let first = nu * nu * (theta * theta + gamma * gamma) - coupling;
    let bracket = theta.powi(4)
        + theta * theta
            * (kappa * kappa + 2.0 * kappa * gamma + 2.0 * gamma * gamma - 2.0 * nu * nu)
        + (kappa * gamma + gamma * gamma + nu * nu).powi(2);
    let second = 2.0 * gamma * kappa * bracket + coupling * (kappa + 2.0 * gamma).powi(2);

    Ok(first > 0.0 && second > 0.0)
}
