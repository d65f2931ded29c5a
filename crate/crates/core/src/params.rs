//! Physical input parameters and the reduced effective quantities that the
//! rest of the pipeline consumes.
//!
//! Every configured frequency is an ordinary frequency in Hz. The effective
//! drive ξ, damping γ and frequency ω follow from adiabatic elimination of
//! the atomic excited state:
//!
//! ```text
//! ξ = η Ω² Δ / (4Δ² + Γ²)
//! γ = Γ η² Ω² / (2 (Γ² + 4Δ²))
//! ω = ω_ph − η ξ + Σ_j ω_CP_j
//! ```
//!
//! The shifted detuning ϑ is the experimental control knob and is configured
//! directly; the stationary phonon amplitude follows as |α| = ξ/√(ϑ² + γ²).

use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, K_B, TWO_PI};
use crate::error::{Error, Result};

/// Laser-cooled atomic ensemble parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomicParams {
    /// Spontaneous emission rate Γ of the electronic transition (Hz).
    pub gamma_sp: f64,
    /// Rabi frequency Ω of the cooling laser (Hz).
    pub rabi: f64,
    /// Laser–transition detuning Δ (Hz). Either sign; a nonzero value is
    /// required for a nonzero drive ξ.
    pub detuning: f64,
    /// Lamb-Dicke parameter η (dimensionless, 0 < η < 1).
    pub lamb_dicke: f64,
    /// Bare phonon excitation frequency ω_ph (Hz).
    pub omega_ph: f64,
}

/// One mechanical (flexural) mode of a membrane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanicalMode {
    /// Flexural frequency ν (Hz).
    pub nu: f64,
    /// Energy dissipation rate κ = ν/Q (Hz).
    pub kappa: f64,
    /// Atom–membrane coupling strength g (Hz), sign unrestricted.
    pub g: f64,
    /// Casimir-Polder frequency shift contributed by this mode (Hz), when
    /// known. Omitted shifts are left out of the effective frequency ω.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_cp: Option<f64>,
}

impl MechanicalMode {
    /// Mechanical quality factor Q = ν/κ.
    pub fn quality_factor(&self) -> f64 {
        self.nu / self.kappa
    }
}

/// Full description of one simulation: atoms, mechanical modes, bath
/// temperature and the control detuning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub atoms: AtomicParams,
    /// Ordered list of mechanical modes, length N ≥ 1.
    pub modes: Vec<MechanicalMode>,
    /// Bath temperature T (K).
    pub temperature: f64,
    /// Shifted phonon detuning ϑ (Hz), the swept control variable.
    pub theta: f64,
}

impl SystemConfig {
    /// Number of mechanical modes N.
    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    /// Dimension 2N + 2 of the fluctuation vector
    /// (δq₁, δp₁, …, δq_N, δp_N, δX, δY).
    pub fn dim(&self) -> usize {
        2 * self.modes.len() + 2
    }

    /// Checks all hard parameter constraints and returns soft warnings
    /// (currently: quality factors below 100).
    pub fn validate(&self) -> Result<Vec<String>> {
        let a = &self.atoms;
        if !a.gamma_sp.is_finite() || a.gamma_sp <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "gamma_sp must be > 0, got {}",
                a.gamma_sp
            )));
        }
        if !a.rabi.is_finite() || a.rabi < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "rabi must be >= 0, got {}",
                a.rabi
            )));
        }
        if !a.lamb_dicke.is_finite() || a.lamb_dicke <= 0.0 || a.lamb_dicke >= 1.0 {
            return Err(Error::InvalidConfig(format!(
                "lamb_dicke must lie in (0, 1), got {}",
                a.lamb_dicke
            )));
        }
        if !a.detuning.is_finite() || !a.omega_ph.is_finite() {
            return Err(Error::InvalidConfig(
                "detuning and omega_ph must be finite".into(),
            ));
        }
        if self.modes.is_empty() {
            return Err(Error::InvalidConfig(
                "at least one mechanical mode is required".into(),
            ));
        }
        if !self.temperature.is_finite() || self.temperature <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "temperature must be > 0, got {}",
                self.temperature
            )));
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidConfig("theta must be finite".into()));
        }
        let mut warnings = Vec::new();
        for (j, m) in self.modes.iter().enumerate() {
            if !m.nu.is_finite() || m.nu <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "mode {}: nu must be > 0, got {}",
                    j + 1,
                    m.nu
                )));
            }
            if !m.kappa.is_finite() || m.kappa <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "mode {}: kappa must be > 0, got {}",
                    j + 1,
                    m.kappa
                )));
            }
            if !m.g.is_finite() {
                return Err(Error::InvalidConfig(format!("mode {}: g must be finite", j + 1)));
            }
            if m.quality_factor() < 100.0 {
                warnings.push(format!(
                    "mode {}: quality factor {:.1} is below 100; the weak-damping model is questionable",
                    j + 1,
                    m.quality_factor()
                ));
            }
        }
        Ok(warnings)
    }
}

/// Reduced quantities derived from a [`SystemConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    /// Effective drive ξ (Hz).
    pub xi: f64,
    /// Effective phonon damping γ (Hz).
    pub gamma_eff: f64,
    /// Effective phonon frequency ω (Hz). Informational: the dynamics uses
    /// the configured ϑ directly.
    pub omega_eff: f64,
    /// Stationary phonon amplitude modulus |α| (dimensionless).
    pub alpha_abs: f64,
}

/// Computes the reduced drive, damping, frequency and stationary amplitude.
pub fn derive_effective(config: &SystemConfig) -> Result<EffectiveParams> {
    config.validate()?;
    let a = &config.atoms;
    let denom = 4.0 * a.detuning * a.detuning + a.gamma_sp * a.gamma_sp;
    let xi = a.lamb_dicke * a.rabi * a.rabi * a.detuning / denom;
    let gamma_eff = a.gamma_sp * a.lamb_dicke * a.lamb_dicke * a.rabi * a.rabi / (2.0 * denom);
    let cp_shift: f64 = config.modes.iter().filter_map(|m| m.omega_cp).sum();
    let omega_eff = a.omega_ph - a.lamb_dicke * xi + cp_shift;
    let alpha_abs = if xi == 0.0 {
        0.0
    } else {
        xi.abs() / (config.theta * config.theta + gamma_eff * gamma_eff).sqrt()
    };
    Ok(EffectiveParams {
        xi,
        gamma_eff,
        omega_eff,
        alpha_abs,
    })
}

/// Mean thermal occupation m = 1/(e^{ħ·2πν/(k_B T)} − 1) of a mode at
/// ordinary frequency `nu` (Hz) and bath temperature `temperature` (K).
///
/// The 2π conversion to angular frequency is the only place the crate needs
/// an absolute energy scale.
pub fn thermal_occupation(nu: f64, temperature: f64) -> f64 {
    let x = HBAR * TWO_PI * nu / (K_B * temperature);
    1.0 / x.exp_m1()
}

/// Stationary mechanical displacements q_j^s = √2 g_j |α|² / ν_j. The
/// stationary momenta vanish identically and are not returned.
pub fn steady_positions(config: &SystemConfig, eff: &EffectiveParams) -> Vec<f64> {
    let alpha_sq = eff.alpha_abs * eff.alpha_abs;
    config
        .modes
        .iter()
        .map(|m| std::f64::consts::SQRT_2 * m.g * alpha_sq / m.nu)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn fig_atoms() -> AtomicParams {
        AtomicParams {
            gamma_sp: 6.1e6,
            rabi: 12e6,
            detuning: 45e6,
            lamb_dicke: 0.15,
            omega_ph: 477.0,
        }
    }

    fn single_mode_config(g: f64, temperature: f64) -> SystemConfig {
        SystemConfig {
            atoms: fig_atoms(),
            modes: vec![MechanicalMode {
                nu: 2e6,
                kappa: 2.0,
                g,
                omega_cp: None,
            }],
            temperature,
            theta: 2e6,
        }
    }

    #[test]
    fn effective_drive_and_damping_match_hand_values() {
        let eff = derive_effective(&single_mode_config(-6.5e3, 0.01)).unwrap();
        // Hand-evaluated: 0.15·(12e6)²·45e6 / (4·(45e6)² + (6.1e6)²)
        assert_relative_eq!(eff.xi, 1.19e5, max_relative = 5e-3);
        // Hand-evaluated: 6.1e6·0.15²·(12e6)² / (2·((6.1e6)² + 4·(45e6)²))
        assert_relative_eq!(eff.gamma_eff, 1.21e3, max_relative = 5e-3);
        assert_relative_eq!(
            eff.alpha_abs,
            eff.xi / (2e6f64 * 2e6 + eff.gamma_eff * eff.gamma_eff).sqrt(),
            max_relative = 1e-14
        );
        // ω = ω_ph − η·ξ with no CP shift configured.
        assert_relative_eq!(eff.omega_eff, 477.0 - 0.15 * eff.xi, max_relative = 1e-14);
    }

    #[test]
    fn zero_rabi_kills_drive_damping_and_amplitude() {
        let mut config = single_mode_config(-6.5e3, 0.01);
        config.atoms.rabi = 0.0;
        let eff = derive_effective(&config).unwrap();
        assert_eq!(eff.xi, 0.0);
        assert_eq!(eff.gamma_eff, 0.0);
        assert_eq!(eff.alpha_abs, 0.0);
        assert_eq!(eff.omega_eff, config.atoms.omega_ph);
    }

    #[test]
    fn cp_shifts_enter_omega_eff_when_present() {
        let mut config = single_mode_config(-6.5e3, 0.01);
        config.modes[0].omega_cp = Some(-150.0);
        let eff = derive_effective(&config).unwrap();
        let bare = derive_effective(&single_mode_config(-6.5e3, 0.01)).unwrap();
        assert_relative_eq!(eff.omega_eff, bare.omega_eff - 150.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_gamma_sp_zero() {
        let mut config = single_mode_config(0.0, 0.01);
        config.atoms.gamma_sp = 0.0;
        assert!(matches!(
            derive_effective(&config),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn low_quality_factor_warns_but_passes() {
        let mut config = single_mode_config(0.0, 0.01);
        config.modes[0].kappa = 1e5; // Q = 20
        let warnings = config.validate().unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("quality factor"));
    }

    #[test]
    fn thermal_occupation_anchors() {
        // ν = 2 MHz at 0.01 K and 0.1 K correspond to occupations near 10²
        // and 10³ respectively.
        let m_cold = thermal_occupation(2e6, 0.01);
        let m_warm = thermal_occupation(2e6, 0.1);
        assert!((90.0..=110.0).contains(&m_cold), "m = {m_cold}");
        assert!((900.0..=1100.0).contains(&m_warm), "m = {m_warm}");
    }

    #[test]
    fn thermal_occupation_vanishes_at_low_temperature() {
        assert_eq!(thermal_occupation(2e6, 1e-9), 0.0);
    }

    #[test]
    fn steady_positions_match_hand_value() {
        // g = −6.5 kHz, ν = 2 MHz, |α|² = 3.55e−3 → q^s = √2·g·|α|²/ν ≈ −1.632e−5.
        let config = single_mode_config(-6.5e3, 0.01);
        let eff = EffectiveParams {
            xi: 1.0,
            gamma_eff: 1.0,
            omega_eff: 0.0,
            alpha_abs: 3.55e-3f64.sqrt(),
        };
        let q = steady_positions(&config, &eff);
        assert_relative_eq!(q[0], -1.63165e-5, max_relative = 1e-3);
    }

    #[test]
    fn steady_positions_vanish_without_coupling_or_drive() {
        let config = single_mode_config(0.0, 0.01);
        let eff = derive_effective(&config).unwrap();
        assert_eq!(steady_positions(&config, &eff)[0], 0.0);

        let mut driven = single_mode_config(-6.5e3, 0.01);
        driven.atoms.rabi = 0.0;
        let eff = derive_effective(&driven).unwrap();
        assert_eq!(steady_positions(&driven, &eff)[0], 0.0);
    }

    #[test]
    fn derive_effective_is_deterministic() {
        let config = single_mode_config(-6.5e3, 0.01);
        let a = derive_effective(&config).unwrap();
        let b = derive_effective(&config).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn alpha_abs_decreases_with_detuning_magnitude(
            theta1 in 1e2f64..1e8,
            factor in 1.01f64..100.0,
        ) {
            let mut config = single_mode_config(-6.5e3, 0.01);
            config.theta = theta1;
            let a1 = derive_effective(&config).unwrap().alpha_abs;
            config.theta = theta1 * factor;
            let a2 = derive_effective(&config).unwrap().alpha_abs;
            prop_assert!(a2 < a1);
        }

        #[test]
        fn thermal_occupation_monotone(
            nu in 1e4f64..1e8,
            temp in 1e-3f64..10.0,
            bump in 1.01f64..10.0,
        ) {
            let m = thermal_occupation(nu, temp);
            prop_assert!(thermal_occupation(nu * bump, temp) < m);
            prop_assert!(thermal_occupation(nu, temp * bump) > m);
        }

        #[test]
        fn thermal_occupation_high_temperature_expansion(
            nu in 1e4f64..1e6,
            temp in 0.1f64..10.0,
        ) {
            // ħ·2πν ≪ k_B T here, so m must agree with k_B T/(ħ·2πν) − 1/2
            // to within 1%.
            let x = HBAR * TWO_PI * nu / (K_B * temp);
            prop_assume!(x < 1e-2);
            let m = thermal_occupation(nu, temp);
            let expansion = 1.0 / x - 0.5;
            prop_assert!((m - expansion).abs() <= 0.01 * m.abs());
        }
    }
}
