//! Graphene-specific physics: Kirchhoff-plate flexural dispersion, the
//! non-retarded Casimir-Polder potential of an atom above the sheet, and the
//! resulting atom–membrane coupling strength.
//!
//! Geometry lives in a µm-based unit system (distances in µm, wavevectors in
//! µm⁻¹, areal densities in µm⁻²) because the Casimir-Polder coefficient is
//! tabulated in Hz·µm³. Plate elasticity uses SI.

use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, SPEED_OF_LIGHT, TWO_PI};
use crate::error::{Error, Result};

/// Elastic and inertial properties of the membrane plate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembraneMaterial {
    /// Young modulus Y (Pa).
    pub young: f64,
    /// Poisson ratio υ (dimensionless).
    pub poisson: f64,
    /// Plate thickness h (m).
    pub thickness: f64,
    /// Areal mass density ρ (kg/m²).
    pub areal_density: f64,
    /// Clamping tension t_cl (N/m), equal along x and y.
    pub clamping_tension: f64,
}

impl MembraneMaterial {
    /// Graphene defaults: Y = 1 TPa, υ = 0.17, h = 3.35 Å, and the single
    /// layer areal density 7.6×10⁻⁷ kg/m².
    pub fn graphene(clamping_tension: f64) -> Self {
        MembraneMaterial {
            young: 1e12,
            poisson: 0.17,
            thickness: 3.35e-10,
            areal_density: 7.6e-7,
            clamping_tension,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        let tension_ok = self.clamping_tension.is_finite() && self.clamping_tension >= 0.0;
        if !positive(self.young)
            || !(self.poisson >= 0.0 && self.poisson < 0.5)
            || !positive(self.thickness)
            || !positive(self.areal_density)
            || !tension_ok
        {
            return Err(Error::InvalidConfig(
                "membrane material out of range: need Y > 0, 0 <= poisson < 0.5, h > 0, rho > 0, t_cl >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Atom–surface Casimir-Polder geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CasimirSetup {
    /// Non-retarded CP coefficient C₃ (Hz·µm³). Default is the Rb–graphene
    /// value −215.65.
    pub c3: f64,
    /// Atom–surface distance z_A (µm).
    pub z_a: f64,
    /// Areal atomic density n₀ (µm⁻²).
    pub n0: f64,
    /// Oscillator mass m entering the zero-point length in the coupling
    /// formula (kg). The model does not pin which mass this is, so it is an
    /// explicit input.
    pub osc_mass: f64,
    /// Electronic transition frequency ω_eg (Hz), used only to check the
    /// non-retarded validity condition z_A ≪ c/ω_eg.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_eg: Option<f64>,
}

impl CasimirSetup {
    pub const C3_RB_GRAPHENE: f64 = -215.65;

    pub fn validate(&self) -> Result<()> {
        if !self.z_a.is_finite() || self.z_a <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "z_a must be > 0, got {}",
                self.z_a
            )));
        }
        Ok(())
    }

    /// `Some(true)` when z_A is at least a factor of ten inside c/ω_eg,
    /// `Some(false)` when the non-retarded form is questionable, `None` when
    /// no transition frequency was supplied.
    pub fn non_retarded_ok(&self) -> Option<bool> {
        self.omega_eg
            .map(|w| self.z_a * 1e-6 < 0.1 * SPEED_OF_LIGHT / w)
    }
}

/// Bending modulus D = Y h³ / (12 (1 − υ²)) in J.
pub fn bending_modulus(material: &MembraneMaterial) -> f64 {
    material.young * material.thickness.powi(3) / (12.0 * (1.0 - material.poisson * material.poisson))
}

/// Flexural dispersion ν(k) = √(D k⁴/ρ + 2 t_cl k²/ρ) for wavevector k in
/// m⁻¹, returned in Hz.
pub fn flexural_frequency(k: f64, material: &MembraneMaterial) -> f64 {
    let d = bending_modulus(material);
    let rho = material.areal_density;
    ((d / rho) * k.powi(4) + (2.0 * material.clamping_tension / rho) * k * k).sqrt()
}

/// Non-retarded Casimir-Polder potential U_CP = C₃/z_A³ (Hz).
pub fn cp_potential(setup: &CasimirSetup) -> f64 {
    setup.c3 / setup.z_a.powi(3)
}

/// Casimir-Polder frequency ω_CP = 2π C₃ e^{−q z_A} / z_A (Hz) for the mode
/// wavevector `q` in µm⁻¹.
pub fn cp_frequency(q: f64, setup: &CasimirSetup) -> f64 {
    TWO_PI * setup.c3 * (-q * setup.z_a).exp() / setup.z_a
}

/// Atom–membrane coupling g = 2 q x_zpf n₀ ω_CP (Hz), with the zero-point
/// length x_zpf = √(ħ/(2 m · 2πν)) expressed in µm to match the µm⁻¹
/// wavevector.
pub fn coupling_strength(q: f64, nu: f64, setup: &CasimirSetup) -> Result<f64> {
    if !nu.is_finite() || nu <= 0.0 {
        return Err(Error::InvalidConfig(format!("nu must be > 0, got {nu}")));
    }
    if !setup.osc_mass.is_finite() || setup.osc_mass <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "osc_mass must be > 0, got {}",
            setup.osc_mass
        )));
    }
    let x_zpf_um = (HBAR / (2.0 * setup.osc_mass * TWO_PI * nu)).sqrt() * 1e6;
    Ok(2.0 * q * x_zpf_um * setup.n0 * cp_frequency(q, setup))
}
