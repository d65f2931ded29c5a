//! Physical constants (SI 2019 exact values where defined).

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380649e-23;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299792458.0;

/// 2π, used for ordinary-frequency → angular-frequency conversion.
pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
