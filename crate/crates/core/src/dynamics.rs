//! Assembly of the linearised fluctuation dynamics u̇ = A u + n for N
//! mechanical modes plus one phonon mode.
//!
//! The fluctuation vector is ordered (δq₁, δp₁, …, δq_N, δp_N, δX, δY) and
//! the drift rows implement
//!
//! ```text
//! δq̇_j = −ν_j δp_j
//! δṗ_j = ν_j δq_j − κ_j δp_j − 2 g_j |α| δX
//! δẊ  =  ϑ δY − γ δX
//! δẎ  = −ϑ δX − γ δY + Σ_j 2 |α| g_j δq_j
//! ```
//!
//! The diffusion matrix carries the Brownian noise of the mechanical modes
//! in the Markov limit, κ_j(2m_j + 1) on each δp_j row; the phonon
//! quadratures couple to an effective zero-temperature reservoir and carry
//! no noise at all.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::params::{derive_effective, thermal_occupation, EffectiveParams, SystemConfig};

/// Drift and diffusion matrices of one linearised system, in the fixed
/// quadrature ordering (δq₁, δp₁, …, δq_N, δp_N, δX, δY).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    /// Number of mechanical modes N.
    pub n_modes: usize,
    /// Drift matrix A, (2N+2)×(2N+2).
    pub drift: DMatrix<f64>,
    /// Diagonal diffusion matrix D, same dimension.
    pub diffusion: DMatrix<f64>,
}

impl LinearSystem {
    /// Dimension 2N + 2.
    pub fn dim(&self) -> usize {
        2 * self.n_modes + 2
    }

    /// Quadrature labels in storage order, e.g. `dq1, dp1, dX, dY`.
    pub fn quadrature_labels(&self) -> Vec<String> {
        let mut labels = Vec::with_capacity(self.dim());
        for j in 0..self.n_modes {
            labels.push(format!("dq{}", j + 1));
            labels.push(format!("dp{}", j + 1));
        }
        labels.push("dX".into());
        labels.push("dY".into());
        labels
    }

    /// Largest mechanical frequency read back from the drift rows; the
    /// stability tolerance scales with it.
    pub fn max_mode_frequency(&self) -> f64 {
        (0..self.n_modes)
            .map(|j| self.drift[(2 * j, 2 * j + 1)].abs())
            .fold(0.0, f64::max)
    }
}

/// Assembles the drift matrix A.
pub fn build_drift(config: &SystemConfig, eff: &EffectiveParams) -> DMatrix<f64> {
    let n = config.n_modes();
    let dim = 2 * n + 2;
    let mut a = DMatrix::zeros(dim, dim);
    let x = 2 * n; // δX row/column
    let y = 2 * n + 1; // δY row/column
    for (j, mode) in config.modes.iter().enumerate() {
        let coupling = 2.0 * eff.alpha_abs * mode.g;
        a[(2 * j, 2 * j + 1)] = -mode.nu;
        a[(2 * j + 1, 2 * j)] = mode.nu;
        a[(2 * j + 1, 2 * j + 1)] = -mode.kappa;
        a[(2 * j + 1, x)] = -coupling;
        a[(y, 2 * j)] = coupling;
    }
    a[(x, x)] = -eff.gamma_eff;
    a[(x, y)] = config.theta;
    a[(y, x)] = -config.theta;
    a[(y, y)] = -eff.gamma_eff;
    a
}

/// Assembles the diagonal diffusion matrix D with entries κ_j(2m_j + 1) on
/// the mechanical momentum rows and zeros elsewhere.
pub fn build_diffusion(config: &SystemConfig) -> DMatrix<f64> {
    let n = config.n_modes();
    let dim = 2 * n + 2;
    let mut d = DMatrix::zeros(dim, dim);
    for (j, mode) in config.modes.iter().enumerate() {
        let m = thermal_occupation(mode.nu, config.temperature);
        d[(2 * j + 1, 2 * j + 1)] = mode.kappa * (2.0 * m + 1.0);
    }
    d
}

/// Validates the configuration, derives the effective parameters and builds
/// both matrices in one step.
pub fn build_system(config: &SystemConfig) -> Result<(LinearSystem, EffectiveParams)> {
    let eff = derive_effective(config)?;
    let system = LinearSystem {
        n_modes: config.n_modes(),
        drift: build_drift(config, &eff),
        diffusion: build_diffusion(config),
    };
    Ok((system, eff))
}
