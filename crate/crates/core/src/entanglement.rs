//! Bipartite Gaussian entanglement measures on 4×4 reductions of the full
//! covariance matrix.
//!
//! With vacuum variance 1/2, a two-party Gaussian state with covariance
//! blocks 𝒜, ℬ, 𝒞 is entangled exactly when the smallest symplectic
//! eigenvalue of its partial transpose,
//!
//! ```text
//! η⁻ = √[(Σ − √(Σ² − 4 det V)) / 2],   Σ = det 𝒜 + det ℬ − 2 det 𝒞,
//! ```
//!
//! drops below 1/2; the logarithmic negativity is E_N = max(0, −ln 2η⁻).

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::steadystate::CovarianceMatrix;

/// Tolerance for the discriminant physicality check in [`eta_minus`].
const DISCRIMINANT_TOLERANCE: f64 = 1e-9;

/// Threshold below which the cross block counts as identically zero and the
/// state is a product state; relative to the local block scale.
const PRODUCT_STATE_TOLERANCE: f64 = 1e-12;

/// 4×4 bipartite covariance split into its 2×2 blocks [[𝒜, 𝒞], [𝒞ᵀ, ℬ]].
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteCovariance {
    a_block: Matrix2<f64>,
    b_block: Matrix2<f64>,
    c_block: Matrix2<f64>,
}

impl BipartiteCovariance {
    pub fn new(a_block: Matrix2<f64>, b_block: Matrix2<f64>, c_block: Matrix2<f64>) -> Self {
        BipartiteCovariance {
            a_block,
            b_block,
            c_block,
        }
    }

    pub fn a_block(&self) -> &Matrix2<f64> {
        &self.a_block
    }

    pub fn b_block(&self) -> &Matrix2<f64> {
        &self.b_block
    }

    pub fn c_block(&self) -> &Matrix2<f64> {
        &self.c_block
    }

    /// Reassembles the full 4×4 matrix [[𝒜, 𝒞], [𝒞ᵀ, ℬ]].
    pub fn assemble(&self) -> Matrix4<f64> {
        let mut v = Matrix4::zeros();
        v.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.a_block);
        v.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.c_block);
        v.fixed_view_mut::<2, 2>(2, 0)
            .copy_from(&self.c_block.transpose());
        v.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.b_block);
        v
    }

    /// True when the cross block vanishes to within rounding of the local
    /// block scale, i.e. the two parties are uncorrelated.
    pub fn is_product(&self) -> bool {
        let scale = self
            .a_block
            .amax()
            .max(self.b_block.amax())
            .max(1.0);
        self.c_block.amax() <= PRODUCT_STATE_TOLERANCE * scale
    }
}

fn checked_pair(cov: &CovarianceMatrix, first: usize, second: usize) -> BipartiteCovariance {
    let v = cov.matrix();
    let take = |row_base: usize, col_base: usize| {
        Matrix2::new(
            v[(row_base, col_base)],
            v[(row_base, col_base + 1)],
            v[(row_base + 1, col_base)],
            v[(row_base + 1, col_base + 1)],
        )
    };
    BipartiteCovariance::new(take(first, first), take(second, second), take(first, second))
}

/// Reduction onto mechanical modes `i` and `j`: keeps rows/columns
/// (2i, 2i+1, 2j, 2j+1) of the full covariance.
pub fn reduce_mech_mech(
    cov: &CovarianceMatrix,
    i: usize,
    j: usize,
) -> Result<BipartiteCovariance> {
    let n = cov.n_modes();
    if i >= n {
        return Err(Error::ModeIndex { index: i, n_modes: n });
    }
    if j >= n {
        return Err(Error::ModeIndex { index: j, n_modes: n });
    }
    if i == j {
        return Err(Error::DegenerateBipartition(i));
    }
    Ok(checked_pair(cov, 2 * i, 2 * j))
}

/// Reduction onto mechanical mode `i` and the phonon quadratures.
pub fn reduce_mech_phonon(cov: &CovarianceMatrix, i: usize) -> Result<BipartiteCovariance> {
    let n = cov.n_modes();
    if i >= n {
        return Err(Error::ModeIndex { index: i, n_modes: n });
    }
    Ok(checked_pair(cov, 2 * i, 2 * n))
}

/// Smallest symplectic eigenvalue of the partially transposed bipartite
/// state.
///
/// Evaluated in the rationalised form η⁻² = 2 det V / (Σ + √(Σ² − 4 det V))
/// to stay accurate when det V is many orders below Σ². A discriminant that
/// is negative beyond tolerance marks an unphysical input matrix.
pub fn eta_minus(bip: &BipartiteCovariance) -> Result<f64> {
    let sigma = bip.a_block.determinant() + bip.b_block.determinant()
        - 2.0 * bip.c_block.determinant();
    let det_v = bip.assemble().determinant();
    let disc = sigma * sigma - 4.0 * det_v;
    if disc < -DISCRIMINANT_TOLERANCE * (sigma * sigma).max(1.0) {
        return Err(Error::NonPhysical {
            sigma_sq: sigma * sigma,
            four_det: 4.0 * det_v,
        });
    }
    let denom = sigma + disc.max(0.0).sqrt();
    if denom <= 0.0 {
        return Ok(0.0);
    }
    Ok((2.0 * det_v.max(0.0) / denom).sqrt())
}

/// Logarithmic negativity E_N = max(0, −ln 2η⁻); strictly positive exactly
/// when η⁻ < 1/2 (with a 10⁻¹² margin, so boundary states report zero).
///
/// Product states (vanishing cross block) are separable by construction and
/// always report zero, including the degenerate case of a noiseless party
/// whose formal η⁻ would vanish.
pub fn log_negativity(bip: &BipartiteCovariance) -> Result<f64> {
    if bip.is_product() {
        return Ok(0.0);
    }
    let eta = eta_minus(bip)?;
    if eta >= 0.5 - 1e-12 {
        return Ok(0.0);
    }
    Ok(-(2.0 * eta).ln())
}
