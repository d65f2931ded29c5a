//! Stationary covariance matrix of the linearised dynamics.
//!
//! For a Hurwitz drift matrix A the steady state of u̇ = Au + n is a
//! zero-mean Gaussian fully described by the symmetric covariance V solving
//!
//! ```text
//! A V + V Aᵀ = −D.
//! ```
//!
//! At the dimensions involved (≤ 8) the equation is solved directly by
//! linearising the Lyapunov operator with Kronecker products and LU-factoring
//! the resulting (2N+2)² system.

use nalgebra::DMatrix;

use crate::dynamics::LinearSystem;
use crate::error::{Error, Result};
use crate::stability::spectral_stability;

/// Symmetric stationary covariance matrix in the (δq₁, δp₁, …, δX, δY)
/// ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    v: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Wraps a precomputed matrix, symmetrising it. Intended for tests and
    /// for reassembling externally produced covariances; `solve_lyapunov` is
    /// the production path.
    pub fn from_matrix(n_modes: usize, v: DMatrix<f64>) -> Result<Self> {
        let dim = 2 * n_modes + 2;
        if v.nrows() != dim || v.ncols() != dim {
            return Err(Error::InvalidConfig(format!(
                "covariance must be {dim}×{dim} for {n_modes} modes, got {}×{}",
                v.nrows(),
                v.ncols()
            )));
        }
        let sym = (&v + v.transpose()) * 0.5;
        Ok(CovarianceMatrix { n_modes, v: sym })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_modes + 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.v
    }
}

/// Solves A V + V Aᵀ = −D for the unique stationary covariance.
///
/// The spectral stability precondition is enforced here: an unstable or
/// marginal system yields [`Error::Unstable`]; a numerically singular
/// Lyapunov operator yields [`Error::SolverDegenerate`].
pub fn solve_lyapunov(system: &LinearSystem) -> Result<CovarianceMatrix> {
    let report = spectral_stability(system)?;
    if !report.stable {
        return Err(Error::Unstable {
            max_real_part: report.max_real_part,
        });
    }
    let dim = system.dim();
    let a = &system.drift;
    let eye = DMatrix::<f64>::identity(dim, dim);
    // vec(AV + VAᵀ) = (I⊗A + A⊗I) vec(V) for column-major vec.
    let operator = eye.kronecker(a) + a.kronecker(&eye);
    let rhs = DMatrix::from_column_slice(dim * dim, 1, (-&system.diffusion).as_slice());
    let solution = operator
        .lu()
        .solve(&rhs)
        .ok_or(Error::SolverDegenerate)?;
    if solution.iter().any(|x| !x.is_finite()) {
        return Err(Error::SolverDegenerate);
    }
    let v = DMatrix::from_column_slice(dim, dim, solution.as_slice());
    CovarianceMatrix::from_matrix(system.n_modes, v)
}

/// Relative Frobenius residual ‖AV + VAᵀ + D‖_F / ‖D‖_F of a solve.
pub fn residual(system: &LinearSystem, cov: &CovarianceMatrix) -> f64 {
    let v = cov.matrix();
    let r = &system.drift * v + v * system.drift.transpose() + &system.diffusion;
    r.norm() / system.diffusion.norm()
}

/// Effective occupation m_eff = (⟨δq_j²⟩ + ⟨δp_j²⟩ − 1)/2 of mechanical mode
/// `mode_index`; zero in the ground state and m_j in the decoupled thermal
/// state.
pub fn occupation(cov: &CovarianceMatrix, mode_index: usize) -> Result<f64> {
    if mode_index >= cov.n_modes() {
        return Err(Error::ModeIndex {
            index: mode_index,
            n_modes: cov.n_modes(),
        });
    }
    let q = cov.v[(2 * mode_index, 2 * mode_index)];
    let p = cov.v[(2 * mode_index + 1, 2 * mode_index + 1)];
    Ok((q + p - 1.0) / 2.0)
}

/// Stationary phonon quadrature variances (⟨δX²⟩, ⟨δY²⟩), the last two
/// diagonal entries.
pub fn phonon_variances(cov: &CovarianceMatrix) -> (f64, f64) {
    let x = cov.dim() - 2;
    (cov.v[(x, x)], cov.v[(x + 1, x + 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_system;
    use crate::params::{thermal_occupation, AtomicParams, MechanicalMode, SystemConfig};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fig_config(g: f64, theta: f64, temperature: f64) -> SystemConfig {
        SystemConfig {
            atoms: AtomicParams {
                gamma_sp: 6.1e6,
                rabi: 12e6,
                detuning: 45e6,
                lamb_dicke: 0.15,
                omega_ph: 477.0,
            },
            modes: vec![MechanicalMode {
                nu: 2e6,
                kappa: 2.0,
                g,
                omega_cp: None,
            }],
            temperature,
            theta,
        }
    }

    #[test]
    fn decoupled_mode_reaches_thermal_equilibrium() {
        // g = 0: the mechanical block of V is (2m+1)/2 on the diagonal with
        // no cross terms, and the noiseless damped phonon block vanishes.
        let config = fig_config(0.0, 2e6, 0.01);
        let (system, _) = build_system(&config).unwrap();
        let cov = solve_lyapunov(&system).unwrap();
        let m = thermal_occupation(2e6, 0.01);
        let v = cov.matrix();
        assert_relative_eq!(v[(0, 0)], (2.0 * m + 1.0) / 2.0, max_relative = 1e-10);
        assert_relative_eq!(v[(1, 1)], (2.0 * m + 1.0) / 2.0, max_relative = 1e-10);
        assert!(v[(0, 1)].abs() < 1e-9);
        let (vx, vy) = phonon_variances(&cov);
        assert!(vx.abs() < 1e-12 && vy.abs() < 1e-12);
        assert_relative_eq!(occupation(&cov, 0).unwrap(), m, max_relative = 1e-9);
    }

    #[test]
    fn zero_diffusion_contracts_to_zero_covariance() {
        let config = fig_config(-6.5e3, 2e6, 0.01);
        let (mut system, _) = build_system(&config).unwrap();
        system.diffusion.fill(0.0);
        let dim = system.dim();
        let a = &system.drift;
        let eye = nalgebra::DMatrix::<f64>::identity(dim, dim);
        let op = eye.kronecker(a) + a.kronecker(&eye);
        let rhs = nalgebra::DMatrix::zeros(dim * dim, 1);
        let sol = op.lu().solve(&rhs).unwrap();
        assert!(sol.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn ground_state_occupation_is_zero() {
        let mut v = DMatrix::<f64>::zeros(4, 4);
        v[(0, 0)] = 0.5;
        v[(1, 1)] = 0.5;
        let cov = CovarianceMatrix::from_matrix(1, v).unwrap();
        assert_eq!(occupation(&cov, 0).unwrap(), 0.0);
    }

    #[test]
    fn unstable_system_is_rejected() {
        let config = fig_config(0.0, 2e6, 0.01);
        let (mut system, _) = build_system(&config).unwrap();
        system.drift[(1, 1)] = 2.0; // anti-damped mode
        assert!(matches!(
            solve_lyapunov(&system),
            Err(Error::Unstable { .. })
        ));
    }

    #[test]
    fn occupation_index_out_of_range() {
        let config = fig_config(0.0, 2e6, 0.01);
        let (system, _) = build_system(&config).unwrap();
        let cov = solve_lyapunov(&system).unwrap();
        assert!(matches!(
            occupation(&cov, 1),
            Err(Error::ModeIndex { index: 1, n_modes: 1 })
        ));
    }

    #[test]
    fn residual_is_tiny_at_figure_point() {
        let config = fig_config(-6.5e3, 2e6, 0.01);
        let (system, _) = build_system(&config).unwrap();
        let cov = solve_lyapunov(&system).unwrap();
        assert!(residual(&system, &cov) < 1e-10);
    }

    #[test]
    fn coupled_phonon_variances_are_positive() {
        let config = fig_config(-6.5e3, 2e6, 0.01);
        let (system, _) = build_system(&config).unwrap();
        let cov = solve_lyapunov(&system).unwrap();
        let (vx, vy) = phonon_variances(&cov);
        assert!(vx > 0.0 && vy > 0.0);
    }

    #[test]
    fn permuted_mode_order_permutes_covariance() {
        let mut config = fig_config(-6.5e3, 2e6, 0.01);
        config.modes.push(MechanicalMode {
            nu: 3e6,
            kappa: 4.0,
            g: 1e4,
            omega_cp: None,
        });
        let (system_a, _) = build_system(&config).unwrap();
        let cov_a = solve_lyapunov(&system_a).unwrap();

        config.modes.swap(0, 1);
        let (system_b, _) = build_system(&config).unwrap();
        let cov_b = solve_lyapunov(&system_b).unwrap();

        let perm = [2usize, 3, 0, 1, 4, 5];
        for r in 0..6 {
            for c in 0..6 {
                assert_relative_eq!(
                    cov_a.matrix()[(r, c)],
                    cov_b.matrix()[(perm[r], perm[c])],
                    max_relative = 1e-9,
                    epsilon = 1e-12
                );
            }
        }
        assert_relative_eq!(
            occupation(&cov_a, 0).unwrap(),
            occupation(&cov_b, 1).unwrap(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn occupations_stay_nonnegative_across_detunings() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let theta = rng.random_range(0.5..1.5) * 2e6;
            let g = rng.random_range(-1e4..1e4);
            let config = fig_config(g, theta, 0.01);
            let (system, _) = build_system(&config).unwrap();
            let cov = solve_lyapunov(&system).unwrap();
            let m_eff = occupation(&cov, 0).unwrap();
            assert!(m_eff >= -1e-9, "m_eff = {m_eff} at theta {theta} g {g}");
        }
    }
}
