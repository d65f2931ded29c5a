use thiserror::Error;

/// Crate-wide result type.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced by the simulation pipeline.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A configuration value violates its physical constraints.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The drift matrix has an eigenvalue with non-negative real part, so no
    /// stationary covariance exists.
    #[error("system is not stable (largest eigenvalue real part {max_real_part:e} Hz)")]
    Unstable { max_real_part: f64 },

    /// The eigenvalue iteration did not converge; distinct from an unstable
    /// verdict.
    #[error("eigenvalue computation failed to converge")]
    EigenvalueFailure,

    /// The linearised Lyapunov operator is numerically singular, typically
    /// because the system sits at the edge of stability.
    #[error("Lyapunov solver is degenerate (near-marginal stability)")]
    SolverDegenerate,

    /// A covariance matrix fed to the entanglement measures is not a valid
    /// second-moment matrix.
    #[error("covariance is not physical: Σ² = {sigma_sq:e} < 4·det V = {four_det:e}")]
    NonPhysical { sigma_sq: f64, four_det: f64 },

    /// A mechanical-mode index is out of range.
    #[error("mode index {index} out of range for {n_modes} modes")]
    ModeIndex { index: usize, n_modes: usize },

    /// A bipartition must name two distinct parties.
    #[error("bipartition requires two distinct modes, got mode {0} twice")]
    DegenerateBipartition(usize),

    /// The operation is defined for a single mechanical mode only.
    #[error("operation requires exactly one mechanical mode, config has {n_modes}")]
    RequiresSingleMode { n_modes: usize },

    /// No preset with the requested name exists.
    #[error("unknown scenario preset `{0}`")]
    UnknownPreset(String),

    /// A sweep grid must be nonempty and strictly monotone.
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
}
