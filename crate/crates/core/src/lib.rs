//! Steady-state simulator for membrane flexural modes coupled to a single
//! laser-cooled atomic phonon mode through vacuum (Casimir-Polder) forces.
//!
//! The pipeline is linear: a [`params::SystemConfig`] describes the atoms, the
//! mechanical modes and the bath; [`params::derive_effective`] reduces it to
//! the effective drive/damping quantities; [`dynamics`] assembles the drift
//! and diffusion matrices of the linearised fluctuation equations;
//! [`stability`] decides whether a stationary state exists; [`steadystate`]
//! solves the Lyapunov equation for the covariance matrix; [`entanglement`]
//! evaluates bipartite Gaussian entanglement measures on reduced blocks; and
//! [`sweep`] drives all of the above over parameter grids, with the scenario
//! catalog in [`presets`].
//!
//! All configured frequencies are ordinary frequencies in Hz. The fluctuation
//! dynamics is homogeneous in frequency, so no angular conversion appears
//! there; only the thermal occupation needs an absolute energy scale and
//! converts via `2π·ν` internally.

pub mod constants;
pub mod dynamics;
pub mod entanglement;
mod error;
pub mod graphene;
pub mod params;
pub mod presets;
pub mod stability;
pub mod steadystate;
pub mod sweep;

pub use error::{Error, Result};

// The matrix types in the public API come from nalgebra; re-exported so
// downstream crates stay version-aligned.
pub use nalgebra;
