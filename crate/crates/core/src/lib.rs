//! Linearized cavity-optomechanics simulation with single-photon subtraction.
//!
//! The crate follows one mechanical mode coupled to one cavity mode through
//! the linearized radiation-pressure interaction. The joint fluctuation state
//! is Gaussian and is tracked through its 4×4 covariance matrix over the
//! quadratures `(δq, δp, δX, δY)`. Subtracting a single photon from the cavity
//! field heralds a non-Gaussian mechanical state whose Wigner function is a
//! quadratic polynomial times a Gaussian; [`conditioning`] evaluates it and
//! compares it with mechanical Fock states.
//!
//! Pipeline:
//!
//! 1. [`model::derive_params`] turns SI experiment parameters into couplings.
//! 2. [`dynamics`] builds the drift/diffusion matrices and propagates the
//!    covariance (closed form) or solves for the stationary state.
//! 3. [`conditioning`] applies the photon-subtraction map and computes
//!    fidelity, phonon statistics, effective phonon number and entanglement.

pub mod conditioning;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod model;

pub use error::{Error, Result};
