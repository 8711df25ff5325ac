//! Single-photon subtraction from the cavity field and the observables of the
//! heralded mechanical state.
//!
//! Two covariance normalizations meet here. [`CovarianceState`] uses vacuum
//! variance 1/2, which is what the drift/diffusion model and the effective
//! phonon number expect. The closed-form conditional Wigner coefficients are
//! written for blocks with vacuum variance 1; [`block_decompose`] applies the
//! factor [`BLOCK_SCALE`] at that boundary and nowhere else.
//!
//! [`CovarianceState`]: crate::dynamics::CovarianceState

mod blocks;
mod observables;
mod overlap;
mod protocol;
mod tmsv;
mod wigner;

pub use blocks::{block_decompose, BlockDecomposition, BLOCK_SCALE};
pub use observables::{effective_phonon_number, logarithmic_negativity};
pub use overlap::{
    fidelity, fidelity_with_grid, normalization, overlap_closed_form, overlap_quadrature, phonon_distribution,
    phonon_distribution_with_grid, PhononDistribution, QuadratureGrid, FIDELITY_CLAMP_TOL, OVERLAP_AGREEMENT_TOL,
    PROBABILITY_CLAMP_TOL,
};
pub use protocol::{condition, find_optimal_subtraction_time, OptimalTime};
pub use tmsv::{tmsv_covariance, tmsv_subtracted_distribution};
pub use wigner::{
    gaussian_wigner, target_fock_wigner, wigner_coefficients, wigner_eval, WignerCoefficients, VACUUM_FIELD_TOL,
};
