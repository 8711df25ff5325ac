//! Two-mode squeezed vacuum: the short-time limit of blue-detuned driving,
//! with an exact photon-subtracted phonon distribution.

use nalgebra::Matrix4;

use crate::dynamics::CovarianceState;
use crate::error::{Error, Result};

/// `(1/2)[[cosh 2s·I, sinh 2s·Z], [sinh 2s·Z, cosh 2s·I]]`, `Z = diag(1, -1)`.
pub fn tmsv_covariance(s: f64) -> CovarianceState {
    let (ch, sh) = ((2.0 * s).cosh() * 0.5, (2.0 * s).sinh() * 0.5);
    let v = Matrix4::new(
        ch, 0.0, sh, 0.0, //
        0.0, ch, 0.0, -sh, //
        sh, 0.0, ch, 0.0, //
        0.0, -sh, 0.0, ch,
    );
    CovarianceState::from_raw(v, 0.0)
}

/// Probability of `|n⟩` in mode 1 after subtracting one excitation from
/// mode 2: `n tanh^{2n}(s) / (cosh s sinh s)²`.
pub fn tmsv_subtracted_distribution(s: f64, n: usize) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::NonPositiveSqueezing(s));
    }
    let t2 = s.tanh().powi(2);
    let denom = (s.cosh() * s.sinh()).powi(2);
    Ok(n as f64 * t2.powi(n as i32) / denom)
}
