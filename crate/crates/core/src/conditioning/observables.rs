use crate::dynamics::CovarianceState;
use crate::linalg;

/// Mean phonon number from the raw (vacuum-1/2) mechanical block:
/// `(v11 + v22 - 1)/2`.
pub fn effective_phonon_number(v: &CovarianceState) -> f64 {
    let m = v.matrix();
    let n = 0.5 * (m[(0, 0)] + m[(1, 1)] - 1.0);
    if n < 0.0 && n > -1e-9 {
        0.0
    } else {
        n
    }
}

/// `E_N = max(0, -ln 2ν̃₋)` with ν̃₋ the smaller symplectic eigenvalue of the
/// partially transposed covariance.
pub fn logarithmic_negativity(v: &CovarianceState) -> f64 {
    let pt = linalg::partial_transpose(v.matrix());
    let (nu, _) = linalg::two_mode_symplectic_eigenvalues(&pt);
    (-(2.0 * nu).ln()).max(0.0)
}
