//! Conditional Wigner function `W = A0 (A1 + Brr δr² + Bri δr δi + Bii δi²) e^{-δᵀ C δ}`.
//!
//! `δ = δr + iδi` is the complex phase-space amplitude, so the vacuum reads
//! `(2/π) e^{-2|δ|²}`. The coefficient formulas are the closed-form result
//! of tracing the photon-subtracted field out of the joint Gaussian
//! characteristic function. They are kept in that form, which makes
//! `(δr, δi)` the characteristic-function conjugate frame: relative to the
//! quadratures `(q, p)` of the covariance matrix it is a quarter turn,
//! `(δr, δi) ↔ (p, -q)/√2`. Rotation-invariant observables (Fock overlaps,
//! phonon statistics, normalization, the value at the origin) do not see it.

use std::f64::consts::{FRAC_2_PI, PI};

use nalgebra::{Matrix2, Vector2};

use super::blocks::BlockDecomposition;
use crate::error::{Error, Result};

/// `f11 + f22 - 2` at or below this is treated as a vacuum field.
pub const VACUUM_FIELD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerCoefficients {
    pub a0: f64,
    pub a1: f64,
    pub brr: f64,
    pub bri: f64,
    pub bii: f64,
    /// Symmetric, positive definite; exponent is `-δᵀ c_quad δ`.
    pub c_quad: Matrix2<f64>,
}

impl WignerCoefficients {
    /// Coefficients of `W(δi, δr)`.
    pub fn reflected(&self) -> Self {
        WignerCoefficients {
            brr: self.bii,
            bii: self.brr,
            c_quad: Matrix2::new(self.c_quad[(1, 1)], self.c_quad[(1, 0)], self.c_quad[(0, 1)], self.c_quad[(0, 0)]),
            ..*self
        }
    }

    /// Quadratic part of the polynomial as a symmetric matrix.
    pub fn b_matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.brr, 0.5 * self.bri, 0.5 * self.bri, self.bii)
    }
}

pub fn wigner_coefficients(b: &BlockDecomposition) -> Result<WignerCoefficients> {
    let (m, f, c) = (&b.m, &b.f, &b.c);
    let (m11, m12, m21, m22) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let (c11, c12, c21, c22) = (c[(0, 0)], c[(0, 1)], c[(1, 0)], c[(1, 1)]);

    let photon_term = f[(0, 0)] + f[(1, 1)] - 2.0;
    if !(photon_term > VACUUM_FIELD_TOL) {
        return Err(Error::VacuumField { photon_term });
    }
    let ms = m12 + m21;
    let det = 4.0 * m11 * m22 - ms * ms;
    if !(det > 0.0 && m11 > 0.0) {
        return Err(Error::DegenerateMechanicalBlock { det });
    }

    // recurring combinations of the cross-correlation entries
    let ci = c21 * c21 + c22 * c22;
    let cr = c11 * c11 + c12 * c12;
    let cx = c11 * c21 + c12 * c22;

    let norm = 4.0 / photon_term;
    let a0 = norm / PI * m11.powf(-2.5) * (m11 / det).sqrt();
    let poly = -4.0 * ci * m11 + 4.0 * cx * ms - 4.0 * cr * m22 - photon_term * (ms * ms - 4.0 * m11 * m22);
    let a1 = m11 * m11 / det * poly;

    let det2 = det * det;
    let brr = 16.0 * m11 * m11 * (4.0 * ci * m11 * m11 - 4.0 * cx * ms * m11 + cr * ms * ms) / det2;
    let bri = 32.0 * m11 * m11 * (2.0 * ms * (ci * m11 + cr * m22) - cx * (ms * ms + 4.0 * m11 * m22)) / det2;
    let bii = 16.0 * m11 * m11 * (ci * ms * ms - 4.0 * cx * ms * m22 + 4.0 * cr * m22 * m22) / det2;

    // C = -8 (m22 δi² + (m12 + m21) δi δr + m11 δr²) / det
    let c_quad = Matrix2::new(m11, 0.5 * ms, 0.5 * ms, m22) * (8.0 / det);

    Ok(WignerCoefficients { a0, a1, brr, bri, bii, c_quad })
}

pub fn wigner_eval(w: &WignerCoefficients, dr: f64, di: f64) -> f64 {
    let poly = w.a1 + w.brr * dr * dr + w.bri * dr * di + w.bii * di * di;
    let x = Vector2::new(dr, di);
    w.a0 * poly * (-x.dot(&(w.c_quad * x))).exp()
}

/// Wigner function of the Fock state `|n⟩`:
/// `(2/π)(-1)ⁿ Lₙ(4|δ|²) e^{-2|δ|²}`. For `n = 1` this is
/// `(2/π)(4|δ|² - 1) e^{-2|δ|²}`.
pub fn target_fock_wigner(n: usize, dr: f64, di: f64) -> f64 {
    let r2 = dr * dr + di * di;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    FRAC_2_PI * sign * laguerre(n, 4.0 * r2) * (-2.0 * r2).exp()
}

/// Laguerre polynomial `Lₙ(x)` by the three-term recurrence.
pub(crate) fn laguerre(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Wigner function of the zero-mean Gaussian state with vacuum-1 covariance
/// block `m`, evaluated in the same `(δr, δi)` frame as [`wigner_eval`].
pub fn gaussian_wigner(m: &Matrix2<f64>, dr: f64, di: f64) -> f64 {
    let sym = (m + m.transpose()) * 0.5;
    let inv = sym.try_inverse().expect("covariance block must be invertible");
    // quarter turn into the quadrature frame
    let x = Vector2::new(di, -dr);
    FRAC_2_PI / sym.determinant().sqrt() * (-2.0 * x.dot(&(inv * x))).exp()
}
