//! Overlaps of the conditional Wigner function with Fock-state Wigner
//! functions, `Tr[ρ |n⟩⟨n|] = π ∫ W W_n d²δ`.
//!
//! Every overlap is evaluated twice: in closed form from Gaussian moments of
//! the polynomial integrand, and by a fixed-step grid sum. Disagreement
//! between the two beyond [`OVERLAP_AGREEMENT_TOL`] is reported as an error.

use std::f64::consts::PI;

use nalgebra::Matrix2;

use super::wigner::WignerCoefficients;
use crate::error::{Error, Result};

/// Maximum tolerated difference between the two overlap routes.
pub const OVERLAP_AGREEMENT_TOL: f64 = 1e-6;

/// Fidelities within this distance outside `[0, 1]` are clamped.
pub const FIDELITY_CLAMP_TOL: f64 = 1e-9;

/// Phonon probabilities within this distance outside `[0, 1]` are clamped.
pub const PROBABILITY_CLAMP_TOL: f64 = 1e-9;

/// Most negative truncation remainder accepted by [`phonon_distribution`].
const REMAINDER_TOL: f64 = 1e-6;

/// Square grid `[-half_width, half_width]²` with uniform `step`, summed with
/// equal weights. For integrands that decay like Gaussians well inside the
/// box this is spectrally accurate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    pub half_width: f64,
    pub step: f64,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        QuadratureGrid { half_width: 8.0, step: 0.02 }
    }
}

impl QuadratureGrid {
    fn nodes(&self) -> Vec<f64> {
        let n = (2.0 * self.half_width / self.step).round() as usize;
        (0..=n).map(|i| -self.half_width + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhononDistribution {
    /// `P(n)` for `n = 0..=n_max`.
    pub probs: Vec<f64>,
    /// `1 - Σ probs`: weight above `n_max`.
    pub remainder: f64,
}

impl PhononDistribution {
    pub fn n_max(&self) -> usize {
        self.probs.len() - 1
    }
}

/// Integrals `∫ x^a y^b exp(-(x,y) S (x,y)ᵀ) dx dy` for all `a + b ≤ degree`.
struct GaussianMoments {
    table: Vec<Vec<f64>>,
}

impl GaussianMoments {
    fn new(s: &Matrix2<f64>, degree: usize) -> Self {
        let det = s.determinant();
        // Normal with covariance S⁻¹/2.
        let cov = Matrix2::new(s[(1, 1)], -s[(0, 1)], -s[(1, 0)], s[(0, 0)]) * (0.5 / det);
        let (sxx, sxy, syy) = (cov[(0, 0)], cov[(0, 1)], cov[(1, 1)]);
        let mut e = vec![vec![0.0; degree + 1]; degree + 1];
        e[0][0] = 1.0;
        // Stein recurrences:
        //   E[x^a y^b] = (a-1) Σxx E[x^{a-2} y^b] + b Σxy E[x^{a-1} y^{b-1}]
        //   E[y^b]     = (b-1) Σyy E[y^{b-2}]
        for total in 1..=degree {
            for a in 0..=total {
                let b = total - a;
                let v = if a == 0 {
                    if b >= 2 { (b - 1) as f64 * syy * e[0][b - 2] } else { 0.0 }
                } else {
                    let mut v = 0.0;
                    if a >= 2 {
                        v += (a - 1) as f64 * sxx * e[a - 2][b];
                    }
                    if b >= 1 {
                        v += b as f64 * sxy * e[a - 1][b - 1];
                    }
                    v
                };
                e[a][b] = v;
            }
        }
        let norm = PI / det.sqrt();
        for row in e.iter_mut() {
            for x in row.iter_mut() {
                *x *= norm;
            }
        }
        GaussianMoments { table: e }
    }

    fn get(&self, a: usize, b: usize) -> f64 {
        self.table[a][b]
    }

    /// `∫ (A1 + Brr x² + Bri xy + Bii y²) x^a y^b e^{...}`.
    fn against_polynomial(&self, w: &WignerCoefficients, a: usize, b: usize) -> f64 {
        w.a1 * self.get(a, b)
            + w.brr * self.get(a + 2, b)
            + w.bri * self.get(a + 1, b + 1)
            + w.bii * self.get(a, b + 2)
    }
}

/// Closed-form `π ∫ W W_n d²δ`.
pub fn overlap_closed_form(w: &WignerCoefficients, n: usize) -> f64 {
    // W_n = (2/π)(-1)ⁿ Σ_k (-1)^k C(n,k) 4^k/k! (x² + y²)^k e^{-2(x²+y²)}
    let s = w.c_quad + Matrix2::identity() * 2.0;
    let moments = GaussianMoments::new(&s, 2 * n + 2);
    let mut total = 0.0;
    let mut coef = 1.0; // C(n,k) 4^k / k!
    for k in 0..=n {
        if k > 0 {
            coef *= 4.0 * (n + 1 - k) as f64 / (k * k) as f64;
        }
        let mut radial = 0.0;
        let mut binom = 1.0; // C(k,j)
        for j in 0..=k {
            if j > 0 {
                binom *= (k + 1 - j) as f64 / j as f64;
            }
            radial += binom * moments.against_polynomial(w, 2 * j, 2 * (k - j));
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * coef * radial;
    }
    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    PI * w.a0 * 2.0 / PI * parity * total
}

/// Grid estimate of `π ∫ W W_n d²δ` for every `n ≤ n_max`, in one pass.
pub fn overlap_quadrature(w: &WignerCoefficients, n_max: usize, grid: &QuadratureGrid) -> Vec<f64> {
    let nodes = grid.nodes();
    let (c11, c12, c22) = (w.c_quad[(0, 0)], w.c_quad[(0, 1)] + w.c_quad[(1, 0)], w.c_quad[(1, 1)]);
    let mut sums = vec![0.0; n_max + 1];
    let mut lag = vec![0.0; n_max + 1];
    for &x in &nodes {
        let mut row = vec![0.0; n_max + 1];
        for &y in &nodes {
            let r2 = x * x + y * y;
            let expo = -(c11 * x * x + c12 * x * y + c22 * y * y) - 2.0 * r2;
            if expo < -745.0 {
                continue;
            }
            let weight = (w.a1 + w.brr * x * x + w.bri * x * y + w.bii * y * y) * expo.exp();
            fill_laguerre(&mut lag, 4.0 * r2);
            for (acc, l) in row.iter_mut().zip(&lag) {
                *acc += weight * l;
            }
        }
        for (s, r) in sums.iter_mut().zip(&row) {
            *s += r;
        }
    }
    let h2 = grid.step * grid.step;
    sums.iter()
        .enumerate()
        .map(|(n, s)| {
            let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            PI * w.a0 * 2.0 / PI * parity * s * h2
        })
        .collect()
}

fn fill_laguerre(out: &mut [f64], x: f64) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = 1.0 - x;
    }
    for k in 1..out.len().saturating_sub(1) {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + 1.0 - x) * out[k] - kf * out[k - 1]) / (kf + 1.0);
    }
}

/// `∫ W d²δ`, closed form and grid.
pub fn normalization(w: &WignerCoefficients, grid: &QuadratureGrid) -> (f64, f64) {
    let closed = w.a0 * GaussianMoments::new(&w.c_quad, 2).against_polynomial(w, 0, 0);
    let nodes = grid.nodes();
    let mut sum = 0.0;
    for &x in &nodes {
        for &y in &nodes {
            sum += super::wigner::wigner_eval(w, x, y);
        }
    }
    (closed, sum * grid.step * grid.step)
}

fn clamp_unit(value: f64, tol: f64, what: &'static str) -> Result<f64> {
    if !(value >= -tol && value <= 1.0 + tol) {
        return Err(Error::ProbabilityOutOfRange { what, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

fn checked(closed_form: f64, quadrature: f64) -> Result<f64> {
    if !((closed_form - quadrature).abs() <= OVERLAP_AGREEMENT_TOL) {
        return Err(Error::QuadratureDisagreement { closed_form, quadrature });
    }
    Ok(closed_form)
}

/// Fidelity with the Fock state `|n⟩` on the default grid.
pub fn fidelity(w: &WignerCoefficients, n: usize) -> Result<f64> {
    fidelity_with_grid(w, n, &QuadratureGrid::default())
}

pub fn fidelity_with_grid(w: &WignerCoefficients, n: usize, grid: &QuadratureGrid) -> Result<f64> {
    let closed = overlap_closed_form(w, n);
    let quad = overlap_quadrature(w, n, grid)[n];
    clamp_unit(checked(closed, quad)?, FIDELITY_CLAMP_TOL, "fidelity")
}

pub fn phonon_distribution(w: &WignerCoefficients, n_max: usize) -> Result<PhononDistribution> {
    phonon_distribution_with_grid(w, n_max, &QuadratureGrid::default())
}

pub fn phonon_distribution_with_grid(
    w: &WignerCoefficients,
    n_max: usize,
    grid: &QuadratureGrid,
) -> Result<PhononDistribution> {
    let quad = overlap_quadrature(w, n_max, grid);
    let probs = quad
        .iter()
        .enumerate()
        .map(|(n, &q)| clamp_unit(checked(overlap_closed_form(w, n), q)?, PROBABILITY_CLAMP_TOL, "phonon probability"))
        .collect::<Result<Vec<_>>>()?;
    let remainder = 1.0 - probs.iter().sum::<f64>();
    if remainder < -REMAINDER_TOL {
        return Err(Error::ProbabilityOutOfRange { what: "truncation remainder", value: remainder });
    }
    Ok(PhononDistribution { probs, remainder })
}
