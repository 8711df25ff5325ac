//! Fock-space brute force for the two-mode squeezed vacuum, independent of
//! the Gaussian machinery under test.

#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

/// Truncated TMSV ket amplitudes `c_n = tanhⁿ s / cosh s`, `n ≤ n_max`,
/// on the diagonal `|n, n⟩`.
pub fn tmsv_amplitudes(s: f64, n_max: usize) -> Vec<f64> {
    (0..=n_max).map(|n| s.tanh().powi(n as i32) / s.cosh()).collect()
}

/// Symmetrized quadrature covariance of the truncated TMSV ket, computed by
/// applying ladder operators to a dense two-mode ket.
pub fn tmsv_covariance_bruteforce(s: f64, n_max: usize) -> Matrix4<f64> {
    let dim = n_max + 2;
    let idx = |a: usize, b: usize| a * dim + b;
    let mut psi = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (n, c) in tmsv_amplitudes(s, n_max).into_iter().enumerate() {
        psi[idx(n, n)] = Complex64::new(c, 0.0);
    }
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::new(0.0, 1.0);
    // quadrature u_k applied to a ket: q = (a + a†)/√2, p = i(a† - a)/√2
    let apply = |k: usize, v: &[Complex64]| -> Vec<Complex64> {
        let mode = k / 2;
        let is_p = k % 2 == 1;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let amp = v[idx(a, b)];
                if amp == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let n = if mode == 0 { a } else { b };
                let lower = if n > 0 { Some(n - 1) } else { None };
                let raise = if n + 1 < dim { Some(n + 1) } else { None };
                let place = |m: usize| if mode == 0 { idx(m, b) } else { idx(a, m) };
                if let Some(m) = lower {
                    let f = (n as f64).sqrt() * r2;
                    out[place(m)] += amp * if is_p { -i * f } else { Complex64::new(f, 0.0) };
                }
                if let Some(m) = raise {
                    let f = ((n + 1) as f64).sqrt() * r2;
                    out[place(m)] += amp * if is_p { i * f } else { Complex64::new(f, 0.0) };
                }
            }
        }
        out
    };
    let inner = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
    let applied: Vec<Vec<Complex64>> = (0..4).map(|k| apply(k, &psi)).collect();
    let mut v = Matrix4::zeros();
    for j in 0..4 {
        for k in 0..4 {
            // ⟨u_j u_k⟩ = ⟨u_j ψ | u_k ψ⟩ since u_j is Hermitian
            let jk = inner(&applied[j], &applied[k]);
            v[(j, k)] = jk.re; // symmetrized: Re⟨u_j u_k⟩
        }
    }
    v
}

/// Exact phonon distribution of mode 1 after `a₂` acts on the truncated
/// TMSV: `P(n) ∝ n c_n²`.
pub fn subtracted_distribution_bruteforce(s: f64, n_max: usize) -> Vec<f64> {
    let c = tmsv_amplitudes(s, n_max);
    let w: Vec<f64> = c.iter().enumerate().map(|(n, c)| n as f64 * c * c).collect();
    let norm: f64 = w.iter().sum();
    w.into_iter().map(|x| x / norm).collect()
}

/// Displacement operator `D(α) = exp(α a† - α* a)` in a `dim`-level
/// truncation.
pub fn displacement(alpha: Complex64, dim: usize) -> DMatrix<Complex64> {
    let mut gen = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..dim - 1 {
        let f = ((n + 1) as f64).sqrt();
        gen[(n + 1, n)] += alpha * f; // α a†
        gen[(n, n + 1)] -= alpha.conj() * f; // -α* a
    }
    gen.exp()
}

/// Wigner function of a Fock-diagonal state by displaced parity,
/// `W(α) = (2/π) Tr[D(α)† ρ D(α) Π]`.
pub fn wigner_from_displacement(probs: &[f64], d: &DMatrix<Complex64>) -> f64 {
    // D† ρ D, diagonal entries only
    let mut w = 0.0;
    for m in 0..d.nrows() {
        let mut diag = 0.0;
        for (n, p) in probs.iter().enumerate() {
            diag += p * d[(n, m)].norm_sqr();
        }
        w += if m % 2 == 0 { diag } else { -diag };
    }
    std::f64::consts::FRAC_2_PI * w
}

pub fn wigner_by_displaced_parity(probs: &[f64], alpha: Complex64, dim: usize) -> f64 {
    wigner_from_displacement(probs, &displacement(alpha, dim))
}
