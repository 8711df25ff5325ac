//! Small dense linear-algebra kernels for 4×4 Gaussian covariance dynamics.

use nalgebra::{Matrix4, SMatrix, SVector};

type Matrix8 = SMatrix<f64, 8, 8>;
type Matrix16 = SMatrix<f64, 16, 16>;

/// Upper bound on `‖block‖₁·h` for the Van Loan sub-step.
const VAN_LOAN_STEP_NORM: f64 = 5.0;

pub fn symmetrize(m: &Matrix4<f64>) -> Matrix4<f64> {
    (m + m.transpose()) * 0.5
}

fn norm1<const N: usize>(m: &SMatrix<f64, N, N>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Closed-form flow of `dv/dt = A v + v Aᵀ + D`.
///
/// Returns `(M, Q)` with `M = e^{At}` and `Q = ∫₀ᵗ e^{As} D e^{Aᵀs} ds`, so that
/// `v(t) = M v(0) Mᵀ + Q`.
///
/// The Van Loan block `[[A, D], [0, -Aᵀ]]` is exponentiated over a short
/// step `h = t/2^k` only; its `-Aᵀ` corner grows like `e^{|Re λ| t}` and
/// overflows for long horizons. The step is then doubled `k` times with
/// `Q(2h) = M(h) Q(h) M(h)ᵀ + Q(h)`, `M(2h) = M(h)²`.
pub fn covariance_flow(a: &Matrix4<f64>, d: &Matrix4<f64>, t: f64) -> (Matrix4<f64>, Matrix4<f64>) {
    if t == 0.0 {
        return (Matrix4::identity(), Matrix4::zeros());
    }
    let mut block = Matrix8::zeros();
    block.fixed_view_mut::<4, 4>(0, 0).copy_from(a);
    block.fixed_view_mut::<4, 4>(0, 4).copy_from(d);
    block.fixed_view_mut::<4, 4>(4, 4).copy_from(&(-a.transpose()));

    let norm = norm1(&block) * t;
    let mut doublings = 0i32;
    if norm > VAN_LOAN_STEP_NORM {
        doublings = (norm / VAN_LOAN_STEP_NORM).log2().ceil() as i32;
    }
    let h = t / 2f64.powi(doublings);

    let e = (block * h).exp();
    let mut m: Matrix4<f64> = e.fixed_view::<4, 4>(0, 0).into_owned();
    let f12: Matrix4<f64> = e.fixed_view::<4, 4>(0, 4).into_owned();
    let mut q = symmetrize(&(f12 * m.transpose()));
    for _ in 0..doublings {
        q = symmetrize(&(m * q * m.transpose() + q));
        m = m * m;
    }
    (m, q)
}

/// Solves the continuous Lyapunov equation `A V + V Aᵀ + D = 0` through its
/// Kronecker form `(I⊗A + A⊗I) vec V = -vec D`, with one step of iterative
/// refinement. Returns `None` if the 16×16 system is singular.
pub fn solve_lyapunov(a: &Matrix4<f64>, d: &Matrix4<f64>) -> Option<Matrix4<f64>> {
    let mut op = Matrix16::zeros();
    for j in 0..4 {
        for i in 0..4 {
            let row = i + 4 * j;
            for k in 0..4 {
                op[(row, k + 4 * j)] += a[(i, k)];
                op[(row, i + 4 * k)] += a[(j, k)];
            }
        }
    }
    let rhs = SVector::<f64, 16>::from_iterator(d.iter().map(|x| -x));
    let lu = op.lu();
    let mut x = lu.solve(&rhs)?;
    let resid = rhs - op * x;
    if let Some(dx) = lu.solve(&resid) {
        x += dx;
    }
    let v = Matrix4::from_iterator(x.iter().copied());
    Some(symmetrize(&v))
}

/// Largest real part among the eigenvalues of `a`.
pub fn spectral_abscissa(a: &Matrix4<f64>) -> f64 {
    a.complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Symplectic eigenvalues `(ν₋, ν₊)` of a two-mode covariance matrix in the
/// vacuum-1/2 convention.
///
/// Computed as the singular values of `v^{1/2} Ω v^{1/2}` (each appears
/// twice), which stays well conditioned when `ν₋ ≈ ν₊`, unlike the
/// closed-form invariant expression. `v` must be positive semidefinite.
pub fn two_mode_symplectic_eigenvalues(v: &Matrix4<f64>) -> (f64, f64) {
    let eig = symmetrize(v).symmetric_eigen();
    let sqrt_diag = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
    let root = eig.eigenvectors * Matrix4::from_diagonal(&sqrt_diag) * eig.eigenvectors.transpose();
    let omega = Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    );
    let sv = (root * omega * root).singular_values();
    let lo = sv.min();
    let hi = sv.max();
    (lo, hi)
}

/// Partial transposition of the second mode: `δY → -δY`.
pub fn partial_transpose(v: &Matrix4<f64>) -> Matrix4<f64> {
    let mut out = *v;
    for i in 0..4 {
        if i != 3 {
            out[(i, 3)] = -out[(i, 3)];
            out[(3, i)] = -out[(3, i)];
        }
    }
    out
}
