use nalgebra::{Matrix2, Matrix4};

use crate::dynamics::CovarianceState;

/// Factor converting vacuum-1/2 covariances into the vacuum-1 blocks used by
/// the conditional Wigner coefficients.
pub const BLOCK_SCALE: f64 = 2.0;

/// Local mechanical (`m`), field (`f`) and cross (`c`) blocks of `2v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockDecomposition {
    pub m: Matrix2<f64>,
    pub f: Matrix2<f64>,
    pub c: Matrix2<f64>,
}

impl BlockDecomposition {
    /// `[[m, c], [cᵀ, f]]`, equal to `2v`.
    pub fn reassemble(&self) -> Matrix4<f64> {
        let mut out = Matrix4::zeros();
        out.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.m);
        out.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.f);
        out.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.c);
        out.fixed_view_mut::<2, 2>(2, 0).copy_from(&self.c.transpose());
        out
    }
}

pub fn block_decompose(v: &CovarianceState) -> BlockDecomposition {
    let s = v.matrix() * BLOCK_SCALE;
    BlockDecomposition {
        m: s.fixed_view::<2, 2>(0, 0).into_owned(),
        f: s.fixed_view::<2, 2>(2, 2).into_owned(),
        c: s.fixed_view::<2, 2>(0, 2).into_owned(),
    }
}
