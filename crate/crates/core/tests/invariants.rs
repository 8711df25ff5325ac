use nalgebra::{Matrix2, Matrix4};
use optomech::conditioning::{
    block_decompose, gaussian_wigner, normalization, wigner_coefficients, wigner_eval, BlockDecomposition,
    QuadratureGrid,
};
use optomech::dynamics::CovarianceState;
use optomech::model::{derive_params, PhysicalParams};
use proptest::prelude::*;

fn mech_block() -> impl Strategy<Value = Matrix2<f64>> {
    (1.0..5.0f64, 1.0..5.0f64, -0.9..0.9f64).prop_map(|(a, b, r)| {
        let off = r * (a * b).sqrt();
        Matrix2::new(a, off, off, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uncorrelated_field_leaves_mechanics_gaussian(m in mech_block(), f in 1.01..3.0f64, dr in -2.0..2.0f64, di in -2.0..2.0f64) {
        let b = BlockDecomposition { m, f: Matrix2::identity() * f, c: Matrix2::zeros() };
        let w = wigner_coefficients(&b).unwrap();
        let got = wigner_eval(&w, dr, di);
        let want = gaussian_wigner(&m, dr, di);
        prop_assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn conditional_wigner_is_normalized_and_even(
        m in mech_block(), f in 1.05..2.0f64, c in -0.3..0.3f64, dr in -2.0..2.0f64, di in -2.0..2.0f64,
    ) {
        let mut v = Matrix4::zeros();
        v.fixed_view_mut::<2, 2>(0, 0).copy_from(&(m * 0.5));
        v.fixed_view_mut::<2, 2>(2, 2).copy_from(&(Matrix2::identity() * (0.5 * f)));
        v[(0, 2)] = 0.5 * c;
        v[(2, 0)] = 0.5 * c;
        prop_assume!(CovarianceState::new(v, 0.0).is_ok());
        let state = CovarianceState::new(v, 0.0).unwrap();
        let w = wigner_coefficients(&block_decompose(&state)).unwrap();
        let (closed, grid) = normalization(&w, &QuadratureGrid::default());
        prop_assert!((closed - 1.0).abs() < 1e-9);
        prop_assert!((grid - 1.0).abs() < 1e-6);
        prop_assert!((wigner_eval(&w, dr, di) - wigner_eval(&w, -dr, -di)).abs() < 1e-12);
    }

    #[test]
    fn derived_couplings_scale_with_power(scale in 0.1..10.0f64) {
        let base = PhysicalParams::default();
        let p = PhysicalParams { input_power: base.input_power * scale, ..base };
        let g0 = derive_params(&base).unwrap();
        let g1 = derive_params(&p).unwrap();
        prop_assert!((g1.g_eff / g0.g_eff - scale.sqrt()).abs() < 1e-12 * scale.sqrt().max(1.0));
        prop_assert_eq!(g1.g0, g0.g0);
    }
}
