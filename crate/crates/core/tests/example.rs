use curvlab_core::curvature::{chern_curvature, constant_h_detect, levi_civita_from_chern, levi_civita_koszul};
use curvlab_core::families::{hyperbolic_example, hyperbolic_example_real, mixed_sign_example_real};
use curvlab_core::{HVerdict, HermitianLieAlgebra, DEFAULT_TOL};

#[test]
fn levi_civita_constant_minus_two_in_every_dimension() {
    for n in 2..=6 {
        let alg = hyperbolic_example(n).unwrap();
        let from_chern = constant_h_detect(&levi_civita_from_chern(&alg).curv4(), DEFAULT_TOL);
        let from_koszul = constant_h_detect(&levi_civita_koszul(&alg).complex_blocks().curv4(), DEFAULT_TOL);
        for v in [from_chern, from_koszul] {
            let c = v.constant_value().unwrap_or_else(|| panic!("n = {n}: {v:?}"));
            assert!((c + 2.0).abs() < 1e-12, "n = {n}: {c}");
        }
        assert!(matches!(constant_h_detect(&chern_curvature(&alg), DEFAULT_TOL), HVerdict::NotConstant { .. }));
        let (unimodular, trace) = alg.is_unimodular();
        assert!(!unimodular);
        assert!((trace - (2 * n - 1) as f64 * std::f64::consts::SQRT_2).abs() < 1e-12);
    }
}

#[test]
fn real_presentation_matches_family_build() {
    for n in 2..=4 {
        let a = HermitianLieAlgebra::from_real(&hyperbolic_example_real(n), DEFAULT_TOL).unwrap();
        let b = hyperbolic_example(n).unwrap();
        assert!(a.c().max_abs_diff(b.c()) < 1e-12 && a.d().max_abs_diff(b.d()) < 1e-12, "n = {n}");
    }
}

#[test]
fn flipping_the_sign_of_the_y_bracket_loses_constancy() {
    for n in 2..=4 {
        let alg = HermitianLieAlgebra::from_real(&mixed_sign_example_real(n), DEFAULT_TOL).unwrap();
        let v = constant_h_detect(&levi_civita_from_chern(&alg).curv4(), DEFAULT_TOL);
        assert!(matches!(v, HVerdict::NotConstant { .. }), "n = {n}: {v:?}");
        let t = alg.ad_traces()[0];
        assert!((t + (2 * n - 3) as f64 * std::f64::consts::SQRT_2).abs() < 1e-12, "n = {n}: {t}");
    }
}
