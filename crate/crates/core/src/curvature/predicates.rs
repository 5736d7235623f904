use serde::{Deserialize, Serialize};

use super::chern::chern_curvature;
use super::connection::chern_torsion;
use super::levi_civita::levi_civita_koszul;
use crate::algebra::HermitianLieAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Predicates {
    pub is_kahler: bool,
    pub is_chern_flat: bool,
    pub is_lc_flat: bool,
    pub torsion_norm: f64,
    pub chern_norm: f64,
    pub lc_norm: f64,
}

/// Kähler (`T = 0`), Chern-flat (`R = 0`) and Levi-Civita-flat (full real tensor zero).
///
/// Torsion is compared with `tol (1 + s)` and curvature with `tol (1 + s)^2`, where `s`
/// is the largest structure constant.
pub fn predicates(alg: &HermitianLieAlgebra) -> Predicates {
    let s = 1.0 + alg.scale();
    let tol = alg.tol();
    let torsion_norm = chern_torsion(alg).t.max_abs();
    let chern_norm = chern_curvature(alg).r.max_abs();
    let lc_norm = levi_civita_koszul(alg).max_abs();
    Predicates {
        is_kahler: torsion_norm <= tol * s,
        is_chern_flat: chern_norm <= tol * s * s,
        is_lc_flat: lc_norm <= tol * s * s,
        torsion_norm,
        chern_norm,
        lc_norm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_almost_abelian, hyperbolic_example, AlmostAbelianParams};
    use crate::linalg::CMat;
    use num_complex::Complex64;

    #[test]
    fn abelian_is_everything() {
        let p = predicates(&HermitianLieAlgebra::abelian(2, 1e-9));
        assert!(p.is_kahler && p.is_chern_flat && p.is_lc_flat);
    }

    #[test]
    fn example_is_not_kahler() {
        let p = predicates(&hyperbolic_example(2).unwrap());
        assert!(!p.is_kahler && !p.is_chern_flat && !p.is_lc_flat);
        assert!((p.torsion_norm - 2.0).abs() < 1e-14);
    }

    #[test]
    fn normal_a_is_chern_flat() {
        let a = CMat::from_diag(&[Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)]);
        let alg =
            build_almost_abelian(&AlmostAbelianParams { n: 3, lambda: 0.0, v: vec![Complex64::new(0.0, 0.0); 2], a })
                .unwrap();
        let p = predicates(&alg);
        assert!(p.is_chern_flat && !p.is_kahler);
    }
}
