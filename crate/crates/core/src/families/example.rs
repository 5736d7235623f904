use num_complex::Complex64;

use super::almost_abelian::{build_almost_abelian, AlmostAbelianParams};
use crate::algebra::{HermitianLieAlgebra, RealLieData};
use crate::error::{Error, Result};
use crate::linalg::CMat;

/// `λ = 1`, `v = 0`, `A = I_{n-1}`.
pub fn hyperbolic_example_params(n: usize) -> Result<AlmostAbelianParams> {
    if n < 2 {
        return Err(Error::Usage(format!("the example needs n >= 2, got {n}")));
    }
    Ok(AlmostAbelianParams { n, lambda: 1.0, v: vec![Complex64::new(0.0, 0.0); n - 1], a: CMat::identity(n - 1) })
}

/// Non-unimodular almost abelian algebra whose Levi-Civita holomorphic sectional
/// curvature is the constant `-2`.
pub fn hyperbolic_example(n: usize) -> Result<HermitianLieAlgebra> {
    build_almost_abelian(&hyperbolic_example_params(n)?)
}

/// Real presentation of [`hyperbolic_example`] on the orthonormal basis `X, Y, Z_3, .., Z_{2n}`:
/// `ad_X = -√2` on the ideal spanned by `Y, Z_*`, with `J X = Y`, `J Z_{2i-1} = Z_{2i}`.
///
/// # Panics
/// If `n < 2`.
pub fn hyperbolic_example_real(n: usize) -> RealLieData {
    real_presentation(n, -1.0)
}

/// The same presentation with `[X, Y] = +√2 Y`. Its constants are `λ = -1`, `A = I`;
/// Levi-Civita holomorphic sectional curvature is not constant and `tr ad_X = -(2n-3)√2`.
///
/// # Panics
/// If `n < 2`.
pub fn mixed_sign_example_real(n: usize) -> RealLieData {
    real_presentation(n, 1.0)
}

fn real_presentation(n: usize, y_sign: f64) -> RealLieData {
    assert!(n >= 2, "the example needs n >= 2");
    let m = 2 * n;
    let s = std::f64::consts::SQRT_2;
    let mut f = vec![0.0; m * m * m];
    let mut set = |c: usize, a: usize, b: usize, val: f64| {
        f[(c * m + a) * m + b] = val;
        f[(c * m + b) * m + a] = -val;
    };
    set(1, 0, 1, y_sign * s);
    for k in 2..m {
        set(k, 0, k, -s);
    }
    let mut j = vec![0.0; m * m];
    for p in 0..n {
        j[(2 * p + 1) * m + 2 * p] = 1.0;
        j[(2 * p) * m + 2 * p + 1] = -1.0;
    }
    let g = (0..m * m).map(|t| if t / m == t % m { 1.0 } else { 0.0 }).collect();
    RealLieData { dim: m, f, j, g }
}
