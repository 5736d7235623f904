use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::HermitianLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{CMat, CTensor3};
use crate::DEFAULT_TOL;

/// Almost abelian algebra in an admissible frame: `e_2..e_n` span the (1,0) part of the
/// codimension-one abelian ideal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlmostAbelianParams {
    pub n: usize,
    pub lambda: f64,
    /// Length `n - 1`; `v[i]` belongs to `e_{i+2}`.
    pub v: Vec<Complex64>,
    /// `(n-1) x (n-1)`.
    pub a: CMat,
}

impl AlmostAbelianParams {
    pub fn check_shapes(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Dimension(format!("almost abelian family needs n >= 2, got {}", self.n)));
        }
        let m = self.n - 1;
        if self.v.len() != m || self.a.shape() != (m, m) {
            return Err(Error::Dimension(format!(
                "expected v of length {m} and A of shape {m}x{m}, got {} and {:?}",
                self.v.len(),
                self.a.shape()
            )));
        }
        if !self.lambda.is_finite() || self.v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numeric("non-finite parameter".into()));
        }
        Ok(())
    }

    /// Largest parameter modulus.
    pub fn scale(&self) -> f64 {
        self.v.iter().fold(self.lambda.abs().max(self.a.max_abs()), |m, z| m.max(z.norm()))
    }

    /// `λ + tr A + conj(tr A)`.
    pub fn unimodular_defect(&self) -> f64 {
        self.lambda + 2.0 * self.a.trace().expect("A is square").re
    }
}

pub fn build_almost_abelian(p: &AlmostAbelianParams) -> Result<HermitianLieAlgebra> {
    build_almost_abelian_with_tol(p, DEFAULT_TOL)
}

pub fn build_almost_abelian_with_tol(p: &AlmostAbelianParams, tol: f64) -> Result<HermitianLieAlgebra> {
    p.check_shapes()?;
    let n = p.n;
    let mut c = CTensor3::zeros(n);
    let mut d = CTensor3::zeros(n);
    d[(0, 0, 0)] = Complex64::new(p.lambda, 0.0);
    for i in 1..n {
        d[(0, i, 0)] = p.v[i - 1];
        for j in 1..n {
            d[(j, i, 0)] = p.a[(i - 1, j - 1)];
            let a_ji = p.a[(j - 1, i - 1)].conj();
            c[(j, 0, i)] = -a_ji;
            c[(j, i, 0)] = a_ji;
        }
    }
    HermitianLieAlgebra::new(n, c, d, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClass {
    pub unimodular: bool,
    pub kahler: bool,
    pub chern_flat: bool,
}

/// Unimodular / Kähler / Chern-flat from the parameters alone.
///
/// Linear conditions use `tol (1 + s)`, quadratic ones `tol (1 + s)^2`, with `s` the
/// largest parameter modulus.
pub fn aa_classify(p: &AlmostAbelianParams, tol: f64) -> FamilyClass {
    let s = 1.0 + p.scale();
    let lin = tol * s;
    let v_max = p.v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let a_star = p.a.adjoint();
    let herm = (&p.a + &a_star).max_abs();
    let comm = (&(&p.a * &a_star) - &(&a_star * &p.a)).max_abs();
    FamilyClass {
        unimodular: p.unimodular_defect().abs() <= lin,
        kahler: v_max <= lin && herm <= lin,
        chern_flat: p.lambda.abs() <= lin && v_max <= lin && comm <= lin * s,
    }
}

/// Closed-form torsion and Chern curvature in an admissible frame.
#[derive(Clone, Debug)]
pub struct AaClosedForms {
    /// `T^1_{1i}`, `i = 2..n`.
    pub t_1_1i: Vec<Complex64>,
    /// `[i][j] = T^j_{1i} = (A + A*)_ij`.
    pub t_j_1i: CMat,
    pub r_1111: f64,
    /// `R_{1 1̄ i 1̄} = -(A* v)_i`.
    pub r_11i1: Vec<Complex64>,
    /// `[i][j] = R_{1 1̄ i j̄}`.
    pub r_11ij: CMat,
}

pub fn aa_closed_forms(p: &AlmostAbelianParams) -> Result<AaClosedForms> {
    p.check_shapes()?;
    let a_star = p.a.adjoint();
    let m = p.n - 1;
    let v_col = CMat::from_fn(m, 1, |i, _| p.v[i]);
    let vv = &v_col * &v_col.adjoint();
    let comm = &(&p.a * &a_star) - &(&a_star * &p.a);
    let herm = &p.a + &a_star;
    Ok(AaClosedForms {
        t_1_1i: p.v.clone(),
        t_j_1i: herm.clone(),
        r_1111: -2.0 * p.lambda * p.lambda - p.v.iter().map(|z| z.norm_sqr()).sum::<f64>(),
        r_11i1: a_star.matvec(&p.v)?.into_iter().map(|z| -z).collect(),
        r_11ij: &(&vv + &comm) - &herm.scale_re(p.lambda),
    })
}
