use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::almost_abelian::FamilyClass;
use crate::algebra::HermitianLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{takagi_with_tol, CMat, CTensor3};

/// Algebra with a `J`-invariant abelian ideal of codimension 2, in an admissible frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Codim2Params {
    pub n: usize,
    pub lambda: f64,
    pub v: Vec<Complex64>,
    pub x: CMat,
    pub y: CMat,
    pub z: CMat,
}

/// `(‖λ(X*+Y) + [X*,Y] - Z Z̄‖, ‖λZ - (Z Xᵗ + Y Z)‖)`, max norms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintResidual {
    pub first: f64,
    pub second: f64,
}

impl Codim2Params {
    pub fn check_shapes(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Dimension(format!("codimension-2 family needs n >= 2, got {}", self.n)));
        }
        let m = self.n - 1;
        for (name, mat) in [("X", &self.x), ("Y", &self.y), ("Z", &self.z)] {
            if mat.shape() != (m, m) {
                return Err(Error::Dimension(format!("{name} must be {m}x{m}, got {:?}", mat.shape())));
            }
        }
        if self.v.len() != m {
            return Err(Error::Dimension(format!("v must have length {m}, got {}", self.v.len())));
        }
        if !self.lambda.is_finite() || self.v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numeric("non-finite parameter".into()));
        }
        Ok(())
    }

    pub fn zero(n: usize) -> Self {
        let m = n.saturating_sub(1);
        Self {
            n,
            lambda: 0.0,
            v: vec![Complex64::new(0.0, 0.0); m],
            x: CMat::zeros(m.max(1), m.max(1)),
            y: CMat::zeros(m.max(1), m.max(1)),
            z: CMat::zeros(m.max(1), m.max(1)),
        }
    }

    pub fn scale(&self) -> f64 {
        let mats = self.x.max_abs().max(self.y.max_abs()).max(self.z.max_abs());
        self.v.iter().fold(self.lambda.abs().max(mats), |m, z| m.max(z.norm()))
    }

    pub fn constraint_residual(&self) -> ConstraintResidual {
        let xs = self.x.adjoint();
        let first = &(&(&xs + &self.y).scale_re(self.lambda) + &(&(&xs * &self.y) - &(&self.y * &xs)))
            - &(&self.z * &self.z.conj());
        let second = &self.z.scale_re(self.lambda) - &(&(&self.z * &self.x.transpose()) + &(&self.y * &self.z));
        ConstraintResidual { first: first.max_abs(), second: second.max_abs() }
    }

    /// Bound applied to the constraint residuals: `10 tol (1 + ‖X‖ + ‖Y‖ + ‖Z‖)` (Frobenius).
    pub fn constraint_bound(&self, tol: f64) -> f64 {
        10.0 * tol * (1.0 + self.x.frob_norm() + self.y.frob_norm() + self.z.frob_norm())
    }

    /// `B = Y - X`.
    pub fn b(&self) -> CMat {
        &self.y - &self.x
    }

    /// `λ + tr(Y - X)`.
    pub fn unimodular_defect(&self) -> Complex64 {
        self.lambda + self.b().trace().expect("square")
    }

    /// Parameters in the frame `e_1, e'_a = Σ_b U_ab e_{b}` with `U` unitary on `e_2..e_n`.
    pub fn change_frame(&self, u: &CMat) -> Result<Self> {
        self.check_shapes()?;
        let m = self.n - 1;
        if u.shape() != (m, m) {
            return Err(Error::Dimension(format!("frame change must be {m}x{m}")));
        }
        let us = u.adjoint();
        Ok(Self {
            n: self.n,
            lambda: self.lambda,
            v: u.matvec(&self.v)?,
            x: &(u * &self.x) * &us,
            y: &(u * &self.y) * &us,
            z: &(u * &self.z) * &u.transpose(),
        })
    }

    /// `e_1 -> -e_1`, which negates `λ, X, Y, Z` and keeps `v`.
    pub fn flip_e1(&self) -> Self {
        Self { n: self.n, lambda: -self.lambda, v: self.v.clone(), x: -&self.x, y: -&self.y, z: -&self.z }
    }
}

/// Builds the algebra after checking the codimension-2 constraints against
/// [`Codim2Params::constraint_bound`].
pub fn build_codim2(p: &Codim2Params, tol: f64) -> Result<HermitianLieAlgebra> {
    p.check_shapes()?;
    let res = p.constraint_residual();
    let bound = p.constraint_bound(tol);
    if res.first > bound || res.second > bound {
        return Err(Error::Constraint { first: res.first, second: res.second, tol: bound });
    }
    let n = p.n;
    let mut c = CTensor3::zeros(n);
    let mut d = CTensor3::zeros(n);
    d[(0, 0, 0)] = Complex64::new(p.lambda, 0.0);
    for i in 1..n {
        d[(0, i, 0)] = p.v[i - 1];
        for j in 1..n {
            c[(j, 0, i)] = p.x[(i - 1, j - 1)];
            c[(j, i, 0)] = -p.x[(i - 1, j - 1)];
            d[(j, i, 0)] = p.y[(i - 1, j - 1)];
            d[(0, i, j)] = p.z[(i - 1, j - 1)];
        }
    }
    HermitianLieAlgebra::new(n, c, d, tol)
}

pub fn codim2_classify(p: &Codim2Params, tol: f64) -> FamilyClass {
    let s = 1.0 + p.scale();
    let lin = tol * s;
    let v_max = p.v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let ys = p.y.adjoint();
    let yy = (&(&p.y * &ys) - &(&ys * &p.y)).max_abs();
    let xs = p.x.adjoint();
    let yx = (&(&p.y * &xs) - &(&xs * &p.y)).max_abs();
    FamilyClass {
        unimodular: p.unimodular_defect().norm() <= lin,
        kahler: v_max <= lin && (&p.z - &p.z.transpose()).max_abs() <= lin && (&p.x - &p.y).max_abs() <= lin,
        chern_flat: p.lambda.abs() <= lin && v_max <= lin && p.z.max_abs() <= lin && yy <= lin * s && yx <= lin * s,
    }
}

/// Closed-form torsion, Chern and Levi-Civita values in an admissible frame.
///
/// Matrices are indexed from `e_2`: entry `[i][k]` refers to `e_{i+2}, e_{k+2}`.
#[derive(Clone, Debug)]
pub struct Codim2ClosedForms {
    /// `T^1_{1i} = v_i`.
    pub t_1_1i: Vec<Complex64>,
    /// `[i][j] = T^1_{ij} = Z_ji - Z_ij`.
    pub t_1_ij: CMat,
    /// `[i][j] = T^j_{1i} = B_ij`.
    pub t_j_1i: CMat,
    pub r_1111: f64,
    /// `R_{i ī i ī} = |Z_ii|^2`.
    pub r_iiii: Vec<f64>,
    /// `[i][k] = R̂_{i ī k k̄} = |Z_ik + Z_ki|^2 / 4`.
    pub rhat_iikk: CMat,
    /// `[i][j] = R̂_{1 1̄ i j̄}`.
    pub rhat_11ij: CMat,
    pub rhat_11ii_sum: f64,
    pub lc_1111: f64,
    /// `R^r_{i ī i ī} = |Z_ii|^2 - |B_ii|^2 / 2`.
    pub lc_iiii: Vec<f64>,
    /// `[i][k] = R̂^r_{i ī k k̄}` for `i != k`, valid in any admissible frame:
    /// `|Z_ik + Z_ki|^2 / 4 - (|B_ik|^2 + |B_ki|^2 + 2 Re(B_ii conj(B_kk))) / 8`.
    pub lc_hat_iikk: CMat,
    pub lc_hat_11ii_sum: f64,
    /// `tr(Z Z̄) - λ tr(X* + Y)`.
    pub trace_residual: Complex64,
}

pub fn codim2_closed_forms(p: &Codim2Params) -> Result<Codim2ClosedForms> {
    p.check_shapes()?;
    let m = p.n - 1;
    let lam = p.lambda;
    let (x, y, z) = (&p.x, &p.y, &p.z);
    let b = p.b();
    let ys = y.adjoint();
    let zbar = z.conj();
    let zt = z.transpose();
    let v2: f64 = p.v.iter().map(|c| c.norm_sqr()).sum();
    let z2 = z.frob_norm().powi(2);
    let b2 = b.frob_norm().powi(2);
    let tr_zzbar = (z * &zbar).trace()?;
    let tr_y_ys = (y + &ys).trace()?.re;

    let v_col = CMat::from_fn(m, 1, |i, _| p.v[i]);
    let rhat_11ij = (&(&(&(&(&v_col * &v_col.adjoint()) + &(&(y * &ys) - &(&ys * y))) - &(y + &ys).scale_re(lam))
        - &(z * &zbar))
        - &(&(&zt * &z.adjoint()) + &(&zt * &zbar)))
        .scale_re(0.25);
    let chern_sum = 0.25 * (v2 - lam * tr_y_ys - 2.0 * tr_zzbar.re - z2);
    let skew2 = (&zt - z).frob_norm().powi(2);

    Ok(Codim2ClosedForms {
        t_1_1i: p.v.clone(),
        t_1_ij: &zt - z,
        t_j_1i: b.clone(),
        r_1111: -2.0 * lam * lam - v2,
        r_iiii: (0..m).map(|i| z[(i, i)].norm_sqr()).collect(),
        rhat_iikk: CMat::from_fn(m, m, |i, k| Complex64::new(0.25 * (z[(i, k)] + z[(k, i)]).norm_sqr(), 0.0)),
        rhat_11ij,
        rhat_11ii_sum: chern_sum,
        lc_1111: -2.0 * lam * lam - 1.5 * v2,
        lc_iiii: (0..m).map(|i| z[(i, i)].norm_sqr() - 0.5 * b[(i, i)].norm_sqr()).collect(),
        lc_hat_iikk: CMat::from_fn(m, m, |i, k| {
            let sym = 0.25 * (z[(i, k)] + z[(k, i)]).norm_sqr();
            let corr = b[(i, k)].norm_sqr() + b[(k, i)].norm_sqr() + 2.0 * (b[(i, i)] * b[(k, k)].conj()).re;
            Complex64::new(sym - 0.125 * corr, 0.0)
        }),
        lc_hat_11ii_sum: chern_sum - 0.125 * (v2 + b2 + skew2),
        trace_residual: tr_zzbar - lam * (&x.adjoint() + y).trace()?,
    })
}

/// `R̂^r_{i ī k k̄} = -(|B_ik|^2 + |B_ki|^2 + 2 Re(B_ii conj(B_kk))) / 8` for `i != k`,
/// which presumes `Zᵗ + Z` diagonal.
pub fn codim2_lc_hat_iikk_normalized(p: &Codim2Params, tol: f64) -> Result<CMat> {
    p.check_shapes()?;
    let sym = &p.z + &p.z.transpose();
    let off = sym.max_offdiag();
    if off > tol * (1.0 + sym.max_abs()) {
        return Err(Error::Precondition(format!(
            "Z^t + Z must be diagonal (largest off-diagonal entry {off:.3e}); normalize the frame first"
        )));
    }
    let b = p.b();
    let m = p.n - 1;
    Ok(CMat::from_fn(m, m, |i, k| {
        if i == k {
            return Complex64::new(0.0, 0.0);
        }
        let corr = b[(i, k)].norm_sqr() + b[(k, i)].norm_sqr() + 2.0 * (b[(i, i)] * b[(k, k)].conj()).re;
        Complex64::new(-0.125 * corr, 0.0)
    }))
}

/// Moves to an admissible frame with `λ >= 0` and `Zᵗ + Z` diagonal, nonnegative.
///
/// Returns the new parameters and the unitary `F` (acting on `e_1..e_n`) with
/// `build_codim2(p).change_frame(F) == build_codim2(normalized)`.
pub fn admissible_normalize(p: &Codim2Params, tol: f64) -> Result<(Codim2Params, CMat)> {
    p.check_shapes()?;
    let n = p.n;
    let flip = p.lambda < 0.0 && p.lambda.abs() > tol;
    let base = if flip { p.flip_e1() } else { p.clone() };
    let sym = &base.z + &base.z.transpose();
    let tk = takagi_with_tol(&sym, tol)?;
    let out = base.change_frame(&tk.u)?;
    let sign = if flip { -1.0 } else { 1.0 };
    let frame = CMat::from_fn(n, n, |a, b| match (a, b) {
        (0, 0) => Complex64::new(sign, 0.0),
        (0, _) | (_, 0) => Complex64::new(0.0, 0.0),
        _ => tk.u[(a - 1, b - 1)],
    });
    Ok((out, frame))
}
