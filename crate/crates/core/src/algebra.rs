//! Lie algebras with a Hermitian structure, stored as complex structure constants
//! `(C, D)` in a unitary frame `e_1..e_n` of the (1,0) part.
//!
//! Vectors of the complexification are written in the basis `(e_1..e_n, ē_1..ē_n)`.
//! The metric is extended complex-bilinearly, so `<e_i, ē_j> = δ_ij` and
//! `<e_i, e_j> = 0`. The real orthonormal basis used for real data is
//! `x_{2k} = (e_k + ē_k)/√2`, `x_{2k+1} = i(e_k - ē_k)/√2`, with `J x_{2k} = x_{2k+1}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{unitary_residual, CMat, CTensor3};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Max-norm residuals of the three quadratic systems equivalent to the Jacobi identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobiResidual {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl JacobiResidual {
    pub fn max(&self) -> f64 {
        self.r1.max(self.r2).max(self.r3)
    }
}

#[derive(Clone, Debug)]
pub struct HermitianLieAlgebra {
    n: usize,
    c: CTensor3,
    d: CTensor3,
    tol: f64,
    /// `table[(a * 2n + b) * 2n + c]`: coefficient of basis vector `c` in `[b_a, b_b]`.
    table: Vec<Complex64>,
}

impl HermitianLieAlgebra {
    /// Validates antisymmetry of `C` (exactly, as stored) and the Jacobi identity
    /// (relative to `1 + ‖C‖ + ‖D‖`).
    pub fn new(n: usize, c: CTensor3, d: CTensor3, tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("complex dimension must be at least 1".into()));
        }
        if c.n() != n || d.n() != n {
            return Err(Error::Dimension(format!("structure constants have sizes ({}, {}) for n = {n}", c.n(), d.n())));
        }
        for j in 0..n {
            for i in 0..n {
                for k in i..n {
                    if c[(j, i, k)] != -c[(j, k, i)] {
                        return Err(Error::Structure(format!(
                            "C is not antisymmetric at (j, i, k) = ({}, {}, {}): C^j_ik = {}, C^j_ki = {}",
                            j + 1,
                            i + 1,
                            k + 1,
                            c[(j, i, k)],
                            c[(j, k, i)]
                        )));
                    }
                }
            }
        }
        let table = build_table(n, &c, &d);
        let alg = Self { n, c, d, tol, table };
        let res = alg.jacobi_residual();
        let bound = tol * (1.0 + alg.c.max_abs() + alg.d.max_abs());
        if res.max() > bound {
            return Err(Error::Jacobi { r1: res.r1, r2: res.r2, r3: res.r3, tol: bound });
        }
        Ok(alg)
    }

    pub fn abelian(n: usize, tol: f64) -> Self {
        Self::new(n, CTensor3::zeros(n), CTensor3::zeros(n), tol).expect("abelian algebra is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C^j_ik`, indexed `[j][i][k]`.
    pub fn c(&self) -> &CTensor3 {
        &self.c
    }

    /// `D^j_ik`, indexed `[j][i][k]`.
    pub fn d(&self) -> &CTensor3 {
        &self.d
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Largest structure constant modulus; curvature tolerances scale with its square.
    pub fn scale(&self) -> f64 {
        self.c.max_abs().max(self.d.max_abs())
    }

    /// Coordinates of `[b_a, b_b]` for basis vectors of `(e, ē)`.
    pub fn basis_bracket(&self, a: usize, b: usize) -> &[Complex64] {
        let m = 2 * self.n;
        &self.table[(a * m + b) * m..(a * m + b + 1) * m]
    }

    /// Complex-bilinear bracket on the complexification.
    pub fn bracket(&self, u: &[Complex64], w: &[Complex64]) -> Vec<Complex64> {
        let m = 2 * self.n;
        assert!(u.len() == m && w.len() == m, "bracket needs vectors of length {m}");
        let mut out = vec![ZERO; m];
        for (a, &ua) in u.iter().enumerate() {
            if ua == ZERO {
                continue;
            }
            for (b, &wb) in w.iter().enumerate() {
                if wb == ZERO {
                    continue;
                }
                let coeff = ua * wb;
                for (o, t) in out.iter_mut().zip(self.basis_bracket(a, b)) {
                    *o += coeff * t;
                }
            }
        }
        out
    }

    /// Residuals of the three systems relating `C` and `D` that encode Jacobi.
    pub fn jacobi_residual(&self) -> JacobiResidual {
        let n = self.n;
        let (c, d) = (&self.c, &self.d);
        let (mut r1, mut r2, mut r3) = (0.0f64, 0.0f64, 0.0f64);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let (mut s1, mut s2, mut s3) = (ZERO, ZERO, ZERO);
                        for s in 0..n {
                            s1 +=
                                c[(s, i, j)] * c[(l, s, k)] + c[(s, j, k)] * c[(l, s, i)] + c[(s, k, i)] * c[(l, s, j)];
                            s2 +=
                                c[(s, i, k)] * d[(l, j, s)] + d[(s, j, i)] * d[(l, s, k)] - d[(s, j, k)] * d[(l, s, i)];
                            s3 += c[(s, i, k)] * d[(s, j, l)].conj() - c[(j, s, k)] * d[(i, s, l)].conj()
                                + c[(j, s, i)] * d[(k, s, l)].conj()
                                - d[(l, s, i)] * d[(k, j, s)].conj()
                                + d[(l, s, k)] * d[(i, j, s)].conj();
                        }
                        r1 = r1.max(s1.norm());
                        r2 = r2.max(s2.norm());
                        r3 = r3.max(s3.norm());
                    }
                }
            }
        }
        JacobiResidual { r1, r2, r3 }
    }

    /// Jacobi identity evaluated directly on the complexified bracket over all basis triples.
    pub fn bracket_jacobi_residual(&self) -> f64 {
        let m = 2 * self.n;
        let mut worst = 0.0f64;
        for a in 0..m {
            for b in 0..m {
                let ab = self.basis_bracket(a, b).to_vec();
                for c in 0..m {
                    let bc = self.basis_bracket(b, c).to_vec();
                    let ca = self.basis_bracket(c, a).to_vec();
                    let mut e = vec![ZERO; m];
                    for t in 0..m {
                        for (o, (x, (y, z))) in e.iter_mut().zip(
                            self.basis_bracket(t, c)
                                .iter()
                                .zip(self.basis_bracket(t, a).iter().zip(self.basis_bracket(t, b))),
                        ) {
                            *o += ab[t] * x + bc[t] * y + ca[t] * z;
                        }
                    }
                    worst = worst.max(e.iter().map(|z| z.norm()).fold(0.0, f64::max));
                }
            }
        }
        worst
    }

    /// Traces of `ad_x` over the real orthonormal basis `x_0..x_{2n-1}`.
    pub fn ad_traces(&self) -> Vec<f64> {
        let m = 2 * self.n;
        let complex: Vec<Complex64> = (0..m).map(|a| (0..m).map(|b| self.basis_bracket(a, b)[b]).sum()).collect();
        let mut out = Vec::with_capacity(m);
        for k in 0..self.n {
            let (te, tb) = (complex[k], complex[self.n + k]);
            out.push(((te + tb) * FRAC_1_SQRT_2).re);
            out.push((I * (te - tb) * FRAC_1_SQRT_2).re);
        }
        out
    }

    /// `(tr ad ≡ 0 within tolerance, max |tr ad_x|)` over the real orthonormal basis.
    pub fn is_unimodular(&self) -> (bool, f64) {
        let worst = self.ad_traces().iter().fold(0.0f64, |m, t| m.max(t.abs()));
        (worst <= self.tol * (1.0 + self.scale()), worst)
    }

    /// Constants of the frame `e'_a = Σ_b U_ab e_b`.
    pub fn change_frame(&self, u: &CMat) -> Result<Self> {
        let n = self.n;
        if u.shape() != (n, n) {
            return Err(Error::Precondition(format!("frame change must be {n}x{n}, got {:?}", u.shape())));
        }
        let res = unitary_residual(u);
        if res > self.tol * (1.0 + n as f64) {
            return Err(Error::Precondition(format!("frame change is not unitary (residual {res:.3e})")));
        }
        let c = transform(&self.c, u);
        let d = transform(&self.d, u);
        Self::new(n, antisymmetrize(&c), d, self.tol)
    }

    /// Real structure constants `f[c][a][b]` with `[x_a, x_b] = Σ_c f^c_ab x_c`.
    pub fn real_structure_constants(&self) -> Vec<f64> {
        let m = 2 * self.n;
        let basis: Vec<Vec<Complex64>> = (0..m).map(|a| real_basis_vector(self.n, a)).collect();
        let mut f = vec![0.0; m * m * m];
        for a in 0..m {
            for b in 0..m {
                let r = complex_to_real(self.n, &self.bracket(&basis[a], &basis[b]));
                for (c, v) in r.iter().enumerate() {
                    f[(c * m + a) * m + b] = *v;
                }
            }
        }
        f
    }

    /// Real presentation on the orthonormal basis `x_*`, with the standard `J` and `G = I`.
    pub fn to_real(&self) -> RealLieData {
        let m = 2 * self.n;
        let mut j = vec![0.0; m * m];
        for k in 0..self.n {
            // J x_{2k} = x_{2k+1}, J x_{2k+1} = -x_{2k}; columns are images
            j[(2 * k + 1) * m + 2 * k] = 1.0;
            j[(2 * k) * m + 2 * k + 1] = -1.0;
        }
        let mut g = vec![0.0; m * m];
        for a in 0..m {
            g[a * m + a] = 1.0;
        }
        RealLieData { dim: m, f: self.real_structure_constants(), j, g }
    }

    /// Ingests real structure data: builds a `G`-orthonormal `J`-adapted basis by
    /// Gram–Schmidt, forms `e_k = (p_k - i J p_k)/√2` and reads off `(C, D)`.
    pub fn from_real(data: &RealLieData, tol: f64) -> Result<Self> {
        data.validate(tol)?;
        let m = data.dim;
        let n = m / 2;
        let nij = data.nijenhuis_residual();
        let f_scale = data.f.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        if nij > tol * (1.0 + f_scale) * 4.0 {
            return Err(Error::NotIntegrable { residual: nij });
        }

        let mut frame: Vec<Vec<f64>> = Vec::with_capacity(n);
        for s in 0..m {
            if frame.len() == n {
                break;
            }
            let mut v = vec![0.0; m];
            v[s] = 1.0;
            for p in &frame {
                let jp = data.apply_j(p);
                let a = data.inner(&v, p);
                let b = data.inner(&v, &jp);
                for t in 0..m {
                    v[t] -= a * p[t] + b * jp[t];
                }
            }
            let norm = data.inner(&v, &v).sqrt();
            if norm > 1e-8 {
                v.iter_mut().for_each(|x| *x /= norm);
                frame.push(v);
            }
        }
        if frame.len() != n {
            return Err(Error::Numeric("could not build a J-adapted orthonormal basis".into()));
        }

        let e: Vec<Vec<Complex64>> = frame
            .iter()
            .map(|p| {
                let jp = data.apply_j(p);
                p.iter().zip(&jp).map(|(&a, &b)| Complex64::new(a, -b) * FRAC_1_SQRT_2).collect()
            })
            .collect();
        let e_bar: Vec<Vec<Complex64>> = e.iter().map(|v| v.iter().map(|z| z.conj()).collect()).collect();

        let c = CTensor3::from_fn(n, |j, i, k| data.pairing(&data.bracket(&e[i], &e[k]), &e_bar[j]));
        let d = CTensor3::from_fn(n, |j, i, k| data.pairing(&data.bracket(&e_bar[j], &e[k]), &e[i]));
        Self::new(n, antisymmetrize(&c), d, tol)
    }
}

fn build_table(n: usize, c: &CTensor3, d: &CTensor3) -> Vec<Complex64> {
    let m = 2 * n;
    let mut t = vec![ZERO; m * m * m];
    let idx = |a: usize, b: usize, c: usize| (a * m + b) * m + c;
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                // [e_i, e_k] = Σ_j C^j_ik e_j and its conjugate
                t[idx(i, k, j)] = c[(j, i, k)];
                t[idx(n + i, n + k, n + j)] = c[(j, i, k)].conj();
                // [e_i, ē_j] = Σ_k conj(D^i_kj) e_k - D^j_ki ē_k
                t[idx(i, n + j, k)] = d[(i, k, j)].conj();
                t[idx(i, n + j, n + k)] = -d[(j, k, i)];
                t[idx(n + j, i, k)] = -d[(i, k, j)].conj();
                t[idx(n + j, i, n + k)] = d[(j, k, i)];
            }
        }
    }
    t
}

/// `T'^j_ik = Σ U_ia U_kb conj(U_jc) T^c_ab`, the law shared by `C` and `D`.
fn transform(t: &CTensor3, u: &CMat) -> CTensor3 {
    let n = t.n();
    // contract one index at a time
    let s1 = CTensor3::from_fn(n, |c, i, b| (0..n).map(|a| u[(i, a)] * t[(c, a, b)]).sum());
    let s2 = CTensor3::from_fn(n, |c, i, k| (0..n).map(|b| u[(k, b)] * s1[(c, i, b)]).sum());
    CTensor3::from_fn(n, |j, i, k| (0..n).map(|c| u[(j, c)].conj() * s2[(c, i, k)]).sum())
}

/// Exact antisymmetrization in the two lower indices.
fn antisymmetrize(c: &CTensor3) -> CTensor3 {
    let n = c.n();
    let mut out = CTensor3::zeros(n);
    for j in 0..n {
        for i in 0..n {
            for k in (i + 1)..n {
                let v = (c[(j, i, k)] - c[(j, k, i)]) * 0.5;
                out[(j, i, k)] = v;
                out[(j, k, i)] = -v;
            }
        }
    }
    out
}

/// `x_a` written in the `(e, ē)` basis.
pub fn real_basis_vector(n: usize, a: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; 2 * n];
    let k = a / 2;
    if a.is_multiple_of(2) {
        v[k] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        v[n + k] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    } else {
        v[k] = I * FRAC_1_SQRT_2;
        v[n + k] = -I * FRAC_1_SQRT_2;
    }
    v
}

/// Real coordinates on `x_*` of a vector given in the `(e, ē)` basis (real part taken).
pub fn complex_to_real(n: usize, v: &[Complex64]) -> Vec<f64> {
    let mut r = vec![0.0; 2 * n];
    for k in 0..n {
        let (alpha, beta) = (v[k], v[n + k]);
        r[2 * k] = ((alpha + beta) * FRAC_1_SQRT_2).re;
        r[2 * k + 1] = (I * (beta - alpha) * FRAC_1_SQRT_2).re;
    }
    r
}

/// Real Lie algebra with an almost complex structure and inner product.
///
/// `f[c][a][b]` are the structure constants; `j` and `g` are `dim x dim` row-major,
/// with `J` acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealLieData {
    pub dim: usize,
    pub f: Vec<f64>,
    pub j: Vec<f64>,
    pub g: Vec<f64>,
}

impl RealLieData {
    pub fn validate(&self, tol: f64) -> Result<()> {
        let m = self.dim;
        if m == 0 || !m.is_multiple_of(2) {
            return Err(Error::Dimension(format!("real dimension must be even and positive, got {m}")));
        }
        if self.f.len() != m * m * m || self.j.len() != m * m || self.g.len() != m * m {
            return Err(Error::Dimension("array sizes do not match the dimension".into()));
        }
        if self.f.iter().chain(&self.j).chain(&self.g).any(|x| !x.is_finite()) {
            return Err(Error::Numeric("non-finite entry in real data".into()));
        }
        for c in 0..m {
            for a in 0..m {
                for b in a..m {
                    if (self.f[(c * m + a) * m + b] + self.f[(c * m + b) * m + a]).abs() > tol {
                        return Err(Error::Structure(format!("f is not antisymmetric at (c, a, b) = ({c}, {a}, {b})")));
                    }
                }
            }
        }
        let gm = nalgebra::DMatrix::from_row_slice(m, m, &self.g);
        if (&gm - gm.transpose()).amax() > tol {
            return Err(Error::Structure("G is not symmetric".into()));
        }
        if gm.clone().cholesky().is_none() {
            return Err(Error::Structure("G is not positive definite".into()));
        }
        let jm = nalgebra::DMatrix::from_row_slice(m, m, &self.j);
        let id = nalgebra::DMatrix::<f64>::identity(m, m);
        let scale = 1.0 + jm.amax() * jm.amax();
        if (&jm * &jm + &id).amax() > tol * scale {
            return Err(Error::Structure("J^2 != -I".into()));
        }
        if (jm.transpose() * &gm * &jm - &gm).amax() > tol * scale * (1.0 + gm.amax()) {
            return Err(Error::Structure("J is not compatible with G".into()));
        }
        Ok(())
    }

    fn apply_j(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim;
        (0..m).map(|a| (0..m).map(|b| self.j[a * m + b] * x[b]).sum()).collect()
    }

    fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        let m = self.dim;
        (0..m).map(|a| (0..m).map(|b| x[a] * self.g[a * m + b] * y[b]).sum::<f64>()).sum()
    }

    /// Complex-bilinear extension of `G`.
    fn pairing(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        let m = self.dim;
        let mut s = ZERO;
        for (xa, row) in x.iter().zip(self.g.chunks(m)) {
            for (yb, g) in y.iter().zip(row) {
                s += xa * yb * g;
            }
        }
        s
    }

    /// Complex-bilinear extension of the real bracket.
    pub fn bracket<T>(&self, x: &[T], y: &[T]) -> Vec<T>
    where
        T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Mul<Output = T> + std::ops::AddAssign + Default,
    {
        let m = self.dim;
        let mut out = vec![T::default(); m];
        for (a, &xa) in x.iter().enumerate().take(m) {
            for (b, &yb) in y.iter().enumerate().take(m) {
                let xy = xa * yb;
                for (c, o) in out.iter_mut().enumerate() {
                    let f = self.f[(c * m + a) * m + b];
                    if f != 0.0 {
                        *o += xy * f;
                    }
                }
            }
        }
        out
    }

    /// Max over basis pairs of `|[x,y] - [Jx,Jy] + J[Jx,y] + J[x,Jy]|`.
    pub fn nijenhuis_residual(&self) -> f64 {
        let m = self.dim;
        let mut worst = 0.0f64;
        for a in 0..m {
            for b in 0..m {
                let mut x = vec![0.0; m];
                let mut y = vec![0.0; m];
                x[a] = 1.0;
                y[b] = 1.0;
                let (jx, jy) = (self.apply_j(&x), self.apply_j(&y));
                let t1 = self.bracket(&x, &y);
                let t2 = self.bracket(&jx, &jy);
                let t3 = self.apply_j(&self.bracket(&jx, &y));
                let t4 = self.apply_j(&self.bracket(&x, &jy));
                for c in 0..m {
                    worst = worst.max((t1[c] - t2[c] + t3[c] + t4[c]).abs());
                }
            }
        }
        worst
    }
}
