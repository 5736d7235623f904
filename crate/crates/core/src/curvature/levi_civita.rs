//! Levi-Civita curvature, both from the Chern data and from the Koszul formula.

use num_complex::Complex64;

use super::chern::{chern_curvature, Curv4, CurvKind};
use super::connection::{chern_torsion, TorsionTensor};
use crate::algebra::HermitianLieAlgebra;
use crate::linalg::{CTensor3, CTensor4};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The three families of complex Levi-Civita components, each stored at `[i][j][k][l]`:
/// `R^r_{ijk l̄}`, `R^r_{i j̄ k l̄}` and `R^r_{i k j̄ l̄}`.
#[derive(Clone, Debug)]
pub struct LcBlocks {
    pub r_ijk_lbar: CTensor4,
    pub r_i_jbar_k_lbar: CTensor4,
    pub r_ik_jbar_lbar: CTensor4,
}

impl LcBlocks {
    /// The `(i, j̄, k, l̄)` block as a curvature tensor.
    pub fn curv4(&self) -> Curv4 {
        Curv4::new(CurvKind::Lc, self.r_i_jbar_k_lbar.clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.r_ijk_lbar.max_abs().max(self.r_i_jbar_k_lbar.max_abs()).max(self.r_ik_jbar_lbar.max_abs())
    }

    /// Largest entrywise difference over the three blocks.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.r_ijk_lbar
            .max_abs_diff(&other.r_ijk_lbar)
            .max(self.r_i_jbar_k_lbar.max_abs_diff(&other.r_i_jbar_k_lbar))
            .max(self.r_ik_jbar_lbar.max_abs_diff(&other.r_ik_jbar_lbar))
    }
}

pub fn levi_civita_from_chern(alg: &HermitianLieAlgebra) -> LcBlocks {
    let tor = chern_torsion(alg);
    let r = chern_curvature(alg);
    lc_blocks_from_parts(&r.r, &tor)
}

/// Levi-Civita blocks from the Chern curvature and torsion (with its derivatives).
pub fn lc_blocks_from_parts(r: &CTensor4, tor: &TorsionTensor) -> LcBlocks {
    let n = r.n();
    let t: &CTensor3 = &tor.t;
    let (td, tdb) = (&tor.td, &tor.tdbar);
    let sum = |f: &dyn Fn(usize) -> Complex64| -> Complex64 { (0..n).map(f).sum() };

    let r_ijk_lbar = CTensor4::from_fn(n, |i, j, k, l| {
        td[(l, i, j, k)] * 0.5 + sum(&|s| t[(s, j, k)] * t[(l, s, i)] - t[(s, i, k)] * t[(l, s, j)]) * 0.25
    });
    let r_i_jbar_k_lbar = CTensor4::from_fn(n, |i, j, k, l| {
        r[(i, j, k, l)]
            + (tdb[(l, i, k, j)] + tdb[(k, j, l, i)].conj()) * 0.5
            + sum(&|s| {
                t[(s, i, k)] * t[(s, j, l)].conj()
                    - t[(l, i, s)] * t[(k, j, s)].conj()
                    - t[(j, k, s)] * t[(i, l, s)].conj()
            }) * 0.25
    });
    let r_ik_jbar_lbar = CTensor4::from_fn(n, |i, j, k, l| {
        (tdb[(l, i, k, j)] - tdb[(j, i, k, l)]) * 0.5
            + sum(&|s| {
                t[(s, i, k)] * t[(s, j, l)].conj() * 2.0
                    + t[(j, i, s)] * t[(k, l, s)].conj()
                    + t[(l, k, s)] * t[(i, j, s)].conj()
                    - t[(l, i, s)] * t[(k, j, s)].conj()
                    - t[(j, k, s)] * t[(i, l, s)].conj()
            }) * 0.25
    });
    LcBlocks { r_ijk_lbar, r_i_jbar_k_lbar, r_ik_jbar_lbar }
}

/// Riemann tensor `Rm(a,b,c,d) = <R(x_a, x_b) x_c, x_d>` on an orthonormal real basis,
/// with `R(x,y) = [∇_x, ∇_y] - ∇_[x,y]`.
#[derive(Clone, Debug)]
pub struct RealCurv {
    dim: usize,
    data: Vec<f64>,
}

/// Residuals of the algebraic symmetries of a Riemann tensor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealCurvResiduals {
    pub antisym_first: f64,
    pub antisym_last: f64,
    pub pair_symmetry: f64,
    pub bianchi: f64,
}

impl RealCurvResiduals {
    pub fn max(&self) -> f64 {
        self.antisym_first.max(self.antisym_last).max(self.pair_symmetry).max(self.bianchi)
    }
}

impl RealCurv {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        let m = self.dim;
        self.data[((a * m + b) * m + c) * m + d]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn residuals(&self) -> RealCurvResiduals {
        let m = self.dim;
        let mut r = RealCurvResiduals { antisym_first: 0.0, antisym_last: 0.0, pair_symmetry: 0.0, bianchi: 0.0 };
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let v = self.get(a, b, c, d);
                        r.antisym_first = r.antisym_first.max((v + self.get(b, a, c, d)).abs());
                        r.antisym_last = r.antisym_last.max((v + self.get(a, b, d, c)).abs());
                        r.pair_symmetry = r.pair_symmetry.max((v - self.get(c, d, a, b)).abs());
                        r.bianchi = r.bianchi.max((v + self.get(b, c, a, d) + self.get(c, a, b, d)).abs());
                    }
                }
            }
        }
        r
    }

    /// Complex-multilinear extension evaluated on four vectors in real coordinates.
    pub fn eval(&self, u: &[Complex64], v: &[Complex64], w: &[Complex64], z: &[Complex64]) -> Complex64 {
        let m = self.dim;
        let nz = |x: &[Complex64]| -> Vec<(usize, Complex64)> {
            x.iter().copied().enumerate().filter(|(_, c)| *c != Complex64::new(0.0, 0.0)).collect()
        };
        let (u, v, w, z) = (nz(u), nz(v), nz(w), nz(z));
        let mut acc = Complex64::new(0.0, 0.0);
        for &(a, ua) in &u {
            for &(b, vb) in &v {
                let uv = ua * vb;
                for &(c, wc) in &w {
                    let uvw = uv * wc;
                    let base = ((a * m + b) * m + c) * m;
                    for &(d, zd) in &z {
                        acc += uvw * zd * self.data[base + d];
                    }
                }
            }
        }
        acc
    }

    /// Complexified components on the unitary frame `e_i = (x_{2i} - i x_{2i+1})/√2`.
    pub fn complex_blocks(&self) -> LcBlocks {
        let n = self.dim / 2;
        let e: Vec<Vec<Complex64>> = (0..n).map(|k| frame_vector(n, k, false)).collect();
        let eb: Vec<Vec<Complex64>> = (0..n).map(|k| frame_vector(n, k, true)).collect();
        LcBlocks {
            r_ijk_lbar: CTensor4::from_fn(n, |i, j, k, l| self.eval(&e[i], &e[j], &e[k], &eb[l])),
            r_i_jbar_k_lbar: CTensor4::from_fn(n, |i, j, k, l| self.eval(&e[i], &eb[j], &e[k], &eb[l])),
            r_ik_jbar_lbar: CTensor4::from_fn(n, |i, j, k, l| self.eval(&e[i], &e[k], &eb[j], &eb[l])),
        }
    }
}

/// Real coordinates of `e_k` (or `ē_k` when `bar`).
fn frame_vector(n: usize, k: usize, bar: bool) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 2 * n];
    v[2 * k] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    v[2 * k + 1] = Complex64::new(0.0, if bar { FRAC_1_SQRT_2 } else { -FRAC_1_SQRT_2 });
    v
}

pub fn levi_civita_koszul(alg: &HermitianLieAlgebra) -> RealCurv {
    koszul_curvature(2 * alg.n(), &alg.real_structure_constants())
}

/// Riemann tensor of the left-invariant metric making `x_0..x_{m-1}` orthonormal,
/// for real structure constants `f[c][a][b]`.
pub fn koszul_curvature(m: usize, f: &[f64]) -> RealCurv {
    assert_eq!(f.len(), m * m * m, "structure constants must have length m^3");
    let fc = |c: usize, a: usize, b: usize| f[(c * m + a) * m + b];
    // gamma[a][c * m + b] = <∇_{x_a} x_b, x_c>
    let gamma: Vec<Vec<f64>> = (0..m)
        .map(|a| {
            let mut g = vec![0.0; m * m];
            for c in 0..m {
                for b in 0..m {
                    g[c * m + b] = 0.5 * (fc(c, a, b) - fc(a, b, c) + fc(b, c, a));
                }
            }
            g
        })
        .collect();
    let matmul = |x: &[f64], y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; m * m];
        for r in 0..m {
            for s in 0..m {
                let xv = x[r * m + s];
                if xv != 0.0 {
                    for t in 0..m {
                        out[r * m + t] += xv * y[s * m + t];
                    }
                }
            }
        }
        out
    };

    let mut data = vec![0.0; m * m * m * m];
    for a in 0..m {
        for b in 0..m {
            let ab = matmul(&gamma[a], &gamma[b]);
            let ba = matmul(&gamma[b], &gamma[a]);
            let mut op: Vec<f64> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
            for (c, gc) in gamma.iter().enumerate() {
                let coeff = fc(c, a, b);
                if coeff != 0.0 {
                    op.iter_mut().zip(gc).for_each(|(o, g)| *o -= coeff * g);
                }
            }
            for c in 0..m {
                for d in 0..m {
                    data[((a * m + b) * m + c) * m + d] = op[d * m + c];
                }
            }
        }
    }
    RealCurv { dim: m, data }
}
