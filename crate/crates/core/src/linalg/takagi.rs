//! Autonne–Takagi factorization of complex symmetric matrices.
//!
//! For `S = S^T` we return a unitary `U` and `sigma >= 0` (descending) with
//! `U S U^T = diag(sigma)`. Writing `S = A + iB`, the real symmetric matrix
//! `M = [[A, B], [B, -A]]` has spectrum `±sigma`, and `[x; y]` is an eigenvector for
//! `sigma > 0` exactly when `v = x + iy` satisfies `S conj(v) = sigma v`. Multiplying `v`
//! by `i` maps the `+sigma` eigenspace onto the `-sigma` one, so real orthonormal
//! eigenvectors for the positive eigenvalues are already complex orthonormal, and the
//! kernel is filled in by completing to a unitary basis.
//!
//! The complex SVD in nalgebra is not used: with repeated singular values it can report
//! convergence on a factorization that does not reproduce its input.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::CMat;
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// Result of [`takagi`]: `u * s * u^T = diag(sigma)`.
#[derive(Clone, Debug)]
pub struct Takagi {
    pub u: CMat,
    pub sigma: Vec<f64>,
}

impl Takagi {
    /// `‖U S U^T - diag(sigma)‖_F` for the matrix this factorization came from.
    pub fn reconstruction_error(&self, s: &CMat) -> f64 {
        let d = &(&self.u * s) * &self.u.transpose();
        (&d - &CMat::from_real_diag(&self.sigma)).frob_norm()
    }
}

/// `‖U U* - I‖_F`.
pub fn unitary_residual(u: &CMat) -> f64 {
    assert!(u.is_square(), "unitary_residual needs a square matrix");
    (&(u * &u.adjoint()) - &CMat::identity(u.rows())).frob_norm()
}

pub fn takagi(s: &CMat) -> Result<Takagi> {
    takagi_with_tol(s, DEFAULT_TOL)
}

/// Eigenvalues of the real embedding at or below this (relative to `1 + ‖S‖`) count as zero.
const ZERO_REL: f64 = 1e-13;

pub fn takagi_with_tol(s: &CMat, tol: f64) -> Result<Takagi> {
    if !s.is_square() {
        return Err(Error::Precondition(format!("takagi needs a square matrix, got {:?}", s.shape())));
    }
    let m = s.rows();
    let scale = 1.0 + s.max_abs();
    let asym = (s - &s.transpose()).max_abs();
    if asym > tol * scale {
        return Err(Error::Precondition(format!("matrix is not symmetric: max |S - S^T| = {asym:.3e}")));
    }

    let sym = (s + &s.transpose()).scale_re(0.5);
    let emb = DMatrix::<f64>::from_fn(2 * m, 2 * m, |r, c| {
        let z = sym[(r % m, c % m)];
        match (r < m, c < m) {
            (true, true) => z.re,
            (false, false) => -z.re,
            _ => z.im,
        }
    });
    let eig = SymmetricEigen::try_new(emb, f64::EPSILON, 0)
        .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?;

    let zero = ZERO_REL * (1.0 + sym.frob_norm());
    let mut order: Vec<usize> = (0..2 * m).filter(|&k| eig.eigenvalues[k] > zero).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    order.truncate(m);

    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    let mut sigma = Vec::with_capacity(m);
    for &k in &order {
        let v: Vec<Complex64> =
            (0..m).map(|i| Complex64::new(eig.eigenvectors[(i, k)], eig.eigenvectors[(m + i, k)])).collect();
        // small eigenvalues sit close to their negatives; re-orthogonalize to absorb the mixing
        if let Some(v) = orthonormalize(v, &cols, 0.5) {
            cols.push(v);
            sigma.push(eig.eigenvalues[k]);
        }
    }
    while cols.len() < m {
        // the coordinate vector with the largest component outside the current span
        let outside = |e: usize| 1.0 - cols.iter().map(|c| c[e].norm_sqr()).sum::<f64>();
        let best = (1..m).fold(0, |b, e| if outside(e) > outside(b) { e } else { b });
        let unit: Vec<Complex64> = (0..m).map(|i| Complex64::new(if i == best { 1.0 } else { 0.0 }, 0.0)).collect();
        match orthonormalize(unit, &cols, 0.1) {
            Some(v) => {
                cols.push(v);
                sigma.push(0.0);
            }
            None => break,
        }
    }
    if cols.len() != m {
        return Err(Error::Numeric("could not complete a unitary Takagi basis".into()));
    }

    // columns of V satisfy S = V diag(sigma) V^T, and U = V^*
    let u = CMat::from_fn(m, m, |i, j| cols[i][j].conj());
    Ok(Takagi { u, sigma })
}

/// Twice-applied Gram–Schmidt of `v` against orthonormal `basis`; `None` when less than
/// `keep` of its norm survives.
fn orthonormalize(mut v: Vec<Complex64>, basis: &[Vec<Complex64>], keep: f64) -> Option<Vec<Complex64>> {
    let norm0 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for _ in 0..2 {
        for b in basis {
            let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= proj * bi;
            }
        }
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm <= keep * norm0 {
        return None;
    }
    Some(v.into_iter().map(|z| z / norm).collect())
}
