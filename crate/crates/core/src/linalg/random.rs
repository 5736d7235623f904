//! Random complex matrices for sampling and tests.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::CMat;

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_gaussian_vec<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

pub fn complex_gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary matrix (QR of a Gaussian matrix with the R-diagonal phases removed).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let g = complex_gaussian_matrix(n, n, rng).to_nalgebra();
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = CMat::from_nalgebra(&q);
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    u
}

/// Random complex symmetric matrix `(G + G^T) / 2`.
pub fn random_complex_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let g = complex_gaussian_matrix(n, n, rng);
    (&g + &g.transpose()).scale_re(0.5)
}

/// Householder reflector `I - 2 v v* / (v* v)` for a random direction `v`.
pub fn householder_reflector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let v = complex_gaussian_vec(n, rng);
    let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    CMat::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        Complex64::new(delta, 0.0) - v[i] * v[j].conj() * (2.0 / norm2)
    })
}
