//! Holomorphic sectional curvature and the constancy test.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::chern::{symmetrize, Curv4};
use crate::error::{Error, Result};
use crate::linalg::random::complex_gaussian_vec;
use crate::linalg::CTensor4;

/// `H(X) = R_{X X̄ X X̄} / |X|^4`.
pub fn hol_sect(r: &Curv4, x: &[Complex64]) -> Result<f64> {
    let n = r.n();
    if x.len() != n {
        return Err(Error::Dimension(format!("vector of length {} for n = {n}", x.len())));
    }
    let norm2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    if norm2 == 0.0 || !norm2.is_finite() {
        return Err(Error::Domain("holomorphic sectional curvature needs a nonzero vector".into()));
    }
    Ok(contract(&r.r, x).re / (norm2 * norm2))
}

fn contract(r: &CTensor4, x: &[Complex64]) -> Complex64 {
    let n = r.n();
    let xb: Vec<Complex64> = x.iter().map(|z| z.conj()).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let ij = x[i] * xb[j];
            if ij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                let ijk = ij * x[k];
                for l in 0..n {
                    acc += ijk * xb[l] * r[(i, j, k, l)];
                }
            }
        }
    }
    acc
}

/// Unit probe vectors `e_i` and `(e_i ± e_k)/√2`, `(e_i ± i e_k)/√2` for `i < k`.
pub fn probe_vectors(n: usize) -> Vec<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n + 2 * n * n);
    for i in 0..n {
        let mut v = vec![zero; n];
        v[i] = Complex64::new(1.0, 0.0);
        out.push(v);
    }
    for i in 0..n {
        for k in (i + 1)..n {
            for w in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)]
            {
                let mut v = vec![zero; n];
                v[i] = Complex64::new(h, 0.0);
                v[k] = w;
                out.push(v);
            }
        }
    }
    out
}

/// Two unit vectors with different holomorphic sectional curvature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: Vec<Complex64>,
    pub h_x: f64,
    pub y: Vec<Complex64>,
    pub h_y: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HVerdict {
    Constant {
        c: f64,
    },
    NotConstant {
        /// Component `(i, j, k, l)` of `R̂ - (c/2)(δ_ij δ_kl + δ_il δ_kj)` with the largest modulus.
        component: (usize, usize, usize, usize),
        deviation: f64,
        c_estimate: f64,
        witness: Option<Witness>,
    },
}

impl HVerdict {
    pub fn is_constant(&self) -> bool {
        matches!(self, HVerdict::Constant { .. })
    }

    pub fn constant_value(&self) -> Option<f64> {
        match self {
            HVerdict::Constant { c } => Some(*c),
            HVerdict::NotConstant { .. } => None,
        }
    }
}

const RANDOM_PROBES: usize = 64;

/// Tests `R̂ = (c/2)(δ_ij δ_kl + δ_il δ_kj)` with `c` the mean of `R̂_{i ī i ī}`.
///
/// The comparison is made against `tol * (1 + max |R|)`.
pub fn constant_h_detect(r: &Curv4, tol: f64) -> HVerdict {
    let n = r.n();
    let rhat = if r.kind.is_symmetrized() { r.clone() } else { symmetrize(r) };
    let c = (0..n).map(|i| rhat.r[(i, i, i, i)].re).sum::<f64>() / n as f64;
    let model = CTensor4::from_fn(n, |i, j, k, l| {
        let v = f64::from(u8::from(i == j && k == l) + u8::from(i == l && k == j));
        Complex64::new(0.5 * c * v, 0.0)
    });
    let dev = rhat.r.add_scaled(Complex64::new(-1.0, 0.0), &model);
    let (component, worst) = dev.argmax_abs();
    let bound = tol * (1.0 + r.r.max_abs());
    if worst.norm() <= bound {
        return HVerdict::Constant { c };
    }
    HVerdict::NotConstant { component, deviation: worst.norm(), c_estimate: c, witness: find_witness(&rhat, bound) }
}

fn find_witness(r: &Curv4, bound: f64) -> Option<Witness> {
    let n = r.n();
    let mut probes = probe_vectors(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..RANDOM_PROBES {
        let v = complex_gaussian_vec(n, &mut rng);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        probes.push(v.into_iter().map(|z| z / norm).collect());
    }
    let hs: Vec<f64> = probes.iter().map(|x| hol_sect(r, x).expect("probe vectors are nonzero")).collect();
    let (mut lo, mut hi) = (0, 0);
    for (idx, h) in hs.iter().enumerate() {
        if *h < hs[lo] {
            lo = idx;
        }
        if *h > hs[hi] {
            hi = idx;
        }
    }
    if hs[hi] - hs[lo] <= bound {
        return None;
    }
    Some(Witness { x: probes[lo].clone(), h_x: hs[lo], y: probes[hi].clone(), h_y: hs[hi] })
}
