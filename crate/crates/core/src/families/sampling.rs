//! Seeded samplers for both families.
//!
//! Streams: sample `k` of a campaign with seed `s` draws from `ChaCha8Rng::seed_from_u64(s)`
//! with its stream set to `k`, so samples are independent of evaluation order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::almost_abelian::AlmostAbelianParams;
use super::codim2::Codim2Params;
use crate::error::{Error, Result};
use crate::linalg::random::{complex_gaussian, complex_gaussian_matrix, complex_gaussian_vec, random_unitary};
use crate::linalg::CMat;

/// Independent generator for sample `index` of a campaign seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// `λ = 0`, `Z = 0`, `X` and `Y` simultaneously diagonal in a random unitary frame.
    A,
    /// Diagonal `X, Y, Z` with `y_i = λ - x_i` and `|z_i| = λ`.
    B,
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Scheme::A),
            "B" | "b" => Ok(Scheme::B),
            other => Err(Error::Usage(format!("unknown scheme {other:?}, expected A or B"))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::A => "A",
            Scheme::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AaVariant {
    Generic,
    /// `λ = 0`, `v = 0`, `A` normal.
    ChernFlat,
    /// `λ = 0`, `v = 0`, `A` skew-Hermitian.
    KahlerFlat,
}

/// Almost abelian sample; with `unimodular`, `A` is shifted by a real multiple of `I`
/// so that `λ + 2 Re tr A = 0` holds.
pub fn sample_almost_abelian<R: Rng + ?Sized>(
    n: usize,
    variant: AaVariant,
    unimodular: bool,
    rng: &mut R,
) -> Result<AlmostAbelianParams> {
    if n < 2 {
        return Err(Error::Usage(format!("almost abelian samples need n >= 2, got {n}")));
    }
    let m = n - 1;
    let zero = vec![Complex64::new(0.0, 0.0); m];
    let mut p = match variant {
        AaVariant::Generic => AlmostAbelianParams {
            n,
            lambda: complex_gaussian(rng).re * std::f64::consts::SQRT_2,
            v: complex_gaussian_vec(m, rng),
            a: complex_gaussian_matrix(m, m, rng),
        },
        AaVariant::ChernFlat => {
            let u = random_unitary(m, rng);
            let diag = CMat::from_diag(&complex_gaussian_vec(m, rng));
            AlmostAbelianParams { n, lambda: 0.0, v: zero, a: &(&u * &diag) * &u.adjoint() }
        }
        AaVariant::KahlerFlat => {
            let g = complex_gaussian_matrix(m, m, rng);
            AlmostAbelianParams { n, lambda: 0.0, v: zero, a: (&g - &g.adjoint()).scale_re(0.5) }
        }
    };
    if unimodular {
        let shift = p.unimodular_defect() / (2.0 * m as f64);
        for i in 0..m {
            p.a[(i, i)] -= shift;
        }
    }
    Ok(p)
}

pub fn sample_unimodular_aa<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<AlmostAbelianParams> {
    sample_almost_abelian(n, AaVariant::Generic, true, rng)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SampleOptions {
    /// Enforce `λ + tr(Y - X) = 0`.
    pub unimodular: bool,
    /// Finish with a random unitary change of `e_2..e_n`.
    pub rotate: bool,
    /// Scheme B: fixed `λ` instead of a uniform draw from `[0.25, 2]`.
    pub lambda: Option<f64>,
    pub zero_v: bool,
    /// Scheme A: take `Y = X` (together with `zero_v` this is Kähler flat).
    pub equal_xy: bool,
}

pub fn sample_codim2<R: Rng + ?Sized>(
    n: usize,
    scheme: Scheme,
    rng: &mut R,
    opts: SampleOptions,
) -> Result<Codim2Params> {
    if n < 2 {
        return Err(Error::Usage(format!("codimension-2 samples need n >= 2, got {n}")));
    }
    let m = n - 1;
    let v = if opts.zero_v { vec![Complex64::new(0.0, 0.0); m] } else { complex_gaussian_vec(m, rng) };
    let mut p = match scheme {
        Scheme::A => {
            let u = random_unitary(m, rng);
            let x = complex_gaussian_vec(m, rng);
            let mut y = if opts.equal_xy { x.clone() } else { complex_gaussian_vec(m, rng) };
            if opts.unimodular && !opts.equal_xy {
                let shift = (y.iter().sum::<Complex64>() - x.iter().sum::<Complex64>()) / m as f64;
                y.iter_mut().for_each(|z| *z -= shift);
            }
            let conj = |d: &[Complex64]| &(&u * &CMat::from_diag(d)) * &u.adjoint();
            Codim2Params { n, lambda: 0.0, v, x: conj(&x), y: conj(&y), z: CMat::zeros(m, m) }
        }
        Scheme::B => {
            let lambda = match opts.lambda {
                Some(l) => l,
                None => rng.random_range(0.25..2.0),
            };
            let mut x: Vec<f64> = (0..m).map(|_| complex_gaussian(rng).re * std::f64::consts::SQRT_2).collect();
            if opts.unimodular {
                let shift = (x.iter().sum::<f64>() - n as f64 * lambda / 2.0) / m as f64;
                x.iter_mut().for_each(|t| *t -= shift);
            }
            let y: Vec<f64> = x.iter().map(|t| lambda - t).collect();
            let z: Vec<Complex64> =
                (0..m).map(|_| Complex64::from_polar(lambda, rng.random_range(0.0..std::f64::consts::TAU))).collect();
            Codim2Params {
                n,
                lambda,
                v,
                x: CMat::from_real_diag(&x),
                y: CMat::from_real_diag(&y),
                z: CMat::from_diag(&z),
            }
        }
    };
    if opts.rotate {
        p = p.change_frame(&random_unitary(m, rng))?;
    }
    Ok(p)
}
