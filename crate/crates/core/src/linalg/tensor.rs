use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_finite(data: &[Complex64]) -> Result<()> {
    if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numeric("non-finite tensor entry".into()));
    }
    Ok(())
}

/// Rank-3 complex tensor, indexed `[j][i][k]` for symbols written `X^j_{ik}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CTensor3 {
    n: usize,
    data: Vec<Complex64>,
}

impl CTensor3 {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Complex64) -> Self {
        let mut t = Self::zeros(n);
        for j in 0..n {
            for i in 0..n {
                for k in 0..n {
                    t[(j, i, k)] = f(j, i, k);
                }
            }
        }
        t
    }

    pub fn from_vec(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n * n {
            return Err(Error::Dimension(format!(
                "rank-3 tensor of size {n} needs {} entries, got {}",
                n * n * n,
                data.len()
            )));
        }
        check_finite(&data)?;
        Ok(Self { n, data })
    }

    /// Parses nested `[j][i][k]` arrays.
    pub fn from_nested(nested: &[Vec<Vec<Complex64>>]) -> Result<Self> {
        let n = nested.len();
        let mut data = Vec::with_capacity(n * n * n);
        for (j, plane) in nested.iter().enumerate() {
            if plane.len() != n {
                return Err(Error::Dimension(format!("slice [{j}] has {} rows, expected {n}", plane.len())));
            }
            for (i, row) in plane.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Dimension(format!("slice [{j}][{i}] has {} entries, expected {n}", row.len())));
                }
                data.extend_from_slice(row);
            }
        }
        Self::from_vec(n, data)
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Complex64>>> {
        let n = self.n;
        (0..n).map(|j| (0..n).map(|i| (0..n).map(|k| self[(j, i, k)]).collect()).collect()).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize, usize)> for CTensor3 {
    type Output = Complex64;

    #[inline]
    fn index(&self, (j, i, k): (usize, usize, usize)) -> &Complex64 {
        &self.data[(j * self.n + i) * self.n + k]
    }
}

impl IndexMut<(usize, usize, usize)> for CTensor3 {
    #[inline]
    fn index_mut(&mut self, (j, i, k): (usize, usize, usize)) -> &mut Complex64 {
        &mut self.data[(j * self.n + i) * self.n + k]
    }
}

/// Rank-4 complex tensor. For curvature, `[i][j][k][l]` holds `R_{i jbar k lbar}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CTensor4 {
    n: usize,
    data: Vec<Complex64>,
}

impl CTensor4 {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> Complex64) -> Self {
        let mut t = Self::zeros(n);
        let mut idx = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        t.data[idx] = f(i, j, k, l);
                        idx += 1;
                    }
                }
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Entry-wise `self + s * other`.
    pub fn add_scaled(&self, s: Complex64, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + s * b).collect() }
    }

    /// Index of the largest-modulus entry together with its value.
    pub fn argmax_abs(&self) -> ((usize, usize, usize, usize), Complex64) {
        let n = self.n;
        let (pos, val) =
            self.data.iter().enumerate().fold(
                (0, ZERO),
                |best, (p, &z)| {
                    if z.norm() > best.1.norm() {
                        (p, z)
                    } else {
                        best
                    }
                },
            );
        ((pos / (n * n * n), (pos / (n * n)) % n, (pos / n) % n, pos % n), val)
    }
}

impl Index<(usize, usize, usize, usize)> for CTensor4 {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j, k, l): (usize, usize, usize, usize)) -> &Complex64 {
        let n = self.n;
        &self.data[((i * n + j) * n + k) * n + l]
    }
}

impl IndexMut<(usize, usize, usize, usize)> for CTensor4 {
    #[inline]
    fn index_mut(&mut self, (i, j, k, l): (usize, usize, usize, usize)) -> &mut Complex64 {
        let n = self.n;
        &mut self.data[((i * n + j) * n + k) * n + l]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_round_trip_and_layout() {
        let t = CTensor3::from_fn(3, |j, i, k| Complex64::new((100 * j + 10 * i + k) as f64, 0.0));
        assert_eq!(t[(2, 1, 0)].re, 210.0);
        let back = CTensor3::from_nested(&t.to_nested()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn ragged_nested_is_rejected() {
        let mut nested = CTensor3::zeros(2).to_nested();
        nested[1][0].pop();
        assert!(matches!(CTensor3::from_nested(&nested), Err(Error::Dimension(_))));
    }

    #[test]
    fn argmax_reports_indices() {
        let mut t = CTensor4::zeros(3);
        t[(2, 0, 1, 2)] = Complex64::new(0.0, -5.0);
        t[(1, 1, 1, 1)] = Complex64::new(1.0, 0.0);
        let (idx, v) = t.argmax_abs();
        assert_eq!(idx, (2, 0, 1, 2));
        assert_eq!(v.im, -5.0);
    }
}
