use num_complex::Complex64;

use crate::algebra::HermitianLieAlgebra;
use crate::linalg::{CTensor3, CTensor4};

/// Chern connection coefficients in the unitary frame.
///
/// `along[(j, i, k)]` is the `e_j` coefficient of `∇_{e_k} e_i`, namely `D^j_ik`;
/// `along_bar[(j, i, k)]` is the `e_j` coefficient of `∇_{ē_k} e_i`, namely `-conj(D^i_jk)`.
#[derive(Clone, Debug)]
pub struct ChernConnection {
    pub along: CTensor3,
    pub along_bar: CTensor3,
}

impl ChernConnection {
    /// Coefficient of `φ_k` (first) and `φ̄_k` (second) in the connection form `θ_ij`.
    pub fn theta(&self, i: usize, j: usize, k: usize) -> (Complex64, Complex64) {
        (self.along[(j, i, k)], self.along_bar[(j, i, k)])
    }
}

pub fn chern_connection(alg: &HermitianLieAlgebra) -> ChernConnection {
    let d = alg.d();
    let n = alg.n();
    ChernConnection {
        along: CTensor3::from_fn(n, |j, i, k| d[(j, i, k)]),
        along_bar: CTensor3::from_fn(n, |j, i, k| -d[(i, j, k)].conj()),
    }
}

/// Chern torsion `T^j_ik` with its covariant derivatives.
///
/// `td[(j, i, k, l)] = T^j_{ik,l}` and `tdbar[(j, i, k, l)] = T^j_{ik,l̄}`.
#[derive(Clone, Debug)]
pub struct TorsionTensor {
    pub t: CTensor3,
    pub td: CTensor4,
    pub tdbar: CTensor4,
}

impl TorsionTensor {
    pub fn max_abs(&self) -> f64 {
        self.t.max_abs()
    }
}

pub fn chern_torsion(alg: &HermitianLieAlgebra) -> TorsionTensor {
    let n = alg.n();
    let (c, d) = (alg.c(), alg.d());
    let mut t = CTensor3::zeros(n);
    for j in 0..n {
        for i in 0..n {
            for k in (i + 1)..n {
                let v = -c[(j, i, k)] - d[(j, i, k)] + d[(j, k, i)];
                t[(j, i, k)] = v;
                t[(j, k, i)] = -v;
            }
        }
    }
    let td = CTensor4::from_fn(n, |j, i, k, l| {
        (0..n).map(|s| -t[(j, s, k)] * d[(s, i, l)] - t[(j, i, s)] * d[(s, k, l)] + t[(s, i, k)] * d[(j, s, l)]).sum()
    });
    let tdbar = CTensor4::from_fn(n, |j, i, k, l| {
        (0..n)
            .map(|s| {
                t[(j, s, k)] * d[(i, s, l)].conj() + t[(j, i, s)] * d[(k, s, l)].conj()
                    - t[(s, i, k)] * d[(s, j, l)].conj()
            })
            .sum()
    });
    TorsionTensor { t, td, tdbar }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_codim2, hyperbolic_example, sample_codim2, Scheme};
    use crate::linalg::random::random_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn abelian_connection_and_torsion_vanish() {
        let alg = HermitianLieAlgebra::abelian(3, 1e-9);
        let conn = chern_connection(&alg);
        assert_eq!(conn.along.max_abs() + conn.along_bar.max_abs(), 0.0);
        let tor = chern_torsion(&alg);
        assert_eq!(tor.t.max_abs() + tor.td.max_abs() + tor.tdbar.max_abs(), 0.0);
    }

    #[test]
    fn example_connection_and_torsion() {
        let alg = hyperbolic_example(2).unwrap();
        let conn = chern_connection(&alg);
        // ∇_{e_1} e_1 = D^1_11 e_1 = λ e_1
        assert_eq!(conn.along[(0, 0, 0)].re, 1.0);
        let tor = chern_torsion(&alg);
        // T^2_12 = A_22 + conj(A_22) = 2
        assert!((tor.t[(1, 0, 1)].re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn connection_form_is_skew_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let p = sample_codim2(4, Scheme::B, &mut rng, Default::default()).unwrap();
        let alg = build_codim2(&p, 1e-9).unwrap().change_frame(&random_unitary(4, &mut rng)).unwrap();
        let conn = chern_connection(&alg);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (a, b) = conn.theta(i, j, k);
                    let (a2, b2) = conn.theta(j, i, k);
                    // θ_ij = -conj(θ_ji): φ_k part of θ_ij against φ̄_k part of θ_ji
                    assert!((a + b2.conj()).norm() < 1e-14);
                    assert!((b + a2.conj()).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn codim2_torsion_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let p = sample_codim2(3, Scheme::B, &mut rng, Default::default()).unwrap();
        let tor = chern_torsion(&build_codim2(&p, 1e-9).unwrap());
        for i in 1..3 {
            for j in 1..3 {
                let expected = p.z[(j - 1, i - 1)] - p.z[(i - 1, j - 1)];
                assert!((tor.t[(0, i, j)] - expected).norm() < 1e-14);
            }
        }
    }
}
