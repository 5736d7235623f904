use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::HermitianLieAlgebra;
use crate::linalg::CTensor4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvKind {
    Chern,
    ChernSymmetrized,
    Lc,
    LcSymmetrized,
}

impl CurvKind {
    pub fn symmetrized(self) -> Self {
        match self {
            CurvKind::Chern | CurvKind::ChernSymmetrized => CurvKind::ChernSymmetrized,
            CurvKind::Lc | CurvKind::LcSymmetrized => CurvKind::LcSymmetrized,
        }
    }

    pub fn is_symmetrized(self) -> bool {
        matches!(self, CurvKind::ChernSymmetrized | CurvKind::LcSymmetrized)
    }
}

/// Components `R_{i jbar k lbar}` of a curvature tensor, stored at `[i][j][k][l]`.
#[derive(Clone, Debug)]
pub struct Curv4 {
    pub kind: CurvKind,
    pub r: CTensor4,
}

impl Curv4 {
    pub fn new(kind: CurvKind, r: CTensor4) -> Self {
        Self { kind, r }
    }

    pub fn n(&self) -> usize {
        self.r.n()
    }

    /// `max |R_{i jbar k lbar} - conj(R_{j ibar l kbar})|`.
    pub fn hermitian_residual(&self) -> f64 {
        let n = self.n();
        let r = &self.r;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        worst = worst.max((r[(i, j, k, l)] - r[(j, i, l, k)].conj()).norm());
                    }
                }
            }
        }
        worst
    }

    /// Residual of invariance under `i <-> k` and `j <-> l`.
    pub fn kahler_symmetry_residual(&self) -> f64 {
        let n = self.n();
        let r = &self.r;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = r[(i, j, k, l)];
                        worst = worst.max((v - r[(k, j, i, l)]).norm()).max((v - r[(i, l, k, j)]).norm());
                    }
                }
            }
        }
        worst
    }
}

/// Chern curvature of a Lie–Hermitian structure, quadratic in `D`.
pub fn chern_curvature(alg: &HermitianLieAlgebra) -> Curv4 {
    let n = alg.n();
    let d = alg.d();
    let r = CTensor4::from_fn(n, |i, j, k, l| {
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 0..n {
            acc += d[(s, k, i)] * d[(s, l, j)].conj()
                - d[(l, s, i)] * d[(k, s, j)].conj()
                - d[(j, s, i)] * d[(k, l, s)].conj()
                - d[(i, s, j)].conj() * d[(l, k, s)];
        }
        acc
    });
    Curv4::new(CurvKind::Chern, r)
}

/// `R̂_{i jbar k lbar} = (R_{ijkl} + R_{kjil} + R_{ilkj} + R_{klij}) / 4`.
pub fn symmetrize(curv: &Curv4) -> Curv4 {
    let r = &curv.r;
    let sym = CTensor4::from_fn(curv.n(), |i, j, k, l| {
        (r[(i, j, k, l)] + r[(k, j, i, l)] + r[(i, l, k, j)] + r[(k, l, i, j)]) * 0.25
    });
    Curv4::new(curv.kind.symmetrized(), sym)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_almost_abelian, AlmostAbelianParams};
    use crate::linalg::random::{complex_gaussian, complex_gaussian_matrix, complex_gaussian_vec};
    use crate::linalg::{CMat, CTensor3};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_params(n: usize, rng: &mut ChaCha8Rng) -> AlmostAbelianParams {
        AlmostAbelianParams {
            n,
            lambda: complex_gaussian(rng).re,
            v: complex_gaussian_vec(n - 1, rng),
            a: complex_gaussian_matrix(n - 1, n - 1, rng),
        }
    }

    /// Curvature from the connection matrices on the complexification:
    /// `R(a, b) = [∇_a, ∇_b] - ∇_[a,b]`, paired against `ē_l`.
    fn curvature_via_connection(alg: &HermitianLieAlgebra) -> CTensor4 {
        let n = alg.n();
        let m = 2 * n;
        let d = alg.d();
        // gamma[a]: column b holds ∇_{b_a} b_b
        let mut gamma = vec![CMat::zeros(m, m); m];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    gamma[k][(j, i)] = d[(j, i, k)];
                    gamma[n + k][(j, i)] = -d[(i, j, k)].conj();
                    gamma[n + k][(n + j, n + i)] = d[(j, i, k)].conj();
                    gamma[k][(n + j, n + i)] = -d[(i, j, k)];
                }
            }
        }
        CTensor4::from_fn(n, |i, j, k, l| {
            let (a, b) = (i, n + j);
            let mut op = &(&gamma[a] * &gamma[b]) - &(&gamma[b] * &gamma[a]);
            for (c, coeff) in alg.basis_bracket(a, b).iter().enumerate() {
                op = &op - &gamma[c].scale(*coeff);
            }
            // <R(e_i, ē_j) e_k, ē_l> is the e_l coordinate
            op[(l, k)]
        })
    }

    #[test]
    fn abelian_is_flat() {
        let r = chern_curvature(&HermitianLieAlgebra::abelian(3, 1e-9));
        assert_eq!(r.r.max_abs(), 0.0);
    }

    #[test]
    fn quadratic_formula_matches_connection_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in 2..=4 {
            let alg = build_almost_abelian(&random_params(n, &mut rng)).unwrap();
            let direct = curvature_via_connection(&alg);
            assert!(chern_curvature(&alg).r.max_abs_diff(&direct) < 1e-12);
        }
    }

    #[test]
    fn diagonal_matches_diagonal_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let n = 4;
        // holds as an identity in D, so random D suffices
        let d = CTensor3::from_fn(n, |_, _, _| complex_gaussian(&mut rng));
        let alg_d = d.clone();
        let r = CTensor4::from_fn(n, |i, j, k, l| {
            (0..n)
                .map(|s| {
                    alg_d[(s, k, i)] * alg_d[(s, l, j)].conj()
                        - alg_d[(l, s, i)] * alg_d[(k, s, j)].conj()
                        - alg_d[(j, s, i)] * alg_d[(k, l, s)].conj()
                        - alg_d[(i, s, j)].conj() * alg_d[(l, k, s)]
                })
                .sum()
        });
        for i in 0..n {
            let expected: f64 = (0..n)
                .map(|s| {
                    d[(s, i, i)].norm_sqr() - d[(i, s, i)].norm_sqr() - 2.0 * (d[(i, s, i)] * d[(i, i, s)].conj()).re
                })
                .sum();
            assert!((r[(i, i, i, i)].re - expected).abs() < 1e-12);
            assert!(r[(i, i, i, i)].im.abs() < 1e-12);
        }
    }

    #[test]
    fn hermitian_symmetry_on_family_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for n in 2..=4 {
            let r = chern_curvature(&build_almost_abelian(&random_params(n, &mut rng)).unwrap());
            assert!(r.hermitian_residual() < 1e-10);
        }
    }

    #[test]
    fn symmetrize_is_idempotent_and_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let r = Curv4::new(CurvKind::Chern, CTensor4::from_fn(3, |_, _, _, _| complex_gaussian(&mut rng)));
        let s = symmetrize(&r);
        assert_eq!(s.kind, CurvKind::ChernSymmetrized);
        assert!(symmetrize(&s).r.max_abs_diff(&s.r) < 1e-15);
        assert!(s.kahler_symmetry_residual() < 1e-15);
    }

    #[test]
    fn symmetrize_keeps_kahler_tensor() {
        // (δ_ij δ_kl + δ_il δ_kj) already has the Kähler symmetries
        let r = CTensor4::from_fn(3, |i, j, k, l| {
            let v = f64::from(u8::from(i == j && k == l) + u8::from(i == l && k == j));
            Complex64::new(v, 0.0)
        });
        let curv = Curv4::new(CurvKind::Lc, r.clone());
        assert_eq!(symmetrize(&curv).r, r);
    }

    #[test]
    fn symmetrized_diagonal_pairs_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let n = 4;
        let alg = build_almost_abelian(&random_params(n, &mut rng)).unwrap();
        let d = alg.d();
        let rhat = symmetrize(&chern_curvature(&alg));
        for i in 0..n {
            for k in 0..n {
                // this sum equals 4 R̂_{i ī k k̄}
                let sum: f64 = (0..n)
                    .map(|s| {
                        (d[(s, k, i)] + d[(s, i, k)]).norm_sqr()
                            - d[(k, s, i)].norm_sqr()
                            - d[(i, s, k)].norm_sqr()
                            - 2.0
                                * (d[(k, s, k)] * d[(i, s, i)].conj()
                                    + d[(i, s, i)] * d[(k, k, s)].conj()
                                    + d[(k, s, k)] * d[(i, i, s)].conj()
                                    + d[(i, s, k)] * d[(i, k, s)].conj()
                                    + d[(k, s, i)] * d[(k, i, s)].conj())
                                .re
                    })
                    .sum();
                assert!((rhat.r[(i, i, k, k)].re - 0.25 * sum).abs() < 1e-12, "({i},{k})");
            }
        }
    }
}
