//! Property checks on family instances: oracle agreement, closed forms, curvature
//! identities and the constant holomorphic sectional curvature dichotomies.
//!
//! [`check_instance`] runs every applicable check and never short-circuits, so a
//! failing sample reports all of its violations at once.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::HermitianLieAlgebra;
use crate::curvature::{
    chern_curvature, chern_torsion, constant_h_detect, hol_sect, levi_civita_from_chern, levi_civita_koszul,
    predicates, probe_vectors, symmetrize, Curv4, HVerdict, Predicates,
};
use crate::error::{Error, Result};
use crate::families::{
    aa_classify, aa_closed_forms, admissible_normalize, build_almost_abelian_with_tol, build_codim2, codim2_classify,
    codim2_closed_forms, codim2_lc_hat_iikk_normalized, sample_almost_abelian, sample_codim2, sample_rng, AaVariant,
    AlmostAbelianParams, Codim2Params, FamilyClass, SampleOptions, Scheme,
};
use crate::linalg::{CMat, CTensor3, CTensor4};

/// Jacobi residual bound, relative to `1 + ‖C‖ + ‖D‖`.
pub const JACOBI_TOL: f64 = 1e-10;
/// Chern-route against Koszul-route Levi-Civita blocks, relative to `1 + ‖Rm‖`.
pub const ORACLE_TOL: f64 = 1e-9;
pub const CLOSED_FORM_TOL: f64 = 1e-9;
pub const TRACE_IDENTITY_TOL: f64 = 1e-10;
pub const IDENTITY_TOL: f64 = 1e-9;
pub const TRANSPOSE_IDENTITY_TOL: f64 = 1e-10;
/// Torsion size above which `H` and `H^r` must visibly differ on some probe.
pub const SEPARATION_TORSION: f64 = 0.1;
pub const SEPARATION_TOL: f64 = 1e-10;
pub const NORMALIZE_TOL: f64 = 1e-9;
pub const NORMALIZE_OFFDIAG_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    AlmostAbelian,
    Codim2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Instance {
    AlmostAbelian(AlmostAbelianParams),
    Codim2(Codim2Params),
}

impl Instance {
    pub fn n(&self) -> usize {
        match self {
            Instance::AlmostAbelian(p) => p.n,
            Instance::Codim2(p) => p.n,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Instance::AlmostAbelian(_) => Family::AlmostAbelian,
            Instance::Codim2(_) => Family::Codim2,
        }
    }

    pub fn build(&self, tol: f64) -> Result<HermitianLieAlgebra> {
        match self {
            Instance::AlmostAbelian(p) => build_almost_abelian_with_tol(p, tol),
            Instance::Codim2(p) => build_codim2(p, tol),
        }
    }

    /// Unimodular / Kähler / Chern-flat from the parameters alone.
    pub fn classify(&self, tol: f64) -> FamilyClass {
        match self {
            Instance::AlmostAbelian(p) => aa_classify(p, tol),
            Instance::Codim2(p) => codim2_classify(p, tol),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CheckOutcome {
    /// Passes when `value <= bound`.
    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.to_owned(), value, bound, pass: value <= bound }
    }

    /// Passes when `value > bound`.
    pub fn above(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.to_owned(), value, bound, pass: value > bound }
    }

    /// Boolean property; recorded as `value = 1` for a violation.
    pub fn holds(name: &str, ok: bool) -> Self {
        Self { name: name.to_owned(), value: if ok { 0.0 } else { 1.0 }, bound: 0.0, pass: ok }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub n: usize,
    pub unimodular: bool,
    pub predicates: Predicates,
    pub kahler_flat: bool,
    pub chern: HVerdict,
    pub lc: HVerdict,
    /// Levi-Civita holomorphic sectional curvature is a negative constant.
    pub negative_constant_witness: bool,
    pub checks: Vec<CheckOutcome>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs every property applicable to the instance. Construction failures are errors;
/// property violations are recorded in the report.
pub fn check_instance(inst: &Instance, tol: f64) -> Result<SampleReport> {
    let alg = inst.build(tol)?;
    let n = alg.n();
    let mut checks = Vec::new();

    let jac_bound = JACOBI_TOL * (1.0 + alg.c().max_abs() + alg.d().max_abs());
    checks.push(CheckOutcome::at_most("jacobi", alg.jacobi_residual().max(), jac_bound));

    let rm = levi_civita_koszul(&alg);
    let koszul = rm.complex_blocks();
    let from_chern = levi_civita_from_chern(&alg);
    checks.push(CheckOutcome::at_most("oracle", from_chern.max_abs_diff(&koszul), ORACLE_TOL * (1.0 + rm.max_abs())));

    let chern = chern_curvature(&alg);
    let lc = koszul.curv4();
    let tor = chern_torsion(&alg);

    match inst {
        Instance::AlmostAbelian(p) => {
            checks.push(CheckOutcome::at_most("closed_forms", aa_closed_form_error(p, &alg)?, CLOSED_FORM_TOL));
        }
        Instance::Codim2(p) => {
            let cf = codim2_closed_forms(p)?;
            checks.push(CheckOutcome::at_most(
                "closed_forms",
                codim2_closed_form_error(p, &tor.t, &chern, &lc)?,
                CLOSED_FORM_TOL,
            ));
            checks.push(CheckOutcome::at_most("trace_identity", cf.trace_residual.norm(), TRACE_IDENTITY_TOL));
            let (zm, zp) = transpose_identity_residuals(&p.z);
            checks.push(CheckOutcome::at_most("transpose_identities", zm.max(zp), TRANSPOSE_IDENTITY_TOL));
        }
    }

    let class = inst.classify(tol);
    let pred = predicates(&alg);
    let unimodular = alg.is_unimodular().0;
    checks.push(CheckOutcome::holds(
        "family_predicates",
        class.kahler == pred.is_kahler && class.chern_flat == pred.is_chern_flat && class.unimodular == unimodular,
    ));

    checks.push(CheckOutcome::at_most(
        "torsion_derivative_identity",
        torsion_derivative_identity_residual(&alg),
        IDENTITY_TOL,
    ));
    checks.push(CheckOutcome::at_most(
        "lc_correction_identity",
        lc_correction_residual(&chern, &lc, &tor.t),
        IDENTITY_TOL,
    ));
    checks.push(CheckOutcome::at_most(
        "diagonal_identities",
        diagonal_identity_residual(&chern, &lc, &tor.t),
        IDENTITY_TOL,
    ));
    checks.push(CheckOutcome::at_most("symmetrized_pair_identity", symmetrized_pair_residual(&alg), IDENTITY_TOL));

    let chern_verdict = constant_h_detect(&chern, tol);
    let lc_verdict = constant_h_detect(&lc, tol);
    let kahler_flat = pred.is_kahler && pred.is_lc_flat;

    checks.push(CheckOutcome::holds("chern_dichotomy", dichotomy_holds(&chern_verdict, pred.is_chern_flat, tol)));
    if unimodular {
        checks.push(CheckOutcome::holds("lc_dichotomy", dichotomy_holds(&lc_verdict, kahler_flat, tol)));
    }
    let lc_c = lc_verdict.constant_value();
    if let (Instance::AlmostAbelian(p), Some(c)) = (inst, lc_c) {
        if c.abs() <= tol {
            let lin = tol * (1.0 + p.scale());
            let herm = (&p.a + &p.a.adjoint()).max_abs();
            let v_max = p.v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
            checks.push(CheckOutcome::holds(
                "lc_zero_forces_kahler_flat",
                p.lambda.abs() <= lin && v_max <= lin && herm <= lin,
            ));
        }
    }
    let negative_constant_witness = matches!(lc_c, Some(c) if c < -tol);

    let sep = probe_separation(&chern, &lc)?;
    let t_max = tor.max_abs();
    if t_max > SEPARATION_TORSION {
        checks.push(CheckOutcome::above("separation", sep, SEPARATION_TOL * (1.0 + chern.r.max_abs())));
    } else if pred.is_kahler {
        checks.push(CheckOutcome::at_most("separation", sep, SEPARATION_TOL));
    }

    if let Instance::Codim2(p) = inst {
        checks.extend(normalization_checks(p, tol, &chern_verdict, &lc_verdict)?);
    }

    Ok(SampleReport {
        n,
        unimodular,
        predicates: pred,
        kahler_flat,
        chern: chern_verdict,
        lc: lc_verdict,
        negative_constant_witness,
        checks,
    })
}

/// Flat instances must report `constant(0)`, all others `not constant`.
fn dichotomy_holds(verdict: &HVerdict, flat: bool, tol: f64) -> bool {
    match verdict {
        HVerdict::Constant { c } => flat && c.abs() <= tol,
        HVerdict::NotConstant { .. } => !flat,
    }
}

fn normalization_checks(p: &Codim2Params, tol: f64, chern: &HVerdict, lc: &HVerdict) -> Result<Vec<CheckOutcome>> {
    let (q, _) = admissible_normalize(p, tol)?;
    let alg = build_codim2(&q, tol)?;
    let sym = &q.z + &q.z.transpose();
    let mut out = vec![CheckOutcome::at_most(
        "normalized_offdiag",
        sym.max_offdiag(),
        NORMALIZE_OFFDIAG_TOL * (1.0 + sym.max_abs()),
    )];

    let chern_q = constant_h_detect(&chern_curvature(&alg), tol);
    let lc_q = constant_h_detect(&levi_civita_from_chern(&alg).curv4(), tol);
    out.push(CheckOutcome::holds(
        "normalize_preserves_verdicts",
        same_verdict(chern, &chern_q) && same_verdict(lc, &lc_q),
    ));

    let lc_hat = symmetrize(&levi_civita_koszul(&alg).complex_blocks().curv4());
    let normalized = codim2_lc_hat_iikk_normalized(&q, NORMALIZE_OFFDIAG_TOL)?;
    let m = q.n - 1;
    let mut err = 0.0f64;
    for i in 0..m {
        for k in 0..m {
            if i != k {
                err = err.max((lc_hat.r[(i + 1, i + 1, k + 1, k + 1)] - normalized[(i, k)]).norm());
            }
        }
    }
    out.push(CheckOutcome::at_most("normalized_closed_form", err, CLOSED_FORM_TOL));
    Ok(out)
}

fn same_verdict(a: &HVerdict, b: &HVerdict) -> bool {
    match (a, b) {
        (HVerdict::Constant { c: x }, HVerdict::Constant { c: y }) => (x - y).abs() <= NORMALIZE_TOL,
        (HVerdict::NotConstant { .. }, HVerdict::NotConstant { .. }) => true,
        _ => false,
    }
}

/// Largest entrywise error of the almost abelian closed forms against the generic engine.
pub fn aa_closed_form_error(p: &AlmostAbelianParams, alg: &HermitianLieAlgebra) -> Result<f64> {
    let cf = aa_closed_forms(p)?;
    let t = chern_torsion(alg).t;
    let r = chern_curvature(alg).r;
    let mut err = (r[(0, 0, 0, 0)].re - cf.r_1111).abs();
    for i in 1..p.n {
        err = err.max((t[(0, 0, i)] - cf.t_1_1i[i - 1]).norm());
        err = err.max((r[(0, 0, i, 0)] - cf.r_11i1[i - 1]).norm());
        for j in 1..p.n {
            err = err.max((t[(j, 0, i)] - cf.t_j_1i[(i - 1, j - 1)]).norm());
            err = err.max((r[(0, 0, i, j)] - cf.r_11ij[(i - 1, j - 1)]).norm());
        }
    }
    Ok(err)
}

/// Largest entrywise error of the codimension-2 closed forms, given the torsion and the
/// Chern and Levi-Civita `(i, j̄, k, l̄)` tensors of the built algebra.
pub fn codim2_closed_form_error(p: &Codim2Params, t: &CTensor3, chern: &Curv4, lc: &Curv4) -> Result<f64> {
    let n = p.n;
    let cf = codim2_closed_forms(p)?;
    let (r, rhat) = (&chern.r, symmetrize(chern).r);
    let (lr, lhat) = (&lc.r, symmetrize(lc).r);
    let mut err = (r[(0, 0, 0, 0)].re - cf.r_1111).abs().max((lr[(0, 0, 0, 0)].re - cf.lc_1111).abs());
    let (mut sum, mut lc_sum) = (0.0, 0.0);
    for i in 1..n {
        sum += rhat[(0, 0, i, i)].re;
        lc_sum += lhat[(0, 0, i, i)].re;
        err = err.max((t[(0, 0, i)] - cf.t_1_1i[i - 1]).norm());
        err = err.max((r[(i, i, i, i)].re - cf.r_iiii[i - 1]).abs());
        err = err.max((lr[(i, i, i, i)].re - cf.lc_iiii[i - 1]).abs());
        for j in 1..n {
            err = err.max((t[(0, i, j)] - cf.t_1_ij[(i - 1, j - 1)]).norm());
            err = err.max((t[(j, 0, i)] - cf.t_j_1i[(i - 1, j - 1)]).norm());
            err = err.max((rhat[(0, 0, i, j)] - cf.rhat_11ij[(i - 1, j - 1)]).norm());
            err = err.max((rhat[(i, i, j, j)] - cf.rhat_iikk[(i - 1, j - 1)]).norm());
            if i != j {
                err = err.max((lhat[(i, i, j, j)] - cf.lc_hat_iikk[(i - 1, j - 1)]).norm());
            }
        }
    }
    err = err.max((sum - cf.rhat_11ii_sum).abs()).max((lc_sum - cf.lc_hat_11ii_sum).abs());
    Ok(err)
}

/// `max |T^l_{ik,j̄} - (R_{k j̄ i l̄} - R_{i j̄ k l̄})|`.
pub fn torsion_derivative_identity_residual(alg: &HermitianLieAlgebra) -> f64 {
    let n = alg.n();
    let tdb = chern_torsion(alg).tdbar;
    let r = chern_curvature(alg).r;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let rhs = r[(k, j, i, l)] - r[(i, j, k, l)];
                    worst = worst.max((tdb[(l, i, k, j)] - rhs).norm());
                }
            }
        }
    }
    worst
}

/// `R̂^r = R̂ - (1/8) Σ_s (T^j_is conj(T^k_ls) + T^l_ks conj(T^i_js) + T^l_is conj(T^k_js) + T^j_ks conj(T^i_ls))`,
/// with `t[(j, i, k)] = T^j_ik`.
pub fn lc_correction_residual(chern: &Curv4, lc: &Curv4, t: &CTensor3) -> f64 {
    let n = chern.n();
    let rhat = symmetrize(chern).r;
    let lhat = symmetrize(lc).r;
    let predicted = CTensor4::from_fn(n, |i, j, k, l| {
        let corr: Complex64 = (0..n)
            .map(|s| {
                t[(j, i, s)] * t[(k, l, s)].conj()
                    + t[(l, k, s)] * t[(i, j, s)].conj()
                    + t[(l, i, s)] * t[(k, j, s)].conj()
                    + t[(j, k, s)] * t[(i, l, s)].conj()
            })
            .sum();
        rhat[(i, j, k, l)] - corr * 0.125
    });
    lhat.max_abs_diff(&predicted)
}

/// The two diagonal relations between `R^r` and `R`:
/// `R^r_{i ī i ī} = R_{i ī i ī} - (1/2) Σ_s |T^i_is|^2` and
/// `R̂^r_{i ī k k̄} = R̂_{i ī k k̄} - (1/8) Σ_s (|T^i_ks|^2 + |T^k_is|^2 + 2 Re(T^i_is conj(T^k_ks)))`.
pub fn diagonal_identity_residual(chern: &Curv4, lc: &Curv4, t: &CTensor3) -> f64 {
    let n = chern.n();
    let rhat = symmetrize(chern).r;
    let lhat = symmetrize(lc).r;
    let mut worst = 0.0f64;
    for i in 0..n {
        let corr: f64 = (0..n).map(|s| t[(i, i, s)].norm_sqr()).sum();
        worst = worst.max((lc.r[(i, i, i, i)].re - (chern.r[(i, i, i, i)].re - 0.5 * corr)).abs());
        for k in 0..n {
            let corr: f64 = (0..n)
                .map(|s| {
                    t[(i, k, s)].norm_sqr() + t[(k, i, s)].norm_sqr() + 2.0 * (t[(i, i, s)] * t[(k, k, s)].conj()).re
                })
                .sum();
            worst = worst.max((lhat[(i, i, k, k)] - (rhat[(i, i, k, k)] - 0.125 * corr)).norm());
        }
    }
    worst
}

/// `R̂_{i ī k k̄}` written directly in the structure constants `D`.
pub fn symmetrized_pair_from_d(alg: &HermitianLieAlgebra, i: usize, k: usize) -> f64 {
    let d = alg.d();
    let sum: f64 = (0..alg.n())
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
    0.25 * sum
}

pub fn symmetrized_pair_residual(alg: &HermitianLieAlgebra) -> f64 {
    let n = alg.n();
    let rhat = symmetrize(&chern_curvature(alg)).r;
    let mut worst = 0.0f64;
    for i in 0..n {
        for k in 0..n {
            worst = worst.max((rhat[(i, i, k, k)].re - symmetrized_pair_from_d(alg, i, k)).abs());
        }
    }
    worst
}

/// `(| |Zᵗ - Z|^2 - 2|Z|^2 + 2 tr(Z Z̄) |, | |Zᵗ + Z|^2 - 2|Z|^2 - 2 tr(Z Z̄) |)`.
pub fn transpose_identity_residuals(z: &CMat) -> (f64, f64) {
    let zt = z.transpose();
    let z2 = z.frob_norm().powi(2);
    let tr = (z * &z.conj()).trace().expect("Z is square");
    let minus = (Complex64::new((&zt - z).frob_norm().powi(2) - 2.0 * z2, 0.0) + tr * 2.0).norm();
    let plus = (Complex64::new((&zt + z).frob_norm().powi(2) - 2.0 * z2, 0.0) - tr * 2.0).norm();
    (minus, plus)
}

/// `max |H(x) - H^r(x)|` over the probe vectors.
pub fn probe_separation(chern: &Curv4, lc: &Curv4) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in probe_vectors(chern.n()) {
        worst = worst.max((hol_sect(chern, &x)? - hol_sect(lc, &x)?).abs());
    }
    Ok(worst)
}

/// Sampling plan of a fuzz campaign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Campaign {
    pub family: Family,
    /// Codimension-2 scheme; alternates `A`, `B` by index when unset.
    pub scheme: Option<Scheme>,
    /// Force every sample to be unimodular; otherwise about half are.
    pub unimodular: bool,
    /// Complex dimension; cycles through `2, 3, 4` when unset.
    pub dim: Option<usize>,
    pub seed: u64,
}

/// Sample `index` of the campaign. Deterministic in `(campaign, index)` alone.
pub fn draw_sample(campaign: &Campaign, index: u64) -> Result<Instance> {
    let mut rng = sample_rng(campaign.seed, index);
    let n = campaign.dim.unwrap_or(2 + (index % 3) as usize);
    if n < 2 {
        return Err(Error::Usage(format!("samples need n >= 2, got {n}")));
    }
    let unimodular = campaign.unimodular || rng.random_bool(0.5);
    match campaign.family {
        Family::AlmostAbelian => {
            let variant = match rng.random_range(0..10) {
                0..6 => AaVariant::Generic,
                6..8 => AaVariant::ChernFlat,
                _ => AaVariant::KahlerFlat,
            };
            Ok(Instance::AlmostAbelian(sample_almost_abelian(n, variant, unimodular, &mut rng)?))
        }
        Family::Codim2 => {
            let scheme = campaign.scheme.unwrap_or(if index.is_multiple_of(2) { Scheme::A } else { Scheme::B });
            let opts = SampleOptions {
                unimodular,
                rotate: rng.random_bool(0.7),
                lambda: (scheme == Scheme::B && rng.random_bool(0.1)).then_some(0.0),
                zero_v: rng.random_bool(0.3),
                equal_xy: scheme == Scheme::A && rng.random_bool(0.25),
            };
            Ok(Instance::Codim2(sample_codim2(n, scheme, &mut rng, opts)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::hyperbolic_example_params;
    use crate::linalg::random::complex_gaussian_matrix;
    use crate::DEFAULT_TOL;

    fn campaign(family: Family, unimodular: bool) -> Campaign {
        Campaign { family, scheme: None, unimodular, dim: None, seed: 11 }
    }

    #[test]
    fn aa_samples_pass() {
        for k in 0..40 {
            let inst = draw_sample(&campaign(Family::AlmostAbelian, false), k).unwrap();
            let rep = check_instance(&inst, DEFAULT_TOL).unwrap();
            assert!(rep.passed(), "sample {k}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn codim2_samples_pass() {
        for k in 0..40 {
            let inst = draw_sample(&campaign(Family::Codim2, false), k).unwrap();
            let rep = check_instance(&inst, DEFAULT_TOL).unwrap();
            assert!(rep.passed(), "sample {k}: {:?}", rep.failures().collect::<Vec<_>>());
            assert!(rep.check("normalized_closed_form").is_some());
        }
    }

    #[test]
    fn unimodular_campaign_runs_lc_dichotomy() {
        let inst = draw_sample(&campaign(Family::AlmostAbelian, true), 0).unwrap();
        let rep = check_instance(&inst, DEFAULT_TOL).unwrap();
        assert!(rep.unimodular);
        assert!(rep.check("lc_dichotomy").unwrap().pass);
    }

    #[test]
    fn draws_are_reproducible() {
        let c = campaign(Family::Codim2, false);
        assert_eq!(draw_sample(&c, 5).unwrap(), draw_sample(&c, 5).unwrap());
        assert_ne!(draw_sample(&c, 5).unwrap(), draw_sample(&c, 6).unwrap());
    }

    #[test]
    fn hyperbolic_example_is_a_negative_constant_witness() {
        let inst = Instance::AlmostAbelian(hyperbolic_example_params(3).unwrap());
        let rep = check_instance(&inst, DEFAULT_TOL).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep.negative_constant_witness && !rep.unimodular && !rep.predicates.is_kahler);
        assert!(rep.check("lc_dichotomy").is_none());
        assert!(rep.check("separation").unwrap().pass);
    }

    #[test]
    fn wrong_closed_form_would_be_caught() {
        let p = hyperbolic_example_params(2).unwrap();
        let mut q = p.clone();
        q.lambda = 2.0;
        let alg = build_almost_abelian_with_tol(&p, DEFAULT_TOL).unwrap();
        assert!(aa_closed_form_error(&q, &alg).unwrap() > 1.0);
    }

    #[test]
    fn dichotomy_logic() {
        let nc = HVerdict::NotConstant { component: (0, 0, 0, 0), deviation: 1.0, c_estimate: 0.0, witness: None };
        assert!(dichotomy_holds(&nc, false, 1e-9));
        assert!(!dichotomy_holds(&nc, true, 1e-9));
        assert!(dichotomy_holds(&HVerdict::Constant { c: 0.0 }, true, 1e-9));
        assert!(!dichotomy_holds(&HVerdict::Constant { c: -2.0 }, false, 1e-9));
    }

    #[test]
    fn transpose_identities_on_random_matrices() {
        let mut rng = sample_rng(3, 0);
        for m in 1..=5 {
            let (a, b) = transpose_identity_residuals(&complex_gaussian_matrix(m, m, &mut rng));
            assert!(a < 1e-12 && b < 1e-12);
        }
    }

    #[test]
    fn instance_serde_round_trip() {
        let inst = draw_sample(&campaign(Family::Codim2, false), 1).unwrap();
        let text = serde_json::to_string(&inst).unwrap();
        assert!(text.contains("\"family\":\"codim2\""));
        assert_eq!(serde_json::from_str::<Instance>(&text).unwrap(), inst);
    }
}
