use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use curvlab_bench::{aa_workload, codim2_workload};
use curvlab_core::curvature::{
    chern_curvature, chern_torsion, constant_h_detect, levi_civita_from_chern, levi_civita_koszul,
};
use curvlab_core::families::{build_almost_abelian, build_codim2};
use curvlab_core::linalg::random::random_complex_symmetric;
use curvlab_core::linalg::takagi;
use curvlab_core::verify::check_instance;
use curvlab_core::Instance;

fn curvature(c: &mut Criterion) {
    let mut group = c.benchmark_group("curvature");
    for n in [2usize, 4, 6] {
        let alg = build_almost_abelian(&aa_workload(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("chern", n), &alg, |b, alg| b.iter(|| chern_curvature(black_box(alg))));
        group.bench_with_input(BenchmarkId::new("torsion", n), &alg, |b, alg| b.iter(|| chern_torsion(black_box(alg))));
        group.bench_with_input(BenchmarkId::new("lc_from_chern", n), &alg, |b, alg| {
            b.iter(|| levi_civita_from_chern(black_box(alg)))
        });
        group.bench_with_input(BenchmarkId::new("lc_koszul", n), &alg, |b, alg| {
            b.iter(|| levi_civita_koszul(black_box(alg)).complex_blocks())
        });
        let r = chern_curvature(&alg);
        group.bench_with_input(BenchmarkId::new("constant_h_detect", n), &r, |b, r| {
            b.iter(|| constant_h_detect(black_box(r), 1e-9))
        });
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    for n in [2usize, 4, 6] {
        let p = codim2_workload(n);
        group.bench_with_input(BenchmarkId::new("codim2_jacobi", n), &p, |b, p| {
            b.iter(|| build_codim2(black_box(p), 1e-9))
        });
    }
    group.finish();
}

fn takagi_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("takagi");
    let mut rng = curvlab_core::families::sample_rng(3, 0);
    for m in [2usize, 4, 8] {
        let s = random_complex_symmetric(m, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(m), &s, |b, s| b.iter(|| takagi(black_box(s))));
    }
    group.finish();
}

fn fuzz_sample(c: &mut Criterion) {
    let inst = Instance::Codim2(codim2_workload(3));
    c.bench_function("check_instance/codim2_n3", |b| b.iter(|| check_instance(black_box(&inst), 1e-9)));
}

criterion_group!(benches, curvature, construction, takagi_bench, fuzz_sample);
criterion_main!(benches);
