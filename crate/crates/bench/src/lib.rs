//! Fixed workloads shared by the benchmarks.

use curvlab_core::families::{sample_almost_abelian, sample_codim2, sample_rng, AaVariant, SampleOptions};
use curvlab_core::{AlmostAbelianParams, Codim2Params, Scheme};

pub fn aa_workload(n: usize) -> AlmostAbelianParams {
    sample_almost_abelian(n, AaVariant::Generic, false, &mut sample_rng(1, n as u64)).expect("n >= 2")
}

pub fn codim2_workload(n: usize) -> Codim2Params {
    let opts = SampleOptions { rotate: true, ..Default::default() };
    sample_codim2(n, Scheme::B, &mut sample_rng(2, n as u64), opts).expect("n >= 2")
}
