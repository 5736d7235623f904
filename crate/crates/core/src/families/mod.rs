//! The almost abelian family and the family with a `J`-invariant abelian ideal of
//! codimension 2, with closed forms, normalization and samplers.

mod almost_abelian;
mod codim2;
mod example;
mod sampling;

pub use almost_abelian::{
    aa_classify, aa_closed_forms, build_almost_abelian, build_almost_abelian_with_tol, AaClosedForms,
    AlmostAbelianParams, FamilyClass,
};
pub use codim2::{
    admissible_normalize, build_codim2, codim2_classify, codim2_closed_forms, codim2_lc_hat_iikk_normalized,
    Codim2ClosedForms, Codim2Params, ConstraintResidual,
};
pub use example::{hyperbolic_example, hyperbolic_example_params, hyperbolic_example_real, mixed_sign_example_real};
pub use sampling::{
    sample_almost_abelian, sample_codim2, sample_rng, sample_unimodular_aa, AaVariant, SampleOptions, Scheme,
};
