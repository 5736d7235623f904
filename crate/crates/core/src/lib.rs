//! Curvature of Lie algebras carrying a left-invariant Hermitian structure.
//!
//! An algebra is stored through its complex structure constants `(C, D)` in a unitary
//! frame of the (1,0) part. From these the crate computes Chern torsion and curvature,
//! Levi-Civita curvature (from the Chern data and independently by the Koszul formula),
//! holomorphic sectional curvature and a tensorial constancy test.

pub mod algebra;
pub mod curvature;
pub mod error;
pub mod families;
pub mod linalg;
pub mod verify;

pub use algebra::{HermitianLieAlgebra, JacobiResidual, RealLieData};
pub use curvature::{Curv4, CurvKind, HVerdict, LcBlocks, Predicates, RealCurv, TorsionTensor};
pub use error::{Error, Result};
pub use families::{AlmostAbelianParams, Codim2Params, Scheme};
pub use linalg::{CMat, CTensor3, CTensor4};
pub use verify::{check_instance, draw_sample, Campaign, CheckOutcome, Family, Instance, SampleReport};

/// Default relative tolerance; checks compare against `DEFAULT_TOL * (1 + scale)`.
pub const DEFAULT_TOL: f64 = 1e-9;
