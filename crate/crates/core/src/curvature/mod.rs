//! Chern and Levi-Civita torsion and curvature of a Hermitian Lie algebra.

mod chern;
mod connection;
mod holomorphic;
mod levi_civita;
mod predicates;

pub use chern::{chern_curvature, symmetrize, Curv4, CurvKind};
pub use connection::{chern_connection, chern_torsion, ChernConnection, TorsionTensor};
pub use holomorphic::{constant_h_detect, hol_sect, probe_vectors, HVerdict, Witness};
pub use levi_civita::{
    koszul_curvature, lc_blocks_from_parts, levi_civita_from_chern, levi_civita_koszul, LcBlocks, RealCurv,
    RealCurvResiduals,
};
pub use predicates::{predicates, Predicates};
