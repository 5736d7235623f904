//! Dense complex matrices and tensors, plus the Takagi factorization.

mod cmat;
pub mod random;
mod takagi;
mod tensor;

pub use cmat::CMat;
pub use takagi::{takagi, takagi_with_tol, unitary_residual, Takagi};
pub use tensor::{CTensor3, CTensor4};
