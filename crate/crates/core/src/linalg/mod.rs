//! Exact dense linear algebra over a [`Scalar`](crate::Scalar) field.

mod block;
mod elim;
mod kron;
mod mat;
mod tensor;

pub use block::BlockLinearMap;
pub use elim::Rref;
pub use kron::{kron, kron_identity, perm_matrix};
pub use mat::Mat;
pub use tensor::{Tensor, TensorMat};
