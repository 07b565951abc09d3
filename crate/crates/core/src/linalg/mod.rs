//! Exact dense linear algebra over ℚ and GF(p).

mod matrix;
mod subspace;

pub use matrix::{Matrix, Rref};
pub(crate) use matrix::dot;
pub use subspace::{SubspaceBasis, SubspaceRelation, SubspaceView};
