//! Exact rational dense linear algebra kernel used by every other module.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.

mod matrix;
mod rat;
mod subspace;

pub use matrix::{inconsistency_witness, kernel_basis_rows, solve, Matrix, Rref};
pub use rat::{ParseRatError, Rat};
pub use subspace::{Subspace, SubspaceError};

/// Kernel of `m` as a canonical subspace of row vectors.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    Subspace::from_spanning(m.cols(), &kernel_basis_rows(m))
}
