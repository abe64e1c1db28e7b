//! Subspaces of Q^n with a canonical RREF basis.
//!
//! Two subspaces are equal iff their RREF bases are identical, so equality,
//! containment and all downstream "same space" tests are deterministic.

use thiserror::Error;

use super::matrix::{kernel_basis_rows, solve, Matrix};
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    /// Rows in reduced row echelon form, no zero rows.
    basis: Matrix,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("first subspace is not contained in the second")]
    NotContained,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Span of the given row vectors, canonicalized.
    pub fn from_spanning(ambient_dim: usize, rows: &[Vec<Rat>]) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == ambient_dim),
            "ambient dimension mismatch"
        );
        if rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let red = Matrix::from_rows(rows.to_vec()).rref();
        let basis = Matrix::from_fn(red.rank, ambient_dim, |r, c| red.matrix[(r, c)].clone());
        Subspace { ambient_dim, basis }
    }

    pub fn from_matrix_rows(m: &Matrix) -> Self {
        Subspace::from_spanning(
            m.cols(),
            &(0..m.rows()).map(|r| m.row_vec(r)).collect::<Vec<_>>(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.dim()).map(|r| self.basis.row_vec(r)).collect()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        // v is in the row space iff appending it does not raise the rank.
        if v.iter().all(Rat::is_zero) {
            return true;
        }
        let stacked = self.basis.vstack(&Matrix::from_rows(vec![v.to_vec()]));
        stacked.rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_rows().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is outside.
    pub fn coords_of(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        solve(&self.basis.transpose(), v)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Ok(Subspace::from_spanning(self.ambient_dim, &rows))
    }

    /// Intersection via the kernel construction: a vector lies in both row
    /// spaces iff it is a combination `a*U = b*V`, i.e. `(a, -b)` lies in the
    /// left kernel of the stacked basis matrix.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let stacked = self.basis.vstack(&other.basis);
        let left_kernel = kernel_basis_rows(&stacked.transpose());
        let rows: Vec<Vec<Rat>> = left_kernel
            .iter()
            .map(|coeffs| {
                let head = &coeffs[..self.dim()];
                self.basis.apply_row(head)
            })
            .collect();
        Ok(Subspace::from_spanning(self.ambient_dim, &rows))
    }

    /// A deterministic complement W with `self ⊕ W = within`. The complement
    /// is spanned by the rows of `within` whose index is a non-pivot column
    /// of `self` expressed in `within`-coordinates; for `within` the full
    /// space this is exactly the non-pivot standard coordinates.
    pub fn complement_within(&self, within: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(within)?;
        if !within.contains_subspace(self) {
            return Err(SubspaceError::NotContained);
        }
        let in_coords: Vec<Vec<Rat>> = self
            .basis_rows()
            .iter()
            .map(|v| within.coords_of(v).expect("containment checked"))
            .collect();
        let red = Matrix::from_rows(if in_coords.is_empty() {
            vec![vec![Rat::zero(); within.dim()]]
        } else {
            in_coords
        })
        .rref();
        let rows: Vec<Vec<Rat>> = (0..within.dim())
            .filter(|c| !red.pivot_cols.contains(c))
            .map(|c| within.basis.row_vec(c))
            .collect();
        Ok(Subspace::from_spanning(self.ambient_dim, &rows))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(SubspaceError::DimensionMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        Ok(())
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of Q^{}) {:?}",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}
