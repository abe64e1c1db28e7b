//! Dense matrices over the rationals with exact elimination.
//!
//! Convention used throughout the crate: vectors are rows, and a matrix acts
//! on a row vector from the right (`v * m`). Kernels are therefore spaces of
//! row vectors `v` with `m * v^T = 0`.

use std::fmt;
use std::ops::{Index, IndexMut};

use super::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Row-reduction outcome: the reduced matrix, its pivot columns and rank.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Parse from i64 grids; test and constructor convenience.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Rat> {
        self.row(r).to_vec()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Rat]> {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] + &other[(r, c)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] - &other[(r, c)])
    }

    pub fn scale(&self, k: &Rat) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] * k)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).map(|k| &self[(r, k)] * &other[(k, c)]).sum()
        })
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_row(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.rows, "row vector length mismatch");
        (0..self.cols)
            .map(|c| {
                v.iter()
                    .zip(0..self.rows)
                    .map(|(x, r)| x * &self[(r, c)])
                    .sum()
            })
            .collect()
    }

    /// `self * v^T` for a column vector `v`, returned flat.
    pub fn apply_col(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "column vector length mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation, `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let red = self.hstack(&Matrix::identity(n)).rref();
        if red.rank < n || red.pivot_cols.iter().take(n).cloned().ne(0..n) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.matrix[(r, n + c)].clone()))
    }

    /// Reduced row echelon form with pivot columns and rank. Exact; the
    /// pivot entry of every nonzero row is 1 and is the only nonzero entry
    /// in its column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = &m[(r, c)] - &(&factor * &m[(row, c)]);
                    m[(r, c)] = v;
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            rank: pivot_cols.len(),
            pivot_cols,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Basis of `{v : m * v^T = 0}` as rows; dim = cols - rank. The basis vectors
/// carry 1 in their free coordinate and are ordered by free column index.
pub fn kernel_basis_rows(m: &Matrix) -> Vec<Vec<Rat>> {
    let red = m.rref();
    let n = m.cols();
    let mut pivot_of_col = vec![None; n];
    for (r, &c) in red.pivot_cols.iter().enumerate() {
        pivot_of_col[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| pivot_of_col[*c].is_none()) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (c, pr) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pr {
                v[c] = -red.matrix[(*r, free)].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// A particular solution `x` of `m * x^T = rhs^T`, or `None` when the system
/// is inconsistent (rank of the augmented matrix exceeds rank of `m`).
pub fn solve(m: &Matrix, rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rhs.len(), m.rows(), "right-hand side length mismatch");
    let aug = m.hstack(&Matrix::from_fn(m.rows(), 1, |r, _| rhs[r].clone()));
    let red = aug.rref();
    if red.pivot_cols.iter().any(|&c| c == m.cols()) {
        return None;
    }
    let mut x = vec![Rat::zero(); m.cols()];
    for (r, &c) in red.pivot_cols.iter().enumerate() {
        x[c] = red.matrix[(r, m.cols())].clone();
    }
    Some(x)
}

/// Certificate of inconsistency for `m * x^T = rhs^T`: a row vector `y` with
/// `y * m = 0` but `y . rhs != 0`. Returns `None` when the system is solvable.
pub fn inconsistency_witness(m: &Matrix, rhs: &[Rat]) -> Option<Vec<Rat>> {
    for y in kernel_basis_rows(&m.transpose()) {
        let dot: Rat = y.iter().zip(rhs).map(|(a, b)| a * b).sum();
        if !dot.is_zero() {
            return Some(y);
        }
    }
    None
}
