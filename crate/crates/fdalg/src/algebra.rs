//! Finite-dimensional associative unital algebras over Q, presented by
//! structure constants.
//!
//! `mult[i][j][k]` is the coefficient of basis element `k` in the product
//! `a_i * a_j`. Multiplication matrices use the column convention: for an
//! element `a`, `left_mult_matrix(a) * x^T` are the coordinates of `a * x`,
//! which makes `L` a homomorphism and `R` an anti-homomorphism into matrices.

use std::sync::Arc;

use thiserror::Error;

use crate::exactla::{kernel_basis, solve, Matrix, Rat, Subspace};

#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `mult[i][j][k]`: coefficient of `a_k` in `a_i * a_j`.
    pub mult: Vec<Vec<Vec<Rat>>>,
    /// Coefficient vector of the unity.
    pub one: Vec<Rat>,
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("unity fails on basis element {0}")]
    UnityViolation(usize),
    #[error("structure constant tensor has wrong shape")]
    ShapeViolation,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("operation refuses the zero algebra")]
    ZeroAlgebra,
}

/// Which side an element multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulSide {
    Left,
    Right,
}

impl Algebra {
    pub fn new(
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<Rat>>>,
        one: Vec<Rat>,
    ) -> Result<Arc<Self>, AlgebraError> {
        let dim = basis_names.len();
        let ok_shape = mult.len() == dim
            && mult
                .iter()
                .all(|p| p.len() == dim && p.iter().all(|r| r.len() == dim))
            && one.len() == dim;
        if !ok_shape {
            return Err(AlgebraError::ShapeViolation);
        }
        let alg = Algebra {
            dim,
            basis_names,
            mult,
            one,
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    /// Checks associativity on all basis triples and the two-sided unity law.
    /// Reports the first violation with its basis indices.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul_coeffs(&self.basis_coeffs(i), &self.basis_coeffs(j));
                for k in 0..self.dim {
                    let left = self.mul_coeffs(&ij, &self.basis_coeffs(k));
                    let jk = self.mul_coeffs(&self.basis_coeffs(j), &self.basis_coeffs(k));
                    let right = self.mul_coeffs(&self.basis_coeffs(i), &jk);
                    if left != right {
                        return Err(AlgebraError::AssociativityViolation(i, j, k));
                    }
                }
            }
        }
        for i in 0..self.dim {
            let b = self.basis_coeffs(i);
            if self.mul_coeffs(&self.one, &b) != b || self.mul_coeffs(&b, &self.one) != b {
                return Err(AlgebraError::UnityViolation(i));
            }
        }
        Ok(())
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.dim == 0
    }

    pub fn basis_coeffs(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    /// Coefficient-level product; the workhorse behind `Element::mul`.
    pub fn mul_coeffs(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = vec![Rat::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (k, out_k) in out.iter_mut().enumerate() {
                    if !self.mult[i][j][k].is_zero() {
                        *out_k += &(&s * &self.mult[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a` in the column convention.
    pub fn left_mult_matrix(&self, a: &[Rat]) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| {
            (0..self.dim).map(|i| &a[i] * &self.mult[i][j][k]).sum()
        })
    }

    /// Matrix of right multiplication by `a` in the column convention.
    pub fn right_mult_matrix(&self, a: &[Rat]) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| {
            (0..self.dim).map(|i| &a[i] * &self.mult[j][i][k]).sum()
        })
    }

    /// Left and right regular representations on all basis elements.
    /// `L[i] * L[j] = sum_k c[i][j][k] L[k]` and
    /// `R[i] * R[j] = sum_k c[j][i][k] R[k]`.
    pub fn regular_reps(&self) -> (Vec<Matrix>, Vec<Matrix>) {
        let l = (0..self.dim)
            .map(|i| self.left_mult_matrix(&self.basis_coeffs(i)))
            .collect();
        let r = (0..self.dim)
            .map(|i| self.right_mult_matrix(&self.basis_coeffs(i)))
            .collect();
        (l, r)
    }

    /// Span of all `a_i a_j - a_j a_i`, with a projection onto the canonical
    /// complement (non-pivot standard coordinates) and its section.
    pub fn commutator_subspace(&self) -> CommutatorData {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let ij = self.mul_coeffs(&self.basis_coeffs(i), &self.basis_coeffs(j));
                let ji = self.mul_coeffs(&self.basis_coeffs(j), &self.basis_coeffs(i));
                let diff: Vec<Rat> = ij.iter().zip(&ji).map(|(x, y)| x - y).collect();
                rows.push(diff);
            }
        }
        let space = Subspace::from_spanning(self.dim, &rows);
        let (projection, section) = complement_maps(&space);
        CommutatorData {
            space,
            projection,
            section,
        }
    }

    /// `{z : z a_i = a_i z for all i}` as a subspace.
    pub fn center(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        let (l, r) = self.regular_reps();
        let mut stacked = l[0].sub(&r[0]);
        for i in 1..self.dim {
            stacked = stacked.vstack(&l[i].sub(&r[i]));
        }
        kernel_basis(&stacked)
    }

    pub fn is_central(&self, a: &[Rat]) -> bool {
        self.left_mult_matrix(a) == self.right_mult_matrix(a)
    }
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {}, basis {:?})", self.dim, self.basis_names)
    }
}

/// Commutator subspace `[A, A]` together with the canonical projection
/// `A -> A/[A,A]` (row convention, `v * projection`) and its section.
pub struct CommutatorData {
    pub space: Subspace,
    pub projection: Matrix,
    pub section: Matrix,
}

/// Projection/section pair for the canonical complement of `space`, the
/// complement being spanned by non-pivot standard coordinates.
pub(crate) fn complement_maps(space: &Subspace) -> (Matrix, Matrix) {
    let n = space.ambient_dim();
    let complement = space
        .complement_within(&Subspace::full(n))
        .expect("complement within the full space always exists");
    let q = complement.dim();
    // Invertible basis [space rows; complement rows]; coordinates in it are
    // v * B^{-1}, and the projection keeps the last q of them.
    let b = if space.is_zero() {
        complement.basis().clone()
    } else if q == 0 {
        space.basis().clone()
    } else {
        space.basis().vstack(complement.basis())
    };
    let b_inv = b.inverse().expect("basis matrix is invertible");
    let projection = Matrix::from_fn(n, q, |r, c| b_inv[(r, space.dim() + c)].clone());
    let section = complement.basis().clone();
    (projection, section)
}

#[derive(Clone)]
pub struct Element {
    algebra: Arc<Algebra>,
    pub coeffs: Vec<Rat>,
}

impl Element {
    pub fn new(algebra: &Arc<Algebra>, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len(), algebra.dim, "coefficient length mismatch");
        Element {
            algebra: Arc::clone(algebra),
            coeffs,
        }
    }

    pub fn from_i64(algebra: &Arc<Algebra>, coeffs: &[i64]) -> Self {
        Element::new(algebra, coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn basis(algebra: &Arc<Algebra>, i: usize) -> Self {
        Element::new(algebra, algebra.basis_coeffs(i))
    }

    pub fn one(algebra: &Arc<Algebra>) -> Self {
        Element::new(algebra, algebra.one.clone())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Element::new(algebra, vec![Rat::zero(); algebra.dim])
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn mul(&self, other: &Element) -> Element {
        self.expect_same_algebra(other);
        Element::new(
            &self.algebra,
            self.algebra.mul_coeffs(&self.coeffs, &other.coeffs),
        )
    }

    pub fn add(&self, other: &Element) -> Element {
        self.expect_same_algebra(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Element::new(&self.algebra, coeffs)
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.expect_same_algebra(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Element::new(&self.algebra, coeffs)
    }

    pub fn scale(&self, k: &Rat) -> Element {
        Element::new(&self.algebra, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut k: usize) -> Element {
        let mut acc = Element::one(&self.algebra);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn is_central(&self) -> bool {
        self.algebra.is_central(&self.coeffs)
    }

    fn expect_same_algebra(&self, other: &Element) {
        assert!(
            Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra,
            "mixed-algebra operands"
        );
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Element {}

impl std::fmt::Debug for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, self.algebra.basis_names[i])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A subspace verified closed under multiplication by every basis element
/// on both sides.
#[derive(Clone)]
pub struct Ideal {
    algebra: Arc<Algebra>,
    pub space: Subspace,
}

impl Ideal {
    pub fn new(algebra: &Arc<Algebra>, space: Subspace) -> Result<Self, AlgebraError> {
        assert_eq!(space.ambient_dim(), algebra.dim);
        for v in space.basis_rows() {
            for i in 0..algebra.dim {
                let b = algebra.basis_coeffs(i);
                if !space.contains(&algebra.mul_coeffs(&b, &v))
                    || !space.contains(&algebra.mul_coeffs(&v, &b))
                {
                    return Err(AlgebraError::NotAnIdeal);
                }
            }
        }
        Ok(Ideal {
            algebra: Arc::clone(algebra),
            space,
        })
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Ideal {
            algebra: Arc::clone(algebra),
            space: Subspace::zero(algebra.dim),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Span of all pairwise products of the two spaces' basis vectors.
    pub fn product_space(algebra: &Algebra, a: &Subspace, b: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for x in a.basis_rows() {
            for y in b.basis_rows() {
                rows.push(algebra.mul_coeffs(&x, &y));
            }
        }
        Subspace::from_spanning(algebra.dim, &rows)
    }

    /// True when some power of the ideal vanishes (computed by repeated
    /// squaring of the spanning space).
    pub fn is_nilpotent(&self) -> bool {
        let mut current = self.space.clone();
        loop {
            if current.is_zero() {
                return true;
            }
            let next = Ideal::product_space(&self.algebra, &current, &current);
            if next.dim() >= current.dim() {
                return false;
            }
            current = next;
        }
    }

    /// Smallest t with (ideal)^t = 0, or None when the ideal is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut t = 1usize;
        let mut current = self.space.clone();
        while !current.is_zero() {
            let next = Ideal::product_space(&self.algebra, &current, &self.space);
            if next == current {
                return None;
            }
            current = next;
            t += 1;
            if t > self.algebra.dim + 1 {
                return None;
            }
        }
        Some(t)
    }
}

/// Smallest two-sided ideal containing `elements`, by closure iteration.
pub fn ideal_generated_by(algebra: &Arc<Algebra>, elements: &[Element]) -> Ideal {
    let mut space = Subspace::from_spanning(
        algebra.dim,
        &elements
            .iter()
            .map(|e| e.coeffs.clone())
            .collect::<Vec<_>>(),
    );
    loop {
        let mut rows = space.basis_rows();
        for v in space.basis_rows() {
            for i in 0..algebra.dim {
                let b = algebra.basis_coeffs(i);
                rows.push(algebra.mul_coeffs(&b, &v));
                rows.push(algebra.mul_coeffs(&v, &b));
            }
        }
        let next = Subspace::from_spanning(algebra.dim, &rows);
        if next == space {
            return Ideal {
                algebra: Arc::clone(algebra),
                space,
            };
        }
        space = next;
    }
}

/// Kernel of multiplication by `a` from the given side:
/// `MulSide::Left` is `{x : a x = 0}`, `MulSide::Right` is `{x : x a = 0}`.
/// The result must be a two-sided ideal (always true for central `a`).
pub fn annihilator_ideal(
    algebra: &Arc<Algebra>,
    a: &Element,
    side: MulSide,
) -> Result<Ideal, AlgebraError> {
    let m = match side {
        MulSide::Left => algebra.left_mult_matrix(&a.coeffs),
        MulSide::Right => algebra.right_mult_matrix(&a.coeffs),
    };
    Ideal::new(algebra, kernel_basis(&m))
}

/// Annihilator kernel as a plain subspace, with no ideal check.
pub fn annihilator_subspace(algebra: &Algebra, a: &[Rat], side: MulSide) -> Subspace {
    let m = match side {
        MulSide::Left => algebra.left_mult_matrix(a),
        MulSide::Right => algebra.right_mult_matrix(a),
    };
    kernel_basis(&m)
}

/// Quotient algebra by a verified two-sided ideal, on the canonical
/// complement basis (non-pivot standard coordinates of the ideal's RREF).
pub struct QuotientAlgebra {
    pub algebra: Arc<Algebra>,
    /// Row convention: `v * projection` are quotient coordinates of `v`.
    pub projection: Matrix,
    /// Row convention: `q * section` lifts quotient coordinates to A.
    pub section: Matrix,
}

pub fn quotient_algebra(algebra: &Arc<Algebra>, ideal: &Ideal) -> QuotientAlgebra {
    assert!(
        Arc::ptr_eq(algebra, ideal.algebra()) || **algebra == **ideal.algebra(),
        "ideal of a different algebra"
    );
    let (projection, section) = complement_maps(&ideal.space);
    let q = section.rows();
    let names: Vec<String> = ideal
        .space
        .complement_within(&Subspace::full(algebra.dim))
        .expect("complement exists")
        .basis_rows()
        .iter()
        .map(|row| {
            let idx = row
                .iter()
                .position(|c| c.is_one())
                .expect("standard coordinate");
            algebra.basis_names[idx].clone()
        })
        .collect();
    let mut mult = vec![vec![vec![Rat::zero(); q]; q]; q];
    for i in 0..q {
        for j in 0..q {
            let prod = algebra.mul_coeffs(&section.row_vec(i), &section.row_vec(j));
            mult[i][j] = projection.apply_row(&prod);
        }
    }
    let one = projection.apply_row(&algebra.one);
    let quotient = Algebra {
        dim: q,
        basis_names: names,
        mult,
        one,
    };
    debug_assert!(quotient.validate().is_ok() || q == 0);
    QuotientAlgebra {
        algebra: Arc::new(quotient),
        projection,
        section,
    }
}

/// Corner algebra `f A f` for an idempotent `f`, with its embedding back
/// into A. The corner's unity is `f`.
pub struct CornerAlgebra {
    pub algebra: Arc<Algebra>,
    /// Rows are the corner basis expressed in A-coordinates.
    pub embed: Matrix,
}

impl CornerAlgebra {
    /// A-coordinates of a corner element given by corner coordinates.
    pub fn lift(&self, corner_coeffs: &[Rat]) -> Vec<Rat> {
        self.embed.apply_row(corner_coeffs)
    }

    /// Corner coordinates of an A-element lying in the corner subspace.
    pub fn restrict(&self, a_coeffs: &[Rat]) -> Option<Vec<Rat>> {
        solve(&self.embed.transpose(), a_coeffs)
    }
}

pub fn corner_algebra(algebra: &Arc<Algebra>, f: &Element) -> CornerAlgebra {
    assert!(f.is_idempotent(), "corner requires an idempotent");
    let mut rows = Vec::new();
    for i in 0..algebra.dim {
        let b = algebra.basis_coeffs(i);
        let faf = algebra.mul_coeffs(&f.coeffs, &algebra.mul_coeffs(&b, &f.coeffs));
        rows.push(faf);
    }
    let space = Subspace::from_spanning(algebra.dim, &rows);
    algebra_on_subspace(algebra, &space, &f.coeffs)
}

/// Unital subalgebra on a multiplicatively closed subspace containing the
/// ambient unity (the center, for instance).
pub fn subalgebra_on(algebra: &Arc<Algebra>, space: &Subspace) -> CornerAlgebra {
    algebra_on_subspace(algebra, space, &algebra.one)
}

fn algebra_on_subspace(algebra: &Algebra, space: &Subspace, unity: &[Rat]) -> CornerAlgebra {
    let embed = space.basis().clone();
    let q = space.dim();
    let mut mult = vec![vec![vec![Rat::zero(); q]; q]; q];
    for i in 0..q {
        for j in 0..q {
            let prod = algebra.mul_coeffs(&embed.row_vec(i), &embed.row_vec(j));
            mult[i][j] = space
                .coords_of(&prod)
                .expect("subspace closed under product");
        }
    }
    let one = space.coords_of(unity).expect("unity lies in the subspace");
    let names = (0..q).map(|i| format!("c{}", i)).collect();
    let sub = Algebra {
        dim: q,
        basis_names: names,
        mult,
        one,
    };
    debug_assert!(sub.validate().is_ok());
    CornerAlgebra {
        algebra: Arc::new(sub),
        embed,
    }
}
