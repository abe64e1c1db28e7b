//! Structure theory: radical, socle, primitive idempotent decomposition
//! with lifting, block grouping, the basic corner algebra eAe, and the
//! symmetric-form search.
//!
//! The radical uses the characteristic-zero trace-form criterion: J(A) is
//! the kernel of t(a, b) = trace(L_a L_b). All searches below (minimal
//! ideal shrinking, witness hunting, symmetric-form hunting) are plain
//! deterministic enumerations so results never depend on randomness.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{
    corner_algebra, quotient_algebra, Algebra, AlgebraError, CornerAlgebra, Element, Ideal, MulSide,
};
use crate::exactla::{kernel_basis, solve, Matrix, Rat, Subspace};
use crate::slf::{slf_basis, GramForm, LinFunc};

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("algebra does not split over Q: {detail}")]
    NotSplitOverQ { detail: String },
    #[error("minimal right ideal search stalled: {log}")]
    ShrinkingStalled { log: String },
    #[error("no invertible witness pair found for idempotent {idempotent} within budget {budget}")]
    WitnessNotFound { idempotent: usize, budget: usize },
    #[error("trace-form kernel is not a nilpotent ideal; input algebra is invalid")]
    RadicalInconsistent,
    #[error("operation refuses the zero algebra")]
    ZeroAlgebra,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Jacobson radical as the kernel of the regular trace form, verified
/// nilpotent and two-sided.
pub fn radical(algebra: &Arc<Algebra>) -> Result<Ideal, StructureError> {
    if algebra.is_zero_algebra() {
        return Err(StructureError::ZeroAlgebra);
    }
    let n = algebra.dim;
    let trace_of_basis: Vec<Rat> = (0..n)
        .map(|k| algebra.left_mult_matrix(&algebra.basis_coeffs(k)).trace())
        .collect();
    let gram = Matrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| &algebra.mult[i][j][k] * &trace_of_basis[k])
            .sum()
    });
    let space = kernel_basis(&gram);
    let ideal = Ideal::new(algebra, space).map_err(|_| StructureError::RadicalInconsistent)?;
    if !ideal.is_nilpotent() {
        return Err(StructureError::RadicalInconsistent);
    }
    Ok(ideal)
}

/// Socle on one side. `MulSide::Right` is the right socle
/// `{a : a J = 0}` (the radical multiplies from the right), `MulSide::Left`
/// the left socle `{a : J a = 0}`.
pub fn socle(algebra: &Algebra, radical: &Ideal, side: MulSide) -> Subspace {
    let rows = radical.space.basis_rows();
    if rows.is_empty() {
        return Subspace::full(algebra.dim);
    }
    let mut stacked: Option<Matrix> = None;
    for j in rows {
        let m = match side {
            MulSide::Right => algebra.right_mult_matrix(&j),
            MulSide::Left => algebra.left_mult_matrix(&j),
        };
        stacked = Some(match stacked {
            None => m,
            Some(s) => s.vstack(&m),
        });
    }
    kernel_basis(&stacked.expect("radical nonempty"))
}

/// Two-sided socle, available when the left and right socles agree.
pub fn socle_ideal(algebra: &Arc<Algebra>, radical: &Ideal) -> Option<Ideal> {
    let right = socle(algebra, radical, MulSide::Right);
    let left = socle(algebra, radical, MulSide::Left);
    if right != left {
        return None;
    }
    Ideal::new(algebra, right).ok()
}

/// Orthogonal primitive idempotents `e_{ij}` summing to 1, grouped into
/// blocks of pairwise isomorphic projectives.
pub struct IdempotentDecomposition {
    pub idempotents: Vec<Element>,
    /// Block index of each idempotent.
    pub block_of: Vec<usize>,
    /// Index into `idempotents` of each block's representative `e_i`.
    pub representatives: Vec<usize>,
}

impl IdempotentDecomposition {
    pub fn block_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn block_members(&self, block: usize) -> Vec<usize> {
        (0..self.idempotents.len())
            .filter(|&i| self.block_of[i] == block)
            .collect()
    }

    /// Exact re-check of orthogonality and completeness.
    pub fn verify(&self, algebra: &Arc<Algebra>) -> bool {
        let mut sum = Element::zero(algebra);
        for e in &self.idempotents {
            sum = sum.add(e);
        }
        if sum != Element::one(algebra) {
            return false;
        }
        for (i, a) in self.idempotents.iter().enumerate() {
            for (j, b) in self.idempotents.iter().enumerate() {
                let prod = a.mul(b);
                let expected = if i == j {
                    a.clone()
                } else {
                    Element::zero(algebra)
                };
                if prod != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Monic minimal polynomial of a square matrix, low-degree coefficients
/// first.
fn minimal_polynomial(m: &Matrix) -> Vec<Rat> {
    let n = m.rows();
    let flat =
        |mat: &Matrix| -> Vec<Rat> { (0..n * n).map(|i| mat[(i / n, i % n)].clone()).collect() };
    let mut powers = vec![Matrix::identity(n)];
    loop {
        let k = powers.len();
        let next = powers.last().unwrap().mul(m);
        // Is m^k a combination of lower powers?
        let cols = Matrix::from_fn(n * n, k, |r, c| flat(&powers[c])[r].clone());
        if let Some(coeffs) = solve(&cols, &flat(&next)) {
            let mut poly: Vec<Rat> = coeffs.iter().map(|c| -c.clone()).collect();
            poly.push(Rat::one());
            return poly;
        }
        powers.push(next);
    }
}

fn poly_to_string(poly: &[Rat]) -> String {
    let mut s = String::new();
    for (d, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !s.is_empty() {
            s.push_str(" + ");
        }
        let _ = write!(s, "({})t^{}", c, d);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn eval_poly(poly: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Divide a monic-friendly polynomial by (t - root); remainder must vanish.
fn deflate(poly: &[Rat], root: &Rat) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); poly.len() - 1];
    let mut carry = Rat::zero();
    for d in (0..poly.len()).rev() {
        let coeff = &poly[d] + &(&carry * root);
        if d == 0 {
            assert!(coeff.is_zero(), "deflation by a non-root");
        } else {
            out[d - 1] = coeff.clone();
        }
        carry = coeff;
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let v = n.abs().to_i64()?;
    if v == 0 {
        return Some(vec![]);
    }
    let mut divs = Vec::new();
    let mut d = 1i64;
    while d * d <= v {
        if v % d == 0 {
            divs.push(d);
            if d != v / d {
                divs.push(v / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    Some(divs)
}

/// All rational roots with multiplicity, plus the nonconstant factor left
/// over when the polynomial does not split over Q.
fn rational_roots(poly: &[Rat]) -> (Vec<Rat>, Option<Vec<Rat>>) {
    let mut p = poly.to_vec();
    let mut roots = Vec::new();
    'outer: while p.len() > 1 {
        while p[0].is_zero() {
            roots.push(Rat::zero());
            p.remove(0);
            if p.len() == 1 {
                return (roots, None);
            }
        }
        // Clear denominators to an integer polynomial.
        let mut denom_lcm = BigInt::from(1);
        for c in &p {
            let d = c.denom();
            let g = num_integer_gcd(&denom_lcm, d);
            denom_lcm = &denom_lcm / &g * d;
        }
        let ints: Vec<BigInt> = p
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let (Some(const_divs), Some(lead_divs)) = (
            small_divisors(&ints[0]),
            small_divisors(ints.last().unwrap()),
        ) else {
            return (roots, Some(p));
        };
        for num in &const_divs {
            for den in &lead_divs {
                for sign in [1i64, -1] {
                    let cand = Rat::from_frac(sign * num, *den);
                    if eval_poly(&p, &cand).is_zero() {
                        roots.push(cand.clone());
                        p = deflate(&p, &cand);
                        continue 'outer;
                    }
                }
            }
        }
        return (roots, Some(p));
    }
    (roots, None)
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    if a.is_zero() {
        BigInt::from(1)
    } else {
        a
    }
}

/// Common eigenspace splitting of a commutative algebra under
/// multiplication by its own basis; components must end up 1-dimensional
/// when the algebra splits over Q.
fn split_commutative_semisimple(z: &Arc<Algebra>) -> Result<Vec<Subspace>, StructureError> {
    let mut components = vec![Subspace::full(z.dim)];
    for t in 0..z.dim {
        let mult = z.left_mult_matrix(&z.basis_coeffs(t));
        let mut next = Vec::new();
        for comp in components {
            if comp.dim() <= 1 {
                next.push(comp);
                continue;
            }
            // Restrict multiplication to the component: rows act from the right.
            let basis = comp.basis();
            let restricted = Matrix::from_fn(comp.dim(), comp.dim(), |r, c| {
                let moved = mult.apply_col(&basis.row_vec(r));
                comp.coords_of(&moved).expect("component is invariant")[c].clone()
            });
            let minpoly = minimal_polynomial(&restricted);
            let (eigenvalues, leftover) = rational_roots(&minpoly);
            if let Some(rem) = leftover {
                return Err(StructureError::NotSplitOverQ {
                    detail: format!(
                        "irrational eigenvalue: minimal polynomial factor {}",
                        poly_to_string(&rem)
                    ),
                });
            }
            let mut seen = Vec::new();
            for ev in eigenvalues {
                if seen.contains(&ev) {
                    continue;
                }
                seen.push(ev.clone());
                let shifted = restricted.sub(&Matrix::identity(comp.dim()).scale(&ev));
                // Row vectors v with v * shifted = 0.
                let eig = kernel_basis(&shifted.transpose());
                let rows: Vec<Vec<Rat>> = eig
                    .basis_rows()
                    .iter()
                    .map(|v| basis.transpose().apply_col(v))
                    .collect();
                next.push(Subspace::from_spanning(z.dim, &rows));
            }
        }
        components = next;
    }
    Ok(components)
}

/// Primitive idempotents of a split semisimple algebra, each tagged with
/// the index of the central primitive idempotent it refines.
fn semisimple_primitive_idempotents(
    s: &Arc<Algebra>,
) -> Result<(Vec<Element>, Vec<usize>, Vec<Element>), StructureError> {
    let center_space = s.center();
    let center = crate::algebra::subalgebra_on(s, &center_space);
    let components = split_commutative_semisimple(&center.algebra)?;
    if components.iter().any(|c| c.dim() != 1) {
        return Err(StructureError::NotSplitOverQ {
            detail: "simultaneous eigenspaces of the center are not all 1-dimensional".to_string(),
        });
    }
    // 1 = sum of its components; each component is a central primitive
    // idempotent because the center is a product of copies of Q.
    let one_z = center.restrict(&s.one).expect("unity lies in the center");
    let mut stacked_rows = Vec::new();
    for c in &components {
        stacked_rows.extend(c.basis_rows());
    }
    let stacked = Matrix::from_rows(stacked_rows);
    let coords = solve(&stacked.transpose(), &one_z).expect("components span the center");
    let mut centrals = Vec::new();
    for (u, comp) in components.iter().enumerate() {
        let z_coords: Vec<Rat> = comp
            .basis()
            .row_vec(0)
            .iter()
            .map(|c| c * &coords[u])
            .collect();
        let e = Element::new(s, center.lift(&z_coords));
        if !e.is_idempotent() || e.is_zero() {
            return Err(StructureError::NotSplitOverQ {
                detail: "central component of the unity is not idempotent".to_string(),
            });
        }
        centrals.push(e);
    }
    let mut idempotents = Vec::new();
    let mut block_of = Vec::new();
    for (block, c) in centrals.iter().enumerate() {
        let corner = corner_algebra(s, c);
        let peeled = peel_primitive_idempotents(&corner.algebra)?;
        for p in peeled {
            idempotents.push(Element::new(s, corner.lift(&p.coeffs)));
            block_of.push(block);
        }
    }
    Ok((idempotents, block_of, centrals))
}

/// Split a semisimple block into primitive idempotents by minimal right
/// ideal shrinking: scan basis elements, then two-term integer
/// combinations, for an element generating a strictly smaller nonzero
/// right ideal; extract the ideal's left identity; recurse on the
/// complementary corner.
fn peel_primitive_idempotents(block: &Arc<Algebra>) -> Result<Vec<Element>, StructureError> {
    if block.dim == 0 {
        return Ok(Vec::new());
    }
    if block.dim == 1 {
        return Ok(vec![Element::one(block)]);
    }
    let right_ideal_of = |r: &[Rat]| -> Subspace {
        let rows: Vec<Vec<Rat>> = (0..block.dim)
            .map(|b| block.mul_coeffs(r, &block.basis_coeffs(b)))
            .collect();
        Subspace::from_spanning(block.dim, &rows)
    };
    let mut current = Subspace::full(block.dim);
    let mut log = String::new();
    loop {
        let dim = current.dim();
        let mut candidates: Vec<Vec<Rat>> = current.basis_rows();
        const COEFFS: [i64; 4] = [1, -1, 2, -2];
        let rows = current.basis_rows();
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                for ci in COEFFS {
                    for cj in COEFFS {
                        let v: Vec<Rat> = rows[i]
                            .iter()
                            .zip(&rows[j])
                            .map(|(a, b)| &(a * &Rat::from_int(ci)) + &(b * &Rat::from_int(cj)))
                            .collect();
                        candidates.push(v);
                    }
                }
            }
        }
        let mut improved = false;
        for r in &candidates {
            if r.iter().all(Rat::is_zero) {
                continue;
            }
            let ideal = right_ideal_of(r);
            if !ideal.is_zero() && ideal.dim() < dim {
                current = ideal;
                improved = true;
                break;
            }
        }
        if !improved {
            let _ = write!(log, "stopped at right ideal of dim {}; ", dim);
            break;
        }
    }
    // Left identity e of the minimal right ideal: x in the ideal with
    // x * y = y for every basis vector y of the ideal.
    let ideal_rows = current.basis_rows();
    let d = current.dim();
    let mut eq_rows = Vec::new();
    let mut rhs = Vec::new();
    for y in &ideal_rows {
        // sum_c x_c (row_c * y) = y, coordinates in the ambient block.
        for coord in 0..block.dim {
            let mut row = vec![Rat::zero(); d];
            for (c, base) in ideal_rows.iter().enumerate() {
                row[c] = block.mul_coeffs(base, y)[coord].clone();
            }
            eq_rows.push(row);
            rhs.push(y[coord].clone());
        }
    }
    let coords = solve(&Matrix::from_rows(eq_rows), &rhs).ok_or_else(|| {
        StructureError::ShrinkingStalled {
            log: format!("{}no left identity in candidate minimal right ideal", log),
        }
    })?;
    let mut e = vec![Rat::zero(); block.dim];
    for (c, base) in ideal_rows.iter().enumerate() {
        for (k, b) in base.iter().enumerate() {
            e[k] = &e[k] + &(b * &coords[c]);
        }
    }
    let e = Element::new(block, e);
    if !e.is_idempotent() {
        return Err(StructureError::ShrinkingStalled {
            log: format!("{}left identity is not idempotent", log),
        });
    }
    // Primitivity over Q requires a 1-dimensional corner.
    let e_corner = corner_algebra(block, &e);
    if e_corner.algebra.dim != 1 {
        return Err(StructureError::NotSplitOverQ {
            detail: format!(
                "primitive idempotent corner has dimension {} > 1 (division algebra block)",
                e_corner.algebra.dim
            ),
        });
    }
    let rest = Element::one(block).sub(&e);
    let mut out = vec![e];
    if rest.is_zero() {
        return Ok(out);
    }
    let rest_corner = corner_algebra(block, &rest);
    for p in peel_primitive_idempotents(&rest_corner.algebra)? {
        out.push(Element::new(block, rest_corner.lift(&p.coeffs)));
    }
    Ok(out)
}

/// Full primitive idempotent decomposition of A: decompose the semisimple
/// quotient, then lift through the radical filtration with the cubic
/// Newton step e <- 3e^2 - 2e^3, orthogonalizing sequentially inside
/// (1 - previous) A (1 - previous).
pub fn primitive_idempotents(
    algebra: &Arc<Algebra>,
) -> Result<IdempotentDecomposition, StructureError> {
    if algebra.is_zero_algebra() {
        return Err(StructureError::ZeroAlgebra);
    }
    let rad = radical(algebra)?;
    let quot = quotient_algebra(algebra, &rad);
    let (semi_idems, block_of, _centrals) = semisimple_primitive_idempotents(&quot.algebra)?;
    // Canonical order: descending lexicographic on the semisimple
    // coordinates, blocks renumbered by first appearance.
    let mut order: Vec<usize> = (0..semi_idems.len()).collect();
    order.sort_by(|&x, &y| semi_idems[y].coeffs.cmp(&semi_idems[x].coeffs));
    let semi_idems: Vec<Element> = order.iter().map(|&x| semi_idems[x].clone()).collect();
    let old_blocks: Vec<usize> = order.iter().map(|&x| block_of[x]).collect();
    let mut renumber: Vec<Option<usize>> = vec![None; old_blocks.len() + 1];
    let mut next_block = 0usize;
    let block_of: Vec<usize> = old_blocks
        .iter()
        .map(|&b| {
            *renumber[b].get_or_insert_with(|| {
                let n = next_block;
                next_block += 1;
                n
            })
        })
        .collect();
    let nil_index = rad.nilpotency_index().unwrap_or(1).max(1);
    let newton_steps = usize::BITS as usize - (nil_index - 1).leading_zeros() as usize + 1;
    let mut lifted: Vec<Element> = Vec::new();
    for semi in &semi_idems {
        let mut previous = Element::zero(algebra);
        for l in &lifted {
            previous = previous.add(l);
        }
        let co = Element::one(algebra).sub(&previous);
        let x0 = Element::new(algebra, quot.section.transpose().apply_col(&semi.coeffs));
        let mut x = co.mul(&x0).mul(&co);
        for _ in 0..newton_steps.max(1) {
            let x2 = x.mul(&x);
            let x3 = x2.mul(&x);
            x = x2
                .scale(&Rat::from_int(3))
                .sub(&x3.scale(&Rat::from_int(2)));
        }
        assert!(
            x.is_idempotent(),
            "idempotent lifting must converge exactly"
        );
        let image = quot.projection.transpose().apply_col(&x.coeffs);
        assert_eq!(
            image, semi.coeffs,
            "lift must project back to the source idempotent"
        );
        lifted.push(x);
    }
    let mut total = Element::zero(algebra);
    for l in &lifted {
        total = total.add(l);
    }
    assert_eq!(
        total,
        Element::one(algebra),
        "lifted idempotents must sum to 1"
    );
    let mut representatives = Vec::new();
    let mut seen = Vec::new();
    for (i, b) in block_of.iter().enumerate() {
        if !seen.contains(b) {
            seen.push(*b);
            representatives.push(i);
        }
    }
    let dec = IdempotentDecomposition {
        idempotents: lifted,
        block_of,
        representatives,
    };
    debug_assert!(dec.verify(algebra));
    Ok(dec)
}

/// Central primitive idempotents of A itself (the block decomposition into
/// indecomposable two-sided ideals): primitive idempotents of the center.
pub fn central_primitive_idempotents(
    algebra: &Arc<Algebra>,
) -> Result<Vec<Element>, StructureError> {
    let center_space = algebra.center();
    let center = crate::algebra::subalgebra_on(algebra, &center_space);
    let dec = primitive_idempotents(&center.algebra)?;
    Ok(dec
        .idempotents
        .iter()
        .map(|e| Element::new(algebra, center.lift(&e.coeffs)))
        .collect())
}

/// Witness pair for `e_{ij} A ≅ e_i A`: `p` in `e_{ij} A e_i` and `q` in
/// `e_i A e_{ij}` with `p q = e_{ij}` and `q p = e_i`.
pub struct Witness {
    pub p: Element,
    pub q: Element,
}

/// The basic algebra eAe for e the sum of one idempotent per block, with
/// the witness pairs tying every idempotent to its block representative.
pub struct BasicAlgebraData {
    pub e: Element,
    pub corner: CornerAlgebra,
    pub witnesses: Vec<Witness>,
}

impl BasicAlgebraData {
    pub fn basic_dim(&self) -> usize {
        self.corner.algebra.dim
    }
}

fn corner_subspace(algebra: &Algebra, left: &Element, right: &Element) -> Vec<Vec<Rat>> {
    (0..algebra.dim)
        .map(|b| {
            algebra.mul_coeffs(
                &left.coeffs,
                &algebra.mul_coeffs(&algebra.basis_coeffs(b), &right.coeffs),
            )
        })
        .collect()
}

pub fn basic_algebra(
    algebra: &Arc<Algebra>,
    dec: &IdempotentDecomposition,
    budget: usize,
) -> Result<BasicAlgebraData, StructureError> {
    let mut e = Element::zero(algebra);
    for &r in &dec.representatives {
        e = e.add(&dec.idempotents[r]);
    }
    let corner = corner_algebra(algebra, &e);
    let mut witnesses = Vec::new();
    for (idx, eij) in dec.idempotents.iter().enumerate() {
        let rep = &dec.idempotents[dec.representatives[dec.block_of[idx]]];
        if eij == rep {
            witnesses.push(Witness {
                p: eij.clone(),
                q: eij.clone(),
            });
            continue;
        }
        let w = find_witness(algebra, eij, rep, budget).ok_or(StructureError::WitnessNotFound {
            idempotent: idx,
            budget,
        })?;
        witnesses.push(w);
    }
    Ok(BasicAlgebraData {
        e,
        corner,
        witnesses,
    })
}

/// Deterministic search for a witness pair realizing `f A ≅ g A`:
/// enumerate candidates for `p` in `f A g` (basis vectors, their total,
/// then two-term integer combinations) and solve the linear system
/// `p q = f`, `q p = g` for `q` in `g A f`.
fn find_witness(
    algebra: &Arc<Algebra>,
    f: &Element,
    g: &Element,
    budget: usize,
) -> Option<Witness> {
    let p_space = Subspace::from_spanning(algebra.dim, &corner_subspace(algebra, f, g));
    let q_space = Subspace::from_spanning(algebra.dim, &corner_subspace(algebra, g, f));
    let p_rows = p_space.basis_rows();
    let mut candidates: Vec<Vec<Rat>> = p_rows.clone();
    if p_rows.len() > 1 {
        let mut total = vec![Rat::zero(); algebra.dim];
        for r in &p_rows {
            for (t, v) in total.iter_mut().zip(r) {
                *t += v;
            }
        }
        candidates.push(total);
        const COEFFS: [i64; 4] = [1, -1, 2, -2];
        for i in 0..p_rows.len() {
            for j in (i + 1)..p_rows.len() {
                for ci in COEFFS {
                    for cj in COEFFS {
                        candidates.push(
                            p_rows[i]
                                .iter()
                                .zip(&p_rows[j])
                                .map(|(a, b)| &(a * &Rat::from_int(ci)) + &(b * &Rat::from_int(cj)))
                                .collect(),
                        );
                    }
                }
            }
        }
    }
    let q_rows = q_space.basis_rows();
    for (tried, p) in candidates.into_iter().enumerate() {
        if tried >= budget {
            break;
        }
        if p.iter().all(Rat::is_zero) {
            continue;
        }
        // Linear in q: p q = f and q p = g.
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for coord in 0..algebra.dim {
            let mut row = vec![Rat::zero(); q_rows.len()];
            for (c, qb) in q_rows.iter().enumerate() {
                row[c] = algebra.mul_coeffs(&p, qb)[coord].clone();
            }
            rows.push(row);
            rhs.push(f.coeffs[coord].clone());
        }
        for coord in 0..algebra.dim {
            let mut row = vec![Rat::zero(); q_rows.len()];
            for (c, qb) in q_rows.iter().enumerate() {
                row[c] = algebra.mul_coeffs(qb, &p)[coord].clone();
            }
            rows.push(row);
            rhs.push(g.coeffs[coord].clone());
        }
        if let Some(coords) = solve(&Matrix::from_rows(rows), &rhs) {
            let mut q = vec![Rat::zero(); algebra.dim];
            for (c, qb) in q_rows.iter().enumerate() {
                for (k, v) in qb.iter().enumerate() {
                    q[k] = &q[k] + &(v * &coords[c]);
                }
            }
            let p = Element::new(algebra, p);
            let q = Element::new(algebra, q);
            debug_assert_eq!(p.mul(&q), *f);
            debug_assert_eq!(q.mul(&p), *g);
            return Some(Witness { p, q });
        }
    }
    None
}

/// Outcome of the per-axiom double-centralizer verification on Ae.
pub struct DoubleCentralizerReport {
    pub algebra_dim: usize,
    pub corner_dim: usize,
    pub end_over_corner_dim: usize,
    pub end_over_algebra_dim: usize,
    pub left_action_lands_in_end: bool,
    pub left_action_multiplicative: bool,
    pub left_action_bijective: bool,
    pub right_action_lands_in_commutant: bool,
    pub right_action_anti_multiplicative: bool,
    pub right_action_bijective: bool,
}

impl DoubleCentralizerReport {
    pub fn pass(&self) -> bool {
        self.left_action_lands_in_end
            && self.left_action_multiplicative
            && self.left_action_bijective
            && self.right_action_lands_in_commutant
            && self.right_action_anti_multiplicative
            && self.right_action_bijective
            && self.end_over_corner_dim == self.algebra_dim
            && self.end_over_algebra_dim == self.corner_dim
    }
}

/// Computes End over the corner of the bimodule Ae and checks that left
/// multiplication is an isomorphism onto it, while the corner acting on
/// the right is an anti-isomorphism onto the left-action commutant.
pub fn verify_double_centralizer(
    algebra: &Arc<Algebra>,
    basic: &BasicAlgebraData,
) -> DoubleCentralizerReport {
    let e = &basic.e;
    let ae_rows: Vec<Vec<Rat>> = (0..algebra.dim)
        .map(|b| algebra.mul_coeffs(&algebra.basis_coeffs(b), &e.coeffs))
        .collect();
    let ae = Subspace::from_spanning(algebra.dim, &ae_rows);
    let m = ae.dim();
    let corner_alg = &basic.corner.algebra;
    // Right corner-module structure on Ae.
    let action: Vec<Matrix> = (0..corner_alg.dim)
        .map(|c| {
            let x = basic.corner.lift(&corner_alg.basis_coeffs(c));
            Matrix::from_fn(m, m, |r, s| {
                let moved = algebra.mul_coeffs(&ae.basis().row_vec(r), &x);
                ae.coords_of(&moved).expect("Ae is right-stable under eAe")[s].clone()
            })
        })
        .collect();
    let ae_module = crate::amodule::RightModule::new(corner_alg, action)
        .expect("corner action on Ae is a module");
    let end_basis = crate::amodule::hom_space(&ae_module, &ae_module);
    let end_over_corner_dim = end_basis.len();
    // Left multiplications on Ae as matrices in the row convention.
    let left_mat = |a: &[Rat]| -> Matrix {
        Matrix::from_fn(m, m, |r, s| {
            let moved = algebra.mul_coeffs(a, &ae.basis().row_vec(r));
            ae.coords_of(&moved).expect("Ae is left-stable under A")[s].clone()
        })
    };
    let in_span = |mat: &Matrix, basis: &[Matrix]| -> bool {
        if basis.is_empty() {
            return mat.is_zero();
        }
        let cols = Matrix::from_fn(m * m, basis.len(), |rc, c| {
            basis[c][(rc / m, rc % m)].clone()
        });
        let target: Vec<Rat> = (0..m * m).map(|rc| mat[(rc / m, rc % m)].clone()).collect();
        solve(&cols, &target).is_some()
    };
    let end_mats: Vec<Matrix> = end_basis.iter().map(|h| h.matrix.clone()).collect();
    let left_mats: Vec<Matrix> = (0..algebra.dim)
        .map(|b| left_mat(&algebra.basis_coeffs(b)))
        .collect();
    let left_action_lands_in_end = left_mats.iter().all(|mat| in_span(mat, &end_mats));
    // As function composition, l(ab) = l(a) ∘ l(b); in the row convention
    // the matrix of the composite "b then a" is M_b * M_a.
    let mut left_action_multiplicative = true;
    for i in 0..algebra.dim {
        for j in 0..algebra.dim {
            let ab = algebra.mul_coeffs(&algebra.basis_coeffs(i), &algebra.basis_coeffs(j));
            if left_mat(&ab) != left_mats[j].mul(&left_mats[i]) {
                left_action_multiplicative = false;
            }
        }
    }
    let flat = Matrix::from_fn(algebra.dim, m * m, |b, rc| {
        left_mats[b][(rc / m, rc % m)].clone()
    });
    let left_action_bijective = flat.rank() == algebra.dim && end_over_corner_dim == algebra.dim;
    // Commutant of the left action = End over A of Ae as a left module.
    let mut rows = Vec::new();
    for lm in &left_mats {
        for r in 0..m {
            for c in 0..m {
                let mut row = vec![Rat::zero(); m * m];
                for s in 0..m {
                    row[s * m + c] = &row[s * m + c] + &lm[(r, s)];
                    row[r * m + s] = &row[r * m + s] - &lm[(s, c)];
                }
                rows.push(row);
            }
        }
    }
    let commutant = crate::exactla::kernel_basis_rows(&Matrix::from_rows(rows));
    let end_over_algebra_dim = commutant.len();
    let commutant_mats: Vec<Matrix> = commutant
        .iter()
        .map(|flat| Matrix::from_fn(m, m, |r, c| flat[r * m + c].clone()))
        .collect();
    let right_mat = |x: &[Rat]| -> Matrix {
        Matrix::from_fn(m, m, |r, s| {
            let moved = algebra.mul_coeffs(&ae.basis().row_vec(r), x);
            ae.coords_of(&moved).expect("Ae right-stable")[s].clone()
        })
    };
    let corner_dim = corner_alg.dim;
    let right_mats: Vec<Matrix> = (0..corner_dim)
        .map(|c| right_mat(&basic.corner.lift(&corner_alg.basis_coeffs(c))))
        .collect();
    let right_action_lands_in_commutant =
        right_mats.iter().all(|mat| in_span(mat, &commutant_mats));
    // r(xy) = r(y) ∘ r(x): the matrix of "x then y" is M_x * M_y.
    let mut right_action_anti_multiplicative = true;
    for i in 0..corner_dim {
        for j in 0..corner_dim {
            let xi = basic.corner.lift(&corner_alg.basis_coeffs(i));
            let xj = basic.corner.lift(&corner_alg.basis_coeffs(j));
            let xy = algebra.mul_coeffs(&xi, &xj);
            if right_mat(&xy) != right_mats[i].mul(&right_mats[j]) {
                right_action_anti_multiplicative = false;
            }
        }
    }
    let flat_r = Matrix::from_fn(corner_dim, m * m, |b, rc| {
        right_mats[b][(rc / m, rc % m)].clone()
    });
    let right_action_bijective = flat_r.rank() == corner_dim && end_over_algebra_dim == corner_dim;
    DoubleCentralizerReport {
        algebra_dim: algebra.dim,
        corner_dim,
        end_over_corner_dim,
        end_over_algebra_dim,
        left_action_lands_in_end,
        left_action_multiplicative,
        left_action_bijective,
        right_action_lands_in_commutant,
        right_action_anti_multiplicative,
        right_action_bijective,
    }
}

/// Result of the deterministic symmetric-form search.
pub enum SymmetricSearch {
    /// A symmetric linear function with nondegenerate Gram form.
    Found(LinFunc),
    /// Left and right socles differ, which certifies the algebra is not
    /// symmetric; no search is attempted.
    CertifiedNotSymmetric {
        left_socle_dim: usize,
        right_socle_dim: usize,
    },
    /// The budgeted enumeration found nothing; explicitly inconclusive.
    NotFoundWithin(usize),
}

/// Scan integer coefficient vectors over the SLF basis (digits 0, 1, -1,
/// 2, -2 in counter order) for a functional with nondegenerate Gram
/// matrix.
pub fn find_symmetric_form(algebra: &Arc<Algebra>, budget: usize) -> SymmetricSearch {
    let rad = match radical(algebra) {
        Ok(r) => r,
        Err(_) => return SymmetricSearch::NotFoundWithin(0),
    };
    let left = socle(algebra, &rad, MulSide::Left);
    let right = socle(algebra, &rad, MulSide::Right);
    if left != right {
        return SymmetricSearch::CertifiedNotSymmetric {
            left_socle_dim: left.dim(),
            right_socle_dim: right.dim(),
        };
    }
    let basis = slf_basis(algebra);
    if basis.is_empty() {
        return SymmetricSearch::NotFoundWithin(0);
    }
    const DIGITS: [i64; 5] = [0, 1, -1, 2, -2];
    let m = basis.len();
    let mut counter = vec![0usize; m];
    for tried in 0..budget {
        // Advance the base-5 counter; index 0 is the least significant digit.
        let mut k = tried + 1;
        for digit in counter.iter_mut() {
            *digit = k % 5;
            k /= 5;
        }
        if k > 0 {
            return SymmetricSearch::NotFoundWithin(tried);
        }
        let mut values = vec![Rat::zero(); algebra.dim];
        for (c, phi) in counter.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            let coeff = Rat::from_int(DIGITS[*c]);
            for (v, pv) in values.iter_mut().zip(&phi.values) {
                *v += &(pv * &coeff);
            }
        }
        let phi = LinFunc::new(algebra, values);
        let gram = GramForm::new(&phi);
        if gram.is_nondegenerate() {
            return SymmetricSearch::Found(phi);
        }
    }
    SymmetricSearch::NotFoundWithin(budget)
}
