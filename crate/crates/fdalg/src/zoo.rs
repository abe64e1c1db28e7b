//! Deterministic constructors for the named test algebras, their canonical
//! symmetric functionals and standard modules, all compiled down to
//! structure constants.
//!
//! Path composition is read left to right: `alpha * beta` is "alpha, then
//! beta", so for the zigzag quiver `alpha: 1 -> 2` and `beta: 2 -> 1` the
//! products `alpha*beta` and `beta*alpha` are the two socle loops. This is
//! also recorded in the emitted JSON metadata.

use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::amodule::{quotient_module, submodule, submodule_times_ideal, ModuleHom, RightModule};
use crate::exactla::Rat;
use crate::slf::LinFunc;
use crate::structure::{primitive_idempotents, radical};

#[derive(Clone, Copy, Debug)]
pub struct ZooNotes {
    pub symmetric: bool,
    pub basic: bool,
    pub indecomposable: bool,
    pub split: bool,
}

#[derive(Clone)]
pub struct ZooEntry {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub canonical_phi: Option<LinFunc>,
    pub notes: ZooNotes,
}

impl ZooEntry {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
}

fn build(
    name: &str,
    basis_names: Vec<String>,
    mult: Vec<Vec<Vec<Rat>>>,
    one: Vec<Rat>,
    phi: Option<Vec<Rat>>,
    notes: ZooNotes,
) -> ZooEntry {
    let algebra = Algebra::new(basis_names, mult, one).unwrap_or_else(|e| {
        panic!(
            "zoo constructor {} produced an invalid algebra: {}",
            name, e
        )
    });
    let canonical_phi = phi.map(|values| LinFunc::new(&algebra, values));
    ZooEntry {
        name: name.to_string(),
        algebra,
        canonical_phi,
        notes,
    }
}

fn zero_tensor(n: usize) -> Vec<Vec<Vec<Rat>>> {
    vec![vec![vec![Rat::zero(); n]; n]; n]
}

/// `Q[x]/(x^n)` on the basis 1, x, ..., x^(n-1); canonical functional is the
/// dual of the top power.
pub fn truncated_polynomial(n: usize) -> ZooEntry {
    assert!(n >= 1, "degree must be at least 1");
    let mut mult = zero_tensor(n);
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mult[i][j][i + j] = Rat::one();
            }
        }
    }
    let mut one = vec![Rat::zero(); n];
    one[0] = Rat::one();
    let mut phi = vec![Rat::zero(); n];
    phi[n - 1] = Rat::one();
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{}", i),
        })
        .collect();
    build(
        &format!("t{}", n),
        names,
        mult,
        one,
        Some(phi),
        ZooNotes {
            symmetric: true,
            basic: true,
            indecomposable: true,
            split: true,
        },
    )
}

/// Group algebra of the cyclic group of order m on the basis
/// g^0, ..., g^{m-1}; canonical functional is the dual of the identity.
/// Constructible for every m, but split over Q only for m <= 2.
pub fn group_algebra_cyclic(m: usize) -> ZooEntry {
    assert!(m >= 1, "group order must be at least 1");
    let mut mult = zero_tensor(m);
    for i in 0..m {
        for j in 0..m {
            mult[i][j][(i + j) % m] = Rat::one();
        }
    }
    let mut one = vec![Rat::zero(); m];
    one[0] = Rat::one();
    let mut phi = vec![Rat::zero(); m];
    phi[0] = Rat::one();
    let names = (0..m).map(|i| format!("g^{}", i)).collect();
    build(
        &format!("c{}", m),
        names,
        mult,
        one,
        Some(phi),
        ZooNotes {
            symmetric: true,
            basic: true,
            indecomposable: m == 1,
            split: m <= 2,
        },
    )
}

/// Group algebra of the symmetric group S3. Basis order: e, (01), (02),
/// (12), (012), (021); products compose right-to-left as functions. The
/// canonical functional is the dual of the identity element.
pub fn group_algebra_s3() -> ZooEntry {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let names = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
        .map(String::from)
        .to_vec();
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] { [p[q[0]], p[q[1]], p[q[2]]] };
    let index_of = |p: &[usize; 3]| -> usize {
        perms
            .iter()
            .position(|x| x == p)
            .expect("composition stays in the group")
    };
    let mut mult = zero_tensor(6);
    for i in 0..6 {
        for j in 0..6 {
            mult[i][j][index_of(&compose(&perms[i], &perms[j]))] = Rat::one();
        }
    }
    let mut one = vec![Rat::zero(); 6];
    one[0] = Rat::one();
    let mut phi = vec![Rat::zero(); 6];
    phi[0] = Rat::one();
    build(
        "s3",
        names,
        mult,
        one,
        Some(phi),
        ZooNotes {
            symmetric: true,
            basic: false,
            indecomposable: false,
            split: true,
        },
    )
}

/// Full matrix algebra M_n(Q) on the matrix-unit basis E_rc, row-major;
/// canonical functional is the matrix trace.
pub fn matrix_algebra(n: usize) -> ZooEntry {
    assert!(n >= 1, "size must be at least 1");
    let dim = n * n;
    let mut mult = zero_tensor(dim);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if b == c {
                        mult[a * n + b][c * n + d][a * n + d] = Rat::one();
                    }
                }
            }
        }
    }
    let mut one = vec![Rat::zero(); dim];
    let mut phi = vec![Rat::zero(); dim];
    for i in 0..n {
        one[i * n + i] = Rat::one();
        phi[i * n + i] = Rat::one();
    }
    let names = (0..n)
        .flat_map(|r| (0..n).map(move |c| format!("E{}{}", r + 1, c + 1)))
        .collect();
    build(
        &format!("m{}", n),
        names,
        mult,
        one,
        Some(phi),
        ZooNotes {
            symmetric: true,
            basic: n == 1,
            indecomposable: true,
            split: true,
        },
    )
}

/// Upper-triangular n x n matrices on the basis E_ij (i <= j), row-major.
/// Not symmetric for n >= 2 (the socles differ), so no canonical
/// functional is shipped there.
pub fn upper_triangular(n: usize) -> ZooEntry {
    assert!(n >= 1, "size must be at least 1");
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            pairs.push((i, j));
        }
    }
    let dim = pairs.len();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let mut mult = zero_tensor(dim);
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                mult[a][b][idx(i, l)] = Rat::one();
            }
        }
    }
    let mut one = vec![Rat::zero(); dim];
    for i in 0..n {
        one[idx(i, i)] = Rat::one();
    }
    let phi = (n == 1).then(|| vec![Rat::one()]);
    let names = pairs
        .iter()
        .map(|&(i, j)| format!("E{}{}", i + 1, j + 1))
        .collect();
    build(
        &format!("u{}", n),
        names,
        mult,
        one,
        phi,
        ZooNotes {
            symmetric: n == 1,
            basic: true,
            indecomposable: true,
            split: true,
        },
    )
}

/// The zigzag algebra on two vertices: basis (e1, e2, alpha, beta,
/// alphabeta, betaalpha) with alpha: 1 -> 2, beta: 2 -> 1, left-to-right
/// composition and relations alpha beta alpha = beta alpha beta = 0.
/// Canonical functional: 1 on the two socle loops, 0 elsewhere.
pub fn zigzag_2() -> ZooEntry {
    let names = ["e1", "e2", "alpha", "beta", "alphabeta", "betaalpha"]
        .map(String::from)
        .to_vec();
    let mut mult = zero_tensor(6);
    let one_at =
        |mult: &mut Vec<Vec<Vec<Rat>>>, i: usize, j: usize, k: usize| mult[i][j][k] = Rat::one();
    one_at(&mut mult, 0, 0, 0); // e1 e1 = e1
    one_at(&mut mult, 1, 1, 1); // e2 e2 = e2
    one_at(&mut mult, 0, 2, 2); // e1 alpha = alpha
    one_at(&mut mult, 2, 1, 2); // alpha e2 = alpha
    one_at(&mut mult, 1, 3, 3); // e2 beta = beta
    one_at(&mut mult, 3, 0, 3); // beta e1 = beta
    one_at(&mut mult, 2, 3, 4); // alpha beta = alphabeta
    one_at(&mut mult, 3, 2, 5); // beta alpha = betaalpha
    one_at(&mut mult, 0, 4, 4); // e1 alphabeta = alphabeta
    one_at(&mut mult, 4, 0, 4); // alphabeta e1 = alphabeta
    one_at(&mut mult, 1, 5, 5); // e2 betaalpha = betaalpha
    one_at(&mut mult, 5, 1, 5); // betaalpha e2 = betaalpha
    let one = vec![
        Rat::one(),
        Rat::one(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
    ];
    let phi = vec![
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::one(),
        Rat::one(),
    ];
    build(
        "n2",
        names,
        mult,
        one,
        Some(phi),
        ZooNotes {
            symmetric: true,
            basic: true,
            indecomposable: true,
            split: true,
        },
    )
}

/// Direct product with block-diagonal structure constants; the canonical
/// functional is the blockwise sum when every part ships one.
pub fn product(parts: &[ZooEntry]) -> ZooEntry {
    let dim: usize = parts.iter().map(|p| p.algebra.dim).sum();
    let mut mult = zero_tensor(dim);
    let mut one = vec![Rat::zero(); dim];
    let mut names = Vec::with_capacity(dim);
    let mut phi: Option<Vec<Rat>> = parts
        .iter()
        .all(|p| p.canonical_phi.is_some())
        .then(|| vec![Rat::zero(); dim]);
    let mut off = 0;
    for (pi, part) in parts.iter().enumerate() {
        let a = &part.algebra;
        for i in 0..a.dim {
            names.push(format!("{}#{}", pi, a.basis_names[i]));
            one[off + i] = a.one[i].clone();
            if let (Some(acc), Some(p)) = (phi.as_mut(), part.canonical_phi.as_ref()) {
                acc[off + i] = p.values[i].clone();
            }
            for j in 0..a.dim {
                for k in 0..a.dim {
                    mult[off + i][off + j][off + k] = a.mult[i][j][k].clone();
                }
            }
        }
        off += a.dim;
    }
    let name = parts
        .iter()
        .map(|p| p.name.as_str())
        .collect::<Vec<_>>()
        .join("x");
    let notes = ZooNotes {
        symmetric: parts.iter().all(|p| p.notes.symmetric),
        basic: parts.iter().all(|p| p.notes.basic),
        indecomposable: parts.len() <= 1 && parts.iter().all(|p| p.notes.indecomposable),
        split: parts.iter().all(|p| p.notes.split),
    };
    build(&name, names, mult, one, phi, notes)
}

/// The algebra acting on itself from the right.
pub fn regular(entry: &ZooEntry) -> Arc<RightModule> {
    RightModule::regular(&entry.algebra)
}

/// One indecomposable projective per block: the right ideal e_i A with its
/// inclusion into the regular module.
pub struct ProjectiveSummand {
    pub idempotent: Element,
    pub module: Arc<RightModule>,
    pub inclusion: ModuleHom,
}

pub fn indecomposable_projectives(entry: &ZooEntry) -> Vec<ProjectiveSummand> {
    let a = &entry.algebra;
    let reg = RightModule::regular(a);
    let dec = primitive_idempotents(a).expect("zoo projectives need a split algebra");
    dec.representatives
        .iter()
        .map(|&ri| {
            let e = dec.idempotents[ri].clone();
            let rows: Vec<Vec<Rat>> = (0..a.dim)
                .map(|b| a.mul_coeffs(&e.coeffs, &a.basis_coeffs(b)))
                .collect();
            let space = crate::exactla::Subspace::from_spanning(a.dim, &rows);
            let sub = submodule(&reg, &space).expect("right ideal is invariant");
            ProjectiveSummand {
                idempotent: e,
                module: sub.module,
                inclusion: sub.inclusion,
            }
        })
        .collect()
}

/// Simple tops of the indecomposable projectives, one per block.
pub fn simple_quotients(entry: &ZooEntry) -> Vec<Arc<RightModule>> {
    let a = &entry.algebra;
    let j = radical(a).expect("zoo algebras are valid");
    indecomposable_projectives(entry)
        .into_iter()
        .map(|p| {
            let top_radical = submodule_times_ideal(&p.module, &j);
            quotient_module(&p.module, &top_radical)
                .expect("radical image is invariant")
                .module
        })
        .collect()
}

/// A deterministic small non-projective module: the first simple quotient
/// whose projective cover has nonzero radical part. None when the algebra
/// is semisimple (every module is then projective).
pub fn nonprojective_module(entry: &ZooEntry) -> Option<Arc<RightModule>> {
    let a = &entry.algebra;
    let j = radical(a).expect("zoo algebras are valid");
    if j.dim() == 0 {
        return None;
    }
    let projs = indecomposable_projectives(entry);
    let simples = simple_quotients(entry);
    for (p, s) in projs.iter().zip(simples) {
        if submodule_times_ideal(&p.module, &j).dim() > 0 {
            return Some(s);
        }
    }
    None
}

/// The radical as a right module, via its inclusion into the regular
/// module; a second stock non-projective for non-semisimple algebras.
pub fn radical_module(entry: &ZooEntry) -> Option<Arc<RightModule>> {
    let a = &entry.algebra;
    let j = radical(a).expect("zoo algebras are valid");
    if j.dim() == 0 {
        return None;
    }
    let reg = RightModule::regular(a);
    Some(
        submodule(&reg, &j.space)
            .expect("radical is invariant")
            .module,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MulSide;
    use crate::slf::{slf_basis, GramForm};
    use crate::structure::socle;

    #[test]
    fn t3_shape_and_phi() {
        let t3 = truncated_polynomial(3);
        assert_eq!(t3.algebra.dim, 3);
        let phi = t3.canonical_phi.unwrap();
        assert_eq!(phi.values, vec![Rat::zero(), Rat::zero(), Rat::one()]);
    }

    #[test]
    fn zigzag_multiplication_table() {
        let n2 = zigzag_2();
        let a = &n2.algebra;
        let e = |i: usize| Element::basis(a, i);
        assert_eq!(e(2).mul(&e(3)), e(4)); // alpha beta
        assert_eq!(e(3).mul(&e(2)), e(5)); // beta alpha
        assert!(e(2).mul(&e(5)).is_zero()); // alpha betaalpha = 0
        assert!(e(4).mul(&e(2)).is_zero()); // alphabeta alpha = 0
        assert!(e(3).mul(&e(4)).is_zero()); // beta alphabeta = 0
        assert!(e(2).mul(&e(2)).is_zero());
        assert_eq!(e(0).add(&e(1)), Element::one(a));
    }

    #[test]
    fn matrix_algebra_2_not_basic() {
        let m2 = matrix_algebra(2);
        assert_eq!(m2.algebra.dim, 4);
        assert!(!m2.notes.basic);
        let phi = m2.canonical_phi.unwrap();
        assert_eq!(phi.eval(&m2.algebra.basis_coeffs(0)), Rat::one());
        assert_eq!(phi.eval(&m2.algebra.basis_coeffs(1)), Rat::zero());
    }

    #[test]
    fn every_symmetric_entry_has_matching_socles_and_nondegenerate_gram() {
        for entry in [
            truncated_polynomial(2),
            truncated_polynomial(3),
            truncated_polynomial(4),
            group_algebra_cyclic(2),
            group_algebra_s3(),
            matrix_algebra(2),
            zigzag_2(),
        ] {
            assert!(entry.notes.symmetric, "{}", entry.name);
            let a = &entry.algebra;
            let j = radical(a).unwrap();
            assert_eq!(
                socle(a, &j, MulSide::Left),
                socle(a, &j, MulSide::Right),
                "socles must agree for {}",
                entry.name
            );
            let phi = entry.canonical_phi.as_ref().unwrap();
            assert!(phi.is_symmetric(), "{}", entry.name);
            assert!(GramForm::new(phi).is_nondegenerate(), "{}", entry.name);
        }
    }

    #[test]
    fn simple_quotients_of_zigzag() {
        let n2 = zigzag_2();
        let simples = simple_quotients(&n2);
        assert_eq!(simples.len(), 2);
        assert!(simples.iter().all(|s| s.dim == 1));
    }

    #[test]
    fn indecomposable_projectives_of_zigzag() {
        let n2 = zigzag_2();
        let projs = indecomposable_projectives(&n2);
        assert_eq!(projs.len(), 2);
        assert!(projs.iter().all(|p| p.module.dim == 3));
    }

    #[test]
    fn product_slf_dim_is_sum_of_parts() {
        let prod = product(&[matrix_algebra(2), truncated_polynomial(3)]);
        assert_eq!(
            slf_basis(&prod.algebra).len(),
            slf_basis(&matrix_algebra(2).algebra).len()
                + slf_basis(&truncated_polynomial(3).algebra).len()
        );
        let phi = prod.canonical_phi.unwrap();
        assert!(phi.is_symmetric());
    }

    #[test]
    fn nonprojective_examples_exist_where_expected() {
        assert!(nonprojective_module(&truncated_polynomial(3)).is_some());
        assert!(nonprojective_module(&zigzag_2()).is_some());
        assert!(nonprojective_module(&matrix_algebra(2)).is_none());
        assert!(radical_module(&truncated_polynomial(3)).unwrap().dim == 2);
    }
}
