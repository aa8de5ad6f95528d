//! Constructors for the concrete algebras: so(3) and so(1,2) with their
//! symmetric decomposition, the four-dimensional algebra B and its matrix
//! representation, the tilde extension of a Z2-graded algebra, and the
//! bi-graded Lie algebra of a unitary structure with its embedding.

mod unitary;


use std::sync::Arc;

use num_traits::{One, Zero};

pub use unitary::{mat2_star_algebra, unitary_bigraded, unitary_embedding, StarClass, StarMatrixAlgebra};

use crate::error::{Error, Result};
use crate::hc::MatrixRep;
use crate::lie::{commutator_lie, BiGradedAssocAlgebra, BiGradedLieAlgebra};
use crate::linalg::{solve_combination, Matrix, SparseRow};
use crate::linear::{BasisElement, BiGradedSpace, BilinearMap, Vector};
use crate::scalar::{BiDegree, CycloScalar};

fn so3_space(name: &str) -> Arc<BiGradedSpace> {
    Arc::new(
        BiGradedSpace::from_labels(name, &[("e1", (0, 0)), ("e2", (1, 1)), ("e3", (1, 1))])
            .expect("static basis"),
    )
}

fn so3_with_sign(name: &str, sign_23: i64) -> BiGradedLieAlgebra {
    let e = |i| Vector::basis(3, i);
    BiGradedLieAlgebra::from_upper(
        so3_space(name),
        [
            (0, 1, e(2)),
            (1, 2, e(0).scale(&CycloScalar::from_int(sign_23))),
            // [e3,e1] = e2
            (0, 2, e(1).neg()),
        ],
    )
}

/// so(3) with `e1` in degree (0,0) and `e2, e3` in degree (1,1).
pub fn so3() -> BiGradedLieAlgebra {
    so3_with_sign("so3", 1)
}

/// so(1,2): the so(3) constants with `[e2,e3] = -e1`.
pub fn so12() -> BiGradedLieAlgebra {
    so3_with_sign("so12", -1)
}

/// The standard 3x3 representation of so(3).
pub fn so3_standard_rep() -> MatrixRep {
    MatrixRep::new(
        "so3-std",
        vec![
            Matrix::from_ints(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
            Matrix::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
            Matrix::from_ints(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
        ],
    )
}

/// `diag(1,-1,-1)`, which implements the involution by conjugation.
pub fn so3_involution_element() -> Matrix {
    Matrix::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]])
}

/// The 3x3 matrix displayed next to the standard representation. It squares
/// to `diag(1,-1,-1)` and conjugates `e2` to `e3`.
pub fn so3_displayed_sigma() -> Matrix {
    Matrix::from_ints(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]])
}

/// Multiplication in B on basis monomials `1, q1, q2, q3`:
/// returns `(c, k)` with `q_a q_b = c q_k`.
fn b_mul(a: usize, b: usize) -> (CycloScalar, usize) {
    let i = CycloScalar::i;
    let one = CycloScalar::one;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, x) => (one(), x),
        (1, 1) => (i(), 0),
        (1, 2) => (one(), 3),
        (1, 3) => (i(), 2),
        (2, 2) => (-i(), 0),
        (2, 3) => (-i(), 1),
        (3, 3) => (one(), 0),
        _ => unreachable!(),
    }
}

/// The commutative algebra B spanned by `1, q1, q2, q3` with
/// `q1^2 = i`, `q2^2 = -i`, `q1 q3 = i q2`, `q2 q3 = -i q1`.
pub fn algebra_b() -> BiGradedAssocAlgebra {
    let space = Arc::new(
        BiGradedSpace::from_labels("B", &[("1", (0, 0)), ("q1", (1, 0)), ("q2", (0, 1)), ("q3", (1, 1))])
            .expect("static basis"),
    );
    let mut product = BilinearMap::zero(space);
    for a in 0..4 {
        for b in 0..4 {
            let (c, k) = b_mul(a, b);
            product.set(a, b, Vector::basis(4, k).scale(&c));
        }
    }
    BiGradedAssocAlgebra::new(product, Some(Vector::basis(4, 0)))
}

/// The 4x4 representation of B built from 2x2 blocks with `lambda = zeta8`.
pub fn algebra_b_rep() -> MatrixRep {
    let z = CycloScalar::zeta();
    let zero = Matrix::zeros(2, 2);
    let lambda1 = Matrix::diagonal(&[z.clone(), z.clone()]);
    let lambda2 = Matrix::from_rows(vec![vec![CycloScalar::zero(), z.clone()], vec![-z, CycloScalar::zero()]]);
    let l12 = &lambda1 * &lambda2;
    MatrixRep::new(
        "B-4x4",
        vec![
            Matrix::identity(4),
            Matrix::blocks(&zero, &lambda1, &lambda1, &zero),
            Matrix::blocks(&zero, &lambda2, &lambda2, &zero),
            Matrix::blocks(&l12, &zero, &zero, &l12),
        ],
    )
}

pub fn b_commutator() -> BiGradedLieAlgebra {
    commutator_lie(&algebra_b()).expect("B is associative").renamed("b-commutator")
}

/// Associative algebra spanned by linearly independent matrices, closed under
/// multiplication. Products are decomposed exactly over Q(zeta8).
pub fn assoc_from_matrices(
    space: Arc<BiGradedSpace>,
    mats: &[Matrix],
    unit: Option<Vector>,
) -> Result<BiGradedAssocAlgebra> {
    let n = space.dim();
    assert_eq!(mats.len(), n);
    let flat = |m: &Matrix| -> SparseRow {
        m.entries().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
    };
    let basis: Vec<SparseRow> = mats.iter().map(flat).collect();
    let mut product = BilinearMap::zero(space.clone());
    for a in 0..n {
        for b in 0..n {
            let p = &mats[a] * &mats[b];
            let coeffs = solve_combination(&basis, &flat(&p)).ok_or_else(|| {
                Error::Malformed(format!("product of basis elements {a} and {b} leaves the span"))
            })?;
            product.set(a, b, Vector::from_terms(n, coeffs.into_iter().enumerate()));
        }
    }
    Ok(BiGradedAssocAlgebra::new(product, unit))
}

/// 2x2 matrices over Q(zeta8) as a Z2-graded algebra: diagonal matrix units in
/// degree (0,0), off-diagonal ones in degree (1,0).
pub fn mat22_super() -> BiGradedAssocAlgebra {
    unitary::matrix_superalgebra("m22", &[0, 1])
}

/// Label of `c q` in the tilde extension; `q` is one of `1, q1, q2, q3`.
pub fn tilde_label(c: &str, q: usize) -> String {
    match q {
        0 => c.to_string(),
        _ => format!("{c}*q{q}"),
    }
}

/// `C~ = C0 + C0 q3 + C1 q1 + C1 q2` for a Z2-graded algebra C (degrees
/// (0,0) and (1,0) only), with product `(c q)(c' q') = (c c')(q q')`.
pub fn tilde_extension(c: &BiGradedAssocAlgebra) -> Result<BiGradedAssocAlgebra> {
    let cs = c.space();
    if let Some(i) = (0..cs.dim()).find(|&i| cs.degree(i).eps2 != 0) {
        return Err(Error::Malformed(format!(
            "tilde extension needs a Z2-graded input; `{}` has degree {}",
            cs.label(i),
            cs.degree(i)
        )));
    }
    if let Some((a, b, d)) = c.associativity_violation() {
        return Err(Error::NotAssociative(a, b, d));
    }
    let even = cs.component(BiDegree::D00);
    let odd = cs.component(BiDegree::D10);
    // (index in C, B monomial)
    let mut slots: Vec<(usize, usize)> = Vec::new();
    slots.extend(even.iter().map(|&i| (i, 0)));
    slots.extend(even.iter().map(|&i| (i, 3)));
    slots.extend(odd.iter().map(|&i| (i, 1)));
    slots.extend(odd.iter().map(|&i| (i, 2)));
    let b_deg = [BiDegree::D00, BiDegree::D10, BiDegree::D01, BiDegree::D11];
    let basis: Vec<BasisElement> = slots
        .iter()
        .map(|&(i, q)| BasisElement { label: tilde_label(cs.label(i), q), degree: b_deg[q] })
        .collect();
    let space = Arc::new(BiGradedSpace::new(format!("{}~", cs.name()), basis)?);
    let n = space.dim();
    let slot_of = |ci: usize, q: usize| slots.iter().position(|&s| s == (ci, q));
    let mut product = BilinearMap::zero(space.clone());
    for (a, &(ca, qa)) in slots.iter().enumerate() {
        for (b, &(cb, qb)) in slots.iter().enumerate() {
            let (beta, q) = b_mul(qa, qb);
            let cc = c.mul_basis(ca, cb);
            let mut v = Vector::zero(n);
            for (k, coeff) in cc.iter() {
                let slot = slot_of(k, q).ok_or_else(|| {
                    Error::Malformed(format!("product of `{}` and `{}` is not homogeneous", cs.label(ca), cs.label(cb)))
                })?;
                v.add_term(slot, &(coeff * &beta));
            }
            product.set(a, b, v);
        }
    }
    let unit = match c.unit() {
        Some(u) => {
            let mut v = Vector::zero(n);
            for (k, coeff) in u.iter() {
                v.add_term(slot_of(k, 0).ok_or_else(|| Error::Malformed("unit is not even".into()))?, coeff);
            }
            Some(v)
        }
        None => None,
    };
    let out = BiGradedAssocAlgebra::new(product, unit);
    if let Some((a, b, d)) = out.associativity_violation() {
        return Err(Error::NotAssociative(a, b, d));
    }
    Ok(out)
}

pub fn tilde_m22_commutator() -> BiGradedLieAlgebra {
    let t = tilde_extension(&mat22_super()).expect("matrix algebra is associative");
    commutator_lie(&t).expect("associative").renamed("tilde-m22-commutator")
}

pub fn unitary_m2() -> BiGradedLieAlgebra {
    unitary_bigraded(&mat2_star_algebra()).expect("conjugate transpose on 2x2 matrices").renamed("unitary-m2")
}

#[derive(Clone, Debug)]
pub enum CatalogAlgebra {
    Lie(BiGradedLieAlgebra),
    Assoc(BiGradedAssocAlgebra),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub algebra: CatalogAlgebra,
    pub reps: Vec<MatrixRep>,
    pub notes: &'static str,
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "so3",
            algebra: CatalogAlgebra::Lie(so3()),
            reps: vec![so3_standard_rep()],
            notes: "so(3); e1 in (0,0), e2 and e3 in (1,1)",
        },
        CatalogEntry {
            name: "so12",
            algebra: CatalogAlgebra::Lie(so12()),
            reps: vec![],
            notes: "so(1,2); so3 constants with [e2,e3] = -e1",
        },
        CatalogEntry {
            name: "algebra-b",
            algebra: CatalogAlgebra::Assoc(algebra_b()),
            reps: vec![algebra_b_rep()],
            notes: "commutative algebra 1,q1,q2,q3 with degrees (0,0),(1,0),(0,1),(1,1)",
        },
        CatalogEntry {
            name: "b-commutator",
            algebra: CatalogAlgebra::Lie(b_commutator()),
            reps: vec![],
            notes: "bi-graded commutator algebra of B",
        },
        CatalogEntry {
            name: "m22",
            algebra: CatalogAlgebra::Assoc(mat22_super()),
            reps: vec![],
            notes: "2x2 matrices, diagonal even and off-diagonal odd",
        },
        CatalogEntry {
            name: "tilde-m22-commutator",
            algebra: CatalogAlgebra::Lie(tilde_m22_commutator()),
            reps: vec![],
            notes: "commutator algebra of the tilde extension of m22",
        },
        CatalogEntry {
            name: "unitary-m2",
            algebra: CatalogAlgebra::Lie(unitary_m2()),
            reps: vec![],
            notes: "bi-graded Lie algebra of 2x2 matrices with conjugate transpose",
        },
    ]
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// The Lie algebras every check runs against.
pub fn lie_algebras() -> Vec<BiGradedLieAlgebra> {
    vec![so3(), so12(), b_commutator(), tilde_m22_commutator(), unitary_m2()]
}
