//! Passing between bi-graded Lie algebras and Lie superalgebras with an
//! involution by the sign twist `[a,b]_s = (-1)^(eps1(a) eps2(b)) [a,b]`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lie::{
    check_antisymmetry_with, check_jacobi_with, jacobiator, AlgebraMorphism, BiGradedLieAlgebra, PairViolation,
    TripleViolation,
};
use crate::linear::{BasisElement, BiGradedSpace, BilinearMap, LinearMap, Vector};
use crate::scalar::{sign_unbraid, BiDegree, CycloScalar, Sign, SignRule};

/// A Lie superalgebra (checked with the parity sign) together with an
/// involutive automorphism. The basis keeps its bi-degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperLieAlgebraWithInvolution {
    pub space: Arc<BiGradedSpace>,
    pub super_bracket: BilinearMap,
    pub involution: LinearMap,
}

impl SuperLieAlgebraWithInvolution {
    pub fn bracket(&self, i: usize, j: usize) -> Vector {
        self.super_bracket.on_basis(i, j)
    }

    pub fn check_antisymmetry(&self) -> Vec<PairViolation> {
        check_antisymmetry_with(&self.super_bracket, SignRule::Super)
    }

    pub fn check_jacobi(&self) -> Vec<TripleViolation> {
        check_jacobi_with(&self.super_bracket, SignRule::Super, Exec::default())
    }

    /// Basis indices where the involution does not square to the identity.
    pub fn involution_square_violations(&self) -> Vec<usize> {
        (0..self.space.dim())
            .filter(|&i| {
                let once = self.involution.image(i);
                self.involution.apply(&once).map_or(true, |twice| twice != Vector::basis(self.space.dim(), i))
            })
            .collect()
    }

    /// Basis pairs with `sigma[a,b]_s != [sigma a, sigma b]_s`.
    pub fn involution_automorphism_violations(&self) -> Vec<PairViolation> {
        let n = self.space.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.involution.apply(&self.bracket(i, j)).expect("same space");
                let rhs = self
                    .super_bracket
                    .apply(&self.involution.image(i), &self.involution.image(j))
                    .expect("same space");
                let r = lhs.sub(&rhs);
                if !r.is_zero() {
                    out.push(PairViolation { left: i, right: j, residual: r });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check_antisymmetry().is_empty()
            && self.check_jacobi().is_empty()
            && self.involution_square_violations().is_empty()
            && self.involution_automorphism_violations().is_empty()
    }
}

/// `sigma(v) = (-1)^(eps2(v)) v` on the basis.
pub fn involution_from_bidegree(g: &BiGradedLieAlgebra) -> LinearMap {
    let diag: Vec<CycloScalar> = (0..g.dim()).map(|i| Sign::pow(g.degree(i).eps2 as u32).into()).collect();
    LinearMap::diagonal(g.space().clone(), &diag)
}

/// The twisted bracket table, computed without checking the input.
pub fn unbraid_bracket(bracket: &BilinearMap) -> BilinearMap {
    let space = bracket.space.clone();
    let mut out = BilinearMap::zero(space.clone());
    for ((i, j), v) in bracket.entries() {
        let s = sign_unbraid(space.degree(i), space.degree(j));
        out.set(i, j, v.scale(&s.into()));
    }
    out
}

fn lie_failure(g: &BiGradedLieAlgebra) -> Option<String> {
    if let Some((i, j)) = g.check_homogeneity().first() {
        return Some(format!("bracket of basis pair ({i}, {j}) is not homogeneous"));
    }
    if let Some(v) = g.check_antisymmetry().first() {
        return Some(format!("antisymmetry fails on basis pair ({}, {})", v.left, v.right));
    }
    if let Some(v) = g.check_jacobi().first() {
        let (a, b, c) = v.triple;
        return Some(format!("Jacobi identity fails on basis triple ({a}, {b}, {c})"));
    }
    None
}

pub fn unbraid(g: &BiGradedLieAlgebra) -> Result<SuperLieAlgebraWithInvolution> {
    if let Some(msg) = lie_failure(g) {
        return Err(Error::InputNotLie(msg));
    }
    Ok(SuperLieAlgebraWithInvolution {
        space: g.space().clone(),
        super_bracket: unbraid_bracket(g.bracket_map()),
        involution: involution_from_bidegree(g),
    })
}

/// Inverse of [`unbraid`]: `eps2` is read from the involution eigenvalue and
/// `eps1 = parity + eps2`.
pub fn rebraid(s: &SuperLieAlgebraWithInvolution) -> Result<BiGradedLieAlgebra> {
    let n = s.space.dim();
    let mut basis = Vec::with_capacity(n);
    for i in 0..n {
        let img = s.involution.image(i);
        let eigen = img.get(i);
        let diagonal = img.nnz() == 1 && (eigen == CycloScalar::from_int(1) || eigen == CycloScalar::from_int(-1));
        if !diagonal {
            return Err(Error::NotDiagonal(i));
        }
        let eps2 = u8::from(eigen == CycloScalar::from_int(-1));
        let parity = s.space.degree(i).parity();
        basis.push(BasisElement { label: s.space.label(i).to_string(), degree: BiDegree::new(parity ^ eps2, eps2) });
    }
    let space = Arc::new(BiGradedSpace::new(s.space.name(), basis)?);
    let mut bracket = BilinearMap::zero(space.clone());
    for ((i, j), v) in s.super_bracket.entries() {
        let sign = sign_unbraid(space.degree(i), space.degree(j));
        bracket.set(i, j, v.scale(&sign.into()));
    }
    Ok(BiGradedLieAlgebra::from_bracket(bracket))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaCheck {
    pub triple: (usize, usize, usize),
    pub residual_bi: Vector,
    pub residual_super: Vector,
    /// `(-1)^alpha` with `alpha = eps1(a1)eps2(a2) + eps1(a2)eps2(a3) + eps1(a3)eps2(a1)`.
    pub alpha_sign: i64,
}

impl AlphaCheck {
    /// True when `residual_bi = (-1)^alpha residual_super` exactly.
    pub fn holds(&self) -> bool {
        self.residual_bi == self.residual_super.scale(&CycloScalar::from_int(self.alpha_sign))
    }
}

pub fn alpha_sign(d1: BiDegree, d2: BiDegree, d3: BiDegree) -> Sign {
    Sign::pow((d1.eps1 * d2.eps2 + d2.eps1 * d3.eps2 + d3.eps1 * d1.eps2) as u32)
}

/// Compares the bi-graded Jacobiator of `(a, b, c)` with the super Jacobiator
/// of the unbraided bracket. Works for any bracket table, Lie or not.
pub fn jacobiator_alpha_check(g: &BiGradedLieAlgebra, a: usize, b: usize, c: usize) -> AlphaCheck {
    jacobiator_alpha_check_with(g.bracket_map(), &unbraid_bracket(g.bracket_map()), a, b, c)
}

pub fn jacobiator_alpha_check_with(
    bracket: &BilinearMap,
    unbraided: &BilinearMap,
    a: usize,
    b: usize,
    c: usize,
) -> AlphaCheck {
    let d = |i| bracket.space.degree(i);
    AlphaCheck {
        triple: (a, b, c),
        residual_bi: jacobiator(bracket, SignRule::Deligne, a, b, c),
        residual_super: jacobiator(unbraided, SignRule::Super, a, b, c),
        alpha_sign: alpha_sign(d(a), d(b), d(c)).value(),
    }
}

/// Runs the alpha check on every ordered basis triple; returns the failures.
pub fn alpha_check_all(bracket: &BilinearMap, exec: Exec) -> Vec<AlphaCheck> {
    let unbraided = unbraid_bracket(bracket);
    let n = bracket.dim();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
    exec.filter_map(&triples, |&(a, b, c)| {
        let r = jacobiator_alpha_check_with(bracket, &unbraided, a, b, c);
        (!r.holds()).then_some(r)
    })
}

/// A morphism re-read between the unbraided superalgebras.
#[derive(Clone, Debug)]
pub struct TransferredMorphism {
    pub source: SuperLieAlgebraWithInvolution,
    pub target: SuperLieAlgebraWithInvolution,
    pub map: LinearMap,
    pub violations: Vec<PairViolation>,
}

impl TransferredMorphism {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn morphism_transfer(phi: &AlgebraMorphism) -> Result<TransferredMorphism> {
    let source = unbraid(&phi.source)?;
    let target = unbraid(&phi.target)?;
    if let Some(&i) = phi.map.degree_violations().first() {
        return Err(Error::DegreeViolation(i));
    }
    for i in 0..phi.source.dim() {
        let a = phi.map.apply(&source.involution.image(i))?;
        let b = target.involution.apply(&phi.map.image(i))?;
        if a != b {
            return Err(Error::NotEquivariant(i));
        }
    }
    let n = phi.source.dim();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = phi.map.apply(&source.bracket(i, j))?;
            let rhs = target.super_bracket.apply(&phi.map.image(i), &phi.map.image(j))?;
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                violations.push(PairViolation { left: i, right: j, residual: r });
            }
        }
    }
    Ok(TransferredMorphism { source, target, map: phi.map.clone(), violations })
}

/// For algebras in degrees (0,0) and (1,1) only: negates the brackets of
/// pairs from g11 and leaves the others unchanged.
pub fn cartan_sign_flip(g: &BiGradedLieAlgebra) -> Result<BiGradedLieAlgebra> {
    if !g.is_even_type() {
        return Err(Error::NotEvenType);
    }
    let space = g.space().clone();
    let mut bracket = BilinearMap::zero(space.clone());
    for ((i, j), v) in g.bracket_map().entries() {
        let flip = space.degree(i) == BiDegree::D11 && space.degree(j) == BiDegree::D11;
        bracket.set(i, j, if flip { v.neg() } else { v.clone() });
    }
    Ok(BiGradedLieAlgebra::from_bracket(bracket))
}

/// Reads a super bracket as a bi-graded one with unchanged constants; used
/// to compare an unbraided algebra with a catalog algebra.
pub fn super_as_bigraded(s: &SuperLieAlgebraWithInvolution) -> BiGradedLieAlgebra {
    BiGradedLieAlgebra::from_bracket(s.super_bracket.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lie::check_morphism;

    #[test]
    fn so3_involution() {
        let s = involution_from_bidegree(&catalog::so3());
        assert_eq!(s.image(0), Vector::basis(3, 0));
        assert_eq!(s.image(1), Vector::basis(3, 1).neg());
        assert_eq!(s.image(2), Vector::basis(3, 2).neg());
        let b = crate::lie::commutator_lie(&catalog::algebra_b()).unwrap();
        assert_eq!(involution_from_bidegree(&b).image(2), Vector::basis(4, 2).neg());
        assert_eq!(involution_from_bidegree(&b).image(1), Vector::basis(4, 1));
    }

    #[test]
    fn unbraid_so3_is_so12() {
        let s = unbraid(&catalog::so3()).unwrap();
        assert_eq!(s.bracket(0, 1), Vector::basis(3, 2));
        assert_eq!(s.bracket(2, 0), Vector::basis(3, 1));
        assert_eq!(s.bracket(1, 2), Vector::basis(3, 0).neg());
        assert!(super_as_bigraded(&s).structure_eq(&catalog::so12()));
        assert!(s.is_valid());
    }

    #[test]
    fn round_trip_catalog() {
        for g in catalog::lie_algebras() {
            let s = unbraid(&g).unwrap();
            assert!(s.is_valid(), "{}", g.name());
            assert!(rebraid(&s).unwrap().structure_eq(&g), "{}", g.name());
        }
    }

    #[test]
    fn rebraid_rejects_non_diagonal() {
        let mut s = unbraid(&catalog::so3()).unwrap();
        s.involution.set_image(1, Vector::basis(3, 1).add(&Vector::basis(3, 2)));
        assert_eq!(rebraid(&s), Err(Error::NotDiagonal(1)));
    }

    #[test]
    fn unbraid_rejects_broken_input() {
        let g = catalog::so3();
        let mut m = g.bracket_map().clone();
        m.set(0, 1, Vector::basis(3, 2).add(&Vector::basis(3, 0)));
        let broken = BiGradedLieAlgebra::from_bracket(m);
        assert!(matches!(unbraid(&broken), Err(Error::InputNotLie(_))));
    }

    #[test]
    fn alpha_identity_examples() {
        let g = catalog::so3();
        let r = jacobiator_alpha_check(&g, 0, 1, 2);
        assert!(r.residual_bi.is_zero() && r.residual_super.is_zero() && r.holds());

        let mut m = g.bracket_map().clone();
        m.set(1, 2, Vector::basis(3, 0).add(&Vector::basis(3, 1)));
        let broken = BiGradedLieAlgebra::from_bracket(m);
        let r = jacobiator_alpha_check(&broken, 0, 1, 2);
        assert!(!r.residual_bi.is_zero());
        assert!(r.holds());

        let u = catalog::unitary_m2();
        // u1a (1,0), h1a (0,1), h0a (1,1)
        let r = jacobiator_alpha_check(&u, 4, 6, 2);
        assert_eq!(r.alpha_sign, -1);
        assert!(r.holds());
    }

    #[test]
    fn cartan_flip() {
        let f = cartan_sign_flip(&catalog::so3()).unwrap();
        assert!(f.structure_eq(&catalog::so12()));
        assert!(cartan_sign_flip(&f).unwrap().structure_eq(&catalog::so3()));
        assert!(f.is_lie());
        assert_eq!(cartan_sign_flip(&catalog::unitary_m2()), Err(Error::NotEvenType));
    }

    #[test]
    fn transfer_identity_and_broken_map() {
        let g = Arc::new(catalog::so3());
        let id = AlgebraMorphism::identity(g.clone());
        assert!(morphism_transfer(&id).unwrap().passes());
        let mut map = LinearMap::identity(g.space().clone());
        map.set_image(1, Vector::basis(3, 1).scale(&CycloScalar::from_int(2)));
        let phi = AlgebraMorphism::new(g.clone(), g, map);
        assert!(!check_morphism(&phi).unwrap().is_empty());
        assert!(!morphism_transfer(&phi).unwrap().passes());
    }

    mod props {
        use std::sync::Arc;

        use proptest::prelude::*;

        use super::super::*;
        use crate::linear::BiGradedSpace;
        use crate::scalar::cyclo::tests::arb_scalar;

        /// A random homogeneous bracket table on a random bi-graded basis.
        fn arb_bracket() -> impl Strategy<Value = BilinearMap> {
            proptest::collection::vec((0u8..2, 0u8..2), 1..=4).prop_flat_map(|degrees| {
                let n = degrees.len();
                proptest::collection::vec((0..n, 0..n, 0..n, arb_scalar()), 0..=8).prop_map(move |entries| {
                    let labels: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
                    let items: Vec<(&str, (u8, u8))> = labels.iter().map(String::as_str).zip(degrees.iter().copied()).collect();
                    let space = Arc::new(BiGradedSpace::from_labels("rand", &items).unwrap());
                    let mut map = BilinearMap::zero(space.clone());
                    for (a, b, k, c) in entries {
                        if space.degree(k) == space.degree(a) + space.degree(b) {
                            let mut v = map.on_basis(a, b);
                            v.add_term(k, &c);
                            map.set(a, b, v);
                        }
                    }
                    map
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn alpha_identity_is_a_sign_identity(map in arb_bracket()) {
                prop_assert!(alpha_check_all(&map, Exec::Sequential).is_empty());
            }

            #[test]
            fn unbraiding_twice_is_identity(map in arb_bracket()) {
                prop_assert_eq!(unbraid_bracket(&unbraid_bracket(&map)).entries().filter(|(_, v)| !v.is_zero()).count(),
                    map.entries().filter(|(_, v)| !v.is_zero()).count());
                let n = map.dim();
                for a in 0..n {
                    for b in 0..n {
                        prop_assert_eq!(unbraid_bracket(&unbraid_bracket(&map)).on_basis(a, b), map.on_basis(a, b));
                    }
                }
            }
        }
    }
}
