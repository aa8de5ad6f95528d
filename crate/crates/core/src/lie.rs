//! Bi-graded Lie algebras and associative algebras with their axiom checks.
//! An associative algebra yields a Lie algebra through the graded commutator.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linear::{BiGradedSpace, BilinearMap, LinearMap, Vector};
use crate::scalar::{BiDegree, SignRule};
#[cfg(test)]
use crate::scalar::CycloScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub left: usize,
    pub right: usize,
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleViolation {
    /// Sorted basis triple identifying the violation.
    pub triple: (usize, usize, usize),
    /// The ordering on which the residual was observed.
    pub ordering: (usize, usize, usize),
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiGradedLieAlgebra {
    space: Arc<BiGradedSpace>,
    bracket: BilinearMap,
}

impl BiGradedLieAlgebra {
    /// Wraps a fully specified bracket table; no antisymmetric completion.
    pub fn from_bracket(bracket: BilinearMap) -> Self {
        Self { space: bracket.space.clone(), bracket }
    }

    /// Builds the bracket from entries `[i, j]` with `i <= j`; the `(j, i)`
    /// entries follow from bi-graded antisymmetry.
    pub fn from_upper(
        space: Arc<BiGradedSpace>,
        entries: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Self {
        Self::from_upper_with(space, entries, SignRule::Deligne)
    }

    pub(crate) fn from_upper_with(
        space: Arc<BiGradedSpace>,
        entries: impl IntoIterator<Item = (usize, usize, Vector)>,
        rule: SignRule,
    ) -> Self {
        let mut bracket = BilinearMap::zero(space.clone());
        for (i, j, v) in entries {
            let (i, j, v) = if i <= j {
                (i, j, v)
            } else {
                let s = rule.sign(space.degree(i), space.degree(j));
                (j, i, v.scale(&(-s).into()))
            };
            if i != j {
                let s = rule.sign(space.degree(i), space.degree(j));
                bracket.set(j, i, v.scale(&(-s).into()));
            }
            bracket.set(i, j, v);
        }
        Self { space, bracket }
    }

    pub fn name(&self) -> &str {
        self.space.name()
    }

    pub fn space(&self) -> &Arc<BiGradedSpace> {
        &self.space
    }

    pub fn bracket_map(&self) -> &BilinearMap {
        &self.bracket
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> BiDegree {
        self.space.degree(i)
    }

    /// `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vector {
        self.bracket.on_basis(i, j)
    }

    pub fn bracket_vec(&self, v: &Vector, w: &Vector) -> Result<Vector> {
        self.bracket.apply(v, w)
    }

    pub fn renamed(&self, name: &str) -> Self {
        let space = Arc::new(self.space.with_name(name));
        let mut bracket = BilinearMap::zero(space.clone());
        for ((i, j), v) in self.bracket.entries() {
            bracket.set(i, j, v.clone());
        }
        Self { space, bracket }
    }

    /// Same basis and structure constants, ignoring names.
    pub fn structure_eq(&self, other: &Self) -> bool {
        self.space.basis() == other.space.basis()
            && self.bracket.entries().eq(other.bracket.entries())
    }

    pub fn check_homogeneity(&self) -> Vec<(usize, usize)> {
        self.bracket.check_homogeneity()
    }

    pub fn check_antisymmetry(&self) -> Vec<PairViolation> {
        check_antisymmetry_with(&self.bracket, SignRule::Deligne)
    }

    pub fn check_jacobi(&self) -> Vec<TripleViolation> {
        check_jacobi_with(&self.bracket, SignRule::Deligne, Exec::default())
    }

    pub fn check_jacobi_exec(&self, exec: Exec) -> Vec<TripleViolation> {
        check_jacobi_with(&self.bracket, SignRule::Deligne, exec)
    }

    /// True when every axiom check comes back empty.
    pub fn is_lie(&self) -> bool {
        self.check_homogeneity().is_empty()
            && self.check_antisymmetry().is_empty()
            && self.check_jacobi().is_empty()
    }

    /// Restriction to a span of basis elements, reindexed in the given order.
    pub fn restrict(&self, name: &str, indices: &[usize]) -> Result<Self> {
        let sub = Arc::new(self.space.subspace(name, indices));
        let bracket = self.bracket.restrict(sub.clone(), indices).map_err(|(i, j)| Error::NotClosed(i, j))?;
        Ok(Self { space: sub, bracket })
    }

    /// Basis indices of the even part g00 + g11, in basis order.
    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i).is_even_type()).collect()
    }

    /// Basis indices of g10 + g01, in basis order.
    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i).is_exterior()).collect()
    }

    pub fn is_even_type(&self) -> bool {
        self.odd_indices().is_empty()
    }
}

/// Pairs `i <= j` with `[i,j] + s(i,j) [j,i] != 0`.
pub fn check_antisymmetry_with(bracket: &BilinearMap, rule: SignRule) -> Vec<PairViolation> {
    let space = &bracket.space;
    let n = space.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = rule.sign(space.degree(i), space.degree(j));
            let mut r = bracket.on_basis(i, j);
            r.axpy(&s.into(), &bracket.on_basis(j, i));
            if !r.is_zero() {
                out.push(PairViolation { left: i, right: j, residual: r });
            }
        }
    }
    out
}

fn bracket_basis_vec(bracket: &BilinearMap, a: usize, v: &Vector) -> Vector {
    let mut out = Vector::zero(bracket.dim());
    for (k, c) in v.iter() {
        if let Some(img) = bracket.get(a, k) {
            out.axpy(c, img);
        }
    }
    out
}

/// `s(a,c)[a,[b,c]] + s(c,b)[c,[a,b]] + s(b,a)[b,[c,a]]` on basis elements.
pub fn jacobiator(bracket: &BilinearMap, rule: SignRule, a: usize, b: usize, c: usize) -> Vector {
    let space = &bracket.space;
    let d = |i| space.degree(i);
    let mut out = Vector::zero(bracket.dim());
    let terms = [(a, b, c, rule.sign(d(a), d(c))), (c, a, b, rule.sign(d(c), d(b))), (b, c, a, rule.sign(d(b), d(a)))];
    for (x, y, z, s) in terms {
        let inner = bracket.on_basis(y, z);
        out.axpy(&s.into(), &bracket_basis_vec(bracket, x, &inner));
    }
    out
}

fn sorted_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut t = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                t.push((a, b, c));
            }
        }
    }
    t
}

fn distinct_orderings((a, b, c): (usize, usize, usize)) -> Vec<(usize, usize, usize)> {
    let mut v = vec![(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
    v.sort();
    v.dedup();
    v
}

/// Checks the graded Jacobi identity on every ordering of every basis triple;
/// each violating multiset is reported once, with the first nonzero residual.
pub fn check_jacobi_with(bracket: &BilinearMap, rule: SignRule, exec: Exec) -> Vec<TripleViolation> {
    let triples = sorted_triples(bracket.dim());
    exec.filter_map(&triples, |&t| {
        distinct_orderings(t).into_iter().find_map(|(a, b, c)| {
            let r = jacobiator(bracket, rule, a, b, c);
            (!r.is_zero()).then(|| TripleViolation { triple: t, ordering: (a, b, c), residual: r })
        })
    })
}

/// Associative algebra with a homogeneous product of degree (0,0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiGradedAssocAlgebra {
    space: Arc<BiGradedSpace>,
    product: BilinearMap,
    unit: Option<Vector>,
}

impl BiGradedAssocAlgebra {
    pub fn new(product: BilinearMap, unit: Option<Vector>) -> Self {
        Self { space: product.space.clone(), product, unit }
    }

    pub fn space(&self) -> &Arc<BiGradedSpace> {
        &self.space
    }

    pub fn name(&self) -> &str {
        self.space.name()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn product_map(&self) -> &BilinearMap {
        &self.product
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vector {
        self.product.on_basis(i, j)
    }

    pub fn mul(&self, v: &Vector, w: &Vector) -> Result<Vector> {
        self.product.apply(v, w)
    }

    /// First basis triple on which `(ab)c != a(bc)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect();
        let bad = Exec::default().filter_map(&triples, |&(a, b, c)| {
            let e = |i| Vector::basis(n, i);
            let left = self.mul(&self.mul_basis(a, b), &e(c)).expect("same space");
            let right = self.mul(&e(a), &self.mul_basis(b, c)).expect("same space");
            (left != right).then_some((a, b, c))
        });
        bad.into_iter().next()
    }

    pub fn check_unit(&self) -> bool {
        let Some(u) = &self.unit else { return true };
        (0..self.dim()).all(|i| {
            let e = Vector::basis(self.dim(), i);
            self.mul(u, &e).ok() == Some(e.clone()) && self.mul(&e, u).ok() == Some(e)
        })
    }
}

/// `[a, b] = ab - (-1)^(eps(a) eps(b)) ba` on basis pairs.
pub fn commutator_lie(alg: &BiGradedAssocAlgebra) -> Result<BiGradedLieAlgebra> {
    if let Some((a, b, c)) = alg.associativity_violation() {
        return Err(Error::NotAssociative(a, b, c));
    }
    let space = alg.space.clone();
    let n = space.dim();
    let mut bracket = BilinearMap::zero(space.clone());
    for i in 0..n {
        for j in 0..n {
            let s = crate::scalar::sign_deligne(space.degree(i), space.degree(j));
            let mut v = alg.mul_basis(i, j);
            v.axpy(&(-s).into(), &alg.mul_basis(j, i));
            bracket.set(i, j, v);
        }
    }
    Ok(BiGradedLieAlgebra::from_bracket(bracket))
}

/// The even part g+ = g00 + g11 with the restricted bracket.
pub fn even_subalgebra(g: &BiGradedLieAlgebra) -> Result<BiGradedLieAlgebra> {
    g.restrict(&format!("{}+", g.name()), &g.even_indices())
}

/// `g00 + g01` (`which = D01`) or `g00 + g10` (`which = D10`), meant to be
/// checked as an ordinary Lie superalgebra.
pub fn super_subalgebra(g: &BiGradedLieAlgebra, which: BiDegree) -> Result<BiGradedLieAlgebra> {
    assert!(which.is_exterior(), "super subalgebra needs an exterior degree");
    let idx: Vec<usize> =
        (0..g.dim()).filter(|&i| g.degree(i) == BiDegree::D00 || g.degree(i) == which).collect();
    g.restrict(&format!("{}[00+{}{}]", g.name(), which.eps1, which.eps2), &idx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanPair {
    pub g00: Vec<usize>,
    pub g11: Vec<usize>,
    /// Basis pairs breaking `[g00,g00] < g00`, `[g00,g11] < g11` or `[g11,g11] < g00`.
    pub violations: Vec<(usize, usize)>,
}

impl CartanPair {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn cartan_pair(g: &BiGradedLieAlgebra) -> Result<CartanPair> {
    if !g.is_even_type() {
        return Err(Error::NotEvenType);
    }
    let g00 = g.space.component(BiDegree::D00);
    let g11 = g.space.component(BiDegree::D11);
    let mut violations = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let want = g.degree(i) + g.degree(j);
            let v = g.bracket(i, j);
            if !v.is_zero() && v.homogeneous_degree(&g.space) != Some(Some(want)) {
                violations.push((i, j));
            }
        }
    }
    Ok(CartanPair { g00, g11, violations })
}

/// A degree-preserving linear map between two bi-graded Lie algebras.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: Arc<BiGradedLieAlgebra>,
    pub target: Arc<BiGradedLieAlgebra>,
    pub map: LinearMap,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<BiGradedLieAlgebra>, target: Arc<BiGradedLieAlgebra>, map: LinearMap) -> Self {
        Self { source, target, map }
    }

    pub fn identity(g: Arc<BiGradedLieAlgebra>) -> Self {
        let map = LinearMap::identity(g.space.clone());
        Self { source: g.clone(), target: g, map }
    }
}

/// Basis pairs with `phi[a,b] != [phi a, phi b]`.
pub fn check_morphism(phi: &AlgebraMorphism) -> Result<Vec<PairViolation>> {
    check_morphism_with(phi, |g, a, b| g.bracket_vec(a, b))
}

pub(crate) fn check_morphism_with(
    phi: &AlgebraMorphism,
    bracket: impl Fn(&BiGradedLieAlgebra, &Vector, &Vector) -> Result<Vector> + Sync,
) -> Result<Vec<PairViolation>> {
    if phi.map.declared_degree != BiDegree::D00 {
        return Err(Error::DegreeViolation(0));
    }
    if let Some(&i) = phi.map.degree_violations().first() {
        return Err(Error::DegreeViolation(i));
    }
    let n = phi.source.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let results = Exec::default().map(&pairs, |&(i, j)| -> Result<Option<PairViolation>> {
        let e = |k| Vector::basis(n, k);
        let lhs = phi.map.apply(&bracket(&phi.source, &e(i), &e(j))?)?;
        let rhs = bracket(&phi.target, &phi.map.image(i), &phi.map.image(j))?;
        let r = lhs.sub(&rhs);
        Ok((!r.is_zero()).then_some(PairViolation { left: i, right: j, residual: r }))
    });
    let mut out = Vec::new();
    for r in results {
        if let Some(v) = r? {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn so3_passes_everything() {
        let g = catalog::so3();
        assert!(g.check_homogeneity().is_empty());
        assert!(g.check_antisymmetry().is_empty());
        assert!(g.check_jacobi().is_empty());
    }

    #[test]
    fn antisymmetry_violation_detected() {
        let s = Arc::new(BiGradedSpace::from_labels("t", &[("a", (0, 0)), ("b", (0, 0)), ("c", (0, 0))]).unwrap());
        let mut m = BilinearMap::zero(s);
        m.set(0, 1, Vector::basis(3, 2));
        m.set(1, 0, Vector::basis(3, 2));
        let g = BiGradedLieAlgebra::from_bracket(m);
        let v = g.check_antisymmetry();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].left, v[0].right), (0, 1));
    }

    #[test]
    fn zero_bracket_is_lie() {
        let s = Arc::new(BiGradedSpace::from_labels("z", &[("a", (1, 0)), ("b", (0, 1))]).unwrap());
        let g = BiGradedLieAlgebra::from_bracket(BilinearMap::zero(s));
        assert!(g.is_lie());
    }

    #[test]
    fn self_pair_rules() {
        // exterior letter: [x,x] unconstrained by antisymmetry
        let s = Arc::new(BiGradedSpace::from_labels("x", &[("z", (0, 0)), ("x", (1, 0))]).unwrap());
        let g = BiGradedLieAlgebra::from_upper(s.clone(), [(1, 1, Vector::basis(2, 0))]);
        assert!(g.check_antisymmetry().is_empty());
        // even letter: [y,y] must vanish
        let s2 = Arc::new(BiGradedSpace::from_labels("y", &[("z", (0, 0)), ("y", (1, 1))]).unwrap());
        let h = BiGradedLieAlgebra::from_upper(s2, [(1, 1, Vector::basis(2, 0))]);
        assert_eq!(h.check_antisymmetry().len(), 1);
    }

    #[test]
    fn jacobi_defect_detected() {
        let g = catalog::so3();
        let mut m = g.bracket_map().clone();
        // [e1,e2] = e3 + e1 breaks Jacobi on {e1,e2,e3} only
        m.set(0, 1, Vector::basis(3, 2).add(&Vector::basis(3, 0)));
        m.set(1, 0, Vector::basis(3, 2).add(&Vector::basis(3, 0)).neg());
        let bad = BiGradedLieAlgebra::from_bracket(m);
        assert!(bad.check_antisymmetry().is_empty());
        let v = bad.check_jacobi();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].triple, (0, 1, 2));
    }

    #[test]
    fn commutator_of_b() {
        let b = catalog::algebra_b();
        let g = commutator_lie(&b).unwrap();
        let i2 = CycloScalar::i().scale(&crate::scalar::int(2));
        assert_eq!(g.bracket(1, 1), Vector::basis(4, 0).scale(&i2));
        assert!(g.bracket(1, 2).is_zero());
        for x in 0..4 {
            assert!(g.bracket(0, x).is_zero());
        }
        assert!(g.is_lie());
    }

    #[test]
    fn commutator_rejects_nonassociative() {
        let s = Arc::new(BiGradedSpace::from_labels("n", &[("a", (0, 0)), ("b", (0, 0))]).unwrap());
        let mut m = BilinearMap::zero(s);
        m.set(0, 0, Vector::basis(2, 1));
        m.set(0, 1, Vector::basis(2, 0));
        let a = BiGradedAssocAlgebra::new(m, None);
        assert!(matches!(commutator_lie(&a), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn even_subalgebras() {
        let g = catalog::so3();
        let e = even_subalgebra(&g).unwrap();
        assert_eq!(e.dim(), 3);
        let u = catalog::unitary_m2();
        assert_eq!(even_subalgebra(&u).unwrap().dim(), 4);
        let s = Arc::new(BiGradedSpace::from_labels("odd", &[("a", (1, 0)), ("b", (0, 1))]).unwrap());
        let odd = BiGradedLieAlgebra::from_bracket(BilinearMap::zero(s));
        assert_eq!(even_subalgebra(&odd).unwrap().dim(), 0);
    }

    #[test]
    fn cartan_pairs() {
        let cp = cartan_pair(&catalog::so3()).unwrap();
        assert_eq!(cp.g00, vec![0]);
        assert_eq!(cp.g11, vec![1, 2]);
        assert!(cp.passes());
        assert_eq!(cartan_pair(&catalog::unitary_m2()), Err(Error::NotEvenType));
        let s = Arc::new(BiGradedSpace::from_labels("ab", &[("a", (0, 0)), ("b", (1, 1))]).unwrap());
        let ab = BiGradedLieAlgebra::from_bracket(BilinearMap::zero(s));
        assert!(cartan_pair(&ab).unwrap().passes());
    }

    #[test]
    fn super_subalgebras_are_superalgebras() {
        for g in [catalog::unitary_m2(), catalog::b_commutator(), catalog::tilde_m22_commutator()] {
            for which in [BiDegree::D01, BiDegree::D10] {
                let h = super_subalgebra(&g, which).unwrap();
                assert!(check_antisymmetry_with(h.bracket_map(), SignRule::Super).is_empty());
                assert!(check_jacobi_with(h.bracket_map(), SignRule::Super, Exec::default()).is_empty());
            }
        }
    }

    #[test]
    fn morphism_checks() {
        let g = Arc::new(catalog::so3());
        assert!(check_morphism(&AlgebraMorphism::identity(g.clone())).unwrap().is_empty());
        let mut map = LinearMap::identity(g.space().clone());
        map.set_image(1, Vector::basis(3, 1).scale(&CycloScalar::from_int(2)));
        let phi = AlgebraMorphism::new(g.clone(), g.clone(), map);
        let bad = check_morphism(&phi).unwrap();
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|v| v.left != v.right));
        let mut skew = LinearMap::identity(g.space().clone());
        skew.set_image(0, Vector::basis(3, 1));
        let phi = AlgebraMorphism::new(g.clone(), g, skew);
        assert_eq!(check_morphism(&phi).unwrap_err(), Error::DegreeViolation(0));
    }
}
