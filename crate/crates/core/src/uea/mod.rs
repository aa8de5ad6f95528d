//! The universal enveloping algebra of a bi-graded Lie algebra, computed on
//! PBW normal words.
//!
//! A word is normal when its letters are weakly increasing in the PBW order
//! and strictly increasing at exterior letters (degrees (1,0) and (0,1)).
//! Out-of-order pairs rewrite as `ab -> s(a,b) ba + [a,b]` and a repeated
//! exterior letter as `xx -> 1/2 [x,x]`.

mod hopf;
mod pbw;
mod weyl;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use hopf::{HopfReport, Tensor};
pub use pbw::{combinatorial_dims, PbwDims};
pub use weyl::SymElement;

use crate::error::{Error, Result};
use crate::lie::BiGradedLieAlgebra;
use crate::linear::format_terms;
use crate::scalar::{rat, sign_deligne, BiDegree, CycloScalar};

/// Largest symmetrization length the Weyl map accepts by default.
pub const DEFAULT_MAX_TRUNCATION: usize = 6;

/// A word in the basis letters of the Lie algebra. Words compare by length
/// first, then lexicographically by basis index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A linear combination of normal words. Each element remembers which
/// enveloping algebra produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaElement {
    algebra: u64,
    terms: BTreeMap<Word, CycloScalar>,
}

impl UeaElement {
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> CycloScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    /// Length of the longest word present; 0 for scalars and for zero.
    pub fn filtration(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    fn check(&self, other: &UeaElement) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &CycloScalar) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add(&self, other: &UeaElement) -> Result<UeaElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UeaElement) -> Result<UeaElement> {
        self.add(&other.scale(&-CycloScalar::one()))
    }

    pub fn scale(&self, c: &CycloScalar) -> UeaElement {
        let mut out = UeaElement { algebra: self.algebra, terms: BTreeMap::new() };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect();
        }
        out
    }

    /// Keeps only words of length at most `n`.
    pub fn truncate(&self, n: usize) -> UeaElement {
        UeaElement {
            algebra: self.algebra,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, CycloScalar>, k: K, c: &CycloScalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Which reducible position the rewriting engine handles next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    Seeded(u64),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

type Terms = BTreeMap<Word, CycloScalar>;

/// The enveloping algebra `U(g)` with its PBW order and a shared cache of
/// normal forms.
pub struct Uea {
    id: u64,
    g: Arc<BiGradedLieAlgebra>,
    order: Vec<usize>,
    rank: Vec<usize>,
    exterior: Vec<bool>,
    weyl_bound: usize,
    cache: RwLock<HashMap<Vec<usize>, Arc<Terms>>>,
}

impl fmt::Debug for Uea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Uea").field("algebra", &self.g.name()).field("order", &self.order).finish()
    }
}

/// The default PBW order: g00, then g11, then g10, then g01, each block in
/// basis order.
pub fn default_order(g: &BiGradedLieAlgebra) -> Vec<usize> {
    [BiDegree::D00, BiDegree::D11, BiDegree::D10, BiDegree::D01]
        .into_iter()
        .flat_map(|d| g.space().component(d))
        .collect()
}

impl Uea {
    pub fn new(g: Arc<BiGradedLieAlgebra>) -> Self {
        let order = default_order(&g);
        Self::with_order(g, order).expect("default order is a permutation")
    }

    /// Uses `order` (a permutation of the basis indices) as the PBW order.
    pub fn with_order(g: Arc<BiGradedLieAlgebra>, order: Vec<usize>) -> Result<Self> {
        let n = g.dim();
        let mut rank = vec![usize::MAX; n];
        for (r, &i) in order.iter().enumerate() {
            if i >= n || rank[i] != usize::MAX {
                return Err(Error::Malformed(format!("PBW order is not a permutation of 0..{n}")));
            }
            rank[i] = r;
        }
        if order.len() != n {
            return Err(Error::Malformed(format!("PBW order is not a permutation of 0..{n}")));
        }
        let exterior = (0..n).map(|i| g.degree(i).is_exterior()).collect();
        Ok(Self {
            id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
            g,
            order,
            rank,
            exterior,
            weyl_bound: DEFAULT_MAX_TRUNCATION,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_weyl_bound(mut self, bound: usize) -> Self {
        self.weyl_bound = bound;
        self
    }

    pub fn weyl_bound(&self) -> usize {
        self.weyl_bound
    }

    pub fn algebra(&self) -> &Arc<BiGradedLieAlgebra> {
        &self.g
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn is_exterior(&self, i: usize) -> bool {
        self.exterior[i]
    }

    /// True if every even-type letter precedes every exterior letter.
    pub fn order_is_even_first(&self) -> bool {
        let first_ext = self.order.iter().position(|&i| self.exterior[i]).unwrap_or(self.order.len());
        self.order[first_ext..].iter().all(|&i| self.exterior[i])
    }

    pub fn word_degree(&self, w: &[usize]) -> BiDegree {
        w.iter().fold(BiDegree::D00, |d, &i| d + self.g.degree(i))
    }

    pub fn is_normal(&self, w: &[usize]) -> bool {
        w.windows(2).all(|p| !self.out_of_order(p[0], p[1]))
    }

    fn out_of_order(&self, a: usize, b: usize) -> bool {
        self.rank[a] > self.rank[b] || (a == b && self.exterior[a])
    }

    fn element(&self, terms: Terms) -> UeaElement {
        UeaElement { algebra: self.id, terms }
    }

    pub fn zero(&self) -> UeaElement {
        self.element(Terms::new())
    }

    pub fn one(&self) -> UeaElement {
        self.scalar(CycloScalar::one())
    }

    pub fn scalar(&self, c: CycloScalar) -> UeaElement {
        let mut out = self.zero();
        out.add_term(Word::empty(), &c);
        out
    }

    pub fn letter(&self, i: usize) -> UeaElement {
        let mut out = self.zero();
        out.add_term(Word::new(vec![i]), &CycloScalar::one());
        out
    }

    /// The image of a Lie algebra vector in `U(g)`.
    pub fn from_vector(&self, v: &crate::linear::Vector) -> UeaElement {
        let mut out = self.zero();
        for (i, c) in v.iter() {
            out.add_term(Word::new(vec![i]), c);
        }
        out
    }

    /// Coefficients of single letters, if the element lies in the image of g.
    pub fn to_vector(&self, a: &UeaElement) -> Option<crate::linear::Vector> {
        if a.terms.keys().any(|w| w.len() != 1) {
            return None;
        }
        Some(crate::linear::Vector::from_terms(self.dim(), a.terms.iter().map(|(w, c)| (w.0[0], c.clone()))))
    }

    /// Parses comma-separated basis labels into letters.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Vec::new());
        }
        s.split(',').map(|l| self.g.space().index_of(l.trim())).collect()
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.0.iter().map(|&i| self.g.space().label(i)).collect::<Vec<_>>().join("*")
    }

    /// Leading filtration first, then by letters.
    pub fn format(&self, a: &UeaElement) -> String {
        let mut terms: Vec<(&Word, &CycloScalar)> = a.terms.iter().collect();
        terms.sort_by(|(u, _), (v, _)| v.len().cmp(&u.len()).then_with(|| u.letters().cmp(v.letters())));
        format_terms(terms.into_iter().map(|(w, c)| (self.format_word(w), c)))
    }

    /// One rewrite at position `p`, as a list of raw words with coefficients.
    fn rewrite_at(&self, w: &[usize], p: usize) -> Vec<(Vec<usize>, CycloScalar)> {
        let (a, b) = (w[p], w[p + 1]);
        let splice = |mid: &[usize]| {
            let mut v = Vec::with_capacity(w.len());
            v.extend_from_slice(&w[..p]);
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[p + 2..]);
            v
        };
        let mut out = Vec::new();
        if a == b {
            let half = CycloScalar::from_rational(rat(1, 2));
            for (k, c) in self.g.bracket(a, a).iter() {
                out.push((splice(&[k]), c * &half));
            }
        } else {
            let s = sign_deligne(self.g.degree(a), self.g.degree(b));
            out.push((splice(&[b, a]), s.into()));
            for (k, c) in self.g.bracket(a, b).iter() {
                out.push((splice(&[k]), c.clone()));
            }
        }
        out
    }

    fn first_reducible(&self, w: &[usize]) -> Option<usize> {
        (0..w.len().saturating_sub(1)).find(|&p| self.out_of_order(w[p], w[p + 1]))
    }

    fn nf_cached(&self, w: &[usize]) -> Arc<Terms> {
        if let Some(t) = self.cache.read().expect("cache lock").get(w) {
            return t.clone();
        }
        let terms = match self.first_reducible(w) {
            None => {
                let mut t = Terms::new();
                t.insert(Word::new(w.to_vec()), CycloScalar::one());
                t
            }
            Some(p) => {
                let mut t = Terms::new();
                for (v, c) in self.rewrite_at(w, p) {
                    for (u, d) in self.nf_cached(&v).iter() {
                        add_into(&mut t, u.clone(), &(&c * d));
                    }
                }
                t
            }
        };
        let terms = Arc::new(terms);
        self.cache.write().expect("cache lock").insert(w.to_vec(), terms.clone());
        terms
    }

    /// Normal form of a raw word (leftmost rewriting, memoized).
    pub fn normal_form(&self, w: &[usize]) -> UeaElement {
        assert!(w.iter().all(|&i| i < self.dim()), "letter out of range");
        self.element((*self.nf_cached(w)).clone())
    }

    /// Normal form computed without the cache, choosing rewrite positions by
    /// `strategy`.
    pub fn normal_form_with(&self, w: &[usize], strategy: RewriteStrategy) -> UeaElement {
        if strategy == RewriteStrategy::Leftmost {
            return self.normal_form(w);
        }
        let mut rng = match strategy {
            RewriteStrategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut pending: BTreeMap<Vec<usize>, CycloScalar> = BTreeMap::new();
        pending.insert(w.to_vec(), CycloScalar::one());
        let mut done = Terms::new();
        while let Some((v, c)) = pending.pop_last() {
            let positions: Vec<usize> =
                (0..v.len().saturating_sub(1)).filter(|&p| self.out_of_order(v[p], v[p + 1])).collect();
            let p = match (&mut rng, positions.as_slice()) {
                (_, []) => {
                    add_into(&mut done, Word::new(v), &c);
                    continue;
                }
                (Some(r), ps) => ps[r.gen_range(0..ps.len())],
                (None, ps) => ps[ps.len() - 1],
            };
            for (u, d) in self.rewrite_at(&v, p) {
                add_into(&mut pending, u, &(&c * &d));
            }
        }
        self.element(done)
    }

    /// Normal form of a linear combination of raw words.
    pub fn normalize(&self, terms: impl IntoIterator<Item = (Vec<usize>, CycloScalar)>) -> UeaElement {
        let mut out = Terms::new();
        for (w, c) in terms {
            for (u, d) in self.nf_cached(&w).iter() {
                add_into(&mut out, u.clone(), &(&c * d));
            }
        }
        self.element(out)
    }

    pub fn check_element(&self, a: &UeaElement) -> Result<()> {
        if a.algebra == self.id {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn multiply(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &UeaElement, b: &UeaElement) -> UeaElement {
        let mut out = Terms::new();
        for (u, c) in &a.terms {
            for (v, d) in &b.terms {
                let cd = c * d;
                for (w, e) in self.nf_cached(&u.concat(v).0).iter() {
                    add_into(&mut out, w.clone(), &(&cd * e));
                }
            }
        }
        self.element(out)
    }

    pub fn power(&self, a: &UeaElement, k: usize) -> Result<UeaElement> {
        self.check_element(a)?;
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul_unchecked(&out, a);
        }
        Ok(out)
    }

    /// Number of cached normal forms.
    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn so3() -> Uea {
        Uea::new(Arc::new(catalog::so3()))
    }

    #[test]
    fn nf_examples() {
        let u = so3();
        assert_eq!(u.format(&u.normal_form(&[1, 0])), "e1*e2 - e3");
        assert_eq!(u.format(&u.normal_form(&[2])), "e3");
        let b = Uea::new(Arc::new(catalog::b_commutator()));
        // q1 q1 = 1/2 [q1,q1] = i times the letter `1`
        assert_eq!(b.normal_form(&[1, 1]), b.letter(0).scale(&CycloScalar::i()));
    }

    #[test]
    fn multiply_examples() {
        let u = so3();
        let e = |i| u.letter(i);
        assert_eq!(u.format(&u.multiply(&e(0), &e(1)).unwrap()), "e1*e2");
        assert_eq!(u.format(&u.multiply(&e(1), &e(0)).unwrap()), "e1*e2 - e3");
        assert_eq!(u.multiply(&u.one(), &e(2)).unwrap(), e(2));
        let other = so3();
        assert_eq!(u.multiply(&e(0), &other.letter(0)), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn order_validation() {
        let g = Arc::new(catalog::so3());
        assert!(Uea::with_order(g.clone(), vec![0, 0, 1]).is_err());
        assert!(Uea::with_order(g.clone(), vec![0, 1]).is_err());
        assert!(Uea::with_order(g, vec![2, 1, 0]).unwrap().order_is_even_first());
        let b = Uea::with_order(Arc::new(catalog::b_commutator()), vec![1, 0, 2, 3]).unwrap();
        assert!(!b.order_is_even_first());
    }

    #[test]
    fn default_order_blocks() {
        let g = catalog::b_commutator();
        // 1 (00), q3 (11), q1 (10), q2 (01)
        assert_eq!(default_order(&g), vec![0, 3, 1, 2]);
    }

    fn arb_word(dim: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0..dim, 0..=5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn strategies_agree_unitary(w in arb_word(8), seed in any::<u64>()) {
            let u = Uea::new(Arc::new(catalog::unitary_m2()));
            let a = u.normal_form(&w);
            prop_assert_eq!(&a, &u.normal_form_with(&w, RewriteStrategy::Rightmost));
            prop_assert_eq!(&a, &u.normal_form_with(&w, RewriteStrategy::Seeded(seed)));
            prop_assert!(a.filtration() <= w.len());
        }

        #[test]
        fn multiplication_associative(a in arb_word(4), b in arb_word(4), c in arb_word(4)) {
            let u = Uea::new(Arc::new(catalog::b_commutator()));
            let (a, b, c) = (u.normal_form(&a), u.normal_form(&b), u.normal_form(&c));
            let left = u.multiply(&u.multiply(&a, &b).unwrap(), &c).unwrap();
            let right = u.multiply(&a, &u.multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
