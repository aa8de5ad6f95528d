//! The Hopf structure on normal words and checks of its axioms.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use super::{add_into, Terms, Uea, UeaElement, Word};
use crate::exec::Exec;
use crate::scalar::{sign_deligne, CycloScalar, Sign};

/// A linear combination of tensor products of normal words, all with the
/// same number of factors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Tensor {
    terms: BTreeMap<Vec<Word>, CycloScalar>,
}

impl Tensor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, factors: Vec<Word>, c: &CycloScalar) {
        add_into(&mut self.terms, factors, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Word>, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn get(&self, factors: &[Word]) -> CycloScalar {
        self.terms.get(factors).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c.clone());
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub words_checked: usize,
    pub coassociativity: Vec<Word>,
    pub counit: Vec<Word>,
    pub multiplicativity: Vec<(Word, Word)>,
    pub cocommutativity: Vec<Word>,
    pub antipode: Vec<Word>,
}

impl HopfReport {
    pub fn passes(&self) -> bool {
        self.coassociativity.is_empty()
            && self.counit.is_empty()
            && self.multiplicativity.is_empty()
            && self.cocommutativity.is_empty()
            && self.antipode.is_empty()
    }
}

impl Uea {
    fn pair_sign(&self, a: &[usize], b: &[usize]) -> Sign {
        sign_deligne(self.word_degree(a), self.word_degree(b))
    }

    /// `Delta(x1...xm) = sum over subsets S of sign(S) x_S (x) x_{not S}`,
    /// where the sign collects `s(x_i, x_j)` for `i` outside `S`, `j` in `S`,
    /// `i < j`. Subsequences of a normal word are normal.
    pub fn delta_word(&self, w: &Word) -> Tensor {
        let letters = w.letters();
        let m = letters.len();
        assert!(m < 64, "word too long for subset expansion");
        let degrees: Vec<_> = letters.iter().map(|&i| self.g.degree(i)).collect();
        let mut out = Tensor::new();
        for mask in 0u64..(1u64 << m) {
            let mut sign = Sign::PLUS;
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for j in 0..m {
                if mask >> j & 1 == 1 {
                    for i in (0..j).filter(|i| mask >> i & 1 == 0) {
                        sign = sign * sign_deligne(degrees[i], degrees[j]);
                    }
                    left.push(letters[j]);
                } else {
                    right.push(letters[j]);
                }
            }
            out.add_term(vec![Word::new(left), Word::new(right)], &sign.into());
        }
        out
    }

    pub fn delta(&self, a: &UeaElement) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in a.iter() {
            for (k, d) in self.delta_word(w).iter() {
                out.add_term(k.clone(), &(c * d));
            }
        }
        out
    }

    pub fn counit(&self, a: &UeaElement) -> CycloScalar {
        a.coeff(&Word::empty())
    }

    /// `S(x1...xm) = (-1)^m (-1)^(sum_{i<j} e(x_i) e(x_j)) nf(xm...x1)` on any raw word.
    pub fn antipode_word(&self, w: &[usize]) -> UeaElement {
        let m = w.len();
        let mut sign = Sign::pow(m as u32);
        for j in 0..m {
            for i in 0..j {
                sign = sign * sign_deligne(self.g.degree(w[i]), self.g.degree(w[j]));
            }
        }
        let rev: Vec<usize> = w.iter().rev().copied().collect();
        self.normal_form(&rev).scale(&sign.into())
    }

    pub fn antipode(&self, a: &UeaElement) -> UeaElement {
        let mut out = self.zero();
        for (w, c) in a.iter() {
            for (u, d) in self.antipode_word(w.letters()).iter() {
                out.add_term(u.clone(), &(c * d));
            }
        }
        out
    }

    /// Product in the tensor power with Koszul signs:
    /// `(a1 (x) ... (x) an)(b1 (x) ... (x) bn) = s * a1 b1 (x) ... (x) an bn`, where `s`
    /// collects `s(a_i, b_j)` for `i > j`.
    pub fn tensor_mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (ka, ca) in x.iter() {
            for (kb, cb) in y.iter() {
                assert_eq!(ka.len(), kb.len(), "tensor arity mismatch");
                let n = ka.len();
                let mut sign = Sign::PLUS;
                for i in 0..n {
                    for j in 0..i {
                        sign = sign * self.pair_sign(ka[i].letters(), kb[j].letters());
                    }
                }
                let mut acc: Vec<(Vec<Word>, CycloScalar)> = vec![(Vec::new(), sign.apply(ca * cb))];
                for f in 0..n {
                    let prod = self.nf_cached(&ka[f].concat(&kb[f]).0);
                    let mut next = Vec::with_capacity(acc.len() * prod.len());
                    for (k, c) in &acc {
                        for (w, d) in prod.iter() {
                            let mut k2 = k.clone();
                            k2.push(w.clone());
                            next.push((k2, c * d));
                        }
                    }
                    acc = next;
                }
                for (k, c) in acc {
                    out.add_term(k, &c);
                }
            }
        }
        out
    }

    /// Applies the coproduct to factor `pos` of every term.
    pub fn delta_at(&self, t: &Tensor, pos: usize) -> Tensor {
        let mut out = Tensor::new();
        for (k, c) in t.iter() {
            for (split, d) in self.delta_word(&k[pos]).iter() {
                let mut k2 = k[..pos].to_vec();
                k2.extend(split.iter().cloned());
                k2.extend(k[pos + 1..].iter().cloned());
                out.add_term(k2, &(c * d));
            }
        }
        out
    }

    /// `a (x) b -> s(a,b) b (x) a`.
    pub fn flip(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (k, c) in t.iter() {
            let s = self.pair_sign(k[0].letters(), k[1].letters());
            out.add_term(vec![k[1].clone(), k[0].clone()], &s.apply(c.clone()));
        }
        out
    }

    /// Applies the counit to factor `pos`, dropping it.
    pub fn counit_at(&self, t: &Tensor, pos: usize) -> Tensor {
        let mut out = Tensor::new();
        for (k, c) in t.iter() {
            if k[pos].is_empty() {
                let mut k2 = k.clone();
                k2.remove(pos);
                out.add_term(k2, c);
            }
        }
        out
    }

    pub fn single(&self, a: &UeaElement) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in a.iter() {
            out.add_term(vec![w.clone()], c);
        }
        out
    }

    /// `mu (S (x) id)` on a two-factor tensor.
    pub fn mu_antipode_left(&self, t: &Tensor) -> UeaElement {
        let mut out = Terms::new();
        for (k, c) in t.iter() {
            for (u, d) in self.antipode_word(k[0].letters()).iter() {
                for (w, e) in self.nf_cached(&u.concat(&k[1]).0).iter() {
                    add_into(&mut out, w.clone(), &(&(c * d) * e));
                }
            }
        }
        self.element(out)
    }

    /// `mu (id (x) S)` on a two-factor tensor.
    pub fn mu_antipode_right(&self, t: &Tensor) -> UeaElement {
        let mut out = Terms::new();
        for (k, c) in t.iter() {
            for (u, d) in self.antipode_word(k[1].letters()).iter() {
                for (w, e) in self.nf_cached(&k[0].concat(u).0).iter() {
                    add_into(&mut out, w.clone(), &(&(c * d) * e));
                }
            }
        }
        self.element(out)
    }

    /// Checks the Hopf axioms on every normal word of length at most `max_len`
    /// (and on every pair of them with total length at most `max_len` for
    /// multiplicativity).
    pub fn hopf_check(&self, max_len: usize, exec: Exec) -> HopfReport {
        let words = self.normal_words(max_len);
        let per_word = exec.map(&words, |w| {
            let d = self.delta_word(w);
            let single = {
                let mut t = Tensor::new();
                t.add_term(vec![w.clone()], &CycloScalar::one());
                t
            };
            let coassoc = self.delta_at(&d, 0) != self.delta_at(&d, 1);
            let counit = self.counit_at(&d, 0) != single || self.counit_at(&d, 1) != single;
            let cocomm = self.flip(&d) != d;
            let eps = if w.is_empty() { self.one() } else { self.zero() };
            let antipode = self.mu_antipode_left(&d) != eps || self.mu_antipode_right(&d) != eps;
            (coassoc, counit, cocomm, antipode)
        });
        let pairs: Vec<(Word, Word)> = words
            .iter()
            .flat_map(|a| words.iter().filter(move |b| a.len() + b.len() <= max_len).map(move |b| (a.clone(), b.clone())))
            .collect();
        let multiplicativity = exec.filter_map(&pairs, |(a, b)| {
            let ab = self.normal_form(&a.concat(b).0);
            let lhs = self.delta(&ab);
            let rhs = self.tensor_mul(&self.delta_word(a), &self.delta_word(b));
            (lhs != rhs).then(|| (a.clone(), b.clone()))
        });
        let mut report = HopfReport { words_checked: words.len(), multiplicativity, ..HopfReport::default() };
        for (w, (coassoc, counit, cocomm, antipode)) in words.iter().zip(per_word) {
            if coassoc {
                report.coassociativity.push(w.clone());
            }
            if counit {
                report.counit.push(w.clone());
            }
            if cocomm {
                report.cocommutativity.push(w.clone());
            }
            if antipode {
                report.antipode.push(w.clone());
            }
        }
        report
    }

    /// True if `Delta(a) = a (x) 1 + 1 (x) a`.
    pub fn is_primitive(&self, a: &UeaElement) -> bool {
        let mut want = Tensor::new();
        for (w, c) in a.iter() {
            want.add_term(vec![w.clone(), Word::empty()], c);
            want.add_term(vec![Word::empty(), w.clone()], c);
        }
        self.delta(a) == want
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_traits::Zero;

    use super::*;
    use crate::catalog;

    #[test]
    fn delta_examples() {
        let u = Uea::new(Arc::new(catalog::so3()));
        let w = |v: Vec<usize>| Word::new(v);
        let d = u.delta_word(&w(vec![0]));
        assert_eq!(d.nnz(), 2);
        assert_eq!(d.get(&[w(vec![0]), w(vec![])]), CycloScalar::one());
        assert_eq!(d.get(&[w(vec![]), w(vec![0])]), CycloScalar::one());
        let d1 = u.delta_word(&Word::empty());
        assert_eq!(d1.get(&[w(vec![]), w(vec![])]), CycloScalar::one());
        assert_eq!(d1.nnz(), 1);
        let d2 = u.delta_word(&w(vec![0, 1]));
        assert_eq!(d2.nnz(), 4);
        assert_eq!(d2.get(&[w(vec![1]), w(vec![0])]), CycloScalar::one());
        assert_eq!(d2.get(&[w(vec![0]), w(vec![1])]), CycloScalar::one());
    }

    #[test]
    fn delta_sign_on_anticommuting_letters() {
        // q2 (0,1) and q3 (1,1) anticommute under the Deligne rule
        let u = Uea::new(Arc::new(catalog::b_commutator()));
        let w = u.normal_form(&[3, 2]);
        let word = w.iter().find(|(w, _)| w.len() == 2).unwrap().0.clone();
        let d = u.delta_word(&word);
        assert_eq!(d.get(&[Word::new(vec![2]), Word::new(vec![3])]), -CycloScalar::one());
    }

    #[test]
    fn antipode_examples() {
        let u = Uea::new(Arc::new(catalog::so3()));
        assert_eq!(u.antipode(&u.letter(0)), u.letter(0).scale(&-CycloScalar::one()));
        assert_eq!(u.antipode(&u.one()), u.one());
        assert_eq!(u.antipode_word(&[0, 1]), u.normal_form(&[1, 0]));
    }

    #[test]
    fn counit_examples() {
        let u = Uea::new(Arc::new(catalog::so3()));
        assert_eq!(u.counit(&u.one()), CycloScalar::one());
        assert!(u.counit(&u.letter(0)).is_zero());
        let a = u.scalar(CycloScalar::from_int(3)).add(&u.normal_form(&[0, 1]).scale(&CycloScalar::from_int(2))).unwrap();
        assert_eq!(u.counit(&a), CycloScalar::from_int(3));
    }

    #[test]
    fn hopf_axioms_b() {
        let u = Uea::new(Arc::new(catalog::b_commutator()));
        let r = u.hopf_check(3, Exec::default());
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn hopf_detects_broken_antipode_sign() {
        let u = Uea::new(Arc::new(catalog::so3()));
        let d = u.delta_word(&Word::new(vec![0]));
        let mut broken = Tensor::new();
        for (k, c) in d.iter() {
            broken.add_term(k.clone(), c);
        }
        broken.add_term(vec![Word::new(vec![0]), Word::empty()], &CycloScalar::one());
        assert_ne!(u.mu_antipode_left(&broken), u.zero());
    }

    mod props {
        use std::sync::Arc;

        use proptest::prelude::*;

        use super::super::*;
        use crate::catalog;

        fn word(dim: usize) -> impl Strategy<Value = Vec<usize>> {
            proptest::collection::vec(0..dim, 0..=3)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn delta_is_multiplicative_unitary(a in word(8), b in word(8)) {
                let u = Uea::new(Arc::new(catalog::unitary_m2()));
                let (x, y) = (u.normal_form(&a), u.normal_form(&b));
                let lhs = u.delta(&u.multiply(&x, &y).unwrap());
                prop_assert_eq!(lhs, u.tensor_mul(&u.delta(&x), &u.delta(&y)));
            }

            #[test]
            fn antipode_reverses_products(a in word(4), b in word(4)) {
                let u = Uea::new(Arc::new(catalog::b_commutator()));
                let (x, y) = (u.normal_form(&a), u.normal_form(&b));
                let lhs = u.antipode(&u.multiply(&x, &y).unwrap());
                // S(xy) = s(x,y) S(y) S(x) for homogeneous x, y
                let s = crate::scalar::sign_deligne(u.word_degree(&a), u.word_degree(&b));
                let rhs = u.multiply(&u.antipode(&y), &u.antipode(&x)).unwrap().scale(&s.into());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
