//! The symmetric algebra on the same normal words and the Weyl
//! symmetrization map into the enveloping algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{add_into, Tensor, Terms, Uea, UeaElement, Word};
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseRow};
use crate::scalar::rational::factorial;
use crate::scalar::{sign_deligne, CycloScalar, Sign};

/// An element of `Sym(g)`: normal words multiplied with the swap sign only.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymElement {
    terms: BTreeMap<Word, CycloScalar>,
}

impl SymElement {
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &CycloScalar) {
        add_into(&mut self.terms, w, c);
    }
}

/// Every permutation of `0..m`, in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn go(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(m, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    go(m, &mut cur, &mut used, &mut out);
    out
}

impl Uea {
    /// Koszul sign of listing the letters of `w` in the order `perm`.
    fn koszul_sign(&self, w: &[usize], perm: &[usize]) -> Sign {
        let mut s = Sign::PLUS;
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] > perm[b] {
                    s = s * sign_deligne(self.g.degree(w[perm[a]]), self.g.degree(w[perm[b]]));
                }
            }
        }
        s
    }

    /// The class of a raw word in `Sym(g)`: sorted into PBW order with the
    /// swap sign, zero if an exterior letter repeats.
    pub fn sym_word(&self, w: &[usize]) -> SymElement {
        let mut idx: Vec<usize> = (0..w.len()).collect();
        idx.sort_by_key(|&k| (self.rank[w[k]], k));
        let sorted: Vec<usize> = idx.iter().map(|&k| w[k]).collect();
        let mut out = SymElement::default();
        if self.is_normal(&sorted) {
            out.add_term(Word::new(sorted), &self.koszul_sign(w, &idx).into());
        }
        out
    }

    pub fn sym_multiply(&self, a: &SymElement, b: &SymElement) -> SymElement {
        let mut out = SymElement::default();
        for (u, c) in a.iter() {
            for (v, d) in b.iter() {
                let cd = c * d;
                for (w, e) in self.sym_word(&u.concat(v).0).iter() {
                    out.add_term(w.clone(), &(&cd * e));
                }
            }
        }
        out
    }

    /// The coproduct of `Sym(g)`, which on normal words has the same
    /// subset expansion as in `U(g)`.
    pub fn sym_delta(&self, a: &SymElement) -> Tensor {
        let mut out = Tensor::new();
        for (w, c) in a.iter() {
            for (k, d) in self.delta_word(w).iter() {
                out.add_term(k.clone(), &(c * d));
            }
        }
        out
    }

    fn weyl_word(&self, w: &Word) -> Result<Terms> {
        let m = w.len();
        if m > self.weyl_bound {
            return Err(Error::TruncationExceeded { requested: m, bound: self.weyl_bound });
        }
        let inv = CycloScalar::from_rational(factorial(m)).inv().expect("factorial is nonzero");
        let letters = w.letters();
        let mut out = Terms::new();
        for perm in permutations(m) {
            let raw: Vec<usize> = perm.iter().map(|&k| letters[k]).collect();
            let c = self.koszul_sign(letters, &perm).apply(inv.clone());
            for (u, d) in self.nf_cached(&raw).iter() {
                add_into(&mut out, u.clone(), &(&c * d));
            }
        }
        Ok(out)
    }

    /// `W(x1...xm) = 1/m! sum_sigma eps(sigma) x_sigma(1) ... x_sigma(m)`.
    pub fn weyl_map(&self, s: &SymElement) -> Result<UeaElement> {
        let mut out = Terms::new();
        for (w, c) in s.iter() {
            for (u, d) in self.weyl_word(w)?.iter() {
                add_into(&mut out, u.clone(), &(c * d));
            }
        }
        Ok(self.element(out))
    }

    /// Applies the Weyl map to every factor of a tensor.
    pub fn weyl_tensor(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::new();
        for (k, c) in t.iter() {
            let mut acc: Vec<(Vec<Word>, CycloScalar)> = vec![(Vec::new(), c.clone())];
            for f in k {
                let img = self.weyl_word(f)?;
                let mut next = Vec::new();
                for (key, x) in &acc {
                    for (w, y) in img.iter() {
                        let mut k2 = key.clone();
                        k2.push(w.clone());
                        next.push((k2, x * y));
                    }
                }
                acc = next;
            }
            for (key, x) in acc {
                out.add_term(key, &x);
            }
        }
        Ok(out)
    }

    /// Normal words of length at most `max_len` on which
    /// `Delta_U W != (W (x) W) Delta_Sym`.
    pub fn weyl_coalgebra_check(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut bad = Vec::new();
        for w in self.normal_words(max_len) {
            let mut s = SymElement::default();
            s.add_term(w.clone(), &CycloScalar::one());
            let lhs = self.delta(&self.weyl_map(&s)?);
            let rhs = self.weyl_tensor(&self.sym_delta(&s))?;
            if lhs != rhs {
                bad.push(w);
            }
        }
        Ok(bad)
    }

    /// `(rank, count)` of the Weyl images of the normal words of length `n`.
    pub fn weyl_rank(&self, n: usize) -> Result<(usize, usize)> {
        let words = self.normal_words_of_len(n);
        let all = self.normal_words(n);
        let index: BTreeMap<&Word, usize> = all.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let mut rows = Vec::with_capacity(words.len());
        for w in &words {
            let mut s = SymElement::default();
            s.add_term(w.clone(), &CycloScalar::one());
            let img = self.weyl_map(&s)?;
            let row: SparseRow = img.iter().map(|(u, c)| (index[u], c.clone())).filter(|(_, c)| !c.is_zero()).collect();
            rows.push(row);
        }
        Ok((rank(rows), words.len()))
    }
}
