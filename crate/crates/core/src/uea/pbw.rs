//! PBW bookkeeping: enumeration of normal words, dimension tables against
//! the symmetric-algebra count, the even-times-exterior factorization and
//! the primitive elements at low filtration.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{Tensor, Uea, UeaElement, Word};
use crate::error::{Error, Result};
use crate::linalg::{RowReduced, SparseRow};
use crate::scalar::CycloScalar;

/// Dimensions of each filtration degree `0..=n`, by enumeration of normal
/// words and by the symmetric-algebra formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwDims {
    pub enumerated: Vec<u64>,
    pub combinatorial: Vec<u64>,
}

impl PbwDims {
    pub fn agree(&self) -> bool {
        self.enumerated == self.combinatorial
    }

    pub fn cumulative(&self) -> Vec<u64> {
        self.enumerated
            .iter()
            .scan(0, |acc, &d| {
                *acc += d;
                Some(*acc)
            })
            .collect()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `sum_j C(d_ext, j) * multichoose(d_even, n - j)` for each `n <= n_max`.
pub fn combinatorial_dims(d_even: usize, d_ext: usize, n_max: usize) -> Vec<u64> {
    let multichoose = |d: u64, k: u64| if d == 0 { u64::from(k == 0) } else { binomial(d + k - 1, k) };
    (0..=n_max as u64)
        .map(|n| (0..=n.min(d_ext as u64)).map(|j| binomial(d_ext as u64, j) * multichoose(d_even as u64, n - j)).sum())
        .collect()
}

impl Uea {
    /// All normal words of length exactly `n`, sorted.
    pub fn normal_words_of_len(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.extend_words(n, 0, &mut cur, &mut out);
        out.sort();
        out
    }

    fn extend_words(&self, n: usize, min_rank: usize, cur: &mut Vec<usize>, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word::new(cur.clone()));
            return;
        }
        for r in min_rank..self.order.len() {
            let letter = self.order[r];
            cur.push(letter);
            let next = if self.exterior[letter] { r + 1 } else { r };
            self.extend_words(n, next, cur, out);
            cur.pop();
        }
    }

    /// All normal words of length at most `n`, sorted by length then letters.
    pub fn normal_words(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|k| self.normal_words_of_len(k)).collect()
    }

    pub fn pbw_dims(&self, n_max: usize) -> PbwDims {
        let d_ext = self.exterior.iter().filter(|&&e| e).count();
        let d_even = self.dim() - d_ext;
        PbwDims {
            enumerated: (0..=n_max).map(|n| self.normal_words_of_len(n).len() as u64).collect(),
            combinatorial: combinatorial_dims(d_even, d_ext, n_max),
        }
    }

    /// Writes `a` as `sum_i even_i * odd_i` with `even_i` in `U(g+)` and
    /// `odd_i` distinct exterior monomials, sorted by the exterior word.
    pub fn pbw_factorize(&self, a: &UeaElement) -> Result<Vec<(UeaElement, Word)>> {
        self.check_element(a)?;
        if !self.order_is_even_first() {
            return Err(Error::BadBasisOrder);
        }
        let mut groups: BTreeMap<Word, UeaElement> = BTreeMap::new();
        for (w, c) in a.iter() {
            let letters = w.letters();
            let split = letters.iter().position(|&i| self.exterior[i]).unwrap_or(letters.len());
            let even = Word::new(letters[..split].to_vec());
            let odd = Word::new(letters[split..].to_vec());
            groups.entry(odd).or_insert_with(|| self.zero()).add_term(even, c);
        }
        Ok(groups.into_iter().map(|(odd, even)| (even, odd)).collect())
    }

    /// Reassembles `sum_i even_i * odd_i`.
    pub fn pbw_assemble(&self, parts: &[(UeaElement, Word)]) -> UeaElement {
        let mut out = self.zero();
        for (even, odd) in parts {
            for (w, c) in even.iter() {
                out.add_term(w.concat(odd), c);
            }
        }
        out
    }

    /// Basis of the primitive elements among normal words of length at most
    /// `max_len`, from the linear condition `Delta(a) = a (x) 1 + 1 (x) a`.
    pub fn primitive_space(&self, max_len: usize) -> Vec<UeaElement> {
        let words = self.normal_words(max_len);
        // one unknown per word; one equation per tensor key
        let mut columns: BTreeMap<Vec<Word>, SparseRow> = BTreeMap::new();
        for (k, w) in words.iter().enumerate() {
            let mut t = self.delta_word(w);
            t.add_term(vec![w.clone(), Word::empty()], &-CycloScalar::one());
            t.add_term(vec![Word::empty(), w.clone()], &-CycloScalar::one());
            add_column(&mut columns, k, &t);
        }
        let mut rr = RowReduced::new();
        for row in columns.into_values() {
            rr.insert(row);
        }
        rr.nullspace(words.len())
            .into_iter()
            .map(|v| {
                let mut e = self.zero();
                for (k, c) in v {
                    e.add_term(words[k].clone(), &c);
                }
                e
            })
            .collect()
    }
}

fn add_column(rows: &mut BTreeMap<Vec<Word>, SparseRow>, col: usize, t: &Tensor) {
    for (key, c) in t.iter() {
        if !c.is_zero() {
            rows.entry(key.clone()).or_default().insert(col, c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::lie::BiGradedLieAlgebra;
    use crate::linear::{BiGradedSpace, Vector};

    fn odd_abelian() -> BiGradedLieAlgebra {
        let s = BiGradedSpace::from_labels("odd2", &[("x", (1, 0)), ("y", (0, 1))]).unwrap();
        BiGradedLieAlgebra::from_upper(Arc::new(s), [])
    }

    #[test]
    fn so3_dims() {
        let u = Uea::new(Arc::new(catalog::so3()));
        let d = u.pbw_dims(4);
        assert_eq!(d.enumerated, vec![1, 3, 6, 10, 15]);
        assert!(d.agree());
        assert_eq!(d.cumulative()[2], 10);
    }

    #[test]
    fn exterior_dims() {
        let u = Uea::new(Arc::new(odd_abelian()));
        assert_eq!(u.pbw_dims(3).enumerated, vec![1, 2, 1, 0]);
        assert!(u.pbw_dims(3).agree());
    }

    #[test]
    fn empty_algebra_dims() {
        let s = BiGradedSpace::from_labels("zero", &[]).unwrap();
        let u = Uea::new(Arc::new(BiGradedLieAlgebra::from_upper(Arc::new(s), [])));
        assert_eq!(u.pbw_dims(3).enumerated, vec![1, 0, 0, 0]);
        assert_eq!(combinatorial_dims(0, 0, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn factorize_examples() {
        // e (0,0) and x, y (1,0) with [x,e] = y
        let s = Arc::new(BiGradedSpace::from_labels("fx", &[("e", (0, 0)), ("x", (1, 0)), ("y", (1, 0))]).unwrap());
        let g = BiGradedLieAlgebra::from_upper(s, [(0, 1, Vector::basis(3, 2).neg())]);
        assert!(g.is_lie());
        let u = Uea::new(Arc::new(g));
        let parts = u.pbw_factorize(&u.letter(0)).unwrap();
        assert_eq!(parts, vec![(u.letter(0), Word::empty())]);
        let parts = u.pbw_factorize(&u.letter(1)).unwrap();
        assert_eq!(parts, vec![(u.one(), Word::new(vec![1]))]);
        let a = u.normal_form(&[1, 0]);
        let parts = u.pbw_factorize(&a).unwrap();
        assert_eq!(parts, vec![(u.letter(0), Word::new(vec![1])), (u.one(), Word::new(vec![2]))]);
        assert_eq!(u.pbw_assemble(&parts), a);
    }

    #[test]
    fn factorize_rejects_interleaved_order() {
        let u = Uea::with_order(Arc::new(catalog::b_commutator()), vec![1, 0, 2, 3]).unwrap();
        assert_eq!(u.pbw_factorize(&u.one()), Err(Error::BadBasisOrder));
    }

    #[test]
    fn primitives_are_letters() {
        for g in [catalog::so3(), catalog::b_commutator()] {
            let u = Uea::new(Arc::new(g));
            let prim = u.primitive_space(2);
            assert_eq!(prim.len(), u.dim());
            assert!(prim.iter().all(|p| p.filtration() == 1 && u.to_vector(p).is_some()));
        }
    }
}
