use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{commutator_lie, AlgebraMorphism, BiGradedAssocAlgebra, BiGradedLieAlgebra};
use crate::linalg::{solve_combination, Matrix, SparseRow};
use crate::linear::{BasisElement, BiGradedSpace, BilinearMap, LinearMap, Vector};
use crate::scalar::{BiDegree, CycloScalar};

use super::{assoc_from_matrices, tilde_extension, tilde_label};

/// Which eigen-piece of the star operation a basis matrix belongs to:
/// `U` pieces satisfy `a* = -a`, `H` pieces `a* = a`; the digit is the
/// Z2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarClass {
    U0,
    U1,
    H0,
    H1,
}

impl StarClass {
    pub fn degree(self) -> BiDegree {
        match self {
            StarClass::U0 => BiDegree::D00,
            StarClass::U1 => BiDegree::D10,
            StarClass::H0 => BiDegree::D11,
            StarClass::H1 => BiDegree::D01,
        }
    }

    fn grading(self) -> u8 {
        match self {
            StarClass::U0 | StarClass::H0 => 0,
            StarClass::U1 | StarClass::H1 => 1,
        }
    }

    fn star_sign(self) -> i64 {
        match self {
            StarClass::U0 | StarClass::U1 => -1,
            StarClass::H0 | StarClass::H1 => 1,
        }
    }
}

/// A Z2-graded matrix algebra with an anti-linear anti-involution, presented
/// through a basis of its real form adapted to the star and the grading.
#[derive(Clone, Debug)]
pub struct StarMatrixAlgebra {
    pub name: String,
    /// Diagonal matrix units: entry `k` is the Z2 degree of row/column `k`.
    pub parity: Vec<u8>,
    pub star: fn(&Matrix) -> Matrix,
    pub basis: Vec<(String, Matrix, StarClass)>,
}

impl StarMatrixAlgebra {
    pub fn size(&self) -> usize {
        self.parity.len()
    }

    fn grading_sign(&self, m: &Matrix) -> Option<u8> {
        let n = self.size();
        let mut seen = None;
        for r in 0..n {
            for c in 0..n {
                if !m[(r, c)].is_zero() {
                    let d = self.parity[r] ^ self.parity[c];
                    if seen.is_some_and(|s| s != d) {
                        return None;
                    }
                    seen = Some(d);
                }
            }
        }
        Some(seen.unwrap_or(0))
    }

    /// Checks that the star is an involutive anti-linear anti-automorphism on
    /// the basis and that every basis matrix sits in its declared piece.
    pub fn validate(&self) -> Result<()> {
        let star = self.star;
        let i = CycloScalar::i();
        for (k, (_, m, _)) in self.basis.iter().enumerate() {
            if star(&star(m)) != *m {
                return Err(Error::StarNotInvolutive(k));
            }
            if star(&m.scale(&i)) != star(m).scale(&-i.clone()) {
                return Err(Error::StarNotAntiAutomorphism(k, k));
            }
        }
        for (a, (_, ma, _)) in self.basis.iter().enumerate() {
            for (b, (_, mb, _)) in self.basis.iter().enumerate() {
                if star(&(ma * mb)) != &star(mb) * &star(ma) {
                    return Err(Error::StarNotAntiAutomorphism(a, b));
                }
            }
        }
        for (k, (_, m, class)) in self.basis.iter().enumerate() {
            let adapted = star(m) == m.scale(&CycloScalar::from_int(class.star_sign()))
                && self.grading_sign(m) == Some(class.grading());
            if !adapted {
                return Err(Error::BasisNotAdapted(k));
            }
        }
        Ok(())
    }

    fn real_rows(m: &Matrix) -> SparseRow {
        let half = CycloScalar::from_rational(crate::scalar::rat(1, 2));
        let len = m.entries().len();
        let mut row = SparseRow::new();
        for (k, z) in m.entries().iter().enumerate() {
            let re = &(z + &z.conj()) * &half;
            let im = &(&(z - &z.conj()) * &half) * &-CycloScalar::i();
            if !re.is_zero() {
                row.insert(k, re);
            }
            if !im.is_zero() {
                row.insert(len + k, im);
            }
        }
        row
    }

    /// Real coordinates of `m` in the adapted basis, or `None` if `m` leaves
    /// the real span.
    pub fn real_coordinates(&self, m: &Matrix) -> Option<Vec<CycloScalar>> {
        let rows: Vec<SparseRow> = self.basis.iter().map(|(_, b, _)| Self::real_rows(b)).collect();
        solve_combination(&rows, &Self::real_rows(m))
    }

    /// The full matrix algebra with matrix units as basis, graded by `parity`.
    pub fn ambient(&self) -> BiGradedAssocAlgebra {
        matrix_superalgebra(&format!("{}-ambient", self.name), &self.parity)
    }
}

/// Matrix units `E{r}{c}` (1-based), even ones first, each block row-major.
pub(crate) fn matrix_units(parity: &[u8]) -> Vec<(usize, usize, u8)> {
    let n = parity.len();
    let all: Vec<(usize, usize, u8)> =
        (0..n).flat_map(|r| (0..n).map(move |c| (r, c, parity[r] ^ parity[c]))).collect();
    let mut out: Vec<_> = all.iter().copied().filter(|u| u.2 == 0).collect();
    out.extend(all.iter().copied().filter(|u| u.2 == 1));
    out
}

pub(crate) fn matrix_superalgebra(name: &str, parity: &[u8]) -> BiGradedAssocAlgebra {
    let n = parity.len();
    let units = matrix_units(parity);
    let basis = units
        .iter()
        .map(|&(r, c, d)| BasisElement { label: format!("E{}{}", r + 1, c + 1), degree: BiDegree::new(d, 0) })
        .collect();
    let space = Arc::new(BiGradedSpace::new(name, basis).expect("matrix unit labels are unique"));
    let mats: Vec<Matrix> = units
        .iter()
        .map(|&(r, c, _)| {
            let mut m = Matrix::zeros(n, n);
            m[(r, c)] = CycloScalar::one();
            m
        })
        .collect();
    let unit = Vector::from_terms(
        units.len(),
        units.iter().enumerate().filter(|(_, u)| u.0 == u.1).map(|(k, _)| (k, CycloScalar::one())),
    );
    assoc_from_matrices(space, &mats, Some(unit)).expect("matrix units close")
}

/// The bracket on the adapted basis: graded commutator within the even
/// pieces, against `u0`, and between `u1` and `h1`; `i` times the
/// anticommutator for `u1` with `u1` or `h0`, and `-i` times it for `h1`
/// with `h1` or `h0`.
fn unitary_bracket(ca: StarClass, cb: StarClass, a: &Matrix, b: &Matrix) -> Matrix {
    use StarClass::*;
    let comm = || &(a * b) - &(b * a);
    let anti = || &(a * b) + &(b * a);
    match (ca, cb) {
        (U0, _) | (_, U0) | (H0, H0) | (U1, H1) | (H1, U1) => comm(),
        (U1, U1) | (U1, H0) | (H0, U1) => anti().scale(&CycloScalar::i()),
        (H1, H1) | (H1, H0) | (H0, H1) => anti().scale(&-CycloScalar::i()),
    }
}

/// The bi-graded Lie algebra `u0 + u1 + h0 + h1` on the real form of a
/// star matrix algebra.
pub fn unitary_bigraded(a: &StarMatrixAlgebra) -> Result<BiGradedLieAlgebra> {
    a.validate()?;
    let basis: Vec<BasisElement> = a
        .basis
        .iter()
        .map(|(label, _, class)| BasisElement { label: label.clone(), degree: class.degree() })
        .collect();
    let space = Arc::new(BiGradedSpace::new(a.name.clone(), basis)?);
    let n = space.dim();
    let mut bracket = BilinearMap::zero(space.clone());
    for (i, (_, mi, ci)) in a.basis.iter().enumerate() {
        for (j, (_, mj, cj)) in a.basis.iter().enumerate() {
            let m = unitary_bracket(*ci, *cj, mi, mj);
            let coeffs = a.real_coordinates(&m).ok_or_else(|| {
                Error::Malformed(format!("bracket of `{}` and `{}` leaves the real span", a.basis[i].0, a.basis[j].0))
            })?;
            bracket.set(i, j, Vector::from_terms(n, coeffs.into_iter().enumerate()));
        }
    }
    Ok(BiGradedLieAlgebra::from_bracket(bracket))
}

/// `u0 -> a`, `u1 -> a q1`, `h1 -> a q2`, `h0 -> a q3` into the commutator
/// algebra of the tilde extension of the ambient matrix algebra.
pub fn unitary_embedding(a: &StarMatrixAlgebra) -> Result<AlgebraMorphism> {
    let source = Arc::new(unitary_bigraded(a)?);
    let tilde = tilde_extension(&a.ambient())?;
    let target = Arc::new(commutator_lie(&tilde)?);
    let ts = target.space().clone();
    let mut map = LinearMap::new(source.space().clone(), ts.clone(), BiDegree::D00);
    let n = a.size();
    for (k, (_, m, class)) in a.basis.iter().enumerate() {
        let q = match class {
            StarClass::U0 => 0,
            StarClass::U1 => 1,
            StarClass::H1 => 2,
            StarClass::H0 => 3,
        };
        let mut v = Vector::zero(ts.dim());
        for r in 0..n {
            for c in 0..n {
                if !m[(r, c)].is_zero() {
                    let idx = ts.index_of(&tilde_label(&format!("E{}{}", r + 1, c + 1), q))?;
                    v.add_term(idx, &m[(r, c)]);
                }
            }
        }
        map.set_image(k, v);
    }
    Ok(AlgebraMorphism::new(source, target, map))
}

/// 2x2 complex matrices with conjugate transpose, diagonal even and
/// off-diagonal odd.
pub fn mat2_star_algebra() -> StarMatrixAlgebra {
    let z = CycloScalar::zero;
    let o = CycloScalar::one;
    let i = CycloScalar::i;
    let m = |rows: [[CycloScalar; 2]; 2]| Matrix::from_rows(rows.into_iter().map(Vec::from).collect());
    StarMatrixAlgebra {
        name: "unitary-m2".into(),
        parity: vec![0, 1],
        star: Matrix::conj_transpose,
        basis: vec![
            ("u0a".into(), m([[i(), z()], [z(), z()]]), StarClass::U0),
            ("u0b".into(), m([[z(), z()], [z(), i()]]), StarClass::U0),
            ("h0a".into(), m([[o(), z()], [z(), z()]]), StarClass::H0),
            ("h0b".into(), m([[z(), z()], [z(), o()]]), StarClass::H0),
            ("u1a".into(), m([[z(), o()], [-o(), z()]]), StarClass::U1),
            ("u1b".into(), m([[z(), i()], [i(), z()]]), StarClass::U1),
            ("h1a".into(), m([[z(), o()], [o(), z()]]), StarClass::H1),
            ("h1b".into(), m([[z(), i()], [-i(), z()]]), StarClass::H1),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{check_morphism, even_subalgebra};

    #[test]
    fn adapted_basis_validates() {
        mat2_star_algebra().validate().unwrap();
    }

    #[test]
    fn u0_pairs_commute() {
        let g = unitary_bigraded(&mat2_star_algebra()).unwrap();
        assert!(g.bracket(0, 1).is_zero());
    }

    #[test]
    fn u1_h0_is_i_anticommutator() {
        let a = mat2_star_algebra();
        let g = unitary_bigraded(&a).unwrap();
        let (u, h) = (&a.basis[4].1, &a.basis[2].1);
        let want = (&(u * h) + &(h * u)).scale(&CycloScalar::i());
        let coords = a.real_coordinates(&want).unwrap();
        assert_eq!(g.bracket(4, 2), Vector::from_terms(8, coords.into_iter().enumerate()));
        assert!(!g.bracket(4, 2).is_zero());
    }

    #[test]
    fn unitary_is_lie_and_embeds() {
        let a = mat2_star_algebra();
        let g = unitary_bigraded(&a).unwrap();
        assert!(g.is_lie());
        assert_eq!(even_subalgebra(&g).unwrap().dim(), 4);
        let phi = unitary_embedding(&a).unwrap();
        assert!(check_morphism(&phi).unwrap().is_empty());
    }

    #[test]
    fn bad_star_operations_rejected() {
        let mut a = mat2_star_algebra();
        a.star = |m| m.clone();
        assert_eq!(a.validate(), Err(Error::StarNotAntiAutomorphism(0, 0)));

        let mut a = mat2_star_algebra();
        a.star = |m| m.conj_transpose().scale(&CycloScalar::from_int(2));
        assert_eq!(a.validate(), Err(Error::StarNotInvolutive(0)));

        let mut a = mat2_star_algebra();
        a.basis[0].2 = StarClass::H0;
        assert_eq!(a.validate(), Err(Error::BasisNotAdapted(0)));

        let mut a = mat2_star_algebra();
        a.star = |m| {
            let mut t = Matrix::zeros(m.rows(), m.cols());
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    t[(r, c)] = m[(r, c)].conj();
                }
            }
            t
        };
        assert!(matches!(a.validate(), Err(Error::StarNotAntiAutomorphism(_, _))));
    }
}
