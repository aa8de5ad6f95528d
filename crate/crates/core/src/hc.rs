//! Harish-Chandra data at finite truncation: matrix representations and
//! inner automorphisms, equivariant functionals on `U(g)` with values in a
//! coefficient module, their convolution product, and truncated BCH.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lie::{BiGradedAssocAlgebra, BiGradedLieAlgebra};
use crate::linalg::{solve_combination, Matrix, RowReduced, SparseRow};
use crate::linear::{BiGradedSpace, BilinearMap, LinearMap, Vector};
use crate::scalar::{rat, sign_deligne, BiDegree, CycloScalar};
use crate::uea::{Tensor, Uea, UeaElement, Word};
use std::sync::Arc;

/// Square matrices assigned to the basis of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub name: String,
    images: Vec<Matrix>,
}

impl MatrixRep {
    pub fn new(name: impl Into<String>, images: Vec<Matrix>) -> Self {
        let images_ok = images.iter().all(|m| m.is_square() && m.rows() == images[0].rows());
        assert!(images_ok, "representation matrices must be square of one size");
        Self { name: name.into(), images }
    }

    pub fn size(&self) -> usize {
        self.images.first().map_or(0, Matrix::rows)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> Matrix {
        self.images[i].clone()
    }

    pub fn apply(&self, v: &Vector) -> Matrix {
        let n = self.size();
        let mut out = Matrix::zeros(n, n);
        for (i, c) in v.iter() {
            out = &out + &self.images[i].scale(c);
        }
        out
    }

    /// Basis pairs with `rho[a,b] != rho(a)rho(b) - s(a,b) rho(b)rho(a)`.
    pub fn check_brackets(&self, g: &BiGradedLieAlgebra) -> Vec<(usize, usize)> {
        let n = g.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let s = sign_deligne(g.degree(a), g.degree(b));
                let (ra, rb) = (&self.images[a], &self.images[b]);
                let rhs = &(ra * rb) - &(rb * ra).scale(&s.into());
                if self.apply(&g.bracket(a, b)) != rhs {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Basis pairs with `rho(ab) != rho(a)rho(b)`.
    pub fn check_products(&self, alg: &BiGradedAssocAlgebra) -> Vec<(usize, usize)> {
        let n = alg.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.apply(&alg.mul_basis(a, b)) != &self.images[a] * &self.images[b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Coordinates of `m` in the span of the images, if it lies there.
    pub fn decompose(&self, m: &Matrix) -> Option<Vector> {
        let flat = |m: &Matrix| -> SparseRow {
            m.entries().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
        };
        let rows: Vec<SparseRow> = self.images.iter().map(flat).collect();
        solve_combination(&rows, &flat(m)).map(|c| Vector::from_terms(self.len(), c.into_iter().enumerate()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnerCheck {
    pub basis: usize,
    pub passes: bool,
    /// `g rho(x) g^-1` written in the representation basis, when it lies in
    /// the span of the images.
    pub conjugated: Option<Vector>,
    pub expected: Vector,
}

/// Compares `g rho(x) g^-1` with `rho(expected(x))` on every basis element.
pub fn inner_automorphism_check(rep: &MatrixRep, element: &Matrix, expected: &LinearMap) -> Result<Vec<InnerCheck>> {
    let inv = element.inverse()?;
    Ok((0..rep.len())
        .map(|i| {
            let conj = &(element * &rep.images[i]) * &inv;
            let want = expected.image(i);
            InnerCheck {
                basis: i,
                passes: conj == rep.apply(&want),
                conjugated: rep.decompose(&conj),
                expected: want,
            }
        })
        .collect())
}

/// A representation of `g+` on a bi-graded space, optionally with a
/// bi-graded multiplication making it an algebra.
#[derive(Clone, Debug)]
pub struct CoefficientModule {
    pub space: Arc<BiGradedSpace>,
    /// `(g index, module index) -> u . m`; missing entries act by zero.
    pub action: BTreeMap<(usize, usize), Vector>,
    pub product: Option<BilinearMap>,
    pub unit: Option<Vector>,
}

impl CoefficientModule {
    /// The ground field with zero action and its own multiplication.
    pub fn trivial() -> Self {
        let space = Arc::new(BiGradedSpace::from_labels("k", &[("1", (0, 0))]).expect("static basis"));
        let mut product = BilinearMap::zero(space.clone());
        product.set(0, 0, Vector::basis(1, 0));
        Self { space, action: BTreeMap::new(), product: Some(product), unit: Some(Vector::basis(1, 0)) }
    }

    /// An associative algebra with zero action of `g+`.
    pub fn from_algebra(alg: &BiGradedAssocAlgebra) -> Self {
        Self {
            space: alg.space().clone(),
            action: BTreeMap::new(),
            product: Some(alg.product_map().clone()),
            unit: alg.unit().cloned(),
        }
    }

    /// A module without multiplication.
    pub fn module(space: Arc<BiGradedSpace>, action: BTreeMap<(usize, usize), Vector>) -> Self {
        Self { space, action, product: None, unit: None }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn act(&self, u: usize, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim());
        for (k, c) in v.iter() {
            if let Some(img) = self.action.get(&(u, k)) {
                out.axpy(c, img);
            }
        }
        out
    }

    /// Pairs `(a, b)` of `g+` basis elements on which the action fails
    /// `[a,b] m = a(b m) - s(a,b) b(a m)` for some module basis `m`.
    pub fn check_action(&self, g: &BiGradedLieAlgebra) -> Vec<(usize, usize)> {
        let even = g.even_indices();
        let mut out = Vec::new();
        for &a in &even {
            for &b in &even {
                let s: CycloScalar = sign_deligne(g.degree(a), g.degree(b)).into();
                let ok = (0..self.dim()).all(|m| {
                    let e = Vector::basis(self.dim(), m);
                    let mut lhs = Vector::zero(self.dim());
                    for (k, c) in g.bracket(a, b).iter() {
                        lhs.axpy(c, &self.act(k, &e));
                    }
                    let mut rhs = self.act(a, &self.act(b, &e));
                    rhs.axpy(&-s.clone(), &self.act(b, &self.act(a, &e)));
                    lhs == rhs
                });
                if !ok {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn multiply(&self, v: &Vector, w: &Vector) -> Result<Vector> {
        self.product.as_ref().ok_or(Error::ModuleNotAlgebra)?.apply(v, w)
    }
}

/// A functional on the normal words of length at most `truncation`, with
/// values in a coefficient module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    values: BTreeMap<Word, Vector>,
    truncation: usize,
    module_dim: usize,
}

impl Functional {
    pub fn new(truncation: usize, module_dim: usize) -> Self {
        Self { values: BTreeMap::new(), truncation, module_dim }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn set(&mut self, w: Word, v: Vector) {
        assert!(w.len() <= self.truncation, "word beyond truncation");
        if v.is_zero() {
            self.values.remove(&w);
        } else {
            self.values.insert(w, v);
        }
    }

    pub fn value(&self, w: &Word) -> Vector {
        self.values.get(w).cloned().unwrap_or_else(|| Vector::zero(self.module_dim))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Vector)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, c: &CycloScalar) -> Functional {
        let mut out = Functional::new(self.truncation, self.module_dim);
        for (w, v) in &self.values {
            out.set(w.clone(), v.scale(c));
        }
        out
    }

    /// Evaluates on an element of `U(g)`, ignoring words beyond the truncation.
    pub fn eval(&self, a: &UeaElement) -> Vector {
        let mut out = Vector::zero(self.module_dim);
        for (w, c) in a.iter() {
            if let Some(v) = self.values.get(w) {
                out.axpy(c, v);
            }
        }
        out
    }

    /// The split into pieces shifting degrees by a fixed amount.
    pub fn components(&self, uea: &Uea, module: &CoefficientModule) -> Vec<(BiDegree, Functional)> {
        let mut parts: BTreeMap<BiDegree, Functional> = BTreeMap::new();
        for (w, v) in &self.values {
            let dw = uea.word_degree(w.letters());
            for (k, c) in v.iter() {
                let delta = module.space.degree(k) + dw;
                let part = parts.entry(delta).or_insert_with(|| Functional::new(self.truncation, self.module_dim));
                let mut cur = part.value(w);
                cur.add_term(k, c);
                part.set(w.clone(), cur);
            }
        }
        parts.into_iter().collect()
    }

    /// The degree shift if the functional is homogeneous and nonzero.
    pub fn degree(&self, uea: &Uea, module: &CoefficientModule) -> Option<BiDegree> {
        match self.components(uea, module).as_slice() {
            [(d, _)] => Some(*d),
            _ => None,
        }
    }
}

/// Normal words up to the truncation with their coproducts, shared by the
/// Harish-Chandra computations.
pub struct HcContext<'a> {
    pub uea: &'a Uea,
    pub module: &'a CoefficientModule,
    pub n: usize,
    words: Vec<Word>,
    deltas: Vec<Tensor>,
}

impl<'a> HcContext<'a> {
    pub fn new(uea: &'a Uea, module: &'a CoefficientModule, n: usize) -> Self {
        let words = uea.normal_words(n);
        let deltas = Exec::default().map(&words, |w| uea.delta_word(w));
        Self { uea, module, n, words, deltas }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn counit(&self) -> Result<Functional> {
        let unit = self.module.unit.clone().ok_or(Error::ModuleNotAlgebra)?;
        let mut f = Functional::new(self.n, self.module.dim());
        f.set(Word::empty(), unit);
        Ok(f)
    }

    /// `(phi * psi)(a) = mu (phi (x) psi) Delta(a)`, with the Koszul sign
    /// `s(psi, a1)` on each term `a1 (x) a2`.
    pub fn convolution(&self, phi: &Functional, psi: &Functional) -> Result<Functional> {
        if phi.truncation != psi.truncation {
            return Err(Error::TruncationMismatch(phi.truncation, psi.truncation));
        }
        if phi.truncation != self.n {
            return Err(Error::TruncationMismatch(phi.truncation, self.n));
        }
        if self.module.product.is_none() {
            return Err(Error::ModuleNotAlgebra);
        }
        let parts = psi.components(self.uea, self.module);
        let mut out = Functional::new(self.n, self.module.dim());
        for (w, d) in self.words.iter().zip(&self.deltas) {
            let mut acc = Vector::zero(self.module.dim());
            for (key, c) in d.iter() {
                let Some(a) = phi.values.get(&key[0]) else { continue };
                let d1 = self.uea.word_degree(key[0].letters());
                for (delta, part) in &parts {
                    if let Some(b) = part.values.get(&key[1]) {
                        let s = sign_deligne(*delta, d1);
                        acc.axpy(&s.apply(c.clone()), &self.module.multiply(a, b)?);
                    }
                }
            }
            out.set(w.clone(), acc);
        }
        Ok(out)
    }

    /// Basis of `Hom_{U(g+)}(U(g), B)` at truncation `n`, each element
    /// homogeneous, ordered by degree shift.
    pub fn hom_basis(&self) -> Result<Vec<Functional>> {
        let d_odd = self.uea.algebra().odd_indices().len();
        if self.n < d_odd {
            return Err(Error::TruncationTooSmall { n: self.n, d_odd });
        }
        let mut out = Vec::new();
        for delta in BiDegree::ALL {
            out.extend(self.hom_basis_of_degree(delta));
        }
        Ok(out)
    }

    fn hom_basis_of_degree(&self, delta: BiDegree) -> Vec<Functional> {
        let uea = self.uea;
        let module = self.module;
        let mut columns: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let word_index: BTreeMap<&Word, usize> = self.words.iter().enumerate().map(|(k, w)| (w, k)).collect();
        for (wi, w) in self.words.iter().enumerate() {
            let target = uea.word_degree(w.letters()) + delta;
            for k in module.space.component(target) {
                let next = columns.len();
                columns.insert((wi, k), next);
            }
        }
        let even = uea.algebra().even_indices();
        let sources: Vec<(usize, usize)> = self
            .words
            .iter()
            .enumerate()
            .filter(|(_, w)| w.len() < self.n)
            .flat_map(|(wi, _)| even.iter().map(move |&u| (u, wi)))
            .collect();
        let rows: Vec<Vec<SparseRow>> = Exec::default().map(&sources, |&(u, wi)| {
            let w = &self.words[wi];
            let mut raw = vec![u];
            raw.extend_from_slice(w.letters());
            let uw = uea.normal_form(&raw);
            let s: CycloScalar = sign_deligne(delta, uea.algebra().degree(u)).into();
            let mut eqs: BTreeMap<usize, SparseRow> = BTreeMap::new();
            for (w2, c) in uw.iter() {
                let wi2 = word_index[w2];
                for (&(cw, k), &col) in columns.range((wi2, 0)..(wi2 + 1, 0)) {
                    debug_assert_eq!(cw, wi2);
                    add_entry(eqs.entry(k).or_default(), col, c);
                }
            }
            for (&(_, k2), &col) in columns.range((wi, 0)..(wi + 1, 0)) {
                if let Some(img) = module.action.get(&(u, k2)) {
                    for (k, c) in img.iter() {
                        add_entry(eqs.entry(k).or_default(), col, &-(&s * c));
                    }
                }
            }
            eqs.into_values().filter(|r| !r.is_empty()).collect()
        });
        let mut rr = RowReduced::new();
        for row in rows.into_iter().flatten() {
            rr.insert(row);
        }
        let inverse: Vec<(usize, usize)> = {
            let mut v = vec![(0, 0); columns.len()];
            for (&key, &col) in &columns {
                v[col] = key;
            }
            v
        };
        rr.nullspace(columns.len())
            .into_iter()
            .map(|sol| {
                let mut f = Functional::new(self.n, module.dim());
                for (col, c) in sol {
                    let (wi, k) = inverse[col];
                    let mut cur = f.value(&self.words[wi]);
                    cur.add_term(k, &c);
                    f.set(self.words[wi].clone(), cur);
                }
                f
            })
            .collect()
    }

    /// Checks `phi(u w) = s(phi, u) u phi(w)` for `u` in `g+` and `|w| < n`.
    pub fn is_equivariant(&self, phi: &Functional) -> bool {
        let even = self.uea.algebra().even_indices();
        phi.components(self.uea, self.module).iter().all(|(delta, part)| {
            self.words.iter().filter(|w| w.len() < self.n).all(|w| {
                even.iter().all(|&u| {
                    let mut raw = vec![u];
                    raw.extend_from_slice(w.letters());
                    let lhs = part.eval(&self.uea.normal_form(&raw));
                    let s: CycloScalar = sign_deligne(*delta, self.uea.algebra().degree(u)).into();
                    lhs == self.module.act(u, &part.value(w)).scale(&s)
                })
            })
        })
    }

    /// Index pairs `(i, j)` with `phi_i * phi_j != s(phi_i, phi_j) phi_j * phi_i`.
    pub fn commutativity_violations(&self, basis: &[Functional], exec: Exec) -> Result<Vec<(usize, usize)>> {
        let degrees: Vec<BiDegree> = basis
            .iter()
            .map(|f| f.degree(self.uea, self.module).unwrap_or(BiDegree::D00))
            .collect();
        let pairs: Vec<(usize, usize)> =
            (0..basis.len()).flat_map(|i| (i..basis.len()).map(move |j| (i, j))).collect();
        let results = exec.map(&pairs, |&(i, j)| -> Result<Option<(usize, usize)>> {
            let ab = self.convolution(&basis[i], &basis[j])?;
            let ba = self.convolution(&basis[j], &basis[i])?;
            let s: CycloScalar = sign_deligne(degrees[i], degrees[j]).into();
            Ok((ab != ba.scale(&s)).then_some((i, j)))
        });
        let mut out = Vec::new();
        for r in results {
            if let Some(p) = r? {
                out.push(p);
            }
        }
        Ok(out)
    }
}

fn add_entry(row: &mut SparseRow, col: usize, c: &CycloScalar) {
    let e = row.entry(col).or_default();
    *e += c;
    if e.is_zero() {
        row.remove(&col);
    }
}

pub fn equivariant_hom_basis(uea: &Uea, module: &CoefficientModule, n: usize) -> Result<Vec<Functional>> {
    HcContext::new(uea, module, n).hom_basis()
}

/// `log(exp(tX) exp(tY))` up to `t^n`, grouped by the power of `t`.
#[derive(Clone, Debug)]
pub struct BchResult {
    pub orders: Vec<UeaElement>,
    pub total: UeaElement,
}

impl BchResult {
    /// The result as a vector of g, if every term is a single letter.
    pub fn as_lie(&self, uea: &Uea) -> Option<Vector> {
        uea.to_vector(&self.total)
    }
}

type Series = Vec<UeaElement>;

fn series_mul(uea: &Uea, a: &Series, b: &Series, n: usize) -> Series {
    (0..=n)
        .map(|k| {
            let mut acc = uea.zero();
            for i in 0..=k {
                if a[i].is_zero() || b[k - i].is_zero() {
                    continue;
                }
                let p = uea.multiply(&a[i], &b[k - i]).expect("same algebra");
                acc = acc.add(&p).expect("same algebra");
            }
            acc
        })
        .collect()
}

fn exp_series(uea: &Uea, x: &UeaElement, n: usize) -> Result<Series> {
    let mut out = Vec::with_capacity(n + 1);
    let mut power = uea.one();
    for k in 0..=n {
        out.push(power.scale(&CycloScalar::from_rational(rat(1, 1) / crate::scalar::rational::factorial(k))));
        power = uea.multiply(&power, x)?;
    }
    Ok(out)
}

pub fn bch_product(uea: &Uea, x: &Vector, y: &Vector, n: usize, bound: usize) -> Result<BchResult> {
    if n > bound {
        return Err(Error::TruncationExceeded { requested: n, bound });
    }
    let g = uea.algebra();
    x.check_space(g.space())?;
    y.check_space(g.space())?;
    if x.iter().chain(y.iter()).any(|(i, _)| g.degree(i).parity() != 0) {
        return Err(Error::OddInput);
    }
    let p = series_mul(uea, &exp_series(uea, &uea.from_vector(x), n)?, &exp_series(uea, &uea.from_vector(y), n)?, n);
    let mut z = p;
    z[0] = uea.zero();
    let mut log: Series = vec![uea.zero(); n + 1];
    let mut zk = z.clone();
    for k in 1..=n {
        let c = CycloScalar::from_rational(rat(if k % 2 == 1 { 1 } else { -1 }, k as i64));
        for (slot, term) in log.iter_mut().zip(&zk) {
            *slot = slot.add(&term.scale(&c))?;
        }
        zk = series_mul(uea, &zk, &z, n);
    }
    let mut total = uea.zero();
    for t in &log {
        total = total.add(t)?;
    }
    Ok(BchResult { orders: log, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::equivalence::involution_from_bidegree;

    fn so3_uea() -> Uea {
        Uea::new(Arc::new(catalog::so3()))
    }

    #[test]
    fn so3_rep_brackets() {
        assert!(catalog::so3_standard_rep().check_brackets(&catalog::so3()).is_empty());
        let mut bad = catalog::so3_standard_rep();
        bad.images[1] = bad.images[1].scale(&CycloScalar::from_int(2));
        assert!(!bad.check_brackets(&catalog::so3()).is_empty());
    }

    #[test]
    fn inner_checks() {
        let rep = catalog::so3_standard_rep();
        let sigma = involution_from_bidegree(&catalog::so3());
        let r = inner_automorphism_check(&rep, &catalog::so3_involution_element(), &sigma).unwrap();
        assert!(r.iter().all(|c| c.passes));
        let r = inner_automorphism_check(&rep, &catalog::so3_displayed_sigma(), &sigma).unwrap();
        assert!(r[0].passes);
        assert!(!r[1].passes);
        assert_eq!(r[1].conjugated, Some(Vector::basis(3, 2)));
        let id = LinearMap::identity(catalog::so3().space().clone());
        assert!(inner_automorphism_check(&rep, &Matrix::identity(3), &id).unwrap().iter().all(|c| c.passes));
        let sing = Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        assert_eq!(inner_automorphism_check(&rep, &sing, &id).unwrap_err(), Error::Singular);
    }

    #[test]
    fn hom_dims() {
        let u = so3_uea();
        let m = CoefficientModule::trivial();
        for n in 0..=3 {
            assert_eq!(equivariant_hom_basis(&u, &m, n).unwrap().len(), 1);
        }
        let s = BiGradedSpace::from_labels("odd2", &[("x", (1, 0)), ("y", (0, 1))]).unwrap();
        let odd = Uea::new(Arc::new(BiGradedLieAlgebra::from_upper(Arc::new(s), [])));
        assert_eq!(equivariant_hom_basis(&odd, &m, 2).unwrap().len(), 4);
        assert_eq!(equivariant_hom_basis(&odd, &m, 1), Err(Error::TruncationTooSmall { n: 1, d_odd: 2 }));
    }

    #[test]
    fn convolution_examples() {
        let s = BiGradedSpace::from_labels("odd2", &[("x", (1, 0)), ("y", (0, 1))]).unwrap();
        let u = Uea::new(Arc::new(BiGradedLieAlgebra::from_upper(Arc::new(s), [])));
        let m = CoefficientModule::trivial();
        let ctx = HcContext::new(&u, &m, 2);
        let eps = ctx.counit().unwrap();
        assert_eq!(ctx.convolution(&eps, &eps).unwrap(), eps);
        let dual = |w: Vec<usize>| {
            let mut f = Functional::new(2, 1);
            f.set(Word::new(w), Vector::basis(1, 0));
            f
        };
        let (fx, fy) = (dual(vec![0]), dual(vec![1]));
        let xy = ctx.convolution(&fx, &fy).unwrap();
        // Delta(xy) contains x (x) y with sign +1 and the functional sign s(y, x) = +1
        assert_eq!(xy.value(&Word::new(vec![0, 1])), Vector::basis(1, 0));
        let yx = ctx.convolution(&fy, &fx).unwrap();
        assert_eq!(yx.value(&Word::new(vec![0, 1])), Vector::basis(1, 0));
        assert_eq!(fx.degree(&u, &m), Some(BiDegree::D10));
        assert_eq!(xy.degree(&u, &m), Some(BiDegree::D11));
        let f3 = Functional::new(3, 1);
        assert_eq!(ctx.convolution(&fx, &f3), Err(Error::TruncationMismatch(2, 3)));
        let no_alg = CoefficientModule::module(m.space.clone(), BTreeMap::new());
        let ctx2 = HcContext::new(&u, &no_alg, 2);
        assert_eq!(ctx2.convolution(&fx, &fy), Err(Error::ModuleNotAlgebra));
    }

    #[test]
    fn convolution_commutes_b() {
        let u = Uea::new(Arc::new(catalog::b_commutator()));
        let m = CoefficientModule::trivial();
        let ctx = HcContext::new(&u, &m, 3);
        let basis = ctx.hom_basis().unwrap();
        assert_eq!(basis.len(), 4);
        assert!(basis.iter().all(|f| ctx.is_equivariant(f)));
        assert!(ctx.commutativity_violations(&basis, Exec::default()).unwrap().is_empty());
    }

    #[test]
    fn bch_examples() {
        let u = so3_uea();
        let e = |i| Vector::basis(3, i);
        let r = bch_product(&u, &e(0), &e(1), 2, 6).unwrap();
        let half = CycloScalar::from_rational(rat(1, 2));
        assert_eq!(r.as_lie(&u), Some(e(0).add(&e(1)).add(&e(2).scale(&half))));
        let r = bch_product(&u, &e(0), &e(0).neg(), 4, 6).unwrap();
        assert!(r.total.is_zero());
        let r = bch_product(&u, &e(1), &e(1).scale(&half), 4, 6).unwrap();
        assert_eq!(r.as_lie(&u), Some(e(1).scale(&CycloScalar::from_rational(rat(3, 2)))));
        assert!(matches!(bch_product(&u, &e(0), &e(1), 7, 6), Err(Error::TruncationExceeded { .. })));
        let b = Uea::new(Arc::new(catalog::b_commutator()));
        assert_eq!(bch_product(&b, &Vector::basis(4, 1), &Vector::basis(4, 0), 2, 6).unwrap_err(), Error::OddInput);
    }

    #[test]
    fn bch_order_three_is_lie() {
        let u = so3_uea();
        let r = bch_product(&u, &Vector::basis(3, 0), &Vector::basis(3, 1), 4, 6).unwrap();
        assert!(r.as_lie(&u).is_some());
        assert!(u.is_primitive(&r.total));
    }

    #[test]
    fn convolution_algebra_laws() {
        let u = Uea::new(Arc::new(catalog::b_commutator()));
        let m = CoefficientModule::trivial();
        let ctx = HcContext::new(&u, &m, 3);
        let basis = ctx.hom_basis().unwrap();
        let eps = ctx.counit().unwrap();
        for f in &basis {
            assert_eq!(&ctx.convolution(&eps, f).unwrap(), f);
            assert_eq!(&ctx.convolution(f, &eps).unwrap(), f);
        }
        for f in &basis {
            for g in &basis {
                let fg = ctx.convolution(f, g).unwrap();
                let (df, dg) = (f.degree(&u, &m).unwrap(), g.degree(&u, &m).unwrap());
                if !fg.is_zero() {
                    assert_eq!(fg.degree(&u, &m), Some(df + dg));
                }
                for h in &basis {
                    let l = ctx.convolution(&fg, h).unwrap();
                    let r = ctx.convolution(f, &ctx.convolution(g, h).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    mod props {
        use proptest::prelude::*;

        use super::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(20))]

            #[test]
            fn bch_stays_in_g(c in proptest::collection::vec(-3i64..=3, 6)) {
                let u = so3_uea();
                let v = |k: usize| Vector::from_terms(3, (0..3).map(|i| (i, CycloScalar::from_int(c[k + i]))));
                let r = bch_product(&u, &v(0), &v(3), 4, 6).unwrap();
                prop_assert!(r.as_lie(&u).is_some());
            }
        }
    }
}
