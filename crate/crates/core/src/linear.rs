//! Finite-dimensional bi-graded vector spaces with sparse vectors, homogeneous
//! linear maps and bilinear maps given by structure constants.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{BiDegree, CycloScalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: BiDegree,
}

/// An ordered, labelled basis; each element carries its bi-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiGradedSpace {
    name: String,
    basis: Vec<BasisElement>,
}

impl BiGradedSpace {
    pub fn new(name: impl Into<String>, basis: Vec<BasisElement>) -> Result<Self> {
        let mut seen = HashSet::new();
        for b in &basis {
            if b.label.is_empty() || b.label.contains(',') {
                return Err(Error::Malformed(format!("invalid basis label `{}`", b.label)));
            }
            if !seen.insert(b.label.as_str()) {
                return Err(Error::Malformed(format!("duplicate basis label `{}`", b.label)));
            }
        }
        Ok(Self { name: name.into(), basis })
    }

    /// Convenience constructor from `(label, (eps1, eps2))` pairs.
    pub fn from_labels(name: &str, items: &[(&str, (u8, u8))]) -> Result<Self> {
        Self::new(
            name,
            items
                .iter()
                .map(|(l, (a, b))| BasisElement { label: l.to_string(), degree: BiDegree::new(*a, *b) })
                .collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> BiDegree {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Basis indices of the homogeneous component of degree `d`.
    pub fn component(&self, d: BiDegree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == d).collect()
    }

    pub fn component_dim(&self, d: BiDegree) -> usize {
        self.basis.iter().filter(|b| b.degree == d).count()
    }

    /// Restriction to the given basis indices, in the given order.
    pub fn subspace(&self, name: impl Into<String>, indices: &[usize]) -> Self {
        Self { name: name.into(), basis: indices.iter().map(|&i| self.basis[i].clone()).collect() }
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        Self { name: name.into(), basis: self.basis.clone() }
    }

    pub fn format_vector(&self, v: &Vector) -> String {
        format_terms(v.iter().map(|(i, c)| (self.label(i).to_string(), c)))
    }
}

/// Formats `c1*l1 + c2*l2 - ...`; empty sums print as `0`.
pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a CycloScalar)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        let (neg, mag) = if c.is_rational() && crate::scalar::rational::is_negative(&c.coeffs()[0]) {
            (true, -c.clone())
        } else {
            (false, c.clone())
        };
        let body = if mag.is_one() {
            label.clone()
        } else if label.is_empty() {
            mag.to_string()
        } else {
            format!("{mag}*{label}")
        };
        let body = if body.is_empty() { "1".to_string() } else { body };
        match (out.is_empty(), neg) {
            (true, true) => {
                out.push('-');
            }
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let _ = write!(out, "{body}");
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Sparse vector over a space of known dimension. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    dim: usize,
    coeffs: BTreeMap<usize, CycloScalar>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: BTreeMap::new() }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        Self::zero(dim).with(i, CycloScalar::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (usize, CycloScalar)>) -> Self {
        let mut v = Self::zero(dim);
        for (i, c) in terms {
            v.add_term(i, &c);
        }
        v
    }

    fn with(mut self, i: usize, c: CycloScalar) -> Self {
        self.add_term(i, &c);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: usize) -> CycloScalar {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CycloScalar)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, i: usize, c: &CycloScalar) {
        assert!(i < self.dim, "basis index {i} out of range for dimension {}", self.dim);
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(i).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &CycloScalar, other: &Vector) {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, &(c * x));
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> Vector {
        let mut out = Vector::zero(self.dim);
        out.axpy(c, self);
        out
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.axpy(&CycloScalar::one(), other);
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.axpy(&CycloScalar::from_int(-1), other);
        out
    }

    pub fn neg(&self) -> Vector {
        self.scale(&CycloScalar::from_int(-1))
    }

    /// Projection onto the degree-`d` component.
    pub fn project(&self, space: &BiGradedSpace, d: BiDegree) -> Vector {
        Vector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| space.degree(**i) == d)
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    /// `Some(None)` for the zero vector, `Some(Some(d))` if homogeneous of degree d,
    /// `None` if mixed.
    pub fn homogeneous_degree(&self, space: &BiGradedSpace) -> Option<Option<BiDegree>> {
        let mut deg = None;
        for (i, _) in self.iter() {
            let d = space.degree(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(deg)
    }

    pub fn check_space(&self, space: &BiGradedSpace) -> Result<()> {
        if self.dim != space.dim() {
            return Err(Error::SpaceMismatch { expected: space.dim(), found: self.dim });
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    basis: usize,
    coeff: &'a CycloScalar,
}

/// Serialized as `[{"basis": k, "coeff": {...}}, ...]`.
impl Serialize for Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|(basis, coeff)| TermJson { basis, coeff }))
    }
}

/// A linear map given by the images of the source basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub source: Arc<BiGradedSpace>,
    pub target: Arc<BiGradedSpace>,
    images: BTreeMap<usize, Vector>,
    pub declared_degree: BiDegree,
}

impl LinearMap {
    pub fn new(
        source: Arc<BiGradedSpace>,
        target: Arc<BiGradedSpace>,
        declared_degree: BiDegree,
    ) -> Self {
        Self { source, target, images: BTreeMap::new(), declared_degree }
    }

    pub fn identity(space: Arc<BiGradedSpace>) -> Self {
        let mut m = Self::new(space.clone(), space.clone(), BiDegree::D00);
        for i in 0..space.dim() {
            m.set_image(i, Vector::basis(space.dim(), i));
        }
        m
    }

    /// Diagonal map `e_i -> d_i e_i`.
    pub fn diagonal(space: Arc<BiGradedSpace>, diag: &[CycloScalar]) -> Self {
        let n = space.dim();
        let mut m = Self::new(space.clone(), space, BiDegree::D00);
        for (i, c) in diag.iter().enumerate() {
            m.set_image(i, Vector::basis(n, i).scale(c));
        }
        m
    }

    pub fn set_image(&mut self, i: usize, v: Vector) {
        assert_eq!(v.dim(), self.target.dim());
        if v.is_zero() {
            self.images.remove(&i);
        } else {
            self.images.insert(i, v);
        }
    }

    pub fn image(&self, i: usize) -> Vector {
        self.images.get(&i).cloned().unwrap_or_else(|| Vector::zero(self.target.dim()))
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        v.check_space(&self.source)?;
        let mut out = Vector::zero(self.target.dim());
        for (i, c) in v.iter() {
            if let Some(img) = self.images.get(&i) {
                out.axpy(c, img);
            }
        }
        Ok(out)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &LinearMap) -> Result<LinearMap> {
        let mut out = LinearMap::new(
            first.source.clone(),
            self.target.clone(),
            first.declared_degree + self.declared_degree,
        );
        for i in 0..first.source.dim() {
            out.set_image(i, self.apply(&first.image(i))?);
        }
        Ok(out)
    }

    /// Source basis indices whose image is not homogeneous of degree
    /// `deg(source_i) + declared_degree`.
    pub fn degree_violations(&self) -> Vec<usize> {
        (0..self.source.dim())
            .filter(|&i| {
                let want = self.source.degree(i) + self.declared_degree;
                let img = self.image(i);
                !img.is_zero() && img.homogeneous_degree(&self.target) != Some(Some(want))
            })
            .collect()
    }
}

/// A bilinear map on one space, stored as images of basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    pub space: Arc<BiGradedSpace>,
    constants: BTreeMap<(usize, usize), Vector>,
    pub declared_degree: BiDegree,
}

impl BilinearMap {
    pub fn new(space: Arc<BiGradedSpace>, declared_degree: BiDegree) -> Self {
        Self { space, constants: BTreeMap::new(), declared_degree }
    }

    pub fn zero(space: Arc<BiGradedSpace>) -> Self {
        Self::new(space, BiDegree::D00)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vector) {
        assert!(i < self.dim() && j < self.dim());
        assert_eq!(v.dim(), self.dim());
        if v.is_zero() {
            self.constants.remove(&(i, j));
        } else {
            self.constants.insert((i, j), v);
        }
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.constants.contains_key(&(i, j))
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Vector> {
        self.constants.get(&(i, j))
    }

    /// Image of the basis pair, zero if not stored.
    pub fn on_basis(&self, i: usize, j: usize) -> Vector {
        self.get(i, j).cloned().unwrap_or_else(|| Vector::zero(self.dim()))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> {
        self.constants.iter().map(|(k, v)| (*k, v))
    }

    pub fn apply(&self, v: &Vector, w: &Vector) -> Result<Vector> {
        v.check_space(&self.space)?;
        w.check_space(&self.space)?;
        let mut out = Vector::zero(self.dim());
        for (i, a) in v.iter() {
            for (j, b) in w.iter() {
                if let Some(img) = self.constants.get(&(i, j)) {
                    out.axpy(&(a * b), img);
                }
            }
        }
        Ok(out)
    }

    /// Basis pairs whose image is not homogeneous of degree
    /// `deg(i) + deg(j) + declared_degree`. Empty means the map is homogeneous.
    pub fn check_homogeneity(&self) -> Vec<(usize, usize)> {
        self.constants
            .iter()
            .filter(|((i, j), v)| {
                let want = self.space.degree(*i) + self.space.degree(*j) + self.declared_degree;
                v.homogeneous_degree(&self.space) != Some(Some(want))
            })
            .map(|(k, _)| *k)
            .collect()
    }

    /// Reindexes onto a subspace given by `indices`; pairs whose image leaves
    /// the subspace are reported as `Err((i, j))` in original indices.
    pub fn restrict(
        &self,
        sub: Arc<BiGradedSpace>,
        indices: &[usize],
    ) -> std::result::Result<BilinearMap, (usize, usize)> {
        let pos: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut out = BilinearMap::new(sub.clone(), self.declared_degree);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                let Some(v) = self.get(i, j) else { continue };
                let mut w = Vector::zero(sub.dim());
                for (k, c) in v.iter() {
                    match pos.get(&k) {
                        Some(&kk) => w.add_term(kk, c),
                        None => return Err((i, j)),
                    }
                }
                out.set(a, b, w);
            }
        }
        Ok(out)
    }
}
