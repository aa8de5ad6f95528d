//! Exact linear algebra over Q(zeta8): dense square matrices for
//! representations, and sparse row reduction for linear systems.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::CycloScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![CycloScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CycloScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| CycloScalar::from_int(x)).collect()).collect(),
        )
    }

    pub fn diagonal(entries: &[CycloScalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Block matrix `[[a, b], [c, d]]` from equally sized square blocks.
    pub fn blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        let n = a.rows;
        let mut m = Self::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[(i, j)].clone();
                m[(i, j + n)] = b[(i, j)].clone();
                m[(i + n, j)] = c[(i, j)].clone();
                m[(i + n, j + n)] = d[(i, j)].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[CycloScalar] {
        &self.data
    }

    pub fn scale(&self, c: &CycloScalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn inverse(&self) -> Result<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].inv().expect("nonzero pivot");
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &p;
                inv[(col, j)] = &inv[(col, j)] * &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= &t;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] -= &t;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = CycloScalar;
    fn index(&self, (i, j): (usize, usize)) -> &CycloScalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycloScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut m = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub type SparseRow = BTreeMap<usize, CycloScalar>;

/// Reduced row echelon form of a sparse system, kept as pivot rows.
#[derive(Clone, Debug, Default)]
pub struct RowReduced {
    /// pivot column -> normalized row (pivot entry 1, other pivot columns eliminated)
    pivots: BTreeMap<usize, SparseRow>,
}

fn row_axpy(dst: &mut SparseRow, c: &CycloScalar, src: &SparseRow) {
    for (k, v) in src {
        let e = dst.entry(*k).or_default();
        *e -= &(c * v);
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

impl RowReduced {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let hit = row.iter().find(|(k, _)| self.pivots.contains_key(k)).map(|(k, v)| (*k, v.clone()));
            match hit {
                Some((k, c)) => row_axpy(&mut row, &c, &self.pivots[&k]),
                None => return row,
            }
        }
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else { return false };
        let inv = lead.inv().expect("nonzero");
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        for other in self.pivots.values_mut() {
            if let Some(c) = other.get(&p).cloned() {
                row_axpy(other, &c, &row);
            }
        }
        self.pivots.insert(p, row);
        true
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Basis of the solution space of `row . x = 0` over `ncols` unknowns.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseRow> {
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = SparseRow::new();
            v.insert(free, CycloScalar::one());
            for (p, row) in &self.pivots {
                if let Some(c) = row.get(&free) {
                    v.insert(*p, -c.clone());
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut rr = RowReduced::new();
    for r in rows {
        rr.insert(r);
    }
    rr.rank()
}

/// Finds coefficients `x` with `sum_k x_k * vectors[k] = target`, if they
/// exist. Vectors must be linearly independent for the answer to be unique.
pub fn solve_combination(vectors: &[SparseRow], target: &SparseRow) -> Option<Vec<CycloScalar>> {
    // Augment each vector with a tag column carrying its index; reducing the
    // target then leaves -x_k in the tag columns.
    let width = vectors.iter().chain([target]).flat_map(|r| r.keys().copied()).max().map_or(0, |m| m + 1);
    let mut rr = RowReduced::new();
    for (k, v) in vectors.iter().enumerate() {
        let mut r = v.clone();
        r.insert(width + k, CycloScalar::one());
        rr.insert(r);
    }
    let reduced = rr.reduce(target.clone());
    if reduced.keys().any(|&k| k < width) {
        return None;
    }
    Some((0..vectors.len()).map(|k| -reduced.get(&(width + k)).cloned().unwrap_or_default()).collect())
}
