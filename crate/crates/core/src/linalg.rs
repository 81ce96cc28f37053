//! Exact rational linear algebra: vectors, matrices, bilinear forms.
//!
//! Gaussian elimination always picks the first nonzero pivot (no scaling
//! heuristics), so kernels, ranks and determinants are deterministic and the
//! whole pipeline is reproducible bit for bit.

use std::fmt;
use std::ops::Index;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::{format_rat, Rat};

pub use crate::rational::{ext_gcd, ExtGcd};

/// Vector with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QVector {
    entries: Vec<Rat>,
}

impl QVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        QVector { entries }
    }

    pub fn zero(dim: usize) -> Self {
        QVector {
            entries: vec![Rat::zero(); dim],
        }
    }

    /// Standard basis vector `e_i` in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.entries[i] = Rat::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector {
            entries: entries.iter().map(|&n| crate::rational::rat_int(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &QVector) -> Result<QVector, Error> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(QVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &QVector) -> Result<QVector, Error> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(QVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> QVector {
        QVector {
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> QVector {
        QVector {
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl Index<usize> for QVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.entries[i]
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(format_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn check_same_dim(a: usize, b: usize) -> Result<(), Error> {
    if a != b {
        return Err(Error::DimensionMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// Row-major matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        QMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, Error> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        QMatrix::from_fn(rows.len(), cols, |r, c| crate::rational::rat_int(rows[r][c]))
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[Rat]) -> Self {
        let mut m = Self::zero(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
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

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> QVector {
        QVector::new(self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn col(&self, c: usize) -> QVector {
        QVector::new((0..self.rows).map(|r| self.at(r, c).clone()).collect())
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.at(r, c) == self.at(c, r)))
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix, Error> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix, Error> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, c: &Rat) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> QMatrix {
        self.scale(&-Rat::one())
    }

    fn zip_with(&self, other: &QMatrix, f: impl Fn(&Rat, &Rat) -> Rat) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn check_shape(&self, other: &QMatrix) -> Result<(), Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c) + a * b;
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &QVector) -> Result<QVector, Error> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of dim {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = Rat::zero();
            for c in 0..self.cols {
                let a = self.at(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    acc += a * &v[c];
                }
            }
            out.push(acc);
        }
        Ok(QVector::new(out))
    }

    pub fn pow(&self, k: u32) -> Result<QMatrix, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        QMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.at(rows[r], cols[c]).clone()
        })
    }

    /// Reduced row echelon form. Pivot selection is the first row with a
    /// nonzero entry in the current column, scanning columns left to right.
    fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(row) = found else { continue };
            if row != pivot_row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(pivot_row, c).clone();
                    m.set(row, c, b);
                    m.set(pivot_row, c, a);
                }
            }
            let inv = Rat::one() / m.at(pivot_row, col).clone();
            for c in 0..m.cols {
                let v = m.at(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in 0..m.cols {
                    let v = m.at(r, c) - &factor * m.at(pivot_row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Exact rank over `Q`.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space. Empty iff the matrix has full column
    /// rank. Basis vectors are indexed by the free columns in ascending
    /// order, each with a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Vec<QVector> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for (free, _) in is_pivot.iter().enumerate().filter(|(_, p)| !**p) {
            let mut v = QVector::zero(self.cols);
            v.entries[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v.entries[pc] = -rref.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<Rat, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for col in 0..n {
            let found = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(row) = found else {
                return Ok(Rat::zero());
            };
            if row != col {
                for c in 0..n {
                    let a = m.at(row, c).clone();
                    let b = m.at(col, c).clone();
                    m.set(row, c, b);
                    m.set(col, c, a);
                }
                det = -det;
            }
            let pivot = m.at(col, col).clone();
            det *= &pivot;
            let inv = Rat::one() / pivot;
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) * &inv;
                for c in col..n {
                    let v = m.at(r, c) - &factor * m.at(col, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<QMatrix, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, n + r, Rat::one());
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Singular);
        }
        Ok(QMatrix::from_fn(n, n, |r, c| rref.at(r, n + c).clone()))
    }

    /// Solve `self * x = rhs` exactly. Returns `None` when inconsistent;
    /// free coordinates (if any) are set to zero.
    pub fn solve(&self, rhs: &QVector) -> Result<Option<QVector>, Error> {
        if self.rows != rhs.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows vs rhs dim {}",
                self.rows,
                rhs.dim()
            )));
        }
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None); // pivot in the rhs column: inconsistent
        }
        let mut x = QVector::zero(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x.entries[pc] = rref.at(row, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let parts: Vec<String> = (0..self.cols).map(|c| format_rat(self.at(r, c))).collect();
            writeln!(f, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: QMatrix,
}

impl BilinearForm {
    /// Wrap a Gram matrix; rejects non-symmetric input.
    pub fn new(gram: QMatrix) -> Result<Self, Error> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// Evaluate `x^T G y` exactly.
    pub fn eval(&self, x: &QVector, y: &QVector) -> Result<Rat, Error> {
        if x.dim() != self.dim() || y.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "form dim {} vs vectors {} and {}",
                self.dim(),
                x.dim(),
                y.dim()
            )));
        }
        let mut acc = Rat::zero();
        for r in 0..self.dim() {
            if x[r].is_zero() {
                continue;
            }
            for c in 0..self.dim() {
                let g = self.gram.at(r, c);
                if g.is_zero() || y[c].is_zero() {
                    continue;
                }
                acc += &x[r] * g * &y[c];
            }
        }
        Ok(acc)
    }

    /// `q(x, x)`.
    pub fn norm(&self, x: &QVector) -> Result<Rat, Error> {
        self.eval(x, x)
    }

    /// Exact Sylvester criterion: all leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.dim();
        let idx: Vec<usize> = (0..n).collect();
        (1..=n).all(|k| {
            let minor = self.gram.submatrix(&idx[..k], &idx[..k]);
            minor.det().map(|d| d.is_positive()).unwrap_or(false)
        })
    }

    /// Signature `(p, q, z)` by exact congruence diagonalization:
    /// counts of positive, negative and zero diagonal entries.
    pub fn signature(&self) -> (usize, usize, usize) {
        let mut m = self.gram.clone();
        let n = m.rows();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        for i in 0..n {
            if m.at(i, i).is_zero() {
                // Prefer swapping in a later basis vector with nonzero norm;
                // otherwise mix with a non-orthogonal one (works in char 0).
                if let Some(j) = (i + 1..n).find(|&j| !m.at(j, j).is_zero()) {
                    swap_basis(&mut m, i, j);
                } else if let Some(j) = (i + 1..n).find(|&j| !m.at(i, j).is_zero()) {
                    add_basis(&mut m, i, j);
                } else {
                    zero += 1;
                    continue;
                }
            }
            let d = m.at(i, i).clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            // Clear row/column i against the pivot.
            for j in i + 1..n {
                if m.at(i, j).is_zero() {
                    continue;
                }
                let factor = m.at(i, j) / &d;
                for k in 0..n {
                    let v = m.at(j, k) - &factor * m.at(i, k);
                    m.set(j, k, v);
                }
                for k in 0..n {
                    let v = m.at(k, j) - &factor * m.at(k, i);
                    m.set(k, j, v);
                }
            }
        }
        (pos, neg, zero)
    }
}

fn swap_basis(m: &mut QMatrix, i: usize, j: usize) {
    let n = m.rows();
    for k in 0..n {
        let a = m.at(i, k).clone();
        let b = m.at(j, k).clone();
        m.set(i, k, b);
        m.set(j, k, a);
    }
    for k in 0..n {
        let a = m.at(k, i).clone();
        let b = m.at(k, j).clone();
        m.set(k, i, b);
        m.set(k, j, a);
    }
}

/// Basis change `b_i += b_j` applied to the Gram matrix.
fn add_basis(m: &mut QMatrix, i: usize, j: usize) {
    let n = m.rows();
    for k in 0..n {
        let v = m.at(i, k) + m.at(j, k);
        m.set(i, k, v);
    }
    for k in 0..n {
        let v = m.at(k, i) + m.at(k, j);
        m.set(k, i, v);
    }
}
