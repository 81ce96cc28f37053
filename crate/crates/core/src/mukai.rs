//! Mukai extension of a lattice and the LLV operator algebra.
//!
//! For a lattice `L` the extension is `H = Q a + L + Q b` with `a`, `b`
//! isotropic, orthogonal to `L`, and `(a, b) = -1`; the pairing restricts
//! to the form of `L`. Basis order is `(a, L..., b)` throughout, and the
//! grading assigns degree -2 to `a`, 0 to `L`, and +2 to `b`.
//!
//! The raising operator `e_v` for `v` in `L` acts by
//! `a -> v`, `u -> q(v, u) b`, `b -> 0`; together with the grading operator
//! `h` and the normalized lowering operator `f_v = (2 / q(v, v)) e_v*`
//! it spans an sl2 triple with exact bracket relations.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::lattice::BBFLattice;
use crate::linalg::{BilinearForm, QMatrix, QVector};
use crate::rational::{factorial_rat, rat_int, Rat};

/// The graded lattice `Q a + L + Q b` with the extended pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiExtension {
    base: BBFLattice,
    pairing: BilinearForm,
}

impl MukaiExtension {
    pub fn new(base: BBFLattice) -> Result<Self, Error> {
        let rank = base.rank();
        let dim = rank + 2;
        let mut gram = QMatrix::zero(dim, dim);
        gram.set(0, dim - 1, rat_int(-1));
        gram.set(dim - 1, 0, rat_int(-1));
        for i in 0..rank {
            for j in 0..rank {
                gram.set(1 + i, 1 + j, base.gram().at(i, j).clone());
            }
        }
        let pairing = BilinearForm::new(gram)?;
        Ok(MukaiExtension { base, pairing })
    }

    pub fn dim(&self) -> usize {
        self.base.rank() + 2
    }

    pub fn base(&self) -> &BBFLattice {
        &self.base
    }

    pub fn pairing(&self) -> &BilinearForm {
        &self.pairing
    }

    /// The degree -2 generator, first basis vector.
    pub fn alpha(&self) -> QVector {
        QVector::unit(self.dim(), 0)
    }

    /// The degree +2 generator, last basis vector.
    pub fn beta(&self) -> QVector {
        QVector::unit(self.dim(), self.dim() - 1)
    }

    /// Grading of the `i`-th basis vector: -2, 0, or +2.
    pub fn degree_of_index(&self, i: usize) -> i64 {
        if i == 0 {
            -2
        } else if i == self.dim() - 1 {
            2
        } else {
            0
        }
    }

    /// Lift a base-lattice vector into the extension (zero `a`, `b` parts).
    pub fn embed_base(&self, v: &QVector) -> Result<QVector, Error> {
        if v.dim() != self.base.rank() {
            return Err(Error::DimensionMismatch(format!(
                "base vector dim {} vs rank {}",
                v.dim(),
                self.base.rank()
            )));
        }
        let mut entries = Vec::with_capacity(self.dim());
        entries.push(Rat::zero());
        entries.extend(v.entries().iter().cloned());
        entries.push(Rat::zero());
        Ok(QVector::new(entries))
    }

    /// Project onto the degree-0 part, in base coordinates.
    pub fn base_component(&self, v: &QVector) -> QVector {
        QVector::new(v.entries()[1..self.dim() - 1].to_vec())
    }

    pub fn eval(&self, x: &QVector, y: &QVector) -> Result<Rat, Error> {
        self.pairing.eval(x, y)
    }
}

/// Matrix acting on the extension (or a symmetric power of it), tagged
/// with the grading shift it effects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOperator {
    pub matrix: QMatrix,
    pub degree: i64,
}

impl GradedOperator {
    /// Entry `(i, j)` may be nonzero only when `deg(i) = deg(j) + degree`.
    pub fn respects_grading(&self, h: &MukaiExtension) -> bool {
        let n = h.dim();
        if self.matrix.rows() != n || self.matrix.cols() != n {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.matrix.at(i, j).is_zero()
                    || h.degree_of_index(i) == h.degree_of_index(j) + self.degree
            })
        })
    }
}

/// Raising operator `e_v` for `v` in the base lattice (degree +2):
/// `a -> v`, `u -> q(v, u) b`, `b -> 0`.
pub fn lefschetz_e(h: &MukaiExtension, v: &QVector) -> Result<GradedOperator, Error> {
    let rank = h.base().rank();
    if v.dim() != rank {
        return Err(Error::DimensionMismatch(format!(
            "expected base vector of dim {rank}, got {}",
            v.dim()
        )));
    }
    let dim = h.dim();
    let mut m = QMatrix::zero(dim, dim);
    for i in 0..rank {
        m.set(1 + i, 0, v[i].clone());
    }
    for j in 0..rank {
        let mut pairing = Rat::zero();
        for i in 0..rank {
            let g = h.base().gram().at(i, j);
            if !g.is_zero() && !v[i].is_zero() {
                pairing += &v[i] * g;
            }
        }
        m.set(dim - 1, 1 + j, pairing);
    }
    Ok(GradedOperator { matrix: m, degree: 2 })
}

/// Grading operator `h`: -2 on `a`, 0 on the base, +2 on `b`.
pub fn grading_h(h: &MukaiExtension) -> GradedOperator {
    let dim = h.dim();
    let mut m = QMatrix::zero(dim, dim);
    m.set(0, 0, rat_int(-2));
    m.set(dim - 1, dim - 1, rat_int(2));
    GradedOperator { matrix: m, degree: 0 }
}

/// Lowering operator `f_v` (degree -2), normalized by `2 / q(v, v)` so the
/// sl2 relations hold exactly. Errors on isotropic `v`.
pub fn adjoint_f(h: &MukaiExtension, v: &QVector) -> Result<GradedOperator, Error> {
    let rank = h.base().rank();
    if v.dim() != rank {
        return Err(Error::DimensionMismatch(format!(
            "expected base vector of dim {rank}, got {}",
            v.dim()
        )));
    }
    let norm = h.base().form().norm(v)?;
    if norm.is_zero() {
        return Err(Error::Isotropic(
            "no sl2 normalization exists for an isotropic vector".into(),
        ));
    }
    let scale = rat_int(2) / norm;
    let dim = h.dim();
    let mut m = QMatrix::zero(dim, dim);
    for i in 0..rank {
        m.set(1 + i, dim - 1, &v[i] * &scale);
    }
    for j in 0..rank {
        let mut pairing = Rat::zero();
        for i in 0..rank {
            let g = h.base().gram().at(i, j);
            if !g.is_zero() && !v[i].is_zero() {
                pairing += &v[i] * g;
            }
        }
        m.set(0, 1 + j, pairing * &scale);
    }
    Ok(GradedOperator { matrix: m, degree: -2 })
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &QMatrix, b: &QMatrix) -> Result<QMatrix, Error> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Membership in `so` of the extended pairing:
/// `q(Mx, y) + q(x, My) = 0` for all basis vectors, i.e. `M^T G + G M = 0`.
pub fn so_membership(h: &MukaiExtension, m: &QMatrix) -> Result<bool, Error> {
    let dim = h.dim();
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on extension of dim {dim}",
            m.rows(),
            m.cols()
        )));
    }
    let g = h.pairing().gram();
    Ok(m.transpose().mul(g)?.add(&g.mul(m)?)?.is_zero())
}

/// `q(Mx, My) = q(x, y)` on a basis, i.e. `M^T G M = G`.
pub fn is_isometry(form: &BilinearForm, m: &QMatrix) -> Result<bool, Error> {
    is_isometry_between(form, form, m)
}

/// Isometry test for a map between two forms: `M^T G_target M = G_source`.
pub fn is_isometry_between(
    source: &BilinearForm,
    target: &BilinearForm,
    m: &QMatrix,
) -> Result<bool, Error> {
    if m.rows() != target.dim() || m.cols() != source.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map from dim {} to dim {}",
            m.rows(),
            m.cols(),
            source.dim(),
            target.dim()
        )));
    }
    let lhs = m.transpose().mul(target.gram())?.mul(m)?;
    Ok(lhs == *source.gram())
}

/// `exp(M) = sum M^k / k!` for a nilpotent matrix; `M^order` must vanish.
pub fn exp_nilpotent(m: &QMatrix, order: u32) -> Result<QMatrix, Error> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut acc = QMatrix::identity(m.rows());
    let mut power = QMatrix::identity(m.rows());
    for k in 1..=order {
        power = power.mul(m)?;
        if power.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&power.scale(&(Rat::one() / factorial_rat(k))))?;
    }
    if !power.mul(m)?.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "matrix is not nilpotent of order {order}"
        )));
    }
    Ok(acc)
}
