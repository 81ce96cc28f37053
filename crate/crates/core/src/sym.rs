//! Symmetric powers of the Mukai extension with the derivation action.
//!
//! `Sym^n H` is modelled on the monomial basis indexed by exponent vectors
//! over the basis of `H`, ordered descending-lexicographically so that
//! `a^n` comes first and `b^n` last. An operator on `H` extends to `Sym^n`
//! as a derivation (Leibniz rule); the contraction Laplacian pairs off two
//! tensor factors against the form. Its kernel is the model of the
//! subalgebra generated by degree-2 classes, and on that kernel the hard
//! Lefschetz rank checks and the Fujiki proportionality are verified
//! exactly.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{QMatrix, QVector};
use crate::mukai::{lefschetz_e, GradedOperator, MukaiExtension};
use crate::rational::{factorial_rat, rat_int, Rat};

/// Exponent vector over the basis of the extension; entries sum to `n`.
pub type MultiIndex = Vec<u32>;

/// Number of degree-`n` monomials in `d` variables: `C(d + n - 1, n)`.
pub fn sym_dim(d: usize, n: u32) -> usize {
    // binomial(d + n - 1, n) with u128 intermediates
    let n = n as u128;
    let d = d as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for k in 0..n {
        num *= d + n - 1 - k;
        den *= k + 1;
    }
    usize::try_from(num / den).expect("symmetric power dimension fits in usize")
}

/// Monomial basis of `Sym^n H`, ordered so `a^n` is first and `b^n` last.
#[derive(Debug, Clone)]
pub struct SymBasis {
    ext: MukaiExtension,
    n: u32,
    monomials: Vec<MultiIndex>,
    positions: BTreeMap<MultiIndex, usize>,
}

impl SymBasis {
    pub fn new(ext: &MukaiExtension, n: u32) -> Self {
        let d = ext.dim();
        let mut monomials = Vec::with_capacity(sym_dim(d, n));
        let mut current = vec![0u32; d];
        enumerate_monomials(d, n, 0, &mut current, &mut monomials);
        let positions = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        SymBasis {
            ext: ext.clone(),
            n,
            monomials,
            positions,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim_h(&self) -> usize {
        self.ext.dim()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn extension(&self) -> &MukaiExtension {
        &self.ext
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &MultiIndex {
        &self.monomials[i]
    }

    pub fn position(&self, m: &[u32]) -> Option<usize> {
        self.positions.get(m).copied()
    }

    /// Grading eigenvalue `2(c - a)` of the `i`-th monomial, where `a` and
    /// `c` are the exponents of the degree -2 and degree +2 generators.
    pub fn eigenvalue(&self, i: usize) -> i64 {
        let m = &self.monomials[i];
        let a = m[0] as i64;
        let c = m[self.dim_h() - 1] as i64;
        2 * (c - a)
    }

    /// Indices of monomials with the given grading eigenvalue.
    pub fn eigenspace(&self, w: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.eigenvalue(i) == w).collect()
    }
}

/// Descending-lex enumeration: the leading exponent runs from `n` down to
/// 0, then recursively for the remaining positions.
fn enumerate_monomials(
    d: usize,
    remaining: u32,
    pos: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<MultiIndex>,
) {
    if pos == d - 1 {
        current[pos] = remaining;
        out.push(current.clone());
        current[pos] = 0;
        return;
    }
    for k in (0..=remaining).rev() {
        current[pos] = k;
        enumerate_monomials(d, remaining - k, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// Sparse element of a symmetric power: multi-index -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymVector {
    coeffs: BTreeMap<MultiIndex, Rat>,
}

impl SymVector {
    pub fn zero() -> Self {
        SymVector::default()
    }

    pub fn monomial(m: MultiIndex, c: Rat) -> Self {
        let mut v = SymVector::zero();
        v.insert(m, c);
        v
    }

    /// Degree-1 element from a vector in the extension.
    pub fn from_linear(v: &QVector) -> Self {
        let mut out = SymVector::zero();
        for (i, c) in v.entries().iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0u32; v.dim()];
                m[i] = 1;
                out.insert(m, c.clone());
            }
        }
        out
    }

    pub fn insert(&mut self, m: MultiIndex, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.coeffs.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &SymVector) -> SymVector {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> SymVector {
        if c.is_zero() {
            return SymVector::zero();
        }
        SymVector {
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SymVector) -> SymVector {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Graded product: exponents add, coefficients multiply.
    pub fn mul(&self, other: &SymVector) -> SymVector {
        let mut out = SymVector::zero();
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                let m: MultiIndex = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.insert(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SymVector {
        let Some(d) = self.coeffs.keys().next().map(|m| m.len()) else {
            // zero vector: zero for k >= 1, empty unit otherwise
            return if k == 0 {
                SymVector::monomial(Vec::new(), Rat::one())
            } else {
                SymVector::zero()
            };
        };
        let mut acc = SymVector::monomial(vec![0; d], Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_dense(&self, basis: &SymBasis) -> Result<Vec<Rat>, Error> {
        let mut out = vec![Rat::zero(); basis.len()];
        for (m, c) in &self.coeffs {
            let pos = basis.position(m).ok_or_else(|| {
                Error::DimensionMismatch(format!("monomial {m:?} not in Sym^{} basis", basis.n()))
            })?;
            out[pos] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(basis: &SymBasis, dense: &[Rat]) -> SymVector {
        let mut out = SymVector::zero();
        for (i, c) in dense.iter().enumerate() {
            if !c.is_zero() {
                out.insert(basis.monomial(i).clone(), c.clone());
            }
        }
        out
    }
}

/// Sparse column-major operator between symmetric powers, tagged with the
/// grading shift. Columns index the source basis, rows the target basis.
#[derive(Debug, Clone)]
pub struct SymOperator {
    cols: Vec<Vec<(usize, Rat)>>,
    n_rows: usize,
    pub degree: i64,
}

impl SymOperator {
    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply_dense(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols.len(), "operator/vector size mismatch");
        let mut out = vec![Rat::zero(); self.n_rows];
        for (c, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (r, entry) in &self.cols[c] {
                out[*r] += entry * coeff;
            }
        }
        out
    }

    pub fn apply(&self, v: &SymVector, source: &SymBasis, target: &SymBasis) -> Result<SymVector, Error> {
        let dense = v.to_dense(source)?;
        Ok(SymVector::from_dense(target, &self.apply_dense(&dense)))
    }

    /// Apply to a sparse coordinate vector; the result is sorted by index.
    pub fn apply_entries(&self, entries: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, coeff) in entries {
            if coeff.is_zero() {
                continue;
            }
            for (r, entry) in &self.cols[*c] {
                *acc.entry(*r).or_insert_with(Rat::zero) += entry * coeff;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc.into_iter().collect()
    }

    /// The `c`-th column as sparse entries.
    pub fn column(&self, c: usize) -> &[(usize, Rat)] {
        &self.cols[c]
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        let mut m = QMatrix::zero(self.n_rows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    /// Dense block on the given row/column index sets.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut m = QMatrix::zero(rows.len(), cols.len());
        for (bc, &c) in cols.iter().enumerate() {
            for (r, v) in &self.cols[c] {
                if let Some(&br) = row_pos.get(r) {
                    m.set(br, bc, v.clone());
                }
            }
        }
        m
    }

    /// Entry `(t, s)` may be nonzero only when the eigenvalues satisfy
    /// `eig(t) = eig(s) + degree`.
    pub fn respects_grading(&self, source: &SymBasis, target: &SymBasis) -> bool {
        self.cols.iter().enumerate().all(|(s, col)| {
            col.iter().all(|(t, v)| {
                v.is_zero() || target.eigenvalue(*t) == source.eigenvalue(s) + self.degree
            })
        })
    }
}

/// Derivation (Leibniz) extension of an operator on `H` to `Sym^n H`.
///
/// For a monomial with exponents `m`, the image is
/// `sum_i m_i * op(b_i) * x^(m - e_i)`, expanded over the matrix of `op`.
pub fn derivation_action(op: &GradedOperator, basis: &SymBasis) -> Result<SymOperator, Error> {
    let d = basis.dim_h();
    if op.matrix.rows() != d || op.matrix.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on extension of dim {d}",
            op.matrix.rows(),
            op.matrix.cols()
        )));
    }
    let mut cols = Vec::with_capacity(basis.len());
    for mono in basis.monomials() {
        let mut col: BTreeMap<usize, Rat> = BTreeMap::new();
        for i in 0..d {
            if mono[i] == 0 {
                continue;
            }
            let mult = rat_int(i64::from(mono[i]));
            for j in 0..d {
                let entry = op.matrix.at(j, i);
                if entry.is_zero() {
                    continue;
                }
                let mut target = mono.clone();
                target[i] -= 1;
                target[j] += 1;
                let pos = basis
                    .position(&target)
                    .expect("derivation image stays in the same symmetric power");
                let acc = col.entry(pos).or_insert_with(Rat::zero);
                *acc += &mult * entry;
            }
        }
        col.retain(|_, v| !v.is_zero());
        cols.push(col.into_iter().collect());
    }
    Ok(SymOperator {
        cols,
        n_rows: basis.len(),
        degree: op.degree,
    })
}

/// Contraction Laplacian `Sym^n H -> Sym^(n-2) H`:
/// `x_1 ... x_n -> sum_{i<j} q(x_i, x_j) x_1 ... ^x_i ... ^x_j ... x_n`.
///
/// Returns the operator together with the target basis. Requires `n >= 2`.
pub fn laplacian(basis: &SymBasis) -> Result<(SymOperator, SymBasis), Error> {
    if basis.n() < 2 {
        return Err(Error::InvalidParameter(format!(
            "Laplacian needs n >= 2, got {}",
            basis.n()
        )));
    }
    let target = SymBasis::new(basis.extension(), basis.n() - 2);
    let d = basis.dim_h();
    let gram = basis.extension().pairing().gram();
    let mut cols = Vec::with_capacity(basis.len());
    for mono in basis.monomials() {
        let mut col: BTreeMap<usize, Rat> = BTreeMap::new();
        for i in 0..d {
            if mono[i] == 0 {
                continue;
            }
            for j in i..d {
                let pairs = if i == j {
                    if mono[i] < 2 {
                        continue;
                    }
                    // C(m_i, 2) unordered pairs inside one factor
                    rat_int(i64::from(mono[i]) * (i64::from(mono[i]) - 1) / 2)
                } else {
                    if mono[j] == 0 {
                        continue;
                    }
                    rat_int(i64::from(mono[i]) * i64::from(mono[j]))
                };
                let q = gram.at(i, j);
                if q.is_zero() {
                    continue;
                }
                let mut m = mono.clone();
                m[i] -= 1;
                m[j] -= 1;
                let pos = target
                    .position(&m)
                    .expect("contracted monomial lies in Sym^(n-2)");
                let acc = col.entry(pos).or_insert_with(Rat::zero);
                *acc += pairs * q;
            }
        }
        col.retain(|_, v| !v.is_zero());
        cols.push(col.into_iter().collect());
    }
    let op = SymOperator {
        cols,
        n_rows: target.len(),
        degree: 0,
    };
    Ok((op, target))
}

/// Basis of `ker(Laplacian)` as sparse vectors; its size is
/// `sym_dim(d, n) - sym_dim(d, n-2)`.
pub fn s_n_kernel(basis: &SymBasis) -> Result<Vec<SymVector>, Error> {
    let (delta, _) = laplacian(basis)?;
    let kernel = delta.to_qmatrix().kernel_basis();
    Ok(kernel
        .iter()
        .map(|v| SymVector::from_dense(basis, v.entries()))
        .collect())
}

/// The normalized generator `a^n / n!`.
pub fn psi_unit(basis: &SymBasis) -> SymVector {
    let mut m = vec![0u32; basis.dim_h()];
    m[0] = basis.n();
    SymVector::monomial(m, Rat::one() / factorial_rat(basis.n()))
}

/// Rank data of one hard Lefschetz level map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    /// Level index `j`; the map is the `2j`-th power of the raising
    /// derivation from the eigenvalue `-2j` part to the `+2j` part.
    pub j: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub full_rank: bool,
}

/// Outcome of the hard Lefschetz rank checks for one vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardLefschetzReport {
    pub f_norm: Rat,
    pub levels: Vec<LevelReport>,
    pub all_full_rank: bool,
}

/// Hard Lefschetz rank check for a non-isotropic `f` in the base lattice.
///
/// For each `j` in `1..=n`, restrict the `2j`-th power of the raising
/// derivation of `e_f` to the eigenvalue `-2j` subspace of `ker(Laplacian)`
/// and record its rank onto the `+2j` subspace. Errors on isotropic `f`.
pub fn hard_lefschetz_check(basis: &SymBasis, f: &QVector) -> Result<HardLefschetzReport, Error> {
    let norm = basis.extension().base().form().norm(f)?;
    if norm.is_zero() {
        return Err(Error::Isotropic(
            "hard Lefschetz check requires q(f, f) != 0".into(),
        ));
    }
    hard_lefschetz_levels(basis, f)
}

/// Same rank computation without the non-isotropy requirement, so the rank
/// drop on isotropic input can be observed and recorded.
pub fn hard_lefschetz_levels(basis: &SymBasis, f: &QVector) -> Result<HardLefschetzReport, Error> {
    let ext = basis.extension().clone();
    let norm = ext.base().form().norm(f)?;
    let raising = derivation_action(&lefschetz_e(&ext, f)?, basis)?;
    let (delta, target) = laplacian(basis)?;
    let mut levels = Vec::new();
    for j in 1..=basis.n() {
        let w = 2 * i64::from(j);
        let src_cols = basis.eigenspace(-w);
        let tgt_cols = basis.eigenspace(w);
        let src_kernel = eigenspace_kernel(&delta, basis, &target, &src_cols, -w);
        let tgt_kernel_dim = eigenspace_kernel(&delta, basis, &target, &tgt_cols, w).len();

        // Apply the raising derivation 2j times to each kernel vector.
        let tgt_pos: BTreeMap<usize, usize> =
            tgt_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut image = QMatrix::zero(tgt_cols.len(), src_kernel.len());
        for (k, vec) in src_kernel.iter().enumerate() {
            let mut dense = vec![Rat::zero(); basis.len()];
            for (i, &c) in src_cols.iter().enumerate() {
                dense[c] = vec[i].clone();
            }
            for _ in 0..2 * j {
                dense = raising.apply_dense(&dense);
            }
            for (c, v) in dense.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let row = tgt_pos
                    .get(&c)
                    .expect("image of the grading block stays in the mirror block");
                image.set(*row, k, v.clone());
            }
        }
        let rank = image.rank();
        levels.push(LevelReport {
            j,
            source_dim: src_kernel.len(),
            target_dim: tgt_kernel_dim,
            rank,
            full_rank: rank == src_kernel.len() && rank == tgt_kernel_dim,
        });
    }
    let all_full_rank = levels.iter().all(|l| l.full_rank);
    Ok(HardLefschetzReport {
        f_norm: norm,
        levels,
        all_full_rank,
    })
}

/// Kernel of the Laplacian restricted to one grading eigenspace, as
/// coordinate vectors over `cols`.
fn eigenspace_kernel(
    delta: &SymOperator,
    source: &SymBasis,
    target: &SymBasis,
    cols: &[usize],
    w: i64,
) -> Vec<QVector> {
    debug_assert!(cols.iter().all(|&c| source.eigenvalue(c) == w));
    let rows = target.eigenspace(w);
    delta.block(&rows, cols).kernel_basis()
}

/// Result of the Fujiki proportionality computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FujikiValue {
    /// `q(f, f) != 0`: the constant `C` with
    /// `e_f^(2n)(a^n / n!) = C * q(f,f)^n * b^n`.
    Constant(Rat),
    /// Isotropic `f`: the raw coefficient of `b^n`, which must be zero.
    IsotropicTop(Rat),
}

/// Computes the model Fujiki constant by raising `a^n / n!` with the
/// derivation of `e_f` exactly `2n` times and dividing the `b^n`
/// coefficient by `q(f, f)^n`. The division is exact.
pub fn fujiki_coefficient(basis: &SymBasis, f: &QVector) -> Result<FujikiValue, Error> {
    let ext = basis.extension().clone();
    let norm = ext.base().form().norm(f)?;
    let raising = derivation_action(&lefschetz_e(&ext, f)?, basis)?;
    let mut dense = psi_unit(basis).to_dense(basis)?;
    for _ in 0..2 * basis.n() {
        dense = raising.apply_dense(&dense);
    }
    let top = dense[basis.len() - 1].clone();
    // By the grading, everything except the b^n coordinate must vanish.
    debug_assert!(dense[..basis.len() - 1].iter().all(Rat::is_zero));
    if norm.is_zero() {
        return Ok(FujikiValue::IsotropicTop(top));
    }
    let mut norm_power = Rat::one();
    for _ in 0..basis.n() {
        norm_power *= &norm;
    }
    Ok(FujikiValue::Constant(top / norm_power))
}

/// The dual class of the base form in `Sym^2`: coefficients are the
/// entries of the inverse Gram matrix of the base lattice. Requires `n = 2`.
pub fn bbf_dual_class(basis: &SymBasis) -> Result<SymVector, Error> {
    if basis.n() != 2 {
        return Err(Error::InvalidParameter(format!(
            "dual class lives in Sym^2, basis has n = {}",
            basis.n()
        )));
    }
    let rank = basis.extension().base().rank();
    let inv = basis.extension().base().gram().inverse()?;
    let d = basis.dim_h();
    let mut out = SymVector::zero();
    for i in 0..rank {
        for j in i..rank {
            let mut m = vec![0u32; d];
            m[1 + i] += 1;
            m[1 + j] += 1;
            let coeff = if i == j {
                inv.at(i, i).clone()
            } else {
                inv.at(i, j) * &rat_int(2)
            };
            out.insert(m, coeff);
        }
    }
    Ok(out)
}

/// Test whether `t` is a rational multiple of the dual class of the base
/// form; returns the scalar when it is. `t` must be supported on degree-0
/// monomials (no exponents on the `a`, `b` generators).
pub fn is_multiple_of_bbf(
    basis: &SymBasis,
    t: &SymVector,
) -> Result<(bool, Option<Rat>), Error> {
    let d = basis.dim_h();
    for m in t.coeffs().keys() {
        if m.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "monomial of length {} in Sym over dim {d}",
                m.len()
            )));
        }
        if m[0] != 0 || m[d - 1] != 0 {
            return Err(Error::InvalidParameter(
                "input is not supported on degree-0 monomials".into(),
            ));
        }
    }
    if t.is_zero() {
        return Ok((true, Some(Rat::zero())));
    }
    let dual = bbf_dual_class(basis)?;
    let (first_m, first_c) = dual
        .coeffs()
        .iter()
        .next()
        .expect("dual class of a non-degenerate form is nonzero");
    let scalar = t.coeff(first_m) / first_c;
    if t == &dual.scale(&scalar) && !scalar.is_zero() {
        Ok((true, Some(scalar)))
    } else {
        Ok((false, None))
    }
}
