//! BBF-type lattices over the rationals, given by Gram matrices.
//!
//! The constructors cover the hyperbolic plane `U`, diagonal lattices,
//! orthogonal direct sums, and the rank-7 generalized Kummer lattice
//! `U^3 + <-2(n+1)>`. Constructors are also addressable by name
//! (`"U"`, `"diag(-6)"`, `"kummer(2)"`, `"direct_sum(U, diag(2,2))"`)
//! so scenario files can pick them up.

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::{BilinearForm, QMatrix};
use crate::rational::{parse_rat, rat_int, Rat};

/// Non-degenerate lattice over `Q` with a symmetric bilinear form and
/// named basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BBFLattice {
    form: BilinearForm,
    labels: Vec<String>,
}

impl BBFLattice {
    /// Build from a Gram matrix; rejects non-symmetric or degenerate forms.
    pub fn new(gram: QMatrix, labels: Vec<String>) -> Result<Self, Error> {
        let form = BilinearForm::new(gram)?;
        if labels.len() != form.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for rank {}",
                labels.len(),
                form.dim()
            )));
        }
        if form.gram().det()?.is_zero() {
            return Err(Error::DegenerateForm);
        }
        Ok(BBFLattice { form, labels })
    }

    /// Hyperbolic plane `U` with Gram `[[0,1],[1,0]]`.
    pub fn hyperbolic_u() -> Self {
        let gram = QMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        BBFLattice::new(gram, vec!["e".into(), "f".into()]).expect("U is non-degenerate")
    }

    /// Diagonal lattice `<d_1, ..., d_k>`; every entry must be nonzero.
    pub fn diagonal(entries: &[Rat]) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("diag() needs at least one entry".into()));
        }
        let labels = (1..=entries.len()).map(|i| format!("v{i}")).collect();
        BBFLattice::new(QMatrix::diagonal(entries), labels)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(parts: &[BBFLattice]) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("direct_sum() of nothing".into()));
        }
        let rank: usize = parts.iter().map(|p| p.rank()).sum();
        let mut gram = QMatrix::zero(rank, rank);
        let mut labels = Vec::with_capacity(rank);
        let mut offset = 0usize;
        for (pi, part) in parts.iter().enumerate() {
            let r = part.rank();
            for i in 0..r {
                for j in 0..r {
                    gram.set(offset + i, offset + j, part.gram().at(i, j).clone());
                }
            }
            for l in &part.labels {
                labels.push(if parts.len() > 1 {
                    format!("{l}{}", pi + 1)
                } else {
                    l.clone()
                });
            }
            offset += r;
        }
        BBFLattice::new(gram, labels)
    }

    /// The rank-7 lattice `U^3 + <-2(n+1)>` of a generalized Kummer
    /// manifold of parameter `n >= 2`, signature `(3, 4)`.
    pub fn kummer(n: u32) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "kummer parameter must be >= 2, got {n}"
            )));
        }
        let mut gram = QMatrix::zero(7, 7);
        for block in 0..3 {
            gram.set(2 * block, 2 * block + 1, rat_int(1));
            gram.set(2 * block + 1, 2 * block, rat_int(1));
        }
        gram.set(6, 6, rat_int(-2 * (i64::from(n) + 1)));
        let labels = vec![
            "e1".into(),
            "f1".into(),
            "e2".into(),
            "f2".into(),
            "e3".into(),
            "f3".into(),
            "d".into(),
        ];
        BBFLattice::new(gram, labels)
    }

    pub fn rank(&self) -> usize {
        self.form.dim()
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn gram(&self) -> &QMatrix {
        self.form.gram()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Signature `(p, q)`; the zero count vanishes by non-degeneracy.
    pub fn signature(&self) -> (usize, usize) {
        let (p, q, z) = self.form.signature();
        debug_assert_eq!(z, 0, "non-degenerate by construction");
        (p, q)
    }

    /// Determinant of the Gram matrix.
    pub fn discriminant(&self) -> Rat {
        self.form.gram().det().expect("square by construction")
    }

    /// Parse a lattice constructor expression: `U`, `diag(a, b, ...)` with
    /// rational entries, `kummer(n)`, or `direct_sum(spec, spec, ...)`.
    pub fn parse(spec: &str) -> Result<Self, Error> {
        let spec = spec.trim();
        if spec == "U" {
            return Ok(Self::hyperbolic_u());
        }
        if let Some(args) = strip_call(spec, "diag") {
            let entries = split_args(args)?
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<Rat>, Error>>()
                .map_err(|e| Error::LatticeParse(format!("{spec}: {e}")))?;
            return Self::diagonal(&entries);
        }
        if let Some(args) = strip_call(spec, "kummer") {
            let n: u32 = args
                .trim()
                .parse()
                .map_err(|_| Error::LatticeParse(format!("{spec}: bad kummer parameter")))?;
            return Self::kummer(n);
        }
        if let Some(args) = strip_call(spec, "direct_sum") {
            let parts = split_args(args)?
                .iter()
                .map(|s| Self::parse(s))
                .collect::<Result<Vec<_>, Error>>()?;
            return Self::direct_sum(&parts);
        }
        Err(Error::LatticeParse(spec.to_string()))
    }
}

fn strip_call<'a>(spec: &'a str, name: &str) -> Option<&'a str> {
    let rest = spec.strip_prefix(name)?.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner)
}

/// Split on top-level commas, respecting nested parentheses.
fn split_args(args: &str) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in args.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::LatticeParse(args.to_string()))?;
                current.push(ch);
            }
            ',' if depth == 0 => {
                out.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::LatticeParse(args.to_string()));
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    if out.is_empty() {
        return Err(Error::LatticeParse(args.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::QVector;
    use crate::rational::rat_int;

    #[test]
    fn kummer_rank_and_tail_entry() {
        for (n, tail) in [(2u32, -6i64), (3, -8), (5, -12)] {
            let l = BBFLattice::kummer(n).unwrap();
            assert_eq!(l.rank(), 7);
            assert_eq!(*l.gram().at(6, 6), rat_int(tail));
        }
    }

    #[test]
    fn kummer_rejects_small_n() {
        assert!(BBFLattice::kummer(0).is_err());
        assert!(BBFLattice::kummer(1).is_err());
    }

    // Independent signature certificate: e_i + f_i, e_i - f_i and d form an
    // orthogonal basis with norms (2, 2, 2, -2, -2, -2, -2(n+1)), so the
    // signature is (3, 4) by Sylvester's law of inertia.
    #[test]
    fn kummer_signature_certificate() {
        for n in [2u32, 3] {
            let l = BBFLattice::kummer(n).unwrap();
            let form = l.form();
            let mut basis = Vec::new();
            for block in 0..3usize {
                let mut plus = QVector::zero(7);
                let mut minus = QVector::zero(7);
                let e = QVector::unit(7, 2 * block);
                let f = QVector::unit(7, 2 * block + 1);
                plus = plus.add(&e).unwrap().add(&f).unwrap();
                minus = minus.add(&e).unwrap().sub(&f).unwrap();
                basis.push((plus, rat_int(2)));
                basis.push((minus, rat_int(-2)));
            }
            basis.push((QVector::unit(7, 6), rat_int(-2 * (i64::from(n) + 1))));
            for (i, (v, norm)) in basis.iter().enumerate() {
                assert_eq!(form.eval(v, v).unwrap(), norm.clone());
                for (w, _) in basis.iter().skip(i + 1) {
                    assert_eq!(form.eval(v, w).unwrap(), rat_int(0));
                }
            }
            assert_eq!(l.signature(), (3, 4));
        }
    }

    #[test]
    fn kummer_discriminant_matches_gram() {
        // det(U)^3 * (-2(n+1)) = (-1)^3 * (-2(n+1)) = 2(n+1)
        for n in [2u32, 3, 4] {
            let l = BBFLattice::kummer(n).unwrap();
            assert_eq!(l.discriminant(), rat_int(2 * (i64::from(n) + 1)));
        }
    }

    #[test]
    fn degenerate_gram_rejected() {
        let gram = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let r = BBFLattice::new(gram, vec!["a".into(), "b".into()]);
        assert_eq!(r.unwrap_err(), Error::DegenerateForm);
    }

    #[test]
    fn parse_constructors() {
        assert_eq!(BBFLattice::parse("U").unwrap(), BBFLattice::hyperbolic_u());
        let d = BBFLattice::parse("diag(-6)").unwrap();
        assert_eq!(d.rank(), 1);
        assert_eq!(*d.gram().at(0, 0), rat_int(-6));
        let d2 = BBFLattice::parse("diag(2, 1/2)").unwrap();
        assert_eq!(*d2.gram().at(1, 1), crate::rational::rat(1, 2));
        let k = BBFLattice::parse("kummer(2)").unwrap();
        assert_eq!(k, BBFLattice::kummer(2).unwrap());
        let s = BBFLattice::parse("direct_sum(U, U, U, diag(-6))").unwrap();
        assert_eq!(s.gram(), BBFLattice::kummer(2).unwrap().gram());
    }

    #[test]
    fn parse_rejects_malformed() {
        for s in ["", "V", "diag()", "kummer(x)", "direct_sum()", "diag(1/0)", "diag(1,)("] {
            assert!(BBFLattice::parse(s).is_err(), "should reject {s:?}");
        }
    }
}
