//! Coefficient arithmetic of invariant symplectomorphism groups.
//!
//! Elements of the invariant group are 2x2 blocks of integer (or, for the
//! torsor search, rational) coefficients against the canonical generators:
//! identity on the diagonal, `polarization (x) isogeny` in the lower left
//! and its dual pair in the upper right. Composition is determined by the
//! two constants `e` (the polarization exponent, from
//! `lambda . lambda_dual = [e]`) and `n + 1` (from
//! `isogeny . dual isogeny = [n + 1]`), which the realization
//! homomorphism into 2x2 rational matrices bakes into the lower-left
//! entry: `f -> [[a1, a2], [E a3, a4]]` with `E = e (n + 1)`.

use num_traits::One;

use crate::error::Error;
use crate::linalg::QMatrix;
use crate::rational::{ext_gcd, rat_int, Int, Rat};

/// Group parameters: symmetric-group index `n >= 2` and polarization
/// exponent `e >= 1`. The realization level is `E = e (n + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpParams {
    pub n: u32,
    pub e: u32,
}

impl SpParams {
    pub fn new(n: u32, e: u32) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
        }
        if e == 0 {
            return Err(Error::InvalidParameter("exponent must be positive".into()));
        }
        Ok(SpParams { n, e })
    }

    /// `E = e (n + 1)`.
    pub fn level(&self) -> i64 {
        i64::from(self.e) * (i64::from(self.n) + 1)
    }

    /// Whether `gcd(e, n + 1) = 1`, required for the torsor element search.
    pub fn coprime(&self) -> bool {
        num_integer::gcd(i64::from(self.e), i64::from(self.n) + 1) == 1
    }
}

/// Coefficients `(a1, a2, a3, a4)` of an invariant homomorphism block
/// matrix against the canonical generators, in the order top-left,
/// top-right, bottom-left, bottom-right. Integral for group elements;
/// rational coefficients appear in the torsor search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpElement {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
}

impl SpElement {
    pub fn new(a1: Rat, a2: Rat, a3: Rat, a4: Rat) -> Self {
        SpElement { a1, a2, a3, a4 }
    }

    pub fn from_ints(a1: i64, a2: i64, a3: i64, a4: i64) -> Self {
        SpElement::new(rat_int(a1), rat_int(a2), rat_int(a3), rat_int(a4))
    }

    pub fn identity() -> Self {
        SpElement::from_ints(1, 0, 0, 1)
    }

    pub fn is_integral(&self) -> bool {
        [&self.a1, &self.a2, &self.a3, &self.a4]
            .iter()
            .all(|a| a.denom().is_one())
    }
}

/// Realization into 2x2 rational matrices: `[[a1, a2], [E a3, a4]]`.
pub fn realize(p: &SpParams, f: &SpElement) -> QMatrix {
    let mut m = QMatrix::zero(2, 2);
    m.set(0, 0, f.a1.clone());
    m.set(0, 1, f.a2.clone());
    m.set(1, 0, &f.a3 * rat_int(p.level()));
    m.set(1, 1, f.a4.clone());
    m
}

/// Recover the coefficients from a realized 2x2 matrix.
pub fn decompose_realization(p: &SpParams, m: &QMatrix) -> SpElement {
    SpElement::new(
        m.at(0, 0).clone(),
        m.at(0, 1).clone(),
        m.at(1, 0) / rat_int(p.level()),
        m.at(1, 1).clone(),
    )
}

/// The involution `f -> (a4, -a2, -a3, a1)`; for symplectic `f` this is
/// the inverse.
pub fn tilde(f: &SpElement) -> SpElement {
    SpElement::new(f.a4.clone(), -f.a2.clone(), -f.a3.clone(), f.a1.clone())
}

/// Symplectic iff the realization has determinant 1; when it does, the
/// realization of the involution is exactly the inverse matrix.
pub fn is_symplectic(p: &SpParams, f: &SpElement) -> bool {
    let m = realize(p, f);
    let det = m.det().expect("2x2 is square");
    if !det.is_one() {
        return false;
    }
    let inv_check = realize(p, &tilde(f))
        .mul(&m)
        .expect("2x2 product")
        .is_identity();
    debug_assert!(inv_check, "det 1 forces tilde to invert");
    inv_check
}

/// Composition: the unique coefficients whose realization is the product
/// of the realizations.
pub fn compose(p: &SpParams, f: &SpElement, g: &SpElement) -> SpElement {
    let level = rat_int(p.level());
    SpElement::new(
        &f.a1 * &g.a1 + &level * &f.a2 * &g.a3,
        &f.a1 * &g.a2 + &f.a2 * &g.a4,
        &f.a3 * &g.a1 + &f.a4 * &g.a3,
        &level * &f.a3 * &g.a2 + &f.a4 * &g.a4,
    )
}

/// Hecke congruence subgroup membership: determinant 1 and lower-left
/// entry divisible by `level`.
pub fn gamma0_member(level: i64, m: &[[i64; 2]; 2]) -> bool {
    let det = i128::from(m[0][0]) * i128::from(m[1][1]) - i128::from(m[0][1]) * i128::from(m[1][0]);
    det == 1 && level != 0 && m[1][0] % level == 0
}

/// Embed a congruence-subgroup matrix as an integral invariant element:
/// `(m00, m01, m10 / E, m11)`. Errors on non-members.
pub fn gamma0_embed(p: &SpParams, m: &[[i64; 2]; 2]) -> Result<SpElement, Error> {
    if !gamma0_member(p.level(), m) {
        return Err(Error::InvalidParameter(format!(
            "matrix is not in the congruence subgroup of level {}",
            p.level()
        )));
    }
    Ok(SpElement::from_ints(
        m[0][0],
        m[0][1],
        m[1][0] / p.level(),
        m[1][1],
    ))
}

/// One enumerated reconstruction of the torsor element: a scalarization of
/// the cross-type generators, a typing repair for the ambiguous entries,
/// and a coefficient placement, together with its realized matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCandidate {
    /// Exponent `e` carried by the polarization (true) or by its dual.
    pub scalar_on_polarization: bool,
    /// Factor `n + 1` carried by the isogeny (true) or by its dual.
    pub scalar_on_isogeny: bool,
    /// Second tensor factor used for both off-diagonal entries.
    pub offdiag_factor: OffDiagFactor,
    /// Second tensor factor of the bottom-right entry.
    pub corner_factor: CornerFactor,
    /// Whether the Bezout coefficient `m1` multiplies the top-left entry.
    pub m1_on_top_left: bool,
    /// Rational coefficients `(x, y, z, w)` of the four entries.
    pub coefficients: SpElement,
    /// Realized 2x2 matrix under the chosen scalarization.
    pub realization: QMatrix,
    pub det: Rat,
    pub symplectic: bool,
}

/// Typing repairs for the off-diagonal entries (printed identically in
/// the source material, with an ambiguous second factor).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffDiagFactor {
    Isogeny,
    DualIsogeny,
    Identity,
}

/// Typing repairs for the bottom-right entry: the printed isogeny factor
/// or its type-correct dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerFactor {
    DualIsogeny,
    Isogeny,
}

/// Full search report: the Bezout pair, every enumerated choice, and the
/// indices of the symplectic candidates. Deterministic across runs.
#[derive(Debug, Clone)]
pub struct GSearchReport {
    pub m1: Int,
    pub m2: Int,
    pub choices: Vec<GCandidate>,
    pub candidates: Vec<usize>,
}

/// Enumerate the reconstructions of the torsor element with the entry
/// shape `[[x * (pol (x) isog), y * (id (x) ?)], [z * (id (x) ?), m2 *
/// (dual pol (x) ?)]]` where `x` is `1/(n+1)` or `m1/(n+1)` and
/// `y = z = -1/(n+1)`, over all scalarizations consistent with the
/// composition rules. Keeps every choice whose realization has
/// determinant 1. Requires `gcd(e, n+1) = 1`; an empty candidate list is
/// reported, not an error.
pub fn g_candidate_search(p: &SpParams) -> Result<GSearchReport, Error> {
    if !p.coprime() {
        return Err(Error::InvalidParameter(format!(
            "gcd(e, n+1) must be 1, got e = {}, n+1 = {}",
            p.e,
            p.n + 1
        )));
    }
    let bezout = ext_gcd(&Int::from(p.e), &Int::from(p.n + 1))?;
    let (m1, m2) = (bezout.m1.clone(), bezout.m2.clone());
    let m1_rat = Rat::from_integer(m1.clone());
    let m2_rat = Rat::from_integer(m2.clone());
    let np1 = rat_int(i64::from(p.n) + 1);
    let e = rat_int(i64::from(p.e));

    let mut choices = Vec::new();
    let mut candidates = Vec::new();
    for scalar_on_polarization in [true, false] {
        for scalar_on_isogeny in [true, false] {
            let s_pol = if scalar_on_polarization { e.clone() } else { Rat::one() };
            let s_pol_dual = &e / &s_pol;
            let s_isog = if scalar_on_isogeny { np1.clone() } else { Rat::one() };
            let s_isog_dual = &np1 / &s_isog;
            for offdiag_factor in [
                OffDiagFactor::Isogeny,
                OffDiagFactor::DualIsogeny,
                OffDiagFactor::Identity,
            ] {
                let s_off = match offdiag_factor {
                    OffDiagFactor::Isogeny => s_isog.clone(),
                    OffDiagFactor::DualIsogeny => s_isog_dual.clone(),
                    OffDiagFactor::Identity => Rat::one(),
                };
                for corner_factor in [CornerFactor::DualIsogeny, CornerFactor::Isogeny] {
                    let s_corner = match corner_factor {
                        CornerFactor::DualIsogeny => &s_pol_dual * &s_isog_dual,
                        CornerFactor::Isogeny => &s_pol_dual * &s_isog,
                    };
                    for m1_on_top_left in [false, true] {
                        let x = if m1_on_top_left {
                            &m1_rat / &np1
                        } else {
                            Rat::one() / &np1
                        };
                        let y = -Rat::one() / &np1;
                        let coefficients =
                            SpElement::new(x.clone(), y.clone(), y.clone(), m2_rat.clone());
                        let mut realization = QMatrix::zero(2, 2);
                        realization.set(0, 0, &x * &s_pol * &s_isog);
                        realization.set(0, 1, &y * &s_off);
                        realization.set(1, 0, &y * &s_off);
                        realization.set(1, 1, &m2_rat * &s_corner);
                        let det = realization.det().expect("2x2 is square");
                        let symplectic = det.is_one();
                        if symplectic {
                            candidates.push(choices.len());
                        }
                        choices.push(GCandidate {
                            scalar_on_polarization,
                            scalar_on_isogeny,
                            offdiag_factor,
                            corner_factor,
                            m1_on_top_left,
                            coefficients,
                            realization,
                            det,
                            symplectic,
                        });
                    }
                }
            }
        }
    }
    Ok(GSearchReport {
        m1,
        m2,
        choices,
        candidates,
    })
}

impl GSearchReport {
    /// Torsor-structure check: for two candidates under the same
    /// scalarization, the composition `tilde(g) . g'` of their
    /// realizations decomposes to an integral element.
    pub fn torsor_pairs_integral(&self, p: &SpParams) -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        for &i in &self.candidates {
            for &j in &self.candidates {
                let a = &self.choices[i];
                let b = &self.choices[j];
                if a.scalar_on_polarization != b.scalar_on_polarization
                    || a.scalar_on_isogeny != b.scalar_on_isogeny
                {
                    continue;
                }
                // det 1: the adjugate realizes tilde(g)
                let adj = QMatrix::from_fn(2, 2, |r, c| match (r, c) {
                    (0, 0) => a.realization.at(1, 1).clone(),
                    (0, 1) => -a.realization.at(0, 1).clone(),
                    (1, 0) => -a.realization.at(1, 0).clone(),
                    _ => a.realization.at(0, 0).clone(),
                });
                let product = adj.mul(&b.realization).expect("2x2 product");
                let element = decompose_realization(p, &product);
                out.push((i, j, element.is_integral()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn params_23() -> SpParams {
        // n + 1 = 3, e = 2, E = 6
        SpParams::new(2, 2).unwrap()
    }

    #[test]
    fn realize_examples() {
        let p = params_23();
        assert!(realize(&p, &SpElement::identity()).is_identity());
        let upper = SpElement::from_ints(1, 1, 0, 1);
        assert_eq!(
            realize(&p, &upper),
            QMatrix::from_int_rows(&[&[1, 1], &[0, 1]])
        );
        let lower = SpElement::from_ints(1, 0, 1, 1);
        assert_eq!(
            realize(&p, &lower),
            QMatrix::from_int_rows(&[&[1, 0], &[6, 1]])
        );
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde(&SpElement::identity()), SpElement::identity());
        assert_eq!(
            tilde(&SpElement::from_ints(1, 1, 0, 1)),
            SpElement::from_ints(1, -1, 0, 1)
        );
        let f = SpElement::from_ints(3, -2, 5, 7);
        assert_eq!(tilde(&tilde(&f)), f);
    }

    #[test]
    fn symplectic_examples() {
        let p = params_23();
        assert!(is_symplectic(&p, &SpElement::identity()));
        assert!(is_symplectic(&p, &SpElement::from_ints(1, 1, 0, 1)));
        assert!(!is_symplectic(&p, &SpElement::from_ints(2, 0, 0, 1)));
    }

    #[test]
    fn gamma0_membership() {
        let n = 6;
        assert!(gamma0_member(n, &[[1, 0], [n, 1]]));
        assert!(gamma0_member(n, &[[1, 1], [0, 1]]));
        assert!(!gamma0_member(n, &[[0, -1], [1, 0]]));
        assert!(!gamma0_member(n, &[[2, 0], [0, 1]])); // det 2
    }

    #[test]
    fn gamma0_embedding_round_trip() {
        let p = params_23();
        let e = p.level();
        assert_eq!(
            gamma0_embed(&p, &[[1, 0], [0, 1]]).unwrap(),
            SpElement::identity()
        );
        let f = gamma0_embed(&p, &[[1, 0], [e, 1]]).unwrap();
        assert_eq!(f, SpElement::from_ints(1, 0, 1, 1));
        assert!(is_symplectic(&p, &f));
        assert_eq!(
            realize(&p, &f),
            QMatrix::from_int_rows(&[&[1, 0], &[e, 1]])
        );
        assert!(gamma0_embed(&p, &[[0, -1], [1, 0]]).is_err());
    }

    #[test]
    fn compose_examples() {
        let p = params_23();
        let e = p.level();
        let f = SpElement::from_ints(2, 3, 1, -1);
        assert_eq!(compose(&p, &f, &SpElement::identity()), f);
        let t = gamma0_embed(&p, &[[1, 1], [0, 1]]).unwrap();
        let l = gamma0_embed(&p, &[[1, 0], [e, 1]]).unwrap();
        let prod = compose(&p, &t, &l);
        assert_eq!(
            realize(&p, &prod),
            QMatrix::from_int_rows(&[&[1 + e, 1], &[e, 1]])
        );
    }

    #[test]
    fn symplectic_composes_with_tilde_to_identity() {
        let p = params_23();
        let f = gamma0_embed(&p, &[[5, 2], [2 * p.level(), 5]]).unwrap();
        assert!(is_symplectic(&p, &f));
        let prod = compose(&p, &f, &tilde(&f));
        assert_eq!(prod, SpElement::identity());
    }

    #[test]
    fn bezout_pair_for_the_reference_case() {
        let p = params_23();
        let report = g_candidate_search(&p).unwrap();
        assert_eq!(report.m1, Int::from(2));
        assert_eq!(report.m2, Int::from(1));
    }

    #[test]
    fn g_search_is_deterministic_and_candidates_are_symplectic() {
        let p = params_23();
        let a = g_candidate_search(&p).unwrap();
        let b = g_candidate_search(&p).unwrap();
        assert_eq!(a.choices.len(), b.choices.len());
        assert_eq!(a.candidates, b.candidates);
        assert_eq!(a.choices.len(), 48);
        assert!(!a.candidates.is_empty(), "reference case has candidates");
        for &i in &a.candidates {
            assert!(a.choices[i].symplectic);
            assert!(a.choices[i].det.is_one());
            assert_eq!(a.choices[i].realization, b.choices[i].realization);
        }
    }

    #[test]
    fn g_search_rejects_non_coprime() {
        // e = 3, n + 1 = 3
        let p = SpParams::new(2, 3).unwrap();
        assert!(g_candidate_search(&p).is_err());
    }

    #[test]
    fn g_search_self_torsor_pairs_are_integral() {
        let p = params_23();
        let report = g_candidate_search(&p).unwrap();
        let pairs = report.torsor_pairs_integral(&p);
        assert!(!pairs.is_empty());
        for (i, j, integral) in pairs {
            if i == j {
                assert!(integral, "tilde(g) . g = id must be integral");
            }
        }
    }

    #[test]
    fn fractional_coefficients_are_detected() {
        assert!(SpElement::from_ints(1, 2, 3, 4).is_integral());
        assert!(!SpElement::new(rat(1, 2), rat_int(0), rat_int(0), rat_int(1)).is_integral());
    }

    fn small_element() -> impl Strategy<Value = SpElement> {
        (-9i64..=9, -9i64..=9, -9i64..=9, -9i64..=9)
            .prop_map(|(a, b, c, d)| SpElement::from_ints(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn realize_is_multiplicative(f in small_element(), g in small_element()) {
            let p = params_23();
            let lhs = realize(&p, &compose(&p, &f, &g));
            let rhs = realize(&p, &f).mul(&realize(&p, &g)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn symplectic_iff_tilde_inverts(f in small_element()) {
            let p = params_23();
            let prod = realize(&p, &tilde(&f)).mul(&realize(&p, &f)).unwrap();
            prop_assert_eq!(is_symplectic(&p, &f), prod.is_identity());
        }

        #[test]
        fn tilde_is_an_antihomomorphism(f in small_element(), g in small_element()) {
            let p = params_23();
            let lhs = tilde(&compose(&p, &f, &g));
            let rhs = compose(&p, &tilde(&g), &tilde(&f));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
