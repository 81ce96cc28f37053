//! Seeded random generation of rational vectors, isometries and group
//! elements. Everything routes through a ChaCha stream cipher RNG, so a
//! fixed seed reproduces the exact same draws on any platform.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hodge::bfield;
use crate::lattice::BBFLattice;
use crate::linalg::{QMatrix, QVector};
use crate::mukai::MukaiExtension;
use crate::rational::{rat, Rat};
use crate::sp::SpElement;

/// The RNG used for every randomized draw in the toolkit.
pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `[lo, hi]`.
pub fn random_in_range(rng: &mut SampleRng, lo: u32, hi: u32) -> u32 {
    rng.random_range(lo..=hi)
}

/// Rational with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`.
pub fn random_rat(rng: &mut SampleRng, bound: u32) -> Rat {
    let b = i64::from(bound.max(1));
    let numer = rng.random_range(-b..=b);
    let denom = rng.random_range(1..=b);
    rat(numer, denom)
}

pub fn random_vector(rng: &mut SampleRng, dim: usize, bound: u32) -> QVector {
    QVector::new((0..dim).map(|_| random_rat(rng, bound)).collect())
}

/// Nonzero vector (rejection sampled; a zero draw is astronomically rare
/// but rejected anyway).
pub fn random_nonzero_vector(rng: &mut SampleRng, dim: usize, bound: u32) -> QVector {
    loop {
        let v = random_vector(rng, dim, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Vector with `q(v, v) != 0`, by rejection.
pub fn random_nonisotropic(rng: &mut SampleRng, lattice: &BBFLattice, bound: u32) -> QVector {
    loop {
        let v = random_vector(rng, lattice.rank(), bound);
        if !lattice.form().norm(&v).expect("dims match").is_zero() {
            return v;
        }
    }
}

/// Vector with `q(v, v) != 0` of the requested sign, by rejection.
pub fn random_nonisotropic_signed(
    rng: &mut SampleRng,
    lattice: &BBFLattice,
    bound: u32,
    positive: bool,
) -> QVector {
    use num_traits::Signed;
    loop {
        let v = random_vector(rng, lattice.rank(), bound);
        let norm = lattice.form().norm(&v).expect("dims match");
        if norm.is_positive() == positive && !norm.is_zero() {
            return v;
        }
    }
}

/// Nonzero isotropic vector, when the lattice starts with a hyperbolic
/// pair orthogonal to the rest (as the Kummer lattice does): solve the
/// second hyperbolic coordinate so the norm cancels. Returns `None` when
/// no such pair is detected.
pub fn random_isotropic(
    rng: &mut SampleRng,
    lattice: &BBFLattice,
    bound: u32,
) -> Option<QVector> {
    let g = lattice.gram();
    let n = lattice.rank();
    if n < 2 || !g.at(0, 0).is_zero() || !g.at(1, 1).is_zero() || g.at(0, 1).is_zero() {
        return None;
    }
    if (2..n).any(|k| !g.at(0, k).is_zero() || !g.at(1, k).is_zero()) {
        return None;
    }
    let c = g.at(0, 1).clone();
    loop {
        let mut entries = vec![Rat::zero(); n];
        entries[0] = loop {
            let a = random_rat(rng, bound);
            if !a.is_zero() {
                break a;
            }
        };
        for e in entries.iter_mut().skip(2) {
            *e = random_rat(rng, bound);
        }
        let rest = QVector::new(entries.clone());
        let rest_norm = lattice.form().norm(&rest).expect("dims match");
        // q(v) = 2 a b c + rest_norm = 0
        entries[1] = -rest_norm / (crate::rational::rat_int(2) * &c * &entries[0]);
        let v = QVector::new(entries);
        debug_assert!(lattice.form().norm(&v).unwrap().is_zero());
        if !v.is_zero() {
            return Some(v);
        }
    }
}

/// Random element of `so` of the extended pairing: `G^-1 S` for a random
/// skew-symmetric `S`.
pub fn random_so_element(rng: &mut SampleRng, ext: &MukaiExtension, bound: u32) -> QMatrix {
    let d = ext.dim();
    let mut skew = QMatrix::zero(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let v = random_rat(rng, bound);
            skew.set(i, j, v.clone());
            skew.set(j, i, -v);
        }
    }
    ext.pairing()
        .gram()
        .inverse()
        .expect("extended pairing is non-degenerate")
        .mul(&skew)
        .expect("square")
}

/// Random isometry of the extension: a product of B-fields, the
/// degree swap, and sign flips of the grading generators.
pub fn random_isometry(rng: &mut SampleRng, ext: &MukaiExtension, bound: u32) -> QMatrix {
    let d = ext.dim();
    let mut m = QMatrix::identity(d);
    let factors = rng.random_range(1..=3);
    for _ in 0..factors {
        let pick = rng.random_range(0u8..3);
        let factor = match pick {
            0 => {
                let v = random_vector(rng, ext.base().rank(), bound);
                bfield(ext, &v).expect("base vector has the right dimension")
            }
            1 => degree_swap(ext),
            _ => {
                // alpha -> -alpha, beta -> -beta: preserves the pairing
                let mut s = QMatrix::identity(d);
                s.set(0, 0, rat(-1, 1));
                s.set(d - 1, d - 1, rat(-1, 1));
                s
            }
        };
        m = factor.mul(&m).expect("square");
    }
    m
}

/// Random degree-reversing isometry: a scaled swap
/// `alpha -> k beta, beta -> (1/k) alpha`, optionally negating the base.
pub fn random_degree_reversing(rng: &mut SampleRng, ext: &MukaiExtension, bound: u32) -> QMatrix {
    let d = ext.dim();
    let mut core = degree_swap(ext);
    if rng.random_bool(0.5) {
        for i in 1..d - 1 {
            core.set(i, i, rat(-1, 1));
        }
    }
    let k = loop {
        let k = random_rat(rng, bound);
        if !k.is_zero() {
            break k;
        }
    };
    core.set(d - 1, 0, k.clone());
    core.set(0, d - 1, Rat::one() / k);
    core
}

/// The degree swap: alpha <-> beta, identity on the base.
pub fn degree_swap(ext: &MukaiExtension) -> QMatrix {
    let d = ext.dim();
    let mut m = QMatrix::zero(d, d);
    m.set(0, d - 1, rat(1, 1));
    m.set(d - 1, 0, rat(1, 1));
    for i in 1..d - 1 {
        m.set(i, i, rat(1, 1));
    }
    m
}

/// Random integral invariant-group element with entries in
/// `[-bound, bound]`.
pub fn random_sp_element(rng: &mut SampleRng, bound: u32) -> SpElement {
    let b = i64::from(bound.max(1));
    SpElement::from_ints(
        rng.random_range(-b..=b),
        rng.random_range(-b..=b),
        rng.random_range(-b..=b),
        rng.random_range(-b..=b),
    )
}

/// Random element of the congruence subgroup of the given level: a short
/// word in the two unipotent generators and `-1`.
pub fn random_gamma0(rng: &mut SampleRng, level: i64, max_len: u32) -> [[i64; 2]; 2] {
    let mut m = [[1i64, 0], [0, 1]];
    let len = rng.random_range(1..=max_len.max(1));
    for _ in 0..len {
        let gen: [[i64; 2]; 2] = match rng.random_range(0u8..5) {
            0 => [[1, 1], [0, 1]],
            1 => [[1, -1], [0, 1]],
            2 => [[1, 0], [level, 1]],
            3 => [[1, 0], [-level, 1]],
            _ => [[-1, 0], [0, -1]],
        };
        m = mat2_mul(m, gen);
    }
    m
}

fn mat2_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let prod = |r: usize, c: usize| -> i64 {
        let v = i128::from(a[r][0]) * i128::from(b[0][c]) + i128::from(a[r][1]) * i128::from(b[1][c]);
        i64::try_from(v).expect("congruence subgroup word stays in i64 range")
    };
    [[prod(0, 0), prod(0, 1)], [prod(1, 0), prod(1, 1)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mukai::is_isometry;
    use crate::sp::gamma0_member;

    #[test]
    fn same_seed_same_draws() {
        let l = BBFLattice::kummer(2).unwrap();
        let mut a = rng_from_seed(11);
        let mut b = rng_from_seed(11);
        for _ in 0..20 {
            assert_eq!(
                random_nonisotropic(&mut a, &l, 20),
                random_nonisotropic(&mut b, &l, 20)
            );
        }
    }

    #[test]
    fn isotropic_sampler_produces_isotropic_vectors() {
        let l = BBFLattice::kummer(2).unwrap();
        let mut rng = rng_from_seed(3);
        for _ in 0..10 {
            let v = random_isotropic(&mut rng, &l, 10).unwrap();
            assert!(!v.is_zero());
            assert!(l.form().norm(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn isotropic_sampler_detects_unsupported_lattices() {
        let l = BBFLattice::diagonal(&[crate::rational::rat_int(2)]).unwrap();
        let mut rng = rng_from_seed(3);
        assert!(random_isotropic(&mut rng, &l, 10).is_none());
    }

    #[test]
    fn sampled_isometries_are_isometries() {
        let ext = MukaiExtension::new(BBFLattice::kummer(2).unwrap()).unwrap();
        let mut rng = rng_from_seed(5);
        for _ in 0..10 {
            let m = random_isometry(&mut rng, &ext, 6);
            assert!(is_isometry(ext.pairing(), &m).unwrap());
        }
    }

    #[test]
    fn sampled_degree_reversals_reverse_degrees() {
        use crate::hodge::check_degree_reversing;
        let ext = MukaiExtension::new(BBFLattice::kummer(2).unwrap()).unwrap();
        let mut rng = rng_from_seed(5);
        for _ in 0..10 {
            let m = random_degree_reversing(&mut rng, &ext, 6);
            assert!(is_isometry(ext.pairing(), &m).unwrap());
            assert!(check_degree_reversing(&ext, &ext, &m).unwrap());
        }
    }

    #[test]
    fn sampled_so_elements_are_skew_for_the_pairing() {
        use crate::mukai::so_membership;
        let ext = MukaiExtension::new(BBFLattice::kummer(2).unwrap()).unwrap();
        let mut rng = rng_from_seed(7);
        for _ in 0..10 {
            let m = random_so_element(&mut rng, &ext, 6);
            assert!(so_membership(&ext, &m).unwrap());
        }
    }

    #[test]
    fn gamma0_words_stay_in_the_subgroup() {
        let mut rng = rng_from_seed(9);
        for level in [3i64, 6, 12] {
            for _ in 0..20 {
                let m = random_gamma0(&mut rng, level, 8);
                assert!(gamma0_member(level, &m));
            }
        }
    }
}
