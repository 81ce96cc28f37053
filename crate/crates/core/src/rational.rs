//! Exact rational scalars and integer helpers.
//!
//! Rationals are arbitrary-precision `num_rational::BigRational`, always
//! stored in lowest terms with a positive denominator. Serialized form is
//! the string `"p/q"` (or just `"p"` when the denominator is 1).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse a rational from `"p/q"` or `"p"`. Rejects zero denominators and
/// anything with stray characters, so scenario files fail loudly.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let err = || Error::RationalParse(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| err())?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| err())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(numer, denom))
}

/// Format a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Result of the extended gcd: `g = gcd(a, b)` together with a Bezout pair
/// in the convention `m1*a - m2*b = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGcd {
    pub g: Int,
    pub m1: Int,
    pub m2: Int,
}

/// Extended gcd with the sign convention `m1*a - m2*b = g`, `g > 0`.
///
/// When `b != 0` the returned `m1` is the smallest positive solution, which
/// makes the output canonical: `ext_gcd(2, 3)` gives `m1 = 2, m2 = 1`.
/// Errors when both inputs are zero.
pub fn ext_gcd(a: &Int, b: &Int) -> Result<ExtGcd, Error> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidParameter("ext_gcd(0, 0)".into()));
    }
    if b.is_zero() {
        let sign = a.signum();
        return Ok(ExtGcd {
            g: a.abs(),
            m1: sign,
            m2: Int::zero(),
        });
    }
    // Iterative extended Euclid on (a, b): old_r = a*old_s + b*old_t.
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (Int::one(), Int::zero());
    let (mut old_t, mut t) = (Int::zero(), Int::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    let (mut g, mut x) = (old_r, old_s);
    if g.is_negative() {
        g = -g;
        x = -x;
    }
    // Normalize m1 to the smallest positive representative mod |b|/g.
    let modulus = (b / &g).abs();
    let mut m1 = x % &modulus;
    if !m1.is_positive() {
        m1 += &modulus;
    }
    let m2 = (&m1 * a - &g) / b;
    debug_assert_eq!(&m1 * a - &m2 * b, g);
    Ok(ExtGcd { g, m1, m2 })
}

/// `k!` as a rational, for the exponential and normalization factors.
pub fn factorial_rat(k: u32) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=k as u64 {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/3", "-7/2", "0", "42", "-5"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // non-lowest terms normalize
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a", "1/2/3", "1.5", "2 3"] {
            assert!(parse_rat(s).is_err(), "should reject {s:?}");
        }
    }

    #[test]
    fn ext_gcd_examples() {
        let e = ext_gcd(&Int::from(2), &Int::from(3)).unwrap();
        assert_eq!((e.g, e.m1, e.m2), (Int::from(1), Int::from(2), Int::from(1)));

        for k in [2i64, 5, 17] {
            let e = ext_gcd(&Int::from(1), &Int::from(k)).unwrap();
            assert_eq!((e.g, e.m1, e.m2), (Int::from(1), Int::from(1), Int::from(0)));
        }

        let e = ext_gcd(&Int::from(6), &Int::from(4)).unwrap();
        assert_eq!((e.g, e.m1, e.m2), (Int::from(2), Int::from(1), Int::from(1)));
    }

    #[test]
    fn ext_gcd_rejects_zero_pair() {
        assert!(ext_gcd(&Int::zero(), &Int::zero()).is_err());
    }

    proptest! {
        #[test]
        fn ext_gcd_bezout_identity(a in -1000i64..1000, b in -1000i64..1000) {
            prop_assume!(a != 0 || b != 0);
            let (a, b) = (Int::from(a), Int::from(b));
            let e = ext_gcd(&a, &b).unwrap();
            prop_assert!(e.g.is_positive());
            prop_assert_eq!(&e.m1 * &a - &e.m2 * &b, e.g.clone());
            prop_assert!((&a % &e.g).is_zero());
            prop_assert!((&b % &e.g).is_zero());
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial_rat(0), rat_int(1));
        assert_eq!(factorial_rat(4), rat_int(24));
    }
}
