//! Arbitrary-precision rationals.
//!
//! The scalar type is [`num::BigRational`], which already keeps the
//! denominator positive and the fraction reduced.  This module only adds
//! small constructors and the `"p/q"` text format used by reports.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational number (always reduced, denominator > 0).
pub type Rational = BigRational;

/// Build `n/d` from machine integers.
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render as `"p/q"`; integers are rendered as `"p/1"` so that every value
/// has the same shape in serialized output.
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"p/q"`, `"p"` or a decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
            return None;
        }
        let w: BigInt = if whole_digits.is_empty() { BigInt::zero() } else { whole_digits.parse().ok()? };
        let f: BigInt = frac.parse().ok()?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let v = Rational::new(w * &scale + f, scale);
        return Some(if neg { -v } else { v });
    }
    t.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Greatest common divisor of two integers (non-negative result).
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num::Integer::gcd(a, b)
}

/// Least common multiple of two integers (non-negative result).
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    num::Integer::lcm(a, b)
}

/// `true` if `r` is a perfect square of a rational.
pub fn is_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let isqrt = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    isqrt(r.numer()) && isqrt(r.denom())
}

/// `r^e` for a non-negative exponent.
pub fn pow(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_round_trip() {
        for (n, d) in [(0, 1), (3, 4), (-7, 2), (10, 5)] {
            let r = rat(n, d);
            assert_eq!(parse_rational(&to_pq(&r)), Some(r));
        }
    }

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse_rational("1.25"), Some(rat(5, 4)));
        assert_eq!(parse_rational("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn squares() {
        assert!(is_square(&rat(9, 4)));
        assert!(!is_square(&rat(2, 1)));
        assert!(!is_square(&rat(-1, 1)));
    }
}
