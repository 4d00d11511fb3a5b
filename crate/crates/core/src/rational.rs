//! Arbitrary-precision rational scalars.
//!
//! `BigRational` already satisfies the invariants we need (always reduced,
//! positive denominator, exact field arithmetic), so the toolkit uses it
//! directly and only adds construction and parsing helpers.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Reduced fraction `p/q`; panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Smallest integer >= r.
pub fn ceil_to_i64(r: &Rational) -> i64 {
    let c = r.ceil();
    let n = c.numer();
    i64::try_from(n.clone()).expect("ceiling fits in i64")
}

/// Parses "p/q" or "p" into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(p))
        }
    }
}

/// Renders as "p/q", or "p" when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}
