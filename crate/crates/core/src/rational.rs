//! Exact rational scalars.
//!
//! All probability mass, matrix entries and random-variable values in this
//! crate are [`Rational`]s. The representation is `num-rational`'s
//! arbitrary-precision ratio, which keeps gcd(p, q) = 1 and q > 0 as
//! structural invariants, so equality is plain structural equality.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for small constants: `rat(1, 4)` is 1/4. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses "p/q" or a bare integer "p". Whitespace is not accepted; the
/// literal must round-trip through [`format_rational`].
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Renders "p/q", or just "p" for integers. Inverse of [`parse_rational`]
/// on canonical forms.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when the denominator is a power of two (integers included).
pub fn is_dyadic(r: &Rational) -> bool {
    let mut d = r.denom().abs();
    let two = BigInt::from(2);
    while (&d % &two).is_zero() {
        d /= &two;
    }
    d.is_one()
}
