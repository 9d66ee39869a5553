//! Exact rational arithmetic helpers.
//!
//! Parameters are kept exact end to end: every integrality test below is a
//! test on reduced big-integer fractions, never on floats. The backing type
//! is `num_rational::BigRational`, which maintains the invariants we need
//! (positive denominator, reduced form).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n` as an exact rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn ratq(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

pub fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

pub fn is_positive_integer(x: &Rational) -> bool {
    x.is_integer() && x.is_positive()
}

/// Integer value of `x`, if `x` is an integer fitting in `i64`.
pub fn as_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Is `x` an integer in the closed interval `[lo, hi]`?
pub fn is_integer_in(x: &Rational, lo: i64, hi: i64) -> bool {
    match as_i64(x) {
        Some(v) => lo <= v && v <= hi,
        None => false,
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("rational out of f64 range")
}

/// Parse a rational literal: `p` or `p/q` with optional leading sign.
/// Decimal strings are rejected; the exactness contract of the whole
/// crate starts here.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |reason: &str| Error::Parse {
        token: s.to_string(),
        reason: reason.to_string(),
    };
    let s_trim = s.trim();
    if s_trim.is_empty() {
        return Err(bad("empty"));
    }
    if s_trim.contains('.') {
        return Err(bad("decimal literals are not accepted; use p/q"));
    }
    let mut parts = s_trim.splitn(2, '/');
    let p_str = parts.next().unwrap();
    let p: BigInt = p_str
        .parse()
        .map_err(|_| bad("numerator is not an integer"))?;
    match parts.next() {
        None => Ok(BigRational::from_integer(p)),
        Some(q_str) => {
            let q: BigInt = q_str
                .parse()
                .map_err(|_| bad("denominator is not an integer"))?;
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Render as `p` or `p/q` (reduced, denominator positive).
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact rising factorial (x)_k = x (x+1) ⋯ (x+k−1).
pub fn pochhammer_rat(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Exact k! as a rational.
pub fn factorial_rat(k: u32) -> Rational {
    let mut acc = BigInt::one();
    for j in 2..=k as u64 {
        acc *= BigInt::from(j);
    }
    BigRational::from_integer(acc)
}

/// Exact binomial-style quotient helper: (p)! for p ≥ 0, as rational.
pub fn factorial_i64(p: i64) -> Rational {
    assert!(p >= 0, "factorial of negative integer");
    factorial_rat(p as u32)
}

/// Harmonic number H_j = 1 + 1/2 + … + 1/j (H_0 = 0), exact.
pub fn harmonic(j: u32) -> Rational {
    let mut acc = Rational::zero();
    for i in 1..=j as i64 {
        acc += ratq(1, i);
    }
    acc
}
