//! Equation parameters and local exponent data.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rational::{format_rational, parse_rational, rat, Rational};

/// The parameter triple (a, b, c) of the hypergeometric equation E(a, b, c):
/// z(1−z) y″ + (c − (a+b+1) z) y′ − a b y = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquationParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl EquationParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Self { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        Self::new(rat(a), rat(b), rat(c))
    }

    /// Parse from three rational literals.
    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self> {
        Ok(Self::new(
            parse_rational(a)?,
            parse_rational(b)?,
            parse_rational(c)?,
        ))
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.b.clone(), self.a.clone(), self.c.clone())
    }
}

impl std::fmt::Display for EquationParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "E({}, {}, {})",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c)
        )
    }
}

impl Serialize for EquationParams {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = ser.serialize_struct("EquationParams", 3)?;
        s.serialize_field("a", &format_rational(&self.a))?;
        s.serialize_field("b", &format_rational(&self.b))?;
        s.serialize_field("c", &format_rational(&self.c))?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for EquationParams {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: String,
            b: String,
            c: String,
        }
        let raw = Raw::deserialize(de)?;
        EquationParams::parse(&raw.a, &raw.b, &raw.c).map_err(serde::de::Error::custom)
    }
}

/// Local exponents of E(a, b, c) at its three regular singular points and
/// the exponent differences that drive every degeneration decision.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalExponents {
    /// 1 − c, exponent difference at z = 0
    pub e0: Rational,
    /// c − a − b, at z = 1
    pub e1: Rational,
    /// b − a, at z = ∞
    pub einf: Rational,
    /// raw exponent pairs {0, 1−c}, {0, c−a−b}, {a, b}
    pub at_zero: (Rational, Rational),
    pub at_one: (Rational, Rational),
    pub at_infinity: (Rational, Rational),
}

/// Exponent data of `p`: exponents {0, 1−c} at 0, {0, c−a−b} at 1, {a, b}
/// at ∞, with differences e0 = 1−c, e1 = c−a−b, e∞ = b−a.
pub fn local_exponents(p: &EquationParams) -> LocalExponents {
    let e0 = rat(1) - &p.c;
    let e1 = &p.c - &p.a - &p.b;
    let einf = &p.b - &p.a;
    LocalExponents {
        at_zero: (rat(0), e0.clone()),
        at_one: (rat(0), e1.clone()),
        at_infinity: (p.a.clone(), p.b.clone()),
        e0,
        e1,
        einf,
    }
}

/// The three singular points of the equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingPoint {
    Zero,
    One,
    Infinity,
}

impl SingPoint {
    pub const ALL: [SingPoint; 3] = [SingPoint::Zero, SingPoint::One, SingPoint::Infinity];
}

impl std::fmt::Display for SingPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingPoint::Zero => write!(f, "0"),
            SingPoint::One => write!(f, "1"),
            SingPoint::Infinity => write!(f, "inf"),
        }
    }
}
