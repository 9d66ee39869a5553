//! Monodromy classification from exact integrality tests.
//!
//! The equation's monodromy group is pinned down by which of a small set of
//! parameter combinations are integers, and by sign counts among them.
//! Everything here is exact rational arithmetic.

use serde::{Deserialize, Serialize};

use crate::params::EquationParams;
use crate::rational::{is_integer, is_positive_integer, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonodromyClass {
    /// None of a, b, c−a, c−b is an integer.
    Irreducible,
    /// Reducible but the group is not abelian.
    ReducibleNonAbelian,
    /// A representation lands in the diagonal torus (nontrivially).
    MultiplicativeAbelian,
    /// A representation lands in the unipotent upper-triangular group.
    AdditiveAbelian,
    /// Trivial monodromy: all solutions are rational functions.
    Trivial,
}

impl std::fmt::Display for MonodromyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MonodromyClass::Irreducible => "irreducible",
            MonodromyClass::ReducibleNonAbelian => "reducible non-abelian",
            MonodromyClass::MultiplicativeAbelian => "multiplicative abelian",
            MonodromyClass::AdditiveAbelian => "additive abelian",
            MonodromyClass::Trivial => "trivial",
        };
        write!(f, "{s}")
    }
}

/// Exact monodromy classification of E(a, b, c).
///
/// - irreducible  ⇔ none of a, b, c−a, c−b ∈ ℤ
/// - trivial      ⇔ a, b, c ∈ ℤ and (a, b, c−a, c−b) has an odd number of
///   positive entries
/// - additive     ⇔ a, b, c ∈ ℤ and that count is even
/// - multiplicative ⇔ (a, 1−b, c−a, 1+b−c) contains exactly two integers,
///   both positive or both non-positive
/// - reducible non-abelian otherwise
pub fn classify_monodromy(p: &EquationParams) -> MonodromyClass {
    let a = &p.a;
    let b = &p.b;
    let c = &p.c;
    let ca = c - a;
    let cb = c - b;

    if !is_integer(a) && !is_integer(b) && !is_integer(&ca) && !is_integer(&cb) {
        return MonodromyClass::Irreducible;
    }

    if is_integer(a) && is_integer(b) && is_integer(c) {
        let positives = [a.clone(), b.clone(), ca, cb]
            .iter()
            .filter(|x| is_positive_integer(x))
            .count();
        return if positives % 2 == 1 {
            MonodromyClass::Trivial
        } else {
            MonodromyClass::AdditiveAbelian
        };
    }

    // torus test on the sequence (a, 1−b, c−a, 1+b−c)
    let seq: [Rational; 4] = [
        a.clone(),
        rat(1) - b,
        c - a,
        rat(1) + b - c,
    ];
    let ints: Vec<&Rational> = seq.iter().filter(|x| is_integer(x)).collect();
    if ints.len() == 2 {
        let both_pos = ints.iter().all(|x| is_positive_integer(x));
        let both_nonpos = ints.iter().all(|x| !is_positive_integer(x));
        if both_pos || both_nonpos {
            return MonodromyClass::MultiplicativeAbelian;
        }
    }

    MonodromyClass::ReducibleNonAbelian
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(a: &str, b: &str, c: &str) -> MonodromyClass {
        classify_monodromy(&EquationParams::parse(a, b, c).unwrap())
    }

    /// Independent brute-force oracle: recount integers and positivity
    /// directly from the dichotomy statement.
    fn oracle(p: &EquationParams) -> MonodromyClass {
        use crate::rational::{is_integer, is_positive_integer};
        let quad = [
            p.a.clone(),
            p.b.clone(),
            &p.c - &p.a,
            &p.c - &p.b,
        ];
        let none_int = quad.iter().all(|x| !is_integer(x));
        if none_int {
            return MonodromyClass::Irreducible;
        }
        let abc_int = is_integer(&p.a) && is_integer(&p.b) && is_integer(&p.c);
        if abc_int {
            let n_pos = quad.iter().filter(|x| is_positive_integer(x)).count();
            if n_pos % 2 == 1 {
                return MonodromyClass::Trivial;
            }
            return MonodromyClass::AdditiveAbelian;
        }
        let seq = [
            p.a.clone(),
            rat(1) - &p.b,
            &p.c - &p.a,
            rat(1) + &p.b - &p.c,
        ];
        let ints: Vec<_> = seq.iter().filter(|x| is_integer(x)).collect();
        if ints.len() == 2 {
            let pos = ints.iter().filter(|x| is_positive_integer(x)).count();
            if pos == 0 || pos == 2 {
                return MonodromyClass::MultiplicativeAbelian;
            }
        }
        MonodromyClass::ReducibleNonAbelian
    }

    #[test]
    fn golden_examples() {
        // (a,b,c−a,c−b) = (−1,2,−1,−4): one positive entry, odd
        assert_eq!(cls("-1", "2", "-2"), MonodromyClass::Trivial);
        // (−1,−3,−7,−5): zero positives, even
        assert_eq!(cls("-1", "-3", "-8"), MonodromyClass::AdditiveAbelian);
        // (a,1−b,c−a,1+b−c) = (−1,8/3,−2,7/3): two integers, both non-positive
        assert_eq!(cls("-1", "-5/3", "-3"), MonodromyClass::MultiplicativeAbelian);
        assert_eq!(cls("1/3", "2/5", "1/7"), MonodromyClass::Irreducible);
        assert_eq!(cls("-2", "1/3", "1/5"), MonodromyClass::ReducibleNonAbelian);
        assert_eq!(cls("1/3", "-2", "2"), MonodromyClass::ReducibleNonAbelian);
        assert_eq!(cls("1/2", "1/2", "1"), MonodromyClass::Irreducible);
    }

    #[test]
    fn multiplicative_requires_matching_signs() {
        // (a,1−b,c−a,1+b−c) = (−2,−2,5/2,7/2): two integers, both non-positive
        assert_eq!(cls("-2", "3", "1/2"), MonodromyClass::MultiplicativeAbelian);
        // (3,−2,...): signs differ -> non-abelian
        assert_eq!(cls("3", "3", "1/2"), MonodromyClass::ReducibleNonAbelian);
    }

    #[test]
    fn agrees_with_counting_oracle_on_small_grid() {
        let vals = ["-3", "-1", "0", "2", "1/2", "-1/2", "1/3", "-5/3", "7/2"];
        for a in vals {
            for b in vals {
                for c in vals {
                    let p = EquationParams::parse(a, b, c).unwrap();
                    assert_eq!(classify_monodromy(&p), oracle(&p), "at {p}");
                }
            }
        }
    }
}
