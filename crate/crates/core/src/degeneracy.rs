//! Degeneracy-case classification and normal-form reduction.
//!
//! Every rational parameter triple falls into exactly one of seven classes:
//! generic, or one of six degenerate normal forms reachable by a
//! fractional-linear transformation. The decision procedure is exact; the
//! witness integers (n, m, ℓ) and the reducing transform are returned so
//! the caller can reconstruct the normal form.

use serde::{Deserialize, Serialize};

use crate::monodromy::{classify_monodromy, MonodromyClass};
use crate::params::{local_exponents, EquationParams, SingPoint};
use crate::rational::{
    as_i64, is_integer, is_integer_in, is_nonpositive_integer, rat,
};
use crate::transforms::{param_image, transform, FracLinTransform, GROUP_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Generic,
    /// E(−n, a, c): terminating solutions, non-abelian, no logarithmic points
    Case1,
    /// E(a, b, m+1): logarithmic points, no terminating solutions
    Case2,
    /// E(a, −n, m+1): terminating solutions and a logarithmic point
    Case3,
    /// E(−n, a−m, −n−m): multiplicative abelian monodromy
    Case4,
    /// E(−n, ℓ+1, −n−m): trivial monodromy, rational solutions
    Case5,
    /// E(−ℓ, −n−ℓ, −n−m−2ℓ): additive abelian monodromy
    Case6,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseTag::Generic => "generic",
            CaseTag::Case1 => "case 1",
            CaseTag::Case2 => "case 2",
            CaseTag::Case3 => "case 3",
            CaseTag::Case4 => "case 4",
            CaseTag::Case5 => "case 5",
            CaseTag::Case6 => "case 6",
        };
        write!(f, "{s}")
    }
}

/// Witness integers of a normal form. Only the fields meaningful for the
/// tag are set; `residual` holds the leftover non-integer parameter.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

/// Full classification result: tag, witnesses, normal form, and the group
/// element that maps the input onto the normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyCase {
    pub tag: CaseTag,
    pub witness: Witness,
    pub normal_form: EquationParams,
    pub reduction: FracLinTransform,
}

/// Logarithmic-point test.
///
/// A singular point with non-integer exponent difference is never
/// logarithmic, one with difference zero always is. For a nonzero integer
/// difference the point is mapped to the origin with lower parameter
/// c′ = 1+m (m ≥ 1); the Frobenius recurrence for the subdominant exponent
/// clears its resonance iff one of the mapped upper parameters lies in
/// {1, …, m}, in which case a terminating rescue kills the logarithm.
pub fn is_logarithmic_point(p: &EquationParams, point: SingPoint) -> bool {
    let e = local_exponents(p);
    let d = match point {
        SingPoint::Zero => e.e0,
        SingPoint::One => e.e1,
        SingPoint::Infinity => e.einf,
    };
    let d_int = match as_i64(&d) {
        Some(v) => v,
        None => return false,
    };
    if d_int == 0 {
        return true;
    }
    let m = d_int.abs();
    // local parameters (a′, b′) of the image equation with c′ = 1 + m
    let one = rat(1);
    let (ap, bp) = match point {
        SingPoint::Zero => {
            if d_int < 0 {
                // c = 1+m already
                (p.a.clone(), p.b.clone())
            } else {
                // swap local exponents: E(1+a−c, 1+b−c, 2−c)
                (&one + &p.a - &p.c, &one + &p.b - &p.c)
            }
        }
        SingPoint::One => {
            if d_int < 0 {
                // c′ = 1+a+b−c = 1+m
                (p.a.clone(), p.b.clone())
            } else {
                // c′ = 1+c−a−b
                (&p.c - &p.a, &p.c - &p.b)
            }
        }
        SingPoint::Infinity => {
            if d_int < 0 {
                // e∞ = b−a = −m: c′ = 1+a−b
                (p.a.clone(), &one + &p.a - &p.c)
            } else {
                // c′ = 1+b−a
                (p.b.clone(), &one + &p.b - &p.c)
            }
        }
    };
    !(is_integer_in(&ap, 1, m) || is_integer_in(&bp, 1, m))
}

/// Does the image triple satisfy the normal-form predicate of `tag`?
fn normal_form_predicate(tag: CaseTag, q: &EquationParams) -> bool {
    let ca = &q.c - &q.a;
    let cb = &q.c - &q.b;
    match tag {
        CaseTag::Generic => unreachable!("generic has no normal form search"),
        CaseTag::Case1 => {
            is_nonpositive_integer(&q.a)
                && !is_integer(&q.b)
                && !is_integer(&q.c)
                && !is_integer(&cb)
        }
        CaseTag::Case2 => {
            crate::rational::is_positive_integer(&q.c) && !is_integer(&q.a) && !is_integer(&q.b)
        }
        CaseTag::Case3 => {
            crate::rational::is_positive_integer(&q.c)
                && is_nonpositive_integer(&q.b)
                && !is_integer(&q.a)
        }
        CaseTag::Case4 => {
            is_nonpositive_integer(&q.a) && is_nonpositive_integer(&(&q.c - &q.a)) && !is_integer(&q.b)
        }
        CaseTag::Case5 => {
            is_nonpositive_integer(&q.a)
                && crate::rational::is_positive_integer(&q.b)
                && is_nonpositive_integer(&(&q.c - &q.a))
        }
        CaseTag::Case6 => {
            is_nonpositive_integer(&q.a)
                && is_integer(&q.b)
                && is_integer(&q.c)
                && q.b <= q.a
                && ca <= q.b
                && is_nonpositive_integer(&cb)
        }
    }
}

fn extract_witness(tag: CaseTag, q: &EquationParams) -> Witness {
    let fmt = crate::rational::format_rational;
    match tag {
        CaseTag::Generic => Witness::default(),
        CaseTag::Case1 => Witness {
            n: Some(-as_i64(&q.a).unwrap()),
            residual: Some(format!("a={}, c={}", fmt(&q.b), fmt(&q.c))),
            ..Default::default()
        },
        CaseTag::Case2 => Witness {
            m: Some(as_i64(&q.c).unwrap() - 1),
            residual: Some(format!("a={}, b={}", fmt(&q.a), fmt(&q.b))),
            ..Default::default()
        },
        CaseTag::Case3 => Witness {
            n: Some(-as_i64(&q.b).unwrap()),
            m: Some(as_i64(&q.c).unwrap() - 1),
            residual: Some(format!("a={}", fmt(&q.a))),
            ..Default::default()
        },
        CaseTag::Case4 => {
            let n = -as_i64(&q.a).unwrap();
            let m = as_i64(&(&q.a - &q.c)).unwrap();
            Witness {
                n: Some(n),
                m: Some(m),
                residual: Some(format!("a={}", fmt(&(&q.b + rat(m))))),
                ..Default::default()
            }
        }
        CaseTag::Case5 => {
            let n = -as_i64(&q.a).unwrap();
            let ell = as_i64(&q.b).unwrap() - 1;
            let m = as_i64(&(&q.a - &q.c)).unwrap();
            Witness {
                n: Some(n),
                m: Some(m),
                ell: Some(ell),
                ..Default::default()
            }
        }
        CaseTag::Case6 => {
            let ell = -as_i64(&q.a).unwrap();
            let n = as_i64(&(&q.a - &q.b)).unwrap();
            let m = as_i64(&(&q.a + &q.b - &q.c)).unwrap();
            Witness {
                n: Some(n),
                m: Some(m),
                ell: Some(ell),
                ..Default::default()
            }
        }
    }
}

/// Classify the degeneracy case of `p`, with witnesses and the reducing
/// transform. The reduction is the lexicographically smallest group element
/// (slot-major, unswapped first) whose image satisfies the normal-form
/// predicate; when the input is already in normal form this is the
/// identity.
pub fn degeneracy_case(p: &EquationParams) -> DegeneracyCase {
    let tag = match classify_monodromy(p) {
        MonodromyClass::Trivial => CaseTag::Case5,
        MonodromyClass::AdditiveAbelian => CaseTag::Case6,
        MonodromyClass::MultiplicativeAbelian => CaseTag::Case4,
        MonodromyClass::ReducibleNonAbelian => {
            let has_log = SingPoint::ALL
                .iter()
                .any(|&pt| is_logarithmic_point(p, pt));
            if has_log {
                CaseTag::Case3
            } else {
                CaseTag::Case1
            }
        }
        MonodromyClass::Irreducible => {
            let e = local_exponents(p);
            if is_integer(&e.e0) || is_integer(&e.e1) || is_integer(&e.einf) {
                CaseTag::Case2
            } else {
                CaseTag::Generic
            }
        }
    };

    if tag == CaseTag::Generic {
        return DegeneracyCase {
            tag,
            witness: Witness::default(),
            normal_form: p.clone(),
            reduction: transform(0, false, p),
        };
    }

    for index in 0..GROUP_ORDER {
        let q = param_image(index, p);
        if normal_form_predicate(tag, &q) {
            let witness = extract_witness(tag, &q);
            let mut red = transform(index / 2, index % 2 == 1, p);
            red.target_params = q.clone();
            return DegeneracyCase {
                tag,
                witness,
                normal_form: q,
                reduction: red,
            };
        }
    }
    unreachable!("no reduction found for {p} with tag {tag}: classification bug");
}
