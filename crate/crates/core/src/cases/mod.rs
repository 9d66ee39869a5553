//! Explicit solution bases for every degeneracy case.
//!
//! Each builder classifies its input, reduces to the normal form, and
//! constructs the full set of expressions for every solution: terminating
//! chains with their exact constants, Euler partners, and the logarithmic
//! solutions with their finite sums and ψ-weighted series. Cross-solution
//! connection relations are returned as identity definitions for the
//! verification harness.

use num_traits::One;

use crate::degeneracy::{degeneracy_case, CaseTag, DegeneracyCase};
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::rational::{is_nonpositive_integer, rat, Rational};
use crate::scalar::Scalar;
use crate::solution::{SeriesPart, SolutionSpec, Term};
use crate::transforms::{ArgKind, Atom};

mod case1;
mod case2;
mod case3;
mod case4;
mod case5;
mod case6;

pub use case2::InfinityLogSolution;

/// All expressions of one solution (equal as functions within verification
/// tolerance).
#[derive(Debug, Clone)]
pub struct SolutionGroup {
    pub label: String,
    pub expressions: Vec<SolutionSpec>,
}

impl SolutionGroup {
    pub fn new(label: impl Into<String>, expressions: Vec<SolutionSpec>) -> Self {
        Self {
            label: label.into(),
            expressions,
        }
    }
}

/// A cross-solution identity: Σ lhs = Σ rhs, to the given relative
/// tolerance.
#[derive(Debug, Clone)]
pub struct IdentityDef {
    pub id: String,
    pub lhs: Vec<SolutionSpec>,
    pub rhs: Vec<SolutionSpec>,
    pub tol: f64,
}

/// Solutions and identity catalog of one equation instance. Expressions
/// solve the normal form carried in `case`.
#[derive(Debug, Clone)]
pub struct CaseSolutions {
    pub case: DegeneracyCase,
    pub groups: Vec<SolutionGroup>,
    /// labels of the designated Wronskian basis pair
    pub basis: (String, String),
    pub identities: Vec<IdentityDef>,
}

impl CaseSolutions {
    pub fn find(&self, label: &str) -> Option<&SolutionSpec> {
        self.groups
            .iter()
            .flat_map(|g| g.expressions.iter())
            .find(|e| e.label == label)
    }

    pub fn all_expressions(&self) -> impl Iterator<Item = &SolutionSpec> {
        self.groups.iter().flat_map(|g| g.expressions.iter())
    }
}

/// Build the solution catalog for any parameter triple.
pub fn build(p: &EquationParams) -> Result<CaseSolutions> {
    let dc = degeneracy_case(p);
    match dc.tag {
        CaseTag::Generic => generic(dc),
        CaseTag::Case1 => case1::build(dc),
        CaseTag::Case2 => case2::build(dc),
        CaseTag::Case3 => case3::build(dc),
        CaseTag::Case4 => case4::build(dc),
        CaseTag::Case5 => case5::build(dc),
        CaseTag::Case6 => case6::build(dc),
    }
}

pub(crate) fn expect_tag(dc: &DegeneracyCase, want: CaseTag) -> Result<()> {
    if dc.tag != want {
        return Err(Error::WrongCase {
            expected: format!("{want}"),
            got: format!("{}", dc.tag),
        });
    }
    Ok(())
}

/// One link of a terminating chain: constant · ∏atom^e · F(A,B;C;φ).
#[derive(Debug, Clone)]
pub(crate) struct ChainExpr {
    pub constant: Scalar,
    pub powers: Vec<(Atom, Rational)>,
    pub f: (Rational, Rational, Rational),
    pub arg: ArgKind,
}

impl ChainExpr {
    pub fn to_term(&self) -> Term {
        Term::new(
            self.constant.clone(),
            self.powers.clone(),
            SeriesPart::Hpg {
                a: self.f.0.clone(),
                b: self.f.1.clone(),
                c: self.f.2.clone(),
                arg: self.arg,
            },
        )
    }

    pub fn to_spec(&self, label: impl Into<String>, p: &EquationParams) -> SolutionSpec {
        SolutionSpec::new(label, p.clone(), vec![self.to_term()])
    }
}

/// The six terminating expressions of F(−n₀, a₀; c₀; z), one local series
/// per exponent slot of each singular point. Signs of the prefactor bases
/// are chosen so all constants are exact rising-factorial ratios.
pub(crate) fn chain6(n0: i64, a0: &Rational, c0: &Rational) -> Vec<ChainExpr> {
    assert!(n0 >= 0);
    let n = n0;
    let nr = rat(n);
    let one = Rational::one();
    let minus_n = -nr.clone();
    let c_inner_inf = &one - &nr - c0; // 1 − n − c₀
    let ratio_a = Scalar::poch(a0, n).div(Scalar::poch(c0, n));
    let ratio_ca = Scalar::poch(&(c0 - a0), n).div(Scalar::poch(c0, n));
    vec![
        ChainExpr {
            constant: Scalar::one(),
            powers: vec![],
            f: (minus_n.clone(), a0.clone(), c0.clone()),
            arg: ArgKind::Z,
        },
        ChainExpr {
            constant: Scalar::one(),
            powers: vec![(Atom::OneMinusZ, nr.clone())],
            f: (minus_n.clone(), c0 - a0, c0.clone()),
            arg: ArgKind::ZOverZm1,
        },
        ChainExpr {
            constant: ratio_a.clone(),
            powers: vec![(Atom::NegZ, nr.clone())],
            f: (minus_n.clone(), c_inner_inf.clone(), &one - &nr - a0),
            arg: ArgKind::InvZ,
        },
        ChainExpr {
            constant: ratio_a,
            powers: vec![(Atom::OneMinusZ, nr.clone())],
            f: (minus_n.clone(), c0 - a0, &one - &nr - a0),
            arg: ArgKind::InvOneMinusZ,
        },
        ChainExpr {
            constant: ratio_ca.clone(),
            powers: vec![(Atom::Z, nr.clone())],
            f: (minus_n.clone(), c_inner_inf, &one - &nr + a0 - c0),
            arg: ArgKind::OneMinusInvZ,
        },
        ChainExpr {
            constant: ratio_ca,
            powers: vec![],
            f: (minus_n, a0.clone(), &one - &nr + a0 - c0),
            arg: ArgKind::OneMinusZ,
        },
    ]
}

/// (1 − φ(z))^s expressed in prefactor atoms, valid with principal branches
/// on the upper half-plane.
pub(crate) fn one_minus_arg_power(arg: ArgKind, s: &Rational) -> Vec<(Atom, Rational)> {
    match arg {
        ArgKind::Z => vec![(Atom::OneMinusZ, s.clone())],
        // 1 − z/(z−1) = 1/(1−z)
        ArgKind::ZOverZm1 => vec![(Atom::OneMinusZ, -s.clone())],
        // 1 − (1−z) = z
        ArgKind::OneMinusZ => vec![(Atom::Z, s.clone())],
        // 1 − (1−1/z) = 1/z
        ArgKind::OneMinusInvZ => vec![(Atom::Z, -s.clone())],
        // 1 − 1/z = (1−z)/(−z)
        ArgKind::InvZ => vec![(Atom::OneMinusZ, s.clone()), (Atom::NegZ, -s.clone())],
        // 1 − 1/(1−z) = (−z)/(1−z)
        ArgKind::InvOneMinusZ => vec![(Atom::NegZ, s.clone()), (Atom::OneMinusZ, -s.clone())],
    }
}

/// The Euler transform of a chain expression: F(A,B;C;φ) ↦
/// (1−φ)^{C−A−B} F(C−A, C−B; C; φ), folded into the prefactor.
pub(crate) fn euler_partner(e: &ChainExpr) -> ChainExpr {
    let (a, b, c) = &e.f;
    let s = c - a - b;
    let mut powers = e.powers.clone();
    powers.extend(one_minus_arg_power(e.arg, &s));
    ChainExpr {
        constant: e.constant.clone(),
        powers,
        f: (c - a, c - b, c.clone()),
        arg: e.arg,
    }
}

/// Does a gamma-ratio constant avoid poles, i.e. no argument in ℤ≤0?
pub(crate) fn gammas_regular(args: &[&Rational]) -> bool {
    args.iter().all(|x| !is_nonpositive_integer(x))
}

/// π e^{iπx}/sin(πx) as a scalar (x ∉ ℤ).
pub(crate) fn pi_exp_over_sin(x: &Rational, sign: i64) -> Scalar {
    let arg = if sign >= 0 { x.clone() } else { -x.clone() };
    Scalar::Pi
        .mul(Scalar::ExpIPi(arg))
        .div(Scalar::SinPi(x.clone()))
}

/// π/tan(πx) = π cos(πx)/sin(πx) as a scalar (x ∉ ℤ).
pub(crate) fn pi_cot(x: &Rational) -> Scalar {
    Scalar::Pi
        .mul(Scalar::CosPi(x.clone()))
        .div(Scalar::SinPi(x.clone()))
}

/// −π sin(π(x+y))/(sin πx sin πy) as a scalar.
pub(crate) fn minus_pi_sin_ratio(x: &Rational, y: &Rational) -> Scalar {
    Scalar::Pi
        .mul(Scalar::SinPi(x + y))
        .div(Scalar::SinPi(x.clone()).mul(Scalar::SinPi(y.clone())))
        .neg()
}

/// Witness accessors with the invariants of the normal forms.
pub(crate) fn witness_nm(dc: &DegeneracyCase) -> (i64, i64) {
    (dc.witness.n.unwrap_or(0), dc.witness.m.unwrap_or(0))
}

pub(crate) fn witness_nml(dc: &DegeneracyCase) -> (i64, i64, i64) {
    (
        dc.witness.n.unwrap_or(0),
        dc.witness.m.unwrap_or(0),
        dc.witness.ell.unwrap_or(0),
    )
}

/// Generic (non-degenerate) catalog: the six blocks of four descriptor
/// expressions, related by Euler and Pfaff transformations.
fn generic(dc: DegeneracyCase) -> Result<CaseSolutions> {
    let q = dc.normal_form.clone();
    let descs = crate::atlas::enumerate_24(&q);
    let mut groups = Vec::new();
    for (gid, block) in [
        [0usize, 1, 2, 3],
        [4, 5, 6, 7],
        [8, 9, 10, 11],
        [12, 13, 14, 15],
        [16, 17, 18, 19],
        [20, 21, 22, 23],
    ]
    .iter()
    .enumerate()
    {
        let exprs: Vec<SolutionSpec> = block
            .iter()
            .map(|&s| {
                let mut spec = descs[s].to_solution_spec(&q);
                spec.label = format!("O{}.{}", gid + 1, descs[s].label);
                spec
            })
            .collect();
        groups.push(SolutionGroup::new(format!("O{}", gid + 1), exprs));
    }

    // ψ-reflection of a series: Σ c_k ψ(b+k) z^k = Σ c_k ψ(1−b−k) z^k −
    // (π/tan πb) F(a,b;c;z), with c_k the Gauss coefficients
    let (a, b, c) = (q.a.clone(), q.b.clone(), q.c.clone());
    let gauss_factors = |aa: &Rational, bb: &Rational, cc: &Rational| {
        vec![
            crate::solution::CoeffFactor::Poch(aa.clone()),
            crate::solution::CoeffFactor::Poch(bb.clone()),
            crate::solution::CoeffFactor::InvPoch(cc.clone()),
            crate::solution::CoeffFactor::InvFactAsc(0),
        ]
    };
    use crate::solution::{CoeffRule, PsiTerm, PsiWeight, SumArg};
    let lhs = SolutionSpec::new(
        "psirefl.lhs",
        q.clone(),
        vec![Term::new(
            Scalar::one(),
            vec![],
            SeriesPart::Sum {
                arg: SumArg::Z,
                lo: 0,
                hi: None,
                rule: CoeffRule::with_psi(
                    gauss_factors(&a, &b, &c),
                    PsiWeight {
                        terms: vec![PsiTerm::new(1, b.clone(), 1)],
                    },
                ),
            },
        )],
    );
    let rhs = SolutionSpec::new(
        "psirefl.rhs",
        q.clone(),
        vec![
            Term::new(
                Scalar::one(),
                vec![],
                SeriesPart::Sum {
                    arg: SumArg::Z,
                    lo: 0,
                    hi: None,
                    rule: CoeffRule::with_psi(
                        gauss_factors(&a, &b, &c),
                        PsiWeight {
                            terms: vec![PsiTerm::new(1, Rational::one() - &b, -1)],
                        },
                    ),
                },
            ),
            Term::new(
                pi_cot(&b).neg(),
                vec![],
                SeriesPart::Hpg {
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    arg: ArgKind::Z,
                },
            ),
        ],
    );
    let identities = vec![IdentityDef {
        id: "psi-reflection-series".into(),
        lhs: vec![lhs],
        rhs: vec![rhs],
        tol: 1e-10,
    }];

    let basis = (
        groups[0].expressions[0].label.clone(),
        groups[1].expressions[0].label.clone(),
    );
    Ok(CaseSolutions {
        case: dc,
        basis,
        groups,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratq;
    use crate::series::EvalOptions;
    use num_complex::Complex64;

    #[test]
    fn chain_constants_match_hand_values() {
        // (a)_n/(c)_n for n=2, a=1/3, c=1/5 is 50/27
        let ch = chain6(2, &ratq(1, 3), &ratq(1, 5));
        assert_eq!(ch[2].constant.exact(), Some(ratq(50, 27)));
        // degree-0 chain: every constant is 1
        let ch0 = chain6(0, &ratq(1, 3), &ratq(1, 5));
        for e in &ch0 {
            assert_eq!(e.constant.exact(), Some(rat(1)));
        }
    }

    #[test]
    fn chain_members_agree_numerically() {
        let q = EquationParams::parse("-2", "1/3", "1/5").unwrap();
        let opts = EvalOptions::default();
        let ch = chain6(2, &ratq(1, 3), &ratq(1, 5));
        let z = Complex64::new(0.3, 0.2);
        let base = ch[0].to_spec("x", &q).eval(z, &opts).unwrap();
        for (i, e) in ch.iter().enumerate().skip(1) {
            let v = e.to_spec("x", &q).eval(z, &opts).unwrap();
            assert!(
                (v - base).norm() < 1e-12 * base.norm(),
                "link {i} deviates: {v} vs {base}"
            );
        }
    }

    #[test]
    fn euler_partner_preserves_value() {
        let q = EquationParams::parse("-2", "1/3", "1/5").unwrap();
        let opts = EvalOptions::default();
        let ch = chain6(2, &ratq(1, 3), &ratq(1, 5));
        let z = Complex64::new(0.25, 0.3);
        for e in &ch {
            let ep = euler_partner(e);
            let spec = e.to_spec("x", &q);
            let spec_p = ep.to_spec("y", &q);
            if !spec_p.domain_ok(z) || !spec.domain_ok(z) {
                continue;
            }
            let v = spec.eval(z, &opts).unwrap();
            let w = spec_p.eval(z, &opts).unwrap();
            assert!((v - w).norm() < 1e-11 * v.norm().max(1.0), "{} vs {}", v, w);
        }
    }

    #[test]
    fn generic_catalog_builds() {
        let p = EquationParams::parse("1/3", "2/5", "1/7").unwrap();
        let cs = build(&p).unwrap();
        assert_eq!(cs.groups.len(), 6);
        assert!(cs.groups.iter().all(|g| g.expressions.len() == 4));
        assert_eq!(cs.identities.len(), 1);
    }
}
