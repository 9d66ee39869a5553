//! Additive (unipotent) monodromy: normal form E(−ℓ, −n−ℓ, −n−m−2ℓ).
//!
//! The origin carries a power-series basis: one terminating solution with
//! up to ten terminating expressions (constants C₁, C₂), and a second power
//! solution proportional to the logarithmic function U₃, whose expressions
//! at z = 1 and z = ∞ carry log factors, finite ψ-weighted sums whose
//! weights collapse to rationals, and factorially damped tails. Swapping
//! m ↔ n corresponds to substituting z ↦ z/(z−1) and multiplying by
//! −(1−z)^ℓ.

use super::*;
use crate::solution::{Body, CoeffFactor, CoeffRule, LogArg, PsiTerm, PsiWeight, SumArg};

fn hpg(a: &Rational, b: &Rational, c: &Rational, arg: ArgKind) -> SeriesPart {
    SeriesPart::Hpg {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        arg,
    }
}

fn hpg_i(a: i64, b: i64, c: i64, arg: ArgKind) -> SeriesPart {
    hpg(&rat(a), &rat(b), &rat(c), arg)
}

/// 1/(ℓ!(m+ℓ)!(n+ℓ)!(m+n+ℓ)!)
fn c3(n: i64, m: i64, ell: i64) -> Scalar {
    Scalar::one().div(
        Scalar::factorial(ell)
            .mul(Scalar::factorial(m + ell))
            .mul(Scalar::factorial(n + ell))
            .mul(Scalar::factorial(m + n + ell)),
    )
}

fn psi4(t1: (i64, i8, i8), t2: (i64, i8, i8), t3: (i64, i8, i8), t4: (i64, i8, i8)) -> PsiWeight {
    PsiWeight {
        terms: [t1, t2, t3, t4]
            .iter()
            .map(|&(off, dir, sign)| PsiTerm::new(sign, rat(off), dir))
            .collect(),
    }
}

/// The terms of each logarithmic expression of U₃, parameterized by
/// (n, m, ℓ) so the m↔n swapped variants can reuse the construction.
fn u3_terms(kind: usize, n: i64, m: i64, ell: i64) -> Vec<Term> {
    let big_m = m + n + 2 * ell;
    let head_const = c3(n, m, ell).mul(Scalar::factorial(big_m));
    let log_arg = if kind <= 2 {
        LogArg::OneMinusZ
    } else {
        LogArg::OneMinusZOverZ
    };
    let head = Term::new(
        head_const,
        vec![],
        hpg_i(-ell, -n - ell, -big_m, ArgKind::Z),
    )
    .with_log(log_arg);

    let mut terms = vec![head];
    match kind {
        // everything terminating: series around z = 1
        1 => {
            terms.push(Term::new(
                Scalar::one(),
                vec![],
                SeriesPart::Sum {
                    arg: SumArg::OneMinusZ,
                    lo: 0,
                    hi: Some(ell),
                    rule: CoeffRule::with_psi(
                        vec![
                            CoeffFactor::InvFactAsc(m),
                            CoeffFactor::InvFactDesc(n + ell),
                            CoeffFactor::InvFactDesc(ell),
                            CoeffFactor::InvFactAsc(0),
                        ],
                        psi4(
                            (n + ell + 1, -1, 1),
                            (ell + 1, -1, 1),
                            (m + 1, 1, -1),
                            (1, 1, -1),
                        ),
                    ),
                },
            ));
            if m >= 1 {
                terms.push(Term::new(
                    Scalar::int(-1),
                    vec![(Atom::ZMinusOne, rat(-m))],
                    SeriesPart::Sum {
                        arg: SumArg::ZMinusOne,
                        lo: 0,
                        hi: Some(m - 1),
                        rule: CoeffRule::new(vec![
                            CoeffFactor::FactDesc(m - 1),
                            CoeffFactor::InvFactDesc(m + n + ell),
                            CoeffFactor::InvFactDesc(m + ell),
                            CoeffFactor::InvFactAsc(0),
                        ]),
                    },
                ));
            }
            if n >= 1 {
                terms.push(Term::new(
                    Scalar::neg_one_pow(ell),
                    vec![(Atom::ZMinusOne, rat(n + ell))],
                    SeriesPart::Sum {
                        arg: SumArg::InvZm1,
                        lo: 0,
                        hi: Some(n - 1),
                        rule: CoeffRule::new(vec![
                            CoeffFactor::FactDesc(n - 1),
                            CoeffFactor::InvFactDesc(m + n + ell),
                            CoeffFactor::InvFactDesc(n + ell),
                            CoeffFactor::InvFactAsc(0),
                        ]),
                    },
                ));
            }
        }
        // series around z = 1 with the power prefactor
        2 => {
            if m >= 1 {
                terms.push(Term::new(
                    c3(n, m, ell).neg(),
                    vec![
                        (Atom::Z, rat(big_m + 1)),
                        (Atom::ZMinusOne, rat(-m)),
                    ],
                    SeriesPart::Sum {
                        arg: SumArg::ZMinusOne,
                        lo: 0,
                        hi: Some(m - 1),
                        rule: CoeffRule::new(vec![
                            CoeffFactor::FactAsc(n + ell),
                            CoeffFactor::FactAsc(ell),
                            CoeffFactor::FactDesc(m - 1),
                            CoeffFactor::InvFactAsc(0),
                        ]),
                    },
                ));
            }
            terms.push(Term::new(
                c3(n, m, ell),
                vec![(Atom::Z, rat(big_m + 1))],
                SeriesPart::Sum {
                    arg: SumArg::OneMinusZ,
                    lo: 0,
                    hi: None,
                    rule: CoeffRule::with_psi(
                        vec![
                            CoeffFactor::FactAsc(m + ell),
                            CoeffFactor::FactAsc(m + n + ell),
                            CoeffFactor::InvFactAsc(m),
                            CoeffFactor::InvFactAsc(0),
                        ],
                        psi4(
                            (m + n + ell + 1, 1, 1),
                            (m + ell + 1, 1, 1),
                            (m + 1, 1, -1),
                            (1, 1, -1),
                        ),
                    ),
                },
            ));
        }
        // ratio argument (z−1)/z, finite ψ-part up to ℓ
        3 => {
            let c = Scalar::one().div(
                Scalar::factorial(n + ell).mul(Scalar::factorial(m + n + ell)),
            );
            if m >= 1 {
                terms.push(Term::new(
                    c.clone().neg(),
                    vec![(Atom::Z, rat(m + ell)), (Atom::ZMinusOne, rat(-m))],
                    SeriesPart::Sum {
                        arg: SumArg::Zm1OverZ,
                        lo: 0,
                        hi: Some(m - 1),
                        rule: CoeffRule::new(vec![
                            CoeffFactor::FactAsc(n + ell),
                            CoeffFactor::FactDesc(m - 1),
                            CoeffFactor::InvFactDesc(m + ell),
                            CoeffFactor::InvFactAsc(0),
                        ]),
                    },
                ));
            }
            // the ψ-weighted sum runs in powers of (1−z)/z; the printed
            // form with (z−1)/z flips odd terms and breaks the identity
            // (cross-checked against the derivation from the log form at
            // the swapped parameters)
            terms.push(Term::new(
                c.clone(),
                vec![(Atom::Z, rat(ell))],
                SeriesPart::Sum {
                    arg: SumArg::OneMinusZOverZ,
                    lo: 0,
                    hi: Some(ell),
                    rule: CoeffRule::with_psi(
                        vec![
                            CoeffFactor::FactAsc(m + n + ell),
                            CoeffFactor::InvFactAsc(m),
                            CoeffFactor::InvFactDesc(ell),
                            CoeffFactor::InvFactAsc(0),
                        ],
                        psi4(
                            (m + n + ell + 1, 1, 1),
                            (ell + 1, -1, 1),
                            (m + 1, 1, -1),
                            (1, 1, -1),
                        ),
                    ),
                },
            ));
            terms.push(Term::new(
                c,
                vec![(Atom::NegZ, rat(ell))],
                SeriesPart::Sum {
                    arg: SumArg::Zm1OverZ,
                    lo: ell + 1,
                    hi: None,
                    rule: CoeffRule::new(vec![
                        CoeffFactor::FactAsc(m + n + ell),
                        CoeffFactor::FactAsc(-ell - 1),
                        CoeffFactor::InvFactAsc(m),
                        CoeffFactor::InvFactAsc(0),
                    ]),
                },
            ));
        }
        // ratio argument with the finite ψ-part up to n+ℓ
        4 => {
            let c = Scalar::one().div(Scalar::factorial(ell).mul(Scalar::factorial(m + ell)));
            if m >= 1 {
                terms.push(Term::new(
                    c.clone().neg(),
                    vec![
                        (Atom::Z, rat(m + n + ell)),
                        (Atom::ZMinusOne, rat(-m)),
                    ],
                    SeriesPart::Sum {
                        arg: SumArg::Zm1OverZ,
                        lo: 0,
                        hi: Some(m - 1),
                        rule: CoeffRule::new(vec![
                            CoeffFactor::FactAsc(ell),
                            CoeffFactor::FactDesc(m - 1),
                            CoeffFactor::InvFactDesc(m + n + ell),
                            CoeffFactor::InvFactAsc(0),
                        ]),
                    },
                ));
            }
            terms.push(Term::new(
                c.clone(),
                vec![(Atom::Z, rat(n + ell))],
                SeriesPart::Sum {
                    arg: SumArg::OneMinusZOverZ,
                    lo: 0,
                    hi: Some(n + ell),
                    rule: CoeffRule::with_psi(
                        vec![
                            CoeffFactor::FactAsc(m + ell),
                            CoeffFactor::InvFactAsc(m),
                            CoeffFactor::InvFactDesc(n + ell),
                            CoeffFactor::InvFactAsc(0),
                        ],
                        psi4(
                            (m + ell + 1, 1, 1),
                            (n + ell + 1, -1, 1),
                            (m + 1, 1, -1),
                            (1, 1, -1),
                        ),
                    ),
                },
            ));
            terms.push(Term::new(
                c,
                vec![(Atom::NegZ, rat(n + ell))],
                SeriesPart::Sum {
                    arg: SumArg::Zm1OverZ,
                    lo: n + ell + 1,
                    hi: None,
                    rule: CoeffRule::new(vec![
                        CoeffFactor::FactAsc(m + ell),
                        CoeffFactor::FactAsc(-n - ell - 1),
                        CoeffFactor::InvFactAsc(m),
                        CoeffFactor::InvFactAsc(0),
                    ]),
                },
            ));
        }
        _ => unreachable!(),
    }
    terms
}

pub(super) fn build(dc: DegeneracyCase) -> Result<CaseSolutions> {
    expect_tag(&dc, CaseTag::Case6)?;
    let q = dc.normal_form.clone();
    let (n, m, ell) = witness_nml(&dc);
    let big_m = m + n + 2 * ell;

    // first power solution: the terminating chain with constants C₁, C₂
    let chain = chain6(ell, &rat(-n - ell), &rat(-big_m));
    let mut p1: Vec<SolutionSpec> = chain
        .iter()
        .enumerate()
        .map(|(i, e)| e.to_spec(format!("P1.{i}"), &q))
        .collect();
    let c1 = Scalar::gamma_ratio(&[rat(n + ell + 1), rat(n + m + ell + 1)], &[rat(n + 1), rat(big_m + 1)]);
    let c2 = Scalar::gamma_ratio(&[rat(m + ell + 1), rat(n + m + ell + 1)], &[rat(m + 1), rat(big_m + 1)]);
    type Extended = (usize, Scalar, Vec<(Atom, Rational)>, SeriesPart);
    let extended: [Extended; 4] = [
        (
            6,
            Scalar::one(),
            vec![(Atom::OneMinusZ, rat(-m))],
            hpg_i(-m - ell, -n - m - ell, -big_m, ArgKind::Z),
        ),
        (
            7,
            Scalar::one(),
            vec![(Atom::OneMinusZ, rat(n + ell))],
            hpg_i(-n - ell, -n - m - ell, -big_m, ArgKind::ZOverZm1),
        ),
        (
            8,
            c1.clone(),
            vec![(Atom::NegZ, rat(m + ell)), (Atom::OneMinusZ, rat(-m))],
            hpg_i(-m - ell, n + ell + 1, n + 1, ArgKind::InvZ),
        ),
        (
            9,
            c2.clone(),
            vec![(Atom::Z, rat(n + ell))],
            hpg_i(-n - ell, m + ell + 1, m + 1, ArgKind::OneMinusInvZ),
        ),
    ];
    for (i, cst, powers, series) in extended {
        p1.push(SolutionSpec::new(
            format!("P1.{i}"),
            q.clone(),
            vec![Term::new(cst, powers, series)],
        ));
    }
    // the two non-terminating expressions
    p1.push(euler_partner(&chain[5]).to_spec("P1.e5", &q));
    p1.push(euler_partner(&chain[3]).to_spec("P1.e3", &q));

    // second power solution at the origin
    let descs = crate::atlas::enumerate_24(&q);
    let p2: Vec<SolutionSpec> = [4usize, 5, 6, 7]
        .iter()
        .filter(|&&s| descs[s].is_defined())
        .map(|&s| {
            let mut spec = descs[s].to_solution_spec(&q);
            spec.label = format!("P2.{}", descs[s].label);
            spec
        })
        .collect();

    // the logarithmic function: definition plus the four log expressions
    // and their m↔n swapped variants
    let mut u3 = vec![SolutionSpec::new(
        "U3.def",
        q.clone(),
        vec![Term::new(
            Scalar::neg_one_pow(m + 1).div(Scalar::factorial(big_m + 1)),
            vec![(Atom::Z, rat(big_m + 1))],
            hpg_i(m + ell + 1, m + n + ell + 1, big_m + 2, ArgKind::Z),
        )],
    )];
    let labels = ["U3.log1", "U3.log2", "U3.lp1", "U3.lp2"];
    for kind in 1..=4usize {
        u3.push(SolutionSpec::new(
            labels[kind - 1],
            q.clone(),
            u3_terms(kind, n, m, ell),
        ));
    }
    for kind in 1..=4usize {
        // interchange m and n, substitute z ↦ z/(z−1), multiply by −(1−z)^ℓ
        u3.push(SolutionSpec {
            label: format!("{}.mn", labels[kind - 1]),
            params: q.clone(),
            body: Body::Composed {
                constant: Scalar::int(-1),
                powers: vec![(Atom::OneMinusZ, rat(ell))],
                arg: ArgKind::ZOverZm1,
                inner: u3_terms(kind, m, n, ell),
            },
        });
    }

    Ok(CaseSolutions {
        case: dc,
        basis: ("P1.0".into(), "U3.def".into()),
        groups: vec![
            SolutionGroup::new("P1", p1),
            SolutionGroup::new("P2", p2),
            SolutionGroup::new("U3", u3),
        ],
        identities: vec![],
    })
}
