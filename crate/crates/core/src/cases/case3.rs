//! Terminating solutions together with a logarithmic origin: normal form
//! E(a, −n, m+1), a non-integral.
//!
//! The terminating solution has six short expressions (n+1 terms) and, for
//! m ≥ 1, two longer ones (m+n+1 terms); Euler partners supply its four
//! non-terminating expressions. The subdominant solution at the origin is
//! the limit of the generic logarithmic solution as the second parameter
//! reaches −n; its ψ-series splits into a finite part and a factorially
//! damped tail that is easy to lose.

use super::*;
use crate::solution::{CoeffFactor, CoeffRule, LogArg, PsiTerm, PsiWeight, SumArg};

fn hpg(a: &Rational, b: &Rational, c: &Rational, arg: ArgKind) -> SeriesPart {
    SeriesPart::Hpg {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        arg,
    }
}

pub(super) fn build(dc: DegeneracyCase) -> Result<CaseSolutions> {
    expect_tag(&dc, CaseTag::Case3)?;
    let q = dc.normal_form.clone();
    let (n, m) = witness_nm(&dc);
    let a = q.a.clone();
    let one = Rational::one();
    let nr = rat(n);
    let mr = rat(m);
    let c = &mr + &one;

    // terminating solution: six short expressions from the generic chain
    let chain = chain6(n, &a, &c);
    let mut t_exprs: Vec<SolutionSpec> = chain
        .iter()
        .enumerate()
        .map(|(i, e)| e.to_spec(format!("T.{i}"), &q))
        .collect();

    // two longer terminating expressions (m+n+1 terms) when m ≥ 1
    if m >= 1 {
        let const_a = Scalar::factorial(m)
            .mul(Scalar::poch(&a, n))
            .div(Scalar::factorial(m + n));
        let const_ca = Scalar::factorial(m)
            .mul(Scalar::poch(&(&mr + &one - &a), n))
            .div(Scalar::factorial(m + n));
        t_exprs.push(SolutionSpec::new(
            "T.x1",
            q.clone(),
            vec![Term::new(
                const_a,
                vec![(Atom::NegZ, -mr.clone()), (Atom::OneMinusZ, &mr + &nr)],
                hpg(
                    &(-(&mr + &nr)),
                    &(&one - &a),
                    &(&one - &nr - &a),
                    ArgKind::InvOneMinusZ,
                ),
            )],
        ));
        t_exprs.push(SolutionSpec::new(
            "T.x2",
            q.clone(),
            vec![Term::new(
                const_ca,
                vec![(Atom::Z, -mr.clone())],
                hpg(
                    &(-(&mr + &nr)),
                    &(&a - &mr),
                    &(&a - &mr - &nr),
                    ArgKind::OneMinusZ,
                ),
            )],
        ));
    }

    // the four non-terminating Euler partners (arguments z, z/(z−1), 1/z,
    // 1−1/z)
    for (i, e) in chain.iter().enumerate() {
        if matches!(i, 0 | 1 | 2 | 4) {
            t_exprs.push(euler_partner(e).to_spec(format!("T.e{i}"), &q));
        }
    }

    // subdominant solution at the origin: limit forms of the logarithmic
    // solution
    let mut u2: Vec<SolutionSpec> = Vec::new();

    // pure series at z = 1
    u2.push(SolutionSpec::new(
        "U2.t1",
        q.clone(),
        vec![Term::new(
            Scalar::neg_one_pow(m + 1)
                .mul(Scalar::factorial(m))
                .mul(Scalar::factorial(n))
                .div(Scalar::poch(&(&one - &a), m + n + 1)),
            vec![(Atom::OneMinusZ, &mr + &nr + &one - &a)],
            hpg(
                &(&mr + &one - &a),
                &(&mr + &nr + &one),
                &(&mr + &nr + rat(2) - &a),
                ArgKind::OneMinusZ,
            ),
        )],
    ));

    // series at z = ∞ plus a terminating correction
    u2.push(SolutionSpec::new(
        "U2.tinf",
        q.clone(),
        vec![
            Term::new(
                Scalar::neg_one_pow(m + 1)
                    .mul(Scalar::factorial(m))
                    .mul(Scalar::factorial(n))
                    .div(Scalar::poch(&(&a - &mr), m + n + 1)),
                vec![(Atom::NegZ, -a.clone())],
                hpg(&a, &(&a - &mr), &(&a + &nr + &one), ArgKind::InvZ),
            ),
            Term::new(
                pi_exp_over_sin(&a, 1),
                vec![],
                hpg(&(-nr.clone()), &a, &c, ArgKind::Z),
            ),
        ],
    ));

    // log z form with the finite ψ-part and the factorial tail
    {
        let mut terms = vec![
            Term::new(Scalar::one(), vec![], hpg(&(-nr.clone()), &a, &c, ArgKind::Z))
                .with_log(LogArg::Z),
            Term::new(
                pi_cot(&a),
                vec![],
                hpg(&(-nr.clone()), &a, &c, ArgKind::Z),
            ),
        ];
        if m >= 1 {
            terms.push(Term::new(
                Scalar::neg_one_pow(m + 1)
                    .mul(Scalar::factorial(m))
                    .mul(Scalar::factorial(n))
                    .div(Scalar::poch(&(&one - &a), m)),
                vec![(Atom::Z, -mr.clone())],
                SeriesPart::Sum {
                    arg: SumArg::Z,
                    lo: 0,
                    hi: Some(m - 1),
                    rule: CoeffRule::new(vec![
                        CoeffFactor::Poch(&a - &mr),
                        CoeffFactor::FactDesc(m - 1),
                        CoeffFactor::InvFactDesc(m + n),
                        CoeffFactor::InvFactAsc(0),
                    ]),
                },
            ));
        }
        terms.push(Term::new(
            Scalar::factorial(m).mul(Scalar::factorial(n)),
            vec![],
            SeriesPart::Sum {
                arg: SumArg::NegZ,
                lo: 0,
                hi: Some(n),
                rule: CoeffRule::with_psi(
                    vec![
                        CoeffFactor::Poch(a.clone()),
                        CoeffFactor::InvFactAsc(m),
                        CoeffFactor::InvFactDesc(n),
                        CoeffFactor::InvFactAsc(0),
                    ],
                    PsiWeight {
                        terms: vec![
                            PsiTerm::new(1, a.clone(), 1),
                            PsiTerm::new(1, &nr + &one, -1),
                            PsiTerm::new(-1, &mr + &one, 1),
                            PsiTerm::new(-1, one.clone(), 1),
                        ],
                    },
                ),
            },
        ));
        // the tail that is easy to miss: k ≥ n+1
        terms.push(Term::new(
            Scalar::neg_one_pow(n)
                .mul(Scalar::factorial(n))
                .mul(Scalar::factorial(m)),
            vec![],
            SeriesPart::Sum {
                arg: SumArg::Z,
                lo: n + 1,
                hi: None,
                rule: CoeffRule::new(vec![
                    CoeffFactor::Poch(a.clone()),
                    CoeffFactor::FactAsc(-n - 1),
                    CoeffFactor::InvFactAsc(m),
                    CoeffFactor::InvFactAsc(0),
                ]),
            },
        ));
        u2.push(SolutionSpec::new("U2.log1", q.clone(), terms));
    }

    // log z with the Euler-transformed series parts
    {
        let s = &mr + &nr + &one - &a;
        let mut terms = vec![Term::new(
            Scalar::one(),
            vec![],
            hpg(&(-nr.clone()), &a, &c, ArgKind::Z),
        )
        .with_log(LogArg::Z)];
        if m >= 1 {
            terms.push(Term::new(
                Scalar::neg_one_pow(m + 1)
                    .mul(Scalar::factorial(m))
                    .div(Scalar::poch(&(&one - &a), m).mul(Scalar::factorial(m + n))),
                vec![(Atom::Z, -mr.clone()), (Atom::OneMinusZ, s.clone())],
                SeriesPart::Sum {
                    arg: SumArg::NegZ,
                    lo: 0,
                    hi: Some(m - 1),
                    rule: CoeffRule::new(vec![
                        CoeffFactor::Poch(&one - &a),
                        CoeffFactor::FactDesc(m - 1),
                        CoeffFactor::FactAsc(n),
                        CoeffFactor::InvFactAsc(0),
                    ]),
                },
            ));
        }
        terms.push(Term::new(
            Scalar::factorial(m).div(Scalar::factorial(m + n)),
            vec![(Atom::OneMinusZ, s)],
            SeriesPart::Sum {
                arg: SumArg::Z,
                lo: 0,
                hi: None,
                rule: CoeffRule::with_psi(
                    vec![
                        CoeffFactor::Poch(&mr + &one - &a),
                        CoeffFactor::FactAsc(m + n),
                        CoeffFactor::InvFactAsc(m),
                        CoeffFactor::InvFactAsc(0),
                    ],
                    PsiWeight {
                        terms: vec![
                            PsiTerm::new(1, &mr + &one - &a, 1),
                            PsiTerm::new(1, &mr + &nr + &one, 1),
                            PsiTerm::new(-1, &mr + &one, 1),
                            PsiTerm::new(-1, one.clone(), 1),
                        ],
                    },
                ),
            },
        ));
        u2.push(SolutionSpec::new("U2.log2", q.clone(), terms));
    }

    // log(z/(1−z)) forms
    {
        let mut terms = vec![
            Term::new(Scalar::one(), vec![], hpg(&(-nr.clone()), &a, &c, ArgKind::Z))
                .with_log(LogArg::ZOver1mZ),
            Term::new(pi_cot(&a), vec![], hpg(&(-nr.clone()), &a, &c, ArgKind::Z)),
        ];
        if m >= 1 {
            terms.push(Term::new(
                Scalar::neg_one_pow(m + 1)
                    .mul(Scalar::factorial(m))
                    .div(Scalar::poch(&(&one - &a), m).mul(Scalar::factorial(m + n))),
                vec![(Atom::Z, -mr.clone()), (Atom::OneMinusZ, &mr - &a)],
                SeriesPart::Sum {
                    arg: SumArg::ZOver1mZ,
                    lo: 0,
                    hi: Some(m - 1),
                    rule: CoeffRule::new(vec![
                        CoeffFactor::Poch(&a - &mr),
                        CoeffFactor::FactDesc(m - 1),
                        CoeffFactor::FactAsc(n),
                        CoeffFactor::InvFactAsc(0),
                    ]),
                },
            ));
        }
        terms.push(Term::new(
            Scalar::factorial(m).div(Scalar::factorial(m + n)),
            vec![(Atom::OneMinusZ, -a.clone())],
            SeriesPart::Sum {
                arg: SumArg::ZOverZm1,
                lo: 0,
                hi: None,
                rule: CoeffRule::with_psi(
                    vec![
                        CoeffFactor::Poch(a.clone()),
                        CoeffFactor::FactAsc(m + n),
                        CoeffFactor::InvFactAsc(m),
                        CoeffFactor::InvFactAsc(0),
                    ],
                    PsiWeight {
                        terms: vec![
                            PsiTerm::new(1, a.clone(), 1),
                            PsiTerm::new(1, &mr + &nr + &one, 1),
                            PsiTerm::new(-1, &mr + &one, 1),
                            PsiTerm::new(-1, one.clone(), 1),
                        ],
                    },
                ),
            },
        ));
        u2.push(SolutionSpec::new("U2.lp1", q.clone(), terms));
    }

    // log(z/(1−z)) with the roles of the upper parameters exchanged in the
    // limit
    {
        let mut terms = vec![Term::new(
            Scalar::one(),
            vec![],
            hpg(&(-nr.clone()), &a, &c, ArgKind::Z),
        )
        .with_log(LogArg::ZOver1mZ)];
        if m >= 1 {
            terms.push(Term::new(
                Scalar::neg_one_pow(m + 1)
                    .mul(Scalar::factorial(m))
                    .mul(Scalar::factorial(n))
                    .div(Scalar::poch(&(&one - &a), m)),
                vec![(Atom::Z, -mr.clone()), (Atom::OneMinusZ, &nr + &mr)],
                SeriesPart::Sum {
                    arg: SumArg::ZOverZm1,
                    lo: 0,
                    hi: Some(m - 1),
                    rule: CoeffRule::new(vec![
                        CoeffFactor::Poch(&one - &a),
                        CoeffFactor::FactDesc(m - 1),
                        CoeffFactor::InvFactDesc(m + n),
                        CoeffFactor::InvFactAsc(0),
                    ]),
                },
            ));
        }
        terms.push(Term::new(
            Scalar::factorial(m).mul(Scalar::factorial(n)),
            vec![(Atom::OneMinusZ, nr.clone())],
            SeriesPart::Sum {
                arg: SumArg::ZOver1mZ,
                lo: 0,
                hi: Some(n),
                rule: CoeffRule::with_psi(
                    vec![
                        CoeffFactor::Poch(&mr + &one - &a),
                        CoeffFactor::InvFactAsc(m),
                        CoeffFactor::InvFactDesc(n),
                        CoeffFactor::InvFactAsc(0),
                    ],
                    PsiWeight {
                        terms: vec![
                            PsiTerm::new(1, &mr + &one - &a, 1),
                            PsiTerm::new(1, &nr + &one, -1),
                            PsiTerm::new(-1, &mr + &one, 1),
                            PsiTerm::new(-1, one.clone(), 1),
                        ],
                    },
                ),
            },
        ));
        terms.push(Term::new(
            Scalar::factorial(m).mul(Scalar::factorial(n)),
            vec![(Atom::ZMinusOne, nr.clone())],
            SeriesPart::Sum {
                arg: SumArg::ZOverZm1,
                lo: n + 1,
                hi: None,
                rule: CoeffRule::new(vec![
                    CoeffFactor::Poch(&mr + &one - &a),
                    CoeffFactor::FactAsc(-n - 1),
                    CoeffFactor::InvFactAsc(m),
                    CoeffFactor::InvFactAsc(0),
                ]),
            },
        ));
        u2.push(SolutionSpec::new("U2.lp2", q.clone(), terms));
    }

    // purely non-terminating solutions: subdominant blocks at z = 1 and ∞
    let descs = crate::atlas::enumerate_24(&q);
    let mut groups = vec![
        SolutionGroup::new("T", t_exprs),
        SolutionGroup::new("U2", u2),
    ];
    for (gi, block) in [[12usize, 13, 14, 15], [16, 17, 18, 19]].iter().enumerate() {
        let exprs: Vec<SolutionSpec> = block
            .iter()
            .filter(|&&s| descs[s].is_defined())
            .map(|&s| {
                let mut spec = descs[s].to_solution_spec(&q);
                spec.label = format!("N{}.{}", gi + 1, descs[s].label);
                spec
            })
            .collect();
        groups.push(SolutionGroup::new(format!("N{}", gi + 1), exprs));
    }

    Ok(CaseSolutions {
        case: dc,
        basis: ("T.0".into(), "U2.log1".into()),
        groups,
        identities: vec![],
    })
}
