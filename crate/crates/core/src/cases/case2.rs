//! Logarithmic solutions without terminating companions: normal form
//! E(a, b, m+1), a, b non-integral.
//!
//! The subdominant solution at the origin is assembled in all its guises:
//! connection forms through the bases at z = 1 and z = ∞, the log z series
//! with its finite head and ψ-weighted tail, and the Pfaff-transformed log
//! forms. When the exponent difference at infinity is an integer, that
//! point is logarithmic as well and carries its own log series, identified
//! with a constant multiple of the same solution.

use super::*;
use crate::rational::as_i64;
use crate::solution::{CoeffFactor, CoeffRule, LogArg, PsiTerm, PsiWeight, SumArg};

/// Is Γ(x)•/Γ(y)• constant usable: no numerator pole, no denominator pole
/// (a denominator pole collapses the whole term to zero).
fn gamma_const_ok(num: &[&Rational], den: &[&Rational]) -> bool {
    gammas_regular(num) && gammas_regular(den)
}

fn hpg(a: &Rational, b: &Rational, c: &Rational, arg: ArgKind) -> SeriesPart {
    SeriesPart::Hpg {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        arg,
    }
}

fn gauss_psi_rule(
    upper1: &Rational,
    upper2: &Rational,
    lower: &Rational,
    psi: [(&Rational, i8); 4],
) -> CoeffRule {
    CoeffRule::with_psi(
        vec![
            CoeffFactor::Poch(upper1.clone()),
            CoeffFactor::Poch(upper2.clone()),
            CoeffFactor::InvPoch(lower.clone()),
            CoeffFactor::InvFactAsc(0),
        ],
        PsiWeight {
            terms: psi
                .iter()
                .map(|(off, sign)| PsiTerm::new(*sign, (*off).clone(), 1))
                .collect(),
        },
    )
}

/// The finite head Σ_{k=0}^{m−1} (x)_k (y)_k/((1−m)_k k!) w^k.
fn finite_head_rule(x: &Rational, y: &Rational, m: i64) -> CoeffRule {
    CoeffRule::new(vec![
        CoeffFactor::Poch(x.clone()),
        CoeffFactor::Poch(y.clone()),
        CoeffFactor::InvPoch(rat(1 - m)),
        CoeffFactor::InvFactAsc(0),
    ])
}

/// (−1)^{m+1} m!(m−1)!/((1−a)_m(1−b)_m)
fn head_constant(a: &Rational, b: &Rational, m: i64) -> Scalar {
    Scalar::neg_one_pow(m + 1)
        .mul(Scalar::factorial(m))
        .mul(Scalar::factorial(m - 1))
        .div(Scalar::poch(&(Rational::one() - a), m).mul(Scalar::poch(&(Rational::one() - b), m)))
}

/// All expressions of the subdominant solution at the origin for
/// E(a, b, m+1), in a fixed order. Expressions whose constants degenerate
/// for the given parameters (gamma poles, undefined series) are omitted.
fn u1_expressions(q: &EquationParams, m: i64) -> Vec<SolutionSpec> {
    let one = Rational::one();
    let a = q.a.clone();
    let b = q.b.clone();
    let mr = rat(m);
    let mut out = Vec::new();

    let cdef_sign = Scalar::neg_one_pow(m + 1).mul(Scalar::factorial(m));

    // connection form at z = 1
    {
        let cgam = &a + &b - &mr;
        if gamma_const_ok(&[&(&a - &mr), &(&b - &mr)], &[&cgam]) && !is_nonpositive_integer(&cgam)
        {
            out.push(SolutionSpec::new(
                "U1.c1",
                q.clone(),
                vec![Term::new(
                    cdef_sign
                        .clone()
                        .mul(Scalar::gamma_ratio(
                            &[&a - &mr, &b - &mr],
                            std::slice::from_ref(&cgam),
                        )),
                    vec![],
                    hpg(&a, &b, &cgam, ArgKind::OneMinusZ),
                )],
            ));
        }
    }

    // Euler partner of the connection form, with the sine-ratio correction
    {
        let cgam = &mr + rat(2) - &a - &b;
        if gamma_const_ok(&[&(&one - &a), &(&one - &b)], &[&cgam]) {
            out.push(SolutionSpec::new(
                "U1.c1e",
                q.clone(),
                vec![
                    Term::new(
                        cdef_sign.clone().mul(Scalar::gamma_ratio(
                            &[&one - &a, &one - &b],
                            std::slice::from_ref(&cgam),
                        )),
                        vec![(Atom::OneMinusZ, &mr + &one - &a - &b)],
                        hpg(
                            &(&mr + &one - &a),
                            &(&mr + &one - &b),
                            &cgam,
                            ArgKind::OneMinusZ,
                        ),
                    ),
                    Term::new(
                        minus_pi_sin_ratio(&a, &b),
                        vec![],
                        hpg(&a, &b, &(&mr + &one), ArgKind::Z),
                    ),
                ],
            ));
        }
    }

    // connection forms at z = ∞ (and the swapped variant)
    for (label, x, y) in [("U1.cinf", &a, &b), ("U1.cinf.ba", &b, &a)] {
        let cgam = &one + x - y;
        if gamma_const_ok(&[&(x - &mr), &(&one - y)], &[&cgam]) {
            out.push(SolutionSpec::new(
                label,
                q.clone(),
                vec![
                    Term::new(
                        cdef_sign.clone().mul(Scalar::gamma_ratio(
                            &[x - &mr, &one - y],
                            std::slice::from_ref(&cgam),
                        )),
                        vec![(Atom::NegZ, -x.clone())],
                        hpg(x, &(x - &mr), &cgam, ArgKind::InvZ),
                    ),
                    Term::new(
                        pi_exp_over_sin(y, -1).neg(),
                        vec![],
                        hpg(&a, &b, &(&mr + &one), ArgKind::Z),
                    ),
                ],
            ));
        }
    }

    // log z series
    {
        let mut terms = vec![Term::new(
            Scalar::one(),
            vec![],
            hpg(&a, &b, &(&mr + &one), ArgKind::Z),
        )
        .with_log(LogArg::Z)];
        if m >= 1 {
            terms.push(Term::new(
                head_constant(&a, &b, m),
                vec![(Atom::Z, -mr.clone())],
                SeriesPart::Sum {
                    arg: SumArg::Z,
                    lo: 0,
                    hi: Some(m - 1),
                    rule: finite_head_rule(&(&a - &mr), &(&b - &mr), m),
                },
            ));
        }
        terms.push(Term::new(
            Scalar::one(),
            vec![],
            SeriesPart::Sum {
                arg: SumArg::Z,
                lo: 0,
                hi: None,
                rule: gauss_psi_rule(
                    &a,
                    &b,
                    &(&mr + &one),
                    [(&a, 1), (&b, 1), (&(&mr + &one), -1), (&one, -1)],
                ),
            },
        ));
        out.push(SolutionSpec::new("U1.log1", q.clone(), terms));
    }

    // log z with the Euler-transformed series parts
    {
        let s = &mr + &one - &a - &b;
        let mut terms = vec![
            Term::new(
                Scalar::one(),
                vec![],
                hpg(&a, &b, &(&mr + &one), ArgKind::Z),
            )
            .with_log(LogArg::Z),
            Term::new(
                minus_pi_sin_ratio(&a, &b),
                vec![],
                hpg(&a, &b, &(&mr + &one), ArgKind::Z),
            ),
        ];
        if m >= 1 {
            terms.push(Term::new(
                head_constant(&a, &b, m),
                vec![(Atom::Z, -mr.clone()), (Atom::OneMinusZ, s.clone())],
                SeriesPart::Sum {
                    arg: SumArg::Z,
                    lo: 0,
                    hi: Some(m - 1),
                    rule: finite_head_rule(&(&one - &a), &(&one - &b), m),
                },
            ));
        }
        terms.push(Term::new(
            Scalar::one(),
            vec![(Atom::OneMinusZ, s.clone())],
            SeriesPart::Sum {
                arg: SumArg::Z,
                lo: 0,
                hi: None,
                rule: gauss_psi_rule(
                    &(&mr + &one - &a),
                    &(&mr + &one - &b),
                    &(&mr + &one),
                    [
                        (&(&mr + &one - &a), 1),
                        (&(&mr + &one - &b), 1),
                        (&(&mr + &one), -1),
                        (&one, -1),
                    ],
                ),
            },
        ));
        out.push(SolutionSpec::new("U1.log2", q.clone(), terms));
    }

    // log(z/(1−z)) forms (and the swapped variant)
    for (label, x, y) in [("U1.lp1", &a, &b), ("U1.lp1.ba", &b, &a)] {
        let mut terms = vec![
            Term::new(
                Scalar::one(),
                vec![],
                hpg(&a, &b, &(&mr + &one), ArgKind::Z),
            )
            .with_log(LogArg::ZOver1mZ),
            Term::new(
                pi_cot(y).neg(),
                vec![],
                hpg(&a, &b, &(&mr + &one), ArgKind::Z),
            ),
        ];
        if m >= 1 {
            terms.push(Term::new(
                head_constant(&a, &b, m),
                vec![(Atom::Z, -mr.clone()), (Atom::OneMinusZ, &mr - x)],
                SeriesPart::Sum {
                    arg: SumArg::ZOverZm1,
                    lo: 0,
                    hi: Some(m - 1),
                    rule: finite_head_rule(&(x - &mr), &(&one - y), m),
                },
            ));
        }
        terms.push(Term::new(
            Scalar::one(),
            vec![(Atom::OneMinusZ, -x.clone())],
            SeriesPart::Sum {
                arg: SumArg::ZOverZm1,
                lo: 0,
                hi: None,
                rule: gauss_psi_rule(
                    x,
                    &(&mr + &one - y),
                    &(&mr + &one),
                    [
                        (x, 1),
                        (&(&mr + &one - y), 1),
                        (&(&mr + &one), -1),
                        (&one, -1),
                    ],
                ),
            },
        ));
        out.push(SolutionSpec::new(label, q.clone(), terms));
    }

    out
}

/// The log series at infinity together with its identification as a
/// constant multiple of the subdominant solution at the origin.
pub struct InfinityLogSolution {
    pub spec: SolutionSpec,
    pub identity: Option<IdentityDef>,
}

/// Requires the exponent difference at infinity to be an integer; α is the
/// larger upper parameter (α − β = ℓ ≥ 0).
pub fn build_u1_infinity(p: &EquationParams) -> Result<InfinityLogSolution> {
    let dc = degeneracy_case(p);
    expect_tag(&dc, CaseTag::Case2)?;
    let q = dc.normal_form.clone();
    let m = dc.witness.m.expect("case-2 witness");
    let diff = &q.a - &q.b;
    let ell = as_i64(&diff)
        .map(|v| v.abs())
        .ok_or_else(|| Error::Domain("exponent difference at infinity is not an integer".into()))?;
    let (alpha, beta) = if diff >= rat(0) {
        (q.a.clone(), q.b.clone())
    } else {
        (q.b.clone(), q.a.clone())
    };
    let one = Rational::one();
    let mr = rat(m);
    let lr = rat(ell);

    let mut terms = vec![Term::new(
        Scalar::one(),
        vec![(Atom::Z, -alpha.clone())],
        hpg(&alpha, &(&alpha - &mr), &(&lr + &one), ArgKind::InvZ),
    )
    .with_log(LogArg::InvZ)];
    if ell >= 1 {
        terms.push(Term::new(
            Scalar::neg_one_pow(ell + 1)
                .mul(Scalar::factorial(ell))
                .mul(Scalar::factorial(ell - 1))
                .div(
                    Scalar::poch(&(&one - &alpha), ell)
                        .mul(Scalar::poch(&(&mr + &one - &alpha), ell)),
                ),
            vec![(Atom::Z, -beta.clone())],
            SeriesPart::Sum {
                arg: SumArg::InvZ,
                lo: 0,
                hi: Some(ell - 1),
                rule: finite_head_rule(&beta, &(&beta - &mr), ell),
            },
        ));
    }
    terms.push(Term::new(
        Scalar::one(),
        vec![(Atom::Z, -alpha.clone())],
        SeriesPart::Sum {
            arg: SumArg::InvZ,
            lo: 0,
            hi: None,
            rule: gauss_psi_rule(
                &alpha,
                &(&alpha - &mr),
                &(&lr + &one),
                [
                    (&alpha, 1),
                    (&(&alpha - &mr), 1),
                    (&(&lr + &one), -1),
                    (&one, -1),
                ],
            ),
        },
    ));
    let spec = SolutionSpec::new("U1inf.log", q.clone(), terms);

    // identification with the connection form at z = 1
    let cgam = &alpha + &beta - &mr;
    let identity = if gamma_const_ok(&[&beta, &(&beta - &mr)], &[&cgam])
        && !is_nonpositive_integer(&cgam)
    {
        Some(IdentityDef {
            id: "case2.infinity-identification".into(),
            lhs: vec![spec.clone()],
            rhs: vec![SolutionSpec::new(
                "U1inf.viaU1",
                q.clone(),
                vec![Term::new(
                    Scalar::neg_one_pow(ell + 1)
                        .mul(Scalar::factorial(ell))
                        .mul(Scalar::gamma_ratio(
                            &[beta.clone(), &beta - &mr],
                            std::slice::from_ref(&cgam),
                        )),
                    vec![],
                    hpg(&alpha, &beta, &cgam, ArgKind::OneMinusZ),
                )],
            )],
            tol: 1e-9,
        })
    } else {
        None
    };

    Ok(InfinityLogSolution { spec, identity })
}

pub(super) fn build(dc: DegeneracyCase) -> Result<CaseSolutions> {
    expect_tag(&dc, CaseTag::Case2)?;
    let q = dc.normal_form.clone();
    let m = dc.witness.m.expect("case-2 witness");
    let one = Rational::one();

    let f0 = SolutionSpec::new(
        "F0.0",
        q.clone(),
        vec![Term::new(
            Scalar::one(),
            vec![],
            hpg(&q.a, &q.b, &(rat(m) + &one), ArgKind::Z),
        )],
    );

    let mut groups = vec![
        SolutionGroup::new("F0", vec![f0]),
        SolutionGroup::new("U1", u1_expressions(&q, m)),
    ];
    let mut identities = Vec::new();

    if (&q.a - &q.b).is_integer() {
        let inf = build_u1_infinity(&q)?;
        groups.push(SolutionGroup::new("U1inf", vec![inf.spec]));
        if let Some(idd) = inf.identity {
            identities.push(idd);
        }
    }

    Ok(CaseSolutions {
        case: dc,
        basis: ("F0.0".into(), "U1.log1".into()),
        groups,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::EvalOptions;
    use num_complex::Complex64;

    fn solve(a: &str, b: &str, c: &str) -> CaseSolutions {
        build(crate::degeneracy::degeneracy_case(
            &EquationParams::parse(a, b, c).unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn expression_count_generic_instance() {
        let cs = solve("1/3", "2/5", "2");
        let u1 = cs.groups.iter().find(|g| g.label == "U1").unwrap();
        assert_eq!(u1.expressions.len(), 8);
    }

    #[test]
    fn log_forms_agree() {
        // two independent routes to the same function at a sample point
        let cs = solve("1/3", "1/4", "2");
        let opts = EvalOptions::default();
        let z = Complex64::new(0.2, 0.1);
        let v_conn = cs.find("U1.c1").unwrap().eval(z, &opts).unwrap();
        let v_log = cs.find("U1.log1").unwrap().eval(z, &opts).unwrap();
        assert!(
            (v_conn - v_log).norm() < 1e-10 * v_conn.norm().max(1.0),
            "{v_conn} vs {v_log}"
        );
        let v_log2 = cs.find("U1.log2").unwrap().eval(z, &opts).unwrap();
        assert!((v_log - v_log2).norm() < 1e-10 * v_log.norm().max(1.0));
        let v_lp = cs.find("U1.lp1").unwrap().eval(z, &opts).unwrap();
        assert!((v_log - v_lp).norm() < 1e-10 * v_log.norm().max(1.0));
    }

    #[test]
    fn infinity_forms_agree() {
        // the connection form at infinity against the log series; the
        // shared summable region sits left of the origin, where the 1/z
        // node of the former reaches its series through the Pfaff route
        let cs = solve("1/3", "1/4", "2");
        let opts = EvalOptions::default();
        let z = Complex64::new(-0.5, 0.55);
        let cinf = cs.find("U1.cinf").unwrap();
        let log1 = cs.find("U1.log1").unwrap();
        assert!(cinf.domain_ok(z) && log1.domain_ok(z));
        let v_inf = cinf.eval(z, &opts).unwrap();
        let v_log = log1.eval(z, &opts).unwrap();
        assert!(
            (v_inf - v_log).norm() < 1e-10 * v_log.norm().max(1.0),
            "{v_inf} vs {v_log}"
        );
        let v_ba = cs.find("U1.cinf.ba").unwrap().eval(z, &opts).unwrap();
        assert!((v_ba - v_log).norm() < 1e-10 * v_log.norm().max(1.0));
    }

    #[test]
    fn empty_head_when_m_is_zero() {
        let cs = solve("1/2", "1/2", "1");
        let u1 = cs.groups.iter().find(|g| g.label == "U1").unwrap();
        // the log z expression has no z^{−m} head for m = 0
        let log1 = u1
            .expressions
            .iter()
            .find(|e| e.label == "U1.log1")
            .unwrap();
        assert_eq!(log1.terms().len(), 2);
    }

    #[test]
    fn infinity_log_solution_identified() {
        // equal upper parameters: the point at infinity is logarithmic with
        // the exponent difference 0
        let cs = solve("1/2", "1/2", "1");
        assert!(cs.groups.iter().any(|g| g.label == "U1inf"));
        assert_eq!(cs.identities.len(), 1);
        let idd = &cs.identities[0];
        let opts = EvalOptions::default();
        // sample where both the 1/z series and the (1−z) series converge
        let z = Complex64::new(1.45, 0.5);
        assert!(idd.lhs[0].domain_ok(z) && idd.rhs[0].domain_ok(z));
        let l = idd.lhs[0].eval(z, &opts).unwrap();
        let r = idd.rhs[0].eval(z, &opts).unwrap();
        assert!(
            (l - r).norm() < 1e-9 * l.norm().max(1.0),
            "infinity identification deviates: {l} vs {r}"
        );
    }

    #[test]
    fn infinity_log_solution_nonzero_shift() {
        // difference ℓ = 1 with m = 1
        let p = EquationParams::parse("4/3", "1/3", "2").unwrap();
        let inf = build_u1_infinity(&p).unwrap();
        let idd = inf.identity.expect("identity defined");
        let opts = EvalOptions::default();
        let z = Complex64::new(1.45, 0.5);
        let l = idd.lhs[0].eval(z, &opts).unwrap();
        let r = idd.rhs[0].eval(z, &opts).unwrap();
        assert!(
            (l - r).norm() < 1e-9 * l.norm().max(1.0),
            "{l} vs {r}"
        );
    }

    #[test]
    fn wrong_case_is_rejected() {
        let p = EquationParams::parse("-2", "1/3", "1/5").unwrap();
        assert!(matches!(
            build_u1_infinity(&p),
            Err(Error::WrongCase { .. })
        ));
    }

    #[test]
    fn euler_form_second_term_coefficient() {
        // the series coefficient of the correction term in the Euler form
        // at (a, b) = (1/3, 1/4) is −π sin(7π/12)/(sin(π/3) sin(π/4))
        let cs = solve("1/3", "1/4", "2");
        let c1e = cs.find("U1.c1e").unwrap();
        let got = c1e.terms()[1].constant.eval();
        let pi = std::f64::consts::PI;
        let want = -pi * (7.0 * pi / 12.0).sin() / ((pi / 3.0).sin() * (pi / 4.0).sin());
        assert!((got.re - want).abs() < 1e-13 && got.im == 0.0, "{got} vs {want}");
    }

    #[test]
    fn infinity_identification_constant_uses_gamma_of_b() {
        // regression for a known misprint in the classical connection
        // tables: the identification constant carries Γ(b)Γ(b−m), not
        // Γ(c)Γ(b−m). With Γ(c) in its place the identity breaks by an
        // O(1) factor.
        let p = EquationParams::parse("4/3", "1/3", "2").unwrap(); // ℓ=1, m=1
        let inf = build_u1_infinity(&p).unwrap();
        let idd = inf.identity.expect("identity defined");
        let opts = EvalOptions::default();
        let z = Complex64::new(1.45, 0.5);
        let l = idd.lhs[0].eval(z, &opts).unwrap();
        let r = idd.rhs[0].eval(z, &opts).unwrap();
        assert!((l - r).norm() < 1e-9 * l.norm().max(1.0));
        // corrupt: replace Γ(b) = Γ(1/3) by Γ(c) = Γ(2) in the constant
        let gamma_b = crate::special::gamma_rat(&ratq(1, 3)).re;
        let gamma_c = crate::special::gamma_rat(&rat(2)).re;
        let wrong =
            idd.rhs[0].scale_term_constant(0, crate::rational::Rational::new(
                num_bigint::BigInt::from((gamma_c / gamma_b * 1e12) as i64),
                num_bigint::BigInt::from(1_000_000_000_000i64),
            ));
        let rw = wrong.eval(z, &opts).unwrap();
        assert!(
            (l - rw).norm() > 1e-2 * l.norm().max(1.0),
            "the corrupted constant went unnoticed"
        );
    }

    use crate::rational::ratq;
}
