//! Terminating solutions with non-abelian monodromy and no logarithmic
//! points: normal form E(−n, a, c), a, c, c−a non-integral.
//!
//! One terminating solution with six terminating and six non-terminating
//! expressions, three purely non-terminating solutions of four expressions
//! each, and two connection relations tying the non-terminating solutions
//! to the terminating one.

use super::*;
use crate::atlas::enumerate_24;
use crate::rational::as_i64;

pub(super) fn build(dc: DegeneracyCase) -> Result<CaseSolutions> {
    expect_tag(&dc, CaseTag::Case1)?;
    let q = dc.normal_form.clone();
    let n = dc.witness.n.expect("case-1 witness");
    let a = q.b.clone(); // residual parameters of E(−n, a, c)
    let c = q.c.clone();
    debug_assert_eq!(as_i64(&q.a), Some(-n));

    // terminating solution: the six-link chain plus Euler partners
    let chain = chain6(n, &a, &c);
    let mut t_exprs: Vec<SolutionSpec> = chain
        .iter()
        .enumerate()
        .map(|(i, e)| e.to_spec(format!("T.{i}"), &q))
        .collect();
    for (i, e) in chain.iter().enumerate() {
        t_exprs.push(euler_partner(e).to_spec(format!("T.e{i}"), &q));
    }

    // non-terminating solutions: the subdominant descriptor blocks
    let descs = enumerate_24(&q);
    let mut groups = vec![SolutionGroup::new("T", t_exprs)];
    for (gi, block) in [[4usize, 5, 6, 7], [12, 13, 14, 15], [20, 21, 22, 23]]
        .iter()
        .enumerate()
    {
        let exprs: Vec<SolutionSpec> = block
            .iter()
            .map(|&s| {
                let mut spec = descs[s].to_solution_spec(&q);
                spec.label = format!("N{}.{}", gi + 1, descs[s].label);
                spec
            })
            .collect();
        groups.push(SolutionGroup::new(format!("N{}", gi + 1), exprs));
    }

    // connection relations expressing the subdominant local solutions at
    // z = 1 and z = ∞ through the basis at z = 0
    let one = Rational::one();
    let nr = rat(n);
    let f_term = |aa: Rational, bb: Rational, cc: Rational, arg: ArgKind| SeriesPart::Hpg {
        a: aa,
        b: bb,
        c: cc,
        arg,
    };

    // F(1+n, 1−a; 1+n+c−a; 1−z)
    //   = (c−a)_{n+1}/(c−1)_{n+1} F(1+n, 1−a; 2−c; z)
    //   + Γ(1+n+c−a)Γ(1−c)/(Γ(1−a) n!) z^{c−1}(1−z)^{a−c−n} F(−n, a; c; z)
    let conn1 = IdentityDef {
        id: "case1.connection.one".into(),
        lhs: vec![SolutionSpec::new(
            "conn1.lhs",
            q.clone(),
            vec![Term::new(
                Scalar::one(),
                vec![],
                f_term(
                    &one + &nr,
                    &one - &a,
                    &one + &nr + &c - &a,
                    ArgKind::OneMinusZ,
                ),
            )],
        )],
        rhs: vec![SolutionSpec::new(
            "conn1.rhs",
            q.clone(),
            vec![
                Term::new(
                    Scalar::poch(&(&c - &a), n + 1).div(Scalar::poch(&(&c - &one), n + 1)),
                    vec![],
                    f_term(&one + &nr, &one - &a, rat(2) - &c, ArgKind::Z),
                ),
                Term::new(
                    Scalar::gamma_ratio(
                        &[&one + &nr + &c - &a, &one - &c],
                        &[&one - &a, rat(n + 1)],
                    ),
                    vec![
                        (Atom::Z, &c - &one),
                        (Atom::OneMinusZ, &a - &c - &nr),
                    ],
                    f_term(-nr.clone(), a.clone(), c.clone(), ArgKind::Z),
                ),
            ],
        )],
        tol: 1e-11,
    };

    // F(1+n, c+n; 1+n+a; 1/z)
    //   = (a)_{n+1}/(c−1)_{n+1} (−z)^{n+1} F(1+n, 1−a; 2−c; z)
    //   + Γ(1+n+a)Γ(1−c)/(Γ(1+a−c) n!) (−z)^{c+n}(1−z)^{a−c+n} F(−n, a; c; z)
    let conn2 = IdentityDef {
        id: "case1.connection.infinity".into(),
        lhs: vec![SolutionSpec::new(
            "conn2.lhs",
            q.clone(),
            vec![Term::new(
                Scalar::one(),
                vec![],
                f_term(&one + &nr, &c + &nr, &one + &nr + &a, ArgKind::InvZ),
            )],
        )],
        rhs: vec![SolutionSpec::new(
            "conn2.rhs",
            q.clone(),
            vec![
                Term::new(
                    Scalar::poch(&a, n + 1).div(Scalar::poch(&(&c - &one), n + 1)),
                    vec![(Atom::NegZ, &nr + &one)],
                    f_term(&one + &nr, &one - &a, rat(2) - &c, ArgKind::Z),
                ),
                Term::new(
                    Scalar::gamma_ratio(
                        &[&one + &nr + &a, &one - &c],
                        &[&one + &a - &c, rat(n + 1)],
                    ),
                    // the second prefactor exponent is a−c−n, matching the
                    // relation at z = 1; the +n variant fails the exponent
                    // balance at infinity
                    vec![
                        (Atom::NegZ, &c + &nr),
                        (Atom::OneMinusZ, &a - &c - &nr),
                    ],
                    f_term(-nr.clone(), a.clone(), c.clone(), ArgKind::Z),
                ),
            ],
        )],
        tol: 1e-11,
    };

    let basis = (
        "T.0".to_string(),
        groups[1].expressions[0].label.clone(),
    );
    Ok(CaseSolutions {
        case: dc,
        basis,
        groups,
        identities: vec![conn1, conn2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratq;
    use crate::series::EvalOptions;
    use num_complex::Complex64;

    fn witness() -> CaseSolutions {
        build(crate::degeneracy::degeneracy_case(
            &EquationParams::parse("-2", "1/3", "1/5").unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn group_shape() {
        let cs = witness();
        assert_eq!(cs.groups.len(), 4);
        assert_eq!(cs.groups[0].expressions.len(), 12);
        for g in &cs.groups[1..] {
            assert_eq!(g.expressions.len(), 4);
        }
        assert_eq!(cs.identities.len(), 2);
    }

    #[test]
    fn chain_head_equals_tail_at_a_point() {
        // both sides of the first chain link by direct summation
        let cs = witness();
        let opts = EvalOptions::default();
        let z = Complex64::new(0.3, 0.2);
        let v0 = cs.find("T.0").unwrap().eval(z, &opts).unwrap();
        let v1 = cs.find("T.1").unwrap().eval(z, &opts).unwrap();
        assert!((v0 - v1).norm() < 1e-13 * v0.norm());
    }

    #[test]
    fn degree_zero_subcase() {
        // n = 0: the terminating solution is the constant 1 and every chain
        // constant equals 1
        let p = EquationParams::parse("0", "1/3", "1/5").unwrap();
        // a = 0 puts an integer in the first slot with n = 0
        let dc = crate::degeneracy::degeneracy_case(&p);
        assert_eq!(dc.tag, CaseTag::Case1);
        let cs = build(dc).unwrap();
        let opts = EvalOptions::default();
        let z = Complex64::new(0.4, 0.3);
        let v = cs.find("T.0").unwrap().eval(z, &opts).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn connection_relations_hold() {
        let cs = witness();
        let opts = EvalOptions::default();
        // conn1 at a point where every side is summable
        let z = Complex64::new(0.4, 0.35);
        for idd in &cs.identities {
            let all_ok = idd
                .lhs
                .iter()
                .chain(idd.rhs.iter())
                .all(|s| s.domain_ok(z));
            if !all_ok {
                continue;
            }
            let l: Complex64 = idd
                .lhs
                .iter()
                .map(|s| s.eval(z, &opts).unwrap())
                .sum();
            let r: Complex64 = idd
                .rhs
                .iter()
                .map(|s| s.eval(z, &opts).unwrap())
                .sum();
            let dev = (l - r).norm() / l.norm().max(r.norm());
            assert!(dev < 1e-11, "{} deviates {dev:.2e}", idd.id);
        }
    }
}
