//! Completely reducible (diagonal) monodromy: normal form E(−n, a−m, −n−m),
//! a non-integral.
//!
//! Two terminating basis solutions — the plain series and its would-be
//! Euler transform, which here is a genuinely different function — each
//! with six terminating and four non-terminating expressions, one
//! non-terminating solution, and the three-term relation quantifying the
//! failure of the naive Euler transformation.

use super::*;

fn hpg(a: &Rational, b: &Rational, c: &Rational, arg: ArgKind) -> SeriesPart {
    SeriesPart::Hpg {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        arg,
    }
}

pub(super) fn build(dc: DegeneracyCase) -> Result<CaseSolutions> {
    expect_tag(&dc, CaseTag::Case4)?;
    let q = dc.normal_form.clone();
    let (n, m) = witness_nm(&dc);
    let one = Rational::one();
    // residual parameter a: second normal-form parameter is a−m
    let a = &q.b + rat(m);
    let c0 = q.c.clone(); // −n−m

    // first basis solution: chain of F(−n, a−m; −n−m; z) plus the Euler
    // partners of its last four links (the first two sit at the degenerate
    // lower parameter where the naive Euler transform fails)
    let chain_s1 = chain6(n, &(&a - rat(m)), &c0);
    let mut s1: Vec<SolutionSpec> = chain_s1
        .iter()
        .enumerate()
        .map(|(i, e)| e.to_spec(format!("S1.{i}"), &q))
        .collect();
    for (i, e) in chain_s1.iter().enumerate().skip(2) {
        s1.push(euler_partner(e).to_spec(format!("S1.e{i}"), &q));
    }

    // second basis solution: (1−z)^{−a} times the chain of
    // F(−m, −a−n; −n−m; z)
    let chain_s2 = chain6(m, &(-&a - rat(n)), &c0);
    let mut s2: Vec<SolutionSpec> = chain_s2
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut t = e.to_term();
            t.powers.push((Atom::OneMinusZ, -a.clone()));
            SolutionSpec::new(format!("S2.{i}"), q.clone(), vec![t])
        })
        .collect();
    for (i, e) in chain_s2.iter().enumerate().skip(2) {
        let mut t = euler_partner(e).to_term();
        t.powers.push((Atom::OneMinusZ, -a.clone()));
        s2.push(SolutionSpec::new(format!("S2.e{i}"), q.clone(), vec![t]));
    }

    // remaining non-terminating solution
    let descs = crate::atlas::enumerate_24(&q);
    let n1: Vec<SolutionSpec> = [4usize, 5, 6, 7]
        .iter()
        .map(|&s| {
            let mut spec = descs[s].to_solution_spec(&q);
            spec.label = format!("N1.{}", descs[s].label);
            spec
        })
        .collect();

    // three-term relation: the corrected Euler transformation
    //   (1−z)^{−a} F(−m, −a−n; −n−m; z) = F(−n, a−m; −n−m; z)
    //     + (−1)^m n! m! (a−m)_{n+m+1}/((n+m)!(n+m+1)!) z^{n+m+1}
    //       F(m+1, a+n+1; n+m+2; z)
    let remainder = SolutionSpec::new(
        "S3.remainder",
        q.clone(),
        vec![Term::new(
            Scalar::neg_one_pow(m)
                .mul(Scalar::factorial(n))
                .mul(Scalar::factorial(m))
                .mul(Scalar::poch(&(&a - rat(m)), n + m + 1))
                .div(Scalar::factorial(n + m).mul(Scalar::factorial(n + m + 1))),
            vec![(Atom::Z, rat(n + m + 1))],
            hpg(
                &(rat(m) + &one),
                &(&a + rat(n) + &one),
                &rat(n + m + 2),
                ArgKind::Z,
            ),
        )],
    );
    let relation = IdentityDef {
        id: "case4.corrected-euler".into(),
        lhs: vec![s2[0].clone()],
        rhs: vec![s1[0].clone(), remainder],
        tol: 1e-11,
    };

    Ok(CaseSolutions {
        case: dc,
        basis: ("S1.0".into(), "S2.0".into()),
        groups: vec![
            SolutionGroup::new("S1", s1),
            SolutionGroup::new("S2", s2),
            SolutionGroup::new("N1", n1),
        ],
        identities: vec![relation],
    })
}
