//! Trivial monodromy: normal form E(−n, ℓ+1, −n−m). All solutions are
//! rational functions; there are three distinguished terminating solutions,
//! each with six terminating and two non-terminating expressions, related
//! by a single three-term identity. Permuting (m, n, ℓ) permutes the three
//! solutions.

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
    expect_tag(&dc, CaseTag::Case5)?;
    let q = dc.normal_form.clone();
    let (n, m, ell) = witness_nml(&dc);
    let one = Rational::one();
    let lp1 = rat(ell) + &one;
    let c0 = q.c.clone(); // −n−m

    // R1: chain of F(−n, ℓ+1; −n−m; z); the last two links Euler-transform
    // to the non-terminating expressions
    let chain_r1 = chain6(n, &lp1, &c0);
    let mut r1: Vec<SolutionSpec> = chain_r1
        .iter()
        .enumerate()
        .map(|(i, e)| e.to_spec(format!("R1.{i}"), &q))
        .collect();
    for (i, e) in chain_r1.iter().enumerate().skip(4) {
        r1.push(euler_partner(e).to_spec(format!("R1.e{i}"), &q));
    }

    // R2: (1−z)^{−ℓ−1} × chain of F(−m, ℓ+1; −n−m; w) at w = z/(z−1)
    let chain_r2 = chain6(m, &lp1, &c0);
    let mut r2: Vec<SolutionSpec> = Vec::new();
    for (i, e) in chain_r2.iter().enumerate() {
        r2.push(SolutionSpec::composed(
            format!("R2.{i}"),
            q.clone(),
            e.constant.clone(),
            vec![(Atom::OneMinusZ, -lp1.clone())],
            ArgKind::ZOverZm1,
            vec![Term::new(Scalar::one(), e.powers.clone(), hpg(&e.f.0, &e.f.1, &e.f.2, e.arg))],
        ));
    }
    for (i, e) in chain_r2.iter().enumerate().skip(4) {
        let ep = euler_partner(e);
        r2.push(SolutionSpec::composed(
            format!("R2.e{i}"),
            q.clone(),
            ep.constant.clone(),
            vec![(Atom::OneMinusZ, -lp1.clone())],
            ArgKind::ZOverZm1,
            vec![Term::new(Scalar::one(), ep.powers.clone(), hpg(&ep.f.0, &ep.f.1, &ep.f.2, ep.arg))],
        ));
    }

    // R3: z^{n+m+1}(1−z)^{−m−ℓ−1} × chain of F(−ℓ, n+1; −m−ℓ; w) at w = 1−z
    let chain_r3 = chain6(ell, &(rat(n) + &one), &rat(-m - ell));
    let outer_r3 = vec![
        (Atom::Z, rat(n + m + 1)),
        (Atom::OneMinusZ, rat(-m - ell - 1)),
    ];
    let mut r3: Vec<SolutionSpec> = Vec::new();
    for (i, e) in chain_r3.iter().enumerate() {
        r3.push(SolutionSpec::composed(
            format!("R3.{i}"),
            q.clone(),
            e.constant.clone(),
            outer_r3.clone(),
            ArgKind::OneMinusZ,
            vec![Term::new(Scalar::one(), e.powers.clone(), hpg(&e.f.0, &e.f.1, &e.f.2, e.arg))],
        ));
    }
    for (i, e) in chain_r3.iter().enumerate().skip(4) {
        let ep = euler_partner(e);
        r3.push(SolutionSpec::composed(
            format!("R3.e{i}"),
            q.clone(),
            ep.constant.clone(),
            outer_r3.clone(),
            ArgKind::OneMinusZ,
            vec![Term::new(Scalar::one(), ep.powers.clone(), hpg(&ep.f.0, &ep.f.1, &ep.f.2, ep.arg))],
        ));
    }

    // three-term relation between the distinguished expressions
    let relation = IdentityDef {
        id: "case5.three-term".into(),
        lhs: vec![r2[0].clone()],
        rhs: vec![
            r1[0].clone(),
            {
                let mut head = r3[0].clone();
                head.label = "R3.scaled".into();
                match &mut head.body {
                    crate::solution::Body::Composed { constant, .. } => {
                        *constant = constant.clone().mul(
                            Scalar::neg_one_pow(m)
                                .mul(Scalar::factorial(n))
                                .mul(Scalar::factorial(m + ell))
                                .div(Scalar::factorial(ell).mul(Scalar::factorial(n + m))),
                        );
                    }
                    _ => unreachable!(),
                }
                head
            },
        ],
        tol: 1e-12,
    };

    Ok(CaseSolutions {
        case: dc,
        basis: ("R1.0".into(), "R2.0".into()),
        groups: vec![
            SolutionGroup::new("R1", r1),
            SolutionGroup::new("R2", r2),
            SolutionGroup::new("R3", r3),
        ],
        identities: vec![relation],
    })
}
