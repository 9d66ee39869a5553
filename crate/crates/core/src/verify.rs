//! Numerical verification harness: identity residuals, differential
//! equation residuals, Wronskian non-degeneracy, and orbit cross-checks,
//! aggregated into machine-readable reports.
//!
//! Sample points come from a fixed low-discrepancy grid in the rectangle
//! [0.05, 0.9] × [0.05, 0.6]i with seedable jitter, pushed through a small
//! set of charts so that neighbourhoods of all three singular points are
//! reachable, then filtered through every side's summability predicate.

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::cases::{CaseSolutions, IdentityDef};
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::rational::{rat, ratq, to_f64, Rational};
use crate::series::{eval_2f1, eval_2f1_routed, eval_bold_f, routed_domain_ok, EvalOptions};
use crate::solution::{SeriesPart, SolutionSpec};
use crate::special::{gamma_rat, principal_power};

#[derive(Debug, Clone, Copy)]
pub struct SamplePolicy {
    pub count: usize,
    pub seed: u64,
}

impl Default for SamplePolicy {
    fn default() -> Self {
        Self { count: 8, seed: 0 }
    }
}

type EvalFn = dyn Fn(Complex64) -> Result<(Complex64, Complex64)> + Send + Sync;
type DomainFn = dyn Fn(Complex64) -> bool + Send + Sync;

/// Two sides of an identity: either sums of solution expressions, or an
/// opaque evaluator (used for identities phrased through the normalized
/// series, whose conventions live in the evaluator itself).
#[derive(Clone)]
pub enum Sides {
    Specs {
        lhs: Vec<SolutionSpec>,
        rhs: Vec<SolutionSpec>,
    },
    Closure {
        eval: Arc<EvalFn>,
        domain: Arc<DomainFn>,
    },
}

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: String,
    pub tol: f64,
    pub sides: Sides,
}

impl IdentityRecord {
    pub fn from_def(def: &IdentityDef) -> Self {
        Self {
            id: def.id.clone(),
            tol: def.tol,
            sides: Sides::Specs {
                lhs: def.lhs.clone(),
                rhs: def.rhs.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub points_tested: usize,
    pub max_rel_deviation: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_point: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    fn failed(id: &str, detail: String) -> Self {
        Self {
            id: id.to_string(),
            points_tested: 0,
            max_rel_deviation: f64::INFINITY,
            pass: false,
            worst_point: None,
            detail: Some(detail),
        }
    }
}

/// Deterministic candidate points: a golden-ratio grid in the base
/// rectangle with seed jitter, pushed through four charts (identity, left
/// half-plane, right of z = 1, and a large-|z| chart).
pub fn candidate_points(policy: &SamplePolicy) -> Vec<Complex64> {
    let mut pts = Vec::new();
    // xorshift-style jitter from the seed
    let mut s = policy.seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next01 = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    let (j1, j2) = (next01() * 0.01, next01() * 0.01);
    const PHI: f64 = 0.6180339887498949;
    const SQ2: f64 = 0.41421356237309515;
    for j in 1..=80u32 {
        let x = 0.05 + 0.85 * ((j as f64) * PHI + j1).fract();
        let y = 0.05 + 0.55 * ((j as f64) * SQ2 + j2).fract();
        let u = Complex64::new(x, y);
        pts.push(u);
        pts.push(Complex64::new(-x, y));
        pts.push(Complex64::new(1.0 + x, y));
        pts.push(-1.0 / u);
    }
    pts
}

fn admissible(z: Complex64) -> bool {
    z.im >= 0.05 && z.norm() >= 0.05 && (z - 1.0).norm() >= 0.05
}

fn sides_domain_ok(sides: &Sides, z: Complex64) -> bool {
    match sides {
        Sides::Specs { lhs, rhs } => lhs
            .iter()
            .chain(rhs.iter())
            .all(|s| s.domain_ok(z)),
        Sides::Closure { domain, .. } => domain(z),
    }
}

/// Points admissible for the record under the policy.
pub fn sample_points(rec: &IdentityRecord, policy: &SamplePolicy) -> Vec<Complex64> {
    candidate_points(policy)
        .into_iter()
        .filter(|&z| admissible(z) && sides_domain_ok(&rec.sides, z))
        .take(policy.count)
        .collect()
}

/// Relative headroom below which a point is considered numerically
/// ill-conditioned for an expression (value lost to cancellation between
/// terms); such points bound the attainable accuracy, not the correctness
/// of a formula, and are skipped during sampling.
const CONDITION_FLOOR: f64 = 1e-4;

fn spec_sum_scaled(
    specs: &[SolutionSpec],
    z: Complex64,
    opts: &EvalOptions,
) -> Result<(Complex64, f64)> {
    let mut acc = Complex64::zero();
    let mut scale = 0.0f64;
    for s in specs {
        let (v, sc) = s.eval_scaled(z, opts)?;
        acc += v;
        scale += sc;
    }
    Ok((acc, scale))
}

/// Evaluate both sides of an identity on its admissible, well-conditioned
/// sample set and report the maximal relative deviation.
pub fn check_identity(rec: &IdentityRecord, policy: &SamplePolicy) -> Result<VerificationReport> {
    let opts = EvalOptions::default();
    let mut max_dev = 0.0f64;
    let mut worst = Complex64::zero();
    let mut tested = 0usize;
    for z in candidate_points(policy) {
        if tested >= policy.count {
            break;
        }
        if !admissible(z) || !sides_domain_ok(&rec.sides, z) {
            continue;
        }
        let (l, r) = match &rec.sides {
            Sides::Specs { lhs, rhs } => {
                let (l, lscale) = match spec_sum_scaled(lhs, z, &opts) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let (r, rscale) = match spec_sum_scaled(rhs, z, &opts) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let magnitude = l.norm().max(r.norm());
                if magnitude < CONDITION_FLOOR * lscale.max(rscale) {
                    continue;
                }
                (l, r)
            }
            Sides::Closure { eval, .. } => match eval(z) {
                Ok(v) => v,
                Err(_) => continue,
            },
        };
        let dev = (l - r).norm() / l.norm().max(r.norm()).max(1e-300);
        if dev > max_dev {
            max_dev = dev;
            worst = z;
        }
        tested += 1;
    }
    if tested == 0 {
        return Err(Error::EmptyDomain(rec.id.clone()));
    }
    Ok(VerificationReport {
        id: rec.id.clone(),
        points_tested: tested,
        max_rel_deviation: max_dev,
        pass: max_dev < rec.tol,
        worst_point: Some([worst.re, worst.im]),
        detail: None,
    })
}

/// Residual of E(a,b,c) for a solution expression: z(1−z)y″ +
/// (c−(a+b+1)z)y′ − ab·y, relative to |ab·y| + |y″|. Expressions built
/// entirely from rational pieces are additionally required to satisfy the
/// equation exactly in rational arithmetic.
pub fn check_ode_residual(
    spec: &SolutionSpec,
    p: &EquationParams,
    policy: &SamplePolicy,
) -> VerificationReport {
    let id = format!("ode.{}", spec.label);
    let opts = EvalOptions::default();
    let (af, bf, cf) = (to_f64(&p.a), to_f64(&p.b), to_f64(&p.c));
    let mut max_dev = 0.0f64;
    let mut worst = Complex64::zero();
    let mut tested = 0usize;
    for z in candidate_points(policy) {
        if tested >= policy.count {
            break;
        }
        if !admissible(z) || !spec.domain_ok(z) {
            continue;
        }
        // skip points where the value has cancelled away between terms
        match spec.eval_scaled(z, &opts) {
            Ok((v, scale)) if v.norm() >= CONDITION_FLOOR * scale => {}
            _ => continue,
        }
        let (y, y1, y2) = match spec.eval_with_derivatives(z, &opts) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let res = z * (Complex64::new(1.0, 0.0) - z) * y2 + (cf - (af + bf + 1.0) * z) * y1
            - af * bf * y;
        let scale = (af * bf * y).norm() + y2.norm() + 1e-30;
        let dev = res.norm() / scale;
        if dev > max_dev {
            max_dev = dev;
            worst = z;
        }
        tested += 1;
    }
    if tested == 0 {
        return VerificationReport::failed(&id, "no admissible points".into());
    }
    let mut pass = max_dev < 1e-8;
    let mut detail = None;
    // exact check for rational expressions
    if spec.is_finite_expression() {
        let zr = ratq(2, 7);
        if let Some((y, y1, y2)) = spec.eval_exact(&zr) {
            let res = &zr * (Rational::from_integer(1.into()) - &zr) * &y2
                + (&p.c - (&p.a + &p.b + rat(1)) * &zr) * &y1
                - &p.a * &p.b * &y;
            if !res.is_zero() {
                pass = false;
                detail = Some(format!("exact residual {res}"));
            } else {
                max_dev = 0.0;
                detail = Some("exact".into());
            }
        }
    }
    VerificationReport {
        id,
        points_tested: tested,
        max_rel_deviation: max_dev,
        pass,
        worst_point: Some([worst.re, worst.im]),
        detail,
    }
}

/// Wronskian non-degeneracy of a basis pair at the reference point
/// z₀ = 0.3 + 0.4i: |y₁y₂′ − y₂y₁′| must exceed 1e−10 × |y₁||y₂|.
pub fn check_wronskian(
    y1: &SolutionSpec,
    y2: &SolutionSpec,
    _p: &EquationParams,
) -> VerificationReport {
    let id = format!("wronskian.{}~{}", y1.label, y2.label);
    let z0 = Complex64::new(0.3, 0.4);
    let opts = EvalOptions::default();
    let t1 = y1.eval_with_derivatives(z0, &opts);
    let t2 = y2.eval_with_derivatives(z0, &opts);
    match (t1, t2) {
        (Ok((v1, d1, _)), Ok((v2, d2, _))) => {
            let w = v1 * d2 - v2 * d1;
            let scale = (v1.norm() * v2.norm()).max(1e-300);
            let ratio = w.norm() / scale;
            VerificationReport {
                id,
                points_tested: 1,
                max_rel_deviation: ratio,
                pass: ratio > 1e-10,
                worst_point: Some([z0.re, z0.im]),
                detail: None,
            }
        }
        (Err(e), _) | (_, Err(e)) => VerificationReport::failed(&id, format!("{e}")),
    }
}

/// Tolerance for a pair of expressions: ψ-weighted or logarithmic content
/// relaxes the bound.
fn pair_tolerance(a: &SolutionSpec, b: &SolutionSpec) -> f64 {
    let has_psi = |s: &SolutionSpec| {
        s.terms().iter().any(|t| {
            t.log.is_some()
                || matches!(&t.series, SeriesPart::Sum { rule, .. } if rule.psi.is_some())
        })
    };
    if has_psi(a) || has_psi(b) {
        1e-9
    } else {
        1e-11
    }
}

/// All identity records of a solution catalog: pairwise cross-expression
/// equalities (where a shared summable region exists), the case's
/// connection relations, and the normalized-series records of its class.
pub fn records_for(solutions: &CaseSolutions, policy: &SamplePolicy) -> Vec<IdentityRecord> {
    let mut records = Vec::new();
    for g in &solutions.groups {
        let n = g.expressions.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let a = &g.expressions[i];
                let b = &g.expressions[j];
                let rec = IdentityRecord {
                    id: format!("pair.{}~{}", a.label, b.label),
                    tol: pair_tolerance(a, b),
                    sides: Sides::Specs {
                        lhs: vec![a.clone()],
                        rhs: vec![b.clone()],
                    },
                };
                // keep only pairs with a non-empty shared region
                if !sample_points(&rec, policy).is_empty() {
                    records.push(rec);
                }
            }
        }
    }
    for def in &solutions.identities {
        records.push(IdentityRecord::from_def(def));
    }
    records.extend(bold_records_for(solutions));
    records
}

/// Records phrased through the normalized series evaluator.
fn bold_records_for(solutions: &CaseSolutions) -> Vec<IdentityRecord> {
    let q = solutions.case.normal_form.clone();
    match solutions.case.tag {
        crate::degeneracy::CaseTag::Generic => {
            let mut recs = connection_formula_records(&q);
            recs.extend(limit_euler_records("lemma2", 1, 3, &ratq(1, 3)));
            recs
        }
        crate::degeneracy::CaseTag::Case2 => vec![h1_h2_record(&q)],
        crate::degeneracy::CaseTag::Case4 => {
            let n = solutions.case.witness.n.unwrap();
            let m = solutions.case.witness.m.unwrap();
            let a_res: Rational = &q.b + rat(m);
            limit_euler_records("case4.limit-euler", n, n + m, &(&a_res - rat(m)))
        }
        _ => vec![],
    }
}

/// The four connection formulas expressing the normalized local solutions
/// at z = 1 and z = ∞ through the basis H₁, H₂ at the origin, at generic
/// parameters.
pub fn connection_formula_records(q: &EquationParams) -> Vec<IdentityRecord> {
    let opts = EvalOptions::default();
    let (a, b, c) = (q.a.clone(), q.b.clone(), q.c.clone());
    let one = Rational::from_integer(1.into());
    let h12 = {
        let (a, b, c) = (a.clone(), b.clone(), c.clone());
        move |z: Complex64| -> Result<(Complex64, Complex64)> {
            let h1 = eval_bold_f(&a, &b, &c, z, &opts)?.series.value;
            let h2 = principal_power(z, &(Rational::from_integer(1.into()) - &c))?
                * eval_bold_f(
                    &(Rational::from_integer(1.into()) + &a - &c),
                    &(Rational::from_integer(1.into()) + &b - &c),
                    &(Rational::from_integer(2.into()) - &c),
                    z,
                    &opts,
                )?
                .series
                .value;
            Ok((h1, h2))
        }
    };
    let kconst = {
        let sc = crate::special::sin_pi_rat(&c) / std::f64::consts::PI;
        let g = gamma_rat(&(&one + &a - &c)) * gamma_rat(&(&one + &b - &c));
        Complex64::new(sc, 0.0) * g
    };
    let sin = |x: &Rational| Complex64::new(crate::special::sin_pi_rat(x), 0.0);
    let eipc = crate::special::exp_i_pi_rat(&c);

    let mut recs: Vec<IdentityRecord> = Vec::new();
    // at z = 1, both exponents
    {
        let (a2, b2, c2) = (a.clone(), b.clone(), c.clone());
        let h = h12.clone();
        recs.push(IdentityRecord {
            id: "connection.one.first".into(),
            tol: 1e-10,
            sides: Sides::Closure {
                eval: Arc::new(move |z| {
                    let lhs = eval_bold_f(
                        &a2,
                        &b2,
                        &(Rational::from_integer(1.into()) + &a2 + &b2 - &c2),
                        Complex64::new(1.0, 0.0) - z,
                        &EvalOptions::default(),
                    )?
                    .series
                    .value;
                    let (h1, h2) = h(z)?;
                    Ok((lhs, (h1 - h2) / kconst))
                }),
                domain: Arc::new(|z| {
                    routed_domain_ok(z) && routed_domain_ok(Complex64::new(1.0, 0.0) - z)
                }),
            },
        });
    }
    {
        let (a2, b2, c2) = (a.clone(), b.clone(), c.clone());
        let h = h12.clone();
        let ratio = sin(&a) * sin(&b) / (sin(&(&c - &a)) * sin(&(&c - &b)));
        recs.push(IdentityRecord {
            id: "connection.one.second".into(),
            tol: 1e-10,
            sides: Sides::Closure {
                eval: Arc::new(move |z| {
                    let one_c = Complex64::new(1.0, 0.0);
                    let s = &c2 - &a2 - &b2;
                    let lhs = principal_power(one_c - z, &s)?
                        * eval_bold_f(
                            &(&c2 - &a2),
                            &(&c2 - &b2),
                            &(Rational::from_integer(1.into()) + &s),
                            one_c - z,
                            &EvalOptions::default(),
                        )?
                        .series
                        .value;
                    let (h1, h2) = h(z)?;
                    Ok((lhs, (h1 * ratio - h2) / kconst))
                }),
                domain: Arc::new(|z| {
                    routed_domain_ok(z) && routed_domain_ok(Complex64::new(1.0, 0.0) - z)
                }),
            },
        });
    }
    // at z = ∞, both exponents
    for (idx, first) in [(0usize, true), (1, false)] {
        let (a2, b2, c2) = (a.clone(), b.clone(), c.clone());
        let h = h12.clone();
        let sc = sin(&c);
        let (s_other, s_conn) = if first {
            (sin(&b), sin(&(&c - &b)))
        } else {
            (sin(&a), sin(&(&c - &a)))
        };
        recs.push(IdentityRecord {
            id: format!(
                "connection.infinity.{}",
                if idx == 0 { "first" } else { "second" }
            ),
            tol: 1e-10,
            sides: Sides::Closure {
                eval: Arc::new(move |z| {
                    let one_r = Rational::from_integer(1.into());
                    let (u, v, w) = if first {
                        (a2.clone(), &one_r + &a2 - &c2, &one_r + &a2 - &b2)
                    } else {
                        (&one_r + &b2 - &c2, b2.clone(), &one_r + &b2 - &a2)
                    };
                    let e = if first { -a2.clone() } else { -b2.clone() };
                    let lhs = principal_power(-z, &e)?
                        * eval_bold_f(&u, &v, &w, 1.0 / z, &EvalOptions::default())?
                            .series
                            .value;
                    let (h1, h2) = h(z)?;
                    Ok((lhs, (h1 * s_other + h2 * eipc * s_conn) / sc))
                }),
                domain: Arc::new(|z| routed_domain_ok(z) && routed_domain_ok(1.0 / z)),
            },
        });
    }
    recs
}

/// The degenerate-parameter Euler and Pfaff transformations (lower
/// parameter a non-positive integer), together with the splitting of the
/// normalized series into a terminating head and a shifted tail.
pub fn limit_euler_records(
    prefix: &str,
    n: i64,
    big_n: i64,
    a: &Rational,
) -> Vec<IdentityRecord> {
    let opts = EvalOptions::default();
    let one = Rational::from_integer(1.into());
    let a = a.clone();
    let mut recs = Vec::new();
    // splitting of the normalized series
    {
        let a2 = a.clone();
        recs.push(IdentityRecord {
            id: format!("{prefix}.split"),
            tol: 1e-11,
            sides: Sides::Closure {
                eval: Arc::new(move |z| {
                    let lhs = eval_bold_f(&rat(-n), &a2, &rat(-big_n), z, &EvalOptions::default())?
                        .series
                        .value;
                    let sign = if (big_n - n) % 2 == 0 { 1.0 } else { -1.0 };
                    let head = sign
                        * gamma_rat(&a2)
                        * (to_f64(&crate::rational::factorial_i64(big_n))
                            / to_f64(&crate::rational::factorial_i64(n)))
                        * eval_2f1(&rat(-n), &a2, &rat(-big_n), z, &EvalOptions::default())?.value;
                    let tail = gamma_rat(&(&a2 + rat(big_n + 1)))
                        * (to_f64(&crate::rational::factorial_i64(big_n - n))
                            / to_f64(&crate::rational::factorial_i64(big_n + 1)))
                        * principal_power(z, &rat(big_n + 1))?
                        * eval_2f1_routed(
                            &rat(big_n - n + 1),
                            &(&a2 + rat(big_n + 1)),
                            &rat(big_n + 2),
                            z,
                            &EvalOptions::default(),
                        )?
                        .value;
                    Ok((lhs, head + tail))
                }),
                domain: Arc::new(routed_domain_ok),
            },
        });
    }
    // Euler with the shifted exponent
    {
        let a2 = a.clone();
        let opts2 = opts;
        recs.push(IdentityRecord {
            id: format!("{prefix}.euler"),
            tol: 1e-11,
            sides: Sides::Closure {
                eval: Arc::new(move |z| {
                    let lhs = eval_2f1(&rat(-n), &a2, &rat(-big_n), z, &opts2)?.value;
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let cst = sign
                        * (to_f64(&crate::rational::factorial_i64(big_n - n))
                            / to_f64(&crate::rational::factorial_i64(big_n)))
                        / gamma_rat(&(-&a2 - rat(big_n)));
                    let rhs = principal_power(
                        Complex64::new(1.0, 0.0) - z,
                        &(-&a2 + rat(n - big_n)),
                    )? * cst
                        * eval_bold_f(&rat(n - big_n), &(-&a2 - rat(big_n)), &rat(-big_n), z, &opts2)?
                            .series
                            .value;
                    Ok((lhs, rhs))
                }),
                domain: Arc::new(routed_domain_ok),
            },
        });
    }
    // first Pfaff form
    {
        let a2 = a.clone();
        recs.push(IdentityRecord {
            id: format!("{prefix}.pfaff1"),
            tol: 1e-11,
            sides: Sides::Closure {
                eval: Arc::new(move |z| {
                    let opts = EvalOptions::default();
                    let lhs = eval_2f1(&rat(-n), &a2, &rat(-big_n), z, &opts)?.value;
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let cst = sign
                        * (to_f64(&crate::rational::factorial_i64(big_n - n))
                            / to_f64(&crate::rational::factorial_i64(big_n)))
                        / gamma_rat(&a2);
                    let w = z / (z - 1.0);
                    let rhs = principal_power(Complex64::new(1.0, 0.0) - z, &(-&a2))?
                        * cst
                        * eval_bold_f(&rat(n - big_n), &a2, &rat(-big_n), w, &opts)?
                            .series
                            .value;
                    Ok((lhs, rhs))
                }),
                domain: Arc::new(|z| routed_domain_ok(z / (z - 1.0))),
            },
        });
    }
    // second Pfaff form (fully terminating on both sides)
    {
        let a2 = a.clone();
        recs.push(IdentityRecord {
            id: format!("{prefix}.pfaff2"),
            tol: 1e-11,
            sides: Sides::Closure {
                eval: Arc::new(move |z| {
                    let opts = EvalOptions::default();
                    let lhs = eval_2f1(&rat(-n), &a2, &rat(-big_n), z, &opts)?.value;
                    let w = z / (z - 1.0);
                    let rhs = principal_power(Complex64::new(1.0, 0.0) - z, &rat(n))?
                        * eval_2f1(&rat(-n), &(-&a2 - rat(big_n)), &rat(-big_n), w, &opts)?.value;
                    Ok((lhs, rhs))
                }),
                domain: Arc::new(|_| true),
            },
        });
    }
    let _ = one;
    recs
}

/// Coincidence of the two normalized local solutions at the origin when
/// the lower parameter is a positive integer.
fn h1_h2_record(q: &EquationParams) -> IdentityRecord {
    let (a, b, c) = (q.a.clone(), q.b.clone(), q.c.clone());
    IdentityRecord {
        id: "h1-h2-coincide".into(),
        tol: 1e-11,
        sides: Sides::Closure {
            eval: Arc::new(move |z| {
                let opts = EvalOptions::default();
                let one = Rational::from_integer(1.into());
                let h1 = eval_bold_f(&a, &b, &c, z, &opts)?.series.value;
                let h2 = principal_power(z, &(&one - &c))?
                    * eval_bold_f(
                        &(&one + &a - &c),
                        &(&one + &b - &c),
                        &(Rational::from_integer(2.into()) - &c),
                        z,
                        &opts,
                    )?
                    .series
                    .value;
                Ok((h1, h2))
            }),
            domain: Arc::new(routed_domain_ok),
        },
    }
}

/// Outcome of a full per-instance verification run.
#[derive(Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<VerificationReport>,
    pub orbits: Vec<crate::atlas::SolutionOrbit>,
    pub solutions: CaseSolutions,
}

impl SuiteOutcome {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&VerificationReport> {
        self.reports.iter().filter(|r| !r.pass).collect()
    }
}

/// Classify, build the case catalog, and run every applicable record:
/// cross-expression identities, connection relations, normalized-series
/// records, differential-equation residuals for every expression and every
/// defined atlas descriptor, the Wronskian check, and the orbit grouping
/// cross-validation.
pub fn run_case_suite(p: &EquationParams, policy: &SamplePolicy) -> Result<SuiteOutcome> {
    let solutions = crate::cases::build(p)?;
    let q = solutions.case.normal_form.clone();
    let mut reports: Vec<VerificationReport> = Vec::new();

    // identity records
    for rec in records_for(&solutions, policy) {
        match check_identity(&rec, policy) {
            Ok(rep) => reports.push(rep),
            Err(e) => reports.push(VerificationReport::failed(&rec.id, format!("{e}"))),
        }
    }

    // differential-equation residuals
    for spec in solutions.all_expressions() {
        reports.push(check_ode_residual(spec, &q, policy));
    }
    let descs = crate::atlas::enumerate_24(&q);
    for d in descs.iter().filter(|d| d.is_defined()) {
        let spec = d.to_solution_spec(&q);
        let mut rep = check_ode_residual(&spec, &q, policy);
        rep.id = format!("ode.desc.{}", d.label);
        reports.push(rep);
    }

    // Wronskian of the designated basis
    let y1 = solutions
        .find(&solutions.basis.0)
        .ok_or_else(|| Error::UnknownSolutionLabel(solutions.basis.0.clone()))?;
    let y2 = solutions
        .find(&solutions.basis.1)
        .ok_or_else(|| Error::UnknownSolutionLabel(solutions.basis.1.clone()))?;
    reports.push(check_wronskian(y1, y2, &q));

    // orbit grouping with numeric confirmation
    let orbits = match crate::atlas::group_orbits(&q, &descs) {
        Ok(orbits) => {
            reports.push(VerificationReport {
                id: "orbits".into(),
                points_tested: orbits.len(),
                max_rel_deviation: 0.0,
                pass: true,
                worst_point: None,
                detail: Some(
                    orbits
                        .iter()
                        .map(|o| o.signature())
                        .collect::<Vec<_>>()
                        .join(", "),
                ),
            });
            orbits
        }
        Err(e) => {
            reports.push(VerificationReport::failed("orbits", format!("{e}")));
            Vec::new()
        }
    };

    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(SuiteOutcome {
        reports,
        orbits,
        solutions,
    })
}
