//! Independent oracles shared by the integration suites. Everything here
//! recomputes values from first principles (term-by-term products, direct
//! counting) without touching the recurrence-based implementation paths it
//! is used to check.

use kummer24_core::rational::{factorial_rat, pochhammer_rat, Rational};
use kummer24_core::series::{series_status, SeriesStatus};
use num_traits::{One, Zero};

/// Brute-force terminating series: every term an independent product of
/// exact rising factorials.
pub fn bruteforce_terminating(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    z: &Rational,
) -> Rational {
    let d = match series_status(a, b, c) {
        SeriesStatus::Terminating(d) => d,
        other => panic!("oracle needs a terminating series, got {other:?}"),
    };
    let mut sum = Rational::zero();
    for k in 0..=d {
        let num = pochhammer_rat(a, k) * pochhammer_rat(b, k);
        let den = pochhammer_rat(c, k) * factorial_rat(k);
        let mut zp = Rational::one();
        for _ in 0..k {
            zp *= z;
        }
        sum += num / den * zp;
    }
    sum
}

/// Monodromy classification by direct counting, written against the
/// dichotomy statement rather than the library's decision order.
pub fn monodromy_counting_oracle(
    p: &kummer24_core::EquationParams,
) -> kummer24_core::MonodromyClass {
    use kummer24_core::rational::{is_integer, is_positive_integer, rat};
    use kummer24_core::MonodromyClass as M;
    let quad = [p.a.clone(), p.b.clone(), &p.c - &p.a, &p.c - &p.b];
    if quad.iter().all(|x| !is_integer(x)) {
        return M::Irreducible;
    }
    if [&p.a, &p.b, &p.c].iter().all(|x| is_integer(x)) {
        let positives = quad.iter().filter(|x| is_positive_integer(x)).count();
        return if positives % 2 == 1 {
            M::Trivial
        } else {
            M::AdditiveAbelian
        };
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
            return M::MultiplicativeAbelian;
        }
    }
    M::ReducibleNonAbelian
}
