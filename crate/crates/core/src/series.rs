//! Hypergeometric series summation.
//!
//! Terminating series are summed with exact rational coefficients (the
//! whole sum stays rational when the argument is rational). Convergent
//! series are summed directly with compensated accumulation and a
//! stagnation-based stop; the summation domain is |argument| ≤ 0.9 and
//! other regions are reached through argument transformations, not
//! resummation.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_i64, format_rational, is_nonpositive_integer, rat, to_f64, Rational};
use crate::special::{gamma_rat, principal_power};

/// Largest |argument| accepted for direct summation of a non-terminating
/// series.
pub const SUMMATION_RADIUS: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// consecutive small terms required before the sum is declared stagnant
    pub stagnation_window: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 10_000,
            stagnation_window: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms_used: usize,
    pub truncation_estimate: f64,
    pub exact: bool,
}

impl SeriesValue {
    fn exact_sum(value: Complex64, terms: usize) -> Self {
        Self {
            value,
            terms_used: terms,
            truncation_estimate: 0.0,
            exact: true,
        }
    }
}

/// Termination status of F(a, b; c; ·) under the rescue convention: with
/// c = −N a non-positive integer the series is read as terminating of
/// degree n when some upper parameter is −n with n ≤ N, and is undefined
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesStatus {
    NonTerminating,
    Terminating(u32),
    Undefined,
}

pub fn series_status(a: &Rational, b: &Rational, c: &Rational) -> SeriesStatus {
    let c_nonpos = is_nonpositive_integer(c);
    let cap = if c_nonpos { -as_i64(c).unwrap() } else { i64::MAX };
    let mut degree: Option<i64> = None;
    for u in [a, b] {
        if is_nonpositive_integer(u) {
            let n = -as_i64(u).unwrap();
            if n <= cap {
                degree = Some(degree.map_or(n, |d| d.min(n)));
            }
        }
    }
    match degree {
        Some(d) => SeriesStatus::Terminating(d as u32),
        None if c_nonpos => SeriesStatus::Undefined,
        None => SeriesStatus::NonTerminating,
    }
}

fn undefined_error(a: &Rational, b: &Rational, c: &Rational) -> Error {
    Error::UndefinedSeries {
        a: format_rational(a),
        b: format_rational(b),
        c: format_rational(c),
    }
}

/// Exact value of a terminating series at a rational argument.
pub fn eval_2f1_exact(a: &Rational, b: &Rational, c: &Rational, z: &Rational) -> Result<Rational> {
    let d = match series_status(a, b, c) {
        SeriesStatus::Terminating(d) => d,
        _ => {
            return Err(Error::Domain(format!(
                "exact evaluation needs a terminating series, got F({}, {}; {}; .)",
                a, b, c
            )))
        }
    };
    let mut sum = Rational::one();
    let mut coeff = Rational::one();
    for k in 0..d {
        let kr = rat(k as i64);
        coeff *= (a + &kr) * (b + &kr) / ((c + &kr) * (&kr + rat(1)));
        coeff *= z;
        // coeff now carries z^{k+1} as well
        sum += &coeff;
    }
    Ok(sum)
}

/// Exact coefficient list of a terminating series: index k holds
/// (a)_k (b)_k / ((c)_k k!).
pub fn terminating_coefficients(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    degree: u32,
) -> Vec<Rational> {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut coeff = Rational::one();
    coeffs.push(coeff.clone());
    for k in 0..degree {
        let kr = rat(k as i64);
        coeff *= (a + &kr) * (b + &kr) / ((c + &kr) * (&kr + rat(1)));
        coeffs.push(coeff.clone());
    }
    coeffs
}

/// Complex Kahan-style accumulator.
#[derive(Default, Clone, Copy)]
pub(crate) struct Compensated {
    sum: Complex64,
    comp: Complex64,
}

impl Compensated {
    pub(crate) fn add(&mut self, term: Complex64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Gauss hypergeometric series F(a, b; c; z).
///
/// Terminating series are summed exactly (coefficients in rational
/// arithmetic, converted at the end); convergent series require
/// |z| ≤ 0.9 and stop once `stagnation_window` consecutive terms are below
/// `rel_tol` times the partial sum.
pub fn eval_2f1(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    z: Complex64,
    opts: &EvalOptions,
) -> Result<SeriesValue> {
    match series_status(a, b, c) {
        SeriesStatus::Undefined => Err(undefined_error(a, b, c)),
        SeriesStatus::Terminating(d) => {
            let coeffs = terminating_coefficients(a, b, c, d);
            // Horner evaluation, highest coefficient first
            let mut acc = Complex64::zero();
            for ck in coeffs.iter().rev() {
                acc = acc * z + to_f64(ck);
            }
            Ok(SeriesValue::exact_sum(acc, d as usize + 1))
        }
        SeriesStatus::NonTerminating => {
            if z.norm() > SUMMATION_RADIUS {
                return Err(Error::Domain(format!(
                    "non-terminating series argument |z| = {:.3} exceeds {}",
                    z.norm(),
                    SUMMATION_RADIUS
                )));
            }
            let (af, bf, cf) = (to_f64(a), to_f64(b), to_f64(c));
            let mut acc = Compensated::default();
            let mut term = Complex64::new(1.0, 0.0);
            acc.add(term);
            let mut small_run = 0usize;
            for k in 0..opts.max_terms {
                let kf = k as f64;
                term *= Complex64::new(af + kf, 0.0) * (bf + kf) / ((cf + kf) * (kf + 1.0)) * z;
                acc.add(term);
                let partial = acc.value().norm().max(f64::MIN_POSITIVE);
                if term.norm() < opts.rel_tol * partial {
                    small_run += 1;
                    if small_run >= opts.stagnation_window {
                        return Ok(SeriesValue {
                            value: acc.value(),
                            terms_used: k + 2,
                            truncation_estimate: term.norm() / partial,
                            exact: false,
                        });
                    }
                } else {
                    small_run = 0;
                }
            }
            Err(Error::NoConvergence {
                max_terms: opts.max_terms,
                estimate: term.norm() / acc.value().norm().max(f64::MIN_POSITIVE),
            })
        }
    }
}

/// F(a, b; c; z) with automatic continuation through the Pfaff map: direct
/// summation when |z| ≤ 0.9, otherwise (1−z)^{−a} F(a, c−b; c; z/(z−1))
/// when that argument is summable. Terminating series evaluate anywhere.
pub fn eval_2f1_routed(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    z: Complex64,
    opts: &EvalOptions,
) -> Result<SeriesValue> {
    match series_status(a, b, c) {
        SeriesStatus::Undefined => Err(undefined_error(a, b, c)),
        SeriesStatus::Terminating(_) => eval_2f1(a, b, c, z, opts),
        SeriesStatus::NonTerminating => {
            if z.norm() <= SUMMATION_RADIUS {
                return eval_2f1(a, b, c, z, opts);
            }
            let w = z / (z - 1.0);
            if w.norm() <= SUMMATION_RADIUS {
                let inner = eval_2f1(a, &(c - b), c, w, opts)?;
                let pref = principal_power(Complex64::new(1.0, 0.0) - z, &(-a))?;
                return Ok(SeriesValue {
                    value: pref * inner.value,
                    exact: false,
                    ..inner
                });
            }
            Err(Error::Domain(format!(
                "argument {z} outside the summable region (direct and Pfaff)"
            )))
        }
    }
}

/// Is z inside the region where `eval_2f1_routed` can evaluate a
/// non-terminating series?
pub fn routed_domain_ok(z: Complex64) -> bool {
    z.norm() <= SUMMATION_RADIUS || (z / (z - 1.0)).norm() <= SUMMATION_RADIUS
}

/// Convention branch used by the normalized series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoldBranch {
    /// Γ(a)Γ(b)/Γ(c) · F(a,b;c;z)
    GammaRatio,
    /// c = −N: limits of the summands push the sum to start at k = N+1
    ShiftedLower,
    /// upper parameter −n with c = −N, n ≤ N: singular gamma quotients by
    /// residues; a finite head plus a shifted tail
    ResidueRescue,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoldValue {
    pub series: SeriesValue,
    pub branch: BoldBranch,
}

/// Normalized hypergeometric series
/// **F**(a,b;c;z) = Σ Γ(a+k)Γ(b+k)/(Γ(c+k) k!) z^k,
/// extended to non-positive integer parameters by limits and residues.
pub fn eval_bold_f(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    z: Complex64,
    opts: &EvalOptions,
) -> Result<BoldValue> {
    let a_bad = is_nonpositive_integer(a);
    let b_bad = is_nonpositive_integer(b);
    let c_bad = is_nonpositive_integer(c);

    if !a_bad && !b_bad && !c_bad {
        let f = eval_2f1_routed(a, b, c, z, opts)?;
        let pref = gamma_rat(a) * gamma_rat(b) / gamma_rat(c);
        return Ok(BoldValue {
            series: SeriesValue {
                value: pref * f.value,
                exact: false,
                ..f
            },
            branch: BoldBranch::GammaRatio,
        });
    }

    if c_bad && !a_bad && !b_bad {
        // all terms k ≤ N vanish through 1/Γ(c+k); shift the index
        let n_big = -as_i64(c).unwrap();
        let np1 = rat(n_big + 1);
        let f = eval_2f1_routed(&(a + &np1), &(b + &np1), &(rat(n_big) + rat(2)), z, opts)?;
        let pref = gamma_rat(&(a + &np1)) * gamma_rat(&(b + &np1))
            / to_f64(&crate::rational::factorial_i64(n_big + 1));
        let zpow = principal_power(z, &np1)?;
        return Ok(BoldValue {
            series: SeriesValue {
                value: pref * zpow * f.value,
                exact: false,
                ..f
            },
            branch: BoldBranch::ShiftedLower,
        });
    }

    if c_bad {
        // residue rescue: an upper parameter −n with n ≤ N, the other not a
        // non-positive integer
        let cap = -as_i64(c).unwrap();
        let pick = |u: &Rational, v: &Rational| -> Option<(i64, Rational)> {
            if is_nonpositive_integer(u) {
                let n = -as_i64(u).unwrap();
                if n <= cap && !is_nonpositive_integer(v) {
                    return Some((n, v.clone()));
                }
            }
            None
        };
        if let Some((n, other)) = pick(a, b).or_else(|| pick(b, a)) {
            return bold_residue_rescue(n, cap, &other, z, opts);
        }
    }

    Err(undefined_error(a, b, c))
}

/// **F**(−n, a; −N; z), n ≤ N, a ∉ ℤ≤0, by taking residues of the singular
/// gamma quotients term by term: the head k ≤ n carries
/// (−N+k)_{N−n} Γ(a+k)/k!, terms n < k ≤ N vanish, and the tail k > N is an
/// ordinary shifted series.
fn bold_residue_rescue(
    n: i64,
    cap: i64,
    a: &Rational,
    z: Complex64,
    opts: &EvalOptions,
) -> Result<BoldValue> {
    let mut acc = Compensated::default();
    // head: k = 0..=n
    let mut gamma_ak = gamma_rat(a); // Γ(a+k), updated by recurrence
    let mut kfact = 1.0f64;
    let mut zpow = Complex64::new(1.0, 0.0);
    for k in 0..=n {
        if k > 0 {
            gamma_ak *= to_f64(a) + (k - 1) as f64;
            kfact *= k as f64;
            zpow *= z;
        }
        // (−N+k)_{N−n} as exact rational
        let poch = crate::rational::pochhammer_rat(&rat(-cap + k), (cap - n) as u32);
        acc.add(zpow * gamma_ak * (to_f64(&poch) / kfact));
    }
    // tail: k ≥ N+1, i.e. Σ_{j≥0} Γ(−n+N+1+j)Γ(a+N+1+j)/(Γ(1+j) (N+1+j)!) z^{N+1+j}
    let np1 = rat(cap + 1);
    let tail_f = eval_2f1_routed(
        &(rat(-n) + &np1),
        &(a + &np1),
        &(rat(cap) + rat(2)),
        z,
        opts,
    )?;
    let tail_pref = gamma_rat(&(rat(-n) + &np1)) * gamma_rat(&(a + &np1))
        / to_f64(&crate::rational::factorial_i64(cap + 1));
    let ztail = principal_power(z, &np1)?;
    acc.add(tail_pref * ztail * tail_f.value);
    Ok(BoldValue {
        series: SeriesValue {
            value: acc.value(),
            terms_used: tail_f.terms_used + n as usize + 1,
            truncation_estimate: tail_f.truncation_estimate,
            exact: false,
        },
        branch: BoldBranch::ResidueRescue,
    })
}
