//! Gamma, digamma, principal-branch powers and logs, and trigonometric
//! values at rational multiples of π.
//!
//! The branch convention is the principal one throughout: arguments live in
//! (−π, π]. All identities in this crate are verified on the open upper
//! half-plane, where that convention makes the classical connection
//! formulas hold without correction factors.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{as_i64, to_f64, Rational};

/// Lanczos coefficients (g = 7, n = 9), the usual GSL/Numerical-Recipes set.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Complex gamma function via Lanczos approximation with reflection for
/// Re z < 1/2. Relative accuracy is ~1e-14 for moderate arguments.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z) Γ(1−z) = π / sin(πz)
        let pi = std::f64::consts::PI;
        return pi / ((pi * z).sin() * gamma(Complex64::new(1.0, 0.0) - z));
    }
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    let t = zm1 + 7.5;
    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    sqrt_two_pi * t.powc(zm1 + 0.5) * (-t).exp() * acc
}

/// Gamma at a real (rational) argument.
pub fn gamma_rat(x: &Rational) -> Complex64 {
    gamma(Complex64::new(to_f64(x), 0.0))
}

/// Digamma ψ(z) = Γ'(z)/Γ(z) for complex z, via reflection, upward
/// recurrence, and the asymptotic series. Poles at z ∈ ℤ≤0 are errors.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Pole(format!("psi({})", z.re)));
    }
    Ok(digamma_unchecked(z))
}

fn digamma_unchecked(z: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    if z.re < 0.5 {
        // ψ(z) = ψ(1−z) − π/tan(πz)
        return digamma_unchecked(Complex64::new(1.0, 0.0) - z) - pi / (pi * z).tan();
    }
    let mut acc = Complex64::zero();
    let mut w = z;
    while w.re < 16.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    // Asymptotic expansion with Bernoulli-number coefficients.
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    const B: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let mut tail = Complex64::zero();
    let mut p = inv2;
    for b in B {
        tail += b * p;
        p *= inv2;
    }
    acc + w.ln() - 0.5 * inv - tail
}

/// Digamma at a rational argument, with the exact pole check.
pub fn digamma_rat(x: &Rational) -> Result<Complex64> {
    if x.is_integer() && !x.is_positive() {
        return Err(Error::Pole(format!("psi({})", x)));
    }
    Ok(digamma_unchecked(Complex64::new(to_f64(x), 0.0)))
}

/// Principal logarithm, with argument in (−π, π].
pub fn principal_log(z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("log of zero".into()));
    }
    Ok(z.ln())
}

/// Principal-branch power base^exponent for a rational exponent.
/// Integer exponents are dispatched to exact repeated multiplication so
/// that polynomial identities stay bit-stable.
pub fn principal_power(base: Complex64, exponent: &Rational) -> Result<Complex64> {
    if exponent.is_zero() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if base.norm() == 0.0 {
        if exponent.is_negative() {
            return Err(Error::Domain("zero base with negative exponent".into()));
        }
        return Ok(Complex64::zero());
    }
    if let Some(k) = as_i64(exponent) {
        return Ok(base.powi(k as i32));
    }
    let e = to_f64(exponent);
    Ok((base.ln() * e).exp())
}

/// Rising factorial (x)_k in complex arithmetic.
pub fn pochhammer_complex(x: Complex64, k: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..k {
        acc *= x + j as f64;
    }
    acc
}

/// sin(πx) for rational x, exact at integers and half-integers.
pub fn sin_pi_rat(x: &Rational) -> f64 {
    let two_x = x * crate::rational::rat(2);
    if let Some(n) = as_i64(&two_x) {
        // x = n/2: sin is 0 at integers, ±1 at half-integers
        if n % 2 == 0 {
            return 0.0;
        }
        return if (n - 1) % 4 == 0 { 1.0 } else { -1.0 };
    }
    // reduce x mod 2 for accuracy
    let fl = x.floor();
    let frac = x - &fl;
    let sign = if as_i64(&fl).map(|v| v % 2 != 0).unwrap_or(false) {
        -1.0
    } else {
        1.0
    };
    sign * (std::f64::consts::PI * to_f64(&frac)).sin()
}

/// cos(πx) for rational x, exact at integers and half-integers.
pub fn cos_pi_rat(x: &Rational) -> f64 {
    sin_pi_rat(&(crate::rational::ratq(1, 2) + x))
}

/// tan(πx) for rational x; error at half-integers (poles of tan).
pub fn tan_pi_rat(x: &Rational) -> Result<f64> {
    let c = cos_pi_rat(x);
    if c == 0.0 {
        return Err(Error::Pole(format!("tan(pi*{})", x)));
    }
    Ok(sin_pi_rat(x) / c)
}

/// e^{iπx} for rational x, exact at multiples of 1/2.
pub fn exp_i_pi_rat(x: &Rational) -> Complex64 {
    Complex64::new(cos_pi_rat(x), sin_pi_rat(x))
}
