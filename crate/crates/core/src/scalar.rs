//! Exact symbolic constants.
//!
//! Prefactor constants of solution expressions (factorial ratios, gamma
//! ratios, trigonometric values at rational multiples of π, unit-modulus
//! exponentials) are kept symbolic and only turned into complex floats at
//! evaluation time. Constants that are genuinely rational report themselves
//! as such, which is what keeps polynomial and rational solutions exactly
//! verifiable.

use num_complex::Complex64;
use num_traits::One;

use crate::rational::{format_rational, is_positive_integer, rat, Rational};
use crate::special::{cos_pi_rat, exp_i_pi_rat, gamma_rat, sin_pi_rat};

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rat(Rational),
    Pi,
    /// ∏ Γ(num_i) / ∏ Γ(den_j)
    GammaRatio {
        num: Vec<Rational>,
        den: Vec<Rational>,
    },
    SinPi(Rational),
    CosPi(Rational),
    ExpIPi(Rational),
    Neg(Box<Scalar>),
    Inv(Box<Scalar>),
    Prod(Vec<Scalar>),
    Sum(Vec<Scalar>),
}

#[allow(clippy::should_implement_trait)] // builder methods, not arithmetic traits
impl Scalar {
    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn rat(x: Rational) -> Self {
        Scalar::Rat(x)
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(rat(n))
    }

    /// (−1)^k
    pub fn neg_one_pow(k: i64) -> Self {
        Scalar::Rat(rat(if k.rem_euclid(2) == 0 { 1 } else { -1 }))
    }

    pub fn factorial(n: i64) -> Self {
        Scalar::Rat(crate::rational::factorial_i64(n))
    }

    /// Exact rising factorial (x)_k as a rational constant.
    pub fn poch(x: &Rational, k: i64) -> Self {
        assert!(k >= 0);
        Scalar::Rat(crate::rational::pochhammer_rat(x, k as u32))
    }

    pub fn gamma_ratio(num: &[Rational], den: &[Rational]) -> Self {
        Scalar::GammaRatio {
            num: num.to_vec(),
            den: den.to_vec(),
        }
    }

    pub fn mul(self, other: Scalar) -> Self {
        Scalar::Prod(vec![self, other])
    }

    pub fn div(self, other: Scalar) -> Self {
        Scalar::Prod(vec![self, Scalar::Inv(Box::new(other))])
    }

    pub fn neg(self) -> Self {
        Scalar::Neg(Box::new(self))
    }

    pub fn eval(&self) -> Complex64 {
        match self {
            Scalar::Rat(x) => Complex64::new(crate::rational::to_f64(x), 0.0),
            Scalar::Pi => Complex64::new(std::f64::consts::PI, 0.0),
            Scalar::GammaRatio { num, den } => {
                let mut acc = Complex64::new(1.0, 0.0);
                for x in num {
                    acc *= gamma_rat(x);
                }
                for y in den {
                    acc /= gamma_rat(y);
                }
                acc
            }
            Scalar::SinPi(x) => Complex64::new(sin_pi_rat(x), 0.0),
            Scalar::CosPi(x) => Complex64::new(cos_pi_rat(x), 0.0),
            Scalar::ExpIPi(x) => exp_i_pi_rat(x),
            Scalar::Neg(s) => -s.eval(),
            Scalar::Inv(s) => 1.0 / s.eval(),
            Scalar::Prod(fs) => fs
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, f| acc * f.eval()),
            Scalar::Sum(fs) => fs
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, f| acc + f.eval()),
        }
    }

    /// The exact rational value, when the constant is rational by
    /// construction. Gamma ratios qualify when every argument is a positive
    /// integer; sin(πx) qualifies only at integer x.
    pub fn exact(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(x) => Some(x.clone()),
            Scalar::Pi => None,
            Scalar::GammaRatio { num, den } => {
                let fact = |x: &Rational| -> Option<Rational> {
                    if is_positive_integer(x) {
                        Some(crate::rational::factorial_i64(
                            crate::rational::as_i64(x).unwrap() - 1,
                        ))
                    } else {
                        None
                    }
                };
                let mut acc = Rational::one();
                for x in num {
                    acc *= fact(x)?;
                }
                for y in den {
                    acc /= fact(y)?;
                }
                Some(acc)
            }
            Scalar::SinPi(x) => {
                if x.is_integer() {
                    Some(rat(0))
                } else {
                    None
                }
            }
            Scalar::CosPi(x) => {
                crate::rational::as_i64(x).map(|n| rat(if n % 2 == 0 { 1 } else { -1 }))
            }
            Scalar::ExpIPi(x) => {
                crate::rational::as_i64(x).map(|n| rat(if n % 2 == 0 { 1 } else { -1 }))
            }
            Scalar::Neg(s) => s.exact().map(|x| -x),
            Scalar::Inv(s) => s.exact().map(|x| Rational::one() / x),
            Scalar::Prod(fs) => {
                let mut acc = Rational::one();
                for f in fs {
                    acc *= f.exact()?;
                }
                Some(acc)
            }
            Scalar::Sum(fs) => {
                let mut acc = rat(0);
                for f in fs {
                    acc += f.exact()?;
                }
                Some(acc)
            }
        }
    }

    pub fn latex(&self) -> String {
        match self {
            Scalar::Rat(x) => {
                if x.is_integer() {
                    format!("{}", x.numer())
                } else {
                    format!("\\tfrac{{{}}}{{{}}}", x.numer(), x.denom())
                }
            }
            Scalar::Pi => "\\pi".to_string(),
            Scalar::GammaRatio { num, den } => {
                let gam = |xs: &[Rational]| {
                    xs.iter()
                        .map(|x| format!("\\Gamma({})", format_rational(x)))
                        .collect::<Vec<_>>()
                        .join("\\,")
                };
                if den.is_empty() {
                    gam(num)
                } else if num.is_empty() {
                    format!("\\frac{{1}}{{{}}}", gam(den))
                } else {
                    format!("\\frac{{{}}}{{{}}}", gam(num), gam(den))
                }
            }
            Scalar::SinPi(x) => format!("\\sin(\\pi {})", format_rational(x)),
            Scalar::CosPi(x) => format!("\\cos(\\pi {})", format_rational(x)),
            Scalar::ExpIPi(x) => format!("e^{{i\\pi {}}}", format_rational(x)),
            Scalar::Neg(s) => format!("-{}", s.latex()),
            Scalar::Inv(s) => format!("\\frac{{1}}{{{}}}", s.latex()),
            Scalar::Prod(fs) => fs
                .iter()
                .map(|f| f.latex())
                .collect::<Vec<_>>()
                .join(" \\cdot "),
            Scalar::Sum(fs) => {
                let body = fs.iter().map(|f| f.latex()).collect::<Vec<_>>().join(" + ");
                format!("\\left({body}\\right)")
            }
        }
    }

    /// Plain-text rendering for reports and JSON.
    pub fn text(&self) -> String {
        match self {
            Scalar::Rat(x) => format_rational(x),
            Scalar::Pi => "pi".to_string(),
            Scalar::GammaRatio { num, den } => {
                let gam = |xs: &[Rational]| {
                    xs.iter()
                        .map(|x| format!("G({})", format_rational(x)))
                        .collect::<Vec<_>>()
                        .join("*")
                };
                if den.is_empty() {
                    gam(num)
                } else {
                    format!("{}/({})", gam(num), gam(den))
                }
            }
            Scalar::SinPi(x) => format!("sin(pi*{})", format_rational(x)),
            Scalar::CosPi(x) => format!("cos(pi*{})", format_rational(x)),
            Scalar::ExpIPi(x) => format!("exp(i*pi*{})", format_rational(x)),
            Scalar::Neg(s) => format!("-({})", s.text()),
            Scalar::Inv(s) => format!("1/({})", s.text()),
            Scalar::Prod(fs) => fs.iter().map(|f| f.text()).collect::<Vec<_>>().join("*"),
            Scalar::Sum(fs) => {
                let body = fs.iter().map(|f| f.text()).collect::<Vec<_>>().join("+");
                format!("({body})")
            }
        }
    }
}
