//! Evaluable solution expressions.
//!
//! A solution expression is a sum of terms, each a product
//!
//! ```text
//!   constant · ∏ atom^exponent · [log g(z)] · series
//! ```
//!
//! where the series slot holds 1, a Gauss series in one of the six Möbius
//! arguments, or a coefficient-rule sum (finite or infinite, optionally
//! ψ-weighted). Every node knows its value and first two derivatives, so an
//! expression can be plugged into the differential equation directly. For
//! rational arguments and rational building blocks the same tree evaluates
//! in exact arithmetic.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::rational::{
    as_i64, factorial_i64, format_rational, harmonic, is_positive_integer, pochhammer_rat, rat,
    to_f64, Rational,
};
use crate::scalar::Scalar;
use crate::series::{routed_domain_ok, series_status, EvalOptions, SeriesStatus};
use crate::special::{digamma_rat, principal_power};
use crate::transforms::{ArgKind, Atom};

/// Value together with first and second derivative (with respect to the
/// evaluation variable).
pub type Triple = (Complex64, Complex64, Complex64);

fn tzero() -> Triple {
    let z = Complex64::zero();
    (z, z, z)
}

/// Argument of a logarithm factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LogArg {
    /// log z
    Z,
    /// log(1−z)
    OneMinusZ,
    /// log(z/(1−z))
    ZOver1mZ,
    /// log((1−z)/z)
    OneMinusZOverZ,
    /// log(1/z)
    InvZ,
}

impl LogArg {
    fn value(self, z: Complex64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let g = match self {
            LogArg::Z => z,
            LogArg::OneMinusZ => one - z,
            LogArg::ZOver1mZ => z / (one - z),
            LogArg::OneMinusZOverZ => (one - z) / z,
            LogArg::InvZ => 1.0 / z,
        };
        crate::special::principal_log(g)
    }

    /// (log g)' and (log g)''.
    fn log_derivs(self, z: Complex64) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        match self {
            LogArg::Z => (1.0 / z, -1.0 / (z * z)),
            LogArg::OneMinusZ => {
                let d = z - one;
                (1.0 / d, -1.0 / (d * d))
            }
            LogArg::ZOver1mZ => {
                let u = 1.0 / z;
                let v = 1.0 / (one - z);
                (u + v, -u * u + v * v)
            }
            LogArg::OneMinusZOverZ => {
                let u = 1.0 / z;
                let v = 1.0 / (one - z);
                (-u - v, u * u - v * v)
            }
            LogArg::InvZ => (-1.0 / z, 1.0 / (z * z)),
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            LogArg::Z => "z",
            LogArg::OneMinusZ => "1-z",
            LogArg::ZOver1mZ => "z/(1-z)",
            LogArg::OneMinusZOverZ => "(1-z)/z",
            LogArg::InvZ => "1/z",
        }
    }
}

/// Argument powering a coefficient-rule sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SumArg {
    Z,
    NegZ,
    OneMinusZ,
    ZMinusOne,
    InvZ,
    /// z/(z−1)
    ZOverZm1,
    /// z/(1−z)
    ZOver1mZ,
    /// (z−1)/z
    Zm1OverZ,
    /// (1−z)/z
    OneMinusZOverZ,
    /// 1/(z−1)
    InvZm1,
    /// 1/(1−z)
    InvOneMinusZ,
}

impl SumArg {
    /// w(z), w'(z), w''(z)
    fn eval(self, z: Complex64) -> Triple {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::zero();
        match self {
            SumArg::Z => (z, one, zero),
            SumArg::NegZ => (-z, -one, zero),
            SumArg::OneMinusZ => (one - z, -one, zero),
            SumArg::ZMinusOne => (z - one, one, zero),
            SumArg::InvZ => (1.0 / z, -1.0 / (z * z), 2.0 / (z * z * z)),
            SumArg::ZOverZm1 => {
                let d = z - one;
                (z / d, -1.0 / (d * d), 2.0 / (d * d * d))
            }
            SumArg::ZOver1mZ => {
                let d = one - z;
                (z / d, 1.0 / (d * d), 2.0 / (d * d * d))
            }
            SumArg::Zm1OverZ => ((z - one) / z, 1.0 / (z * z), -2.0 / (z * z * z)),
            SumArg::OneMinusZOverZ => ((one - z) / z, -1.0 / (z * z), 2.0 / (z * z * z)),
            SumArg::InvZm1 => {
                let d = z - one;
                (1.0 / d, -1.0 / (d * d), 2.0 / (d * d * d))
            }
            SumArg::InvOneMinusZ => {
                let d = one - z;
                (1.0 / d, 1.0 / (d * d), 2.0 / (d * d * d))
            }
        }
    }

    /// Exact rational value of w at rational z (z ∉ {0, 1}).
    fn eval_exact(self, z: &Rational) -> (Rational, Rational, Rational) {
        let one = Rational::one();
        let zero = rat(0);
        match self {
            SumArg::Z => (z.clone(), one, zero),
            SumArg::NegZ => (-z.clone(), -one, zero),
            SumArg::OneMinusZ => (&one - z, -one.clone(), zero),
            SumArg::ZMinusOne => (z - &one, one, zero),
            SumArg::InvZ => {
                let zi = &one / z;
                (zi.clone(), -&zi * &zi, rat(2) * &zi * &zi * &zi)
            }
            SumArg::ZOverZm1 => {
                let d = z - &one;
                let di = &one / &d;
                (z / &d, -&di * &di, rat(2) * &di * &di * &di)
            }
            SumArg::ZOver1mZ => {
                let d = &one - z;
                let di = &one / &d;
                (z / &d, &di * &di, rat(2) * &di * &di * &di)
            }
            SumArg::Zm1OverZ => {
                let zi = &one / z;
                ((z - &one) / z, &zi * &zi, rat(-2) * &zi * &zi * &zi)
            }
            SumArg::OneMinusZOverZ => {
                let zi = &one / z;
                ((&one - z) / z, -&zi * &zi, rat(2) * &zi * &zi * &zi)
            }
            SumArg::InvZm1 => {
                let di = &one / (z - &one);
                (di.clone(), -&di * &di, rat(2) * &di * &di * &di)
            }
            SumArg::InvOneMinusZ => {
                let di = &one / (&one - z);
                (di.clone(), &di * &di, rat(2) * &di * &di * &di)
            }
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            SumArg::Z => "z",
            SumArg::NegZ => "-z",
            SumArg::OneMinusZ => "1-z",
            SumArg::ZMinusOne => "z-1",
            SumArg::InvZ => "1/z",
            SumArg::ZOverZm1 => "z/(z-1)",
            SumArg::ZOver1mZ => "z/(1-z)",
            SumArg::Zm1OverZ => "(z-1)/z",
            SumArg::OneMinusZOverZ => "(1-z)/z",
            SumArg::InvZm1 => "1/(z-1)",
            SumArg::InvOneMinusZ => "1/(1-z)",
        }
    }
}

/// One multiplicative factor of a coefficient rule, as a function of the
/// summation index k.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffFactor {
    /// (x)_k
    Poch(Rational),
    /// 1/(x)_k
    InvPoch(Rational),
    /// (p+k)!  (requires p+k ≥ 0 over the summation range)
    FactAsc(i64),
    /// 1/(p+k)!
    InvFactAsc(i64),
    /// (p−k)!  (requires p−k ≥ 0 over the summation range)
    FactDesc(i64),
    /// 1/(p−k)!
    InvFactDesc(i64),
    /// (−1)^k
    AltSign,
}

impl CoeffFactor {
    /// exact value at k
    fn value_at(&self, k: i64) -> Rational {
        match self {
            CoeffFactor::Poch(x) => pochhammer_rat(x, k as u32),
            CoeffFactor::InvPoch(x) => Rational::one() / pochhammer_rat(x, k as u32),
            CoeffFactor::FactAsc(p) => factorial_i64(p + k),
            CoeffFactor::InvFactAsc(p) => Rational::one() / factorial_i64(p + k),
            CoeffFactor::FactDesc(p) => factorial_i64(p - k),
            CoeffFactor::InvFactDesc(p) => Rational::one() / factorial_i64(p - k),
            CoeffFactor::AltSign => rat(if k % 2 == 0 { 1 } else { -1 }),
        }
    }

    /// exact ratio value(k+1)/value(k)
    fn ratio_at(&self, k: i64) -> Rational {
        match self {
            CoeffFactor::Poch(x) => x + rat(k),
            CoeffFactor::InvPoch(x) => Rational::one() / (x + rat(k)),
            CoeffFactor::FactAsc(p) => rat(p + k + 1),
            CoeffFactor::InvFactAsc(p) => Rational::one() / rat(p + k + 1),
            CoeffFactor::FactDesc(p) => Rational::one() / rat(p - k),
            CoeffFactor::InvFactDesc(p) => rat(p - k),
            CoeffFactor::AltSign => rat(-1),
        }
    }

    /// float ratio value(k+1)/value(k); `xf` caches the rational parameter
    fn ratio_f64(&self, xf: f64, k: i64) -> f64 {
        let kf = k as f64;
        match self {
            CoeffFactor::Poch(_) => xf + kf,
            CoeffFactor::InvPoch(_) => 1.0 / (xf + kf),
            CoeffFactor::FactAsc(p) => (p + k + 1) as f64,
            CoeffFactor::InvFactAsc(p) => 1.0 / (p + k + 1) as f64,
            CoeffFactor::FactDesc(p) => 1.0 / (p - k) as f64,
            CoeffFactor::InvFactDesc(p) => (p - k) as f64,
            CoeffFactor::AltSign => -1.0,
        }
    }

    fn param_f64(&self) -> f64 {
        match self {
            CoeffFactor::Poch(x) | CoeffFactor::InvPoch(x) => to_f64(x),
            _ => 0.0,
        }
    }

    fn text(&self) -> String {
        match self {
            CoeffFactor::Poch(x) => format!("poch({},k)", format_rational(x)),
            CoeffFactor::InvPoch(x) => format!("1/poch({},k)", format_rational(x)),
            CoeffFactor::FactAsc(p) => format!("({p}+k)!"),
            CoeffFactor::InvFactAsc(p) => format!("1/({p}+k)!"),
            CoeffFactor::FactDesc(p) => format!("({p}-k)!"),
            CoeffFactor::InvFactDesc(p) => format!("1/({p}-k)!"),
            CoeffFactor::AltSign => "(-1)^k".to_string(),
        }
    }
}

/// ψ-weight Σ sign·ψ(offset + dir·k).
#[derive(Debug, Clone, PartialEq)]
pub struct PsiTerm {
    pub sign: i8,
    pub offset: Rational,
    pub dir: i8,
}

impl PsiTerm {
    pub fn new(sign: i8, offset: Rational, dir: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        assert!(dir == 1 || dir == -1);
        Self { sign, offset, dir }
    }

    fn arg_at(&self, k: i64) -> Rational {
        &self.offset + rat(self.dir as i64 * k)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PsiWeight {
    pub terms: Vec<PsiTerm>,
}

impl PsiWeight {
    /// Exact rational value of the weight at index k. Available when every
    /// argument is a positive integer and the signs balance, so the Euler
    /// constant cancels and only harmonic numbers remain.
    pub fn exact_at(&self, k: i64) -> Option<Rational> {
        if self.terms.iter().map(|t| t.sign as i64).sum::<i64>() != 0 {
            return None;
        }
        let mut acc = rat(0);
        for t in &self.terms {
            let arg = t.arg_at(k);
            if !is_positive_integer(&arg) {
                return None;
            }
            let h = harmonic((as_i64(&arg).unwrap() - 1) as u32);
            if t.sign > 0 {
                acc += h;
            } else {
                acc -= h;
            }
        }
        Some(acc)
    }

    fn text(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                let s = if t.sign > 0 { "+" } else { "-" };
                let d = if t.dir > 0 { "+k" } else { "-k" };
                format!("{s}psi({}{d})", format_rational(&t.offset))
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Coefficient rule: a product of factors of k, optionally ψ-weighted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoeffRule {
    pub factors: Vec<CoeffFactor>,
    pub psi: Option<PsiWeight>,
}

impl CoeffRule {
    pub fn new(factors: Vec<CoeffFactor>) -> Self {
        Self { factors, psi: None }
    }

    pub fn with_psi(factors: Vec<CoeffFactor>, psi: PsiWeight) -> Self {
        Self {
            factors,
            psi: Some(psi),
        }
    }

    /// Exact rational coefficient (without ψ-weight) at k.
    fn base_at(&self, k: i64) -> Rational {
        let mut acc = Rational::one();
        for f in &self.factors {
            acc *= f.value_at(k);
        }
        acc
    }

    fn base_ratio_at(&self, k: i64) -> Rational {
        let mut acc = Rational::one();
        for f in &self.factors {
            acc *= f.ratio_at(k);
        }
        acc
    }
}

/// The series slot of a term.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesPart {
    One,
    /// F(a, b; c; φ(z)) under the rescue convention
    Hpg {
        a: Rational,
        b: Rational,
        c: Rational,
        arg: ArgKind,
    },
    /// Σ_{k=lo}^{hi} rule(k) · w(z)^k  (hi = None: infinite)
    Sum {
        arg: SumArg,
        lo: i64,
        hi: Option<i64>,
        rule: CoeffRule,
    },
}

/// One product term.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub constant: Scalar,
    pub powers: Vec<(Atom, Rational)>,
    pub log: Option<LogArg>,
    pub series: SeriesPart,
}

impl Term {
    pub fn new(constant: Scalar, powers: Vec<(Atom, Rational)>, series: SeriesPart) -> Self {
        Self {
            constant,
            powers,
            log: None,
            series,
        }
    }

    pub fn with_log(mut self, log: LogArg) -> Self {
        self.log = Some(log);
        self
    }
}

/// A labelled, evaluable solution expression for a specific equation.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSpec {
    pub label: String,
    /// the equation this expression solves
    pub params: EquationParams,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Terms(Vec<Term>),
    /// constant · ∏ atom^exponent · inner(φ(z)) — used for expressions
    /// obtained by an argument substitution of a whole expression
    Composed {
        constant: Scalar,
        powers: Vec<(Atom, Rational)>,
        arg: ArgKind,
        inner: Vec<Term>,
    },
}

impl SolutionSpec {
    pub fn new(label: impl Into<String>, params: EquationParams, terms: Vec<Term>) -> Self {
        Self {
            label: label.into(),
            params,
            body: Body::Terms(terms),
        }
    }

    pub fn composed(
        label: impl Into<String>,
        params: EquationParams,
        constant: Scalar,
        powers: Vec<(Atom, Rational)>,
        arg: ArgKind,
        inner: Vec<Term>,
    ) -> Self {
        Self {
            label: label.into(),
            params,
            body: Body::Composed {
                constant,
                powers,
                arg,
                inner,
            },
        }
    }

    pub fn terms(&self) -> &[Term] {
        match &self.body {
            Body::Terms(t) => t,
            Body::Composed { inner, .. } => inner,
        }
    }

    /// Scale the constant of one term by an exact factor; the mutation hook
    /// used by sensitivity checks.
    pub fn scale_term_constant(&self, index: usize, factor: Rational) -> SolutionSpec {
        let mut out = self.clone();
        let terms = match &mut out.body {
            Body::Terms(t) => t,
            Body::Composed { inner, .. } => inner,
        };
        let t = &mut terms[index];
        t.constant = t.constant.clone().mul(Scalar::rat(factor));
        out.label = format!("{}~mut{}", self.label, index);
        out
    }

    /// Value at z.
    pub fn eval(&self, z: Complex64, opts: &EvalOptions) -> Result<Complex64> {
        Ok(self.eval_with_derivatives(z, opts)?.0)
    }

    /// Value at z together with the cancellation scale: the sum of the
    /// moduli of the individual term values. A value much smaller than the
    /// scale signals catastrophic cancellation between terms and bounds the
    /// attainable relative accuracy at that point.
    pub fn eval_scaled(&self, z: Complex64, opts: &EvalOptions) -> Result<(Complex64, f64)> {
        match &self.body {
            Body::Terms(terms) => {
                let mut acc = Complex64::zero();
                let mut scale = 0.0f64;
                for t in terms {
                    let ((v, _, _), sc) = eval_term(t, z, opts)?;
                    acc += v;
                    scale += sc.max(v.norm());
                }
                Ok((acc, scale))
            }
            Body::Composed {
                constant,
                powers,
                arg,
                inner,
            } => {
                let (w, _, _) = arg.eval(z);
                let (p, _, _) = powers_triple(powers, z)?;
                let outer = (constant.eval() * p).norm();
                let mut acc = Complex64::zero();
                let mut scale = 0.0f64;
                for t in inner {
                    let ((v, _, _), sc) = eval_term(t, w, opts)?;
                    acc += v;
                    scale += sc.max(v.norm());
                }
                Ok((constant.eval() * p * acc, outer * scale))
            }
        }
    }

    /// Value and first two derivatives at z.
    pub fn eval_with_derivatives(&self, z: Complex64, opts: &EvalOptions) -> Result<Triple> {
        match &self.body {
            Body::Terms(terms) => eval_terms(terms, z, opts),
            Body::Composed {
                constant,
                powers,
                arg,
                inner,
            } => {
                let (w, w1, w2) = arg.eval(z);
                let (u, u1, u2) = eval_terms(inner, w, opts)?;
                let (p, p1, p2) = powers_triple(powers, z)?;
                let c = constant.eval();
                // y = c·P(z)·u(w(z))
                let y = p * u;
                let y1 = p1 * u + p * u1 * w1;
                let y2 = p2 * u + 2.0 * p1 * u1 * w1 + p * (u2 * w1 * w1 + u1 * w2);
                Ok((c * y, c * y1, c * y2))
            }
        }
    }

    /// Exact evaluation at rational z for expressions built entirely from
    /// rational pieces (integer prefactor exponents, no logs, terminating
    /// series, rational-valued constants and ψ-weights). Returns value and
    /// two derivatives, or None when the expression is not exact.
    pub fn eval_exact(&self, z: &Rational) -> Option<(Rational, Rational, Rational)> {
        match &self.body {
            Body::Terms(terms) => eval_terms_exact(terms, z),
            Body::Composed {
                constant,
                powers,
                arg,
                inner,
            } => {
                let kind = arg_to_sumarg(*arg);
                let (w, w1, w2) = kind.eval_exact(z);
                let (u, u1, u2) = eval_terms_exact(inner, &w)?;
                let (p, p1, p2) = powers_triple_exact(powers, z)?;
                let c = constant.exact()?;
                let y = &p * &u;
                let y1 = &p1 * &u + &p * &u1 * &w1;
                let y2 = &p2 * &u + rat(2) * &p1 * &u1 * &w1 + &p * (&u2 * &w1 * &w1 + &u1 * &w2);
                Some((&c * y, &c * y1, &c * y2))
            }
        }
    }

    /// Can every series node be summed at z (directly or through the Pfaff
    /// route for Gauss nodes)?
    pub fn domain_ok(&self, z: Complex64) -> bool {
        if z.norm() < 1e-12 || (z - 1.0).norm() < 1e-12 {
            return false;
        }
        match &self.body {
            Body::Terms(terms) => terms.iter().all(|t| term_domain_ok(t, z)),
            Body::Composed { arg, inner, .. } => {
                let (w, _, _) = arg.eval(z);
                if w.norm() < 1e-12 || (w - 1.0).norm() < 1e-12 {
                    return false;
                }
                inner.iter().all(|t| term_domain_ok(t, w))
            }
        }
    }

    /// True when no term carries an infinite series (everything is a finite
    /// sum or a terminating Gauss series).
    pub fn is_finite_expression(&self) -> bool {
        self.terms().iter().all(|t| match &t.series {
            SeriesPart::One => true,
            SeriesPart::Hpg { a, b, c, .. } => {
                matches!(series_status(a, b, c), SeriesStatus::Terminating(_))
            }
            SeriesPart::Sum { hi, .. } => hi.is_some(),
        })
    }

    pub fn latex(&self) -> String {
        let term_tex = |t: &Term| {
            let mut parts = vec![t.constant.latex()];
            for (atom, e) in &t.powers {
                parts.push(format!("({})^{{{}}}", atom, format_rational(e)));
            }
            if let Some(l) = t.log {
                parts.push(format!("\\log\\left({}\\right)", l.text()));
            }
            match &t.series {
                SeriesPart::One => {}
                SeriesPart::Hpg { a, b, c, arg } => parts.push(format!(
                    "{{}}_2F_1\\!\\left(\\begin{{matrix}}{},\\,{}\\\\{}\\end{{matrix}};\\,{}\\right)",
                    format_rational(a),
                    format_rational(b),
                    format_rational(c),
                    arg
                )),
                SeriesPart::Sum { arg, lo, hi, rule } => {
                    let up = hi.map_or("\\infty".to_string(), |h| h.to_string());
                    let psi = rule.psi.as_ref().map(|p| p.text()).unwrap_or_default();
                    let coeff = rule
                        .factors
                        .iter()
                        .map(|f| f.text())
                        .collect::<Vec<_>>()
                        .join(" ");
                    parts.push(format!(
                        "\\sum_{{k={lo}}}^{{{up}}} \\mathrm{{{}}}\\,[{psi}]\\,({})^k",
                        coeff.replace('\\', ""),
                        arg.text()
                    ));
                }
            }
            parts.join("\\,")
        };
        match &self.body {
            Body::Terms(terms) => terms.iter().map(term_tex).collect::<Vec<_>>().join(" + "),
            Body::Composed {
                constant,
                powers,
                arg,
                inner,
            } => {
                let mut head = vec![constant.latex()];
                for (atom, e) in powers {
                    head.push(format!("({})^{{{}}}", atom, format_rational(e)));
                }
                format!(
                    "{}\\,\\Big[{}\\Big]_{{z\\mapsto {}}}",
                    head.join("\\,"),
                    inner.iter().map(term_tex).collect::<Vec<_>>().join(" + "),
                    arg
                )
            }
        }
    }
}

fn arg_to_sumarg(kind: ArgKind) -> SumArg {
    match kind {
        ArgKind::Z => SumArg::Z,
        ArgKind::ZOverZm1 => SumArg::ZOverZm1,
        ArgKind::OneMinusZ => SumArg::OneMinusZ,
        ArgKind::OneMinusInvZ => SumArg::Zm1OverZ,
        ArgKind::InvZ => SumArg::InvZ,
        ArgKind::InvOneMinusZ => SumArg::InvOneMinusZ,
    }
}

fn term_domain_ok(t: &Term, z: Complex64) -> bool {
    match &t.series {
        SeriesPart::One => true,
        SeriesPart::Hpg { a, b, c, arg } => match series_status(a, b, c) {
            SeriesStatus::Terminating(_) => true,
            SeriesStatus::Undefined => false,
            SeriesStatus::NonTerminating => {
                // a non-positive integer c−a or c−b turns the Pfaff image
                // into a polynomial, reachable from anywhere
                if crate::rational::is_nonpositive_integer(&(c - a))
                    || crate::rational::is_nonpositive_integer(&(c - b))
                {
                    return true;
                }
                let (w, _, _) = arg.eval(z);
                routed_domain_ok(w)
            }
        },
        SeriesPart::Sum { arg, hi, .. } => {
            if hi.is_some() {
                true
            } else {
                let (w, _, _) = arg.eval(z);
                w.norm() <= crate::series::SUMMATION_RADIUS
            }
        }
    }
}

/// ∏ atom^e with derivatives, complex path.
fn powers_triple(powers: &[(Atom, Rational)], z: Complex64) -> Result<Triple> {
    let mut p = Complex64::new(1.0, 0.0);
    let mut logd = Complex64::zero(); // Σ e·g'/g
    let mut logd1 = Complex64::zero(); // its derivative
    for (atom, e) in powers {
        let g = atom.eval(z);
        let gp = Complex64::new(atom.derivative(), 0.0);
        p *= principal_power(g, e)?;
        let ef = to_f64(e);
        let r = gp / g;
        logd += ef * r;
        logd1 -= ef * r * r;
    }
    let p1 = p * logd;
    let p2 = p * (logd * logd + logd1);
    Ok((p, p1, p2))
}

/// Exact counterpart; requires integer exponents.
fn powers_triple_exact(powers: &[(Atom, Rational)], z: &Rational) -> Option<(Rational, Rational, Rational)> {
    let one = Rational::one();
    let mut p = one.clone();
    let mut logd = rat(0);
    let mut logd1 = rat(0);
    for (atom, e) in powers {
        let k = as_i64(e)?;
        let g = match atom {
            Atom::Z => z.clone(),
            Atom::NegZ => -z.clone(),
            Atom::OneMinusZ => &one - z,
            Atom::ZMinusOne => z - &one,
        };
        if g.is_zero() {
            return None;
        }
        let gp = rat(match atom {
            Atom::Z | Atom::ZMinusOne => 1,
            Atom::NegZ | Atom::OneMinusZ => -1,
        });
        // g^k exactly
        let mut gp_pow = one.clone();
        for _ in 0..k.unsigned_abs() {
            gp_pow *= &g;
        }
        if k < 0 {
            gp_pow = &one / gp_pow;
        }
        p *= gp_pow;
        let r = &gp / &g;
        logd += rat(k) * &r;
        logd1 -= rat(k) * &r * &r;
    }
    let p1 = &p * &logd;
    let p2 = &p * (&logd * &logd + &logd1);
    Some((p, p1, p2))
}

/// Gauss series value and two derivatives with respect to its own argument,
/// summed termwise; the terminating path uses exact coefficients, the
/// convergent path requires |x| ≤ 0.9 or a summable Pfaff image.
fn gauss_triple(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: Complex64,
    opts: &EvalOptions,
) -> Result<(Triple, f64)> {
    match series_status(a, b, c) {
        SeriesStatus::Undefined => Err(Error::UndefinedSeries {
            a: format_rational(a),
            b: format_rational(b),
            c: format_rational(c),
        }),
        SeriesStatus::Terminating(d) => {
            let coeffs = crate::series::terminating_coefficients(a, b, c, d);
            let mut s = tzero();
            let mut peak = 0.0f64;
            let mut xpow = [Complex64::new(1.0, 0.0); 3]; // x^k, x^{k-1}, x^{k-2}
            for (k, ck) in coeffs.iter().enumerate() {
                let cf = to_f64(ck);
                let kf = k as f64;
                let t0 = cf * xpow[0];
                peak = peak.max(t0.norm());
                s.0 += t0;
                if k >= 1 {
                    s.1 += cf * kf * xpow[1];
                }
                if k >= 2 {
                    s.2 += cf * kf * (kf - 1.0) * xpow[2];
                }
                xpow[2] = xpow[1];
                xpow[1] = xpow[0];
                xpow[0] *= x;
            }
            Ok((s, peak))
        }
        SeriesStatus::NonTerminating => {
            // a Pfaff transform with non-positive integer c−b (or c−a)
            // replaces the series by an exact polynomial; always prefer it
            if crate::rational::is_nonpositive_integer(&(c - b)) {
                return gauss_triple_pfaff(a, b, c, x, opts);
            }
            if crate::rational::is_nonpositive_integer(&(c - a)) {
                return gauss_triple_pfaff(b, a, c, x, opts);
            }
            if x.norm() <= crate::series::SUMMATION_RADIUS {
                return gauss_triple_direct(a, b, c, x, opts);
            }
            if (x / (x - 1.0)).norm() <= crate::series::SUMMATION_RADIUS {
                return gauss_triple_pfaff(a, b, c, x, opts);
            }
            Err(Error::Domain(format!(
                "Gauss argument {x} outside the summable region"
            )))
        }
    }
}

/// F(a,b;c;x) = (1−x)^{−a} F(a, c−b; c; x/(x−1)) with derivatives.
fn gauss_triple_pfaff(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: Complex64,
    opts: &EvalOptions,
) -> Result<(Triple, f64)> {
    let w = x / (x - 1.0);
    let ((g, g1, g2), peak) = gauss_triple(a, &(c - b), c, w, opts)?;
    let one = Complex64::new(1.0, 0.0);
    let af = to_f64(a);
    let p = principal_power(one - x, &(-a))?;
    let p1 = p * af / (one - x);
    let p2 = p1 * (af + 1.0) / (one - x);
    let d = x - 1.0;
    let (w1, w2) = (-1.0 / (d * d), 2.0 / (d * d * d));
    let y = p * g;
    let y1 = p1 * g + p * g1 * w1;
    let y2 = p2 * g + 2.0 * p1 * g1 * w1 + p * (g2 * w1 * w1 + g1 * w2);
    Ok(((y, y1, y2), p.norm() * peak))
}

fn gauss_triple_direct(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: Complex64,
    opts: &EvalOptions,
) -> Result<(Triple, f64)> {
    let (af, bf, cf) = (to_f64(a), to_f64(b), to_f64(c));
    let mut acc = [
        crate::series::Compensated::default(),
        crate::series::Compensated::default(),
        crate::series::Compensated::default(),
    ];
    let mut coeff = 1.0f64; // (a)_k (b)_k / ((c)_k k!)
    let mut xpow = [Complex64::new(1.0, 0.0); 3];
    let mut small_run = 0usize;
    let mut peak = 0.0f64;
    for k in 0..opts.max_terms {
        let kf = k as f64;
        let t0 = coeff * xpow[0];
        peak = peak.max(t0.norm());
        acc[0].add(t0);
        if k >= 1 {
            acc[1].add(coeff * kf * xpow[1]);
        }
        if k >= 2 {
            acc[2].add(coeff * kf * (kf - 1.0) * xpow[2]);
        }
        let p0 = acc[0].value().norm().max(f64::MIN_POSITIVE);
        // the derivative sums converge at the same ratio; gate on the value
        // term with a polynomial safety factor
        if t0.norm() * (kf + 2.0) * (kf + 2.0) < opts.rel_tol * p0 {
            small_run += 1;
            if small_run >= opts.stagnation_window {
                return Ok(((acc[0].value(), acc[1].value(), acc[2].value()), peak));
            }
        } else {
            small_run = 0;
        }
        coeff *= (af + kf) * (bf + kf) / ((cf + kf) * (kf + 1.0));
        xpow[2] = xpow[1];
        xpow[1] = xpow[0];
        xpow[0] *= x;
    }
    Err(Error::NoConvergence {
        max_terms: opts.max_terms,
        estimate: 0.0,
    })
}

/// Exact triple of a terminating Gauss series at rational argument.
fn gauss_triple_exact(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x: &Rational,
) -> Option<(Rational, Rational, Rational)> {
    let d = match series_status(a, b, c) {
        SeriesStatus::Terminating(d) => d,
        _ => return None,
    };
    let coeffs = crate::series::terminating_coefficients(a, b, c, d);
    let mut s = (rat(0), rat(0), rat(0));
    let mut xp0 = Rational::one();
    let mut xp1 = Rational::one();
    let mut xp2 = Rational::one();
    for (k, ck) in coeffs.iter().enumerate() {
        let kr = rat(k as i64);
        s.0 += ck * &xp0;
        if k >= 1 {
            s.1 += ck * &kr * &xp1;
        }
        if k >= 2 {
            s.2 += ck * &kr * (&kr - Rational::one()) * &xp2;
        }
        xp2 = xp1.clone();
        xp1 = xp0.clone();
        xp0 *= x;
    }
    Some(s)
}

/// Coefficient-rule sum with derivatives with respect to its own argument.
fn sum_triple(
    rule: &CoeffRule,
    lo: i64,
    hi: Option<i64>,
    w: Complex64,
    opts: &EvalOptions,
) -> Result<(Triple, f64)> {
    let mut acc = [
        crate::series::Compensated::default(),
        crate::series::Compensated::default(),
        crate::series::Compensated::default(),
    ];
    // exact start value, then float ratio recurrence
    let mut coeff = to_f64(&rule.base_at(lo));
    let factor_params: Vec<f64> = rule.factors.iter().map(|f| f.param_f64()).collect();
    let mut wpow = [Complex64::new(1.0, 0.0); 3];
    for _ in 0..lo.max(0) {
        wpow[2] = wpow[1];
        wpow[1] = wpow[0];
        wpow[0] *= w;
    }
    // ψ values maintained by recurrence; exact weights are worthwhile only
    // on short finite ranges
    let use_exact_psi = hi.is_some_and(|h| h - lo <= 64);
    let mut psi_vals: Vec<Complex64> = Vec::new();
    if let Some(psi) = &rule.psi {
        for t in &psi.terms {
            psi_vals.push(digamma_rat(&t.arg_at(lo))?);
        }
    }
    let hard_hi = hi.unwrap_or(i64::MAX);
    let mut small_run = 0usize;
    let mut k = lo;
    let mut iters = 0usize;
    let mut peak = 0.0f64;
    loop {
        if k > hard_hi {
            break;
        }
        let mut full = Complex64::new(coeff, 0.0);
        if let Some(psi) = &rule.psi {
            let mut pw = Complex64::zero();
            for (i, t) in psi.terms.iter().enumerate() {
                pw += (t.sign as f64) * psi_vals[i];
            }
            if use_exact_psi {
                if let Some(x) = psi.exact_at(k) {
                    pw = Complex64::new(to_f64(&x), 0.0);
                }
            }
            full *= pw;
        }
        let kf = k as f64;
        let t0 = full * wpow[0];
        peak = peak.max(t0.norm());
        acc[0].add(t0);
        if k >= 1 {
            acc[1].add(full * kf * wpow[1]);
        }
        if k >= 2 {
            acc[2].add(full * kf * (kf - 1.0) * wpow[2]);
        }
        if hi.is_none() {
            let p0 = acc[0].value().norm().max(f64::MIN_POSITIVE);
            if t0.norm() * (kf + 2.0) * (kf + 2.0) < opts.rel_tol * p0 {
                small_run += 1;
                if small_run >= opts.stagnation_window {
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        iters += 1;
        if iters > opts.max_terms {
            if hi.is_none() {
                return Err(Error::NoConvergence {
                    max_terms: opts.max_terms,
                    estimate: 0.0,
                });
            }
            break;
        }
        if k == hard_hi {
            break;
        }
        // advance
        for (f, &xf) in rule.factors.iter().zip(&factor_params) {
            coeff *= f.ratio_f64(xf, k);
        }
        if let Some(psi) = &rule.psi {
            for (i, t) in psi.terms.iter().enumerate() {
                let arg = t.arg_at(k);
                if t.dir > 0 {
                    psi_vals[i] += Complex64::new(1.0 / to_f64(&arg), 0.0);
                } else {
                    psi_vals[i] -= Complex64::new(1.0 / to_f64(&(arg - rat(1))), 0.0);
                }
            }
        }
        wpow[2] = wpow[1];
        wpow[1] = wpow[0];
        wpow[0] *= w;
        k += 1;
    }
    Ok(((acc[0].value(), acc[1].value(), acc[2].value()), peak))
}

/// Exact rational counterpart for finite sums.
fn sum_triple_exact(
    rule: &CoeffRule,
    lo: i64,
    hi: i64,
    w: &Rational,
) -> Option<(Rational, Rational, Rational)> {
    let mut s = (rat(0), rat(0), rat(0));
    let mut coeff = rule.base_at(lo);
    let mut wp0 = Rational::one();
    let mut wp1 = Rational::one();
    let mut wp2 = Rational::one();
    for _ in 0..lo.max(0) {
        wp2 = wp1.clone();
        wp1 = wp0.clone();
        wp0 *= w;
    }
    for k in lo..=hi {
        let mut full = coeff.clone();
        if let Some(psi) = &rule.psi {
            full *= psi.exact_at(k)?;
        }
        let kr = rat(k);
        s.0 += &full * &wp0;
        if k >= 1 {
            s.1 += &full * &kr * &wp1;
        }
        if k >= 2 {
            s.2 += &full * &kr * (&kr - Rational::one()) * &wp2;
        }
        if k == hi {
            break;
        }
        coeff *= rule.base_ratio_at(k);
        wp2 = wp1.clone();
        wp1 = wp0.clone();
        wp0 *= w;
    }
    Some(s)
}

/// Product rule over (powers, log, series) for one term, complex path.
/// Also returns the term's cancellation scale: |constant·prefactor·log| ×
/// the largest series term.
fn eval_term(t: &Term, z: Complex64, opts: &EvalOptions) -> Result<(Triple, f64)> {
    let c = t.constant.eval();
    let (p, p1, p2) = powers_triple(&t.powers, z)?;
    let (l, l1, l2) = match t.log {
        None => (Complex64::new(1.0, 0.0), Complex64::zero(), Complex64::zero()),
        Some(kind) => {
            let v = kind.value(z)?;
            let (d1, d2) = kind.log_derivs(z);
            (v, d1, d2)
        }
    };
    let ((s, s1, s2), peak) = match &t.series {
        SeriesPart::One => (
            (Complex64::new(1.0, 0.0), Complex64::zero(), Complex64::zero()),
            1.0,
        ),
        SeriesPart::Hpg { a, b, c: cc, arg } => {
            let (x, x1, x2) = arg.eval(z);
            let ((g, g1, g2), peak) = gauss_triple(a, b, cc, x, opts)?;
            ((g, g1 * x1, g2 * x1 * x1 + g1 * x2), peak)
        }
        SeriesPart::Sum { arg, lo, hi, rule } => {
            let (w, w1, w2) = arg.eval(z);
            let ((g, g1, g2), peak) = sum_triple(rule, *lo, *hi, w, opts)?;
            ((g, g1 * w1, g2 * w1 * w1 + g1 * w2), peak)
        }
    };
    // triple product rule
    let v = p * l * s;
    let v1 = p1 * l * s + p * l1 * s + p * l * s1;
    let v2 = p2 * l * s
        + p * l2 * s
        + p * l * s2
        + 2.0 * (p1 * l1 * s + p1 * l * s1 + p * l1 * s1);
    let scale = (c * p * l).norm() * peak;
    Ok(((c * v, c * v1, c * v2), scale))
}

fn eval_terms(terms: &[Term], z: Complex64, opts: &EvalOptions) -> Result<Triple> {
    let mut acc = tzero();
    for t in terms {
        let ((v, v1, v2), _) = eval_term(t, z, opts)?;
        acc.0 += v;
        acc.1 += v1;
        acc.2 += v2;
    }
    Ok(acc)
}

fn eval_term_exact(t: &Term, z: &Rational) -> Option<(Rational, Rational, Rational)> {
    if t.log.is_some() {
        return None;
    }
    let c = t.constant.exact()?;
    let (p, p1, p2) = powers_triple_exact(&t.powers, z)?;
    let (s, s1, s2) = match &t.series {
        SeriesPart::One => (Rational::one(), rat(0), rat(0)),
        SeriesPart::Hpg { a, b, c: cc, arg } => {
            let kind = arg_to_sumarg(*arg);
            let (x, x1, x2) = kind.eval_exact(z);
            let (g, g1, g2) = gauss_triple_exact(a, b, cc, &x)?;
            (g.clone(), &g1 * &x1, &g2 * &x1 * &x1 + &g1 * &x2)
        }
        SeriesPart::Sum { arg, lo, hi, rule } => {
            let h = (*hi)?;
            let (w, w1, w2) = arg.eval_exact(z);
            let (g, g1, g2) = sum_triple_exact(rule, *lo, h, &w)?;
            (g.clone(), &g1 * &w1, &g2 * &w1 * &w1 + &g1 * &w2)
        }
    };
    let v = &p * &s;
    let v1 = &p1 * &s + &p * &s1;
    let v2 = &p2 * &s + rat(2) * &p1 * &s1 + &p * &s2;
    Some((&c * v, &c * v1, &c * v2))
}

fn eval_terms_exact(terms: &[Term], z: &Rational) -> Option<(Rational, Rational, Rational)> {
    let mut acc = (rat(0), rat(0), rat(0));
    for t in terms {
        let (v, v1, v2) = eval_term_exact(t, z)?;
        acc.0 += v;
        acc.1 += v1;
        acc.2 += v2;
    }
    Some(acc)
}

// ---------------------------------------------------------------------------
// JSON rendering (serialize-only; the documented expression-tree shape)

impl Serialize for SolutionSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(3))?;
        m.serialize_entry("label", &self.label)?;
        m.serialize_entry("equation", &self.params)?;
        match &self.body {
            Body::Terms(terms) => m.serialize_entry("terms", &TermsJson(terms))?,
            Body::Composed {
                constant,
                powers,
                arg,
                inner,
            } => {
                m.serialize_entry("constant", &constant.text())?;
                m.serialize_entry("powers", &PowersJson(powers))?;
                m.serialize_entry("substitute", &format!("{arg}"))?;
                m.serialize_entry("terms", &TermsJson(inner))?;
            }
        }
        m.end()
    }
}

struct PowersJson<'a>(&'a [(Atom, Rational)]);

impl Serialize for PowersJson<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for (atom, e) in self.0 {
            seq.serialize_element(&serde_json::json!({
                "base": format!("{atom}"),
                "exponent": format_rational(e),
            }))?;
        }
        seq.end()
    }
}

struct TermsJson<'a>(&'a [Term]);

impl Serialize for TermsJson<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for t in self.0 {
            let series = match &t.series {
                SeriesPart::One => serde_json::json!({"kind": "one"}),
                SeriesPart::Hpg { a, b, c, arg } => serde_json::json!({
                    "kind": "gauss",
                    "a": format_rational(a),
                    "b": format_rational(b),
                    "c": format_rational(c),
                    "argument": format!("{arg}"),
                }),
                SeriesPart::Sum { arg, lo, hi, rule } => serde_json::json!({
                    "kind": "sum",
                    "argument": arg.text(),
                    "from": lo,
                    "to": hi.map(|h| h.to_string()).unwrap_or_else(|| "inf".into()),
                    "coefficient": rule.factors.iter().map(|f| f.text()).collect::<Vec<_>>(),
                    "psi_weight": rule.psi.as_ref().map(|p| p.text()),
                }),
            };
            seq.serialize_element(&serde_json::json!({
                "constant": t.constant.text(),
                "powers": t.powers.iter().map(|(a, e)| {
                    serde_json::json!({"base": format!("{a}"), "exponent": format_rational(e)})
                }).collect::<Vec<_>>(),
                "log": t.log.map(|l| l.text()),
                "series": series,
            }))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratq;
    use crate::series::eval_2f1;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn opts() -> EvalOptions {
        EvalOptions::default()
    }

    fn plain_gauss(a: Rational, b: Rational, c: Rational, p: EquationParams) -> SolutionSpec {
        SolutionSpec::new(
            "t",
            p,
            vec![Term::new(
                Scalar::one(),
                vec![],
                SeriesPart::Hpg {
                    a,
                    b,
                    c,
                    arg: ArgKind::Z,
                },
            )],
        )
    }

    #[test]
    fn gauss_derivatives_match_parameter_shift() {
        // F'(a,b;c;z) = (ab/c) F(a+1,b+1;c+1;z)
        let (a, b, c) = (ratq(1, 3), ratq(2, 5), ratq(9, 7));
        let p = EquationParams::new(a.clone(), b.clone(), c.clone());
        let spec = plain_gauss(a.clone(), b.clone(), c.clone(), p.clone());
        let z = c64(0.3, 0.25);
        let (_, d1, _) = spec.eval_with_derivatives(z, &opts()).unwrap();
        let shifted = eval_2f1(
            &(&a + rat(1)),
            &(&b + rat(1)),
            &(&c + rat(1)),
            z,
            &opts(),
        )
        .unwrap()
        .value;
        let want = to_f64(&(&a * &b / &c)) * shifted;
        assert!((d1 - want).norm() / want.norm() < 1e-11);
    }

    #[test]
    fn second_derivative_via_ode() {
        // for y = F(a,b;c;z): z(1−z)y'' + (c−(a+b+1)z)y' − ab y = 0
        let (a, b, c) = (ratq(1, 3), ratq(2, 5), ratq(9, 7));
        let p = EquationParams::new(a.clone(), b.clone(), c.clone());
        let spec = plain_gauss(a.clone(), b.clone(), c.clone(), p);
        for z in [c64(0.3, 0.2), c64(-0.4, 0.35), c64(0.15, 0.5)] {
            let (y, y1, y2) = spec.eval_with_derivatives(z, &opts()).unwrap();
            let res = z * (Complex64::new(1.0, 0.0) - z) * y2
                + (to_f64(&c) - to_f64(&(&a + &b + rat(1))) * z) * y1
                - to_f64(&(&a * &b)) * y;
            assert!(res.norm() < 1e-12 * y.norm().max(1.0), "residual {res} at {z}");
        }
    }

    #[test]
    fn exact_polynomial_ode_residual_is_zero() {
        // y = F(−2, 1/3; 1/5; z) is a polynomial; the residual must vanish
        // identically in rational arithmetic
        let (a, b, c) = (rat(-2), ratq(1, 3), ratq(1, 5));
        let p = EquationParams::new(a.clone(), b.clone(), c.clone());
        let spec = plain_gauss(a.clone(), b.clone(), c.clone(), p);
        let z = ratq(3, 7);
        let (y, y1, y2) = spec.eval_exact(&z).unwrap();
        let res = &z * (Rational::one() - &z) * &y2
            + (c.clone() - (&a + &b + rat(1)) * &z) * &y1
            - &a * &b * &y;
        assert!(res.is_zero(), "exact residual {res}");
    }

    #[test]
    fn log_term_derivatives() {
        // y = log(z/(1−z)): y' = 1/z + 1/(1−z)
        let p = EquationParams::parse("1/3", "2/5", "1/7").unwrap();
        let spec = SolutionSpec::new(
            "log",
            p,
            vec![Term::new(Scalar::one(), vec![], SeriesPart::One).with_log(LogArg::ZOver1mZ)],
        );
        let z = c64(0.3, 0.4);
        let (v, v1, _) = spec.eval_with_derivatives(z, &opts()).unwrap();
        let want_v = (z / (Complex64::new(1.0, 0.0) - z)).ln();
        let want_d = 1.0 / z + 1.0 / (Complex64::new(1.0, 0.0) - z);
        assert!((v - want_v).norm() < 1e-14);
        assert!((v1 - want_d).norm() < 1e-13);
    }

    #[test]
    fn composed_chain_rule() {
        // y(z) = (1−z)^2 · u(z/(z−1)) with u(w) = F(a,b;c;w);
        // compare against direct evaluation of the composite
        let (a, b, c) = (ratq(1, 3), ratq(2, 5), ratq(9, 7));
        let inner = vec![Term::new(
            Scalar::one(),
            vec![],
            SeriesPart::Hpg {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                arg: ArgKind::Z,
            },
        )];
        let p = EquationParams::new(a.clone(), b.clone(), c.clone());
        let spec = SolutionSpec::composed(
            "comp",
            p,
            Scalar::one(),
            vec![(Atom::OneMinusZ, rat(2))],
            ArgKind::ZOverZm1,
            inner,
        );
        let z = c64(0.3, 0.3);
        let w = z / (z - 1.0);
        let (v, v1, _) = spec.eval_with_derivatives(z, &opts()).unwrap();
        let fw = eval_2f1(&a, &b, &c, w, &opts()).unwrap().value;
        let one = Complex64::new(1.0, 0.0);
        assert!((v - (one - z).powi(2) * fw).norm() < 1e-12);
        // numerical derivative cross-check (complex step is exact for
        // holomorphic functions up to O(h²))
        let h = 1e-6;
        let vp = spec.eval(z + h, &opts()).unwrap();
        let vm = spec.eval(z - h, &opts()).unwrap();
        let fd = (vp - vm) / (2.0 * h);
        assert!((v1 - fd).norm() < 1e-7, "{v1} vs {fd}");
    }

    #[test]
    fn finite_sum_with_exact_psi_weights() {
        // Σ_{k=0}^{2} [ψ(3−k)−ψ(k+1)] z^k has rational coefficient values:
        // k=0: H_2 = 3/2; k=1: H_1 − H_1 = 0; k=2: −H_2 = −3/2
        let rule = CoeffRule::with_psi(
            vec![],
            PsiWeight {
                terms: vec![
                    PsiTerm::new(1, rat(3), -1),
                    PsiTerm::new(-1, rat(1), 1),
                ],
            },
        );
        assert_eq!(rule.psi.as_ref().unwrap().exact_at(0), Some(ratq(3, 2)));
        assert_eq!(rule.psi.as_ref().unwrap().exact_at(1), Some(rat(0)));
        assert_eq!(rule.psi.as_ref().unwrap().exact_at(2), Some(ratq(-3, 2)));
        let p = EquationParams::parse("1", "1", "1").unwrap();
        let spec = SolutionSpec::new(
            "psisum",
            p,
            vec![Term::new(
                Scalar::one(),
                vec![],
                SeriesPart::Sum {
                    arg: SumArg::Z,
                    lo: 0,
                    hi: Some(2),
                    rule,
                },
            )],
        );
        let z = ratq(1, 2);
        let (v, _, _) = spec.eval_exact(&z).unwrap();
        assert_eq!(v, ratq(3, 2) - ratq(3, 8));
        let vc = spec.eval(c64(0.5, 0.0), &opts()).unwrap();
        assert!((vc.re - to_f64(&v)).abs() < 1e-14);
    }

    #[test]
    fn infinite_sum_matches_gauss_series() {
        // Σ (a)_k (b)_k / ((c)_k k!) z^k through the rule machinery
        let (a, b, c) = (ratq(1, 3), ratq(2, 5), ratq(9, 7));
        let rule = CoeffRule::new(vec![
            CoeffFactor::Poch(a.clone()),
            CoeffFactor::Poch(b.clone()),
            CoeffFactor::InvPoch(c.clone()),
            CoeffFactor::InvFactAsc(0),
        ]);
        let p = EquationParams::new(a.clone(), b.clone(), c.clone());
        let spec = SolutionSpec::new(
            "rulegauss",
            p,
            vec![Term::new(
                Scalar::one(),
                vec![],
                SeriesPart::Sum {
                    arg: SumArg::Z,
                    lo: 0,
                    hi: None,
                    rule,
                },
            )],
        );
        let z = c64(0.4, 0.3);
        let direct = eval_2f1(&a, &b, &c, z, &opts()).unwrap().value;
        let v = spec.eval(z, &opts()).unwrap();
        assert!((v - direct).norm() < 1e-13 * direct.norm());
    }

    #[test]
    fn tail_sum_coefficient_example() {
        // tail rule (a)_k (k−n−1)!/((m+k)! k!) at n=1, m=0, k=2 without the
        // Pochhammer part: 0!/(2!·2!) = 1/4
        let rule = CoeffRule::new(vec![
            CoeffFactor::FactAsc(-2), // (k−2)!
            CoeffFactor::InvFactAsc(0),
            CoeffFactor::InvFactAsc(0),
        ]);
        assert_eq!(rule.base_at(2), ratq(1, 4));
        assert_eq!(rule.base_at(3), ratq(1, 36));
        // consistency of the incremental ratio with direct values
        assert_eq!(
            rule.base_at(2) * rule.base_ratio_at(2),
            rule.base_at(3)
        );
    }

    #[test]
    fn domain_predicate() {
        let (a, b, c) = (ratq(1, 3), ratq(2, 5), ratq(9, 7));
        let p = EquationParams::new(a.clone(), b.clone(), c.clone());
        let spec = plain_gauss(a, b, c, p.clone());
        assert!(spec.domain_ok(c64(0.3, 0.3)));
        assert!(spec.domain_ok(c64(-2.0, 1.0))); // Pfaff-reachable
        assert!(!spec.domain_ok(c64(1.2, 0.4))); // near the dead zone
        assert!(!spec.domain_ok(c64(0.0, 0.0)));
    }

    #[test]
    fn mutation_hook_changes_value() {
        let (a, b, c) = (ratq(1, 3), ratq(2, 5), ratq(9, 7));
        let p = EquationParams::new(a.clone(), b.clone(), c.clone());
        let spec = plain_gauss(a, b, c, p);
        let z = c64(0.3, 0.3);
        let v = spec.eval(z, &opts()).unwrap();
        let mutated = spec.scale_term_constant(0, ratq(1_000_001, 1_000_000));
        let vm = mutated.eval(z, &opts()).unwrap();
        let rel = (v - vm).norm() / v.norm();
        assert!(rel > 1e-7 && rel < 1e-5, "relative change {rel}");
    }

    #[test]
    fn json_shape_is_stable() {
        let p = EquationParams::parse("1/3", "2/5", "9/7").unwrap();
        let spec = plain_gauss(ratq(1, 3), ratq(2, 5), ratq(9, 7), p);
        let s = serde_json::to_string(&spec).unwrap();
        assert!(s.contains(r#""label":"t""#));
        assert!(s.contains(r#""kind":"gauss""#));
        // stable bytes on re-serialization
        assert_eq!(s, serde_json::to_string(&spec).unwrap());
    }
}
