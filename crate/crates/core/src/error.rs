//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Digamma (or gamma) evaluated at a non-positive integer.
    #[error("pole at non-positive integer argument {0}")]
    Pole(String),

    /// Principal power/log of zero, or an evaluation point outside the
    /// summable region of every available series form.
    #[error("domain error: {0}")]
    Domain(String),

    /// A ₂F₁ with non-positive lower parameter that is not rescued by a
    /// smaller-or-equal non-positive upper parameter.
    #[error("undefined hypergeometric series F({a}, {b}; {c}; ·)")]
    UndefinedSeries { a: String, b: String, c: String },

    /// Series summation hit the term cap before stagnating.
    #[error("series did not converge within {max_terms} terms (estimate {estimate:.3e})")]
    NoConvergence { max_terms: usize, estimate: f64 },

    /// A case-specific constructor was called with parameters of another case.
    #[error("wrong degeneracy case: expected {expected}, got {got}")]
    WrongCase { expected: String, got: String },

    /// Numeric cross-validation contradicted the symbolic orbit grouping.
    #[error("inconsistent orbit grouping: {0}")]
    InconsistentOrbit(String),

    /// No admissible sample point exists for an identity record.
    #[error("empty sample domain for identity {0}")]
    EmptyDomain(String),

    /// Malformed rational / complex literal.
    #[error("parse error: bad token `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("unknown solution label `{0}`")]
    UnknownSolutionLabel(String),

    #[error("evaluation point {0} is a singular point")]
    SingularPoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
