//! Classification and numerical verification toolkit for degenerate Gauss
//! hypergeometric equations: exact-rational parameter classification, the
//! atlas of 24 Kummer solution shapes, explicit solution bases (terminating,
//! non-terminating, logarithmic), complex evaluation, and an identity
//! verification harness.
//!
//! ```
//! use kummer24_core::{degeneracy_case, CaseTag, EquationParams};
//!
//! // an equation with unipotent monodromy; both z = 1 and z = ∞ are
//! // logarithmic points
//! let p = EquationParams::parse("-1", "-3", "-8").unwrap();
//! let dc = degeneracy_case(&p);
//! assert_eq!(dc.tag, CaseTag::Case6);
//! assert_eq!((dc.witness.ell, dc.witness.n, dc.witness.m),
//!            (Some(1), Some(2), Some(4)));
//!
//! // its atlas has 16 distinct well-defined series
//! let descs = kummer24_core::atlas::enumerate_24(&p);
//! assert_eq!(kummer24_core::atlas::distinct_series_count(&descs), 16);
//! ```

pub mod atlas;
pub mod cases;
pub mod degeneracy;
pub mod error;
pub mod monodromy;
pub mod params;
pub mod rational;
pub mod scalar;
pub mod series;
pub mod solution;
pub mod special;
pub mod transforms;
pub mod verify;

pub use degeneracy::{degeneracy_case, is_logarithmic_point, CaseTag, DegeneracyCase, Witness};
pub use error::{Error, Result};
pub use monodromy::{classify_monodromy, MonodromyClass};
pub use params::{local_exponents, EquationParams, LocalExponents, SingPoint};
pub use rational::{format_rational, parse_rational, Rational};
pub use transforms::{ArgKind, Atom, FracLinTransform};
