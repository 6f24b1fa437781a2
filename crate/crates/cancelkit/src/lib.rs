//! Exact-arithmetic toolkit for deciding when a finite set of polynomials of
//! degree at least two over a number field fails the dynamical cancellation
//! property, together with machine-checked obstruction certificates.
//!
//! The main entry point is [`decider::decide`]; supporting algebra lives in
//! [`numberfield`] (exact arithmetic in Q(alpha)), [`polyring`] (univariate
//! polynomial algebra, Chebyshev expansions, functional decomposition),
//! [`conjugacy`] (normal forms up to linear conjugacy), [`conics`] (rational
//! points on plane conics) and [`witness`] (invariant curves and
//! counterexample pairs).

use thiserror::Error as ThisError;

/// Library-wide error codes. The string form of each variant starts with a
/// stable machine-readable tag.
#[derive(Debug, Clone, ThisError)]
pub enum Error {
    #[error("NOT_MONIC: minimal polynomial must be monic")]
    NotMonic,
    #[error("NOT_SQUAREFREE: minimal polynomial has a repeated factor")]
    NotSquarefree,
    #[error("REDUCIBLE: minimal polynomial factors over Q ({0})")]
    Reducible(String),
    #[error("UNSUPPORTED_DEGREE: field degree {0} exceeds the cap of 16")]
    UnsupportedDegree(usize),
    #[error("DIVISION_BY_ZERO: inverse of zero requested")]
    DivisionByZero,
    #[error("ZERO_RADICAND: cannot adjoin the square root of zero")]
    ZeroRadicand,
    #[error("FIELD_MISMATCH: operands belong to different fields")]
    FieldMismatch,
    #[error("DEGREE_TOO_SMALL: operation requires degree >= 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("FORM_VIOLATION: polynomial does not have the required {0} form")]
    FormViolation(String),
    #[error("DEGENERATE_CONIC: cannot parametrize a degenerate conic")]
    DegenerateConic,
    #[error("EXPLOSION: enumeration exceeded {0}")]
    Explosion(String),
    #[error("CERTIFICATE_FAILURE: {0}")]
    CertificateFailure(String),
    #[error("INSUFFICIENT_POINTS: {0}")]
    InsufficientPoints(String),
    #[error("SYNTAX_ERROR: {0} at position {1}")]
    Syntax(String, usize),
    #[error("UNKNOWN_SYMBOL: '{0}' at position {1}")]
    UnknownSymbol(String, usize),
    #[error("DEGREE_LT_2: generator '{0}' has degree < 2")]
    DegreeLt2(String),
    #[error("USAGE: {0}")]
    Usage(String),
}

pub mod arith;
pub mod cli;
pub mod conics;
pub mod conjugacy;
pub mod decider;
pub mod numberfield;
pub mod parse;
pub mod polyring;
pub mod qpoly;
pub mod report;
pub mod witness;

pub use numberfield::{FieldElement, NumberField, QuadraticTower};
pub use polyring::Poly;
