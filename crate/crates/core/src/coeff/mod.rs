//! Exact scalars: the rationals, small prime fields, and multivariate
//! polynomials over either in named parameters.

mod field;
mod parse;
mod poly;

use thiserror::Error;

pub use field::{is_prime, Field, Scalar, MAX_PRIME};
pub use parse::parse_poly;
pub use poly::{Monomial, Poly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariableAt { name: String, pos: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parameter `{0}` has no value")]
    MissingParameter(String),
    #[error("invalid parameter name `{0}`")]
    BadParameter(String),
    #[error("duplicate parameter `{0}`")]
    DuplicateParameter(String),
    #[error("polynomials live in different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("scalar does not belong to the field")]
    FieldMismatch,
    #[error("{0} is not invertible in the field")]
    NotInvertible(String),
    #[error("{0} is not a prime between 2 and 251")]
    InvalidPrime(u32),
    #[error("unknown field `{0}` (expected \"Q\" or \"F<p>\")")]
    BadField(String),
    #[error("exponent vector has length {found}, ring has {expected} parameters")]
    ExponentLength { expected: usize, found: usize },
}
