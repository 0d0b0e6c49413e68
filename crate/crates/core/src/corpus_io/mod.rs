//! The bundle file format and the embedded regression corpus.
//!
//! A bundle is a TOML document with the top-level tables `ring`, `spaces`,
//! `bilinear`, `linear`, `elements` and the array `claims`. Every scalar is
//! a polynomial string in the declared ring.

mod bundle;
mod claims;
mod corpus;
mod parse;
mod write;

use thiserror::Error;

use crate::coeff::CoeffError;

pub use bundle::{Bundle, Claim, Element, Expectation};
pub use claims::{role_type, run_all, run_claim, ClaimError, ClaimKind, RoleType, Roles};
pub use corpus::{corpus, corpus_entry, CorpusEntry};
pub use parse::parse_bundle;
pub use write::serialize_bundle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("at {path}: {source}")]
    Coeff { path: String, source: CoeffError },
}

impl BundleError {
    pub(crate) fn schema(path: &str, msg: impl Into<String>) -> Self {
        BundleError::Schema { path: path.to_string(), msg: msg.into() }
    }

    pub(crate) fn coeff(path: &str, source: CoeffError) -> Self {
        BundleError::Coeff { path: path.to_string(), source }
    }
}
