//! Finite-dimensional spaces and dense linear, bilinear and trilinear maps
//! over polynomial scalars. Axiom residuals are assembled from these.

mod bilinear;
mod linear;
mod space;
mod trilinear;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::{CoeffError, Poly, Ring};

pub use bilinear::BilMap;
pub use linear::LinMap;
pub use space::{tensor_space, Space, TENSOR};
pub use trilinear::TriTensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultilinearError {
    #[error("space mismatch in {context}: expected {expected}, found {found}")]
    SpaceMismatch { context: String, expected: String, found: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("space `{0}` has an empty basis")]
    EmptyBasis(String),
    #[error("space `{space}` repeats basis label `{label}`")]
    DuplicateLabel { space: String, label: String },
    #[error("space `{space}` has invalid basis label `{label}`")]
    BadLabel { space: String, label: String },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// One nonzero coordinate of a residual: basis labels of the inputs, the
/// output basis label, and the polynomial found there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    #[serde(skip)]
    pub index: Vec<usize>,
    pub inputs: Vec<String>,
    pub output: String,
    #[serde(serialize_with = "crate::serialize_display")]
    pub value: Poly,
}

pub(crate) fn check_ring(expected: &Ring, found: &Ring) -> Result<(), MultilinearError> {
    if expected != found {
        return Err(CoeffError::RingMismatch { left: expected.to_string(), right: found.to_string() }.into());
    }
    Ok(())
}

pub(crate) fn check_space(expected: &Space, found: &Space, context: &str) -> Result<(), MultilinearError> {
    if expected != found {
        return Err(MultilinearError::SpaceMismatch {
            context: context.to_string(),
            expected: expected.describe(),
            found: found.describe(),
        });
    }
    Ok(())
}

/// The `i`-th standard basis vector of `space`.
pub fn basis_vector(ring: &Ring, space: &Space, i: usize) -> Vec<Poly> {
    (0..space.dim()).map(|k| if k == i { ring.one() } else { ring.zero() }).collect()
}
