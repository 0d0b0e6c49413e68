use std::fmt;
use std::sync::Arc;

use super::MultilinearError;

#[derive(Debug, PartialEq, Eq, Hash)]
struct SpaceData {
    name: String,
    basis: Vec<String>,
}

/// A named finite-dimensional space with an ordered basis. The basis order
/// is part of the identity of the space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space(Arc<SpaceData>);

/// Separator used in tensor-product names and basis labels.
pub const TENSOR: &str = "⊗";

impl Space {
    pub fn new<S: AsRef<str>>(name: &str, basis: &[S]) -> Result<Self, MultilinearError> {
        if basis.is_empty() {
            return Err(MultilinearError::EmptyBasis(name.to_string()));
        }
        let basis: Vec<String> = basis.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, b) in basis.iter().enumerate() {
            if b.is_empty() {
                return Err(MultilinearError::BadLabel { space: name.to_string(), label: b.clone() });
            }
            if basis[..i].contains(b) {
                return Err(MultilinearError::DuplicateLabel { space: name.to_string(), label: b.clone() });
            }
        }
        Ok(Space(Arc::new(SpaceData { name: name.to_string(), basis })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn basis(&self) -> &[String] {
        &self.0.basis
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.basis[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.basis.iter().position(|b| b == label)
    }
}

impl Space {
    /// Name with basis, for error messages.
    pub(crate) fn describe(&self) -> String {
        format!("{}({})", self.name(), self.basis().join(", "))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// `X⊗Y` with basis `x_i⊗y_j` in row-major order: `(i, j)` sits at
/// position `i * dim(Y) + j`. Nested products flatten the same way, so
/// `(X⊗Y)⊗Z` and `X⊗(Y⊗Z)` are the same space.
pub fn tensor_space(x: &Space, y: &Space) -> Space {
    let mut basis = Vec::with_capacity(x.dim() * y.dim());
    for a in x.basis() {
        for b in y.basis() {
            basis.push(format!("{a}{TENSOR}{b}"));
        }
    }
    Space(Arc::new(SpaceData { name: format!("{}{TENSOR}{}", x.name(), y.name()), basis }))
}
