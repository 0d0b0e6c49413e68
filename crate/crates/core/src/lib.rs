//! Exact verification, construction and finite-field search for curved
//! O-operator systems, Rota-Baxter type operators and the dendriform,
//! tridendriform and pre-Lie structures they induce, on finite-dimensional
//! spaces presented by structure constants.

pub mod coeff;
pub mod multilinear;
pub mod structures;
pub mod corpus_io;
pub mod derive;
pub mod search;

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
