//! Exhaustive search for unknown maps over a small prime field.
//!
//! Candidates are numbered row-major over the unknown scalars: the unknowns
//! in the order given, each map's coefficients in storage order, and the
//! last scalar varying fastest.

mod direct;

use rayon::prelude::*;
use thiserror::Error;

use crate::coeff::{is_prime, CoeffError, Field, Ring, MAX_PRIME};
use crate::corpus_io::{role_type, run_claim, Bundle, Claim, ClaimKind, Expectation, RoleType};
use crate::multilinear::{BilMap, LinMap};
use crate::structures::Mode;

pub use direct::supports as direct_supports;

/// Largest candidate count a search will attempt.
pub const BUDGET: u64 = 100_000_000;
/// Largest number of unknown scalars.
pub const MAX_UNKNOWN_SCALARS: usize = 24;

#[derive(Clone, Debug)]
pub struct SearchSpec {
    /// Fixed data; reduced mod `prime` before the search.
    pub template: Bundle,
    pub prime: u32,
    pub structure: ClaimKind,
    /// Roles of the selected claim whose maps are unknown.
    pub unknowns: Vec<String>,
    /// How many witnesses to keep (the count is always complete).
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{0} is not a prime in [2, {MAX_PRIME}]")]
    NotPrime(u32),
    #[error("the template has no `{0}` claim")]
    NoClaim(ClaimKind),
    #[error("`{role}` is not a map role of the `{kind}` claim")]
    BadUnknown { role: String, kind: ClaimKind },
    #[error("role `{0}` is listed twice")]
    DuplicateUnknown(String),
    #[error("{scalars} unknown scalars over F{p} give {candidates} candidates, above the budget of {BUDGET} (or more than {MAX_UNKNOWN_SCALARS} scalars)")]
    Budget { p: u32, scalars: usize, candidates: String },
    #[error("template does not reduce mod {p}: {source}")]
    Reduce { p: u32, source: CoeffError },
    #[error("candidate {index}: {msg}")]
    Check { index: u64, msg: String },
    #[error("the direct evaluator does not handle `{0}`")]
    Unsupported(ClaimKind),
}

/// A candidate whose claim holds, as a bundle that `verify` accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub index: u64,
    pub bundle: Bundle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub candidates: u64,
    pub count: u64,
    pub witnesses: Vec<Witness>,
}

/// Result of running both evaluators over the same candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub candidates: u64,
    pub residual: Vec<u64>,
    pub direct: Vec<u64>,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.residual == self.direct
    }

    /// The smallest candidate on which the evaluators disagree.
    pub fn first_difference(&self) -> Option<u64> {
        let a: std::collections::BTreeSet<_> = self.residual.iter().collect();
        let b: std::collections::BTreeSet<_> = self.direct.iter().collect();
        a.symmetric_difference(&b).next().map(|x| **x)
    }
}

struct Slot {
    name: String,
    len: usize,
}

/// The reduced template with the selected claim and unknown slots resolved.
pub struct Prepared {
    base: Bundle,
    claim: Claim,
    slots: Vec<Slot>,
    prime: u32,
    candidates: u64,
}

fn reduce(bundle: &Bundle, p: u32) -> Result<Bundle, SearchError> {
    let err = |source| SearchError::Reduce { p, source };
    let ring = Ring::constants(Field::Prime(p));
    let mut out = Bundle::new(ring.clone());
    out.spaces = bundle.spaces.clone();
    for (n, b) in &bundle.bilinear {
        out.bilinear.insert(n.clone(), b.try_map_coeffs(&ring, |c| c.convert(&ring)).map_err(err)?);
    }
    for (n, f) in &bundle.linear {
        out.linear.insert(n.clone(), f.try_map_entries(&ring, |c| c.convert(&ring)).map_err(err)?);
    }
    for (n, e) in &bundle.elements {
        let coords = e.coords.iter().map(|c| c.convert(&ring)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        out.elements.insert(n.clone(), crate::corpus_io::Element { space: e.space.clone(), coords });
    }
    out.claims = bundle.claims.clone();
    Ok(out)
}

impl Prepared {
    pub fn new(spec: &SearchSpec) -> Result<Prepared, SearchError> {
        let p = spec.prime;
        if !is_prime(p) || p > MAX_PRIME {
            return Err(SearchError::NotPrime(p));
        }
        let claim = spec
            .template
            .claims
            .iter()
            .find(|c| c.kind == spec.structure)
            .cloned()
            .ok_or(SearchError::NoClaim(spec.structure))?;
        let mut base = reduce(&spec.template, p)?;
        let mut slots = Vec::new();
        for role in &spec.unknowns {
            let bad = || SearchError::BadUnknown { role: role.clone(), kind: spec.structure };
            let name = claim.bind.get(role).ok_or_else(bad)?.clone();
            if slots.iter().any(|s: &Slot| s.name == name) {
                return Err(SearchError::DuplicateUnknown(role.clone()));
            }
            let len = match role_type(role) {
                Some(RoleType::Bilinear) => base.bilinear[&name].coeffs().len(),
                Some(RoleType::Linear) => base.linear[&name].entries().len(),
                _ => return Err(bad()),
            };
            slots.push(Slot { name, len });
        }
        let scalars: usize = slots.iter().map(|s| s.len).sum();
        let candidates = (0..scalars).try_fold(1u64, |acc, _| acc.checked_mul(p as u64).filter(|c| *c <= BUDGET));
        let candidates = match candidates {
            Some(c) if scalars <= MAX_UNKNOWN_SCALARS => c,
            _ => {
                let exact = num_bigint::BigUint::from(p).pow(scalars as u32);
                return Err(SearchError::Budget { p, scalars, candidates: exact.to_string() });
            }
        };
        let mut only = claim.clone();
        only.expect = Some(Expectation::Holds);
        base.claims = vec![only.clone()];
        Ok(Prepared { base, claim: only, slots, prime: p, candidates })
    }

    pub fn candidates(&self) -> u64 {
        self.candidates
    }

    /// The scalars of candidate `index`, first scalar most significant.
    fn digits(&self, mut index: u64) -> Vec<u32> {
        let n: usize = self.slots.iter().map(|s| s.len).sum();
        let mut d = vec![0; n];
        for k in (0..n).rev() {
            d[k] = (index % self.prime as u64) as u32;
            index /= self.prime as u64;
        }
        d
    }

    /// The template with candidate `index` filled in.
    pub fn bundle(&self, index: u64) -> Bundle {
        let ring = self.base.ring.clone();
        let field = ring.field();
        let digits = self.digits(index);
        let mut out = self.base.clone();
        let mut at = 0;
        for slot in &self.slots {
            let mut vals = digits[at..at + slot.len].iter().map(|&d| ring.constant(field.from_i64(d as i64)));
            if let Some(b) = out.bilinear.get_mut(&slot.name) {
                *b = BilMap::from_fn(&ring, b.left(), b.right(), b.target(), |_, _, _| vals.next().expect("slot length"));
            } else if let Some(f) = out.linear.get_mut(&slot.name) {
                *f = LinMap::from_fn(&ring, f.source(), f.target(), |_, _| vals.next().expect("slot length"));
            }
            at += slot.len;
        }
        out
    }

    fn residual_holds(&self, index: u64) -> Result<bool, SearchError> {
        let b = self.bundle(index);
        run_claim(&b, 0, Mode::Strict).map(|r| r.holds()).map_err(|e| SearchError::Check { index, msg: e.to_string() })
    }

    fn matching(&self, test: impl Fn(u64) -> Result<bool, SearchError> + Sync) -> Result<Vec<u64>, SearchError> {
        (0..self.candidates)
            .into_par_iter()
            .filter_map(|c| match test(c) {
                Ok(true) => Some(Ok(c)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect()
    }

    /// Indices of all candidates whose claim Holds under the checkers.
    pub fn residual_witnesses(&self) -> Result<Vec<u64>, SearchError> {
        self.matching(|c| self.residual_holds(c))
    }

    /// The same set computed by the direct evaluator.
    pub fn direct_witnesses(&self) -> Result<Vec<u64>, SearchError> {
        if !direct::supports(self.claim.kind) {
            return Err(SearchError::Unsupported(self.claim.kind));
        }
        let base = direct::densify(&self.base);
        self.matching(|index| {
            let mut maps = base.clone();
            let digits = self.digits(index);
            let mut at = 0;
            for slot in &self.slots {
                let c = maps.get_mut(&slot.name).expect("slot names a map").coeffs_mut();
                c.copy_from_slice(&digits[at..at + slot.len]);
                at += slot.len;
            }
            direct::holds(self.prime, &maps, &self.claim)
                .ok_or_else(|| SearchError::Check { index, msg: "direct evaluator is missing a role".to_string() })
        })
    }

    fn witness(&self, index: u64) -> Witness {
        let mut bundle = self.bundle(index);
        bundle.claims[0].note = Some(format!("search witness {index} over F{}", self.prime));
        Witness { index, bundle }
    }
}

/// Every candidate whose claim Holds, counted in full, with the first
/// `limit` kept as witnesses in enumeration order.
pub fn enumerate(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    let prep = Prepared::new(spec)?;
    let hits = prep.residual_witnesses()?;
    Ok(SearchOutcome {
        candidates: prep.candidates,
        count: hits.len() as u64,
        witnesses: hits.iter().take(spec.limit).map(|&i| prep.witness(i)).collect(),
    })
}

/// Runs the checkers and the direct evaluator over the same candidates.
pub fn cross_check(spec: &SearchSpec) -> Result<CrossCheck, SearchError> {
    let prep = Prepared::new(spec)?;
    Ok(CrossCheck { candidates: prep.candidates, residual: prep.residual_witnesses()?, direct: prep.direct_witnesses()? })
}
