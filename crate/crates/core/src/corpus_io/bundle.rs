use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Poly, Ring};
use crate::multilinear::{BilMap, LinMap, Space};

use super::claims::ClaimKind;

/// A named vector in one of the bundle's spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub space: String,
    pub coords: Vec<Poly>,
}

/// The verdict a claim is expected to produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Holds,
    Conditional(Vec<Poly>),
    Fails(Vec<Poly>),
}

impl Expectation {
    pub fn label(&self) -> &'static str {
        match self {
            Expectation::Holds => "holds",
            Expectation::Conditional(_) => "conditional",
            Expectation::Fails(_) => "fails",
        }
    }

    pub fn constraints(&self) -> &[Poly] {
        match self {
            Expectation::Holds => &[],
            Expectation::Conditional(c) | Expectation::Fails(c) => c,
        }
    }

    /// Whether a computed verdict matches this expectation exactly,
    /// constraint sets included.
    pub fn matches(&self, verdict: &crate::structures::Verdict) -> bool {
        use crate::structures::Verdict;
        match (self, verdict) {
            (Expectation::Holds, Verdict::Holds) => true,
            (Expectation::Conditional(a), Verdict::ConditionallyHolds(b)) | (Expectation::Fails(a), Verdict::Fails(b)) => {
                let mut a = a.iter().map(Poly::normalized).collect::<Vec<_>>();
                a.sort();
                a.dedup();
                &a == b
            }
            _ => false,
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One structure to check, with its role bindings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub kind: ClaimKind,
    /// role → name of a bundle object (or a polynomial for `lambda`).
    pub bind: BTreeMap<String, String>,
    pub expect: Option<Expectation>,
    pub note: Option<String>,
}

impl Claim {
    pub fn new<K: AsRef<str>, V: AsRef<str>>(kind: ClaimKind, bind: &[(K, V)]) -> Claim {
        Claim {
            kind,
            bind: bind.iter().map(|(k, v)| (k.as_ref().to_string(), v.as_ref().to_string())).collect(),
            expect: None,
            note: None,
        }
    }

    pub fn expecting(mut self, e: Expectation) -> Claim {
        self.expect = Some(e);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Claim {
        self.note = Some(note.into());
        self
    }

    /// A short human label such as `curved_oos(R=R, S=S, ...)`.
    pub fn label(&self) -> String {
        let binds: Vec<String> = self.bind.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.kind, binds.join(", "))
    }
}

/// Spaces, maps, elements and claims over one coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub ring: Ring,
    pub spaces: BTreeMap<String, Space>,
    pub bilinear: BTreeMap<String, BilMap>,
    pub linear: BTreeMap<String, LinMap>,
    pub elements: BTreeMap<String, Element>,
    pub claims: Vec<Claim>,
}

impl Bundle {
    pub fn new(ring: Ring) -> Bundle {
        Bundle {
            ring,
            spaces: BTreeMap::new(),
            bilinear: BTreeMap::new(),
            linear: BTreeMap::new(),
            elements: BTreeMap::new(),
            claims: Vec::new(),
        }
    }

    pub fn add_space(&mut self, space: Space) {
        self.spaces.insert(space.name().to_string(), space);
    }

    /// Inserts a bilinear map and any spaces it mentions.
    pub fn add_bilinear(&mut self, name: &str, map: BilMap) {
        for s in [map.left(), map.right(), map.target()] {
            self.add_space(s.clone());
        }
        self.bilinear.insert(name.to_string(), map);
    }

    pub fn add_linear(&mut self, name: &str, map: LinMap) {
        for s in [map.source(), map.target()] {
            self.add_space(s.clone());
        }
        self.linear.insert(name.to_string(), map);
    }

    pub fn space(&self, name: &str) -> Option<&Space> {
        self.spaces.get(name)
    }

    /// Whether `name` is already used by a map or an element.
    pub fn has_object(&self, name: &str) -> bool {
        self.bilinear.contains_key(name) || self.linear.contains_key(name) || self.elements.contains_key(name)
    }

    /// `base` if unused, otherwise `base_2`, `base_3`, ...
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.has_object(base) {
            return base.to_string();
        }
        (2..).map(|n| format!("{base}_{n}")).find(|n| !self.has_object(n)).expect("unbounded")
    }
}
