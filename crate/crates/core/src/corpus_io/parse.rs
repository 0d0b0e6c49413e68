use std::collections::BTreeMap;

use serde::Deserialize;

use crate::coeff::{Field, Poly, Ring};
use crate::multilinear::{BilMap, LinMap, Space};

use super::bundle::{Bundle, Claim, Element, Expectation};
use super::claims::{validate_claim, ClaimKind};
use super::BundleError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    ring: RawRing,
    #[serde(default)]
    spaces: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    bilinear: BTreeMap<String, RawBilinear>,
    #[serde(default)]
    linear: BTreeMap<String, RawLinear>,
    #[serde(default)]
    elements: BTreeMap<String, RawElement>,
    #[serde(default)]
    claims: Vec<RawClaim>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    field: String,
    #[serde(default)]
    parameters: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBilinear {
    left: String,
    right: String,
    target: String,
    #[serde(default)]
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    row: String,
    col: String,
    out: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinear {
    source: String,
    target: String,
    #[serde(default)]
    columns: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    space: String,
    #[serde(default)]
    coords: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClaim {
    kind: String,
    #[serde(default)]
    bind: BTreeMap<String, String>,
    expect: Option<String>,
    #[serde(default)]
    constraints: Vec<String>,
    note: Option<String>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    (line, col)
}

struct Ctx<'a> {
    ring: &'a Ring,
    spaces: &'a BTreeMap<String, Space>,
}

impl Ctx<'_> {
    fn space(&self, name: &str, path: &str) -> Result<&Space, BundleError> {
        self.spaces.get(name).ok_or_else(|| BundleError::schema(path, format!("undeclared space `{name}`")))
    }

    fn poly(&self, text: &str, path: &str) -> Result<Poly, BundleError> {
        self.ring.parse(text).map_err(|e| BundleError::coeff(path, e))
    }

    fn index(&self, space: &Space, label: &str, path: &str) -> Result<usize, BundleError> {
        space.index_of(label).ok_or_else(|| BundleError::schema(path, format!("`{label}` is not a basis label of {space}")))
    }

    /// A dense coordinate vector from a sparse label → poly map.
    fn vector(&self, space: &Space, map: &BTreeMap<String, String>, path: &str) -> Result<Vec<Poly>, BundleError> {
        let mut v = vec![self.ring.zero(); space.dim()];
        for (label, text) in map {
            let p = format!("{path}.{label}");
            let k = self.index(space, label, &p)?;
            v[k] = self.poly(text, &p)?;
        }
        Ok(v)
    }
}

pub fn parse_bundle(text: &str) -> Result<Bundle, BundleError> {
    let raw: RawBundle = toml::from_str(text).map_err(|e| {
        let (line, col) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        BundleError::Syntax { line, col, msg: e.message().trim().to_string() }
    })?;
    let field: Field = raw.ring.field.parse().map_err(|e| BundleError::coeff("ring.field", e))?;
    let ring = Ring::new(field, &raw.ring.parameters).map_err(|e| BundleError::coeff("ring.parameters", e))?;
    let mut bundle = Bundle::new(ring.clone());
    for (name, basis) in &raw.spaces {
        let space = Space::new(name, basis).map_err(|e| BundleError::schema(&format!("spaces.{name}"), e.to_string()))?;
        bundle.spaces.insert(name.clone(), space);
    }
    let ctx = Ctx { ring: &ring, spaces: &bundle.spaces };

    let mut bilinear = BTreeMap::new();
    for (name, b) in &raw.bilinear {
        let path = format!("bilinear.{name}");
        let l = ctx.space(&b.left, &format!("{path}.left"))?;
        let r = ctx.space(&b.right, &format!("{path}.right"))?;
        let t = ctx.space(&b.target, &format!("{path}.target"))?;
        let mut table = vec![vec![vec![ring.zero(); t.dim()]; r.dim()]; l.dim()];
        let mut seen = vec![vec![false; r.dim()]; l.dim()];
        for (n, e) in b.entries.iter().enumerate() {
            let p = format!("{path}.entries[{n}]");
            let i = ctx.index(l, &e.row, &format!("{p}.row"))?;
            let j = ctx.index(r, &e.col, &format!("{p}.col"))?;
            if seen[i][j] {
                return Err(BundleError::schema(&p, format!("second entry for ({}, {})", e.row, e.col)));
            }
            seen[i][j] = true;
            table[i][j] = ctx.vector(t, &e.out, &format!("{p}.out"))?;
        }
        let map = BilMap::from_table(&ring, l, r, t, table).map_err(|e| BundleError::schema(&path, e.to_string()))?;
        bilinear.insert(name.clone(), map);
    }

    let mut linear = BTreeMap::new();
    for (name, m) in &raw.linear {
        let path = format!("linear.{name}");
        let s = ctx.space(&m.source, &format!("{path}.source"))?;
        let t = ctx.space(&m.target, &format!("{path}.target"))?;
        let mut cols = vec![vec![ring.zero(); t.dim()]; s.dim()];
        for (label, image) in &m.columns {
            let p = format!("{path}.columns.{label}");
            let c = ctx.index(s, label, &p)?;
            cols[c] = ctx.vector(t, image, &p)?;
        }
        let rows = (0..t.dim()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let map = LinMap::from_rows(&ring, s, t, rows).map_err(|e| BundleError::schema(&path, e.to_string()))?;
        linear.insert(name.clone(), map);
    }

    let mut elements = BTreeMap::new();
    for (name, e) in &raw.elements {
        let path = format!("elements.{name}");
        let s = ctx.space(&e.space, &format!("{path}.space"))?;
        let coords = ctx.vector(s, &e.coords, &format!("{path}.coords"))?;
        elements.insert(name.clone(), Element { space: e.space.clone(), coords });
    }

    for name in bilinear.keys().chain(linear.keys()) {
        if elements.contains_key(name) || (bilinear.contains_key(name) && linear.contains_key(name)) {
            return Err(BundleError::schema(name, format!("name `{name}` is declared twice")));
        }
    }
    bundle.bilinear = bilinear;
    bundle.linear = linear;
    bundle.elements = elements;

    for (n, c) in raw.claims.iter().enumerate() {
        let path = format!("claims[{n}]");
        let kind: ClaimKind = c.kind.parse().map_err(|m| BundleError::schema(&format!("{path}.kind"), m))?;
        let constraints = c
            .constraints
            .iter()
            .enumerate()
            .map(|(i, t)| ctx_poly(&ring, t, &format!("{path}.constraints[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let expect = match (c.expect.as_deref(), constraints.is_empty()) {
            (None, true) => None,
            (Some("holds"), true) => Some(Expectation::Holds),
            (Some("conditional"), false) => Some(Expectation::Conditional(constraints)),
            (Some("fails"), false) => Some(Expectation::Fails(constraints)),
            (Some("holds") | None, false) => {
                return Err(BundleError::schema(&format!("{path}.constraints"), "constraints need expect = \"conditional\" or \"fails\""))
            }
            (Some("conditional" | "fails"), true) => {
                return Err(BundleError::schema(&format!("{path}.constraints"), "a conditional or failing expectation lists its constraints"))
            }
            (Some(other), _) => {
                return Err(BundleError::schema(&format!("{path}.expect"), format!("unknown verdict `{other}` (holds, conditional, fails)")))
            }
        };
        let claim = Claim { kind, bind: c.bind.clone(), expect, note: c.note.clone() };
        validate_claim(&bundle, &claim, &path)?;
        bundle.claims.push(claim);
    }
    Ok(bundle)
}

fn ctx_poly(ring: &Ring, text: &str, path: &str) -> Result<Poly, BundleError> {
    ring.parse(text).map_err(|e| BundleError::coeff(path, e))
}
