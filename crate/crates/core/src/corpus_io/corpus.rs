use std::sync::OnceLock;

use crate::coeff::{Field, Poly, Ring};
use crate::multilinear::{BilMap, LinMap, Space};

use super::bundle::{Bundle, Claim, Expectation};
use super::claims::ClaimKind;

/// One transcribed example with its expected verdicts (stored on the claims).
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub citation: String,
    pub bundle: Bundle,
}

impl CorpusEntry {
    /// The expectation of the entry's last claim, which is its headline.
    pub fn expected(&self) -> Option<&Expectation> {
        self.bundle.claims.last().and_then(|c| c.expect.as_ref())
    }
}

type Image<'a> = &'a [(&'a str, &'a str)];

fn bil(ring: &Ring, l: &Space, r: &Space, t: &Space, entries: &[(&str, &str, Image)]) -> BilMap {
    let mut table = vec![vec![vec![ring.zero(); t.dim()]; r.dim()]; l.dim()];
    for (a, b, out) in entries {
        let (i, j) = (l.index_of(a).expect("label"), r.index_of(b).expect("label"));
        for (label, text) in *out {
            table[i][j][t.index_of(label).expect("label")] = ring.parse(text).expect("corpus polynomial");
        }
    }
    BilMap::from_table(ring, l, r, t, table).expect("corpus shapes")
}

fn lin(ring: &Ring, s: &Space, t: &Space, cols: &[(&str, Image)]) -> LinMap {
    let mut rows = vec![vec![ring.zero(); s.dim()]; t.dim()];
    for (src, image) in cols {
        let c = s.index_of(src).expect("label");
        for (label, text) in *image {
            rows[t.index_of(label).expect("label")][c] = ring.parse(text).expect("corpus polynomial");
        }
    }
    LinMap::from_rows(ring, s, t, rows).expect("corpus shapes")
}

fn space(name: &str, basis: &[&str]) -> Space {
    Space::new(name, basis).expect("corpus space")
}

/// `e1e1 = e1`, `e1e2 = e2e1 = e2e2 = e2`.
fn algebra(ring: &Ring, a: &Space) -> BilMap {
    bil(
        ring,
        a,
        a,
        a,
        &[("e1", "e1", &[("e1", "1")]), ("e1", "e2", &[("e2", "1")]), ("e2", "e1", &[("e2", "1")]), ("e2", "e2", &[("e2", "1")])],
    )
}

const CURVED_ROLES: [(&str, &str); 6] =
    [("mu", "mu"), ("left", "left"), ("right", "right"), ("R", "R"), ("S", "S"), ("omega", "omega")];
const MODULE_ROLES: [(&str, &str); 3] = [("mu", "mu"), ("left", "left"), ("right", "right")];

/// The two one-dimensional bimodules: `(left, right)` action tables.
fn one_dim_actions(ring: &Ring, a: &Space, v: &Space, family: usize) -> (BilMap, BilMap) {
    match family {
        1 => (bil(ring, a, v, v, &[("e1", "v1", &[("v1", "1")])]), bil(ring, v, a, v, &[])),
        _ => (
            bil(ring, a, v, v, &[("e1", "v1", &[("v1", "1")]), ("e2", "v1", &[("v1", "1")])]),
            bil(ring, v, a, v, &[("v1", "e1", &[("v1", "1")]), ("v1", "e2", &[("v1", "1")])]),
        ),
    }
}

/// A system on the one-dimensional bimodule; `r`, `s` are images of `v1`.
fn one_dim_entry(family: usize, r: Image, s: Image, omega: &str, oos: bool) -> Bundle {
    let ring = Ring::rationals(&["p"]);
    let a = space("A", &["e1", "e2"]);
    let v = space("V", &["v1"]);
    let mut b = Bundle::new(ring.clone());
    b.add_bilinear("mu", algebra(&ring, &a));
    let (l, rt) = one_dim_actions(&ring, &a, &v, family);
    b.add_bilinear("left", l);
    b.add_bilinear("right", rt);
    b.add_linear("R", lin(&ring, &v, &a, &[("v1", r)]));
    b.add_linear("S", lin(&ring, &v, &a, &[("v1", s)]));
    b.add_bilinear("omega", bil(&ring, &v, &v, &v, &[("v1", "v1", &[("v1", omega)])]));
    b.claims.push(Claim::new(ClaimKind::Bimodule, &MODULE_ROLES).expecting(Expectation::Holds));
    if oos {
        let roles = [("mu", "mu"), ("left", "left"), ("right", "right"), ("R", "R"), ("S", "S")];
        b.claims.push(Claim::new(ClaimKind::Oos, &roles).expecting(Expectation::Holds));
    }
    b.claims.push(Claim::new(ClaimKind::CurvedOos, &CURVED_ROLES).expecting(Expectation::Holds));
    b
}

fn two_dim_entry() -> Bundle {
    let ring = Ring::rationals(&["p1", "p2"]);
    let a = space("A", &["e1", "e2"]);
    let v = space("V", &["v1", "v2"]);
    let mut b = Bundle::new(ring.clone());
    b.add_bilinear("mu", algebra(&ring, &a));
    let mut left = Vec::new();
    let mut right = Vec::new();
    for e in ["e1", "e2"] {
        left.push((e, "v1", &[("v1", "1")] as Image));
        left.push((e, "v2", &[("v2", "1")] as Image));
        right.push(("v1", e, &[("v1", "1")] as Image));
        right.push(("v2", e, &[("v2", "1")] as Image));
    }
    b.add_bilinear("left", bil(&ring, &a, &v, &v, &left));
    b.add_bilinear("right", bil(&ring, &v, &a, &v, &right));
    b.add_linear("R", lin(&ring, &v, &a, &[("v2", &[("e1", "p1")])]));
    b.add_linear("S", lin(&ring, &v, &a, &[("v1", &[("e1", "p2"), ("e2", "-p2")]), ("v2", &[("e2", "p1")])]));
    b.add_bilinear(
        "omega",
        bil(
            &ring,
            &v,
            &v,
            &v,
            &[
                ("v1", "v1", &[("v1", "p2")]),
                ("v1", "v2", &[("v1", "-p1")]),
                ("v2", "v1", &[("v1", "-p1")]),
                ("v2", "v2", &[("v2", "-p1")]),
            ],
        ),
    );
    b.claims.push(Claim::new(ClaimKind::Bimodule, &MODULE_ROLES).expecting(Expectation::Holds));
    b.claims.push(Claim::new(ClaimKind::CurvedOos, &CURVED_ROLES).expecting(Expectation::Holds));
    b
}

fn diamond(ring: &Ring, a: &Space) -> BilMap {
    bil(
        ring,
        a,
        a,
        a,
        &[
            ("e1", "e1", &[("e1", "a - b"), ("e2", "b")]),
            ("e1", "e2", &[("e2", "a")]),
            ("e2", "e1", &[("e2", "a")]),
            ("e2", "e2", &[("e2", "a")]),
        ],
    )
}

fn pair_entry(r: Option<(Image, Image)>) -> Bundle {
    let ring = Ring::rationals(&["a", "b"]);
    let a = space("A", &["e1", "e2"]);
    let mut b = Bundle::new(ring.clone());
    b.add_bilinear("mu", algebra(&ring, &a));
    b.add_bilinear("nu", diamond(&ring, &a));
    b.claims.push(Claim::new(ClaimKind::CompatiblePair, &[("mu", "mu"), ("nu", "nu")]).expecting(Expectation::Holds));
    if let Some((r1, r2)) = r {
        b.add_linear("R", lin(&ring, &a, &a, &[("e1", r1), ("e2", r2)]));
        b.claims.push(Claim::new(ClaimKind::GeneralizedRb, &[("mu", "mu"), ("nu", "nu"), ("R", "R")]).expecting(Expectation::Holds));
    }
    b
}

/// Constraint set of the double system as printed, normalized.
const EX_3_10_CONSTRAINTS: &[&str] = &[
    "1",
    "c121",
    "c112 - c122 - 1",
    "2*c112 - 2*c122",
    "c111",
    "b221",
    "b211",
    "c112*c122 - c122^2 - c122",
    "c112^2 - c112*c122 - c112",
    "2*c112^2 - 2*c112",
    "b221*c112 + 2*c112 - 2*c122",
    "b211*c112 + 2*c112 - 2",
];

fn ex_3_10() -> Bundle {
    let ring = Ring::rationals(&["b211", "b221", "c111", "c112", "c121", "c122"]);
    let a = space("A", &["e1", "e2"]);
    let mut b = Bundle::new(ring.clone());
    b.add_bilinear("mu", algebra(&ring, &a));
    b.add_linear("R", lin(&ring, &a, &a, &[("e1", &[("e2", "-c112")]), ("e2", &[("e2", "-1")])]));
    b.add_linear("S", lin(&ring, &a, &a, &[("e2", &[("e2", "c112 - c122")])]));
    b.add_bilinear(
        "omega1",
        bil(
            &ring,
            &a,
            &a,
            &a,
            &[
                ("e1", "e1", &[("e2", "c112 - c112^2")]),
                ("e1", "e2", &[("e2", "c122 - c112")]),
                ("e2", "e1", &[("e1", "b211"), ("e2", "1 - c112 - b211*c112")]),
                ("e2", "e2", &[("e1", "b221"), ("e2", "c122 - c112 - b221*c112")]),
            ],
        ),
    );
    b.add_bilinear(
        "omega2",
        bil(
            &ring,
            &a,
            &a,
            &a,
            &[
                ("e1", "e1", &[("e1", "c111"), ("e2", "c112")]),
                ("e1", "e2", &[("e1", "c121"), ("e2", "c122")]),
                ("e2", "e1", &[("e1", "1"), ("e2", "1")]),
                ("e2", "e2", &[("e2", "1")]),
            ],
        ),
    );
    let constraints: Vec<Poly> = EX_3_10_CONSTRAINTS.iter().map(|t| ring.parse(t).expect("constraint")).collect();
    b.claims.push(Claim::new(ClaimKind::Associativity, &[("mu", "mu")]).expecting(Expectation::Holds));
    b.claims.push(
        Claim::new(ClaimKind::DoubleCurvedRbs, &[("mu", "mu"), ("R", "R"), ("S", "S"), ("omega1", "omega1"), ("omega2", "omega2")])
            .expecting(Expectation::Fails(constraints))
            .with_note(
                "transcribed as printed; the S-identity at (e2, e1) leaves the constant residual -e1, so no parameter values satisfy it",
            ),
    );
    b
}

fn frame() -> Bundle {
    let ring = Ring::constants(Field::Rationals);
    let a = space("A", &["e1", "e2"]);
    let v = space("V", &["v1"]);
    let mut b = Bundle::new(ring.clone());
    b.add_bilinear("mu", algebra(&ring, &a));
    let (l, r) = one_dim_actions(&ring, &a, &v, 1);
    b.add_bilinear("left", l);
    b.add_bilinear("right", r);
    b.add_linear("R", LinMap::zero(&ring, &v, &a));
    b.add_linear("S", LinMap::zero(&ring, &v, &a));
    b.add_bilinear("omega", BilMap::zero(&ring, &v, &v, &v));
    b.claims.push(Claim::new(ClaimKind::CurvedOos, &CURVED_ROLES).expecting(Expectation::Holds));
    b
}

const P_E1: Image = &[("e1", "p")];
const P_E2: Image = &[("e2", "p")];
const P_E12: Image = &[("e1", "p"), ("e2", "-p")];
const ZERO: Image = &[];

fn build() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |id: String, citation: String, bundle: Bundle| out.push(CorpusEntry { id, citation, bundle });

    let f1: [(Image, Image); 7] =
        [(ZERO, P_E1), (ZERO, P_E2), (ZERO, P_E12), (P_E2, ZERO), (P_E2, P_E2), (P_E2, P_E1), (P_E2, P_E12)];
    for (n, (r, s)) in f1.iter().enumerate() {
        push(
            format!("ex2.3/f1/e{}", n + 1),
            format!("Example 2.3, first bimodule, curved system {}", n + 1),
            one_dim_entry(1, r, s, "p", false),
        );
    }
    let oos: [(Image, Image); 8] = [
        (P_E1, ZERO),
        (P_E1, P_E2),
        (P_E1, P_E1),
        (P_E1, P_E12),
        (P_E12, ZERO),
        (P_E12, P_E2),
        (P_E12, P_E1),
        (P_E12, P_E12),
    ];
    for (n, (r, s)) in oos.iter().enumerate() {
        push(
            format!("ex2.3/oos/e{}", n + 1),
            format!("Example 2.3, first bimodule, O-operator system {}", n + 1),
            one_dim_entry(1, r, s, "0", true),
        );
    }
    let f2: [(Image, Image, &str); 7] = [
        (ZERO, P_E12, "p"),
        (P_E2, P_E2, "-p"),
        (P_E2, P_E1, "-p"),
        (P_E1, P_E2, "-p"),
        (P_E1, P_E1, "-p"),
        (P_E12, ZERO, "p"),
        (P_E12, P_E12, "p"),
    ];
    for (n, (r, s, w)) in f2.iter().enumerate() {
        push(
            format!("ex2.3/f2/e{}", n + 1),
            format!("Example 2.3, second bimodule, curved system {}", n + 1),
            one_dim_entry(2, r, s, w, false),
        );
    }
    push("ex2.3/2dim".into(), "Example 2.3, two-dimensional bimodule".into(), two_dim_entry());
    push("ex2.3-frame".into(), "Example 2.3 algebra and first bimodule with zero operators (search template)".into(), frame());

    push("ex3.4a/pair".into(), "Example 3.4a, compatible pair".into(), pair_entry(None));
    let rs: [(Image, Image); 11] = [
        (&[("e1", "b - a")], ZERO),
        (&[("e1", "-a")], &[("e1", "-a")]),
        (&[("e2", "-b")], &[("e2", "-a")]),
        (&[("e1", "b"), ("e2", "-b")], &[("e1", "a"), ("e2", "-a")]),
        (&[("e1", "b - a"), ("e2", "-b")], &[("e2", "-a")]),
        (&[("e2", "-a")], &[("e2", "-a")]),
        (&[("e1", "b - a"), ("e2", "-a")], &[("e2", "-a")]),
        (&[("e1", "a"), ("e2", "-a")], &[("e1", "a"), ("e2", "-a")]),
        (&[("e2", "a - b")], ZERO),
        (&[("e1", "b - 2*a"), ("e2", "a - b")], &[("e1", "-a")]),
        (&[("e1", "b - a"), ("e2", "a - b")], ZERO),
    ];
    for (n, r) in rs.iter().enumerate() {
        push(format!("ex3.4a/R{}", n + 1), format!("Example 3.4a, operator {}", n + 1), pair_entry(Some(*r)));
    }
    push("ex3.10".into(), "Example 3.10, parametric double system as printed".into(), ex_3_10());
    out
}

/// The embedded corpus, in a fixed order.
pub fn corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(build)
}

pub fn corpus_entry(id: &str) -> Option<&'static CorpusEntry> {
    corpus().iter().find(|e| e.id == id)
}
