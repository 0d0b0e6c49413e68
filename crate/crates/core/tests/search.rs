mod common;

use std::collections::BTreeSet;

use oosys::coeff::{Field, Poly, Ring};
use oosys::corpus_io::{corpus_entry, run_claim, Bundle, Claim, ClaimKind, Roles};
use oosys::multilinear::{BilMap, LinMap, Space};
use oosys::search::*;
use oosys::structures::Mode;

fn frame() -> Bundle {
    corpus_entry("ex2.3-frame").unwrap().bundle.clone()
}

fn spec(template: Bundle, prime: u32, structure: ClaimKind, unknowns: &[&str], limit: usize) -> SearchSpec {
    SearchSpec { template, prime, structure, unknowns: unknowns.iter().map(|s| s.to_string()).collect(), limit }
}

fn frame_spec(prime: u32, limit: usize) -> SearchSpec {
    spec(frame(), prime, ClaimKind::CurvedOos, &["R", "S", "omega"], limit)
}

#[test]
fn spec_errors() {
    assert_eq!(enumerate(&frame_spec(4, 1)).unwrap_err(), SearchError::NotPrime(4));
    assert_eq!(enumerate(&frame_spec(257, 1)).unwrap_err(), SearchError::NotPrime(257));
    let e = enumerate(&spec(frame(), 2, ClaimKind::PreLie, &["circ"], 1)).unwrap_err();
    assert_eq!(e, SearchError::NoClaim(ClaimKind::PreLie));
    let e = enumerate(&spec(frame(), 2, ClaimKind::CurvedOos, &["nu"], 1)).unwrap_err();
    assert!(matches!(e, SearchError::BadUnknown { .. }), "{e}");
    let e = enumerate(&spec(frame(), 2, ClaimKind::CurvedOos, &["R", "R"], 1)).unwrap_err();
    assert_eq!(e, SearchError::DuplicateUnknown("R".into()));
    // mu, left, right and the rest: 8 + 2 + 2 + 2 + 2 + 1 = 17 scalars, 251^17 candidates
    let all = ["mu", "left", "right", "R", "S", "omega"];
    let e = enumerate(&spec(frame(), 251, ClaimKind::CurvedOos, &all, 1)).unwrap_err();
    assert!(matches!(e, SearchError::Budget { p: 251, scalars: 17, .. }), "{e}");
}

#[test]
fn frame_count_matches_the_oracle() {
    let out = enumerate(&frame_spec(2, usize::MAX)).unwrap();
    assert_eq!(out.candidates, 32);
    let prep = Prepared::new(&frame_spec(2, 1)).unwrap();
    let oracle = (0..32)
        .filter(|&i| {
            let b = prep.bundle(i);
            common::curved(&Roles::new(&b, &b.claims[0]).curved().unwrap())
        })
        .count() as u64;
    assert_eq!(out.count, oracle);
    assert_eq!(out.count, 17);
    assert_eq!(out.witnesses.len(), 17);
}

#[test]
fn witnesses_are_ordered_and_re_verify() {
    let out = enumerate(&frame_spec(3, usize::MAX)).unwrap();
    let idx: Vec<u64> = out.witnesses.iter().map(|w| w.index).collect();
    assert!(idx.windows(2).all(|w| w[0] < w[1]));
    for w in &out.witnesses {
        assert!(run_claim(&w.bundle, 0, Mode::Strict).unwrap().holds(), "{}", w.index);
        assert_eq!(w.bundle.ring, Ring::constants(Field::Prime(3)));
    }
    assert_eq!(enumerate(&frame_spec(3, usize::MAX)).unwrap(), out);
}

#[test]
fn limit_keeps_the_first_witnesses_and_the_full_count() {
    let full = enumerate(&frame_spec(3, usize::MAX)).unwrap();
    let two = enumerate(&frame_spec(3, 2)).unwrap();
    assert_eq!(two.count, full.count);
    assert_eq!(two.witnesses, full.witnesses[..2]);
    assert!(enumerate(&frame_spec(3, 0)).unwrap().witnesses.is_empty());
}

#[test]
fn no_unknowns_means_one_candidate() {
    let out = enumerate(&spec(frame(), 5, ClaimKind::CurvedOos, &[], 10)).unwrap();
    assert_eq!((out.candidates, out.count), (1, 1));
}

#[test]
fn pre_lie_products_on_a_line() {
    // x∘x = c x is associative, so both c = 0 and c = 1 are pre-Lie over F2
    let ring = Ring::constants(Field::Rationals);
    let l = Space::new("L", &["x"]).unwrap();
    let mut b = Bundle::new(ring.clone());
    b.add_bilinear("circ", BilMap::zero(&ring, &l, &l, &l));
    b.claims.push(Claim::new(ClaimKind::PreLie, &[("circ", "circ")]));
    let out = enumerate(&spec(b.clone(), 2, ClaimKind::PreLie, &["circ"], 10)).unwrap();
    assert_eq!((out.candidates, out.count), (2, 2));
    assert!(cross_check(&spec(b, 5, ClaimKind::PreLie, &["circ"], 10)).unwrap().agree());
}

#[test]
fn template_must_reduce() {
    let b = corpus_entry("ex2.3/f1/e1").unwrap().bundle.clone();
    let e = enumerate(&spec(b, 2, ClaimKind::CurvedOos, &["omega"], 1)).unwrap_err();
    assert!(matches!(e, SearchError::Reduce { p: 2, .. }), "{e}");
}

fn double_template(prime_ring: &Ring, opposite: bool) -> Bundle {
    // e1e1 = e1, e1e2 = e2, e2e1 = e2e2 = 0, or its opposite
    let a = Space::new("A", &["e1", "e2"]).unwrap();
    let one = |i, j, k| match (i, j, k) {
        (0, 0, 0) => true,
        (0, 1, 1) => !opposite,
        (1, 0, 1) => opposite,
        _ => false,
    };
    let ring = prime_ring;
    let mu = BilMap::from_fn(ring, &a, &a, &a, |i, j, k| if one(i, j, k) { ring.one() } else { ring.zero() });
    let mut b = Bundle::new(ring.clone());
    b.add_bilinear("mu", mu);
    b.add_linear("R", LinMap::zero(ring, &a, &a));
    b.add_linear("S", LinMap::zero(ring, &a, &a));
    b.add_bilinear("omega1", BilMap::zero(ring, &a, &a, &a));
    b.add_bilinear("omega2", BilMap::zero(ring, &a, &a, &a));
    let roles = [("mu", "mu"), ("R", "R"), ("S", "S"), ("omega1", "omega1"), ("omega2", "omega2")];
    b.claims.push(Claim::new(ClaimKind::DoubleCurvedRbs, &roles));
    b
}

fn operator_pairs(out: &SearchOutcome) -> BTreeSet<(Vec<Poly>, Vec<Poly>)> {
    out.witnesses.iter().map(|w| (w.bundle.linear["R"].entries().to_vec(), w.bundle.linear["S"].entries().to_vec())).collect()
}

#[test]
fn swapping_operators_maps_witnesses_to_the_opposite_algebra() {
    // with zero curvatures, (R, S) works for μ exactly when (S, R) works for μᵒᵖ
    for p in [2, 3] {
        let ring = Ring::constants(Field::Rationals);
        let run = |op| enumerate(&spec(double_template(&ring, op), p, ClaimKind::DoubleCurvedRbs, &["R", "S"], usize::MAX)).unwrap();
        let (plain, opposite) = (run(false), run(true));
        assert_eq!(plain.count, opposite.count);
        let swapped: BTreeSet<_> = operator_pairs(&plain).into_iter().map(|(r, s)| (s, r)).collect();
        assert_eq!(swapped, operator_pairs(&opposite), "F{p}");
        assert!(plain.count > 1);
    }
}

#[test]
fn cross_check_agrees_on_double_systems() {
    let ring = Ring::constants(Field::Rationals);
    let c = cross_check(&spec(double_template(&ring, false), 3, ClaimKind::DoubleCurvedRbs, &["R", "S"], 1)).unwrap();
    assert_eq!(c.candidates, 6561);
    assert!(c.agree(), "{:?}", c.first_difference());
}
