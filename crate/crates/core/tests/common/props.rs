//! Randomized kernel properties, shared by the property tests and the
//! acceptance harness. Each function runs `cases` cases with a fixed seed.

use std::collections::BTreeMap;
use std::fmt::Debug;

use oosys::coeff::{parse_poly, Field, Monomial, Poly, Ring, Scalar};
use oosys::corpus_io::{parse_bundle, serialize_bundle, Bundle, Claim, ClaimKind, Element, Expectation};
use oosys::multilinear::{BilMap, LinMap, Space};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

const PARAMS: [&str; 3] = ["a", "b", "c"];

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn finish<T: Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn rings() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::rationals(&PARAMS)), Just(Ring::new(Field::Prime(7), &PARAMS).unwrap())]
}

fn ratio(field: Field, n: i64, d: i64) -> Scalar {
    field.mul(&field.from_i64(n), &field.inv(&field.from_i64(d)).unwrap())
}

fn poly_in(ring: Ring) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0u32..3, PARAMS.len()), -9i64..=9, 1i64..=4);
    prop::collection::vec(term, 0..5).prop_map(move |ts| {
        let field = ring.field();
        Poly::from_terms(&ring, ts.into_iter().map(|(e, n, d)| (Monomial(e), ratio(field, n, d)))).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    rings().prop_flat_map(|r| (poly_in(r.clone()), poly_in(r.clone()), poly_in(r)))
}

pub fn ring_laws(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&triple(), |(a, b, c)| {
        let ring = a.ring().clone();
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &ring.zero(), a.clone());
        prop_assert_eq!(&a * &ring.one(), a.clone());
        prop_assert!((&a * &ring.zero()).is_zero());
        prop_assert!((&a - &a.clone()).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
        prop_assert_eq!(a.pow(2), &a * &a);
        Ok(())
    }))
}

pub fn eval_homomorphism(cases: u32) -> Result<(), String> {
    let point = prop::collection::vec((-6i64..=6, 1i64..=5), PARAMS.len());
    finish(runner(cases).run(&(triple(), point), |((a, b, _), point)| {
        let field = a.ring().field();
        let at: BTreeMap<String, Scalar> =
            PARAMS.iter().zip(&point).map(|(p, &(n, d))| (p.to_string(), ratio(field, n, d))).collect();
        let ev = |p: &Poly| p.eval(&at).unwrap();
        prop_assert_eq!(ev(&(&a + &b)), field.add(&ev(&a), &ev(&b)));
        prop_assert_eq!(ev(&(&a * &b)), field.mul(&ev(&a), &ev(&b)));
        prop_assert_eq!(ev(&(-&a)), field.neg(&ev(&a)));
        prop_assert_eq!(ev(&a.ring().one()), field.one());
        let partial: BTreeMap<String, Scalar> = at.iter().take(1).map(|(k, v)| (k.clone(), v.clone())).collect();
        prop_assert_eq!(ev(&a.substitute(&partial).unwrap()), ev(&a));
        Ok(())
    }))
}

pub fn parse_print(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&triple(), |(a, b, _)| {
        let ring = a.ring().clone();
        for p in [&a, &b, &(&a * &b)] {
            let text = p.to_string();
            let back = parse_poly(&text, &ring).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(&back, p, "printed as {}", text);
            prop_assert_eq!(back.to_string(), text);
        }
        Ok(())
    }))
}

fn space(name: &str, dim: usize) -> Space {
    let basis: Vec<String> = (1..=dim).map(|i| format!("{}{i}", name.to_lowercase())).collect();
    Space::new(name, &basis).unwrap()
}

type BilCase = ((usize, usize, usize), Vec<i64>, [Vec<i64>; 4], (i64, i64));

fn bil_case() -> impl Strategy<Value = BilCase> {
    (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(l, r, t)| {
        let v = |n| prop::collection::vec(-5i64..=5, n);
        (Just((l, r, t)), v(l * r * t), [v(l), v(l), v(r), v(r)], (-4i64..=4, -4i64..=4))
    })
}

pub fn bilinearity(cases: u32) -> Result<(), String> {
    let ring = Ring::rationals(&["a"]);
    finish(runner(cases).run(&bil_case(), |((l, r, t), coeffs, [x1, x2, y1, y2], (c0, c1))| {
        let (ls, rs, ts) = (space("L", l), space("R", r), space("T", t));
        let b = BilMap::from_fn(&ring, &ls, &rs, &ts, |i, j, k| ring.int(coeffs[(i * r + j) * t + k]));
        let c = &ring.int(c0) + &(&ring.var("a").unwrap() * &ring.int(c1));
        let vec = |v: &[i64]| v.iter().map(|&n| ring.int(n)).collect::<Vec<_>>();
        let (x1, x2, y1, y2) = (vec(&x1), vec(&x2), vec(&y1), vec(&y2));
        let comb = |u: &[Poly], w: &[Poly]| u.iter().zip(w).map(|(p, q)| &(&c * p) + q).collect::<Vec<_>>();
        let app = |x: &[Poly], y: &[Poly]| b.apply(x, y).unwrap();
        prop_assert_eq!(app(&comb(&x1, &x2), &y1), comb(&app(&x1, &y1), &app(&x2, &y1)));
        prop_assert_eq!(app(&x1, &comb(&y1, &y2)), comb(&app(&x1, &y1), &app(&x1, &y2)));
        prop_assert_eq!(b.transpose().apply(&y1, &x1).unwrap(), app(&x1, &y1));
        let f = LinMap::from_fn(&ring, &ts, &ls, |row, col| ring.int(coeffs[(row * t + col) % coeffs.len()]));
        let fa = |v: &[Poly]| f.apply(v).unwrap();
        let (u, w) = (app(&x1, &y1), app(&x2, &y2));
        prop_assert_eq!(fa(&comb(&u, &w)), comb(&fa(&u), &fa(&w)));
        prop_assert_eq!(b.postcompose(&f).unwrap().apply(&x1, &y1).unwrap(), fa(&u));
        Ok(())
    }))
}

fn bundle_case() -> impl Strategy<Value = Bundle> {
    let ring = prop_oneof![Just(Ring::rationals(&["a", "b"])), Just(Ring::new(Field::Prime(5), &["a"]).unwrap())];
    (ring, 1usize..=3, 1usize..=2, any::<bool>()).prop_flat_map(|(ring, da, dv, with_note)| {
        let polys = move |n| prop::collection::vec(poly_in_small(ring.clone()), n);
        (polys(2 * da * da * da), polys(da * da + dv * da), polys(da + 1), Just((da, dv, with_note)))
            .prop_map(|(bil, lin, extra, (da, dv, with_note))| build_bundle(&bil, &lin, &extra, da, dv, with_note))
    })
}

fn poly_in_small(ring: Ring) -> impl Strategy<Value = Poly> {
    let n = ring.nparams();
    let term = (prop::collection::vec(0u32..3, n), -9i64..=9, 1i64..=4);
    prop::collection::vec(term, 0..3).prop_map(move |ts| {
        let field = ring.field();
        Poly::from_terms(&ring, ts.into_iter().map(|(e, n, d)| (Monomial(e), ratio(field, n, d)))).unwrap()
    })
}

fn build_bundle(bil: &[Poly], lin: &[Poly], extra: &[Poly], da: usize, dv: usize, with_note: bool) -> Bundle {
    let ring = bil[0].ring().clone();
    let (a, v) = (space("A", da), space("V", dv));
    let n3 = da * da * da;
    let mu = BilMap::from_fn(&ring, &a, &a, &a, |i, j, k| bil[(i * da + j) * da + k].clone());
    let nu = BilMap::from_fn(&ring, &a, &a, &a, |i, j, k| bil[n3 + (i * da + j) * da + k].clone());
    let r = LinMap::from_fn(&ring, &a, &a, |row, col| lin[row * da + col].clone());
    let p = LinMap::from_fn(&ring, &v, &a, |row, col| lin[da * da + row * dv + col].clone());
    let mut b = Bundle::new(ring);
    b.add_bilinear("mu", mu);
    b.add_bilinear("nu", nu);
    b.add_linear("R", r);
    b.add_linear("P", p);
    b.elements.insert("u".into(), Element { space: "A".into(), coords: extra[..da].to_vec() });
    let mut claim = Claim::new(ClaimKind::Associativity, &[("mu", "mu")]).expecting(Expectation::Holds);
    if with_note {
        claim = claim.with_note("a note with \"quotes\" and unicode ⋆");
    }
    b.claims.push(claim);
    let constraints: Vec<Poly> = extra[da..].iter().filter(|p| !p.is_zero()).cloned().collect();
    let expect =
        if constraints.is_empty() { Expectation::Holds } else { Expectation::Conditional(constraints) };
    b.claims.push(Claim::new(ClaimKind::GeneralizedRb, &[("mu", "mu"), ("nu", "nu"), ("R", "R")]).expecting(expect));
    b
}

pub fn bundle_round_trip(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&bundle_case(), |b| {
        let text = serialize_bundle(&b);
        let back = parse_bundle(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(serialize_bundle(&back), text);
        Ok(())
    }))
}

/// Every kernel property with its name.
pub fn all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("ring laws", ring_laws(cases)),
        ("evaluation homomorphism", eval_homomorphism(cases)),
        ("parse/print round trip", parse_print(cases)),
        ("bilinearity", bilinearity(cases)),
        ("bundle round trip", bundle_round_trip(cases)),
    ]
}
