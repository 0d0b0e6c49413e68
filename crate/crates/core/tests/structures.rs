mod common;

use common::{assoc, basis, fp, m, space};
use oosys::coeff::{Poly, Ring};
use oosys::corpus_io::{corpus_entry, Roles};
use oosys::derive as dv;
use oosys::multilinear::{BilMap, LinMap, Space};
use oosys::structures::*;

fn ea() -> Space {
    Space::new("A", &["e1", "e2"]).unwrap()
}

fn q() -> Ring {
    Ring::rationals(&["p"])
}

/// A bilinear map on `A` from `(i, j, k, text)` entries.
fn table(ring: &Ring, a: &Space, entries: &[(usize, usize, usize, &str)]) -> BilMap {
    BilMap::from_fn(ring, a, a, a, |i, j, k| {
        entries.iter().find(|e| (e.0, e.1, e.2) == (i, j, k)).map_or(ring.zero(), |e| ring.parse(e.3).unwrap())
    })
}

fn entry_roles(id: &str, index: usize) -> (Roles<'static>, &'static oosys::corpus_io::Bundle) {
    let b = &corpus_entry(id).unwrap().bundle;
    (Roles::new(b, &b.claims[index]), b)
}

fn curved_of(id: &str) -> CurvedSystem {
    let b = &corpus_entry(id).unwrap().bundle;
    let i = b.claims.iter().position(|c| c.kind == oosys::corpus_io::ClaimKind::CurvedOos).unwrap();
    Roles::new(b, &b.claims[i]).curved().unwrap()
}

fn ex23_mu() -> BilMap {
    curved_of("ex2.3/f1/e1").module.mu
}

fn pair() -> (BilMap, BilMap) {
    let b = &corpus_entry("ex3.4a/pair").unwrap().bundle;
    (b.bilinear["mu"].clone(), b.bilinear["nu"].clone())
}

#[test]
fn associativity_examples() {
    assert!(check_associativity(&ex23_mu()).unwrap().holds());
    let a = ea();
    assert!(check_associativity(&BilMap::zero(&q(), &a, &a, &a)).unwrap().holds());
    // e1e1 = e2, e1e2 = e1, e2x = 0: e1(e1e2) = e2 but (e1e1)e2 = 0
    let bad = table(&q(), &a, &[(0, 0, 1, "1"), (0, 1, 0, "1")]);
    let r = check_associativity(&bad).unwrap();
    assert!(r.verdict.is_fails());
    assert!(!assoc(&bad));
    // one-dimensional products are associative for any structure constant
    let line = space("L", 1);
    let ring = Ring::rationals(&["t"]);
    let t = BilMap::from_fn(&ring, &line, &line, &line, |_, _, _| ring.parse("t^2 - 3").unwrap());
    assert!(check_associativity(&t).unwrap().holds());
}

#[test]
fn bimodule_examples() {
    let (roles, _) = entry_roles("ex2.3/f1/e1", 0);
    assert!(check_bimodule(&roles.module().unwrap()).unwrap().holds());
    let (roles, _) = entry_roles("ex2.3/f2/e1", 0);
    assert!(check_bimodule(&roles.module().unwrap()).unwrap().holds());
    let mu = ex23_mu();
    let (a, v) = (ea(), space("V", 1));
    let trivial = Bimodule::new(mu.clone(), BilMap::zero(&q(), &a, &v, &v), BilMap::zero(&q(), &v, &a, &v)).unwrap();
    assert!(check_bimodule(&trivial).unwrap().holds());
    assert!(check_bimodule(&Bimodule::regular(mu.clone()).unwrap()).unwrap().holds());
    // e2 ▷ v1 = v1 alone: (e1e2) ▷ v1 = v1 but e1 ▷ (e2 ▷ v1) = 0
    let left = BilMap::from_fn(&q(), &a, &v, &v, |i, _, _| if i == 1 { q().one() } else { q().zero() });
    let bad = Bimodule::new(mu, left, BilMap::zero(&q(), &v, &a, &v)).unwrap();
    assert!(!check_bimodule(&bad).unwrap().holds());
    assert!(!common::bimodule(&bad));
}

#[test]
fn curved_examples() {
    for id in ["ex2.3/f1/e1", "ex2.3/f1/e4", "ex2.3/f2/e2", "ex2.3/2dim", "ex2.3-frame"] {
        assert!(check_curved_oos(&curved_of(id), Mode::Strict).unwrap().holds(), "{id}");
    }
    // doubling ω on f1/e1: S(v1)S(v1) = p²e1 but S(ω(v1, v1)) = 2p²e1
    let mut sys = curved_of("ex2.3/f1/e1");
    sys.omega = sys.omega.scale(&q().int(2)).unwrap();
    let r = check_curved_oos(&sys, Mode::Strict).unwrap();
    assert!(matches!(r.verdict, Verdict::ConditionallyHolds(_)), "{:?}", r.verdict);
    assert_eq!(r.verdict.constraints(), [q().parse("p^2").unwrap()]);
}

#[test]
fn strict_mode_stops_at_a_failed_hypothesis() {
    let mut sys = curved_of("ex2.3/f1/e1");
    let a = ea();
    let (mu_bad, left) = (table(&q(), &a, &[(0, 0, 1, "1"), (0, 1, 0, "1")]), sys.module.left.clone());
    sys.module = Bimodule::new(mu_bad, left, sys.module.right.clone()).unwrap();
    let strict = check_curved_oos(&sys, Mode::Strict).unwrap();
    assert!(strict.verdict.is_fails());
    assert!(strict.halted.is_some());
    let audit = check_curved_oos(&sys, Mode::Audit).unwrap();
    assert!(audit.halted.is_none());
    assert!(audit.equations.len() > strict.equations.len());
}

#[test]
fn specialization_examples() {
    let mu = ex23_mu();
    let a = ea();
    let (zero, id) = (LinMap::zero(&q(), &a, &a), LinMap::identity(&q(), &a));
    let minus_id = id.neg();
    let holds = |k: Specialization, r: &LinMap| {
        let input = SpecializationInput { mu: Some(&mu), r: Some(r), ..Default::default() };
        check_specialization(&k, &input, Mode::Strict).unwrap().holds()
    };
    assert!(holds(Specialization::RotaBaxterWeight(q().zero()), &zero));
    // R = −id: xy = −(−2xy + λxy) needs λ = 1
    assert!(holds(Specialization::RotaBaxterWeight(q().one()), &minus_id));
    assert!(!holds(Specialization::RotaBaxterWeight(q().zero()), &minus_id));
    assert!(holds(Specialization::Nijenhuis, &id));
    assert!(holds(Specialization::Reynolds, &id));
    let unit = vec![q().one(), q().zero()];
    let td = SpecializationInput { mu: Some(&mu), r: Some(&id), unit: Some(&unit), ..Default::default() };
    assert!(check_specialization(&Specialization::TDAlgebra, &td, Mode::Strict).unwrap().holds());
    let no_unit = SpecializationInput { unit: None, ..td.clone() };
    assert!(matches!(check_specialization(&Specialization::TDAlgebra, &no_unit, Mode::Strict), Err(StructureError::MissingUnit)));
    let not_unit = vec![q().zero(), q().one()];
    let bad = SpecializationInput { unit: Some(&not_unit), ..td };
    assert!(matches!(check_specialization(&Specialization::TDAlgebra, &bad, Mode::Strict), Err(StructureError::BadUnit(_))));

    let oos = curved_of("ex2.3/oos/e1");
    let input = SpecializationInput { module: Some(&oos.module), r: Some(&oos.r), s: Some(&oos.s), ..Default::default() };
    assert!(check_specialization(&Specialization::OOperatorSystem, &input, Mode::Strict).unwrap().holds());
    let missing = SpecializationInput { r: None, ..input };
    assert!(matches!(
        check_specialization(&Specialization::OOperatorSystem, &missing, Mode::Strict),
        Err(StructureError::MissingRole(_))
    ));
}

#[test]
fn extended_bimodule_algebra_examples() {
    let sys = curved_of("ex2.3/f1/e1");
    let md = &sys.module;
    assert!(check_extended_bimodule_algebra(md, &sys.omega, &sys.r, &sys.s, Mode::Strict).unwrap().holds());
    let v = md.module().clone();
    let zero = BilMap::zero(md.ring(), &v, &v, &v);
    assert!(check_extended_bimodule_algebra(md, &zero, &sys.r, &sys.s, Mode::Strict).unwrap().holds());

    let b = &corpus_entry("ex3.4a/R1").unwrap().bundle;
    let (mu, nu) = pair();
    let regular = Bimodule::regular(mu).unwrap();
    let r = &b.linear["R"];
    assert!(check_extended_bimodule_algebra(&regular, &nu, r, r, Mode::Strict).unwrap().holds());
}

#[test]
fn dendriform_examples() {
    let a = ea();
    let v = space("V", 1);
    let z = |l: &Space, r: &Space, t: &Space| BilMap::zero(&q(), l, r, t);
    let d = DendriformSystem::new(z(&a, &v, &a), z(&v, &a, &a), z(&v, &v, &v), z(&v, &v, &v), None).unwrap();
    assert!(check_dendriform_system(&d).unwrap().holds());
    let t = DendriformSystem::new(z(&a, &v, &a), z(&v, &a, &a), z(&v, &v, &v), z(&v, &v, &v), Some(z(&v, &v, &v))).unwrap();
    assert!(check_tridendriform_system(&t).unwrap().holds());

    // μ/2 on both sides of an associative algebra is not dendriform in general
    let mu = ex23_mu();
    let half = mu.scale(&q().parse("1/2").unwrap()).unwrap();
    let h = DendriformSystem::new(half.clone(), half.clone(), half.clone(), half.clone(), None).unwrap();
    assert_eq!(check_dendriform_system(&h).unwrap().holds(), common::dendriform(&h));
    assert!(!check_dendriform_system(&h).unwrap().holds());
}

#[test]
fn pre_lie_examples() {
    // associative products are pre-Lie
    assert!(check_pre_lie(&ex23_mu()).unwrap().holds());
    let a = ea();
    let bad = table(&q(), &a, &[(0, 0, 1, "1"), (0, 1, 0, "1")]);
    assert_eq!(check_pre_lie(&bad).unwrap().holds(), common::pre_lie(&bad));
    // the derived product of an ex2.3 system
    let sys = curved_of("ex2.3/f1/e2");
    let bl = dv::blacklozenge(&sys.module, &sys.r, &sys.s, &sys.omega).unwrap();
    assert!(check_pre_lie(&bl).unwrap().holds());
}

#[test]
fn compatible_pair_examples() {
    let (mu, nu) = pair();
    assert!(check_compatible_pair(&mu, &mu).unwrap().holds());
    assert!(check_compatible_pair(&mu, &nu).unwrap().holds());
    let a = ea();
    let zero = BilMap::zero(mu.ring(), &a, &a, &a);
    assert!(check_compatible_pair(&mu, &zero).unwrap().holds());
    let bad = table(mu.ring(), &a, &[(0, 0, 1, "1"), (0, 1, 0, "1")]);
    assert!(!check_compatible_pair(&mu, &bad).unwrap().holds());
}

#[test]
fn generalized_rb_examples() {
    for id in ["ex3.4a/R1", "ex3.4a/R2", "ex3.4a/R11"] {
        let b = &corpus_entry(id).unwrap().bundle;
        let r = check_generalized_rb(&b.bilinear["mu"], &b.bilinear["nu"], &b.linear["R"]).unwrap();
        assert!(r.holds(), "{id}");
    }
    let (mu, _) = pair();
    let a = ea();
    let ring = mu.ring().clone();
    let zero_nu = BilMap::zero(&ring, &a, &a, &a);
    assert!(check_generalized_rb(&mu, &zero_nu, &LinMap::zero(&ring, &a, &a)).unwrap().holds());
    // R = id with ν = 0 needs xy = 2xy
    assert!(!check_generalized_rb(&mu, &zero_nu, &LinMap::identity(&ring, &a)).unwrap().holds());
}

#[test]
fn double_system_examples() {
    let mu = ex23_mu();
    let a = ea();
    let zero = LinMap::zero(&q(), &a, &a);
    let w = BilMap::zero(&q(), &a, &a, &a);
    let sys = DoubleSystem::new(mu.clone(), zero.clone(), zero, w.clone(), w.clone()).unwrap();
    assert!(check_double_curved_rbs(&sys, Mode::Strict).unwrap().holds());
    // R = S = −id with ω₁ = ω₂ = −μ
    let minus = LinMap::identity(&q(), &a).neg();
    let sys = DoubleSystem::new(mu.clone(), minus.clone(), minus, mu.neg(), mu.neg()).unwrap();
    assert_eq!(check_double_curved_rbs(&sys, Mode::Strict).unwrap().holds(), common::double(&sys));
}

#[test]
fn side_condition_examples() {
    let sys = curved_of("ex2.3/f1/e1");
    let md = &sys.module;
    let v = md.module().clone();
    let zero = BilMap::zero(md.ring(), &v, &v, &v);
    let input = SideInput { module: Some(md), r: Some(&sys.r), s: Some(&sys.s), omega: Some(&zero), ..Default::default() };
    assert!(check_side_condition(SideCondition::Eq2_28, &input).unwrap().holds());
    let same = SideInput { s: Some(&sys.r), ..input };
    assert!(check_side_condition(SideCondition::Eq2_26, &same).unwrap().holds());
    let missing = SideInput { r: None, ..input };
    assert!(matches!(check_side_condition(SideCondition::Eq2_26, &missing), Err(StructureError::MissingRole(_))));
    for c in SideCondition::ALL {
        assert_eq!(c.tag().parse::<SideCondition>().unwrap(), c);
    }

    // the antisymmetrizer needs 1/2
    let f2 = fp(2);
    let (a2, v2) = (space("A", 2), space("V", 1));
    let md2 = Bimodule::new(
        common::all_associative(2, 2)[0].clone(),
        BilMap::zero(&f2, &a2, &v2, &v2),
        BilMap::zero(&f2, &v2, &a2, &v2),
    )
    .unwrap();
    let r = LinMap::zero(&f2, &v2, &a2);
    let input = SideInput { module: Some(&md2), r: Some(&r), s: Some(&r), ..Default::default() };
    assert!(matches!(check_side_condition(SideCondition::Eq2_26, &input), Err(StructureError::CharacteristicTwo(_))));
}

#[test]
fn pseudotwistor_examples() {
    let mu = ex23_mu();
    let a = ea();
    let ring = q();
    let w = BilMap::zero(&ring, &a, &a, &a);
    let zero = LinMap::zero(&ring, &a, &a);
    let check = |r: &LinMap, s: &LinMap, w1: &BilMap, w2: &BilMap| {
        let sys = DoubleSystem::new(mu.clone(), r.clone(), s.clone(), w1.clone(), w2.clone()).unwrap();
        let (t, tt) = dv::pseudotwistor(&sys).unwrap();
        check_pseudotwistor(&mu, &t, &tt, w1, w2, Mode::Strict).unwrap()
    };
    // with R = S = 0 the twistor is zero and the diagrams hold trivially
    assert!(check(&zero, &zero, &w, &w).holds());
    // R = id, S = 0 is a double system with ω₁ = −μ, ω₂ = 0
    let id = LinMap::identity(&ring, &a);
    let sys = common::forced_double(mu.clone(), id.clone(), zero.clone());
    assert!(common::double(&sys));
    assert!(check(&id, &zero, &sys.omega1, &sys.omega2).holds());
    // the all-zero twistor with nonzero curvature fails the compatibility square
    let a2 = oosys::multilinear::tensor_space(&a, &a);
    let a3 = oosys::multilinear::tensor_space(&a, &a2);
    let (t0, tt0) = (LinMap::zero(&ring, &a2, &a2), LinMap::zero(&ring, &a3, &a3));
    assert!(!check_pseudotwistor(&mu, &t0, &tt0, &mu, &w, Mode::Strict).unwrap().holds());
}

#[test]
fn morphism_examples() {
    let sys = curved_of("ex2.3/f1/e1");
    let (a, v) = (sys.module.algebra().clone(), sys.module.module().clone());
    let ring = sys.ring().clone();
    let (ida, idv) = (LinMap::identity(&ring, &a), LinMap::identity(&ring, &v));
    assert!(check_morphism(&sys, &sys, &ida, &idv, false, Mode::Strict).unwrap().holds());
    let (za, zv) = (LinMap::zero(&ring, &a, &a), LinMap::zero(&ring, &v, &v));
    assert!(check_morphism(&sys, &sys, &za, &zv, false, Mode::Strict).unwrap().holds());

    // g = 2·id onto the system with R, S, ω halved
    let two = ring.int(2);
    let half = ring.parse("1/2").unwrap();
    let g = idv.scale(&two).unwrap();
    let dst = CurvedSystem::new(
        sys.module.clone(),
        sys.r.scale(&half).unwrap(),
        sys.s.scale(&half).unwrap(),
        sys.omega.scale(&half).unwrap(),
    )
    .unwrap();
    assert!(check_morphism(&sys, &dst, &ida, &g, false, Mode::Strict).unwrap().holds());
    let r = check_morphism(&sys, &sys, &ida, &g, false, Mode::Strict).unwrap();
    assert!(!r.holds());
    assert!(r.verdict.constraints().iter().all(|c| !c.is_constant()));
}

#[test]
fn center_examples() {
    let field = q().field();
    assert_eq!(compute_center(&ex23_mu()).unwrap().len(), 2);
    // e1e1 = e1, e1e2 = e2: x = a e1 + b e2 central forces b = 0 and a = 0
    let a = ea();
    let nc = table(&Ring::constants(field), &a, &[(0, 0, 0, "1"), (0, 1, 1, "1")]);
    assert!(check_associativity(&nc).unwrap().holds());
    assert_eq!(compute_center(&nc).unwrap().len(), 0);
    assert_eq!(central_count(&nc.try_map_coeffs(&fp(3), |p| p.convert(&fp(3))).unwrap()), 1);
    let ring = Ring::rationals(&["p"]);
    let param = table(&ring, &a, &[(0, 0, 0, "p")]);
    assert!(matches!(compute_center(&param), Err(StructureError::Unsupported(_))));
}

/// Number of central vectors, by enumeration over a prime field.
fn central_count(mu: &BilMap) -> usize {
    let ring = mu.ring();
    let p = ring.field().characteristic() as usize;
    let n = mu.target().dim();
    let e = basis(ring, mu.target());
    (0..p.pow(n as u32))
        .filter(|&code| {
            let x: Vec<Poly> = (0..n).map(|i| ring.int(((code / p.pow(i as u32)) % p) as i64)).collect();
            e.iter().all(|y| m(mu, &x, y) == m(mu, y, &x))
        })
        .count()
}

#[test]
fn center_dimension_matches_enumeration() {
    let mut rng = common::rng(41);
    for _ in 0..60 {
        let mu = common::random_assoc(&mut rng, 3, 2);
        let dim = compute_center(&mu).unwrap().len();
        assert_eq!(3usize.pow(dim as u32), central_count(&mu), "{mu:?}");
    }
}

#[test]
fn stated_central_condition_misses_a_pre_lie_failure() {
    // Over F2 on the commutative ex2.3 algebra every element is central,
    // yet a∘b = R(a)b − bS(a) need not be pre-Lie.
    let f2 = fp(2);
    let mu = ex23_mu().try_map_coeffs(&f2, |p| p.convert(&f2)).unwrap();
    let a = ea();
    let mut found = None;
    'outer: for code in 0..256u32 {
        let bit = |i: u32| f2.int(((code >> i) & 1) as i64);
        let r = LinMap::from_fn(&f2, &a, &a, |row, col| bit((row * 2 + col) as u32));
        let s = LinMap::from_fn(&f2, &a, &a, |row, col| bit(4 + (row * 2 + col) as u32));
        let sys = common::forced_double(mu.clone(), r, s);
        let out = check_cor_3_12(&sys, Mode::Strict).unwrap();
        if out.central.is_holds() && !out.pre_lie.is_holds() {
            assert!(!common::prelie_curvature(&sys));
            assert_eq!(out.agree, Some(false));
            found = Some(code);
            break 'outer;
        }
    }
    assert!(found.is_some());
}
