//! Random small systems over prime fields and apply-only oracles.
//!
//! The oracles never touch the tensor combinators: they feed basis vectors
//! through `BilMap::apply` / `LinMap::apply` and compare both sides.

#![allow(dead_code)]

pub mod props;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use oosys::coeff::{Field, Poly, Ring};
use oosys::multilinear::{basis_vector, BilMap, LinMap, Space};
use oosys::structures::{Bimodule, CurvedSystem, DendriformSystem, DoubleSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Vector = Vec<Poly>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fp(p: u32) -> Ring {
    Ring::constants(Field::Prime(p))
}

pub fn space(name: &str, dim: usize) -> Space {
    let basis: Vec<String> = (1..=dim).map(|i| format!("{}{i}", name.to_lowercase())).collect();
    Space::new(name, &basis).unwrap()
}

fn scalar(rng: &mut ChaCha8Rng, ring: &Ring) -> Poly {
    let p = ring.field().characteristic();
    ring.int(rng.gen_range(0..p) as i64)
}

pub fn random_bil(rng: &mut ChaCha8Rng, ring: &Ring, l: &Space, r: &Space, t: &Space) -> BilMap {
    BilMap::from_fn(ring, l, r, t, |_, _, _| scalar(rng, ring))
}

pub fn random_lin(rng: &mut ChaCha8Rng, ring: &Ring, s: &Space, t: &Space) -> LinMap {
    LinMap::from_fn(ring, s, t, |_, _| scalar(rng, ring))
}

// ---- vector arithmetic -------------------------------------------------

pub fn add(x: &[Poly], y: &[Poly]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a.try_add(b).unwrap()).collect()
}

pub fn sub(x: &[Poly], y: &[Poly]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a.try_sub(b).unwrap()).collect()
}

pub fn is_zero(x: &[Poly]) -> bool {
    x.iter().all(Poly::is_zero)
}

pub fn basis(ring: &Ring, s: &Space) -> Vec<Vector> {
    (0..s.dim()).map(|i| basis_vector(ring, s, i)).collect()
}

pub fn m(b: &BilMap, x: &[Poly], y: &[Poly]) -> Vector {
    b.apply(x, y).unwrap()
}

pub fn f(l: &LinMap, x: &[Poly]) -> Vector {
    l.apply(x).unwrap()
}

fn for_all3(xs: &[Vector], ys: &[Vector], zs: &[Vector], mut test: impl FnMut(&[Poly], &[Poly], &[Poly]) -> bool) -> bool {
    xs.iter().all(|x| ys.iter().all(|y| zs.iter().all(|z| test(x, y, z))))
}

fn for_all2(xs: &[Vector], ys: &[Vector], mut test: impl FnMut(&[Poly], &[Poly]) -> bool) -> bool {
    xs.iter().all(|x| ys.iter().all(|y| test(x, y)))
}

// ---- oracles -----------------------------------------------------------

pub fn assoc(mu: &BilMap) -> bool {
    let e = basis(mu.ring(), mu.target());
    for_all3(&e, &e, &e, |x, y, z| m(mu, &m(mu, x, y), z) == m(mu, x, &m(mu, y, z)))
}

pub fn pre_lie(c: &BilMap) -> bool {
    let e = basis(c.ring(), c.target());
    let asc = |x: &[Poly], y: &[Poly], z: &[Poly]| sub(&m(c, &m(c, x, y), z), &m(c, x, &m(c, y, z)));
    for_all3(&e, &e, &e, |x, y, z| asc(x, y, z) == asc(y, x, z))
}

pub fn bimodule(md: &Bimodule) -> bool {
    let ring = md.ring();
    let (a, v) = (basis(ring, md.algebra()), basis(ring, md.module()));
    let (mu, l, r) = (&md.mu, &md.left, &md.right);
    for_all3(&a, &a, &v, |x, y, z| m(l, x, &m(l, y, z)) == m(l, &m(mu, x, y), z))
        && for_all3(&v, &a, &a, |z, x, y| m(r, &m(r, z, x), y) == m(r, z, &m(mu, x, y)))
        && for_all3(&a, &v, &a, |x, z, y| m(r, &m(l, x, z), y) == m(l, x, &m(r, z, y)))
}

/// `R(x)▷y + x◁S(y) (+ ω(x, y))`.
pub fn inner(sys: &CurvedSystem, x: &[Poly], y: &[Poly], with_omega: bool) -> Vector {
    let md = &sys.module;
    let base = add(&m(&md.left, &f(&sys.r, x), y), &m(&md.right, x, &f(&sys.s, y)));
    if with_omega {
        add(&base, &m(&sys.omega, x, y))
    } else {
        base
    }
}

/// Both curved operator identities.
pub fn curved(sys: &CurvedSystem) -> bool {
    let ring = sys.ring();
    let v = basis(ring, sys.module.module());
    let mu = &sys.module.mu;
    for_all2(&v, &v, |x, y| {
        let w = inner(sys, x, y, true);
        [&sys.r, &sys.s].iter().all(|p| m(mu, &f(p, x), &f(p, y)) == f(p, &w))
    })
}

/// `R(x)▷(y∘z) = (R(x)▷y)∘z`, `(x∘y)◁S(z) = x∘(y◁S(z))`,
/// `x∘(R(y)▷z) = (x◁S(y))∘z`, plus associativity of `∘`.
pub fn extended(md: &Bimodule, circ: &BilMap, r: &LinMap, s: &LinMap) -> bool {
    let v = basis(md.ring(), md.module());
    let (l, rt) = (&md.left, &md.right);
    assoc(circ)
        && for_all3(&v, &v, &v, |x, y, z| {
            m(l, &f(r, x), &m(circ, y, z)) == m(circ, &m(l, &f(r, x), y), z)
                && m(rt, &m(circ, x, y), &f(s, z)) == m(circ, x, &m(rt, y, &f(s, z)))
                && m(circ, x, &m(l, &f(r, y), z)) == m(circ, &m(rt, x, &f(s, y)), z)
        })
}

pub fn dendriform(d: &DendriformSystem) -> bool {
    let ring = d.prec.ring();
    let (a, v) = (basis(ring, d.prec.left()), basis(ring, d.prec.right()));
    let (pr, su, ld, gd) = (&d.prec, &d.succ, &d.lessdot, &d.gtrdot);
    let sigma = |x: &[Poly], y: &[Poly]| {
        let s = add(&m(ld, x, y), &m(gd, x, y));
        match &d.dot {
            Some(dot) => add(&s, &m(dot, x, y)),
            None => s,
        }
    };
    let core = for_all3(&a, &v, &v, |a, x, y| m(pr, &m(pr, a, x), y) == m(pr, a, &sigma(x, y)))
        && for_all3(&v, &a, &v, |x, a, y| m(su, x, &m(pr, a, y)) == m(pr, &m(su, x, a), y))
        && for_all3(&v, &v, &a, |x, y, a| m(su, x, &m(su, y, a)) == m(su, &sigma(x, y), a))
        && for_all3(&v, &v, &v, |x, y, z| {
            m(ld, &m(ld, x, y), z) == m(ld, x, &sigma(y, z))
                && m(gd, x, &m(ld, y, z)) == m(ld, &m(gd, x, y), z)
                && m(gd, x, &m(gd, y, z)) == m(gd, &sigma(x, y), z)
        });
    let Some(dot) = &d.dot else { return core };
    core && for_all3(&v, &v, &v, |x, y, z| {
        m(dot, &m(ld, x, y), z) == m(dot, x, &m(gd, y, z))
            && m(dot, &m(gd, x, y), z) == m(gd, x, &m(dot, y, z))
            && m(ld, &m(dot, x, y), z) == m(dot, x, &m(ld, y, z))
            && m(dot, &m(dot, x, y), z) == m(dot, x, &m(dot, y, z))
    })
}

/// `(R(x)R(y) − R(x⋆y))▷z = x◁(S(y)S(z) − S(y⋆z))` with `⋆` built from `circ`.
pub fn star_condition(md: &Bimodule, circ: &BilMap, r: &LinMap, s: &LinMap) -> bool {
    let v = basis(md.ring(), md.module());
    let star = |x: &[Poly], y: &[Poly]| add(&add(&m(&md.left, &f(r, x), y), &m(&md.right, x, &f(s, y))), &m(circ, x, y));
    for_all3(&v, &v, &v, |x, y, z| {
        let b1 = sub(&m(&md.mu, &f(r, x), &f(r, y)), &f(r, &star(x, y)));
        let b2 = sub(&m(&md.mu, &f(s, y), &f(s, z)), &f(s, &star(y, z)));
        m(&md.left, &b1, z) == m(&md.right, x, &b2)
    })
}

/// `R(ω(x, y))▷z = x◁S(ω(y, z))`.
pub fn eq2_28(sys: &CurvedSystem) -> bool {
    let v = basis(sys.ring(), sys.module.module());
    let (md, w) = (&sys.module, &sys.omega);
    for_all3(&v, &v, &v, |x, y, z| m(&md.left, &f(&sys.r, &m(w, x, y)), z) == m(&md.right, x, &f(&sys.s, &m(w, y, z))))
}

/// `prod` is associative on basis vectors.
pub fn assoc_of(s: &Space, ring: &Ring, prod: impl Fn(&[Poly], &[Poly]) -> Vector) -> bool {
    let v = basis(ring, s);
    for_all3(&v, &v, &v, |x, y, z| prod(&prod(x, y), z) == prod(x, &prod(y, z)))
}

pub fn pre_lie_of(s: &Space, ring: &Ring, prod: impl Fn(&[Poly], &[Poly]) -> Vector) -> bool {
    let v = basis(ring, s);
    let asc = |x: &[Poly], y: &[Poly], z: &[Poly]| sub(&prod(&prod(x, y), z), &prod(x, &prod(y, z)));
    for_all3(&v, &v, &v, |x, y, z| asc(x, y, z) == asc(y, x, z))
}

pub fn double(sys: &DoubleSystem) -> bool {
    let e = basis(sys.ring(), sys.space());
    let mu = &sys.mu;
    assoc(mu)
        && for_all2(&e, &e, |a, b| {
            let inner = add(&m(mu, &f(&sys.r, a), b), &m(mu, a, &f(&sys.s, b)));
            m(mu, &f(&sys.r, a), &f(&sys.r, b)) == add(&f(&sys.r, &inner), &m(&sys.omega1, a, b))
                && m(mu, &f(&sys.s, a), &f(&sys.s, b)) == add(&f(&sys.s, &inner), &m(&sys.omega2, a, b))
        })
}

/// `ω₁(a, b)c = aω₂(b, c)`.
pub fn eq3_7(sys: &DoubleSystem) -> bool {
    let e = basis(sys.ring(), sys.space());
    let mu = &sys.mu;
    for_all3(&e, &e, &e, |a, b, c| m(mu, &m(&sys.omega1, a, b), c) == m(mu, a, &m(&sys.omega2, b, c)))
}

/// `ω₁(a, b) − ω₂(b, a)` is central for all basis `a, b`.
pub fn central_curvature(sys: &DoubleSystem) -> bool {
    let e = basis(sys.ring(), sys.space());
    let mu = &sys.mu;
    for_all3(&e, &e, &e, |a, b, c| {
        let w = sub(&m(&sys.omega1, a, b), &m(&sys.omega2, b, a));
        m(mu, &w, c) == m(mu, c, &w)
    })
}

/// `(ω₁(a, b) − ω₁(b, a))c = c(ω₂(a, b) − ω₂(b, a))`.
pub fn prelie_curvature(sys: &DoubleSystem) -> bool {
    let e = basis(sys.ring(), sys.space());
    let mu = &sys.mu;
    for_all3(&e, &e, &e, |a, b, c| {
        let w1 = sub(&m(&sys.omega1, a, b), &m(&sys.omega1, b, a));
        let w2 = sub(&m(&sys.omega2, a, b), &m(&sys.omega2, b, a));
        m(mu, &w1, c) == m(mu, c, &w2)
    })
}

// ---- generators --------------------------------------------------------

/// Every associative product on a space of dimension `dim` over `F_p`.
pub fn all_associative(p: u32, dim: usize) -> &'static [BilMap] {
    type Cache = Mutex<HashMap<(u32, usize), &'static [BilMap]>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache.entry((p, dim)).or_insert_with(|| {
        let ring = fp(p);
        let a = space("A", dim);
        let n = dim * dim * dim;
        let found: Vec<BilMap> = all_vectors(&ring, n)
            .into_iter()
            .map(|c| BilMap::from_fn(&ring, &a, &a, &a, |i, j, k| c[(i * dim + j) * dim + k].clone()))
            .filter(assoc)
            .collect();
        Box::leak(found.into_boxed_slice())
    })
}

pub fn random_assoc(rng: &mut ChaCha8Rng, p: u32, dim: usize) -> BilMap {
    let all = all_associative(p, dim);
    all[rng.gen_range(0..all.len())].clone()
}

/// The regular bimodule a third of the time, otherwise a random bimodule on
/// a one-dimensional `V`.
pub fn random_module(rng: &mut ChaCha8Rng, mu: &BilMap) -> Bimodule {
    let ring = mu.ring();
    let a = mu.target();
    if rng.gen_ratio(1, 3) {
        return Bimodule::regular(mu.clone()).unwrap();
    }
    let v = space("V", 1);
    loop {
        let l = random_bil(rng, ring, a, &v, &v);
        let r = random_bil(rng, ring, &v, a, &v);
        let md = Bimodule::new(mu.clone(), l, r).unwrap();
        if bimodule(&md) {
            return md;
        }
    }
}

fn all_vectors(ring: &Ring, dim: usize) -> Vec<Vector> {
    let p = ring.field().characteristic() as usize;
    (0..p.pow(dim as u32))
        .map(|mut n| {
            (0..dim)
                .map(|_| {
                    let d = n % p;
                    n /= p;
                    ring.int(d as i64)
                })
                .collect()
        })
        .collect()
}

/// A curvature making `(R, S)` a curved system, chosen at random among all
/// solutions; `None` if some pair `(x, y)` has no solution.
pub fn solve_omega(rng: &mut ChaCha8Rng, md: &Bimodule, r: &LinMap, s: &LinMap) -> Option<BilMap> {
    let ring = md.ring();
    let v = md.module();
    let e = basis(ring, v);
    let candidates = all_vectors(ring, v.dim());
    let mut images = Vec::new();
    for x in &e {
        for y in &e {
            let base = add(&m(&md.left, &f(r, x), y), &m(&md.right, x, &f(s, y)));
            let tr = sub(&m(&md.mu, &f(r, x), &f(r, y)), &f(r, &base));
            let ts = sub(&m(&md.mu, &f(s, x), &f(s, y)), &f(s, &base));
            let sols: Vec<&Vector> = candidates.iter().filter(|w| f(r, w) == tr && f(s, w) == ts).collect();
            if sols.is_empty() {
                return None;
            }
            images.push(sols[rng.gen_range(0..sols.len())].clone());
        }
    }
    let n = v.dim();
    Some(BilMap::from_fn(ring, v, v, v, |i, j, k| images[i * n + j][k].clone()))
}

/// A random curved system on a two-dimensional algebra.
pub fn random_curved(rng: &mut ChaCha8Rng, p: u32) -> CurvedSystem {
    let ring = fp(p);
    let a = space("A", 2);
    loop {
        let mu = random_assoc(rng, p, 2);
        let md = random_module(rng, &mu);
        let v = md.module().clone();
        let r = random_lin(rng, &ring, &v, &a);
        let s = random_lin(rng, &ring, &v, &a);
        if let Some(w) = solve_omega(rng, &md, &r, &s) {
            return CurvedSystem::new(md, r, s, w).unwrap();
        }
    }
}

/// A random double system: `ω₁, ω₂` are forced by `μ, R, S`.
pub fn random_double(rng: &mut ChaCha8Rng, p: u32, dim: usize) -> DoubleSystem {
    let ring = fp(p);
    let a = space("A", dim);
    let mu = random_assoc(rng, p, dim);
    let r = random_lin(rng, &ring, &a, &a);
    let s = random_lin(rng, &ring, &a, &a);
    forced_double(mu, r, s)
}

pub fn forced_double(mu: BilMap, r: LinMap, s: LinMap) -> DoubleSystem {
    let ring = mu.ring().clone();
    let a = mu.target().clone();
    let e = basis(&ring, &a);
    let n = a.dim();
    let mut w1 = Vec::new();
    let mut w2 = Vec::new();
    for x in &e {
        for y in &e {
            let inner = add(&m(&mu, &f(&r, x), y), &m(&mu, x, &f(&s, y)));
            w1.push(sub(&m(&mu, &f(&r, x), &f(&r, y)), &f(&r, &inner)));
            w2.push(sub(&m(&mu, &f(&s, x), &f(&s, y)), &f(&s, &inner)));
        }
    }
    let o1 = BilMap::from_fn(&ring, &a, &a, &a, |i, j, k| w1[i * n + j][k].clone());
    let o2 = BilMap::from_fn(&ring, &a, &a, &a, |i, j, k| w2[i * n + j][k].clone());
    DoubleSystem::new(mu, r, s, o1, o2).unwrap()
}

/// `R(x)R(y) = R(R(x)y + xR(y) + x◇y)`.
pub fn generalized_rb(mu: &BilMap, nu: &BilMap, r: &LinMap) -> bool {
    let e = basis(mu.ring(), mu.target());
    for_all2(&e, &e, |x, y| {
        let inner = add(&add(&m(mu, &f(r, x), y), &m(mu, x, &f(r, y))), &m(nu, x, y));
        m(mu, &f(r, x), &f(r, y)) == f(r, &inner)
    })
}

pub fn compatible(mu: &BilMap, nu: &BilMap) -> bool {
    let e = basis(mu.ring(), mu.target());
    assoc(mu)
        && assoc(nu)
        && for_all3(&e, &e, &e, |x, y, z| {
            let a = m(nu, &m(mu, x, y), z);
            a == m(mu, x, &m(nu, y, z)) && a == m(mu, &m(nu, x, y), z) && a == m(nu, x, &m(mu, y, z))
        })
}

/// A generalized Rota-Baxter operator for a random compatible pair on a
/// two-dimensional space, chosen among all solutions.
pub fn random_grb(rng: &mut ChaCha8Rng, p: u32) -> (BilMap, BilMap, LinMap) {
    let ring = fp(p);
    let a = space("A", 2);
    let mu = random_assoc(rng, p, 2);
    let scaled = |rng: &mut ChaCha8Rng| mu.scale_scalar(&ring.field().from_i64(rng.gen_range(0..p) as i64));
    let nu = if rng.gen_bool(0.5) {
        scaled(rng)
    } else {
        (0..200).map(|_| random_assoc(rng, p, 2)).find(|nu| compatible(&mu, nu)).unwrap_or_else(|| scaled(rng))
    };
    let ops: Vec<LinMap> = all_vectors(&ring, 4)
        .into_iter()
        .map(|c| LinMap::from_fn(&ring, &a, &a, |row, col| c[row * 2 + col].clone()))
        .filter(|r| generalized_rb(&mu, &nu, r))
        .collect();
    let r = ops[rng.gen_range(0..ops.len())].clone();
    (mu, nu, r)
}

/// A random double system satisfying `ω₁(a, b)c = aω₂(b, c)`.
pub fn random_double_eq3_7(rng: &mut ChaCha8Rng, p: u32, dim: usize) -> DoubleSystem {
    loop {
        let sys = random_double(rng, p, dim);
        if eq3_7(&sys) {
            return sys;
        }
    }
}
