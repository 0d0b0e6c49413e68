//! A second evaluator for the searchable structures: machine-word residues,
//! both sides of every axiom applied to basis vectors, no tensor algebra.

use std::collections::BTreeMap;

use crate::corpus_io::{Bundle, Claim, ClaimKind};

#[derive(Clone, Debug)]
pub(crate) struct Bil {
    r: usize,
    t: usize,
    c: Vec<u32>,
}

#[derive(Clone, Debug)]
pub(crate) struct Lin {
    s: usize,
    t: usize,
    c: Vec<u32>,
}

#[derive(Clone, Debug)]
pub(crate) enum Dense {
    Bil(Bil),
    Lin(Lin),
}

impl Dense {
    pub(crate) fn coeffs_mut(&mut self) -> &mut Vec<u32> {
        match self {
            Dense::Bil(b) => &mut b.c,
            Dense::Lin(f) => &mut f.c,
        }
    }
}

fn residue(p: &crate::coeff::Poly) -> u32 {
    match p.constant_term() {
        crate::coeff::Scalar::Residue(r) => r,
        crate::coeff::Scalar::Rational(_) => unreachable!("search bundles live over a prime field"),
    }
}

/// Dense copies of every map in a bundle over a prime field.
pub(crate) fn densify(bundle: &Bundle) -> BTreeMap<String, Dense> {
    let mut out = BTreeMap::new();
    for (name, b) in &bundle.bilinear {
        let d = Bil { r: b.right().dim(), t: b.target().dim(), c: b.coeffs().iter().map(residue).collect() };
        out.insert(name.clone(), Dense::Bil(d));
    }
    for (name, f) in &bundle.linear {
        let d = Lin { s: f.source().dim(), t: f.target().dim(), c: f.entries().iter().map(residue).collect() };
        out.insert(name.clone(), Dense::Lin(d));
    }
    out
}

struct Ev<'a> {
    p: u32,
    maps: &'a BTreeMap<String, Dense>,
    claim: &'a Claim,
}

type V = Vec<u32>;

impl Ev<'_> {
    fn bil(&self, role: &str) -> Option<&Bil> {
        match self.maps.get(self.claim.bind.get(role)?)? {
            Dense::Bil(b) => Some(b),
            Dense::Lin(_) => None,
        }
    }

    fn lin(&self, role: &str) -> Option<&Lin> {
        match self.maps.get(self.claim.bind.get(role)?)? {
            Dense::Lin(f) => Some(f),
            Dense::Bil(_) => None,
        }
    }

    fn mul(&self, b: &Bil, x: &[u32], y: &[u32]) -> V {
        let mut out = vec![0u64; b.t];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let w = (xi as u64 * yj as u64) % self.p as u64;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * b.c[(i * b.r + j) * b.t + k] as u64;
                }
            }
        }
        out.into_iter().map(|v| (v % self.p as u64) as u32).collect()
    }

    fn app(&self, f: &Lin, x: &[u32]) -> V {
        (0..f.t)
            .map(|r| (x.iter().enumerate().map(|(c, &xc)| xc as u64 * f.c[r * f.s + c] as u64).sum::<u64>() % self.p as u64) as u32)
            .collect()
    }

    fn add(&self, x: &[u32], y: &[u32]) -> V {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    fn e(&self, n: usize, i: usize) -> V {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    fn associative(&self, m: &Bil) -> bool {
        let n = m.t;
        triples(n, n, n).all(|(i, j, k)| {
            let (x, y, z) = (self.e(n, i), self.e(n, j), self.e(n, k));
            self.mul(m, &self.mul(m, &x, &y), &z) == self.mul(m, &x, &self.mul(m, &y, &z))
        })
    }

    fn bimodule(&self, mu: &Bil, l: &Bil, r: &Bil) -> bool {
        let (a, v) = (mu.t, l.t);
        let e = |n, i| self.e(n, i);
        triples(a, a, v).all(|(i, j, k)| {
            self.mul(l, &e(a, i), &self.mul(l, &e(a, j), &e(v, k))) == self.mul(l, &self.mul(mu, &e(a, i), &e(a, j)), &e(v, k))
        }) && triples(v, a, a).all(|(k, i, j)| {
            self.mul(r, &self.mul(r, &e(v, k), &e(a, i)), &e(a, j)) == self.mul(r, &e(v, k), &self.mul(mu, &e(a, i), &e(a, j)))
        }) && triples(a, v, a).all(|(i, k, j)| {
            self.mul(r, &self.mul(l, &e(a, i), &e(v, k)), &e(a, j)) == self.mul(l, &e(a, i), &self.mul(r, &e(v, k), &e(a, j)))
        })
    }

    /// `P(x)P(y) = P(R(x)▷y + x◁S(y) + ω(x, y))` for `P = R, S`.
    fn curved(&self, mu: &Bil, l: &Bil, r: &Bil, rr: &Lin, ss: &Lin, w: Option<&Bil>) -> bool {
        let v = l.t;
        pairs(v, v).all(|(i, j)| {
            let (x, y) = (self.e(v, i), self.e(v, j));
            let mut inner = self.add(&self.mul(l, &self.app(rr, &x), &y), &self.mul(r, &x, &self.app(ss, &y)));
            if let Some(w) = w {
                inner = self.add(&inner, &self.mul(w, &x, &y));
            }
            [rr, ss].iter().all(|p| self.mul(mu, &self.app(p, &x), &self.app(p, &y)) == self.app(p, &inner))
        })
    }

    fn module(&self) -> Option<(&Bil, &Bil, &Bil)> {
        let mu = self.bil("mu")?;
        match (self.bil("left"), self.bil("right")) {
            (Some(l), Some(r)) => Some((mu, l, r)),
            _ => Some((mu, mu, mu)),
        }
    }

    fn run(&self) -> Option<bool> {
        use ClaimKind::*;
        Some(match self.claim.kind {
            Associativity => self.associative(self.bil("mu")?),
            Bimodule => {
                let (mu, l, r) = self.module()?;
                self.bimodule(mu, l, r)
            }
            CurvedOos | Oos => {
                let (mu, l, r) = self.module()?;
                let w = if self.claim.kind == CurvedOos { Some(self.bil("omega")?) } else { None };
                self.associative(mu) && self.bimodule(mu, l, r) && self.curved(mu, l, r, self.lin("R")?, self.lin("S")?, w)
            }
            DoubleCurvedRbs => {
                let mu = self.bil("mu")?;
                let (rr, ss) = (self.lin("R")?, self.lin("S")?);
                let (w1, w2) = (self.bil("omega1")?, self.bil("omega2")?);
                let n = mu.t;
                self.associative(mu)
                    && pairs(n, n).all(|(i, j)| {
                        let (a, b) = (self.e(n, i), self.e(n, j));
                        let inner = self.add(&self.mul(mu, &self.app(rr, &a), &b), &self.mul(mu, &a, &self.app(ss, &b)));
                        [(rr, w1), (ss, w2)].iter().all(|(p, w)| {
                            self.mul(mu, &self.app(p, &a), &self.app(p, &b)) == self.add(&self.app(p, &inner), &self.mul(w, &a, &b))
                        })
                    })
            }
            GeneralizedRb => {
                let (mu, nu, rr) = (self.bil("mu")?, self.bil("nu")?, self.lin("R")?);
                let n = mu.t;
                pairs(n, n).all(|(i, j)| {
                    let (x, y) = (self.e(n, i), self.e(n, j));
                    let (rx, ry) = (self.app(rr, &x), self.app(rr, &y));
                    let inner = self.add(&self.add(&self.mul(mu, &rx, &y), &self.mul(mu, &x, &ry)), &self.mul(nu, &x, &y));
                    self.mul(mu, &rx, &ry) == self.app(rr, &inner)
                })
            }
            CompatiblePair => {
                let (mu, nu) = (self.bil("mu")?, self.bil("nu")?);
                let n = mu.t;
                self.associative(mu)
                    && self.associative(nu)
                    && triples(n, n, n).all(|(i, j, k)| {
                        let (x, y, z) = (self.e(n, i), self.e(n, j), self.e(n, k));
                        let a = self.mul(nu, &self.mul(mu, &x, &y), &z);
                        let b = self.mul(mu, &x, &self.mul(nu, &y, &z));
                        let c = self.mul(mu, &self.mul(nu, &x, &y), &z);
                        let d = self.mul(nu, &x, &self.mul(mu, &y, &z));
                        a == b && b == c && c == d
                    })
            }
            PreLie => {
                let m = self.bil("circ")?;
                let n = m.t;
                let assoc = |x: &V, y: &V, z: &V| -> V {
                    let lhs = self.mul(m, &self.mul(m, x, y), z);
                    let rhs = self.mul(m, x, &self.mul(m, y, z));
                    lhs.iter().zip(&rhs).map(|(a, b)| (a + self.p - b) % self.p).collect()
                };
                triples(n, n, n).all(|(i, j, k)| {
                    let (x, y, z) = (self.e(n, i), self.e(n, j), self.e(n, k));
                    assoc(&x, &y, &z) == assoc(&y, &x, &z)
                })
            }
            _ => return None,
        })
    }
}

fn pairs(a: usize, b: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..a).flat_map(move |i| (0..b).map(move |j| (i, j)))
}

fn triples(a: usize, b: usize, c: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..a).flat_map(move |i| (0..b).flat_map(move |j| (0..c).map(move |k| (i, j, k))))
}

/// Kinds the direct evaluator understands.
pub fn supports(kind: ClaimKind) -> bool {
    use ClaimKind::*;
    matches!(kind, Associativity | Bimodule | CurvedOos | Oos | DoubleCurvedRbs | GeneralizedRb | CompatiblePair | PreLie)
}

/// `None` when the kind is unsupported or a role is missing.
pub(crate) fn holds(p: u32, maps: &BTreeMap<String, Dense>, claim: &Claim) -> Option<bool> {
    Ev { p, maps, claim }.run()
}
