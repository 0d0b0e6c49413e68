use crate::coeff::Ring;
use crate::multilinear::{BilMap, LinMap, Space};

use super::Result;

fn expect(found: &Space, expected: &Space, context: &str) -> Result<()> {
    Ok(crate::multilinear::check_space(expected, found, context)?)
}

fn expect_ring(found: &Ring, expected: &Ring) -> Result<()> {
    if found != expected {
        return Err(crate::coeff::CoeffError::RingMismatch { left: expected.to_string(), right: found.to_string() }.into());
    }
    Ok(())
}

pub(crate) fn expect_bil(b: &BilMap, l: &Space, r: &Space, t: &Space, role: &str) -> Result<()> {
    expect(b.left(), l, &format!("left argument of {role}"))?;
    expect(b.right(), r, &format!("right argument of {role}"))?;
    expect(b.target(), t, &format!("target of {role}"))
}

pub(crate) fn expect_lin(f: &LinMap, s: &Space, t: &Space, role: &str) -> Result<()> {
    expect(f.source(), s, &format!("source of {role}"))?;
    expect(f.target(), t, &format!("target of {role}"))
}

/// An algebra `(A, μ)` with actions `▷: A⊗V→V` and `◁: V⊗A→V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub mu: BilMap,
    pub left: BilMap,
    pub right: BilMap,
}

impl Bimodule {
    pub fn new(mu: BilMap, left: BilMap, right: BilMap) -> Result<Self> {
        let a = mu.target().clone();
        let v = left.target().clone();
        expect_bil(&mu, &a, &a, &a, "μ")?;
        expect_bil(&left, &a, &v, &v, "▷")?;
        expect_bil(&right, &v, &a, &v, "◁")?;
        expect_ring(left.ring(), mu.ring())?;
        expect_ring(right.ring(), mu.ring())?;
        Ok(Bimodule { mu, left, right })
    }

    /// `V = A` with both actions given by `μ`.
    pub fn regular(mu: BilMap) -> Result<Self> {
        Self::new(mu.clone(), mu.clone(), mu)
    }

    pub fn ring(&self) -> &Ring {
        self.mu.ring()
    }

    pub fn algebra(&self) -> &Space {
        self.mu.target()
    }

    pub fn module(&self) -> &Space {
        self.left.target()
    }
}

/// `(A, V, R, S, ω)` over a bimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvedSystem {
    pub module: Bimodule,
    pub r: LinMap,
    pub s: LinMap,
    pub omega: BilMap,
}

impl CurvedSystem {
    pub fn new(module: Bimodule, r: LinMap, s: LinMap, omega: BilMap) -> Result<Self> {
        let (a, v) = (module.algebra(), module.module());
        expect_lin(&r, v, a, "R")?;
        expect_lin(&s, v, a, "S")?;
        expect_bil(&omega, v, v, v, "ω")?;
        for ring in [r.ring(), s.ring(), omega.ring()] {
            expect_ring(ring, module.ring())?;
        }
        Ok(CurvedSystem { module, r, s, omega })
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }
}

/// `(A, R, S, ω₁, ω₂)` on a single algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSystem {
    pub mu: BilMap,
    pub r: LinMap,
    pub s: LinMap,
    pub omega1: BilMap,
    pub omega2: BilMap,
}

impl DoubleSystem {
    pub fn new(mu: BilMap, r: LinMap, s: LinMap, omega1: BilMap, omega2: BilMap) -> Result<Self> {
        let a = mu.target().clone();
        expect_bil(&mu, &a, &a, &a, "μ")?;
        expect_lin(&r, &a, &a, "R")?;
        expect_lin(&s, &a, &a, "S")?;
        expect_bil(&omega1, &a, &a, &a, "ω₁")?;
        expect_bil(&omega2, &a, &a, &a, "ω₂")?;
        for ring in [r.ring(), s.ring(), omega1.ring(), omega2.ring()] {
            expect_ring(ring, mu.ring())?;
        }
        Ok(DoubleSystem { mu, r, s, omega1, omega2 })
    }

    pub fn ring(&self) -> &Ring {
        self.mu.ring()
    }

    pub fn space(&self) -> &Space {
        self.mu.target()
    }
}

/// `≺: A⊗V→A`, `≻: V⊗A→A` and `⋖, ⋗ (, ·): V⊗V→V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DendriformSystem {
    pub prec: BilMap,
    pub succ: BilMap,
    pub lessdot: BilMap,
    pub gtrdot: BilMap,
    pub dot: Option<BilMap>,
}

impl DendriformSystem {
    pub fn new(prec: BilMap, succ: BilMap, lessdot: BilMap, gtrdot: BilMap, dot: Option<BilMap>) -> Result<Self> {
        let a = prec.target().clone();
        let v = prec.right().clone();
        expect_bil(&prec, &a, &v, &a, "≺")?;
        expect_bil(&succ, &v, &a, &a, "≻")?;
        expect_bil(&lessdot, &v, &v, &v, "⋖")?;
        expect_bil(&gtrdot, &v, &v, &v, "⋗")?;
        let mut rings = vec![succ.ring(), lessdot.ring(), gtrdot.ring()];
        if let Some(d) = &dot {
            expect_bil(d, &v, &v, &v, "·")?;
            rings.push(d.ring());
        }
        for ring in rings {
            expect_ring(ring, prec.ring())?;
        }
        Ok(DendriformSystem { prec, succ, lessdot, gtrdot, dot })
    }

    /// Single-space system on `A` with `≺ = ⋖` and `≻ = ⋗`.
    pub fn single(prec: BilMap, succ: BilMap, dot: Option<BilMap>) -> Result<Self> {
        Self::new(prec.clone(), succ.clone(), prec, succ, dot)
    }
}
