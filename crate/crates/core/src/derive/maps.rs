use crate::multilinear::{tensor_space, BilMap, LinMap};
use crate::structures::{cor_3_12_product, Bimodule, CurvedSystem, DendriformSystem, DoubleSystem, Result};

use crate::structures::StructureError;

/// `x⋗y = R(x)▷y`.
fn gtrdot(m: &Bimodule, r: &LinMap) -> Result<BilMap> {
    Ok(m.left.precompose_left(r)?)
}

/// `x◁S(y)`.
fn right_s(m: &Bimodule, s: &LinMap) -> Result<BilMap> {
    Ok(m.right.precompose_right(s)?)
}

/// `a≺x = aS(x)` and `x≻a = R(x)a`.
fn outer(m: &Bimodule, r: &LinMap, s: &LinMap) -> Result<(BilMap, BilMap)> {
    Ok((m.mu.precompose_right(s)?, m.mu.precompose_left(r)?))
}

/// The dendriform system of a curved system whose curvature plays `∘`.
pub fn dendriform(sys: &CurvedSystem) -> Result<DendriformSystem> {
    let m = &sys.module;
    let (prec, succ) = outer(m, &sys.r, &sys.s)?;
    let lessdot = right_s(m, &sys.s)?.try_add(&sys.omega)?;
    DendriformSystem::new(prec, succ, lessdot, gtrdot(m, &sys.r)?, None)
}

/// As [`dendriform`], with `∘` split off as the third product.
pub fn tridendriform(sys: &CurvedSystem) -> Result<DendriformSystem> {
    let m = &sys.module;
    let (prec, succ) = outer(m, &sys.r, &sys.s)?;
    DendriformSystem::new(prec, succ, right_s(m, &sys.s)?, gtrdot(m, &sys.r)?, Some(sys.omega.clone()))
}

/// `x⋆y = R(x)▷y + x◁S(y) + x∘y`.
pub fn star(m: &Bimodule, r: &LinMap, s: &LinMap, circ: &BilMap) -> Result<BilMap> {
    Ok(diamond(m, r, s)?.try_add(circ)?)
}

/// `x◇y = R(x)▷y + x◁S(y)`.
pub fn diamond(m: &Bimodule, r: &LinMap, s: &LinMap) -> Result<BilMap> {
    Ok(gtrdot(m, r)?.try_add(&right_s(m, s)?)?)
}

/// `x◆y = R(x)▷y − y◁S(x) + x∘y`.
pub fn blacklozenge(m: &Bimodule, r: &LinMap, s: &LinMap, circ: &BilMap) -> Result<BilMap> {
    Ok(gtrdot(m, r)?.try_sub(&right_s(m, s)?.transpose())?.try_add(circ)?)
}

/// `(α, β) = ((R+S)/2, (R−S)/2)`.
pub fn symmetrize(r: &LinMap, s: &LinMap) -> Result<(LinMap, LinMap)> {
    let field = r.ring().field();
    if field.characteristic() == 2 {
        return Err(StructureError::CharacteristicTwo("the symmetrizer".to_string()));
    }
    let inv2 = field.inv(&field.from_i64(2)).expect("2 is a unit");
    Ok((r.try_add(s)?.scale_scalar(&inv2), r.try_sub(s)?.scale_scalar(&inv2)))
}

/// The structures induced by a generalized Rota-Baxter operator `R` for a
/// compatible pair `(μ, ◇)`, all on the one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrbStructures {
    /// `x≺y = xR(y) + x◇y`.
    pub prec: BilMap,
    /// `x≻y = R(x)y`.
    pub succ: BilMap,
    /// `x∘y = R(x)y − yR(x) + x◇y`.
    pub pre_lie: BilMap,
    /// `x≺y = xR(y)`.
    pub tri_prec: BilMap,
    /// `x·y = x◇y`.
    pub tri_dot: BilMap,
    /// `x∗y = R(x)y + xR(y) + x◇y`.
    pub assoc: BilMap,
}

impl GrbStructures {
    pub fn dendriform(&self) -> Result<DendriformSystem> {
        DendriformSystem::single(self.prec.clone(), self.succ.clone(), None)
    }

    pub fn tridendriform(&self) -> Result<DendriformSystem> {
        DendriformSystem::single(self.tri_prec.clone(), self.succ.clone(), Some(self.tri_dot.clone()))
    }
}

pub fn grb_all(mu: &BilMap, nu: &BilMap, r: &LinMap) -> Result<GrbStructures> {
    let xr = mu.precompose_right(r)?;
    let rx = mu.precompose_left(r)?;
    Ok(GrbStructures {
        prec: xr.try_add(nu)?,
        succ: rx.clone(),
        pre_lie: rx.try_sub(&xr.transpose())?.try_add(nu)?,
        tri_prec: xr.clone(),
        tri_dot: nu.clone(),
        assoc: rx.try_add(&xr)?.try_add(nu)?,
    })
}

/// `a∗b = R(a)b + aS(b)`.
pub fn dcrbs_star(sys: &DoubleSystem) -> Result<BilMap> {
    Ok(sys.mu.precompose_left(&sys.r)?.try_add(&sys.mu.precompose_right(&sys.s)?)?)
}

/// `a∘b = R(a)b − bS(a)`.
pub fn dcrbs_prelie(sys: &DoubleSystem) -> Result<BilMap> {
    cor_3_12_product(sys)
}

/// `T = R⊗id + id⊗S` on `A⊗A` and
/// `𝒯 = R⊗R⊗id + R⊗id⊗S + id⊗S⊗S` on `A⊗A⊗A`.
pub fn pseudotwistor(sys: &DoubleSystem) -> Result<(LinMap, LinMap)> {
    let id = LinMap::identity(sys.ring(), sys.space());
    let (r, s) = (&sys.r, &sys.s);
    let k = LinMap::kron;
    let t = k(r, &id)?.try_add(&k(&id, s)?)?;
    let tt = k(&k(r, r)?, &id)?.try_add(&k(&k(r, &id)?, s)?)?.try_add(&k(&k(&id, s)?, s)?)?;
    Ok((t, tt))
}

/// `μ∘T` as a bilinear map on `A`.
pub fn mu_t(mu: &BilMap, t: &LinMap) -> Result<BilMap> {
    let a = mu.target();
    crate::structures::expect_lin(t, &tensor_space(a, a), &tensor_space(a, a), "T")?;
    let m = mu.as_linear().compose(t)?;
    let d = a.dim();
    Ok(BilMap::from_fn(mu.ring(), a, a, a, |i, j, k| m.entry(k, i * d + j).clone()))
}
