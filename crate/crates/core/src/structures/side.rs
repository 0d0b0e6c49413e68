use std::fmt;
use std::str::FromStr;

use crate::coeff::Poly;
use crate::multilinear::{tensor_space, BilMap, LinMap, TriTensor};

use super::checks::{check_associativity, left, operator_product, right};
use super::systems::{expect_bil, expect_lin};
use super::{Bimodule, Mode, Report, ReportBuilder, Result, StructureError};

/// Identities that appear as side conditions in the theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SideCondition {
    /// `(R(x)R(y) − R(x⋆y))▷z = x◁(S(y)S(z) − S(y⋆z))`.
    Eq2_22,
    /// `eq2.22` with `S = R`.
    Eq2_24,
    /// `β(x)▷y = x◁β(y)` for `β = (R − S)/2`.
    Eq2_26,
    /// `ω₁(x, y)▷z = x◁ω₂(y, z)` with `ω₁ = R∘ω`, `ω₂ = S∘ω`.
    Eq2_28,
    /// `λR(x∘y)▷z = λx◁R(y∘z)`.
    Eq2_30,
    /// `ω₁(a, b)c = aω₂(b, c)`.
    Eq3_7,
    /// `(ω₁(a, b) − ω₁(b, a))c = c(ω₂(a, b) − ω₂(b, a))`, the condition under
    /// which `a∘b = R(a)b − bS(a)` is pre-Lie for a double curved system.
    PreLieCurvature,
}

impl SideCondition {
    pub const ALL: [SideCondition; 7] = [
        SideCondition::Eq2_22,
        SideCondition::Eq2_24,
        SideCondition::Eq2_26,
        SideCondition::Eq2_28,
        SideCondition::Eq2_30,
        SideCondition::Eq3_7,
        SideCondition::PreLieCurvature,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            SideCondition::Eq2_22 => "eq2.22",
            SideCondition::Eq2_24 => "eq2.24",
            SideCondition::Eq2_26 => "eq2.26",
            SideCondition::Eq2_28 => "eq2.28",
            SideCondition::Eq2_30 => "eq2.30",
            SideCondition::Eq3_7 => "eq3.7",
            SideCondition::PreLieCurvature => "prelie_curvature",
        }
    }
}

impl fmt::Display for SideCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SideCondition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SideCondition::ALL.into_iter().find(|c| c.tag() == s).ok_or_else(|| format!("unknown side condition `{s}`"))
    }
}

/// The maps a side condition may mention. For the single-space conditions
/// (`eq3.7`, `prelie_curvature`) only `module.mu`, `omega1`, `omega2` are read.
#[derive(Clone, Copy, Debug, Default)]
pub struct SideInput<'a> {
    pub module: Option<&'a Bimodule>,
    pub circ: Option<&'a BilMap>,
    pub r: Option<&'a LinMap>,
    pub s: Option<&'a LinMap>,
    pub omega: Option<&'a BilMap>,
    pub omega1: Option<&'a BilMap>,
    pub omega2: Option<&'a BilMap>,
    pub lambda: Option<&'a Poly>,
}

fn need<'a, T>(x: Option<&'a T>, role: &str) -> Result<&'a T> {
    x.ok_or_else(|| StructureError::MissingRole(role.to_string()))
}

/// `(P(x)P(y) − P(x⋆y))▷z − x◁(Q(y)Q(z) − Q(y⋆z))` with
/// `x⋆y = P(x)▷y + x◁Q(y) + x∘y`.
fn star_defect(m: &Bimodule, circ: &BilMap, p: &LinMap, q: &LinMap) -> Result<TriTensor> {
    let star = operator_product(m, p, q)?.try_add(circ)?;
    let b1 = m.mu.precompose(p, p)?.try_sub(&star.postcompose(p)?)?;
    let b2 = m.mu.precompose(q, q)?.try_sub(&star.postcompose(q)?)?;
    Ok(left(&m.left, &b1)?.try_sub(&right(&m.right, &b2)?)?)
}

/// `w(x, y) − w(y, x)`.
fn antisym(w: &BilMap) -> Result<BilMap> {
    Ok(w.try_sub(&w.transpose())?)
}

/// Half of `R − S`; fails in characteristic 2.
pub(crate) fn half(f: &LinMap, what: &str) -> Result<LinMap> {
    let field = f.ring().field();
    if field.characteristic() == 2 {
        return Err(StructureError::CharacteristicTwo(what.to_string()));
    }
    let inv2 = field.inv(&field.from_i64(2)).expect("2 is invertible away from characteristic 2");
    Ok(f.scale_scalar(&inv2))
}

pub fn check_side_condition(cond: SideCondition, input: &SideInput<'_>) -> Result<Report> {
    let mut b = ReportBuilder::new(cond.tag(), Mode::Strict);
    let tag = cond.tag();
    let m = need(input.module, "mu")?;
    let (a, v) = (m.algebra(), m.module());
    match cond {
        SideCondition::Eq2_22 | SideCondition::Eq2_24 => {
            let circ = need(input.circ, "circ")?;
            let r = need(input.r, "R")?;
            let s = if cond == SideCondition::Eq2_22 { need(input.s, "S")? } else { r };
            expect_bil(circ, v, v, v, "∘")?;
            expect_lin(r, v, a, "R")?;
            expect_lin(s, v, a, "S")?;
            b.main(tag, &star_defect(m, circ, r, s)?);
        }
        SideCondition::Eq2_26 => {
            let r = need(input.r, "R")?;
            let s = need(input.s, "S")?;
            expect_lin(r, v, a, "R")?;
            expect_lin(s, v, a, "S")?;
            let beta = half(&r.try_sub(s)?, "the antisymmetrizer")?;
            b.main(tag, &m.left.precompose_left(&beta)?.try_sub(&m.right.precompose_right(&beta)?)?);
        }
        SideCondition::Eq2_28 => {
            let r = need(input.r, "R")?;
            let s = need(input.s, "S")?;
            let omega = need(input.omega, "omega")?;
            expect_lin(r, v, a, "R")?;
            expect_lin(s, v, a, "S")?;
            expect_bil(omega, v, v, v, "ω")?;
            let (w1, w2) = (omega.postcompose(r)?, omega.postcompose(s)?);
            b.main(tag, &left(&m.left, &w1)?.try_sub(&right(&m.right, &w2)?)?);
        }
        SideCondition::Eq2_30 => {
            let r = need(input.r, "R")?;
            let circ = need(input.circ, "circ")?;
            let lambda = need(input.lambda, "lambda")?;
            expect_lin(r, v, a, "R")?;
            expect_bil(circ, v, v, v, "∘")?;
            let rc = circ.postcompose(r)?;
            b.main(tag, &left(&m.left, &rc)?.try_sub(&right(&m.right, &rc)?)?.scale(lambda)?);
        }
        SideCondition::Eq3_7 | SideCondition::PreLieCurvature => {
            let mu = &m.mu;
            let w1 = need(input.omega1, "omega1")?;
            let w2 = need(input.omega2, "omega2")?;
            expect_bil(w1, a, a, a, "ω₁")?;
            expect_bil(w2, a, a, a, "ω₂")?;
            if cond == SideCondition::Eq3_7 {
                b.main(tag, &left(mu, w1)?.try_sub(&right(mu, w2)?)?);
            } else {
                let (d1, d2) = (antisym(w1)?, antisym(w2)?);
                b.main(tag, &left(mu, &d1)?.try_sub(&right(mu, &d2)?.permute([2, 0, 1])?)?);
            }
        }
    }
    Ok(b.finish())
}

/// The two twisting squares and the curvature square for `T` on `A⊗A`
/// with companion `𝒯`.
pub fn check_pseudotwistor(mu: &BilMap, t: &LinMap, tt: &LinMap, omega1: &BilMap, omega2: &BilMap, mode: Mode) -> Result<Report> {
    let a = mu.target();
    expect_bil(mu, a, a, a, "μ")?;
    expect_bil(omega1, a, a, a, "ω₁")?;
    expect_bil(omega2, a, a, a, "ω₂")?;
    let a2 = tensor_space(a, a);
    let a3 = tensor_space(a, &a2);
    expect_lin(t, &a2, &a2, "T")?;
    expect_lin(tt, &a3, &a3, "𝒯")?;
    let mut b = ReportBuilder::new("pseudotwistor", mode);
    if !b.hypothesis(check_associativity(mu)?) {
        return Ok(b.finish());
    }
    let ring = mu.ring();
    let id = LinMap::identity(ring, a);
    let m = mu.as_linear();
    let mt = m.compose(t)?;
    let (w1, w2) = (omega1.as_linear(), omega2.as_linear());
    let k = LinMap::kron;
    let lhs_a = t.compose(&k(&id, &mt)?)?;
    let rhs_a = k(&id, &m)?.compose(tt)?.try_sub(&k(&id, &w2)?)?;
    b.main("eq3.8a", &lhs_a.try_sub(&rhs_a)?);
    let lhs_b = t.compose(&k(&mt, &id)?)?;
    let rhs_b = k(&m, &id)?.compose(tt)?.try_sub(&k(&w1, &id)?)?;
    b.main("eq3.8b", &lhs_b.try_sub(&rhs_b)?);
    b.main("eq3.9", &m.compose(&k(&w1, &id)?)?.try_sub(&m.compose(&k(&id, &w2)?)?)?);
    Ok(b.finish())
}
