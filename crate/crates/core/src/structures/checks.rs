use crate::coeff::Poly;
use crate::multilinear::{BilMap, LinMap, TriTensor};

use super::systems::{expect_bil, expect_lin};
use super::{Bimodule, CurvedSystem, DendriformSystem, DoubleSystem, Mode, Report, ReportBuilder, Result, StructureError};

pub(crate) fn left(outer: &BilMap, inner: &BilMap) -> Result<TriTensor> {
    Ok(TriTensor::compose_left(outer, inner)?)
}

pub(crate) fn right(outer: &BilMap, inner: &BilMap) -> Result<TriTensor> {
    Ok(TriTensor::compose_right(outer, inner)?)
}

pub(crate) fn sum(maps: &[&BilMap]) -> Result<BilMap> {
    let mut acc = maps[0].clone();
    for m in &maps[1..] {
        acc = acc.try_add(m)?;
    }
    Ok(acc)
}

/// `(x∘y)∘z − x∘(y∘z)`.
pub(crate) fn associator(m: &BilMap) -> Result<TriTensor> {
    Ok(left(m, m)?.try_sub(&right(m, m)?)?)
}

/// `R(x)▷y + x◁S(y)`, the operator part of the curved identities.
pub(crate) fn operator_product(module: &Bimodule, r: &LinMap, s: &LinMap) -> Result<BilMap> {
    Ok(module.left.precompose_left(r)?.try_add(&module.right.precompose_right(s)?)?)
}

/// `P(x)P(y) − P(R(x)▷y + x◁S(y) + ω(x, y))`.
fn operator_defect(module: &Bimodule, p: &LinMap, inner: &BilMap) -> Result<BilMap> {
    Ok(module.mu.precompose(p, p)?.try_sub(&inner.postcompose(p)?)?)
}

pub fn check_associativity(mu: &BilMap) -> Result<Report> {
    let v = mu.target();
    expect_bil(mu, v, v, v, "μ")?;
    let mut b = ReportBuilder::new("associativity", Mode::Strict);
    b.main("eq3.1", &associator(mu)?);
    Ok(b.finish())
}

pub fn check_bimodule(module: &Bimodule) -> Result<Report> {
    let (mu, l, r) = (&module.mu, &module.left, &module.right);
    let mut b = ReportBuilder::new("bimodule", Mode::Strict);
    b.main("eq1.2a", &right(l, l)?.try_sub(&left(l, mu)?)?);
    b.main("eq1.2b", &left(r, r)?.try_sub(&right(r, mu)?)?);
    b.main("eq1.2c", &left(r, l)?.try_sub(&right(l, r)?)?);
    Ok(b.finish())
}

/// `(V, ∘, ▷, ◁)` as an A-bimodule algebra: bimodule axioms, associativity
/// of `∘`, and compatibility of the actions with `∘`.
pub fn check_bimodule_algebra(module: &Bimodule, circ: &BilMap) -> Result<Report> {
    let v = module.module();
    expect_bil(circ, v, v, v, "∘")?;
    let (l, r) = (&module.left, &module.right);
    let mut b = ReportBuilder::new("bimodule_algebra", Mode::Strict);
    for eq in check_bimodule(module)?.equations {
        b.main(&eq.tag, &eq.residuals);
    }
    b.main("assoc.circ", &associator(circ)?);
    b.main("bimod-alg.a", &right(l, circ)?.try_sub(&left(circ, l)?)?);
    b.main("bimod-alg.b", &left(r, circ)?.try_sub(&right(circ, r)?)?);
    b.main("bimod-alg.c", &left(circ, r)?.try_sub(&right(circ, l)?)?);
    Ok(b.finish())
}

pub fn check_curved_oos(sys: &CurvedSystem, mode: Mode) -> Result<Report> {
    let mut b = ReportBuilder::new("curved_oos", mode);
    if !b.hypothesis(check_associativity(&sys.module.mu)?) || !b.hypothesis(check_bimodule(&sys.module)?) {
        return Ok(b.finish());
    }
    let inner = operator_product(&sys.module, &sys.r, &sys.s)?.try_add(&sys.omega)?;
    b.main("eq2.1", &operator_defect(&sys.module, &sys.r, &inner)?);
    b.main("eq2.2", &operator_defect(&sys.module, &sys.s, &inner)?);
    Ok(b.finish())
}

/// The special cases of curved O-operator systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `V = A` regular, `S = R`, `ω = λμ`.
    RotaBaxterWeight(Poly),
    /// `S = R`, `ω = λ∘`; requires an A-bimodule algebra.
    OOperatorWeight(Poly),
    /// `V = A` regular with arbitrary `R, S, ω`.
    CurvedRotaBaxterSystem,
    /// `ω = 0`.
    OOperatorSystem,
    /// `V = A` regular, `S = R`, `ω = −μ(R⊗R)`.
    Reynolds,
    /// `V = A` regular, `S = R`, `ω(a, b) = −a R(1) b`.
    TDAlgebra,
    /// `V = A` regular, `S = R`, `ω = −R∘μ`.
    Nijenhuis,
}

impl Specialization {
    pub fn name(&self) -> &'static str {
        match self {
            Specialization::RotaBaxterWeight(_) => "rota_baxter",
            Specialization::OOperatorWeight(_) => "o_operator_weight",
            Specialization::CurvedRotaBaxterSystem => "curved_rbs",
            Specialization::OOperatorSystem => "oos",
            Specialization::Reynolds => "reynolds",
            Specialization::TDAlgebra => "td_algebra",
            Specialization::Nijenhuis => "nijenhuis",
        }
    }
}

fn need<'a, T>(x: Option<&'a T>, role: &str) -> Result<&'a T> {
    x.ok_or_else(|| StructureError::MissingRole(role.to_string()))
}

/// The inputs a specialization may draw on. `module` defaults to the regular
/// bimodule of `mu`.
#[derive(Clone, Debug, Default)]
pub struct SpecializationInput<'a> {
    pub mu: Option<&'a BilMap>,
    pub module: Option<&'a Bimodule>,
    pub r: Option<&'a LinMap>,
    pub s: Option<&'a LinMap>,
    pub omega: Option<&'a BilMap>,
    pub circ: Option<&'a BilMap>,
    pub unit: Option<&'a [Poly]>,
}

fn validate_unit(mu: &BilMap, unit: &[Poly]) -> Result<()> {
    let a = mu.target();
    if unit.len() != a.dim() {
        return Err(StructureError::BadUnit(format!("unit has {} coordinates, {} has dimension {}", unit.len(), a, a.dim())));
    }
    for i in 0..a.dim() {
        let e = crate::multilinear::basis_vector(mu.ring(), a, i);
        if mu.apply(unit, &e)? != e || mu.apply(&e, unit)? != e {
            return Err(StructureError::BadUnit(format!("1·{0} or {0}·1 differs from {0}", a.label(i))));
        }
    }
    Ok(())
}

/// Builds the curved system a specialization stands for.
pub fn specialize(kind: &Specialization, input: &SpecializationInput<'_>) -> Result<CurvedSystem> {
    use Specialization::*;
    let regular = || -> Result<Bimodule> { Bimodule::regular(need(input.mu, "mu")?.clone()) };
    let r = || need(input.r, "R").cloned();
    match kind {
        RotaBaxterWeight(lambda) => {
            let m = regular()?;
            let omega = m.mu.scale(lambda)?;
            CurvedSystem::new(m, r()?, r()?, omega)
        }
        OOperatorWeight(lambda) => {
            let m = match input.module {
                Some(m) => m.clone(),
                None => regular()?,
            };
            let omega = need(input.circ, "circ")?.scale(lambda)?;
            CurvedSystem::new(m, r()?, r()?, omega)
        }
        CurvedRotaBaxterSystem => {
            CurvedSystem::new(regular()?, r()?, need(input.s, "S")?.clone(), need(input.omega, "omega")?.clone())
        }
        OOperatorSystem => {
            let m = match input.module {
                Some(m) => m.clone(),
                None => regular()?,
            };
            let v = m.module().clone();
            let omega = BilMap::zero(m.ring(), &v, &v, &v);
            CurvedSystem::new(m, r()?, need(input.s, "S")?.clone(), omega)
        }
        Reynolds => {
            let m = regular()?;
            let rr = r()?;
            let omega = m.mu.precompose(&rr, &rr)?.neg();
            CurvedSystem::new(m, rr.clone(), rr, omega)
        }
        TDAlgebra => {
            let m = regular()?;
            let unit = input.unit.ok_or(StructureError::MissingUnit)?;
            validate_unit(&m.mu, unit)?;
            let rr = r()?;
            let r1 = rr.apply(unit)?;
            let a = m.algebra().clone();
            let ring = m.ring().clone();
            let omega = BilMap::from_fn(&ring, &a, &a, &a, |i, j, k| {
                let ei = crate::multilinear::basis_vector(&ring, &a, i);
                let ej = crate::multilinear::basis_vector(&ring, &a, j);
                let x = m.mu.apply(&ei, &r1).expect("shapes checked");
                -&m.mu.apply(&x, &ej).expect("shapes checked")[k]
            });
            CurvedSystem::new(m, rr.clone(), rr, omega)
        }
        Nijenhuis => {
            let m = regular()?;
            let rr = r()?;
            let omega = m.mu.postcompose(&rr)?.neg();
            CurvedSystem::new(m, rr.clone(), rr, omega)
        }
    }
}

pub fn check_specialization(kind: &Specialization, input: &SpecializationInput<'_>, mode: Mode) -> Result<Report> {
    let sys = specialize(kind, input)?;
    let mut b = ReportBuilder::new(kind.name(), mode);
    if let Specialization::OOperatorWeight(_) = kind {
        let circ = need(input.circ, "circ")?;
        if !b.hypothesis(check_bimodule_algebra(&sys.module, circ)?) {
            return Ok(b.finish());
        }
    }
    let inner = check_curved_oos(&sys, mode)?;
    for eq in inner.equations {
        b.push(&eq.tag, eq.role, &eq.residuals);
    }
    if let Some(h) = inner.halted {
        b.halt(h);
    }
    Ok(b.finish())
}

/// The compatibility of `(V, ∘, ▷, ◁)` with `R, S`. The two forms of
/// `x∘((R − S)(y)▷z) = 0` are reported as auxiliary residuals.
pub fn check_extended_bimodule_algebra(module: &Bimodule, circ: &BilMap, r: &LinMap, s: &LinMap, mode: Mode) -> Result<Report> {
    let (a, v) = (module.algebra(), module.module());
    expect_bil(circ, v, v, v, "∘")?;
    expect_lin(r, v, a, "R")?;
    expect_lin(s, v, a, "S")?;
    let mut b = ReportBuilder::new("extended_bimodule_algebra", mode);
    if !b.hypothesis(check_associativity(&module.mu)?) || !b.hypothesis(check_bimodule(module)?) {
        return Ok(b.finish());
    }
    let lr = module.left.precompose_left(r)?;
    let rs = module.right.precompose_right(s)?;
    b.main("assoc.circ", &associator(circ)?);
    b.main("eq2.3a", &right(&lr, circ)?.try_sub(&left(circ, &lr)?)?);
    b.main("eq2.3b", &left(&rs, circ)?.try_sub(&right(circ, &rs)?)?);
    b.main("eq2.3c", &right(circ, &lr)?.try_sub(&left(circ, &rs)?)?);
    let diff = r.try_sub(s)?;
    b.aux("eq2.4", &right(circ, &module.left.precompose_left(&diff)?)?);
    b.aux("eq2.4b", &left(circ, &module.right.precompose_right(&diff)?)?);
    Ok(b.finish())
}

fn dendriform_report(sys: &DendriformSystem, claim: &str) -> Result<Report> {
    let (prec, succ, ld, gd) = (&sys.prec, &sys.succ, &sys.lessdot, &sys.gtrdot);
    let mut parts = vec![ld, gd];
    if let Some(d) = &sys.dot {
        parts.push(d);
    }
    let sigma = sum(&parts)?;
    let tags: [&str; 6] = if sys.dot.is_some() {
        ["eq2.12", "eq2.13", "eq2.14", "eq2.15", "eq2.16", "eq2.17"]
    } else {
        ["eq2.5", "eq2.6", "eq2.7", "eq2.8", "eq2.9", "eq2.10"]
    };
    let mut b = ReportBuilder::new(claim, Mode::Strict);
    b.main(tags[0], &left(prec, prec)?.try_sub(&right(prec, &sigma)?)?);
    b.main(tags[1], &right(succ, prec)?.try_sub(&left(prec, succ)?)?);
    b.main(tags[2], &right(succ, succ)?.try_sub(&left(succ, &sigma)?)?);
    b.main(tags[3], &left(ld, ld)?.try_sub(&right(ld, &sigma)?)?);
    b.main(tags[4], &right(gd, ld)?.try_sub(&left(ld, gd)?)?);
    b.main(tags[5], &right(gd, gd)?.try_sub(&left(gd, &sigma)?)?);
    if let Some(d) = &sys.dot {
        b.main("eq2.18a", &left(d, ld)?.try_sub(&right(d, gd)?)?);
        b.main("eq2.18b", &left(d, gd)?.try_sub(&right(gd, d)?)?);
        b.main("eq2.19a", &left(ld, d)?.try_sub(&right(d, ld)?)?);
        b.main("eq2.19b", &associator(d)?);
    }
    Ok(b.finish())
}

pub fn check_dendriform_system(sys: &DendriformSystem) -> Result<Report> {
    if sys.dot.is_some() {
        let plain = DendriformSystem { dot: None, ..sys.clone() };
        return dendriform_report(&plain, "dendriform");
    }
    dendriform_report(sys, "dendriform")
}

pub fn check_tridendriform_system(sys: &DendriformSystem) -> Result<Report> {
    if sys.dot.is_none() {
        return Err(StructureError::MissingRole("dot".into()));
    }
    dendriform_report(sys, "tridendriform")
}

pub fn check_pre_lie(circ: &BilMap) -> Result<Report> {
    let v = circ.target();
    expect_bil(circ, v, v, v, "∘")?;
    let a = associator(circ)?;
    let mut b = ReportBuilder::new("pre_lie", Mode::Strict);
    b.main("eq1.3", &a.try_sub(&a.permute([1, 0, 2])?)?);
    Ok(b.finish())
}

pub fn check_compatible_pair(mu: &BilMap, nu: &BilMap) -> Result<Report> {
    let v = mu.target();
    expect_bil(mu, v, v, v, "μ")?;
    expect_bil(nu, v, v, v, "ν")?;
    let mut b = ReportBuilder::new("compatible_pair", Mode::Strict);
    b.main("eq3.1a", &associator(mu)?);
    b.main("eq3.1b", &associator(nu)?);
    b.main("eq3.2a", &left(nu, mu)?.try_sub(&right(mu, nu)?)?);
    b.main("eq3.2b", &right(mu, nu)?.try_sub(&left(mu, nu)?)?);
    b.main("eq3.2c", &left(mu, nu)?.try_sub(&right(nu, mu)?)?);
    Ok(b.finish())
}

pub fn check_generalized_rb(mu: &BilMap, nu: &BilMap, r: &LinMap) -> Result<Report> {
    let v = mu.target();
    expect_bil(mu, v, v, v, "μ")?;
    expect_bil(nu, v, v, v, "ν")?;
    expect_lin(r, v, v, "R")?;
    let inner = sum(&[&mu.precompose_left(r)?, &mu.precompose_right(r)?, nu])?;
    let mut b = ReportBuilder::new("generalized_rb", Mode::Strict);
    b.main("eq3.3", &mu.precompose(r, r)?.try_sub(&inner.postcompose(r)?)?);
    Ok(b.finish())
}

pub fn check_double_curved_rbs(sys: &DoubleSystem, mode: Mode) -> Result<Report> {
    let mut b = ReportBuilder::new("double_curved_rbs", mode);
    if !b.hypothesis(check_associativity(&sys.mu)?) {
        return Ok(b.finish());
    }
    let (mu, r, s) = (&sys.mu, &sys.r, &sys.s);
    let inner = mu.precompose_left(r)?.try_add(&mu.precompose_right(s)?)?;
    let eq = |p: &LinMap, w: &BilMap| -> Result<BilMap> {
        Ok(mu.precompose(p, p)?.try_sub(&inner.postcompose(p)?)?.try_sub(w)?)
    };
    b.main("eq3.4", &eq(r, &sys.omega1)?);
    b.main("eq3.5", &eq(s, &sys.omega2)?);
    Ok(b.finish())
}
