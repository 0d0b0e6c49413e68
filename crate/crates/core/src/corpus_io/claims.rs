use std::fmt;
use std::str::FromStr;

use crate::coeff::Poly;
use crate::multilinear::{BilMap, LinMap};
use crate::structures::{
    self as st, Bimodule, CurvedSystem, DendriformSystem, DoubleSystem, Mode, Report, SideCondition, SideInput,
    Specialization, SpecializationInput, StructureError,
};

use super::bundle::{Bundle, Claim};
use super::BundleError;

/// Structure kinds a claim can name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimKind {
    Associativity,
    Bimodule,
    BimoduleAlgebra,
    CurvedOos,
    Oos,
    RotaBaxter,
    OOperatorWeight,
    CurvedRbs,
    Reynolds,
    TdAlgebra,
    Nijenhuis,
    ExtendedBimoduleAlgebra,
    Dendriform,
    Tridendriform,
    PreLie,
    CompatiblePair,
    GeneralizedRb,
    DoubleCurvedRbs,
    Side(SideCondition),
    Pseudotwistor,
    Morphism,
    MorphismVerbatim,
    Cor312,
}

const NAMED: [(ClaimKind, &str); 22] = [
    (ClaimKind::Associativity, "associativity"),
    (ClaimKind::Bimodule, "bimodule"),
    (ClaimKind::BimoduleAlgebra, "bimodule_algebra"),
    (ClaimKind::CurvedOos, "curved_oos"),
    (ClaimKind::Oos, "oos"),
    (ClaimKind::RotaBaxter, "rota_baxter"),
    (ClaimKind::OOperatorWeight, "o_operator_weight"),
    (ClaimKind::CurvedRbs, "curved_rbs"),
    (ClaimKind::Reynolds, "reynolds"),
    (ClaimKind::TdAlgebra, "td_algebra"),
    (ClaimKind::Nijenhuis, "nijenhuis"),
    (ClaimKind::ExtendedBimoduleAlgebra, "extended_bimodule_algebra"),
    (ClaimKind::Dendriform, "dendriform"),
    (ClaimKind::Tridendriform, "tridendriform"),
    (ClaimKind::PreLie, "pre_lie"),
    (ClaimKind::CompatiblePair, "compatible_pair"),
    (ClaimKind::GeneralizedRb, "generalized_rb"),
    (ClaimKind::DoubleCurvedRbs, "double_curved_rbs"),
    (ClaimKind::Pseudotwistor, "pseudotwistor"),
    (ClaimKind::Morphism, "morphism"),
    (ClaimKind::MorphismVerbatim, "morphism_verbatim"),
    (ClaimKind::Cor312, "cor_3_12"),
];

/// What a role name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoleType {
    Bilinear,
    Linear,
    Element,
    Scalar,
}

pub fn role_type(role: &str) -> Option<RoleType> {
    Some(match role {
        "mu" | "left" | "right" | "circ" | "omega" | "omega1" | "omega2" | "nu" | "prec" | "succ" | "lessdot"
        | "gtrdot" | "dot" | "target_mu" | "target_left" | "target_right" => RoleType::Bilinear,
        "R" | "S" | "P" | "T" | "TT" | "f" | "g" => RoleType::Linear,
        "unit" => RoleType::Element,
        "lambda" => RoleType::Scalar,
        _ => return None,
    })
}

const MODULE: &[&str] = &["left", "right"];

impl ClaimKind {
    pub fn all() -> Vec<ClaimKind> {
        let mut v: Vec<ClaimKind> = NAMED.iter().map(|(k, _)| *k).collect();
        v.extend(SideCondition::ALL.into_iter().map(ClaimKind::Side));
        v
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClaimKind::Side(c) => c.tag(),
            k => NAMED.iter().find(|(n, _)| n == k).map(|(_, s)| *s).expect("every kind is named"),
        }
    }

    /// Required and optional roles.
    pub fn roles(&self) -> (&'static [&'static str], &'static [&'static str]) {
        use ClaimKind::*;
        use SideCondition as C;
        match self {
            Associativity => (&["mu"], &[]),
            Bimodule => (&["mu", "left", "right"], &[]),
            BimoduleAlgebra => (&["mu", "left", "right", "circ"], &[]),
            CurvedOos => (&["mu", "R", "S", "omega"], MODULE),
            Oos => (&["mu", "R", "S"], MODULE),
            RotaBaxter => (&["mu", "R", "lambda"], &[]),
            OOperatorWeight => (&["mu", "circ", "R", "lambda"], MODULE),
            CurvedRbs => (&["mu", "R", "S", "omega"], &[]),
            Reynolds | Nijenhuis => (&["mu", "R"], &[]),
            TdAlgebra => (&["mu", "R", "unit"], &[]),
            ExtendedBimoduleAlgebra => (&["mu", "circ", "R", "S"], MODULE),
            Dendriform => (&["prec", "succ", "lessdot", "gtrdot"], &[]),
            Tridendriform => (&["prec", "succ", "lessdot", "gtrdot", "dot"], &[]),
            PreLie => (&["circ"], &[]),
            CompatiblePair => (&["mu", "nu"], &[]),
            GeneralizedRb => (&["mu", "nu", "R"], &[]),
            DoubleCurvedRbs | Cor312 => (&["mu", "R", "S", "omega1", "omega2"], &[]),
            Side(C::Eq2_22) => (&["mu", "circ", "R", "S"], MODULE),
            Side(C::Eq2_24) => (&["mu", "circ", "R"], MODULE),
            Side(C::Eq2_26) => (&["mu", "R", "S"], MODULE),
            Side(C::Eq2_28) => (&["mu", "R", "S", "omega"], MODULE),
            Side(C::Eq2_30) => (&["mu", "circ", "R", "lambda"], MODULE),
            Side(C::Eq3_7) | Side(C::PreLieCurvature) => (&["mu", "omega1", "omega2"], &[]),
            Pseudotwistor => (&["mu", "T", "TT", "omega1", "omega2"], &[]),
            Morphism | MorphismVerbatim => (
                &["mu", "R", "S", "omega", "target_mu", "P", "T", "nu", "f", "g"],
                &["left", "right", "target_left", "target_right"],
            ),
        }
    }
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some((k, _)) = NAMED.iter().find(|(_, n)| *n == s) {
            return Ok(*k);
        }
        s.parse::<SideCondition>().map(ClaimKind::Side).map_err(|_| format!("unknown claim kind `{s}`"))
    }
}

/// Checks that every role of `claim` is known, required roles are bound,
/// paired module roles come together, and names resolve to objects of the
/// right type.
pub(crate) fn validate_claim(bundle: &Bundle, claim: &Claim, path: &str) -> Result<(), BundleError> {
    let (required, optional) = claim.kind.roles();
    for role in required {
        if !claim.bind.contains_key(*role) {
            return Err(BundleError::schema(path, format!("claim `{}` needs role `{role}`", claim.kind)));
        }
    }
    for pair in [["left", "right"], ["target_left", "target_right"]] {
        if optional.contains(&pair[0]) && claim.bind.contains_key(pair[0]) != claim.bind.contains_key(pair[1]) {
            return Err(BundleError::schema(path, format!("roles `{}` and `{}` must be bound together", pair[0], pair[1])));
        }
    }
    for (role, name) in &claim.bind {
        if !required.contains(&role.as_str()) && !optional.contains(&role.as_str()) {
            return Err(BundleError::schema(&format!("{path}.bind.{role}"), format!("role `{role}` is not used by `{}`", claim.kind)));
        }
        let p = format!("{path}.bind.{role}");
        let ok = match role_type(role).expect("declared roles have types") {
            RoleType::Bilinear => bundle.bilinear.contains_key(name),
            RoleType::Linear => bundle.linear.contains_key(name),
            RoleType::Element => bundle.elements.contains_key(name),
            RoleType::Scalar => {
                bundle.ring.parse(name).map_err(|e| BundleError::coeff(&p, e))?;
                true
            }
        };
        if !ok {
            return Err(BundleError::schema(&p, format!("`{name}` is not a declared {:?} object", role_type(role).unwrap())));
        }
    }
    Ok(())
}

/// Failure to run a claim (as opposed to the claim failing).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClaimError {
    #[error("claim {index} ({kind}): {source}")]
    Structure { index: usize, kind: ClaimKind, source: StructureError },
    #[error("claim {index} ({kind}): {msg}")]
    Binding { index: usize, kind: ClaimKind, msg: String },
}

/// Role lookups for one claim.
pub struct Roles<'a> {
    bundle: &'a Bundle,
    claim: &'a Claim,
}

impl<'a> Roles<'a> {
    pub fn new(bundle: &'a Bundle, claim: &'a Claim) -> Self {
        Roles { bundle, claim }
    }

    pub fn bil(&self, role: &str) -> Result<&'a BilMap, StructureError> {
        self.opt_bil(role).ok_or_else(|| StructureError::MissingRole(role.to_string()))
    }

    pub fn opt_bil(&self, role: &str) -> Option<&'a BilMap> {
        self.claim.bind.get(role).and_then(|n| self.bundle.bilinear.get(n))
    }

    pub fn lin(&self, role: &str) -> Result<&'a LinMap, StructureError> {
        self.opt_lin(role).ok_or_else(|| StructureError::MissingRole(role.to_string()))
    }

    pub fn opt_lin(&self, role: &str) -> Option<&'a LinMap> {
        self.claim.bind.get(role).and_then(|n| self.bundle.linear.get(n))
    }

    pub fn element(&self, role: &str) -> Option<&'a [Poly]> {
        self.claim.bind.get(role).and_then(|n| self.bundle.elements.get(n)).map(|e| e.coords.as_slice())
    }

    pub fn scalar(&self, role: &str) -> Result<Poly, StructureError> {
        let text = self.claim.bind.get(role).ok_or_else(|| StructureError::MissingRole(role.to_string()))?;
        Ok(self.bundle.ring.parse(text)?)
    }

    /// The bimodule from `mu` and (`left`, `right`), or the regular one.
    pub fn module_with(&self, mu: &str, left: &str, right: &str) -> Result<Bimodule, StructureError> {
        let mu = self.bil(mu)?.clone();
        match (self.opt_bil(left), self.opt_bil(right)) {
            (Some(l), Some(r)) => Bimodule::new(mu, l.clone(), r.clone()),
            _ => Bimodule::regular(mu),
        }
    }

    pub fn module(&self) -> Result<Bimodule, StructureError> {
        self.module_with("mu", "left", "right")
    }

    pub fn curved(&self) -> Result<CurvedSystem, StructureError> {
        CurvedSystem::new(self.module()?, self.lin("R")?.clone(), self.lin("S")?.clone(), self.bil("omega")?.clone())
    }

    pub fn double(&self) -> Result<DoubleSystem, StructureError> {
        DoubleSystem::new(
            self.bil("mu")?.clone(),
            self.lin("R")?.clone(),
            self.lin("S")?.clone(),
            self.bil("omega1")?.clone(),
            self.bil("omega2")?.clone(),
        )
    }
}

fn check(bundle: &Bundle, claim: &Claim, mode: Mode) -> Result<Report, StructureError> {
    use ClaimKind::*;
    let r = Roles::new(bundle, claim);
    let spec = |kind: Specialization| -> Result<Report, StructureError> {
        let module = match (r.opt_bil("left"), r.opt_bil("right")) {
            (Some(_), Some(_)) => Some(r.module()?),
            _ => None,
        };
        let input = SpecializationInput {
            mu: r.opt_bil("mu"),
            module: module.as_ref(),
            r: r.opt_lin("R"),
            s: r.opt_lin("S"),
            omega: r.opt_bil("omega"),
            circ: r.opt_bil("circ"),
            unit: r.element("unit"),
        };
        st::check_specialization(&kind, &input, mode)
    };
    match claim.kind {
        Associativity => st::check_associativity(r.bil("mu")?),
        Bimodule => st::check_bimodule(&r.module()?),
        BimoduleAlgebra => st::check_bimodule_algebra(&r.module()?, r.bil("circ")?),
        CurvedOos => st::check_curved_oos(&r.curved()?, mode),
        Oos => spec(Specialization::OOperatorSystem),
        RotaBaxter => spec(Specialization::RotaBaxterWeight(r.scalar("lambda")?)),
        OOperatorWeight => spec(Specialization::OOperatorWeight(r.scalar("lambda")?)),
        CurvedRbs => spec(Specialization::CurvedRotaBaxterSystem),
        Reynolds => spec(Specialization::Reynolds),
        TdAlgebra => spec(Specialization::TDAlgebra),
        Nijenhuis => spec(Specialization::Nijenhuis),
        ExtendedBimoduleAlgebra => {
            st::check_extended_bimodule_algebra(&r.module()?, r.bil("circ")?, r.lin("R")?, r.lin("S")?, mode)
        }
        Dendriform | Tridendriform => {
            let dot = if claim.kind == Tridendriform { Some(r.bil("dot")?.clone()) } else { None };
            let sys = DendriformSystem::new(
                r.bil("prec")?.clone(),
                r.bil("succ")?.clone(),
                r.bil("lessdot")?.clone(),
                r.bil("gtrdot")?.clone(),
                dot,
            )?;
            if claim.kind == Tridendriform {
                st::check_tridendriform_system(&sys)
            } else {
                st::check_dendriform_system(&sys)
            }
        }
        PreLie => st::check_pre_lie(r.bil("circ")?),
        CompatiblePair => st::check_compatible_pair(r.bil("mu")?, r.bil("nu")?),
        GeneralizedRb => st::check_generalized_rb(r.bil("mu")?, r.bil("nu")?, r.lin("R")?),
        DoubleCurvedRbs => st::check_double_curved_rbs(&r.double()?, mode),
        Side(cond) => {
            let module = r.module()?;
            let lambda = match claim.bind.contains_key("lambda") {
                true => Some(r.scalar("lambda")?),
                false => None,
            };
            let input = SideInput {
                module: Some(&module),
                circ: r.opt_bil("circ"),
                r: r.opt_lin("R"),
                s: r.opt_lin("S"),
                omega: r.opt_bil("omega"),
                omega1: r.opt_bil("omega1"),
                omega2: r.opt_bil("omega2"),
                lambda: lambda.as_ref(),
            };
            st::check_side_condition(cond, &input)
        }
        Pseudotwistor => st::check_pseudotwistor(r.bil("mu")?, r.lin("T")?, r.lin("TT")?, r.bil("omega1")?, r.bil("omega2")?, mode),
        Morphism | MorphismVerbatim => {
            let src = r.curved()?;
            let dst = CurvedSystem::new(
                r.module_with("target_mu", "target_left", "target_right")?,
                r.lin("P")?.clone(),
                r.lin("T")?.clone(),
                r.bil("nu")?.clone(),
            )?;
            st::check_morphism(&src, &dst, r.lin("f")?, r.lin("g")?, claim.kind == MorphismVerbatim, mode)
        }
        Cor312 => Ok(st::check_cor_3_12(&r.double()?, mode)?.report),
    }
}

/// Runs one claim of the bundle.
pub fn run_claim(bundle: &Bundle, index: usize, mode: Mode) -> Result<Report, ClaimError> {
    let claim = &bundle.claims[index];
    validate_claim(bundle, claim, &format!("claims[{index}]"))
        .map_err(|e| ClaimError::Binding { index, kind: claim.kind, msg: e.to_string() })?;
    let mut report = check(bundle, claim, mode).map_err(|source| ClaimError::Structure { index, kind: claim.kind, source })?;
    report.claim = claim.label();
    Ok(report)
}

/// Runs every claim, in declaration order.
pub fn run_all(bundle: &Bundle, mode: Mode) -> Vec<Result<Report, ClaimError>> {
    (0..bundle.claims.len()).map(|i| run_claim(bundle, i, mode)).collect()
}
