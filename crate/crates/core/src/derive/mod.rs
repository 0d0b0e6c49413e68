//! Constructions of derived structures from verified systems, both as pure
//! map builders and as bundle transformations.

mod maps;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus_io::{Bundle, Claim, ClaimKind, Roles};
use crate::multilinear::{BilMap, LinMap};
use crate::structures::{
    self as st, Bimodule, Mode, Report, SideCondition, SideInput, StructureError,
};

pub use maps::{
    blacklozenge, dcrbs_prelie, dcrbs_star, dendriform, diamond, grb_all, mu_t, pseudotwistor, star, symmetrize,
    tridendriform, GrbStructures,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    Dendriform,
    Tridendriform,
    Star,
    StarR,
    Diamond,
    Odot,
    PreLie,
    GrbAll,
    DcrbsStar,
    DcrbsPrelie,
    Pseudotwistor,
    MuT,
}

const NAMES: [(Construction, &str, &str); 12] = [
    (Construction::Dendriform, "dendriform", "Theorem 2.7"),
    (Construction::Tridendriform, "tridendriform", "Theorem 2.11"),
    (Construction::Star, "star", "Theorem 2.14, Corollary 2.15"),
    (Construction::StarR, "star_r", "Proposition 2.17"),
    (Construction::Diamond, "diamond", "Proposition 2.21"),
    (Construction::Odot, "odot", "Corollary 2.23"),
    (Construction::PreLie, "prelie", "Proposition 2.25"),
    (Construction::GrbAll, "grb_all", "Proposition 3.5"),
    (Construction::DcrbsStar, "dcrbs_star", "Corollary 3.8"),
    (Construction::DcrbsPrelie, "dcrbs_prelie", "Corollary 3.12"),
    (Construction::Pseudotwistor, "pseudotwistor", "Proposition 3.11"),
    (Construction::MuT, "mu_t", "Proposition 3.10"),
];

impl Construction {
    pub const ALL: [Construction; 12] = [
        Construction::Dendriform,
        Construction::Tridendriform,
        Construction::Star,
        Construction::StarR,
        Construction::Diamond,
        Construction::Odot,
        Construction::PreLie,
        Construction::GrbAll,
        Construction::DcrbsStar,
        Construction::DcrbsPrelie,
        Construction::Pseudotwistor,
        Construction::MuT,
    ];

    fn row(&self) -> &'static (Construction, &'static str, &'static str) {
        NAMES.iter().find(|(c, _, _)| c == self).expect("every construction is named")
    }

    pub fn name(&self) -> &'static str {
        self.row().1
    }

    /// Where the construction comes from.
    pub fn citation(&self) -> &'static str {
        self.row().2
    }

    /// Claim kinds that can serve as the source binding, in preference order.
    pub fn sources(&self) -> &'static [ClaimKind] {
        use Construction::*;
        match self {
            Dendriform | Tridendriform | Star | Diamond | PreLie => &[ClaimKind::CurvedOos],
            StarR => &[ClaimKind::CurvedOos, ClaimKind::ExtendedBimoduleAlgebra, ClaimKind::OOperatorWeight],
            Odot => &[ClaimKind::OOperatorWeight],
            GrbAll => &[ClaimKind::GeneralizedRb],
            DcrbsStar | DcrbsPrelie | Pseudotwistor => &[ClaimKind::DoubleCurvedRbs],
            MuT => &[ClaimKind::Pseudotwistor, ClaimKind::DoubleCurvedRbs],
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        NAMES.iter().find(|(_, n, _)| *n == s).map(|(c, _, _)| *c).ok_or_else(|| {
            let names: Vec<&str> = NAMES.iter().map(|(_, n, _)| *n).collect();
            format!("unknown construction `{s}` (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("no claim of kind {wanted} to derive `{construction}` from")]
    NoSource { construction: Construction, wanted: String },
    #[error("claims[{index}] is a `{kind}` claim, which cannot feed `{construction}`")]
    WrongSource { construction: Construction, index: usize, kind: ClaimKind },
    #[error("hypothesis {claim} is not verified ({verdict})")]
    Hypothesis { claim: String, verdict: String },
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Where a derived bundle came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub source: String,
    pub construction: Construction,
    pub claim: usize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of {} claims[{}] ({})", self.construction, self.source, self.claim, self.construction.citation())
    }
}

/// The source bundle extended with the constructed maps and the claims
/// they are expected to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedBundle {
    pub provenance: Provenance,
    pub bundle: Bundle,
    pub new_maps: Vec<String>,
    pub new_claims: Vec<usize>,
}

struct Builder<'a> {
    src: &'a Claim,
    out: Bundle,
    new_maps: Vec<String>,
    new_claims: Vec<usize>,
    note: String,
}

impl Builder<'_> {
    fn bound(&self, role: &str) -> String {
        self.src.bind[role].clone()
    }

    fn add_bil(&mut self, base: &str, map: BilMap) -> String {
        let name = self.out.fresh_name(base);
        self.out.add_bilinear(&name, map);
        self.new_maps.push(name.clone());
        name
    }

    fn add_lin(&mut self, base: &str, map: LinMap) -> String {
        let name = self.out.fresh_name(base);
        self.out.add_linear(&name, map);
        self.new_maps.push(name.clone());
        name
    }

    /// Adds a claim; `copy` lists source roles bound under the same role.
    fn claim(&mut self, kind: ClaimKind, copy: &[&str], extra: &[(&str, String)]) {
        let mut bind: Vec<(String, String)> =
            copy.iter().filter(|r| self.src.bind.contains_key(**r)).map(|r| (r.to_string(), self.bound(r))).collect();
        bind.extend(extra.iter().map(|(r, n)| (r.to_string(), n.clone())));
        self.new_claims.push(self.out.claims.len());
        self.out.claims.push(Claim::new(kind, &bind).with_note(self.note.clone()));
    }
}

fn require(report: Report) -> Result<(), DeriveError> {
    if report.holds() {
        Ok(())
    } else {
        Err(DeriveError::Hypothesis { claim: report.claim.clone(), verdict: report.verdict.label().to_string() })
    }
}

/// Builds `construction` from the claim at `source` (or the first claim of
/// a suitable kind). In strict mode the hypotheses are checked first and any
/// verdict other than Holds refuses the construction.
pub fn derive(
    bundle: &Bundle,
    origin: &str,
    construction: Construction,
    source: Option<usize>,
    mode: Mode,
) -> Result<DerivedBundle, DeriveError> {
    let kinds = construction.sources();
    let index = match source {
        Some(i) => {
            let kind = bundle.claims.get(i).map(|c| c.kind).ok_or_else(|| DeriveError::NoSource {
                construction,
                wanted: format!("at index {i}"),
            })?;
            if !kinds.contains(&kind) {
                return Err(DeriveError::WrongSource { construction, index: i, kind });
            }
            i
        }
        None => kinds
            .iter()
            .find_map(|k| bundle.claims.iter().position(|c| c.kind == *k))
            .ok_or_else(|| DeriveError::NoSource {
                construction,
                wanted: kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join(" or "),
            })?,
    };
    let claim = &bundle.claims[index];
    let roles = Roles::new(bundle, claim);
    let strict = mode == Mode::Strict;
    if strict {
        let report = crate::corpus_io::run_claim(bundle, index, Mode::Strict).map_err(|e| DeriveError::Refused(e.to_string()))?;
        require(report)?;
    }
    let mut b = Builder {
        src: claim,
        out: bundle.clone(),
        new_maps: Vec::new(),
        new_claims: Vec::new(),
        note: format!("derived by {construction} from claims[{index}]"),
    };
    // The role that plays ∘ in the source.
    let circ_role = if claim.kind == ClaimKind::CurvedOos { "omega" } else { "circ" };

    use Construction::*;
    match construction {
        Dendriform | Tridendriform | Star | PreLie | Diamond => {
            let sys = roles.curved()?;
            if strict && construction != Diamond {
                require(st::check_extended_bimodule_algebra(&sys.module, &sys.omega, &sys.r, &sys.s, Mode::Strict)?)?;
            }
            let m = &sys.module;
            let circ = ("circ", b.bound("omega"));
            match construction {
                Dendriform | Tridendriform => {
                    let d = if construction == Dendriform { dendriform(&sys)? } else { tridendriform(&sys)? };
                    let names = [
                        ("prec", b.add_bil("prec", d.prec)),
                        ("succ", b.add_bil("succ", d.succ)),
                        ("lessdot", b.add_bil("lessdot", d.lessdot)),
                        ("gtrdot", b.add_bil("gtrdot", d.gtrdot)),
                    ];
                    let mut extra: Vec<(&str, String)> = names.to_vec();
                    let kind = if construction == Dendriform {
                        ClaimKind::Dendriform
                    } else {
                        extra.push(("dot", b.bound("omega")));
                        ClaimKind::Tridendriform
                    };
                    b.claim(kind, &[], &extra);
                }
                Star => {
                    let n = b.add_bil("star", star(m, &sys.r, &sys.s, &sys.omega)?);
                    b.claim(ClaimKind::Associativity, &[], &[("mu", n)]);
                    b.claim(ClaimKind::Side(SideCondition::Eq2_22), &["mu", "left", "right", "R", "S"], &[circ]);
                }
                PreLie => {
                    let n = b.add_bil("blacklozenge", blacklozenge(m, &sys.r, &sys.s, &sys.omega)?);
                    b.claim(ClaimKind::PreLie, &[], &[("circ", n)]);
                }
                _ => {
                    let n = b.add_bil("diamond", diamond(m, &sys.r, &sys.s)?);
                    b.claim(ClaimKind::Associativity, &[], &[("mu", n)]);
                    b.claim(ClaimKind::Side(SideCondition::Eq2_28), &["mu", "left", "right", "R", "S", "omega"], &[]);
                }
            }
        }
        StarR => {
            let m: Bimodule = roles.module()?;
            let circ = roles.bil(circ_role)?;
            let r = roles.lin("R")?;
            if strict {
                require(st::check_bimodule_algebra(&m, circ)?)?;
            }
            let n = b.add_bil("star_R", star(&m, r, r, circ)?);
            b.claim(ClaimKind::Associativity, &[], &[("mu", n)]);
            b.claim(ClaimKind::Side(SideCondition::Eq2_24), &["mu", "left", "right", "R"], &[("circ", b.bound(circ_role))]);
        }
        Odot => {
            let m = roles.module()?;
            let r = roles.lin("R")?;
            let n = b.add_bil("odot", diamond(&m, r, r)?);
            b.claim(ClaimKind::Associativity, &[], &[("mu", n)]);
            b.claim(ClaimKind::Side(SideCondition::Eq2_30), &["mu", "left", "right", "R", "circ", "lambda"], &[]);
        }
        GrbAll => {
            let g = grb_all(roles.bil("mu")?, roles.bil("nu")?, roles.lin("R")?)?;
            if strict {
                require(st::check_compatible_pair(roles.bil("mu")?, roles.bil("nu")?)?)?;
            }
            let prec = b.add_bil("prec", g.prec);
            let succ = b.add_bil("succ", g.succ);
            let circ = b.add_bil("circ", g.pre_lie);
            let tri = b.add_bil("tri_prec", g.tri_prec);
            let ast = b.add_bil("ast", g.assoc);
            let dendri = [("prec", prec.clone()), ("succ", succ.clone()), ("lessdot", prec), ("gtrdot", succ.clone())];
            b.claim(ClaimKind::Dendriform, &[], &dendri);
            b.claim(ClaimKind::PreLie, &[], &[("circ", circ)]);
            let tridendri =
                [("prec", tri.clone()), ("succ", succ.clone()), ("lessdot", tri), ("gtrdot", succ), ("dot", b.bound("nu"))];
            b.claim(ClaimKind::Tridendriform, &[], &tridendri);
            b.claim(ClaimKind::Associativity, &[], &[("mu", ast)]);
        }
        DcrbsStar | DcrbsPrelie => {
            let sys = roles.double()?;
            if construction == DcrbsStar {
                let n = b.add_bil("ast", dcrbs_star(&sys)?);
                b.claim(ClaimKind::Associativity, &[], &[("mu", n)]);
                b.claim(ClaimKind::Side(SideCondition::Eq3_7), &["mu", "omega1", "omega2"], &[]);
            } else {
                let n = b.add_bil("circ", dcrbs_prelie(&sys)?);
                b.claim(ClaimKind::PreLie, &[], &[("circ", n)]);
                b.claim(ClaimKind::Side(SideCondition::PreLieCurvature), &["mu", "omega1", "omega2"], &[]);
            }
        }
        Pseudotwistor | MuT => {
            let (mu, t) = if claim.kind == ClaimKind::Pseudotwistor {
                (roles.bil("mu")?.clone(), b.bound("T"))
            } else {
                let sys = roles.double()?;
                let module = Bimodule::regular(sys.mu.clone())?;
                let input = SideInput {
                    module: Some(&module),
                    circ: None,
                    r: None,
                    s: None,
                    omega: None,
                    omega1: Some(&sys.omega1),
                    omega2: Some(&sys.omega2),
                    lambda: None,
                };
                let eq37 = st::check_side_condition(SideCondition::Eq3_7, &input)?;
                if !eq37.holds() {
                    return Err(DeriveError::Refused(format!(
                        "{} is {} for this system, so the twistor's second diagram cannot commute",
                        SideCondition::Eq3_7,
                        eq37.verdict.label()
                    )));
                }
                let (t, tt) = pseudotwistor(&sys)?;
                let tn = b.add_lin("T", t);
                let ttn = b.add_lin("TT", tt);
                b.claim(ClaimKind::Pseudotwistor, &["mu", "omega1", "omega2"], &[("T", tn.clone()), ("TT", ttn)]);
                (sys.mu, tn)
            };
            if construction == MuT {
                let n = b.add_bil("mu_T", mu_t(&mu, &b.out.linear[&t])?);
                b.claim(ClaimKind::Associativity, &[], &[("mu", n)]);
            }
        }
    }
    Ok(DerivedBundle {
        provenance: Provenance { source: origin.to_string(), construction, claim: index },
        bundle: b.out,
        new_maps: b.new_maps,
        new_claims: b.new_claims,
    })
}
