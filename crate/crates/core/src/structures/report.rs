use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::coeff::Poly;
use crate::multilinear::{BilMap, LinMap, ResidualEntry, TriTensor};

/// How a checker treats the hypotheses of the structure it checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Hypotheses count towards the verdict; a definitely failing
    /// hypothesis stops the check before the main identities.
    #[default]
    Strict,
    /// Everything is computed and reported; only the main identities decide
    /// the verdict.
    Audit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationRole {
    Main,
    Hypothesis,
    Auxiliary,
}

/// The nonzero entries of one residual tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub tag: String,
    pub role: EquationRole,
    pub residuals: Vec<ResidualEntry>,
}

impl Equation {
    pub fn holds(&self) -> bool {
        self.residuals.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "constraints", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// Some residual entry is a nonzero constant: no specialization of the
    /// parameters can make the identities hold.
    Fails(#[serde(serialize_with = "serialize_polys")] Vec<Poly>),
    /// Every nonzero residual is a non-constant polynomial; the identities
    /// hold exactly on the common zero set of the constraints.
    ConditionallyHolds(#[serde(serialize_with = "serialize_polys")] Vec<Poly>),
}

fn serialize_polys<S: serde::Serializer>(polys: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(polys.iter().map(|p| p.to_string()))
}

impl Verdict {
    /// Deduplicated, sign-normalized and sorted constraints from the given
    /// residual values.
    pub fn from_residuals<'a>(values: impl IntoIterator<Item = &'a Poly>) -> Verdict {
        let set: BTreeSet<Poly> = values.into_iter().filter(|p| !p.is_zero()).map(Poly::normalized).collect();
        if set.is_empty() {
            return Verdict::Holds;
        }
        let constant = set.iter().any(Poly::is_constant);
        let list: Vec<Poly> = set.into_iter().collect();
        if constant {
            Verdict::Fails(list)
        } else {
            Verdict::ConditionallyHolds(list)
        }
    }

    pub fn constraints(&self) -> &[Poly] {
        match self {
            Verdict::Holds => &[],
            Verdict::Fails(c) | Verdict::ConditionallyHolds(c) => c,
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    /// 0 = holds, 1 = conditional, 2 = fails.
    pub fn severity(&self) -> u8 {
        match self {
            Verdict::Holds => 0,
            Verdict::ConditionallyHolds(_) => 1,
            Verdict::Fails(_) => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::ConditionallyHolds(_) => "conditional",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "HOLDS"),
            Verdict::Fails(_) => write!(f, "FAILS"),
            Verdict::ConditionallyHolds(_) => write!(f, "CONDITIONAL"),
        }
    }
}

/// Per-equation residuals for one checked claim, plus the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claim: String,
    pub mode: Mode,
    pub equations: Vec<Equation>,
    /// Set when strict mode stopped at a failing hypothesis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halted: Option<String>,
    pub verdict: Verdict,
}

impl Report {
    pub fn holds(&self) -> bool {
        self.verdict.is_holds()
    }

    pub fn equation(&self, tag: &str) -> Option<&Equation> {
        self.equations.iter().find(|e| e.tag == tag)
    }

    /// Verdict over the equations with the given role only.
    pub fn verdict_of(&self, role: EquationRole) -> Verdict {
        Verdict::from_residuals(
            self.equations.iter().filter(|e| e.role == role).flat_map(|e| e.residuals.iter().map(|r| &r.value)),
        )
    }

    /// True iff every main equation has a zero residual, whatever the
    /// hypotheses did.
    pub fn main_holds(&self) -> bool {
        self.halted.is_none() && self.equations.iter().filter(|e| e.role == EquationRole::Main).all(Equation::holds)
    }
}

/// Anything whose nonzero entries can be listed as residuals.
pub trait Residual {
    fn residual_entries(&self) -> Vec<ResidualEntry>;
}

impl Residual for LinMap {
    fn residual_entries(&self) -> Vec<ResidualEntry> {
        self.nonzero_entries()
    }
}

impl Residual for BilMap {
    fn residual_entries(&self) -> Vec<ResidualEntry> {
        self.nonzero_entries()
    }
}

impl Residual for Vec<ResidualEntry> {
    fn residual_entries(&self) -> Vec<ResidualEntry> {
        self.clone()
    }
}

impl Residual for TriTensor {
    fn residual_entries(&self) -> Vec<ResidualEntry> {
        self.nonzero_entries()
    }
}

pub(crate) struct ReportBuilder {
    claim: String,
    mode: Mode,
    equations: Vec<Equation>,
    halted: Option<String>,
}

impl ReportBuilder {
    pub fn new(claim: impl Into<String>, mode: Mode) -> Self {
        ReportBuilder { claim: claim.into(), mode, equations: Vec::new(), halted: None }
    }

    pub fn push(&mut self, tag: &str, role: EquationRole, residual: &impl Residual) {
        self.equations.push(Equation { tag: tag.to_string(), role, residuals: residual.residual_entries() });
    }

    pub fn main(&mut self, tag: &str, residual: &impl Residual) {
        self.push(tag, EquationRole::Main, residual);
    }

    pub fn aux(&mut self, tag: &str, residual: &impl Residual) {
        self.push(tag, EquationRole::Auxiliary, residual);
    }

    /// Folds a sub-report in as hypotheses. Returns `false` when strict mode
    /// must stop here.
    pub fn hypothesis(&mut self, sub: Report) -> bool {
        for mut eq in sub.equations {
            if eq.role == EquationRole::Main {
                eq.role = EquationRole::Hypothesis;
            }
            if eq.role == EquationRole::Hypothesis {
                self.equations.push(eq);
            }
        }
        if self.mode == Mode::Strict && sub.verdict.is_fails() {
            self.halted = Some(sub.claim);
            return false;
        }
        true
    }

    pub fn halt(&mut self, claim: String) {
        self.halted = Some(claim);
    }

    pub fn finish(self) -> Report {
        let counted =
            |role: EquationRole| matches!((self.mode, role), (_, EquationRole::Main) | (Mode::Strict, EquationRole::Hypothesis));
        let verdict = Verdict::from_residuals(
            self.equations.iter().filter(|e| counted(e.role)).flat_map(|e| e.residuals.iter().map(|r| &r.value)),
        );
        Report { claim: self.claim, mode: self.mode, equations: self.equations, halted: self.halted, verdict }
    }
}
