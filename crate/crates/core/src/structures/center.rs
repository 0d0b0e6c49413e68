use std::collections::BTreeSet;

use crate::coeff::{Poly, Scalar};
use crate::multilinear::BilMap;

use super::checks::{left, right};
use super::report::Equation;
use super::systems::expect_bil;
use super::{check_double_curved_rbs, check_pre_lie, DoubleSystem, EquationRole, Mode, Report, Result, StructureError, Verdict};

/// A basis of `{x : x·eᵢ = eᵢ·x for all i}` as coordinate vectors. Needs
/// parameter-free structure constants.
pub fn compute_center(mu: &BilMap) -> Result<Vec<Vec<Scalar>>> {
    let a = mu.target();
    expect_bil(mu, a, a, a, "μ")?;
    if let Some(p) = mu.coeffs().iter().find(|p| !p.is_constant()) {
        return Err(StructureError::Unsupported(format!(
            "center of a product with parametric structure constant `{p}`; specialize the parameters first"
        )));
    }
    let field = mu.ring().field();
    let n = a.dim();
    let c = |i: usize, j: usize, k: usize| mu.entry(i, j, k).constant_term();
    // unknown x = Σ x_j e_j; rows (i, k): Σ_j x_j (c[j][i][k] − c[i][j][k]) = 0
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|j| field.sub(&c(j, i, k), &c(i, j, k))).collect());
        }
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
        rows[rank] = rows[rank].iter().map(|x| field.mul(x, &inv)).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                rows[r] = rows[r].iter().zip(&rows[rank]).map(|(x, y)| field.sub(x, &field.mul(&f, y))).collect();
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&rows[r][f]);
            }
            v
        })
        .collect())
}

/// `a∘b = R(a)b − bS(a)`.
pub fn cor_3_12_product(sys: &DoubleSystem) -> Result<BilMap> {
    let mu = &sys.mu;
    Ok(mu.precompose_left(&sys.r)?.try_sub(&mu.precompose_right(&sys.s)?.transpose())?)
}

/// Both sides of the stated equivalence, evaluated on one system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cor312Outcome {
    pub report: Report,
    /// Verdict of the pre-Lie identity for `a∘b = R(a)b − bS(a)`.
    pub pre_lie: Verdict,
    /// Verdict of `W(a, b)c = cW(a, b)` for `W(a, b) = ω₁(a, b) − ω₂(b, a)`.
    pub central: Verdict,
    /// Whether the two sides agree; `None` when either is only conditional.
    pub agree: Option<bool>,
}

pub fn check_cor_3_12(sys: &DoubleSystem, mode: Mode) -> Result<Cor312Outcome> {
    let hyp = check_double_curved_rbs(sys, mode)?;
    let mut equations: Vec<Equation> =
        hyp.equations.into_iter().map(|e| Equation { role: EquationRole::Hypothesis, ..e }).collect();
    let hyp_failed = mode == Mode::Strict && hyp.verdict.is_fails();

    let pre = check_pre_lie(&cor_3_12_product(sys)?)?;
    let mu = &sys.mu;
    let w = sys.omega1.try_sub(&sys.omega2.transpose())?;
    let central = left(mu, &w)?.try_sub(&right(mu, &w)?.permute([2, 0, 1])?)?;
    let central_eq = Equation {
        tag: "cor3.12.central".into(),
        role: EquationRole::Auxiliary,
        residuals: central.nonzero_entries(),
    };
    let central_verdict = Verdict::from_residuals(central_eq.residuals.iter().map(|r| &r.value));
    let pre_verdict = pre.verdict.clone();
    for e in pre.equations {
        equations.push(Equation { tag: "cor3.12.prelie".into(), role: EquationRole::Auxiliary, ..e });
    }
    equations.push(central_eq);

    let decided = |v: &Verdict| !matches!(v, Verdict::ConditionallyHolds(_));
    let agree = (decided(&pre_verdict) && decided(&central_verdict)).then(|| pre_verdict.is_holds() == central_verdict.is_holds());
    let side_constraints = || -> Vec<Poly> {
        let all: BTreeSet<Poly> = pre_verdict.constraints().iter().chain(central_verdict.constraints()).cloned().collect();
        all.into_iter().collect()
    };
    let verdict = if hyp_failed {
        hyp.verdict.clone()
    } else {
        match agree {
            Some(true) => Verdict::Holds,
            Some(false) => Verdict::Fails(side_constraints()),
            None => Verdict::ConditionallyHolds(side_constraints()),
        }
    };
    let report = Report {
        claim: "cor_3_12".into(),
        mode,
        equations,
        halted: hyp_failed.then(|| "double_curved_rbs".to_string()),
        verdict,
    };
    Ok(Cor312Outcome { report, pre_lie: pre_verdict, central: central_verdict, agree })
}
