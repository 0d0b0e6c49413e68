use crate::multilinear::LinMap;

use super::systems::expect_lin;
use super::{check_curved_oos, CurvedSystem, Mode, Report, ReportBuilder, Result};

/// Morphism `(f, g)` from `(A, V, R, S, ω)` to `(B, W, P, T, ν)`.
///
/// Checks that `f` is an algebra map, `g` a bimodule map along `f`,
/// `f∘R = P∘g`, `f∘S = T∘g` and `g∘ω = ν∘(g⊗g)`. With `verbatim` the cross
/// conditions `f∘R = T∘g` and `f∘S = P∘g` are checked as well.
pub fn check_morphism(
    src: &CurvedSystem,
    dst: &CurvedSystem,
    f: &LinMap,
    g: &LinMap,
    verbatim: bool,
    mode: Mode,
) -> Result<Report> {
    expect_lin(f, src.module.algebra(), dst.module.algebra(), "f")?;
    expect_lin(g, src.module.module(), dst.module.module(), "g")?;
    let mut b = ReportBuilder::new(if verbatim { "morphism_verbatim" } else { "morphism" }, mode);
    if !b.hypothesis(check_curved_oos(src, mode)?) || !b.hypothesis(check_curved_oos(dst, mode)?) {
        return Ok(b.finish());
    }
    let (s, d) = (&src.module, &dst.module);
    b.main("morph.alg", &s.mu.postcompose(f)?.try_sub(&d.mu.precompose(f, f)?)?);
    b.main("morph.left", &s.left.postcompose(g)?.try_sub(&d.left.precompose(f, g)?)?);
    b.main("morph.right", &s.right.postcompose(g)?.try_sub(&d.right.precompose(g, f)?)?);
    b.main("morph.R", &f.compose(&src.r)?.try_sub(&dst.r.compose(g)?)?);
    b.main("morph.S", &f.compose(&src.s)?.try_sub(&dst.s.compose(g)?)?);
    if verbatim {
        b.main("morph.RT", &f.compose(&src.r)?.try_sub(&dst.s.compose(g)?)?);
        b.main("morph.SP", &f.compose(&src.s)?.try_sub(&dst.r.compose(g)?)?);
    }
    b.main("morph.omega", &src.omega.postcompose(g)?.try_sub(&dst.omega.precompose(g, g)?)?);
    Ok(b.finish())
}
