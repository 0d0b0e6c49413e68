use crate::coeff::{Poly, Ring, Scalar};

use super::space::{tensor_space, Space};
use super::{check_ring, check_space, MultilinearError, ResidualEntry};

/// A linear map stored as a dense `dim(target) × dim(source)` matrix;
/// column `j` is the image of the `j`-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    ring: Ring,
    source: Space,
    target: Space,
    // row-major
    entries: Vec<Poly>,
}

impl LinMap {
    pub fn from_fn(ring: &Ring, source: &Space, target: &Space, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(source.dim() * target.dim());
        for r in 0..target.dim() {
            for c in 0..source.dim() {
                let p = f(r, c);
                assert!(p.ring() == ring, "entry outside {ring}");
                entries.push(p);
            }
        }
        LinMap { ring: ring.clone(), source: source.clone(), target: target.clone(), entries }
    }

    /// `rows[r][c]` is the coefficient of target vector `r` in the image of
    /// source vector `c`.
    pub fn from_rows(ring: &Ring, source: &Space, target: &Space, rows: Vec<Vec<Poly>>) -> Result<Self, MultilinearError> {
        if rows.len() != target.dim() || rows.iter().any(|r| r.len() != source.dim()) {
            return Err(MultilinearError::Shape(format!(
                "matrix for {source}→{target} must be {}×{}",
                target.dim(),
                source.dim()
            )));
        }
        for p in rows.iter().flatten() {
            check_ring(ring, p.ring())?;
        }
        Ok(LinMap { ring: ring.clone(), source: source.clone(), target: target.clone(), entries: rows.into_iter().flatten().collect() })
    }

    pub fn zero(ring: &Ring, source: &Space, target: &Space) -> Self {
        Self::from_fn(ring, source, target, |_, _| ring.zero())
    }

    pub fn identity(ring: &Ring, space: &Space) -> Self {
        Self::from_fn(ring, space, space, |r, c| if r == c { ring.one() } else { ring.zero() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row * self.source.dim() + col]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<Poly> {
        (0..self.target.dim()).map(|r| self.entry(r, col).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, v: &[Poly]) -> Result<Vec<Poly>, MultilinearError> {
        if v.len() != self.source.dim() {
            return Err(MultilinearError::Shape(format!("vector of length {} given to map from {}", v.len(), self.source)));
        }
        for p in v {
            check_ring(&self.ring, p.ring())?;
        }
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &[Poly]) -> Vec<Poly> {
        let n = self.source.dim();
        (0..self.target.dim())
            .map(|r| {
                let mut acc = self.ring.zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self.entries[r * n + c];
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap, MultilinearError> {
        check_ring(&self.ring, &inner.ring)?;
        check_space(&self.source, &inner.target, "composition")?;
        let k = self.source.dim();
        Ok(LinMap::from_fn(&self.ring, &inner.source, &self.target, |r, c| {
            let mut acc = self.ring.zero();
            for m in 0..k {
                let a = self.entry(r, m);
                let b = inner.entry(m, c);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    fn zip_with(&self, other: &LinMap, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<LinMap, MultilinearError> {
        check_ring(&self.ring, &other.ring)?;
        check_space(&self.source, &other.source, "sum of linear maps (source)")?;
        check_space(&self.target, &other.target, "sum of linear maps (target)")?;
        Ok(LinMap {
            ring: self.ring.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &LinMap) -> Result<LinMap, MultilinearError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &LinMap) -> Result<LinMap, MultilinearError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Poly) -> Result<LinMap, MultilinearError> {
        check_ring(&self.ring, s.ring())?;
        Ok(self.map_entries(|p| p * s))
    }

    pub fn scale_scalar(&self, s: &Scalar) -> LinMap {
        self.map_entries(|p| p.scale(s))
    }

    pub fn neg(&self) -> LinMap {
        self.map_entries(|p| -p)
    }

    pub(crate) fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> LinMap {
        LinMap { ring: self.ring.clone(), source: self.source.clone(), target: self.target.clone(), entries: self.entries.iter().map(f).collect() }
    }

    /// Rebuilds the map over `ring`, transforming each entry.
    pub fn try_map_entries<E>(&self, ring: &Ring, mut f: impl FnMut(&Poly) -> Result<Poly, E>) -> Result<LinMap, E> {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>, E>>()?;
        debug_assert!(entries.iter().all(|p| p.ring() == ring));
        Ok(LinMap { ring: ring.clone(), source: self.source.clone(), target: self.target.clone(), entries })
    }

    /// `f ⊗ g : X⊗Y → X'⊗Y'`, with `(f⊗g)(x_i⊗y_j) = f(x_i)⊗g(y_j)`.
    pub fn kron(f: &LinMap, g: &LinMap) -> Result<LinMap, MultilinearError> {
        check_ring(&f.ring, &g.ring)?;
        let source = tensor_space(&f.source, &g.source);
        let target = tensor_space(&f.target, &g.target);
        let (gs, gt) = (g.source.dim(), g.target.dim());
        Ok(LinMap::from_fn(&f.ring, &source, &target, |r, c| {
            let (r1, r2) = (r / gt, r % gt);
            let (c1, c2) = (c / gs, c % gs);
            let a = f.entry(r1, c1);
            let b = g.entry(r2, c2);
            if a.is_zero() || b.is_zero() {
                f.ring.zero()
            } else {
                a * b
            }
        }))
    }

    pub fn nonzero_entries(&self) -> Vec<ResidualEntry> {
        let mut out = Vec::new();
        for r in 0..self.target.dim() {
            for c in 0..self.source.dim() {
                let p = self.entry(r, c);
                if !p.is_zero() {
                    out.push(ResidualEntry {
                        index: vec![c, r],
                        inputs: vec![self.source.label(c).to_string()],
                        output: self.target.label(r).to_string(),
                        value: p.clone(),
                    });
                }
            }
        }
        out
    }
}
