use crate::coeff::{Poly, Ring, Scalar};

use super::linear::LinMap;
use super::space::{tensor_space, Space};
use super::{check_ring, check_space, MultilinearError, ResidualEntry};

/// A bilinear map `left × right → target` given by structure constants:
/// `b(x_i, y_j) = Σ_k c[i][j][k] z_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilMap {
    ring: Ring,
    left: Space,
    right: Space,
    target: Space,
    coeffs: Vec<Poly>,
}

impl BilMap {
    pub fn from_fn(ring: &Ring, left: &Space, right: &Space, target: &Space, mut f: impl FnMut(usize, usize, usize) -> Poly) -> Self {
        let mut coeffs = Vec::with_capacity(left.dim() * right.dim() * target.dim());
        for i in 0..left.dim() {
            for j in 0..right.dim() {
                for k in 0..target.dim() {
                    let p = f(i, j, k);
                    assert!(p.ring() == ring, "structure constant outside {ring}");
                    coeffs.push(p);
                }
            }
        }
        BilMap { ring: ring.clone(), left: left.clone(), right: right.clone(), target: target.clone(), coeffs }
    }

    /// Builds from the images of basis pairs: `table[i][j]` is `b(x_i, y_j)`.
    pub fn from_table(ring: &Ring, left: &Space, right: &Space, target: &Space, table: Vec<Vec<Vec<Poly>>>) -> Result<Self, MultilinearError> {
        let ok = table.len() == left.dim()
            && table.iter().all(|row| row.len() == right.dim() && row.iter().all(|v| v.len() == target.dim()));
        if !ok {
            return Err(MultilinearError::Shape(format!(
                "structure constants for {left}×{right}→{target} must be {}×{}×{}",
                left.dim(),
                right.dim(),
                target.dim()
            )));
        }
        for p in table.iter().flatten().flatten() {
            check_ring(ring, p.ring())?;
        }
        Ok(BilMap {
            ring: ring.clone(),
            left: left.clone(),
            right: right.clone(),
            target: target.clone(),
            coeffs: table.into_iter().flatten().flatten().collect(),
        })
    }

    pub fn zero(ring: &Ring, left: &Space, right: &Space, target: &Space) -> Self {
        Self::from_fn(ring, left, right, target, |_, _, _| ring.zero())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn left(&self) -> &Space {
        &self.left
    }

    pub fn right(&self) -> &Space {
        &self.right
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.right.dim() + j) * self.target.dim() + k
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.coeffs[self.idx(i, j, k)]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `b(x_i, y_j)` as a coordinate vector.
    pub fn image(&self, i: usize, j: usize) -> Vec<Poly> {
        (0..self.target.dim()).map(|k| self.entry(i, j, k).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, x: &[Poly], y: &[Poly]) -> Result<Vec<Poly>, MultilinearError> {
        if x.len() != self.left.dim() || y.len() != self.right.dim() {
            return Err(MultilinearError::Shape(format!(
                "arguments of length ({}, {}) given to bilinear map on {}×{}",
                x.len(),
                y.len(),
                self.left,
                self.right
            )));
        }
        for p in x.iter().chain(y) {
            check_ring(&self.ring, p.ring())?;
        }
        let mut out = vec![self.ring.zero(); self.target.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.entry(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(c * &s);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(x, y) ↦ b(f(x), g(y))`.
    pub fn precompose(&self, f: &LinMap, g: &LinMap) -> Result<BilMap, MultilinearError> {
        check_ring(&self.ring, f.ring())?;
        check_ring(&self.ring, g.ring())?;
        check_space(&self.left, f.target(), "left argument")?;
        check_space(&self.right, g.target(), "right argument")?;
        let (dl, dr) = (self.left.dim(), self.right.dim());
        // precompute the image of each basis pair once
        let mut images = Vec::with_capacity(f.source().dim() * g.source().dim());
        for i in 0..f.source().dim() {
            for j in 0..g.source().dim() {
                let mut out = vec![self.ring.zero(); self.target.dim()];
                for a in 0..dl {
                    let fa = f.entry(a, i);
                    if fa.is_zero() {
                        continue;
                    }
                    for b in 0..dr {
                        let gb = g.entry(b, j);
                        if gb.is_zero() {
                            continue;
                        }
                        let s = fa * gb;
                        for (k, o) in out.iter_mut().enumerate() {
                            let c = self.entry(a, b, k);
                            if !c.is_zero() {
                                *o = &*o + &(c * &s);
                            }
                        }
                    }
                }
                images.push(out);
            }
        }
        let gd = g.source().dim();
        Ok(BilMap::from_fn(&self.ring, f.source(), g.source(), &self.target, |i, j, k| images[i * gd + j][k].clone()))
    }

    pub fn precompose_left(&self, f: &LinMap) -> Result<BilMap, MultilinearError> {
        self.precompose(f, &LinMap::identity(&self.ring, &self.right))
    }

    pub fn precompose_right(&self, g: &LinMap) -> Result<BilMap, MultilinearError> {
        self.precompose(&LinMap::identity(&self.ring, &self.left), g)
    }

    /// `(x, y) ↦ h(b(x, y))`.
    pub fn postcompose(&self, h: &LinMap) -> Result<BilMap, MultilinearError> {
        check_ring(&self.ring, h.ring())?;
        check_space(h.source(), &self.target, "post-composition")?;
        let mut images = Vec::with_capacity(self.left.dim() * self.right.dim());
        for i in 0..self.left.dim() {
            for j in 0..self.right.dim() {
                images.push(h.apply_unchecked(&self.image(i, j)));
            }
        }
        let rd = self.right.dim();
        Ok(BilMap::from_fn(&self.ring, &self.left, &self.right, h.target(), |i, j, k| images[i * rd + j][k].clone()))
    }

    /// `(y, x) ↦ b(x, y)`.
    pub fn transpose(&self) -> BilMap {
        BilMap::from_fn(&self.ring, &self.right, &self.left, &self.target, |j, i, k| self.entry(i, j, k).clone())
    }

    fn zip_with(&self, other: &BilMap, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<BilMap, MultilinearError> {
        check_ring(&self.ring, &other.ring)?;
        check_space(&self.left, &other.left, "left space of sum")?;
        check_space(&self.right, &other.right, "right space of sum")?;
        check_space(&self.target, &other.target, "target space of sum")?;
        Ok(BilMap {
            ring: self.ring.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
            target: self.target.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &BilMap) -> Result<BilMap, MultilinearError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &BilMap) -> Result<BilMap, MultilinearError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Poly) -> Result<BilMap, MultilinearError> {
        check_ring(&self.ring, s.ring())?;
        Ok(self.map_coeffs(|p| p * s))
    }

    pub fn scale_scalar(&self, s: &Scalar) -> BilMap {
        self.map_coeffs(|p| p.scale(s))
    }

    pub fn neg(&self) -> BilMap {
        self.map_coeffs(|p| -p)
    }

    fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> BilMap {
        BilMap {
            ring: self.ring.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
            target: self.target.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map_coeffs<E>(&self, ring: &Ring, mut f: impl FnMut(&Poly) -> Result<Poly, E>) -> Result<BilMap, E> {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>, E>>()?;
        Ok(BilMap { ring: ring.clone(), left: self.left.clone(), right: self.right.clone(), target: self.target.clone(), coeffs })
    }

    /// The map as a linear map `left⊗right → target`: a
    /// `dim(target) × dim(left)·dim(right)` matrix.
    pub fn as_linear(&self) -> LinMap {
        let src = tensor_space(&self.left, &self.right);
        let rd = self.right.dim();
        LinMap::from_fn(&self.ring, &src, &self.target, |k, c| self.entry(c / rd, c % rd, k).clone())
    }

    pub fn nonzero_entries(&self) -> Vec<ResidualEntry> {
        let mut out = Vec::new();
        for i in 0..self.left.dim() {
            for j in 0..self.right.dim() {
                for k in 0..self.target.dim() {
                    let p = self.entry(i, j, k);
                    if !p.is_zero() {
                        out.push(ResidualEntry {
                            index: vec![i, j, k],
                            inputs: vec![self.left.label(i).to_string(), self.right.label(j).to_string()],
                            output: self.target.label(k).to_string(),
                            value: p.clone(),
                        });
                    }
                }
            }
        }
        out
    }
}
