use crate::coeff::{Poly, Ring};

use super::bilinear::BilMap;
use super::linear::LinMap;
use super::space::Space;
use super::{check_ring, check_space, MultilinearError, ResidualEntry};

/// A trilinear map `X × Y × Z → W` as a dense 4-index array. Every
/// three-variable identity is checked by building both sides as
/// `TriTensor`s and subtracting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriTensor {
    ring: Ring,
    inputs: [Space; 3],
    target: Space,
    coeffs: Vec<Poly>,
}

impl TriTensor {
    pub fn from_fn(ring: &Ring, inputs: [&Space; 3], target: &Space, mut f: impl FnMut(usize, usize, usize, usize) -> Poly) -> Self {
        let [x, y, z] = inputs;
        let mut coeffs = Vec::with_capacity(x.dim() * y.dim() * z.dim() * target.dim());
        for i in 0..x.dim() {
            for j in 0..y.dim() {
                for l in 0..z.dim() {
                    for k in 0..target.dim() {
                        coeffs.push(f(i, j, l, k));
                    }
                }
            }
        }
        TriTensor { ring: ring.clone(), inputs: [x.clone(), y.clone(), z.clone()], target: target.clone(), coeffs }
    }

    pub fn zero(ring: &Ring, inputs: [&Space; 3], target: &Space) -> Self {
        Self::from_fn(ring, inputs, target, |_, _, _, _| ring.zero())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn inputs(&self) -> &[Space; 3] {
        &self.inputs
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    fn idx(&self, i: usize, j: usize, l: usize, k: usize) -> usize {
        let [_, y, z] = &self.inputs;
        ((i * y.dim() + j) * z.dim() + l) * self.target.dim() + k
    }

    pub fn entry(&self, i: usize, j: usize, l: usize, k: usize) -> &Poly {
        &self.coeffs[self.idx(i, j, l, k)]
    }

    pub fn image(&self, i: usize, j: usize, l: usize) -> Vec<Poly> {
        (0..self.target.dim()).map(|k| self.entry(i, j, l, k).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// `(x, y, z) ↦ outer(inner(x, y), z)`.
    pub fn compose_left(outer: &BilMap, inner: &BilMap) -> Result<TriTensor, MultilinearError> {
        check_ring(outer.ring(), inner.ring())?;
        check_space(outer.left(), inner.target(), "left slot of outer product")?;
        let ring = outer.ring();
        let mut images = Vec::new();
        for i in 0..inner.left().dim() {
            for j in 0..inner.right().dim() {
                let u = inner.image(i, j);
                for l in 0..outer.right().dim() {
                    images.push(combine(ring, outer, &u, None, l));
                }
            }
        }
        let (rd, od) = (inner.right().dim(), outer.right().dim());
        Ok(TriTensor::from_fn(ring, [inner.left(), inner.right(), outer.right()], outer.target(), |i, j, l, k| {
            images[(i * rd + j) * od + l][k].clone()
        }))
    }

    /// `(x, y, z) ↦ outer(x, inner(y, z))`.
    pub fn compose_right(outer: &BilMap, inner: &BilMap) -> Result<TriTensor, MultilinearError> {
        check_ring(outer.ring(), inner.ring())?;
        check_space(outer.right(), inner.target(), "right slot of outer product")?;
        let ring = outer.ring();
        let mut images = Vec::new();
        for i in 0..outer.left().dim() {
            for j in 0..inner.left().dim() {
                for l in 0..inner.right().dim() {
                    let u = inner.image(j, l);
                    images.push(combine(ring, outer, &u, Some(i), 0));
                }
            }
        }
        let (jd, ld) = (inner.left().dim(), inner.right().dim());
        Ok(TriTensor::from_fn(ring, [outer.left(), inner.left(), inner.right()], outer.target(), |i, j, l, k| {
            images[(i * jd + j) * ld + l][k].clone()
        }))
    }

    /// `(x, y, z) ↦ h(t(x, y, z))`.
    pub fn postcompose(&self, h: &LinMap) -> Result<TriTensor, MultilinearError> {
        check_ring(&self.ring, h.ring())?;
        check_space(h.source(), &self.target, "post-composition")?;
        let [x, y, z] = &self.inputs;
        let mut images = Vec::new();
        for i in 0..x.dim() {
            for j in 0..y.dim() {
                for l in 0..z.dim() {
                    images.push(h.apply_unchecked(&self.image(i, j, l)));
                }
            }
        }
        let (yd, zd) = (y.dim(), z.dim());
        Ok(TriTensor::from_fn(&self.ring, [x, y, z], h.target(), |i, j, l, k| images[(i * yd + j) * zd + l][k].clone()))
    }

    /// Reorders arguments: the result at `(a0, a1, a2)` is `self` evaluated
    /// with argument `perm[n]` placed in slot `n`, i.e.
    /// `result(a) = self(a[perm[0]], a[perm[1]], a[perm[2]])`.
    pub fn permute(&self, perm: [usize; 3]) -> Result<TriTensor, MultilinearError> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p] {
                return Err(MultilinearError::Shape(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        // the result's slot perm[n] feeds self's slot n
        let mut spaces: [Option<&Space>; 3] = [None; 3];
        for n in 0..3 {
            spaces[perm[n]] = Some(&self.inputs[n]);
        }
        let spaces = spaces.map(|s| s.expect("permutation covers all slots"));
        Ok(TriTensor::from_fn(&self.ring, spaces, &self.target, |a0, a1, a2, k| {
            let a = [a0, a1, a2];
            self.entry(a[perm[0]], a[perm[1]], a[perm[2]], k).clone()
        }))
    }

    fn zip_with(&self, other: &TriTensor, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<TriTensor, MultilinearError> {
        check_ring(&self.ring, &other.ring)?;
        for n in 0..3 {
            check_space(&self.inputs[n], &other.inputs[n], "argument space of sum")?;
        }
        check_space(&self.target, &other.target, "target space of sum")?;
        Ok(TriTensor {
            ring: self.ring.clone(),
            inputs: self.inputs.clone(),
            target: self.target.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &TriTensor) -> Result<TriTensor, MultilinearError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &TriTensor) -> Result<TriTensor, MultilinearError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Poly) -> Result<TriTensor, MultilinearError> {
        check_ring(&self.ring, s.ring())?;
        Ok(TriTensor {
            ring: self.ring.clone(),
            inputs: self.inputs.clone(),
            target: self.target.clone(),
            coeffs: self.coeffs.iter().map(|p| p * s).collect(),
        })
    }

    pub fn nonzero_entries(&self) -> Vec<ResidualEntry> {
        let [x, y, z] = &self.inputs;
        let mut out = Vec::new();
        for i in 0..x.dim() {
            for j in 0..y.dim() {
                for l in 0..z.dim() {
                    for k in 0..self.target.dim() {
                        let p = self.entry(i, j, l, k);
                        if !p.is_zero() {
                            out.push(ResidualEntry {
                                index: vec![i, j, l, k],
                                inputs: vec![x.label(i).to_string(), y.label(j).to_string(), z.label(l).to_string()],
                                output: self.target.label(k).to_string(),
                                value: p.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

// outer(u, e_l) when `fixed_left` is None, outer(e_i, u) otherwise.
fn combine(ring: &Ring, outer: &BilMap, u: &[Poly], fixed_left: Option<usize>, l: usize) -> Vec<Poly> {
    let mut out = vec![ring.zero(); outer.target().dim()];
    for (m, um) in u.iter().enumerate() {
        if um.is_zero() {
            continue;
        }
        for (k, o) in out.iter_mut().enumerate() {
            let c = match fixed_left {
                None => outer.entry(m, l, k),
                Some(i) => outer.entry(i, m, k),
            };
            if !c.is_zero() {
                *o = &*o + &(c * um);
            }
        }
    }
    out
}
