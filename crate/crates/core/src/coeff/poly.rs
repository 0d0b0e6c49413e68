use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Scalar};
use super::CoeffError;

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: Field,
    params: Vec<String>,
}

/// A polynomial ring `field[params]`.
///
/// Parameter names are kept sorted, so exponent vectors list variables
/// alphabetically. Cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Arc<RingData>);

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: Field, params: &[S]) -> Result<Self, CoeffError> {
        let mut names: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        for n in &names {
            if !valid_ident(n) {
                return Err(CoeffError::BadParameter(n.clone()));
            }
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(CoeffError::DuplicateParameter(w[0].clone()));
        }
        Ok(Ring(Arc::new(RingData { field, params: names })))
    }

    /// The parameter-free ring over `field`.
    pub fn constants(field: Field) -> Self {
        Ring(Arc::new(RingData { field, params: Vec::new() }))
    }

    pub fn rationals<S: AsRef<str>>(params: &[S]) -> Self {
        Ring::new(Field::Rationals, params).expect("valid parameter names")
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn params(&self) -> &[String] {
        &self.0.params
    }

    pub fn nparams(&self) -> usize {
        self.0.params.len()
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.0.params.binary_search_by(|p| p.as_str().cmp(name)).ok()
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field().one())
    }

    pub fn int(&self, n: i64) -> Poly {
        self.constant(self.field().from_i64(n))
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        assert!(self.field().contains(&c), "constant not in {}", self.field());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(self.nparams()), c);
        }
        Poly { ring: self.clone(), terms }
    }

    pub fn var(&self, name: &str) -> Result<Poly, CoeffError> {
        let i = self.param_index(name).ok_or_else(|| CoeffError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; self.nparams()];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), self.field().one());
        Ok(Poly { ring: self.clone(), terms })
    }

    pub fn parse(&self, text: &str) -> Result<Poly, CoeffError> {
        super::parse::parse_poly(text, self)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.params().join(","))
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact coefficients in canonical form: no zero
/// coefficient is ever stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.ring.nparams()))
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Coefficient of the largest monomial.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Builds a polynomial from raw terms, summing repeats and dropping zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Poly, CoeffError> {
        let field = ring.field();
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != ring.nparams() {
                return Err(CoeffError::ExponentLength { expected: ring.nparams(), found: m.0.len() });
            }
            if !field.contains(&c) {
                return Err(CoeffError::FieldMismatch);
            }
            accumulate(&mut map, field, m, c);
        }
        Ok(Poly { ring: ring.clone(), terms: map })
    }

    fn check_ring(&self, other: &Poly) -> Result<(), CoeffError> {
        if self.ring != other.ring {
            return Err(CoeffError::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, field, m.clone(), c.clone());
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, field, m1.mul(m2), field.mul(c1, c2));
            }
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    fn neg_ref(&self) -> Poly {
        let field = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let field = self.ring.field();
        assert!(field.contains(s), "scalar not in {field}");
        if s.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.mul(c, s))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point; every parameter of the ring must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Scalar>) -> Result<Scalar, CoeffError> {
        let field = self.ring.field();
        let mut values = Vec::with_capacity(self.ring.nparams());
        for p in self.ring.params() {
            let v = assignment.get(p).ok_or_else(|| CoeffError::MissingParameter(p.clone()))?;
            values.push(field.convert(v)?);
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(v, e));
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes values for some parameters; the result stays in the same
    /// ring with those exponents cleared.
    pub fn substitute(&self, assignment: &BTreeMap<String, Scalar>) -> Result<Poly, CoeffError> {
        let field = self.ring.field();
        let mut fixed: Vec<Option<Scalar>> = Vec::with_capacity(self.ring.nparams());
        for p in self.ring.params() {
            fixed.push(assignment.get(p).map(|v| field.convert(v)).transpose()?);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for (i, v) in fixed.iter().enumerate() {
                if let Some(v) = v {
                    coeff = field.mul(&coeff, &field.pow(v, exps[i]));
                    exps[i] = 0;
                }
            }
            accumulate(&mut terms, field, Monomial(exps), coeff);
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    /// Moves the polynomial into another ring, matching parameters by name
    /// and mapping coefficients into the target field.
    pub fn convert(&self, target: &Ring) -> Result<Poly, CoeffError> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        let index: Vec<Option<usize>> = self.ring.params().iter().map(|p| target.param_index(p)).collect();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.nparams()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = index[i].ok_or_else(|| CoeffError::UnknownVariable(self.ring.params()[i].clone()))?;
                exps[j] = e;
            }
            out.push((Monomial(exps), target.field().convert(c)?));
        }
        Poly::from_terms(target, out)
    }

    /// Names of the parameters that actually occur.
    pub fn variables(&self) -> Vec<&str> {
        let n = self.ring.nparams();
        (0..n)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.ring.params()[i].as_str())
            .collect()
    }

    /// Representative of the line through `self`: leading coefficient made
    /// positive over Q, made 1 over a prime field.
    pub fn normalized(&self) -> Poly {
        let Some((_, lc)) = self.leading() else {
            return self.clone();
        };
        let field = self.ring.field();
        match field {
            Field::Rationals if lc.is_negative() => self.neg_ref(),
            Field::Rationals => self.clone(),
            Field::Prime(_) => self.scale(&field.inv(lc).expect("leading coefficient is nonzero")),
        }
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, field: Field, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(existing) => {
            let s = field.add(existing, &c);
            if s.is_zero() {
                terms.remove(&m);
            } else {
                *existing = s;
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

impl Ord for Poly {
    /// Compares term lists from the largest monomial down; a deterministic
    /// total order for sorting constraint sets.
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.terms.iter().rev();
        let b = other.terms.iter().rev();
        a.cmp(b)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operator forms panic on ring mismatch; use the `try_*` methods for
// polynomials whose rings have not already been checked.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl fmt::Display for Poly {
    /// Terms in decreasing graded-lex order, e.g. `p^2 - 3/2*p + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = if c.is_negative() { (true, field.neg(c)) } else { (false, c.clone()) };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = &self.ring.params()[i];
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
