use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{FieldSpec, GradedRing, Monomial, Scalar};

/// Homogeneity of a polynomial with respect to the ring's weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(i64),
    Mixed,
}

/// Exact multivariate polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Arc<GradedRing>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<GradedRing>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn constant(ring: &Arc<GradedRing>, c: Scalar) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.arity()))
    }

    pub fn from_i64(ring: &Arc<GradedRing>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Arc<GradedRing>, i: usize) -> Self {
        Self::monomial(ring, Scalar::one(), Monomial::var(ring.arity(), i))
    }

    /// Variable by name; panics if the ring has no such variable.
    pub fn named(ring: &Arc<GradedRing>, name: &str) -> Self {
        let i = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable `{name}` in {ring}"));
        Self::var(ring, i)
    }

    pub fn monomial(ring: &Arc<GradedRing>, c: Scalar, m: Monomial) -> Self {
        assert_eq!(m.0.len(), ring.arity(), "exponent vector arity");
        let c = ring.field().reduce(&c).expect("coefficient must reduce into the field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from (coefficient, exponents) pairs, merging
    /// repeated monomials.
    pub fn from_terms(
        ring: &Arc<GradedRing>,
        terms: impl IntoIterator<Item = (Scalar, Monomial)>,
    ) -> Result<Self> {
        let field = ring.field();
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (c, m) in terms {
            if m.0.len() != ring.arity() {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} in a ring of arity {}",
                    m.0.len(),
                    ring.arity()
                )));
            }
            let c = field.reduce(&c)?;
            let entry = out.entry(m).or_insert_with(Scalar::zero);
            *entry = field.add(entry, &c);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Poly { ring: ring.clone(), terms: out })
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant coefficient, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|m| self.ring.weighted_degree(m));
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    /// Weighted degree when every term shares it; `None` for mixed degrees
    /// and for zero (see [`Poly::homogeneity`] to tell them apart).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.homogeneity() {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    /// True when zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        match self.homogeneity() {
            Homogeneity::Zero => true,
            Homogeneity::Homogeneous(e) => e == d,
            Homogeneity::Mixed => false,
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let field = self.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let sum = match terms.get(m) {
                Some(a) => field.add(a, c),
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(m);
            } else {
                terms.insert(m.clone(), sum);
            }
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let field = self.field();
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = field.mul(c1, c2);
                let entry = terms.entry(m).or_insert_with(Scalar::zero);
                *entry = field.add(entry, &c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    fn neg_ref(&self) -> Poly {
        let field = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let field = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Ring homomorphism k[x] → S sending xᵢ to `images[i]`. Coefficients are
    /// reduced into the target field.
    pub fn substitute(&self, images: &[Poly], target: &Arc<GradedRing>) -> Result<Poly> {
        if images.len() != self.ring.arity() {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.arity()
            )));
        }
        if let Some(bad) = images.iter().find(|p| &p.ring != target) {
            return Err(Error::RingMismatch(format!("image lives in {}, expected {target}", bad.ring)));
        }
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, target.field().reduce(c)?);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let c = field.display_signed(c);
            let neg = c < Scalar::zero();
            let abs = if neg { -c } else { c };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let coeff = field.format(&abs);
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.format(self.ring.vars()))?;
            } else {
                write!(f, "{coeff}*{}", m.format(self.ring.vars()))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn ring() -> Arc<GradedRing> {
        GradedRing::rational(["x", "y"])
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x = Poly::named(&r, "x");
        let y = Poly::named(&r, "y");
        let p = (&x + &y) * (&x - &y);
        assert_eq!(p, parse_poly(&r, "x^2 - y^2").unwrap());
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn zero_annihilates() {
        let r = ring();
        let p = parse_poly(&r, "3*x*y + 1/2").unwrap();
        assert!((Poly::zero(&r) * p).is_zero());
    }

    #[test]
    fn prime_field_product() {
        let r = GradedRing::new(["x"], [1], FieldSpec::PrimeField(5)).unwrap();
        let p = parse_poly(&r, "2*x").unwrap() * parse_poly(&r, "3*x").unwrap();
        assert_eq!(p, parse_poly(&r, "x^2").unwrap());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Poly::one(&ring());
        let b = Poly::one(&GradedRing::rational(["t"]));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn homogeneous_degree_cases() {
        let r = ring();
        assert_eq!(parse_poly(&r, "x*y").unwrap().homogeneous_degree(), Some(2));
        let w = GradedRing::new(["x", "y"], [1, 2], FieldSpec::Rationals).unwrap();
        assert_eq!(parse_poly(&w, "x^2 + y").unwrap().homogeneous_degree(), Some(2));
        let mixed = parse_poly(&r, "x + x^2").unwrap();
        assert_eq!(mixed.homogeneous_degree(), None);
        assert_eq!(mixed.homogeneity(), Homogeneity::Mixed);
        assert_eq!(Poly::zero(&r).homogeneity(), Homogeneity::Zero);
    }

    #[test]
    fn substitution() {
        let r = ring();
        let t = GradedRing::rational(["t"]);
        let tt = Poly::named(&t, "t");
        let p = parse_poly(&r, "x*y - 2*y^2").unwrap();
        let img = p.substitute(&[tt.clone(), tt.clone()], &t).unwrap();
        assert_eq!(img, parse_poly(&t, "-t^2").unwrap());
    }
}
