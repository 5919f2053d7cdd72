use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::FieldSpec;

/// Polynomial ring k[x₁, …, xₙ] with a positive weight on each variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedRing {
    vars: Vec<String>,
    weights: Vec<u32>,
    field: FieldSpec,
}

impl GradedRing {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        weights: impl IntoIterator<Item = u32>,
        field: FieldSpec,
    ) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let weights: Vec<u32> = weights.into_iter().collect();
        if vars.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidRing(format!("weight of `{}` must be ≥ 1", vars[i])));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if v.chars().next().unwrap().is_ascii_digit() {
                return Err(Error::InvalidRing(format!("variable `{v}` starts with a digit")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let FieldSpec::PrimeField(p) = field {
            FieldSpec::prime(p)?;
        }
        Ok(Arc::new(GradedRing { vars, weights, field }))
    }

    /// Standard-graded ring over ℚ.
    pub fn rational<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Arc<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let n = vars.len();
        Self::new(vars, vec![1; n], FieldSpec::Rationals).expect("valid ring")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and weights over another field.
    pub fn with_field(&self, field: FieldSpec) -> Result<Arc<Self>> {
        GradedRing::new(self.vars.clone(), self.weights.clone(), field)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> i64 {
        m.0.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    /// All monomials of weighted degree `d`, in ascending graded-lex order.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let mut exps = vec![0u32; self.arity()];
        self.fill_degree(0, d, &mut exps, &mut out);
        out.sort();
        out
    }

    fn fill_degree(&self, i: usize, rem: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.arity() {
            if rem == 0 {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let w = self.weights[i] as i64;
        let mut e = 0;
        while e * w <= rem {
            exps[i] = e as u32;
            self.fill_degree(i + 1, rem - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }

    /// All monomials of ordinary total degree at most `cap`.
    pub fn monomials_up_to(&self, cap: u32) -> Vec<Monomial> {
        let flat = GradedRing {
            vars: self.vars.clone(),
            weights: vec![1; self.arity()],
            field: self.field.clone(),
        };
        (0..=cap as i64).flat_map(|d| flat.monomials_of_degree(d)).collect()
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, (v, w)) in self.vars.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *w == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}:{w}")?;
            }
        }
        write!(f, "]")
    }
}

/// Exponent vector. Ordered graded-lexicographically: first by total degree,
/// then lexicographically with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn format(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Basis of the degree-`degree` piece of ⊕ᵢ R(twists[i]): pairs of
/// generator index and a monomial of weighted degree `degree + twists[i]`.
pub fn graded_piece_basis(ring: &GradedRing, twists: &[i64], degree: i64) -> Vec<(usize, Monomial)> {
    twists
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| {
            ring.monomials_of_degree(degree + a)
                .into_iter()
                .map(move |m| (i, m))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<GradedRing> {
        GradedRing::rational(["x", "y"])
    }

    #[test]
    fn piece_basis_small_cases() {
        let r = xy();
        let b = graded_piece_basis(&r, &[0], 2);
        assert_eq!(b.len(), 3);
        let names: Vec<String> = b.iter().map(|(_, m)| m.format(r.vars())).collect();
        assert_eq!(names, ["y^2", "x*y", "x^2"]);
        assert_eq!(graded_piece_basis(&r, &[0], 0).len(), 1);
        assert!(graded_piece_basis(&r, &[0], -1).is_empty());
    }

    #[test]
    fn piece_basis_sums_over_generators() {
        let r = xy();
        // R(1) ⊕ R(-1) in degree 1: degree-2 monomials plus the constant.
        assert_eq!(graded_piece_basis(&r, &[1, -1], 1).len(), 3 + 1);
    }

    #[test]
    fn weighted_enumeration_matches_brute_force() {
        let r = GradedRing::new(["x", "y", "z"], [1, 2, 3], FieldSpec::Rationals).unwrap();
        for d in 0..12i64 {
            let mut count = 0;
            for a in 0..=12u32 {
                for b in 0..=12u32 {
                    for c in 0..=12u32 {
                        if (a + 2 * b + 3 * c) as i64 == d {
                            count += 1;
                        }
                    }
                }
            }
            assert_eq!(r.monomials_of_degree(d).len(), count, "degree {d}");
        }
    }

    #[test]
    fn ring_validation() {
        assert!(GradedRing::new(["x", "x"], [1, 1], FieldSpec::Rationals).is_err());
        assert!(GradedRing::new(["x"], [0], FieldSpec::Rationals).is_err());
        assert!(GradedRing::new(["x"], [1], FieldSpec::PrimeField(4)).is_err());
        assert!(GradedRing::new(["x", "y"], [1], FieldSpec::Rationals).is_err());
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 3]);
        let c = Monomial(vec![1, 1]);
        assert!(a < b);
        assert!(c < a);
    }
}
