use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fact::{FactMorphism, Factorization, Grading};
use crate::ring::{FieldSpec, GradedRing, Homogeneity, Poly, PolyMatrix};

/// A ring map θ: k[x₁..xₙ] → k'[y₁..yₘ] given by the images of the variables.
/// Coefficients are reduced into the target field, so ℚ → 𝔽ₚ is allowed
/// whenever no denominator is divisible by p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<Poly>,
}

impl BaseChange {
    pub fn new(source: &Arc<GradedRing>, target: &Arc<GradedRing>, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.arity() {
            return Err(Error::BaseChange(format!(
                "{} images for {} variables",
                images.len(),
                source.arity()
            )));
        }
        if images.iter().any(|p| p.ring() != target) {
            return Err(Error::BaseChange("images must live in the target ring".into()));
        }
        match (source.field(), target.field()) {
            (FieldSpec::Rationals, _) => {}
            (a, b) if a == b => {}
            (a, b) => return Err(Error::BaseChange(format!("no ring map from {a} to {b}"))),
        }
        Ok(BaseChange { source: source.clone(), target: target.clone(), images })
    }

    /// Same variables and weights, coefficients reduced mod `p`.
    pub fn reduce_mod(source: &Arc<GradedRing>, p: u32) -> Result<Self> {
        let target = source.with_field(FieldSpec::prime(p)?)?;
        let images = (0..source.arity()).map(|i| Poly::var(&target, i)).collect();
        Self::new(source, &target, images)
    }

    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// True when every variable maps to zero or to a homogeneous element of
    /// its own weight, so twists can be kept as they are.
    pub fn preserves_grading(&self) -> bool {
        self.images.iter().zip(self.source.weights()).all(|(p, &wt)| match p.homogeneity() {
            Homogeneity::Zero => true,
            Homogeneity::Homogeneous(d) => d == wt as i64,
            Homogeneity::Mixed => false,
        })
    }

    pub fn poly(&self, p: &Poly) -> Result<Poly> {
        if p.ring() != &self.source {
            return Err(Error::RingMismatch(format!("{} is not over {}", p, self.source)));
        }
        p.substitute(&self.images, &self.target)
    }

    pub fn matrix(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        m.try_map_into(&self.target, |p| self.poly(p))
    }

    /// θ(E), a factorization of `target_w`, which must equal θ(w).
    pub fn factorization(&self, e: &Factorization, target_w: &Poly) -> Result<Factorization> {
        let image_w = self.poly(e.w())?;
        if &image_w != target_w {
            return Err(Error::BaseChange(format!("θ(w) = {image_w}, expected {target_w}")));
        }
        if e.grading().is_graded() && Grading::of(target_w).is_graded() && !self.preserves_grading() {
            return Err(Error::Grading("the ring map does not preserve degrees".into()));
        }
        Factorization::new(
            image_w,
            e.e0().clone(),
            e.e1().clone(),
            self.matrix(e.phi0())?,
            self.matrix(e.phim1())?,
        )
    }

    pub fn morphism(&self, g: &FactMorphism, target_w: &Poly) -> Result<FactMorphism> {
        FactMorphism::new(
            self.factorization(g.source(), target_w)?,
            self.factorization(g.target(), target_w)?,
            g.degree(),
            self.matrix(g.gm1())?,
            self.matrix(g.g0())?,
        )
    }
}

/// θ(E) for the map sending variable i to `images[i]`.
pub fn base_change(e: &Factorization, theta: &BaseChange, target_w: &Poly) -> Result<Factorization> {
    theta.factorization(e, target_w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fact::cone;
    use crate::ring::parse_poly;

    #[test]
    fn collapse_two_variables() {
        let r = GradedRing::rational(["x", "y"]);
        let s = GradedRing::rational(["t"]);
        let e = Factorization::rank_one(parse_poly(&r, "x*y").unwrap(), Poly::named(&r, "x"), Poly::named(&r, "y"))
            .unwrap();
        let t = Poly::named(&s, "t");
        let theta = BaseChange::new(&r, &s, vec![t.clone(), t.clone()]).unwrap();
        let out = base_change(&e, &theta, &parse_poly(&s, "t^2").unwrap()).unwrap();
        assert_eq!(out.phi0(), &PolyMatrix::single(t.clone()));
        assert_eq!(out.phim1(), &PolyMatrix::single(t.clone()));
        assert!(out.is_valid());
        assert!(matches!(base_change(&e, &theta, &t), Err(Error::BaseChange(_))));
    }

    #[test]
    fn reduction_mod_five() {
        let r = GradedRing::rational(["x", "y"]);
        let w = parse_poly(&r, "x^2 - 1/2*y^2").unwrap();
        let e = Factorization::rank_one(w.clone(), Poly::named(&r, "x").pow(2) - parse_poly(&r, "1/2*y^2").unwrap(), Poly::one(&r))
            .unwrap();
        let theta = BaseChange::reduce_mod(&r, 5).unwrap();
        let w5 = theta.poly(&w).unwrap();
        assert_eq!(w5.to_string(), "x^2 + 2*y^2");
        let e5 = base_change(&e, &theta, &w5).unwrap();
        assert!(e5.is_valid());
        let g = FactMorphism::identity(&e);
        assert_eq!(cone(&theta.morphism(&g, &w5).unwrap()).unwrap(), base_change(&cone(&g).unwrap(), &theta, &w5).unwrap());

        let bad = parse_poly(&r, "1/5*x").unwrap();
        assert!(theta.poly(&bad).is_err());
    }

    #[test]
    fn degree_breaking_maps_are_rejected() {
        let r = GradedRing::rational(["x", "y"]);
        let e = Factorization::rank_one(parse_poly(&r, "x*y").unwrap(), Poly::named(&r, "x"), Poly::named(&r, "y"))
            .unwrap();
        let theta = BaseChange::new(&r, &r, vec![Poly::named(&r, "x").pow(2), Poly::named(&r, "y").pow(2)]).unwrap();
        let w = parse_poly(&r, "x^2*y^2").unwrap();
        assert!(matches!(base_change(&e, &theta, &w), Err(Error::Grading(_))));
    }
}
