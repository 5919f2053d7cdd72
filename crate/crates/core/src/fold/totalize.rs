use crate::error::{Error, Result};
use crate::fact::{FactMorphism, Factorization, FreeModule};
use crate::ring::PolyMatrix;

/// Bounded complex of factorizations E_lo → E_lo+1 → … with degree-0
/// morphism differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactChain {
    pub lo: i64,
    pub objects: Vec<Factorization>,
    /// maps[i]: objects[i] → objects[i+1]
    pub maps: Vec<FactMorphism>,
}

impl FactChain {
    pub fn new(lo: i64, objects: Vec<Factorization>, maps: Vec<FactMorphism>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::NotAChain("a chain needs at least one object".into()));
        }
        if maps.len() + 1 != objects.len() {
            return Err(Error::NotAChain(format!("{} objects need {} maps", objects.len(), objects.len() - 1)));
        }
        for (i, g) in maps.iter().enumerate() {
            if g.source() != &objects[i] || g.target() != &objects[i + 1] {
                return Err(Error::EndpointMismatch(format!("map {i} does not connect objects {i} and {}", i + 1)));
            }
            if g.degree() != 0 {
                return Err(Error::InvalidMorphism(format!("map {i} has internal degree {}", g.degree())));
            }
        }
        for e in &objects[1..] {
            objects[0].check_same_potential(e)?;
        }
        Ok(FactChain { lo, objects, maps })
    }

    pub fn single(e: Factorization) -> Self {
        FactChain { lo: 0, objects: vec![e], maps: vec![] }
    }

    /// Checks that every map is a morphism and consecutive maps compose to 0.
    pub fn check(&self) -> Result<()> {
        for (i, g) in self.maps.iter().enumerate() {
            if !g.is_valid() {
                return Err(Error::InvalidMorphism(format!("map {i}: {}", g.validate().to_string().trim())));
            }
        }
        for i in 1..self.maps.len() {
            if !self.maps[i].compose(&self.maps[i - 1])?.is_zero() {
                return Err(Error::NotAChain(format!("g_{} ∘ g_{} ≠ 0", i, i - 1)));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &FactChain) -> Result<FactChain> {
        if self.lo != other.lo || self.objects.len() != other.objects.len() {
            return Err(Error::NotAChain("chains have different ranges".into()));
        }
        let objects = self.objects.iter().zip(&other.objects).map(|(a, b)| a.direct_sum(b)).collect::<Result<_>>()?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect::<Result<_>>()?;
        FactChain::new(self.lo, objects, maps)
    }
}

/// Totalization T = ⊕_l E_l[−l], summands ordered by ascending l.
pub fn totalize(chain: &FactChain) -> Result<Factorization> {
    chain.check()?;
    let first = &chain.objects[0];
    let ring = first.ring();
    let pieces: Vec<Factorization> =
        chain.objects.iter().enumerate().map(|(i, e)| e.shift(-(chain.lo + i as i64))).collect();
    let e0 = FreeModule::sum_all(pieces.iter().map(Factorization::e0));
    let e1 = FreeModule::sum_all(pieces.iter().map(Factorization::e1));
    let mut phi0 = PolyMatrix::zero(ring, e0.rank(), e1.rank());
    let mut phim1 = PolyMatrix::zero(ring, e1.rank(), e0.rank());
    let mut off0 = vec![0];
    let mut off1 = vec![0];
    for piece in &pieces {
        off0.push(off0.last().unwrap() + piece.e0().rank());
        off1.push(off1.last().unwrap() + piece.e1().rank());
    }
    for (i, piece) in pieces.iter().enumerate() {
        phi0.put_block(off0[i], off1[i], piece.phi0());
        phim1.put_block(off1[i], off0[i], piece.phim1());
    }
    for (i, g) in chain.maps.iter().enumerate() {
        let l = chain.lo + i as i64;
        if l.rem_euclid(2) == 0 {
            // E_l⁻¹ ⊂ T⁻¹ → E_{l+1}⁻¹ ⊂ T⁰, and E_l⁰ ⊂ T⁰ → E_{l+1}⁰ ⊂ T⁻¹.
            phi0.put_block(off0[i + 1], off1[i], g.gm1());
            phim1.put_block(off1[i + 1], off0[i], g.g0());
        } else {
            phim1.put_block(off1[i + 1], off0[i], g.gm1());
            phi0.put_block(off0[i + 1], off1[i], g.g0());
        }
    }
    Factorization::new(first.w().clone(), e0, e1, phi0, phim1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fact::cone;
    use crate::ring::{parse_poly, GradedRing, Poly};

    fn e() -> Factorization {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap()
    }

    #[test]
    fn single_object() {
        assert_eq!(totalize(&FactChain::single(e())).unwrap(), e());
        let shifted = FactChain { lo: 1, ..FactChain::single(e()) };
        assert_eq!(totalize(&shifted).unwrap(), e().shift(-1));
    }

    #[test]
    fn two_term_chain_is_a_cone() {
        let e = e();
        let id = FactMorphism::identity(&e);
        let chain = FactChain::new(-1, vec![e.clone(), e.clone()], vec![id.clone()]).unwrap();
        let t = totalize(&chain).unwrap();
        assert!(t.is_valid());
        assert_eq!(t, cone(&id).unwrap());
        for lo in [-3, 0, 2] {
            let chain = FactChain::new(lo, vec![e.clone(), e.clone()], vec![id.clone()]).unwrap();
            assert!(totalize(&chain).unwrap().is_valid());
        }
    }

    #[test]
    fn split_short_exact_sequence() {
        let e = e();
        let r = e.ring().clone();
        let f = Factorization::rank_one(e.w().clone(), Poly::named(&r, "y"), Poly::named(&r, "x")).unwrap();
        let s = e.direct_sum(&f).unwrap();
        let one = |rows: usize, cols: usize, at: (usize, usize)| {
            let mut m = PolyMatrix::zero(&r, rows, cols);
            m.set(at.0, at.1, Poly::one(&r));
            m
        };
        let inc = FactMorphism::checked(e.clone(), s.clone(), 0, one(2, 1, (0, 0)), one(2, 1, (0, 0))).unwrap();
        let proj = FactMorphism::checked(s.clone(), f.clone(), 0, one(1, 2, (0, 1)), one(1, 2, (0, 1))).unwrap();
        let chain = FactChain::new(-1, vec![e, s, f], vec![inc.clone(), proj]).unwrap();
        let t = totalize(&chain).unwrap();
        assert!(t.is_valid(), "{}", t.validate());
        assert_eq!((t.e0().rank(), t.e1().rank()), (4, 4));

        let bad = FactChain::new(-1, vec![inc.source().clone(), inc.target().clone(), inc.target().clone()], vec![
            inc.clone(),
            FactMorphism::identity(inc.target()),
        ])
        .unwrap();
        assert!(matches!(totalize(&bad), Err(Error::NotAChain(_))));
    }
}
