use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::koszul_variables;
use crate::error::Result;
use crate::fact::Factorization;
use crate::fold::{koszul_homotopy, KoszulData};
use crate::ring::{FieldSpec, GradedRing, Monomial, Poly};

pub const DEFAULT_SEED: u64 = 0x6d66_6b69_74;

/// A randomized Koszul stabilization: w = Σ splittingᵢ·xᵢ over the first n
/// variables.
#[derive(Clone, Debug)]
pub struct Sample {
    pub ring: Arc<GradedRing>,
    pub sequence: Vec<String>,
    pub w: Poly,
    pub splitting: Vec<Poly>,
}

impl Sample {
    pub fn koszul(&self) -> Result<KoszulData> {
        let seq: Vec<&str> = self.sequence.iter().map(String::as_str).collect();
        koszul_homotopy(&self.w, &seq, &self.splitting)
    }

    pub fn stabilization(&self) -> Result<Factorization> {
        let seq: Vec<&str> = self.sequence.iter().map(String::as_str).collect();
        crate::fold::stabilize(&self.ring, &seq, &self.w, &self.splitting)
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; n];
    for _ in 0..degree {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial(exps)
}

/// Up to three terms with coefficients in −2..=2, of degree ≤ 2, or all of
/// degree exactly `homogeneous` when given.
fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<GradedRing>, homogeneous: Option<u32>) -> Poly {
    let n = ring.arity();
    let terms: Vec<_> = (0..rng.gen_range(0..=3))
        .map(|_| {
            let degree = homogeneous.unwrap_or_else(|| rng.gen_range(0..=2));
            let c = ring.field().from_i64(rng.gen_range(-2..=2));
            (c, random_monomial(rng, n, degree))
        })
        .collect();
    Poly::from_terms(ring, terms).expect("terms match the ring")
}

/// Deterministic population: even samples over ℚ, odd ones over 𝔽₅; every
/// other pair uses homogeneous splittings so the graded checks are hit.
pub fn random_population(seed: u64, count: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings: Vec<[Arc<GradedRing>; 2]> = (1..=4)
        .map(|n| {
            let vars = koszul_variables(n);
            let q = GradedRing::new(vars.clone(), vec![1; n], FieldSpec::Rationals).expect("valid ring");
            let f5 = GradedRing::new(vars, vec![1; n], FieldSpec::PrimeField(5)).expect("valid ring");
            [q, f5]
        })
        .collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let i = out.len();
        let n = rng.gen_range(1..=4);
        let ring = &rings[n - 1][i % 2];
        let homogeneous = if (i / 2) % 2 == 0 { Some(rng.gen_range(0..=2)) } else { None };
        let splitting: Vec<Poly> = (0..n).map(|_| random_poly(&mut rng, ring, homogeneous)).collect();
        let w = splitting
            .iter()
            .enumerate()
            .fold(Poly::zero(ring), |acc, (k, s)| &acc + &(s * &Poly::var(ring, k)));
        // An inhomogeneous splitting can still sum to a homogeneous w; the
        // graded checks would then reject the homotopy, so redraw.
        let consistent = match w.homogeneous_degree() {
            Some(d) => splitting.iter().all(|p| p.is_homogeneous_of(d - 1)),
            None => true,
        };
        if w.is_zero() || !consistent {
            continue;
        }
        out.push(Sample { ring: ring.clone(), sequence: koszul_variables(n), w, splitting });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_mixed() {
        let a = random_population(7, 40);
        let b = random_population(7, 40);
        assert_eq!(a.iter().map(|s| s.w.to_string()).collect::<Vec<_>>(), b.iter().map(|s| s.w.to_string()).collect::<Vec<_>>());
        assert!(a.iter().any(|s| s.ring.field() == &FieldSpec::PrimeField(5)));
        assert!(a.iter().any(|s| s.w.homogeneous_degree().is_some()));
        assert!(a.iter().any(|s| s.w.homogeneous_degree().is_none()));
        assert!(a.iter().any(|s| s.sequence.len() == 4));
    }
}
