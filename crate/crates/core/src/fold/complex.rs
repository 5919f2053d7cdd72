use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fact::FreeModule;
use crate::ring::{GradedRing, PolyMatrix};

/// Bounded complex of free graded modules A_lo → … → A_hi with
/// differentials dᵢ: Aᵢ₋₁ → Aᵢ raising the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Arc<GradedRing>,
    lo: i64,
    modules: Vec<FreeModule>,
    // diffs[k] = d_{lo+k+1}
    diffs: Vec<PolyMatrix>,
}

/// Degree-0 chain map between two complexes; missing degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub maps: BTreeMap<i64, PolyMatrix>,
}

static EMPTY: FreeModule = FreeModule::zero();

impl FreeComplex {
    pub fn new(ring: &Arc<GradedRing>, lo: i64, modules: Vec<FreeModule>, diffs: Vec<PolyMatrix>) -> Result<Self> {
        if modules.is_empty() {
            return Ok(Self::zero(ring));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::Dimension(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::RingMismatch(format!("differential d_{}", lo + k as i64 + 1)));
            }
            if d.shape() != (modules[k + 1].rank(), modules[k].rank()) {
                return Err(Error::Dimension(format!(
                    "d_{} is {:?}, expected {:?}",
                    lo + k as i64 + 1,
                    d.shape(),
                    (modules[k + 1].rank(), modules[k].rank())
                )));
            }
        }
        Ok(FreeComplex { ring: ring.clone(), lo, modules, diffs })
    }

    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        FreeComplex { ring: ring.clone(), lo: 0, modules: vec![FreeModule::zero()], diffs: vec![] }
    }

    /// `module` placed in degree `degree`.
    pub fn concentrated(ring: &Arc<GradedRing>, degree: i64, module: FreeModule) -> Self {
        FreeComplex { ring: ring.clone(), lo: degree, modules: vec![module], diffs: vec![] }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    /// Aᵢ, empty outside the stored range.
    pub fn module(&self, i: i64) -> &FreeModule {
        if i < self.lo || i > self.hi() {
            return &EMPTY;
        }
        &self.modules[(i - self.lo) as usize]
    }

    pub fn rank(&self, i: i64) -> usize {
        self.module(i).rank()
    }

    /// dᵢ: Aᵢ₋₁ → Aᵢ, a zero matrix of the right shape outside the range.
    pub fn diff(&self, i: i64) -> PolyMatrix {
        if i > self.lo && i <= self.hi() {
            return self.diffs[(i - self.lo - 1) as usize].clone();
        }
        PolyMatrix::zero(&self.ring, self.rank(i), self.rank(i - 1))
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(|m| m.rank() == 0)
    }

    /// Checks dᵢ₊₁dᵢ = 0 and, when `graded`, that every differential has
    /// degree 0 with respect to the module twists.
    pub fn validate(&self, graded: bool) -> Result<()> {
        for i in self.lo + 1..self.hi() {
            let dd = self.diff(i + 1).checked_mul(&self.diff(i))?;
            if !dd.is_zero() {
                return Err(Error::NotAChain(format!("d_{} d_{} ≠ 0", i + 1, i)));
            }
        }
        if graded {
            for i in self.lo + 1..=self.hi() {
                let d = self.diff(i);
                for r in 0..d.rows() {
                    for c in 0..d.cols() {
                        let expected = self.module(i).twists()[r] - self.module(i - 1).twists()[c];
                        if !d.get(r, c).is_homogeneous_of(expected) {
                            return Err(Error::Grading(format!("d_{i}[{r},{c}] = {} is not of degree {expected}", d.get(r, c))));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A[n]: Bᵢ = Aᵢ₊ₙ with differential (−1)ⁿ d.
    pub fn shift(&self, n: i64) -> FreeComplex {
        let diffs = if n.rem_euclid(2) == 1 { self.diffs.iter().map(PolyMatrix::neg).collect() } else { self.diffs.clone() };
        FreeComplex { ring: self.ring.clone(), lo: self.lo - n, modules: self.modules.clone(), diffs }
    }

    /// Same modules, negated differential.
    pub fn neg(&self) -> FreeComplex {
        FreeComplex { diffs: self.diffs.iter().map(PolyMatrix::neg).collect(), ..self.clone() }
    }

    /// Every module twisted by `k`.
    pub fn regrade(&self, k: i64) -> FreeComplex {
        FreeComplex { modules: self.modules.iter().map(|m| m.shifted(k)).collect(), ..self.clone() }
    }

    /// Extends the stored range to cover `lo..=hi` with zero modules.
    pub fn padded(&self, lo: i64, hi: i64) -> FreeComplex {
        let lo = lo.min(self.lo);
        let hi = hi.max(self.hi());
        let modules: Vec<FreeModule> = (lo..=hi).map(|i| self.module(i).clone()).collect();
        let diffs = (lo + 1..=hi).map(|i| self.diff(i)).collect();
        FreeComplex { ring: self.ring.clone(), lo, modules, diffs }
    }

    pub fn direct_sum(&self, other: &FreeComplex) -> Result<FreeComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("complexes over different rings".into()));
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let modules = (lo..=hi).map(|i| self.module(i).direct_sum(other.module(i))).collect();
        let diffs = (lo + 1..=hi)
            .map(|i| PolyMatrix::block_diag(&self.ring, &[&self.diff(i), &other.diff(i)]))
            .collect();
        FreeComplex::new(&self.ring, lo, modules, diffs)
    }

    /// Mapping cone: Cone(f)ᵢ = Xᵢ₊₁ ⊕ Yᵢ with dᵢ = [[−d^X_{i+1}, 0], [fᵢ, d^Y_i]].
    pub fn cone(f: &ChainMap) -> Result<FreeComplex> {
        f.check()?;
        let (x, y) = (&f.source, &f.target);
        let ring = &x.ring;
        let lo = (x.lo - 1).min(y.lo);
        let hi = (x.hi() - 1).max(y.hi());
        let modules = (lo..=hi).map(|i| x.module(i + 1).direct_sum(y.module(i))).collect();
        let diffs = (lo + 1..=hi)
            .map(|i| {
                PolyMatrix::block(
                    ring,
                    &[
                        vec![x.diff(i + 1).neg(), PolyMatrix::zero(ring, x.rank(i + 1), y.rank(i - 1))],
                        vec![f.component(i), y.diff(i)],
                    ],
                )
            })
            .collect::<Result<Vec<_>>>()?;
        FreeComplex::new(ring, lo, modules, diffs)
    }
}

impl ChainMap {
    pub fn new(source: FreeComplex, target: FreeComplex, maps: BTreeMap<i64, PolyMatrix>) -> Result<Self> {
        for (&i, m) in &maps {
            if m.shape() != (target.rank(i), source.rank(i)) {
                return Err(Error::Dimension(format!("chain map component {i} is {:?}", m.shape())));
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    /// fᵢ: Xᵢ → Yᵢ.
    pub fn component(&self, i: i64) -> PolyMatrix {
        self.maps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zero(&self.source.ring, self.target.rank(i), self.source.rank(i)))
    }

    /// Checks d^Y_i fᵢ₋₁ = fᵢ d^X_i in every degree.
    pub fn check(&self) -> Result<()> {
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        for i in lo + 1..=hi {
            let lhs = self.target.diff(i).checked_mul(&self.component(i - 1))?;
            let rhs = self.component(i).checked_mul(&self.source.diff(i))?;
            if lhs != rhs {
                return Err(Error::NotAChain(format!("chain map fails to commute with d_{i}")));
            }
        }
        Ok(())
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { maps: self.maps.iter().map(|(&i, m)| (i, m.neg())).collect(), ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Poly;

    fn two_term(r: &Arc<GradedRing>) -> FreeComplex {
        let x = Poly::named(r, "x");
        FreeComplex::new(
            r,
            -1,
            vec![FreeModule::new(vec![-1]), FreeModule::new(vec![0])],
            vec![PolyMatrix::single(x)],
        )
        .unwrap()
    }

    #[test]
    fn shift_and_bounds() {
        let r = GradedRing::rational(["x"]);
        let c = two_term(&r);
        c.validate(true).unwrap();
        assert_eq!((c.lo(), c.hi()), (-1, 0));
        let s = c.shift(1);
        assert_eq!((s.lo(), s.hi()), (-2, -1));
        assert_eq!(s.diff(-1), c.diff(0).neg());
        assert_eq!(c.rank(5), 0);
        assert_eq!(c.padded(-3, 2).diff(0), c.diff(0));
    }

    #[test]
    fn cone_of_identity_is_a_complex() {
        let r = GradedRing::rational(["x"]);
        let c = two_term(&r);
        let id = ChainMap::new(
            c.clone(),
            c.clone(),
            [(-1, PolyMatrix::identity(&r, 1)), (0, PolyMatrix::identity(&r, 1))].into_iter().collect(),
        )
        .unwrap();
        let cone = FreeComplex::cone(&id).unwrap();
        cone.validate(true).unwrap();
        assert_eq!((cone.lo(), cone.hi()), (-2, 0));
        assert_eq!(cone.rank(-1), 2);
    }

    #[test]
    fn non_chain_maps_are_rejected() {
        let r = GradedRing::rational(["x"]);
        let c = two_term(&r);
        let f = ChainMap::new(c.clone(), c, [(0, PolyMatrix::identity(&r, 1))].into_iter().collect()).unwrap();
        assert!(f.check().is_err());
    }
}
