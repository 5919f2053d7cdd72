use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fact::{FactMorphism, Factorization, FreeModule, Grading, cone};
use crate::fold::koszul::{koszul_data_of, KoszulData};
use crate::fold::{ChainMap, FreeComplex};
use crate::ring::{GradedRing, Poly, PolyMatrix};

/// Blocks φ⁻¹_{p,q}: T⁰_p → T⁻¹_q and φ⁰_{p,q}: T⁻¹_p → T⁰_q of a folding.
/// Absent blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FoldBlocks {
    pub blocks_m1: BTreeMap<(i64, i64), PolyMatrix>,
    pub blocks_0: BTreeMap<(i64, i64), PolyMatrix>,
}

/// Row positions of each summand inside the assembled components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldLayout {
    pub m1: BTreeMap<i64, Vec<usize>>,
    pub zero: BTreeMap<i64, Vec<usize>>,
}

/// A pair of complexes with fold blocks over a potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Folding {
    pub w: Poly,
    pub c_m1: FreeComplex,
    pub c_0: FreeComplex,
    pub blocks: FoldBlocks,
    pub order: SummandOrder,
}

/// Order in which the summands of each folded component are stacked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SummandOrder {
    #[default]
    Ascending,
    /// Highest p first; for Koszul foldings this lists Λ⁰ before Λ².
    Descending,
}

/// Which complex a summand of a folded component comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Minus,
    Zero,
}

impl FoldBlocks {
    pub fn new() -> Self {
        Self::default()
    }

    /// The blocks forced by the differentials: φ⁻¹_{p,p+1} is d⁻¹_{p+1}
    /// (p odd) or −d⁰_{p+1} (p even), and φ⁰_{p,p+1} is −d⁰_{p+1} (p odd)
    /// or d⁻¹_{p+1} (p even).
    pub fn superdiagonal(c_m1: &FreeComplex, c_0: &FreeComplex) -> Self {
        let mut out = FoldBlocks::new();
        let (lo, hi) = range(c_m1, c_0);
        for p in lo..hi {
            let (bm1, b0) = expected_superdiagonal(c_m1, c_0, p);
            out.blocks_m1.insert((p, p + 1), bm1);
            out.blocks_0.insert((p, p + 1), b0);
        }
        out.prune();
        out
    }

    pub fn m1(&self, p: i64, q: i64) -> Option<&PolyMatrix> {
        self.blocks_m1.get(&(p, q))
    }

    pub fn zero_side(&self, p: i64, q: i64) -> Option<&PolyMatrix> {
        self.blocks_0.get(&(p, q))
    }

    /// Drops blocks that are zero.
    pub fn prune(&mut self) {
        self.blocks_m1.retain(|_, m| !m.is_zero());
        self.blocks_0.retain(|_, m| !m.is_zero());
    }

    /// Reads the blocks of `e` through `layout`.
    pub fn extract(e: &Factorization, layout: &FoldLayout) -> FoldBlocks {
        let mut out = FoldBlocks::new();
        for (&p, cols0) in &layout.zero {
            for (&q, rows1) in &layout.m1 {
                out.blocks_m1.insert((p, q), e.phim1().select(rows1, cols0));
            }
        }
        for (&p, cols1) in &layout.m1 {
            for (&q, rows0) in &layout.zero {
                out.blocks_0.insert((p, q), e.phi0().select(rows0, cols1));
            }
        }
        out.prune();
        out
    }

    /// Blocks for A[1] from blocks for A: φ'⁻¹_{p,q} = −φ⁰_{p+1,q+1} and
    /// φ'⁰_{p,q} = −φ⁻¹_{p+1,q+1}.
    pub fn shift(&self) -> FoldBlocks {
        FoldBlocks {
            blocks_m1: self.blocks_0.iter().map(|(&(p, q), m)| ((p - 1, q - 1), m.neg())).collect(),
            blocks_0: self.blocks_m1.iter().map(|(&(p, q), m)| ((p - 1, q - 1), m.neg())).collect(),
        }
    }
}

fn range(c_m1: &FreeComplex, c_0: &FreeComplex) -> (i64, i64) {
    (c_m1.lo().min(c_0.lo()), c_m1.hi().max(c_0.hi()))
}

fn is_even(p: i64) -> bool {
    p.rem_euclid(2) == 0
}

fn expected_superdiagonal(c_m1: &FreeComplex, c_0: &FreeComplex, p: i64) -> (PolyMatrix, PolyMatrix) {
    if is_even(p) {
        (c_0.diff(p + 1).neg(), c_m1.diff(p + 1))
    } else {
        (c_m1.diff(p + 1), c_0.diff(p + 1).neg())
    }
}

/// Source complex and twist (in units of deg w) of summand p of T⁻¹ or T⁰.
pub fn summand(side: Side, p: i64) -> (Side, i64) {
    match (side, is_even(p)) {
        (Side::Minus, true) => (Side::Minus, -p.div_euclid(2)),
        (Side::Minus, false) => (Side::Zero, -(p + 1).div_euclid(2)),
        (Side::Zero, true) => (Side::Zero, -p.div_euclid(2)),
        (Side::Zero, false) => (Side::Minus, -(p - 1).div_euclid(2)),
    }
}

impl FoldLayout {
    /// Summands stacked contiguously in the given order of p.
    pub fn standard(c_m1: &FreeComplex, c_0: &FreeComplex, order: SummandOrder) -> FoldLayout {
        let (lo, hi) = range(c_m1, c_0);
        let ps: Vec<i64> = match order {
            SummandOrder::Ascending => (lo..=hi).collect(),
            SummandOrder::Descending => (lo..=hi).rev().collect(),
        };
        let stack = |side: Side| {
            let mut next = 0;
            ps.iter()
                .map(|&p| {
                    let (src, _) = summand(side, p);
                    let r = match src {
                        Side::Minus => c_m1.rank(p),
                        Side::Zero => c_0.rank(p),
                    };
                    let rows = (next..next + r).collect();
                    next += r;
                    (p, rows)
                })
                .collect()
        };
        FoldLayout { m1: stack(Side::Minus), zero: stack(Side::Zero) }
    }

    fn size(map: &BTreeMap<i64, Vec<usize>>) -> usize {
        map.values().map(Vec::len).sum()
    }
}

impl Folding {
    pub fn new(w: Poly, c_m1: FreeComplex, c_0: FreeComplex, blocks: FoldBlocks) -> Self {
        Folding { w, c_m1, c_0, blocks, order: SummandOrder::Ascending }
    }

    pub fn with_order(self, order: SummandOrder) -> Self {
        Folding { order, ..self }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        self.w.ring()
    }

    pub fn layout(&self) -> FoldLayout {
        FoldLayout::standard(&self.c_m1, &self.c_0, self.order)
    }

    fn component(&self, side: Side, p: i64) -> (&FreeModule, i64) {
        let (src, k) = summand(side, p);
        let m = match src {
            Side::Minus => self.c_m1.module(p),
            Side::Zero => self.c_0.module(p),
        };
        (m, k)
    }

    /// Checks that blocks have the right shapes, vanish above the
    /// superdiagonal, and agree with the differentials on it.
    pub fn check_blocks(&self) -> Result<()> {
        let (lo, hi) = range(&self.c_m1, &self.c_0);
        let rank = |side: Side, p: i64| self.component(side, p).0.rank();
        for (label, map, from, to) in [
            ("phi-1", &self.blocks.blocks_m1, Side::Zero, Side::Minus),
            ("phi0", &self.blocks.blocks_0, Side::Minus, Side::Zero),
        ] {
            for (&(p, q), m) in map {
                if p < lo || p > hi || q < lo || q > hi {
                    return Err(Error::FoldPrecondition(format!("{label} block ({p},{q}) is outside the complexes")));
                }
                if m.shape() != (rank(to, q), rank(from, p)) {
                    return Err(Error::Dimension(format!("{label} block ({p},{q}) is {:?}", m.shape())));
                }
                if q > p + 1 && !m.is_zero() {
                    return Err(Error::FoldPrecondition(format!("{label} block ({p},{q}) must vanish")));
                }
            }
        }
        let ring = self.ring();
        for p in lo..hi {
            let (em1, e0) = expected_superdiagonal(&self.c_m1, &self.c_0, p);
            let zm1 = PolyMatrix::zero(ring, em1.rows(), em1.cols());
            let z0 = PolyMatrix::zero(ring, e0.rows(), e0.cols());
            if self.blocks.m1(p, p + 1).unwrap_or(&zm1) != &em1 || self.blocks.zero_side(p, p + 1).unwrap_or(&z0) != &e0 {
                return Err(Error::FoldPrecondition(format!("superdiagonal block ({p},{}) disagrees with the differential", p + 1)));
            }
        }
        Ok(())
    }

    /// Assembles the folded factorization without checking identities.
    pub fn assemble(&self, layout: &FoldLayout) -> Result<Factorization> {
        let ring = self.ring();
        let d = Grading::of(&self.w).phi_shift();
        let n1 = FoldLayout::size(&layout.m1);
        let n0 = FoldLayout::size(&layout.zero);
        let mut tw1 = vec![0; n1];
        let mut tw0 = vec![0; n0];
        for (side, map, tw) in [(Side::Minus, &layout.m1, &mut tw1), (Side::Zero, &layout.zero, &mut tw0)] {
            for (&p, rows) in map {
                let (m, k) = self.component(side, p);
                if m.rank() != rows.len() {
                    return Err(Error::Dimension(format!("layout gives summand {p} {} rows, module has rank {}", rows.len(), m.rank())));
                }
                for (r, t) in rows.iter().zip(m.twists()) {
                    tw[*r] = t + k * d;
                }
            }
        }
        let mut phim1 = PolyMatrix::zero(ring, n1, n0);
        for (&(p, q), m) in &self.blocks.blocks_m1 {
            phim1.put_scattered(&layout.m1[&q], &layout.zero[&p], m);
        }
        let mut phi0 = PolyMatrix::zero(ring, n0, n1);
        for (&(p, q), m) in &self.blocks.blocks_0 {
            phi0.put_scattered(&layout.zero[&q], &layout.m1[&p], m);
        }
        Factorization::new(self.w.clone(), FreeModule::new(tw0), FreeModule::new(tw1), phi0, phim1)
    }

    /// The (p,q) pairs where Σₜ φ⁰_{t,q}φ⁻¹_{p,t} or Σₜ φ⁻¹_{t,q}φ⁰_{p,t}
    /// differs from w·δ_{pq}.
    pub fn identity_violations(&self, e: &Factorization, layout: &FoldLayout) -> Result<Vec<(i64, i64)>> {
        let mut bad = Vec::new();
        let on0 = e.phi0().checked_mul(e.phim1())?;
        let on1 = e.phim1().checked_mul(e.phi0())?;
        for (prod, map) in [(&on0, &layout.zero), (&on1, &layout.m1)] {
            for (&p, cols) in map {
                for (&q, rows) in map {
                    let block = prod.select(rows, cols);
                    let ok = if p == q { block == PolyMatrix::scalar(&self.w, rows.len()) } else { block.is_zero() };
                    if !ok && !bad.contains(&(p, q)) {
                        bad.push((p, q));
                    }
                }
            }
        }
        bad.sort();
        Ok(bad)
    }

    pub fn fold(&self) -> Result<Factorization> {
        self.fold_with_layout(&self.layout())
    }

    /// Folds with summands placed according to `layout`.
    pub fn fold_with_layout(&self, layout: &FoldLayout) -> Result<Factorization> {
        if self.c_m1.ring() != self.ring() || self.c_0.ring() != self.ring() {
            return Err(Error::RingMismatch("complexes and potential live over different rings".into()));
        }
        self.check_blocks()?;
        let e = self.assemble(layout)?;
        let bad = self.identity_violations(&e, layout)?;
        if !bad.is_empty() {
            return Err(Error::FoldIdentity(bad));
        }
        Ok(e)
    }

    /// Folding of A[1]: both complexes shifted, blocks shifted.
    pub fn shift(&self) -> Folding {
        Folding {
            w: self.w.clone(),
            c_m1: self.c_m1.shift(1),
            c_0: self.c_0.shift(1),
            blocks: self.blocks.shift(),
            order: self.order,
        }
    }
}

/// Folds two complexes along `blocks`; errors list the failing (p,q).
pub fn fold(c_m1: &FreeComplex, c_0: &FreeComplex, blocks: &FoldBlocks, w: &Poly) -> Result<Factorization> {
    Folding::new(w.clone(), c_m1.clone(), c_0.clone(), blocks.clone()).fold()
}

/// Folding of the Koszul complex (with negated differential) whose lower
/// blocks are the contraction homotopy. Folding it gives the stabilization.
pub fn koszul_folding(data: &KoszulData) -> Folding {
    let ring = data.w.ring();
    let c_0 = data.complex.neg();
    let c_m1 = FreeComplex::zero(ring).padded(c_0.lo(), c_0.hi());
    let mut blocks = FoldBlocks::superdiagonal(&c_m1, &c_0);
    for (k, h) in data.homotopies.iter().enumerate() {
        let p = -(k as i64);
        if k % 2 == 0 {
            blocks.blocks_m1.insert((p, p - 1), h.clone());
        } else {
            blocks.blocks_0.insert((p, p - 1), h.clone());
        }
    }
    blocks.prune();
    Folding::new(data.w.clone(), c_m1, c_0, blocks).with_order(SummandOrder::Descending)
}

/// Stabilization of R/(sequence) for w = Σ splittingᵢ·xᵢ: E⁰ = ⊕Λ^even,
/// E⁻¹ = ⊕Λ^odd, both structure maps ∂ + h.
pub fn stabilize(ring: &Arc<GradedRing>, sequence: &[&str], w: &Poly, splitting: &[Poly]) -> Result<Factorization> {
    if w.ring() != ring {
        return Err(Error::RingMismatch(format!("w is over {}, expected {ring}", w.ring())));
    }
    let data = crate::fold::koszul_homotopy(w, sequence, splitting)?;
    koszul_folding(&data).fold()
}

/// Stabilization over an arbitrary polynomial sequence.
pub fn stabilize_sequence(w: &Poly, sequence: &[Poly], splitting: &[Poly]) -> Result<Factorization> {
    let data = koszul_data_of(w, sequence, splitting)?;
    koszul_folding(&data).fold()
}

/// Output of [`fold_cone`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedCone {
    pub cone: Factorization,
    pub folding: Folding,
    pub layout: FoldLayout,
}

/// Folds the cone of η: fold(A) → fold(B) over the mapping cones of the
/// diagonal chain maps. Requires η_{p,q} = 0 for q > p. The result has the
/// same matrices as [`cone`]; `layout` records where each cone summand sits.
pub fn fold_cone(eta: &FactMorphism, source: &Folding, target: &Folding) -> Result<FoldedCone> {
    if eta.degree() != 0 {
        return Err(Error::FoldPrecondition("η must have degree 0".into()));
    }
    let la = source.layout();
    let lb = target.layout();
    if &source.fold()? != eta.source() || &target.fold()? != eta.target() {
        return Err(Error::FoldPrecondition("η does not run between the given foldings".into()));
    }
    let ring = source.ring();
    // η blocks: η⁻¹_{p,q}: T_A⁻¹_p → T_B⁻¹_q and η⁰_{p,q}: T_A⁰_p → T_B⁰_q.
    let block = |g: &PolyMatrix, rows: &BTreeMap<i64, Vec<usize>>, cols: &BTreeMap<i64, Vec<usize>>, p: i64, q: i64| {
        match (cols.get(&p), rows.get(&q)) {
            (Some(c), Some(r)) => g.select(r, c),
            _ => PolyMatrix::zero(ring, rows.get(&q).map_or(0, Vec::len), cols.get(&p).map_or(0, Vec::len)),
        }
    };
    for (&p, _) in la.m1.iter() {
        for (&q, _) in lb.m1.iter() {
            if q > p && !block(eta.gm1(), &lb.m1, &la.m1, p, q).is_zero() {
                return Err(Error::FoldPrecondition(format!("η⁻¹ block ({p},{q}) must vanish")));
            }
        }
    }
    for (&p, _) in la.zero.iter() {
        for (&q, _) in lb.zero.iter() {
            if q > p && !block(eta.g0(), &lb.zero, &la.zero, p, q).is_zero() {
                return Err(Error::FoldPrecondition(format!("η⁰ block ({p},{q}) must vanish")));
            }
        }
    }
    // Diagonal chain maps η̃⁻¹: A⁻¹ → B⁻¹ and η̃⁰: A⁰ → B⁰.
    let (lo, hi) = {
        let (a, b) = range(&source.c_m1, &source.c_0);
        let (c, d) = range(&target.c_m1, &target.c_0);
        (a.min(c), b.max(d))
    };
    let mut tilde_m1 = BTreeMap::new();
    let mut tilde_0 = BTreeMap::new();
    for p in lo..=hi {
        if is_even(p) {
            tilde_m1.insert(p, block(eta.gm1(), &lb.m1, &la.m1, p, p));
            tilde_0.insert(p, block(eta.g0(), &lb.zero, &la.zero, p, p));
        } else {
            tilde_m1.insert(p, block(eta.g0(), &lb.zero, &la.zero, p, p));
            tilde_0.insert(p, block(eta.gm1(), &lb.m1, &la.m1, p, p));
        }
    }
    let f_m1 = ChainMap::new(source.c_m1.clone(), target.c_m1.clone(), tilde_m1)?;
    let f_0 = ChainMap::new(source.c_0.clone(), target.c_0.clone(), tilde_0)?;
    f_m1.check().map_err(|e| Error::FoldPrecondition(format!("diagonal of η⁻¹ side: {e}")))?;
    f_0.check().map_err(|e| Error::FoldPrecondition(format!("diagonal of η⁰ side: {e}")))?;
    let cone_m1 = FreeComplex::cone(&f_m1)?;
    let cone_0 = FreeComplex::cone(&f_0.neg())?;

    // Cone(η)⁻¹ = T_A⁰ ⊕ T_B⁻¹ and Cone(η)⁰ = ΦT_A⁻¹ ⊕ T_B⁰; summand p of
    // the folded cone pairs T_A at p+1 with T_B at p.
    let c = cone(eta)?;
    let (a0, a1) = (eta.source().e0().rank(), eta.source().e1().rank());
    let (clo, chi) = range(&cone_m1, &cone_0);
    let place = |a: &BTreeMap<i64, Vec<usize>>, b: &BTreeMap<i64, Vec<usize>>, offset: usize| -> BTreeMap<i64, Vec<usize>> {
        (clo..=chi)
            .map(|p| {
                let mut rows = a.get(&(p + 1)).cloned().unwrap_or_default();
                rows.extend(b.get(&p).into_iter().flatten().map(|r| r + offset));
                (p, rows)
            })
            .collect()
    };
    let layout = FoldLayout { m1: place(&la.zero, &lb.m1, a0), zero: place(&la.m1, &lb.zero, a1) };
    let blocks = FoldBlocks::extract(&c, &layout);
    let folding = Folding::new(c.w().clone(), cone_m1, cone_0, blocks);
    let refolded = folding.fold_with_layout(&layout)?;
    if refolded != c {
        return Err(Error::FoldPrecondition("folded cone differs from the cone of η".into()));
    }
    Ok(FoldedCone { cone: c, folding, layout })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fold::koszul_homotopy;
    use crate::ring::parse_poly;

    #[test]
    fn one_variable_fold() {
        let r = GradedRing::rational(["x"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = stabilize(&r, &["x"], &p("x^2"), &[p("x")]).unwrap();
        assert_eq!(e.phi0(), &PolyMatrix::single(p("x")));
        assert_eq!(e.phim1(), &PolyMatrix::single(p("x")));
        assert!(e.is_valid());
        let e = stabilize(&r, &["x"], &p("x^3"), &[p("x^2")]).unwrap();
        assert_eq!((e.phi0(), e.phim1()), (&PolyMatrix::single(p("x")), &PolyMatrix::single(p("x^2"))));
    }

    #[test]
    fn two_variable_stabilization() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = stabilize(&r, &["x", "y"], &p("x*y"), &[p("y"), p("0")]).unwrap();
        let phi0 = PolyMatrix::from_rows(&r, vec![vec![p("x"), p("y")], vec![p("0"), p("y")]]).unwrap();
        let phim1 = PolyMatrix::from_rows(&r, vec![vec![p("y"), p("-y")], vec![p("0"), p("x")]]).unwrap();
        assert_eq!(e.phi0(), &phi0);
        assert_eq!(e.phim1(), &phim1);
        assert!(e.is_valid(), "{}", e.validate());
    }

    #[test]
    fn four_variables_have_rank_eight() {
        let r = GradedRing::rational(["a", "b", "c", "d"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let w = p("a^2 + b*c + c*d + d^2");
        let split = crate::fold::split_w(&w, &["a", "b", "c", "d"]).unwrap();
        let e = stabilize(&r, &["a", "b", "c", "d"], &w, &split).unwrap();
        assert_eq!((e.e0().rank(), e.e1().rank()), (8, 8));
        assert!(e.is_valid());
    }

    #[test]
    fn degree_zero_data_folds_to_itself() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = stabilize(&r, &["x", "y"], &p("x*y"), &[p("y"), p("0")]).unwrap();
        let c_m1 = FreeComplex::concentrated(&r, 0, e.e1().clone());
        let c_0 = FreeComplex::concentrated(&r, 0, e.e0().clone());
        let mut blocks = FoldBlocks::new();
        blocks.blocks_m1.insert((0, 0), e.phim1().clone());
        blocks.blocks_0.insert((0, 0), e.phi0().clone());
        assert_eq!(fold(&c_m1, &c_0, &blocks, e.w()).unwrap(), e);
    }

    #[test]
    fn broken_blocks_are_reported() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let data = koszul_homotopy(&p("x*y"), &["x", "y"], &[p("y"), p("0")]).unwrap();
        let mut f = koszul_folding(&data);
        f.blocks.blocks_m1.insert((0, -1), PolyMatrix::from_rows(&r, vec![vec![p("x")], vec![p("0")]]).unwrap());
        match f.fold() {
            Err(Error::FoldIdentity(bad)) => assert!(bad.contains(&(0, 0))),
            other => panic!("{other:?}"),
        }
        let mut g = koszul_folding(&data);
        g.blocks.blocks_0.insert((-1, 0), PolyMatrix::zero(&r, 1, 2));
        assert!(matches!(g.fold(), Err(Error::FoldPrecondition(_))));

        let one = FreeModule::new(vec![0]);
        let c_m1 = FreeComplex::concentrated(&r, 0, one.clone());
        let c_0 = FreeComplex::concentrated(&r, 2, one);
        let mut blocks = FoldBlocks::new();
        blocks.blocks_0.insert((0, 2), PolyMatrix::single(p("1")));
        assert!(matches!(fold(&c_m1, &c_0, &blocks, &p("x*y")), Err(Error::FoldPrecondition(_))));
    }

    #[test]
    fn fold_commutes_with_shift() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let data = koszul_homotopy(&p("x^2 + y^3"), &["x", "y"], &[p("x"), p("y^2")]).unwrap();
        let f = koszul_folding(&data);
        let e = f.fold().unwrap();
        assert_eq!(f.shift().fold().unwrap(), e.shift(1));
        assert_eq!(f.shift().shift().fold().unwrap(), e.shift(2));
    }

    #[test]
    fn folded_cones_match_cones() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let data = koszul_homotopy(&p("x*y"), &["x", "y"], &[p("y"), p("0")]).unwrap();
        let f = koszul_folding(&data);
        let e = f.fold().unwrap();
        let id = FactMorphism::identity(&e);
        let out = fold_cone(&id, &f, &f).unwrap();
        assert_eq!(out.cone, cone(&id).unwrap());
        assert!(out.cone.is_valid());

        let zero = FactMorphism::zero(&e, &e, 0).unwrap();
        let out = fold_cone(&zero, &f, &f).unwrap();
        assert_eq!(out.cone, e.shift(1).direct_sum(&e).unwrap());
    }
}
