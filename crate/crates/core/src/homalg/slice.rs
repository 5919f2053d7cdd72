use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fact::{Factorization, Grading};
use crate::ring::{graded_piece_basis, FieldMatrix, GradedRing, Monomial, Poly, PolyMatrix, Scalar};

/// How a Hom slice is cut out: a fixed internal degree (complete), or all
/// entries of total degree ≤ `cap` (approximate).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceMode {
    Graded { t: i64 },
    Capped { cap: u32 },
}

impl SliceMode {
    pub fn is_exact(&self) -> bool {
        matches!(self, SliceMode::Graded { .. })
    }
}

impl fmt::Display for SliceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceMode::Graded { t } => write!(f, "internal degree {t}"),
            SliceMode::Capped { cap } => write!(f, "entries of degree <= {cap}"),
        }
    }
}

/// Default cap for ungraded slices: total degree of w plus the largest
/// entry degree plus 2.
pub fn default_cap(e: &Factorization, f: &Factorization) -> u32 {
    let wdeg = e.w().total_degree().unwrap_or(0);
    let entries = [e.phi0(), e.phim1(), f.phi0(), f.phim1()].iter().map(|m| m.max_entry_degree()).max().unwrap_or(0);
    wdeg + entries + 2
}

/// Picks the exact mode in graded situations and the default cap otherwise.
pub fn natural_mode(e: &Factorization, f: &Factorization, t: i64) -> SliceMode {
    match e.grading() {
        Grading::Graded { .. } => SliceMode::Graded { t },
        Grading::Ungraded => SliceMode::Capped { cap: default_cap(e, f) },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Coord {
    comp: u8,
    row: usize,
    col: usize,
    mono: Monomial,
}

/// Basis of a space of matrix pairs (a⁻¹, a⁰): one vector per
/// (component, entry, monomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordSpace {
    ring: Arc<GradedRing>,
    shapes: [(usize, usize); 2],
    basis: Vec<Coord>,
    index: HashMap<Coord, usize>,
}

impl CoordSpace {
    fn from_basis(ring: &Arc<GradedRing>, shapes: [(usize, usize); 2], basis: Vec<Coord>) -> Self {
        let index = basis.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        CoordSpace { ring: ring.clone(), shapes, basis, index }
    }

    /// Degree-0 maps ⊕R(src) → ⊕R(tgt + t) for both components.
    pub(crate) fn graded_pair(ring: &Arc<GradedRing>, tgt: [&[i64]; 2], src: [&[i64]; 2], t: i64) -> Self {
        let mut basis = Vec::new();
        for comp in 0..2 {
            let shifted: Vec<i64> = tgt[comp].iter().map(|a| a + t).collect();
            for (col, &s) in src[comp].iter().enumerate() {
                for (row, mono) in graded_piece_basis(ring, &shifted, -s) {
                    basis.push(Coord { comp: comp as u8, row, col, mono });
                }
            }
        }
        let shapes = [(tgt[0].len(), src[0].len()), (tgt[1].len(), src[1].len())];
        Self::from_basis(ring, shapes, basis)
    }

    fn capped(ring: &Arc<GradedRing>, shapes: [(usize, usize); 2], cap: u32) -> Self {
        let monos = ring.monomials_up_to(cap);
        let mut basis = Vec::new();
        for (comp, &(rows, cols)) in shapes.iter().enumerate() {
            for col in 0..cols {
                for row in 0..rows {
                    for mono in &monos {
                        basis.push(Coord { comp: comp as u8, row, col, mono: mono.clone() });
                    }
                }
            }
        }
        Self::from_basis(ring, shapes, basis)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Shapes of (a⁻¹, a⁰).
    pub fn shapes(&self) -> [(usize, usize); 2] {
        self.shapes
    }

    pub fn to_matrices(&self, v: &[Scalar]) -> (PolyMatrix, PolyMatrix) {
        let mut out = [
            PolyMatrix::zero(&self.ring, self.shapes[0].0, self.shapes[0].1),
            PolyMatrix::zero(&self.ring, self.shapes[1].0, self.shapes[1].1),
        ];
        for (c, x) in self.basis.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            let m = &mut out[c.comp as usize];
            let term = Poly::monomial(&self.ring, x.clone(), c.mono.clone());
            let entry = m.get(c.row, c.col) + &term;
            m.set(c.row, c.col, entry);
        }
        let [a, b] = out;
        (a, b)
    }

    /// Coordinates of a pair, or an error when a term lies outside the space.
    pub fn to_vector(&self, am1: &PolyMatrix, a0: &PolyMatrix) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (comp, m) in [am1, a0].into_iter().enumerate() {
            if m.shape() != self.shapes[comp] {
                return Err(Error::Dimension(format!("component {comp} is {:?}, expected {:?}", m.shape(), self.shapes[comp])));
            }
            for row in 0..m.rows() {
                for col in 0..m.cols() {
                    for (mono, c) in m.get(row, col).terms() {
                        let key = Coord { comp: comp as u8, row, col, mono: mono.clone() };
                        let i = *self.index.get(&key).ok_or_else(|| {
                            Error::Grading(format!(
                                "term {} of entry [{row},{col}] lies outside the slice",
                                mono.format(self.ring.vars())
                            ))
                        })?;
                        v[i] = c.clone();
                    }
                }
            }
        }
        Ok(v)
    }

    fn coordinate(&self, comp: u8, row: usize, col: usize, mono: &Monomial) -> Option<usize> {
        self.index.get(&Coord { comp, row, col, mono: mono.clone() }).copied()
    }

    /// Indices of basis vectors whose monomial has total degree ≤ cap.
    fn low_part(&self, cap: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].mono.total_degree() <= cap).collect()
    }
}

/// The degree-n piece of the dg Hom complex from E to F, with its
/// differential into degree n+1. Elements are pairs of maps
/// E⁻¹ → (F[n])⁻¹ and E⁰ → (F[n])⁰.
#[derive(Clone, Debug)]
pub struct HomSlice {
    pub source: Factorization,
    pub target: Factorization,
    pub n: i64,
    pub mode: SliceMode,
    pub domain: CoordSpace,
    pub codomain: CoordSpace,
    /// Matrix of d: domain → codomain.
    pub differential: FieldMatrix,
}

pub(crate) fn check_pair(e: &Factorization, f: &Factorization, mode: SliceMode) -> Result<()> {
    e.check_same_potential(f)?;
    for (name, x) in [("source", e), ("target", f)] {
        let report = x.validate();
        if !report.is_valid() {
            return Err(Error::InvalidFactorization(format!("{name}: {}", report.to_string().trim())));
        }
    }
    if mode.is_exact() && !e.grading().is_graded() {
        return Err(Error::Grading(format!("an internal degree needs a homogeneous potential, w = {}", e.w())));
    }
    Ok(())
}

fn space(e: &Factorization, fn_: &Factorization, mode: SliceMode, cap_extra: u32) -> CoordSpace {
    let ring = e.ring();
    match mode {
        SliceMode::Graded { t } => {
            CoordSpace::graded_pair(ring, [fn_.e1().twists(), fn_.e0().twists()], [e.e1().twists(), e.e0().twists()], t)
        }
        SliceMode::Capped { cap } => CoordSpace::capped(
            ring,
            [(fn_.e1().rank(), e.e1().rank()), (fn_.e0().rank(), e.e0().rank())],
            cap + cap_extra,
        ),
    }
}

/// The coordinate space of Hom^n(E, F) in the given mode.
pub fn hom_space(e: &Factorization, f: &Factorization, n: i64, mode: SliceMode) -> CoordSpace {
    space(e, &f.shift(n), mode, 0)
}

/// d(a) = (φ⁰_{F[n]} a⁻¹ − a⁰ φ⁰_E, φ⁻¹_{F[n]} a⁰ − a⁻¹ φ⁻¹_E).
pub fn dg_differential(e: &Factorization, fn_: &Factorization, am1: &PolyMatrix, a0: &PolyMatrix) -> Result<(PolyMatrix, PolyMatrix)> {
    let b1 = fn_.phi0().checked_mul(am1)?.checked_sub(&a0.checked_mul(e.phi0())?)?;
    let b0 = fn_.phim1().checked_mul(a0)?.checked_sub(&am1.checked_mul(e.phim1())?)?;
    Ok((b1, b0))
}

pub fn hom_slice(e: &Factorization, f: &Factorization, n: i64, mode: SliceMode) -> Result<HomSlice> {
    check_pair(e, f, mode)?;
    let fn_ = f.shift(n);
    let fn1 = f.shift(n + 1);
    let extra = match mode {
        SliceMode::Graded { .. } => 0,
        SliceMode::Capped { .. } => [e.phi0(), e.phim1(), f.phi0(), f.phim1()].iter().map(|m| m.max_entry_degree()).max().unwrap_or(0),
    };
    let domain = space(e, &fn_, mode, 0);
    let codomain = space(e, &fn1, mode, extra);
    let field = e.ring().field().clone();
    let mut d = FieldMatrix::zero(&field, codomain.dim(), domain.dim());
    let ring = e.ring();
    // Each basis vector is a single monomial m in one entry (i, j); its
    // image only touches one row or column of each component.
    let mut put = |col: usize, comp: u8, row: usize, c: usize, p: &Poly, sign: bool| -> Result<()> {
        for (mono, coeff) in p.terms() {
            let r = codomain.coordinate(comp, row, c, mono).ok_or_else(|| {
                Error::Grading("differential leaves the slice; are the twists consistent?".into())
            })?;
            let v = if sign { field.neg(coeff) } else { coeff.clone() };
            let cur = d.get(r, col).clone();
            d.set(r, col, field.add(&cur, &v));
        }
        Ok(())
    };
    for (col, c) in domain.basis.iter().enumerate() {
        let m = Poly::monomial(ring, field.one(), c.mono.clone());
        let (i, j) = (c.row, c.col);
        if c.comp == 0 {
            // a⁻¹ = m·E_ij: d⁻¹[r, j] = φ⁰_{F[n]}[r, i]·m, d⁰[i, k] = −m·φ⁻¹_E[j, k]
            for r in 0..fn_.phi0().rows() {
                put(col, 0, r, j, &(fn_.phi0().get(r, i) * &m), false)?;
            }
            for k in 0..e.phim1().cols() {
                put(col, 1, i, k, &(&m * e.phim1().get(j, k)), true)?;
            }
        } else {
            // a⁰ = m·E_ij: d⁻¹[i, k] = −m·φ⁰_E[j, k], d⁰[r, j] = φ⁻¹_{F[n]}[r, i]·m
            for k in 0..e.phi0().cols() {
                put(col, 0, i, k, &(&m * e.phi0().get(j, k)), true)?;
            }
            for r in 0..fn_.phim1().rows() {
                put(col, 1, r, j, &(fn_.phim1().get(r, i) * &m), false)?;
            }
        }
    }
    Ok(HomSlice { source: e.clone(), target: f.clone(), n, mode, domain, codomain, differential: d })
}

impl HomSlice {
    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Applies the differential to a pair directly, without coordinates.
    pub fn apply(&self, am1: &PolyMatrix, a0: &PolyMatrix) -> Result<(PolyMatrix, PolyMatrix)> {
        dg_differential(&self.source, &self.target.shift(self.n), am1, a0)
    }

    /// Indices of codomain coordinates lying in the next slice's domain
    /// (all of them in graded mode).
    pub(crate) fn codomain_low_part(&self) -> Vec<usize> {
        match self.mode {
            SliceMode::Graded { .. } => (0..self.codomain.dim()).collect(),
            SliceMode::Capped { cap } => self.codomain.low_part(cap),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn xx() -> Factorization {
        let r = GradedRing::rational(["x"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        Factorization::rank_one(p("x^2"), p("x"), p("x")).unwrap()
    }

    #[test]
    fn scalar_pairs_in_degree_zero() {
        let e = xx();
        let s = hom_slice(&e, &e, 0, SliceMode::Graded { t: 0 }).unwrap();
        assert_eq!(s.dim(), 2);
        let kernel = s.differential.nullspace();
        assert_eq!(kernel.len(), 1);
        let (a, b) = s.domain.to_matrices(&kernel[0]);
        assert_eq!(a, b);
    }

    #[test]
    fn consecutive_differentials_compose_to_zero() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap();
        let f = e.direct_sum(&e.shift(1)).unwrap();
        for mode in [SliceMode::Graded { t: 1 }, SliceMode::Graded { t: -2 }] {
            for n in -1..=2 {
                let a = hom_slice(&e, &f, n, mode).unwrap();
                let b = hom_slice(&e, &f, n + 1, mode).unwrap();
                assert_eq!(a.codomain, b.domain);
                assert!(b.differential.mul(&a.differential).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn coordinates_agree_with_direct_application() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap();
        let s = hom_slice(&e, &e, 1, SliceMode::Graded { t: 1 }).unwrap();
        for j in 0..s.dim() {
            let mut v = vec![Scalar::zero(); s.dim()];
            v[j] = Scalar::from_integer(3.into());
            let (a, b) = s.domain.to_matrices(&v);
            let (da, db) = s.apply(&a, &b).unwrap();
            assert_eq!(s.codomain.to_vector(&da, &db).unwrap(), s.differential.mul_vec(&v));
        }
    }

    #[test]
    fn zero_target_gives_empty_slice() {
        let e = xx();
        let z = Factorization::zero(e.w());
        assert_eq!(hom_slice(&e, &z, 0, SliceMode::Graded { t: 0 }).unwrap().dim(), 0);
    }
}
