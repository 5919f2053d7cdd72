use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fact::{cone, cone_inclusion, cone_projection, FactMorphism, Factorization, Homotopy};
use crate::homalg::slice::{default_cap, hom_slice, natural_mode, HomSlice, SliceMode};
use crate::ring::{exact_solve, FieldMatrix, PolyMatrix, Scalar};

/// Whether a dimension is exact or only valid for entries up to a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Complete,
    UpToCap(u32),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Complete => write!(f, "complete"),
            Certificate::UpToCap(c) => write!(f, "approximate (entries of degree <= {c})"),
        }
    }
}

fn certificate(mode: SliceMode) -> Certificate {
    match mode {
        SliceMode::Graded { .. } => Certificate::Complete,
        SliceMode::Capped { cap } => Certificate::UpToCap(cap),
    }
}

/// Cohomology of the Hom complex in one degree.
#[derive(Clone, Debug)]
pub struct HomClasses {
    pub n: i64,
    pub mode: SliceMode,
    pub dim: usize,
    /// Closed pairs (a⁻¹, a⁰) whose classes form a basis.
    pub representatives: Vec<(PolyMatrix, PolyMatrix)>,
    pub certificate: Certificate,
}

impl HomClasses {
    /// Representatives as morphisms E → F; only meaningful for n = 0.
    pub fn morphisms(&self, e: &Factorization, f: &Factorization) -> Result<Vec<FactMorphism>> {
        if self.n != 0 {
            return Err(Error::InvalidMorphism(format!("degree-{} classes are not morphisms", self.n)));
        }
        let t = match self.mode {
            SliceMode::Graded { t } => t,
            SliceMode::Capped { .. } => 0,
        };
        self.representatives
            .iter()
            .map(|(a, b)| FactMorphism::new(e.clone(), f.clone(), t, a.clone(), b.clone()))
            .collect()
    }
}

/// Cocycles, coboundaries and a complement, all in the coordinates of
/// `slice.domain`.
pub(crate) struct Cohomology {
    pub slice: HomSlice,
    pub boundaries: Vec<Vec<Scalar>>,
    pub classes: Vec<Vec<Scalar>>,
}

fn rank_of(field: &crate::ring::FieldSpec, rows: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() || rows == 0 {
        return 0;
    }
    FieldMatrix::from_columns(field, rows, vectors).rank()
}

/// Picks a basis of the span of `vectors`.
fn independent(field: &crate::ring::FieldSpec, rows: usize, vectors: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() || rows == 0 {
        return vec![];
    }
    let m = FieldMatrix::from_columns(field, rows, &vectors);
    m.column_basis().into_iter().map(|j| vectors[j].clone()).collect()
}

pub(crate) fn cohomology(e: &Factorization, f: &Factorization, n: i64, mode: SliceMode) -> Result<Cohomology> {
    let cur = hom_slice(e, f, n, mode)?;
    let prev = hom_slice(e, f, n - 1, mode)?;
    let field = e.ring().field().clone();
    let dim = cur.dim();
    let cycles = if cur.codomain.dim() == 0 {
        (0..dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = field.one();
                v
            })
            .collect()
    } else {
        cur.differential.nullspace()
    };

    // Boundaries that land inside the current slice.
    let low = prev.codomain_low_part();
    let d = &prev.differential;
    let sources: Vec<Vec<Scalar>> = if low.len() == prev.codomain.dim() {
        (0..d.cols()).map(|j| d.column(j)).collect()
    } else {
        let high: Vec<usize> = (0..prev.codomain.dim()).filter(|i| !low.contains(i)).collect();
        let dh = d.select_rows(&high);
        let null = if dh.rows() == 0 {
            (0..d.cols())
                .map(|i| {
                    let mut v = vec![Scalar::zero(); d.cols()];
                    v[i] = field.one();
                    v
                })
                .collect()
        } else {
            dh.nullspace()
        };
        null.iter().map(|y| d.mul_vec(y)).collect()
    };
    let mut boundaries = Vec::new();
    for v in sources {
        let (a, b) = prev.codomain.to_matrices(&v);
        boundaries.push(cur.domain.to_vector(&a, &b)?);
    }
    let boundaries = independent(&field, dim, boundaries);

    let mut basis = boundaries.clone();
    let mut classes = Vec::new();
    let mut rank = basis.len();
    for z in cycles {
        basis.push(z.clone());
        let r = rank_of(&field, dim, &basis);
        if r > rank {
            rank = r;
            classes.push(z);
        } else {
            basis.pop();
        }
    }
    Ok(Cohomology { slice: cur, boundaries, classes })
}

/// Hom in the homotopy category: H^n of the dg Hom complex, in one slice.
pub fn hom_classes(e: &Factorization, f: &Factorization, n: i64, mode: SliceMode) -> Result<HomClasses> {
    let c = cohomology(e, f, n, mode)?;
    let representatives = c.classes.iter().map(|v| c.slice.domain.to_matrices(v)).collect();
    Ok(HomClasses { n, mode, dim: c.classes.len(), representatives, certificate: certificate(mode) })
}

/// Dimension only.
pub fn hom_dim(e: &Factorization, f: &Factorization, n: i64, mode: SliceMode) -> Result<usize> {
    Ok(cohomology(e, f, n, mode)?.classes.len())
}

/// Outcome of a homotopy search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyVerdict {
    Witness(Homotopy),
    /// No homotopy exists (exact, graded mode).
    Absent,
    /// None with entries of degree ≤ cap; larger ones were not searched.
    UnknownAboveCap(u32),
}

impl HomotopyVerdict {
    pub fn witness(&self) -> Option<&Homotopy> {
        match self {
            HomotopyVerdict::Witness(h) => Some(h),
            _ => None,
        }
    }
}

/// Solves for h with g₁ − g₂ = hd + dh. Graded potentials are solved
/// exactly in the internal degree of the maps; otherwise entries are capped
/// at `cap` (default from [`default_cap`]).
pub fn solve_homotopy(g1: &FactMorphism, g2: &FactMorphism, cap: Option<u32>) -> Result<HomotopyVerdict> {
    if g1.source() != g2.source() || g1.target() != g2.target() || g1.degree() != g2.degree() {
        return Err(Error::EndpointMismatch("morphisms have different endpoints".into()));
    }
    let (e, f) = (g1.source(), g1.target());
    let diff = g1.checked_sub(g2)?;
    let mode = if e.grading().is_graded() {
        SliceMode::Graded { t: g1.degree() }
    } else {
        let base = cap.unwrap_or_else(|| default_cap(e, f));
        SliceMode::Capped { cap: base.max(diff.gm1().max_entry_degree()).max(diff.g0().max_entry_degree()) }
    };
    let slice = hom_slice(e, f, -1, mode)?;
    let rhs = slice.codomain.to_vector(diff.gm1(), diff.g0())?;
    let field = e.ring().field();
    let solution = if slice.dim() == 0 {
        rhs.iter().all(Zero::is_zero).then(Vec::new)
    } else {
        exact_solve(&slice.differential, &rhs)?.particular
    };
    match solution {
        Some(x) => {
            let neg: Vec<Scalar> = x.iter().map(|v| field.neg(v)).collect();
            let (hm1, h0) = slice.domain.to_matrices(&neg);
            let h = Homotopy { h0, hm1 };
            debug_assert!(h.witnesses(g1, g2));
            Ok(HomotopyVerdict::Witness(h))
        }
        None => Ok(match mode {
            SliceMode::Graded { .. } => HomotopyVerdict::Absent,
            SliceMode::Capped { cap } => HomotopyVerdict::UnknownAboveCap(cap),
        }),
    }
}

/// Decides whether id_E is null-homotopic.
pub fn is_contractible(e: &Factorization) -> Result<HomotopyVerdict> {
    let id = FactMorphism::identity(e);
    let zero = FactMorphism::zero(e, e, 0)?;
    solve_homotopy(&id, &zero, None)
}

/// Dimensions of Hom(P, C[n]) over a window of (n, t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub cells: Vec<(i64, SliceMode, usize)>,
}

impl OrthogonalityReport {
    pub fn violations(&self) -> Vec<(i64, SliceMode, usize)> {
        self.cells.iter().filter(|c| c.2 != 0).cloned().collect()
    }

    pub fn all_zero(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.cells.iter().all(|c| c.1.is_exact())
    }
}

pub fn orthogonality_check(p: &Factorization, c: &Factorization, ns: &[i64], ts: &[i64]) -> Result<OrthogonalityReport> {
    let mut cells = Vec::new();
    let modes: Vec<SliceMode> = if p.grading().is_graded() {
        ts.iter().map(|&t| SliceMode::Graded { t }).collect()
    } else {
        vec![natural_mode(p, c, 0)]
    };
    for &n in ns {
        for &mode in &modes {
            cells.push((n, mode, hom_dim(p, c, n, mode)?));
        }
    }
    Ok(OrthogonalityReport { cells })
}

/// Compares dim Hom^{n+2}_t with dim Hom^n_{t+d}.
pub fn periodicity_holds(e: &Factorization, f: &Factorization, n: i64, t: i64) -> Result<bool> {
    let d = e.grading().phi_shift();
    Ok(hom_dim(e, f, n + 2, SliceMode::Graded { t })? == hom_dim(e, f, n, SliceMode::Graded { t: t + d })?)
}

/// Bookkeeping for Hom(E[1], X) → Hom(C(g), X) → Hom(F, X) in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeProbe {
    pub n: i64,
    pub mode: SliceMode,
    pub dim_cone: usize,
    pub rank_projection: usize,
    pub rank_inclusion: usize,
}

impl ConeProbe {
    /// Exactness at Hom(C(g), X): dim = rank π* + rank i*.
    pub fn holds(&self) -> bool {
        self.dim_cone == self.rank_projection + self.rank_inclusion
    }
}

/// Rank of the map induced on cohomology by precomposition with `m`.
fn induced_rank(from: &Cohomology, to: &Cohomology, m: &FactMorphism) -> Result<usize> {
    let field = m.source().ring().field().clone();
    let dim = to.slice.dim();
    let mut images = to.boundaries.clone();
    let base = images.len();
    for v in &from.classes {
        let (a, b) = from.slice.domain.to_matrices(v);
        let a = a.checked_mul(m.gm1())?;
        let b = b.checked_mul(m.g0())?;
        images.push(to.slice.domain.to_vector(&a, &b)?);
    }
    Ok(rank_of(&field, dim, &images) - base)
}

pub fn cone_exactness_probe(g: &FactMorphism, x: &Factorization, n: i64, mode: SliceMode) -> Result<ConeProbe> {
    let c = cone(g)?;
    let pi = cone_projection(g)?;
    let inc = cone_inclusion(g)?;
    let on_shift = cohomology(&g.source().shift(1), x, n, mode)?;
    let on_cone = cohomology(&c, x, n, mode)?;
    let on_target = cohomology(g.target(), x, n, mode)?;
    Ok(ConeProbe {
        n,
        mode,
        dim_cone: on_cone.classes.len(),
        rank_projection: induced_rank(&on_shift, &on_cone, &pi)?,
        rank_inclusion: induced_rank(&on_cone, &on_target, &inc)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fact::contractible_envelope;
    use crate::ring::{parse_poly, GradedRing};

    fn xy() -> Factorization {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap()
    }

    #[test]
    fn identity_class_for_cubic() {
        let r = GradedRing::rational(["x"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = Factorization::rank_one(p("x^3"), p("x"), p("x^2")).unwrap();
        assert_eq!(e.e1().twists(), &[-1]);
        let h = hom_classes(&e, &e, 0, SliceMode::Graded { t: 0 }).unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.certificate, Certificate::Complete);
        let g = &h.morphisms(&e, &e).unwrap()[0];
        assert!(g.is_valid());
    }

    #[test]
    fn envelope_has_no_maps() {
        let e = xy();
        let (g, _) = contractible_envelope(&e).unwrap();
        for n in 0..=1 {
            for t in -3..=3 {
                assert_eq!(hom_dim(&e, &g, n, SliceMode::Graded { t }).unwrap(), 0);
                assert_eq!(hom_dim(&g, &e, n, SliceMode::Graded { t }).unwrap(), 0);
            }
        }
        assert!(is_contractible(&g).unwrap().witness().is_some());
    }

    #[test]
    fn rank_one_factorization_is_not_contractible() {
        let e = xy();
        assert_eq!(is_contractible(&e).unwrap(), HomotopyVerdict::Absent);
        let c = cone(&FactMorphism::identity(&e)).unwrap();
        let v = is_contractible(&c).unwrap();
        let h = v.witness().expect("cone of the identity is contractible");
        assert!(h.witnesses(&FactMorphism::identity(&c), &FactMorphism::zero(&c, &c, 0).unwrap()));
    }

    #[test]
    fn equal_maps_have_zero_homotopy() {
        let e = xy();
        let id = FactMorphism::identity(&e);
        let v = solve_homotopy(&id, &id, None).unwrap();
        let h = v.witness().unwrap();
        assert!(h.h0.is_zero() && h.hm1.is_zero());
    }

    #[test]
    fn ungraded_answers_are_never_certified_absent() {
        let r = GradedRing::rational(["x"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = Factorization::rank_one(p("x^2 + x^3"), p("x"), p("x + x^2")).unwrap();
        assert!(matches!(is_contractible(&e).unwrap(), HomotopyVerdict::UnknownAboveCap(_)));
        let h = hom_classes(&e, &e, 0, natural_mode(&e, &e, 0)).unwrap();
        assert!(matches!(h.certificate, Certificate::UpToCap(_)));
    }

    #[test]
    fn periodicity_and_shift() {
        let e = xy();
        let f = e.shift(1).direct_sum(&e).unwrap();
        for n in -1..=1 {
            for t in -2..=2 {
                assert!(periodicity_holds(&e, &f, n, t).unwrap());
                assert_eq!(
                    hom_dim(&e, &f, n + 1, SliceMode::Graded { t }).unwrap(),
                    hom_dim(&e, &f.shift(1), n, SliceMode::Graded { t }).unwrap()
                );
            }
        }
    }

    #[test]
    fn cone_probe_on_identity_and_zero() {
        let e = xy();
        let f = Factorization::rank_one(e.w().clone(), e.phim1().get(0, 0).clone(), e.phi0().get(0, 0).clone()).unwrap();
        for g in [FactMorphism::identity(&e), FactMorphism::zero(&e, &f, 0).unwrap()] {
            for n in 0..=1 {
                for t in -2..=2 {
                    let probe = cone_exactness_probe(&g, &e, n, SliceMode::Graded { t }).unwrap();
                    assert!(probe.holds(), "{probe:?}");
                }
            }
        }
    }

    #[test]
    fn contractible_summand_is_invisible() {
        let e = xy();
        let (g, _) = contractible_envelope(&e.shift(1)).unwrap();
        let sum = e.direct_sum(&g).unwrap();
        for n in 0..=1 {
            for t in -2..=2 {
                let mode = SliceMode::Graded { t };
                assert_eq!(hom_dim(&sum, &e, n, mode).unwrap(), hom_dim(&e, &e, n, mode).unwrap());
                assert_eq!(hom_dim(&e, &sum, n, mode).unwrap(), hom_dim(&e, &e, n, mode).unwrap());
            }
        }
    }

    #[test]
    fn stabilization_is_orthogonal_to_a_contractible_cone() {
        let r = GradedRing::rational(["x"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let stab = crate::fold::stabilize(&r, &["x"], &p("x^2"), &[p("x")]).unwrap();
        let c = cone(&FactMorphism::identity(&stab)).unwrap();
        let report = orthogonality_check(&stab, &c, &[0, 1], &[-3, -2, -1, 0, 1, 2, 3]).unwrap();
        assert!(report.all_zero() && report.is_exact(), "{:?}", report.violations());
        let report = orthogonality_check(&stab, &stab, &[0], &[0]).unwrap();
        assert_eq!(report.violations().len(), 1);
    }

    #[test]
    fn conjugation_preserves_hom() {
        let e = xy();
        let ee = e.direct_sum(&e).unwrap();
        let r = e.ring().clone();
        let q = |s: &str| parse_poly(&r, s).unwrap();
        let a = PolyMatrix::from_rows(&r, vec![vec![q("1"), q("0")], vec![q("3"), q("1")]]).unwrap();
        let a_inv = PolyMatrix::from_rows(&r, vec![vec![q("1"), q("0")], vec![q("-3"), q("1")]]).unwrap();
        let b = PolyMatrix::from_rows(&r, vec![vec![q("1"), q("2")], vec![q("0"), q("1")]]).unwrap();
        let b_inv = PolyMatrix::from_rows(&r, vec![vec![q("1"), q("-2")], vec![q("0"), q("1")]]).unwrap();
        let conj = ee.conjugate(&a, &a_inv, &b, &b_inv).unwrap();
        assert!(conj.is_valid());
        assert_ne!(conj, ee);
        for n in 0..=1 {
            for t in -2..=2 {
                let mode = SliceMode::Graded { t };
                assert_eq!(hom_dim(&conj, &e, n, mode).unwrap(), hom_dim(&ee, &e, n, mode).unwrap());
                assert_eq!(hom_dim(&conj, &conj, n, mode).unwrap(), hom_dim(&ee, &ee, n, mode).unwrap());
            }
        }
    }
}
