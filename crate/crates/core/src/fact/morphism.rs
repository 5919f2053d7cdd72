use std::fmt;

use crate::error::{Error, Result};
use crate::fact::factorization::{check_degrees, Factorization, FreeModule, ValidityReport, Violation};
use crate::ring::{Poly, PolyMatrix};

/// A morphism E → F(t) of internal degree `t`, given by g⁻¹: E⁻¹ → F⁻¹(t)
/// and g⁰: E⁰ → F⁰(t) commuting with both structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactMorphism {
    source: Factorization,
    target: Factorization,
    degree: i64,
    gm1: PolyMatrix,
    g0: PolyMatrix,
}

/// Homotopy data between morphisms E → F: h⁰: E⁰ → F⁻¹ and
/// h⁻¹: E⁻¹ → Φ⁻¹F⁰. The equations are spelled out in [`Homotopy::defect`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub h0: PolyMatrix,
    pub hm1: PolyMatrix,
}

fn squares(
    source: &Factorization,
    target: &Factorization,
    gm1: &PolyMatrix,
    g0: &PolyMatrix,
) -> Result<(PolyMatrix, PolyMatrix)> {
    // φ⁰_F g⁻¹ − g⁰ φ⁰_E on E⁻¹ and φ⁻¹_F g⁰ − g⁻¹ φ⁻¹_E on E⁰.
    let a = target.phi0().checked_mul(gm1)?.checked_sub(&g0.checked_mul(source.phi0())?)?;
    let b = target.phim1().checked_mul(g0)?.checked_sub(&gm1.checked_mul(source.phim1())?)?;
    Ok((a, b))
}

fn nonzero_entries(m: &PolyMatrix, name: &'static str, out: &mut Vec<Violation>) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                out.push(Violation::Product {
                    product: name,
                    row: i,
                    col: j,
                    expected: "0".into(),
                    found: m.get(i, j).to_string(),
                });
            }
        }
    }
}

impl FactMorphism {
    /// Assembles a morphism, checking shapes, rings and potentials. Use
    /// [`FactMorphism::validate`] for the commuting squares.
    pub fn new(
        source: Factorization,
        target: Factorization,
        degree: i64,
        gm1: PolyMatrix,
        g0: PolyMatrix,
    ) -> Result<Self> {
        source.check_same_potential(&target)?;
        if gm1.shape() != (target.e1().rank(), source.e1().rank()) {
            return Err(Error::Dimension(format!("g^-1 is {:?}", gm1.shape())));
        }
        if g0.shape() != (target.e0().rank(), source.e0().rank()) {
            return Err(Error::Dimension(format!("g^0 is {:?}", g0.shape())));
        }
        if gm1.ring() != source.ring() || g0.ring() != source.ring() {
            return Err(Error::RingMismatch("morphism matrices over a different ring".into()));
        }
        let degree = if source.grading().is_graded() { degree } else { 0 };
        Ok(FactMorphism { source, target, degree, gm1, g0 })
    }

    /// Like [`FactMorphism::new`], also rejecting morphisms whose squares
    /// fail to commute or whose entries have the wrong degree.
    pub fn checked(
        source: Factorization,
        target: Factorization,
        degree: i64,
        gm1: PolyMatrix,
        g0: PolyMatrix,
    ) -> Result<Self> {
        let g = Self::new(source, target, degree, gm1, g0)?;
        let report = g.validate();
        if !report.is_valid() {
            return Err(Error::InvalidMorphism(report.to_string().trim().to_string()));
        }
        Ok(g)
    }

    pub fn identity(e: &Factorization) -> Self {
        let ring = e.ring();
        FactMorphism {
            source: e.clone(),
            target: e.clone(),
            degree: 0,
            gm1: PolyMatrix::identity(ring, e.e1().rank()),
            g0: PolyMatrix::identity(ring, e.e0().rank()),
        }
    }

    pub fn zero(source: &Factorization, target: &Factorization, degree: i64) -> Result<Self> {
        let ring = source.ring();
        Self::new(
            source.clone(),
            target.clone(),
            degree,
            PolyMatrix::zero(ring, target.e1().rank(), source.e1().rank()),
            PolyMatrix::zero(ring, target.e0().rank(), source.e0().rank()),
        )
    }

    pub fn source(&self) -> &Factorization {
        &self.source
    }

    pub fn target(&self) -> &Factorization {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn gm1(&self) -> &PolyMatrix {
        &self.gm1
    }

    pub fn g0(&self) -> &PolyMatrix {
        &self.g0
    }

    pub fn is_zero(&self) -> bool {
        self.gm1.is_zero() && self.g0.is_zero()
    }

    pub fn validate(&self) -> ValidityReport {
        let mut violations = Vec::new();
        let (a, b) = squares(&self.source, &self.target, &self.gm1, &self.g0).expect("shapes checked");
        nonzero_entries(&a, "phi0_F*g^-1 - g^0*phi0_E", &mut violations);
        nonzero_entries(&b, "phim1_F*g^0 - g^-1*phim1_E", &mut violations);
        if self.source.grading().is_graded() {
            let t = self.degree;
            check_degrees(&self.gm1, self.target.e1().twists(), self.source.e1().twists(), t, "g^-1", &mut violations);
            check_degrees(&self.g0, self.target.e0().twists(), self.source.e0().twists(), t, "g^0", &mut violations);
        }
        ValidityReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FactMorphism) -> Result<FactMorphism> {
        if first.target != self.source {
            return Err(Error::EndpointMismatch("target of the first map is not the source of the second".into()));
        }
        Ok(FactMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            degree: first.degree + self.degree,
            gm1: self.gm1.checked_mul(&first.gm1)?,
            g0: self.g0.checked_mul(&first.g0)?,
        })
    }

    pub fn checked_add(&self, other: &FactMorphism) -> Result<FactMorphism> {
        self.same_endpoints(other)?;
        Ok(FactMorphism { gm1: self.gm1.checked_add(&other.gm1)?, g0: self.g0.checked_add(&other.g0)?, ..self.clone() })
    }

    pub fn checked_sub(&self, other: &FactMorphism) -> Result<FactMorphism> {
        self.same_endpoints(other)?;
        Ok(FactMorphism { gm1: self.gm1.checked_sub(&other.gm1)?, g0: self.g0.checked_sub(&other.g0)?, ..self.clone() })
    }

    pub fn neg(&self) -> FactMorphism {
        FactMorphism { gm1: self.gm1.neg(), g0: self.g0.neg(), ..self.clone() }
    }

    fn same_endpoints(&self, other: &FactMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::EndpointMismatch("morphisms have different endpoints".into()));
        }
        Ok(())
    }

    /// g[n] : E[n] → F[n]. Components swap at each step; no signs appear.
    pub fn shift(&self, n: i64) -> FactMorphism {
        let (gm1, g0) = if n.rem_euclid(2) == 1 {
            (self.g0.clone(), self.gm1.clone())
        } else {
            (self.gm1.clone(), self.g0.clone())
        };
        FactMorphism { source: self.source.shift(n), target: self.target.shift(n), degree: self.degree, gm1, g0 }
    }

    pub fn direct_sum(&self, other: &FactMorphism) -> Result<FactMorphism> {
        if self.degree != other.degree {
            return Err(Error::EndpointMismatch("summands have different internal degrees".into()));
        }
        let ring = self.source.ring();
        Ok(FactMorphism {
            source: self.source.direct_sum(&other.source)?,
            target: self.target.direct_sum(&other.target)?,
            degree: self.degree,
            gm1: PolyMatrix::block_diag(ring, &[&self.gm1, &other.gm1]),
            g0: PolyMatrix::block_diag(ring, &[&self.g0, &other.g0]),
        })
    }

    /// Reinterprets a degree-`t` map E → F as a degree-0 map E → F(t).
    pub fn absorb_degree(&self) -> FactMorphism {
        FactMorphism { target: self.target.regrade(self.degree), degree: 0, ..self.clone() }
    }
}

impl fmt::Display for FactMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "morphism of degree {}", self.degree)?;
        writeln!(f, "  g^-1 = {}", self.gm1)?;
        write!(f, "  g^0  = {}", self.g0)
    }
}

impl Homotopy {
    pub fn zero(source: &Factorization, target: &Factorization) -> Homotopy {
        let ring = source.ring();
        Homotopy {
            h0: PolyMatrix::zero(ring, target.e1().rank(), source.e0().rank()),
            hm1: PolyMatrix::zero(ring, target.e0().rank(), source.e1().rank()),
        }
    }

    /// The two components of `g1 − g2 − (h d + d h)`:
    /// on E⁻¹, h⁰φ⁰_E + φ⁻¹_F h⁻¹; on E⁰, φ⁰_F h⁰ + h⁻¹φ⁻¹_E.
    pub fn defect(&self, g1: &FactMorphism, g2: &FactMorphism) -> Result<(PolyMatrix, PolyMatrix)> {
        g1.same_endpoints(g2)?;
        let e = &g1.source;
        let f = &g1.target;
        let diff = g1.checked_sub(g2)?;
        let on_e1 = self.h0.checked_mul(e.phi0())?.checked_add(&f.phim1().checked_mul(&self.hm1)?)?;
        let on_e0 = f.phi0().checked_mul(&self.h0)?.checked_add(&self.hm1.checked_mul(e.phim1())?)?;
        Ok((diff.gm1.checked_sub(&on_e1)?, diff.g0.checked_sub(&on_e0)?))
    }

    /// True when `self` is a homotopy from `g1` to `g2`.
    pub fn witnesses(&self, g1: &FactMorphism, g2: &FactMorphism) -> bool {
        match self.defect(g1, g2) {
            Ok((a, b)) => a.is_zero() && b.is_zero(),
            Err(_) => false,
        }
    }
}

/// Cone of a degree-0 morphism g: E → F, with C⁻¹ = E⁰ ⊕ F⁻¹ and
/// C⁰ = ΦE⁻¹ ⊕ F⁰ (E-blocks first).
pub fn cone(g: &FactMorphism) -> Result<Factorization> {
    if g.degree != 0 {
        return Err(Error::InvalidMorphism(format!(
            "cone needs a degree-0 map, got degree {}; use absorb_degree first",
            g.degree
        )));
    }
    let report = g.validate();
    if !report.is_valid() {
        return Err(Error::InvalidMorphism(report.to_string().trim().to_string()));
    }
    let e = &g.source;
    let f = &g.target;
    let ring = e.ring();
    let d = e.grading().phi_shift();
    let z = |r: usize, c: usize| PolyMatrix::zero(ring, r, c);
    let (e0, e1, f0, f1) = (e.e0().rank(), e.e1().rank(), f.e0().rank(), f.e1().rank());
    // φ⁰_C : E⁰ ⊕ F⁻¹ → ΦE⁻¹ ⊕ F⁰
    let phi0 = PolyMatrix::block(ring, &[vec![e.phim1().neg(), z(e1, f1)], vec![g.g0.clone(), f.phi0().clone()]])?;
    // φ⁻¹_C : ΦE⁻¹ ⊕ F⁰ → E⁰ ⊕ F⁻¹
    let phim1 =
        PolyMatrix::block(ring, &[vec![e.phi0().neg(), z(e0, f0)], vec![g.gm1.clone(), f.phim1().clone()]])?;
    Factorization::new(
        e.w().clone(),
        e.e1().shifted(d).direct_sum(f.e0()),
        e.e0().direct_sum(f.e1()),
        phi0,
        phim1,
    )
}

/// F → Cone(g), the inclusion of the F-summands.
pub fn cone_inclusion(g: &FactMorphism) -> Result<FactMorphism> {
    let c = cone(g)?;
    let f = &g.target;
    let ring = f.ring();
    let inc = |top: usize, n: usize| {
        PolyMatrix::block(ring, &[vec![PolyMatrix::zero(ring, top, n)], vec![PolyMatrix::identity(ring, n)]])
    };
    let gm1 = inc(g.source.e0().rank(), f.e1().rank())?;
    let g0 = inc(g.source.e1().rank(), f.e0().rank())?;
    FactMorphism::new(f.clone(), c, 0, gm1, g0)
}

/// Cone(g) → E[1], the projection onto the E-summands.
pub fn cone_projection(g: &FactMorphism) -> Result<FactMorphism> {
    let c = cone(g)?;
    let e = &g.source;
    let ring = e.ring();
    let proj = |n: usize, rest: usize| {
        PolyMatrix::block(ring, &[vec![PolyMatrix::identity(ring, n), PolyMatrix::zero(ring, n, rest)]])
    };
    let gm1 = proj(e.e0().rank(), g.target.e1().rank())?;
    let g0 = proj(e.e1().rank(), g.target.e0().rank())?;
    FactMorphism::new(c, e.shift(1), 0, gm1, g0)
}

/// Null-homotopy of i∘g, where i: F → Cone(g) is [`cone_inclusion`]:
/// both components are the inclusion of the E-summand.
pub fn cone_composite_homotopy(g: &FactMorphism) -> Homotopy {
    let e = &g.source;
    let ring = e.ring();
    let mut h0 = PolyMatrix::zero(ring, e.e0().rank() + g.target.e1().rank(), e.e0().rank());
    h0.put_block(0, 0, &PolyMatrix::identity(ring, e.e0().rank()));
    let mut hm1 = PolyMatrix::zero(ring, e.e1().rank() + g.target.e0().rank(), e.e1().rank());
    hm1.put_block(0, 0, &PolyMatrix::identity(ring, e.e1().rank()));
    Homotopy { h0, hm1 }
}

/// Contractible factorization G⁻(E) with G⁻¹ = E⁻¹ ⊕ E⁰, G⁰ = E⁰ ⊕ ΦE⁻¹
/// and structure maps [[0, 1], [w, 0]], together with the monomorphism
/// E → G⁻(E) given by [1; φ⁰_E] and [1; φ⁻¹_E].
pub fn contractible_envelope(e: &Factorization) -> Result<(Factorization, FactMorphism)> {
    let ring = e.ring();
    let w = e.w();
    let d = e.grading().phi_shift();
    let (n0, n1) = (e.e0().rank(), e.e1().rank());
    let z = |r: usize, c: usize| PolyMatrix::zero(ring, r, c);
    let id = |n: usize| PolyMatrix::identity(ring, n);
    let wi = |n: usize| PolyMatrix::scalar(w, n);
    // φ⁰_G : E⁻¹ ⊕ E⁰ → E⁰ ⊕ ΦE⁻¹
    let phi0 = PolyMatrix::block(ring, &[vec![z(n0, n1), id(n0)], vec![wi(n1), z(n1, n0)]])?;
    // φ⁻¹_G : E⁰ ⊕ ΦE⁻¹ → E⁻¹ ⊕ E⁰
    let phim1 = PolyMatrix::block(ring, &[vec![z(n1, n0), id(n1)], vec![wi(n0), z(n0, n1)]])?;
    let g = Factorization::new(
        w.clone(),
        FreeModule::sum_all([e.e0(), &e.e1().shifted(d)]),
        FreeModule::sum_all([e.e1(), e.e0()]),
        phi0,
        phim1,
    )?;
    let mm1 = PolyMatrix::block(ring, &[vec![id(n1)], vec![e.phi0().clone()]])?;
    let m0 = PolyMatrix::block(ring, &[vec![id(n0)], vec![e.phim1().clone()]])?;
    let m = FactMorphism::new(e.clone(), g.clone(), 0, mm1, m0)?;
    Ok((g, m))
}

/// Explicit contracting homotopy of G⁻(E): id_G is homotopic to 0.
pub fn envelope_contraction(g: &Factorization, rank_e0: usize, rank_e1: usize) -> Homotopy {
    let ring = g.ring();
    // h⁰ : G⁰ = E⁰ ⊕ ΦE⁻¹ → G⁻¹ = E⁻¹ ⊕ E⁰ sends E⁰ identically to E⁰.
    let mut h0 = PolyMatrix::zero(ring, rank_e1 + rank_e0, rank_e0 + rank_e1);
    for i in 0..rank_e0 {
        h0.set(rank_e1 + i, i, Poly::one(ring));
    }
    // h⁻¹ : G⁻¹ → Φ⁻¹G⁰ sends E⁻¹ identically to E⁻¹.
    let mut hm1 = PolyMatrix::zero(ring, rank_e0 + rank_e1, rank_e1 + rank_e0);
    for j in 0..rank_e1 {
        hm1.set(rank_e0 + j, j, Poly::one(ring));
    }
    Homotopy { h0, hm1 }
}
