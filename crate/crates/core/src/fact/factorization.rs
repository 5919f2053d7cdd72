use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{GradedRing, Homogeneity, Poly, PolyMatrix};

/// Free graded module ⊕ᵢ R(twists[i]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeModule {
    twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }

    pub const fn zero() -> Self {
        FreeModule { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Every generator twisted by `k`.
    pub fn shifted(&self, k: i64) -> FreeModule {
        FreeModule { twists: self.twists.iter().map(|t| t + k).collect() }
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        FreeModule { twists: self.twists.iter().chain(&other.twists).copied().collect() }
    }

    pub fn sum_all<'a>(parts: impl IntoIterator<Item = &'a FreeModule>) -> FreeModule {
        FreeModule { twists: parts.into_iter().flat_map(|m| m.twists.iter().copied()).collect() }
    }
}

/// How Φ acts: as the grading twist by `d = deg w`, or as the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Graded { degree: i64 },
    Ungraded,
}

impl Grading {
    pub fn of(w: &Poly) -> Grading {
        match w.homogeneity() {
            Homogeneity::Homogeneous(d) => Grading::Graded { degree: d },
            _ => Grading::Ungraded,
        }
    }

    /// Twist applied by one power of Φ.
    pub fn phi_shift(&self) -> i64 {
        match self {
            Grading::Graded { degree } => *degree,
            Grading::Ungraded => 0,
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, Grading::Graded { .. })
    }
}

/// A matrix factorization (E⁻¹, E⁰, φ⁻¹, φ⁰) of `w` with free components.
///
/// `phi0` maps E⁻¹ → E⁰ and `phim1` maps Φ⁻¹E⁰ → E⁻¹. Φ acts on matrices
/// as the identity, so validity means `phi0·phim1 = w·I` and
/// `phim1·phi0 = w·I`, plus the degree constraints in graded mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    ring: Arc<GradedRing>,
    w: Poly,
    e0: FreeModule,
    e1: FreeModule,
    phi0: PolyMatrix,
    phim1: PolyMatrix,
}

/// One failed identity in a [`ValidityReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Entry (row, col) of the named product differs from `w·I`.
    Product { product: &'static str, row: usize, col: usize, expected: String, found: String },
    /// Entry (row, col) of the named matrix is not homogeneous of the
    /// degree its source and target force.
    Degree { matrix: &'static str, row: usize, col: usize, expected: i64, entry: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Product { product, row, col, expected, found } => {
                write!(f, "{product}[{row},{col}] = {found}, expected {expected}")
            }
            Violation::Degree { matrix, row, col, expected, entry } => {
                write!(f, "{matrix}[{row},{col}] = {entry} is not homogeneous of degree {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Compares `m` against `w·I`, recording mismatching entries.
pub(crate) fn compare_with_scalar(m: &PolyMatrix, w: &Poly, product: &'static str, out: &mut Vec<Violation>) {
    let zero = Poly::zero(w.ring());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let expected = if i == j { w } else { &zero };
            if m.get(i, j) != expected {
                out.push(Violation::Product {
                    product,
                    row: i,
                    col: j,
                    expected: expected.to_string(),
                    found: m.get(i, j).to_string(),
                });
            }
        }
    }
}

/// Checks that entry (i,j) has degree `target[i] - source[j] + offset`.
pub(crate) fn check_degrees(
    m: &PolyMatrix,
    target: &[i64],
    source: &[i64],
    offset: i64,
    matrix: &'static str,
    out: &mut Vec<Violation>,
) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let expected = target[i] - source[j] + offset;
            if !m.get(i, j).is_homogeneous_of(expected) {
                out.push(Violation::Degree { matrix, row: i, col: j, expected, entry: m.get(i, j).to_string() });
            }
        }
    }
}

impl Factorization {
    /// Assembles a factorization, checking only shapes and rings. Use
    /// [`Factorization::validate`] for the factorization identities.
    pub fn new(w: Poly, e0: FreeModule, e1: FreeModule, phi0: PolyMatrix, phim1: PolyMatrix) -> Result<Self> {
        let ring = w.ring().clone();
        for (name, m) in [("phi0", &phi0), ("phim1", &phim1)] {
            if m.ring() != &ring {
                return Err(Error::RingMismatch(format!("{name} lives in {}, w in {ring}", m.ring())));
            }
        }
        if phi0.shape() != (e0.rank(), e1.rank()) {
            return Err(Error::Dimension(format!(
                "phi0 is {:?}, components have ranks (e0={}, e1={})",
                phi0.shape(),
                e0.rank(),
                e1.rank()
            )));
        }
        if phim1.shape() != (e1.rank(), e0.rank()) {
            return Err(Error::Dimension(format!(
                "phim1 is {:?}, components have ranks (e0={}, e1={})",
                phim1.shape(),
                e0.rank(),
                e1.rank()
            )));
        }
        Ok(Factorization { ring, w, e0, e1, phi0, phim1 })
    }

    /// Builds a factorization from its matrices, inferring generator twists
    /// from entry degrees when `w` is homogeneous. Each connected block of
    /// the support graph is normalized so its first E⁰ generator (or E⁻¹
    /// generator, when it has none) sits in degree 0.
    pub fn from_matrices(w: Poly, phi0: PolyMatrix, phim1: PolyMatrix) -> Result<Self> {
        let (r0, r1) = (phi0.rows(), phi0.cols());
        let grading = Grading::of(&w);
        let (e0, e1) = match grading {
            Grading::Ungraded => (vec![0; r0], vec![0; r1]),
            Grading::Graded { degree } => infer_twists(&phi0, &phim1, degree)?,
        };
        Self::new(w, FreeModule::new(e0), FreeModule::new(e1), phi0, phim1)
    }

    /// Rank-one factorization with φ⁰ = `phi0`, φ⁻¹ = `phim1`.
    pub fn rank_one(w: Poly, phi0: Poly, phim1: Poly) -> Result<Self> {
        Self::from_matrices(w, PolyMatrix::single(phi0), PolyMatrix::single(phim1))
    }

    /// The zero factorization.
    pub fn zero(w: &Poly) -> Self {
        let ring = w.ring();
        Factorization {
            ring: ring.clone(),
            w: w.clone(),
            e0: FreeModule::zero(),
            e1: FreeModule::zero(),
            phi0: PolyMatrix::zero(ring, 0, 0),
            phim1: PolyMatrix::zero(ring, 0, 0),
        }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn w(&self) -> &Poly {
        &self.w
    }

    pub fn e0(&self) -> &FreeModule {
        &self.e0
    }

    pub fn e1(&self) -> &FreeModule {
        &self.e1
    }

    pub fn phi0(&self) -> &PolyMatrix {
        &self.phi0
    }

    pub fn phim1(&self) -> &PolyMatrix {
        &self.phim1
    }

    pub fn grading(&self) -> Grading {
        Grading::of(&self.w)
    }

    pub fn is_zero_object(&self) -> bool {
        self.e0.rank() == 0 && self.e1.rank() == 0
    }

    pub fn validate(&self) -> ValidityReport {
        let mut violations = Vec::new();
        let n0 = self.e0.rank();
        let n1 = self.e1.rank();
        let p0 = self.phi0.checked_mul(&self.phim1).expect("shapes checked at construction");
        let p1 = self.phim1.checked_mul(&self.phi0).expect("shapes checked at construction");
        debug_assert_eq!(p0.shape(), (n0, n0));
        debug_assert_eq!(p1.shape(), (n1, n1));
        compare_with_scalar(&p0, &self.w, "phi0*phim1", &mut violations);
        compare_with_scalar(&p1, &self.w, "phim1*phi0", &mut violations);
        if let Grading::Graded { degree } = self.grading() {
            check_degrees(&self.phi0, self.e0.twists(), self.e1.twists(), 0, "phi0", &mut violations);
            check_degrees(&self.phim1, self.e1.twists(), self.e0.twists(), degree, "phim1", &mut violations);
        }
        ValidityReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// E[n]. One step sends (E⁻¹, E⁰, φ⁻¹, φ⁰) to (E⁰, ΦE⁻¹, −φ⁰, −Φφ⁻¹);
    /// negative `n` applies the inverse.
    pub fn shift(&self, n: i64) -> Factorization {
        let d = self.grading().phi_shift();
        let mut out = self.clone();
        if n > 0 {
            for _ in 0..n {
                out = Factorization {
                    ring: out.ring.clone(),
                    w: out.w.clone(),
                    e0: out.e1.shifted(d),
                    e1: out.e0.clone(),
                    phi0: out.phim1.neg(),
                    phim1: out.phi0.neg(),
                };
            }
        } else {
            for _ in 0..(-n) {
                out = Factorization {
                    ring: out.ring.clone(),
                    w: out.w.clone(),
                    e0: out.e1.clone(),
                    e1: out.e0.shifted(-d),
                    phi0: out.phim1.neg(),
                    phim1: out.phi0.neg(),
                };
            }
        }
        out
    }

    /// Φᵐ(E): every twist moves by m·deg w; matrices are unchanged.
    pub fn twist(&self, m: i64) -> Result<Factorization> {
        match self.grading() {
            Grading::Ungraded => Err(Error::Grading(format!("twist needs a homogeneous potential, w = {}", self.w))),
            Grading::Graded { degree } => Ok(self.regrade(m * degree)),
        }
    }

    /// E(k): every generator twist moves by `k`. Unlike [`Factorization::twist`]
    /// the shift need not be a multiple of deg w.
    pub fn regrade(&self, k: i64) -> Factorization {
        Factorization {
            e0: self.e0.shifted(k),
            e1: self.e1.shifted(k),
            ..self.clone()
        }
    }

    pub fn direct_sum(&self, other: &Factorization) -> Result<Factorization> {
        self.check_same_potential(other)?;
        Ok(Factorization {
            ring: self.ring.clone(),
            w: self.w.clone(),
            e0: self.e0.direct_sum(&other.e0),
            e1: self.e1.direct_sum(&other.e1),
            phi0: PolyMatrix::block_diag(&self.ring, &[&self.phi0, &other.phi0]),
            phim1: PolyMatrix::block_diag(&self.ring, &[&self.phim1, &other.phim1]),
        })
    }

    pub(crate) fn check_same_potential(&self, other: &Factorization) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if self.w != other.w {
            return Err(Error::PotentialMismatch(format!("{} vs {}", self.w, other.w)));
        }
        Ok(())
    }

    /// Conjugates by invertible changes of basis: φ⁰ ↦ a·φ⁰·b⁻¹ and
    /// φ⁻¹ ↦ b·φ⁻¹·a⁻¹, for `a` on E⁰ and `b` on E⁻¹.
    pub fn conjugate(
        &self,
        a: &PolyMatrix,
        a_inv: &PolyMatrix,
        b: &PolyMatrix,
        b_inv: &PolyMatrix,
    ) -> Result<Factorization> {
        let phi0 = a.checked_mul(&self.phi0)?.checked_mul(b_inv)?;
        let phim1 = b.checked_mul(&self.phim1)?.checked_mul(a_inv)?;
        Factorization::new(self.w.clone(), self.e0.clone(), self.e1.clone(), phi0, phim1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "factorization of {} over {}", self.w, self.ring)?;
        writeln!(f, "  E0 twists: {:?}", self.e0.twists())?;
        writeln!(f, "  E-1 twists: {:?}", self.e1.twists())?;
        writeln!(f, "  phi0  = {}", self.phi0)?;
        write!(f, "  phim1 = {}", self.phim1)
    }
}

fn infer_twists(phi0: &PolyMatrix, phim1: &PolyMatrix, d: i64) -> Result<(Vec<i64>, Vec<i64>)> {
    let (r0, r1) = (phi0.rows(), phi0.cols());
    // Nodes 0..r0 are E⁰ generators, r0..r0+r1 are E⁻¹ generators.
    // An edge (u, v, δ) demands twist[v] = twist[u] + δ.
    let mut edges: Vec<Vec<(usize, i64)>> = vec![vec![]; r0 + r1];
    let mut add = |u: usize, v: usize, delta: i64| {
        edges[u].push((v, delta));
        edges[v].push((u, -delta));
    };
    for i in 0..r0 {
        for j in 0..r1 {
            // phi0[i][j] : E⁻¹_j → E⁰_i has degree e0[i] − e1[j].
            if let Some(deg) = entry_degree(phi0.get(i, j), "phi0", i, j)? {
                add(r0 + j, i, deg);
            }
            // phim1[j][i] : Φ⁻¹E⁰_i → E⁻¹_j has degree e1[j] − e0[i] + d.
            if let Some(deg) = entry_degree(phim1.get(j, i), "phim1", j, i)? {
                add(i, r0 + j, deg - d);
            }
        }
    }
    let mut twist: Vec<Option<i64>> = vec![None; r0 + r1];
    for start in 0..r0 + r1 {
        if twist[start].is_some() {
            continue;
        }
        twist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let tu = twist[u].unwrap();
            for &(v, delta) in &edges[u] {
                match twist[v] {
                    None => {
                        twist[v] = Some(tu + delta);
                        queue.push_back(v);
                    }
                    Some(tv) if tv != tu + delta => {
                        return Err(Error::Grading("entry degrees admit no consistent twists".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let twist: Vec<i64> = twist.into_iter().map(Option::unwrap).collect();
    Ok((twist[..r0].to_vec(), twist[r0..].to_vec()))
}

fn entry_degree(p: &Poly, name: &str, i: usize, j: usize) -> Result<Option<i64>> {
    match p.homogeneity() {
        Homogeneity::Zero => Ok(None),
        Homogeneity::Homogeneous(d) => Ok(Some(d)),
        Homogeneity::Mixed => Err(Error::Grading(format!("{name}[{i},{j}] = {p} is not homogeneous"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn setup() -> (Arc<GradedRing>, impl Fn(&str) -> Poly) {
        let r = GradedRing::rational(["x", "y"]);
        let rr = r.clone();
        (r, move |s: &str| parse_poly(&rr, s).unwrap())
    }

    #[test]
    fn rank_one_examples() {
        let (_, p) = setup();
        let e = Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap();
        assert!(e.is_valid());
        assert_eq!(e.e0().twists(), &[0]);
        assert_eq!(e.e1().twists(), &[-1]);
        assert!(Factorization::rank_one(p("x^2"), p("x"), p("x")).unwrap().is_valid());
    }

    #[test]
    fn wrong_potential_reports_both_products() {
        let (r, p) = setup();
        let e = Factorization::new(
            p("x + y"),
            FreeModule::new(vec![0]),
            FreeModule::new(vec![-1]),
            PolyMatrix::single(p("x")),
            PolyMatrix::single(p("y")),
        )
        .unwrap();
        let report = e.validate();
        assert!(!report.is_valid());
        let products: Vec<_> = report
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::Product { product, found, expected, .. } => Some((*product, found.clone(), expected.clone())),
                _ => None,
            })
            .collect();
        assert_eq!(
            products,
            vec![
                ("phi0*phim1", "x*y".to_string(), "x + y".to_string()),
                ("phim1*phi0", "x*y".to_string(), "x + y".to_string())
            ]
        );
        let _ = r;
    }

    #[test]
    fn shift_formula() {
        let (_, p) = setup();
        let e = Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap();
        assert_eq!(e.shift(0), e);
        let s = e.shift(1);
        assert_eq!(s.phi0(), &PolyMatrix::single(p("-y")));
        assert_eq!(s.phim1(), &PolyMatrix::single(p("-x")));
        assert!(s.is_valid());
        assert_eq!(s.shift(-1), e);
        assert_eq!(e.shift(2), e.twist(1).unwrap());
        assert_eq!(e.twist(1).unwrap().twist(-1).unwrap(), e);
    }

    #[test]
    fn twist_needs_grading() {
        let (_, p) = setup();
        let e = Factorization::rank_one(p("x + x^2"), p("x"), p("1 + x")).unwrap();
        assert!(e.is_valid());
        assert!(matches!(e.twist(1), Err(Error::Grading(_))));
        assert_eq!(e.shift(2), e);
    }

    #[test]
    fn direct_sums() {
        let (_, p) = setup();
        let e = Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap();
        let f = Factorization::rank_one(p("x*y"), p("y"), p("x")).unwrap();
        let s = e.direct_sum(&f).unwrap();
        assert_eq!((s.e0().rank(), s.e1().rank()), (2, 2));
        assert!(s.is_valid());
        assert_eq!(e.direct_sum(&Factorization::zero(e.w())).unwrap(), e);
        let g = Factorization::rank_one(p("x^2"), p("x"), p("x")).unwrap();
        assert!(matches!(e.direct_sum(&g), Err(Error::PotentialMismatch(_))));
    }

    #[test]
    fn inconsistent_degrees_are_rejected() {
        let (_, p) = setup();
        let phi0 = PolyMatrix::from_rows(p("x").ring(), vec![vec![p("x"), p("x^2")]]).unwrap();
        let phim1 = PolyMatrix::from_rows(p("x").ring(), vec![vec![p("y")], vec![p("y")]]).unwrap();
        assert!(Factorization::from_matrices(p("x*y"), phi0, phim1).is_err());
    }
}
