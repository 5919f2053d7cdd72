use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fact::{Factorization, FreeModule, Grading};
use crate::fold::{koszul_complex, FreeComplex};
use crate::homalg::classes::hom_dim;
use crate::homalg::slice::{CoordSpace, SliceMode};
use crate::ring::{FieldMatrix, GradedRing, PolyMatrix, Scalar};

/// dim Extᵏ(M, N(t)) for k = 0..=L, where M is resolved by `resolution`
/// (P₀ in degree 0, Pₖ in degree −k) and N = ⊕R(target twists).
pub fn ext_dims(resolution: &FreeComplex, target: &FreeModule, t: i64) -> Result<Vec<usize>> {
    if resolution.hi() > 0 {
        return Err(Error::Dimension("resolutions live in degrees ≤ 0".into()));
    }
    let ring = resolution.ring();
    let len = (-resolution.lo()).max(0) as usize;
    let space = |k: usize| -> CoordSpace {
        CoordSpace::for_maps(ring, target.twists(), resolution.module(-(k as i64)).twists(), t)
    };
    let spaces: Vec<CoordSpace> = (0..=len + 1).map(space).collect();
    // δᵏ: Hom(P_k, N) → Hom(P_{k+1}, N), f ↦ f∘d.
    let mut deltas = Vec::new();
    for k in 0..=len {
        let d = resolution.diff(-(k as i64));
        let (from, to) = (&spaces[k], &spaces[k + 1]);
        let mut m = FieldMatrix::zero(ring.field(), to.dim(), from.dim());
        for j in 0..from.dim() {
            let mut v = vec![Scalar::from_integer(0.into()); from.dim()];
            v[j] = ring.field().one();
            let (f, _) = from.to_matrices(&v);
            let img = f.checked_mul(&d)?;
            let w = to.to_vector(&img, &PolyMatrix::zero(ring, 0, 0))?;
            for (i, x) in w.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        deltas.push(m);
    }
    let rank = |m: &FieldMatrix| if m.rows() == 0 || m.cols() == 0 { 0 } else { m.rank() };
    let ranks: Vec<usize> = deltas.iter().map(rank).collect();
    Ok((0..=len)
        .map(|k| {
            let kernel = spaces[k].dim() - ranks[k];
            let image = if k == 0 { 0 } else { ranks[k - 1] };
            kernel - image
        })
        .collect())
}

impl CoordSpace {
    /// Degree-0 maps ⊕R(src) → ⊕R(tgt + t), as the first component of a
    /// pair whose second component is empty.
    pub(crate) fn for_maps(ring: &Arc<GradedRing>, tgt: &[i64], src: &[i64], t: i64) -> CoordSpace {
        CoordSpace::graded_pair(ring, [tgt, &[]], [src, &[]], t)
    }
}

/// Ext of R/(sequence) into ⊕R(twists), by cohomological degree.
pub fn ext_koszul(ring: &Arc<GradedRing>, sequence: &[&str], twists: &FreeModule, t: i64) -> Result<Vec<usize>> {
    ext_dims(&koszul_complex(ring, sequence)?, twists, t)
}

/// Free resolutions of the two components E⁻¹ and E⁰.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentResolutions {
    pub m1: FreeComplex,
    pub zero: FreeComplex,
}

impl ComponentResolutions {
    fn length(&self) -> i64 {
        (-self.m1.lo()).max(-self.zero.lo()).max(0)
    }
}

/// Which odd-row twist the E₁ page uses. `Printed` applies Φ^{−s−1} to the
/// Ext(E⁰, F⁻¹) term; `Corrected` applies Φ^{−s} to both odd-row terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum E1Variant {
    Printed,
    #[default]
    Corrected,
}

/// Dimensions E₁^{p,q} in one internal degree, for q in a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Table {
    pub t: i64,
    pub variant: E1Variant,
    pub q_window: (i64, i64),
    pub entries: BTreeMap<(i64, i64), usize>,
}

impl E1Table {
    /// Σ_p E₁^{p,r}, the bound for dim Hom(E, F[r]).
    pub fn total(&self, r: i64) -> usize {
        self.entries.iter().filter(|((_, q), _)| *q == r).map(|(_, v)| v).sum()
    }
}

impl fmt::Display for E1Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "E1 page, internal degree {}, {:?} twists", self.t, self.variant)?;
        for ((p, q), v) in &self.entries {
            writeln!(f, "  E1[{p},{q}] = {v}")?;
        }
        Ok(())
    }
}

/// E₁^{p,q} for p = 2s is Ext^{p+q−1}(E⁻¹, Φ^{−s}F⁰) ⊕ Ext^{p+q}(E⁰, Φ^{−s}F⁰);
/// for p = 2s+1 the same with F⁻¹ in place of F⁰ (and Φ^{−s−1} on the
/// second summand under [`E1Variant::Printed`]).
pub fn e1_page(
    res: &ComponentResolutions,
    f: &Factorization,
    t: i64,
    q_window: (i64, i64),
    variant: E1Variant,
) -> Result<E1Table> {
    let d = match f.grading() {
        Grading::Graded { degree } => degree,
        Grading::Ungraded => return Err(Error::Grading("the E1 page needs a homogeneous potential".into())),
    };
    if res.m1.ring() != f.ring() || res.zero.ring() != f.ring() {
        return Err(Error::RingMismatch("resolutions and factorization over different rings".into()));
    }
    let len = res.length();
    let mut cache: HashMap<(bool, bool, i64), Vec<usize>> = HashMap::new();
    // ext(component of E is E⁰?, target is F⁰?, extra twist) at index k
    let mut ext = |zero_side: bool, to_f0: bool, shift: i64, k: i64| -> Result<usize> {
        if k < 0 {
            return Ok(0);
        }
        let key = (zero_side, to_f0, shift);
        if !cache.contains_key(&key) {
            let module = if to_f0 { f.e0() } else { f.e1() }.shifted(shift);
            let resolution = if zero_side { &res.zero } else { &res.m1 };
            cache.insert(key, ext_dims(resolution, &module, t)?);
        }
        Ok(cache[&key].get(k as usize).copied().unwrap_or(0))
    };
    let mut entries = BTreeMap::new();
    for q in q_window.0..=q_window.1 {
        for p in -q..=-q + len + 1 {
            let s = p.div_euclid(2);
            let even = p.rem_euclid(2) == 0;
            let first = ext(false, even, -s * d, p + q - 1)?;
            let second_shift = if !even && variant == E1Variant::Printed { -(s + 1) * d } else { -s * d };
            let second = ext(true, even, second_shift, p + q)?;
            if first + second > 0 {
                entries.insert((p, q), first + second);
            }
        }
    }
    Ok(E1Table { t, variant, q_window, entries })
}

/// One row of a degeneration comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationRow {
    pub r: i64,
    pub e1_total: usize,
    pub direct: usize,
}

impl DegenerationRow {
    pub fn bound_holds(&self) -> bool {
        self.e1_total >= self.direct
    }

    pub fn degenerate(&self) -> bool {
        self.e1_total == self.direct
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    pub rows: Vec<DegenerationRow>,
}

impl DegenerationReport {
    pub fn bound_holds(&self) -> bool {
        self.rows.iter().all(DegenerationRow::bound_holds)
    }

    pub fn degenerates(&self) -> bool {
        self.rows.iter().all(DegenerationRow::degenerate)
    }

    /// Total degrees where the E₁ bound fails.
    pub fn discrepancies(&self) -> Vec<i64> {
        self.rows.iter().filter(|r| !r.bound_holds()).map(|r| r.r).collect()
    }
}

impl fmt::Display for DegenerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let verdict = if row.degenerate() {
                "equal"
            } else if row.bound_holds() {
                "bound"
            } else {
                "VIOLATED"
            };
            writeln!(f, "  r = {:>3}: E1 total {:>3}, direct {:>3}  {verdict}", row.r, row.e1_total, row.direct)?;
        }
        Ok(())
    }
}

/// dim Hom(E, F[r]) in internal degree t for r in `window`.
pub fn direct_hom_dims(e: &Factorization, f: &Factorization, t: i64, window: (i64, i64)) -> Result<BTreeMap<i64, usize>> {
    (window.0..=window.1).map(|r| Ok((r, hom_dim(e, f, r, SliceMode::Graded { t })?))).collect()
}

/// Compares E₁ totals with direct Hom dimensions for every r in the window.
pub fn ss_degeneration_check(table: &E1Table, direct: &BTreeMap<i64, usize>) -> Result<DegenerationReport> {
    let window: Vec<i64> = (table.q_window.0..=table.q_window.1).collect();
    if direct.keys().copied().collect::<Vec<_>>() != window {
        return Err(Error::Dimension("direct Hom dimensions cover a different window".into()));
    }
    let rows = window.iter().map(|&r| DegenerationRow { r, e1_total: table.total(r), direct: direct[&r] }).collect();
    Ok(DegenerationReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fold::stabilize;
    use crate::homalg::slice::hom_space;
    use crate::ring::{parse_poly, Poly};

    #[test]
    fn ext_of_a_point_on_the_line() {
        let r = GradedRing::rational(["x"]);
        let free = FreeModule::new(vec![0]);
        for t in -4..=4 {
            let dims = ext_koszul(&r, &["x"], &free, t).unwrap();
            assert_eq!(dims[0], 0);
            assert_eq!(dims[1], usize::from(t == -1), "t = {t}");
        }
    }

    #[test]
    fn ext_of_the_origin_in_the_plane() {
        let r = GradedRing::rational(["x", "y"]);
        let free = FreeModule::new(vec![0]);
        let mut seen = 0;
        for t in -5..=5 {
            let dims = ext_koszul(&r, &["x", "y"], &free, t).unwrap();
            assert_eq!((dims[0], dims[1]), (0, 0));
            seen += dims[2];
            assert_eq!(dims[2], usize::from(t == -2));
        }
        assert_eq!(seen, 1);
    }

    fn line_case() -> (ComponentResolutions, Factorization) {
        let r = GradedRing::rational(["x"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let f = stabilize(&r, &["x"], &p("x^2"), &[p("x")]).unwrap();
        let res = ComponentResolutions { m1: FreeComplex::zero(&r), zero: koszul_complex(&r, &["x"]).unwrap() };
        (res, f)
    }

    #[test]
    fn corrected_page_degenerates_for_one_variable() {
        let (res, f) = line_case();
        for t in -3..=3 {
            let table = e1_page(&res, &f, t, (-5, 5), E1Variant::Corrected).unwrap();
            let direct = direct_hom_dims(&f, &f, t, (-5, 5)).unwrap();
            let report = ss_degeneration_check(&table, &direct).unwrap();
            assert!(report.degenerates(), "t = {t}\n{report}");
        }
    }

    #[test]
    fn printed_page_fails_the_bound() {
        let (res, f) = line_case();
        let table = e1_page(&res, &f, 0, (-5, 5), E1Variant::Printed).unwrap();
        let direct = direct_hom_dims(&f, &f, 0, (-5, 5)).unwrap();
        let report = ss_degeneration_check(&table, &direct).unwrap();
        assert_eq!(report.discrepancies(), vec![0]);
    }

    #[test]
    fn free_components_give_cochain_dimensions() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap();
        let f = e.direct_sum(&e.shift(1)).unwrap();
        let res = ComponentResolutions {
            m1: FreeComplex::concentrated(&r, 0, e.e1().clone()),
            zero: FreeComplex::concentrated(&r, 0, e.e0().clone()),
        };
        for t in -2..=2 {
            let table = e1_page(&res, &f, t, (-3, 3), E1Variant::Corrected).unwrap();
            for q in -3..=3 {
                assert_eq!(table.total(q), hom_space(&e, &f, q, SliceMode::Graded { t }).dim(), "t = {t}, q = {q}");
            }
        }
    }

    #[test]
    fn zero_target_gives_empty_table() {
        let (res, f) = line_case();
        let z = Factorization::zero(f.w());
        assert!(e1_page(&res, &z, 0, (-3, 3), E1Variant::Corrected).unwrap().entries.is_empty());
        let _ = Poly::zero(f.ring());
    }
}
