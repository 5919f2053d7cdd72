use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fact::FreeModule;
use crate::fold::FreeComplex;
use crate::ring::{GradedRing, Homogeneity, Poly, PolyMatrix};

/// Subsets of {0..n} as bitmasks, ordered by size and then lexicographically.
pub fn subset_basis(n: usize) -> Vec<Vec<u32>> {
    (0..=n).map(|k| combinations(n, k)).collect()
}

fn combinations(n: usize, k: usize) -> Vec<u32> {
    fn go(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            go(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    go(0, n, k, 0, &mut out);
    out
}

/// Number of elements of `s` below `i`.
fn position(s: u32, i: usize) -> u32 {
    (s & ((1u32 << i) - 1)).count_ones()
}

fn sign(pos: u32) -> i64 {
    if pos % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Koszul complex together with a contraction homotopy for w = Σ wᵢfᵢ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulData {
    pub sequence: Vec<Poly>,
    pub splitting: Vec<Poly>,
    pub w: Poly,
    /// Λᵏ sits in degree −k; d_{1−k}: Λᵏ → Λᵏ⁻¹ is contraction by the sequence.
    pub complex: FreeComplex,
    /// homotopies[k]: Λᵏ → Λᵏ⁺¹, wedge with Σ wᵢeᵢ.
    pub homotopies: Vec<PolyMatrix>,
}

impl KoszulData {
    pub fn rank(&self) -> usize {
        self.sequence.len()
    }

    /// ∂: Λᵏ → Λᵏ⁻¹.
    pub fn boundary(&self, k: usize) -> PolyMatrix {
        self.complex.diff(1 - k as i64)
    }

    /// Checks d² = 0, ∂h + h∂ = w and h² = 0 in every degree.
    pub fn verify(&self) -> Result<()> {
        let n = self.rank();
        let ring = self.w.ring();
        self.complex.validate(false)?;
        for k in 0..=n {
            // (∂h + h∂) on Λᵏ
            let bin = self.complex.rank(-(k as i64));
            let mut acc = PolyMatrix::zero(ring, bin, bin);
            if k < n {
                acc = acc.checked_add(&self.boundary(k + 1).checked_mul(&self.homotopies[k])?)?;
            }
            if k > 0 {
                acc = acc.checked_add(&self.homotopies[k - 1].checked_mul(&self.boundary(k))?)?;
            }
            if acc != PolyMatrix::scalar(&self.w, bin) {
                return Err(Error::InvalidSequence(format!("∂h + h∂ ≠ w on Λ^{k}")));
            }
            if k + 1 < n && !self.homotopies[k + 1].checked_mul(&self.homotopies[k])?.is_zero() {
                return Err(Error::InvalidSequence(format!("h² ≠ 0 on Λ^{k}")));
            }
        }
        Ok(())
    }
}

fn check_variables(ring: &Arc<GradedRing>, sequence: &[&str]) -> Result<Vec<Poly>> {
    let mut seen = BTreeSet::new();
    sequence
        .iter()
        .map(|name| {
            let i = ring
                .var_index(name)
                .ok_or_else(|| Error::InvalidSequence(format!("`{name}` is not a variable of {ring}")))?;
            if !seen.insert(i) {
                return Err(Error::InvalidSequence(format!("`{name}` repeats")));
            }
            Ok(Poly::var(ring, i))
        })
        .collect()
}

/// Koszul complex on distinct ring variables.
pub fn koszul_complex(ring: &Arc<GradedRing>, sequence: &[&str]) -> Result<FreeComplex> {
    let seq = check_variables(ring, sequence)?;
    koszul_complex_of(ring, &seq)
}

/// Koszul complex on an arbitrary sequence of polynomials. The generator
/// e_S has twist −Σ_{i∈S} deg fᵢ (zero for inhomogeneous entries).
pub fn koszul_complex_of(ring: &Arc<GradedRing>, seq: &[Poly]) -> Result<FreeComplex> {
    let n = seq.len();
    if n > 16 {
        return Err(Error::InvalidSequence("sequence too long".into()));
    }
    let degs: Vec<i64> = seq.iter().map(|f| f.homogeneous_degree().unwrap_or(0)).collect();
    let basis = subset_basis(n);
    let index: Vec<HashMap<u32, usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect()).collect();
    let twist = |s: u32| -> i64 { -(0..n).filter(|&i| s & (1 << i) != 0).map(|i| degs[i]).sum::<i64>() };
    // Degree −k holds Λᵏ, so modules run from Λⁿ up to Λ⁰.
    let modules: Vec<FreeModule> =
        (0..=n).rev().map(|k| FreeModule::new(basis[k].iter().map(|&s| twist(s)).collect())).collect();
    let mut diffs = Vec::new();
    for k in (1..=n).rev() {
        let mut d = PolyMatrix::zero(ring, basis[k - 1].len(), basis[k].len());
        for (col, &s) in basis[k].iter().enumerate() {
            for i in 0..n {
                if s & (1 << i) != 0 {
                    let row = index[k - 1][&(s & !(1 << i))];
                    let entry = seq[i].scale(&ring.field().from_i64(sign(position(s, i))));
                    d.set(row, col, &d.get(row, col).clone() + &entry);
                }
            }
        }
        diffs.push(d);
    }
    FreeComplex::new(ring, -(n as i64), modules, diffs)
}

/// Greedy division of `w` by a sequence of variables: each term goes to
/// the first variable dividing it.
pub fn split_w(w: &Poly, sequence: &[&str]) -> Result<Vec<Poly>> {
    let ring = w.ring();
    let seq = check_variables(ring, sequence)?;
    let idx: Vec<usize> = sequence.iter().map(|s| ring.var_index(s).unwrap()).collect();
    let mut parts = vec![Poly::zero(ring); seq.len()];
    for (m, c) in w.terms() {
        let k = idx
            .iter()
            .position(|&i| m.0[i] > 0)
            .ok_or_else(|| Error::NotInIdeal(w.to_string()))?;
        let mut q = m.clone();
        q.0[idx[k]] -= 1;
        parts[k] = &parts[k] + &Poly::monomial(ring, c.clone(), q);
    }
    Ok(parts)
}

/// Koszul complex on variables with the contraction homotopy of `splitting`.
pub fn koszul_homotopy(w: &Poly, sequence: &[&str], splitting: &[Poly]) -> Result<KoszulData> {
    let seq = check_variables(w.ring(), sequence)?;
    koszul_data_of(w, &seq, splitting)
}

/// As [`koszul_homotopy`] for an arbitrary polynomial sequence.
pub fn koszul_data_of(w: &Poly, seq: &[Poly], splitting: &[Poly]) -> Result<KoszulData> {
    let ring = w.ring();
    let n = seq.len();
    if splitting.len() != n {
        return Err(Error::InvalidSequence(format!("{} splitting terms for {n} sequence elements", splitting.len())));
    }
    if let Some(p) = seq.iter().chain(splitting).find(|p| p.ring() != ring) {
        return Err(Error::RingMismatch(format!("{p} is not over {ring}")));
    }
    let total = seq.iter().zip(splitting).fold(Poly::zero(ring), |acc, (f, g)| &acc + &(f * g));
    if &total != w {
        return Err(Error::NotInIdeal(format!("Σ wᵢfᵢ = {total} differs from w = {w}")));
    }
    if let Homogeneity::Homogeneous(d) = w.homogeneity() {
        for (i, (f, g)) in seq.iter().zip(splitting).enumerate() {
            let ok = match (f.homogeneity(), g.homogeneity()) {
                (_, Homogeneity::Zero) => true,
                (Homogeneity::Homogeneous(a), Homogeneity::Homogeneous(b)) => a + b == d,
                _ => false,
            };
            if !ok {
                return Err(Error::Grading(format!("splitting term {i} ({g}) is not of degree deg w − deg f_{i}")));
            }
        }
    }
    let complex = koszul_complex_of(ring, seq)?;
    let basis = subset_basis(n);
    let index: Vec<HashMap<u32, usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect()).collect();
    let mut homotopies = Vec::new();
    for k in 0..n {
        let mut h = PolyMatrix::zero(ring, basis[k + 1].len(), basis[k].len());
        for (col, &s) in basis[k].iter().enumerate() {
            for i in 0..n {
                if s & (1 << i) == 0 {
                    // eᵢ ∧ e_S = (−1)^{#(j ∈ S, j < i)} e_{S∪i}
                    let row = index[k + 1][&(s | (1 << i))];
                    let entry = splitting[i].scale(&ring.field().from_i64(sign(position(s, i))));
                    h.set(row, col, &h.get(row, col).clone() + &entry);
                }
            }
        }
        homotopies.push(h);
    }
    Ok(KoszulData { sequence: seq.to_vec(), splitting: splitting.to_vec(), w: w.clone(), complex, homotopies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;
    use proptest::prelude::*;

    #[test]
    fn ranks_are_binomial() {
        let r = GradedRing::rational(["x", "y", "z"]);
        let k = koszul_complex(&r, &["x", "y", "z"]).unwrap();
        let ranks: Vec<usize> = (-3..=0).map(|i| k.rank(i)).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1]);
        k.validate(true).unwrap();
        let k1 = koszul_complex(&r, &["x"]).unwrap();
        assert_eq!(k1.diff(0), PolyMatrix::single(Poly::named(&r, "x")));
        assert!(koszul_complex(&r, &["x", "x"]).is_err());
        assert!(koszul_complex(&r, &["w"]).is_err());
    }

    #[test]
    fn splitting_examples() {
        let r = GradedRing::rational(["x", "y", "z"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        assert_eq!(split_w(&p("x*y"), &["x", "y"]).unwrap(), vec![p("y"), p("0")]);
        assert_eq!(split_w(&p("x^2 + y^2"), &["x", "y"]).unwrap(), vec![p("x"), p("y")]);
        assert!(matches!(split_w(&p("z"), &["x", "y"]), Err(Error::NotInIdeal(_))));
    }

    #[test]
    fn homotopy_on_two_variables() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let data = koszul_homotopy(&p("x*y"), &["x", "y"], &[p("y"), p("0")]).unwrap();
        data.verify().unwrap();
        // h(1) = y·e₁
        assert_eq!(data.homotopies[0], PolyMatrix::from_rows(&r, vec![vec![p("y")], vec![p("0")]]).unwrap());
        // h(e₁) = 0, h(e₂) = y·e₁∧e₂
        assert_eq!(data.homotopies[1], PolyMatrix::from_rows(&r, vec![vec![p("0"), p("y")]]).unwrap());
        assert!(koszul_homotopy(&p("x*y"), &["x", "y"], &[p("x"), p("0")]).is_err());
    }

    #[test]
    fn one_variable() {
        let r = GradedRing::rational(["x"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let data = koszul_homotopy(&p("x^2"), &["x"], &[p("x")]).unwrap();
        data.verify().unwrap();
        assert_eq!(data.homotopies[0], PolyMatrix::single(p("x")));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn cartan_identity_for_random_splittings(
            n in 1usize..=4,
            coeffs in proptest::collection::vec(-2i64..=2, 4 * 10),
        ) {
            let names = ["a", "b", "c", "d"];
            let r = GradedRing::rational(names[..n].iter().copied());
            let mons = r.monomials_up_to(2);
            let splitting: Vec<Poly> = (0..n)
                .map(|i| {
                    mons.iter()
                        .take(10)
                        .enumerate()
                        .fold(Poly::zero(&r), |acc, (j, m)| {
                            &acc + &Poly::monomial(&r, r.field().from_i64(coeffs[i * 10 + j]), m.clone())
                        })
                })
                .collect();
            let w = (0..n).fold(Poly::zero(&r), |acc, i| &acc + &(&Poly::var(&r, i) * &splitting[i]));
            // w is usually inhomogeneous here, which skips the degree check.
            let seq: Vec<Poly> = (0..n).map(|i| Poly::var(&r, i)).collect();
            match koszul_data_of(&w, &seq, &splitting) {
                Ok(data) => prop_assert!(data.verify().is_ok()),
                Err(Error::Grading(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
