//! Brute-force Hom dimensions for rank-one factorizations of x^d.
//!
//! Deliberately shares no code with the Hom machinery: it works with dense
//! univariate coefficient vectors, takes closed morphisms modulo homotopies
//! straight from their definitions, and has its own elimination routine.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// (x^a, x^(d−a)) with generators in degrees e0 = 0, e1 = −a; signs are
/// tracked so that shifts can be applied.
#[derive(Clone, Copy, Debug)]
struct RankOne {
    e0: i64,
    e1: i64,
    // φ⁰ = s0·x^p0 and φ⁻¹ = s1·x^p1
    s0: i64,
    p0: i64,
    s1: i64,
    p1: i64,
}

impl RankOne {
    fn pair(a: u32, d: u32) -> Self {
        RankOne { e0: 0, e1: -(a as i64), s0: 1, p0: a as i64, s1: 1, p1: (d - a) as i64 }
    }

    /// One step of the suspension, forward or backward.
    fn step(self, d: i64, forward: bool) -> Self {
        let (e0, e1) = if forward { (self.e1 + d, self.e0) } else { (self.e1, self.e0 - d) };
        RankOne { e0, e1, s0: -self.s1, p0: self.p1, s1: -self.s0, p1: self.p0 }
    }

    fn suspended(self, d: i64, n: i64) -> Self {
        (0..n.abs()).fold(self, |f, _| f.step(d, n > 0))
    }
}

/// Coordinates: for each of `blocks` unknown polynomials, coefficients of
/// x^0..=x^k_max.
struct Space {
    k_max: usize,
    blocks: usize,
}

impl Space {
    fn dim(&self) -> usize {
        self.blocks * (self.k_max + 1)
    }

    fn at(&self, block: usize, k: usize) -> usize {
        block * (self.k_max + 1) + k
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Rank by Gaussian elimination on a list of rows.
fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        for j in c..cols {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// dim Hom_K(E, F[n]) in internal degree t, for E = (x^a, x^(d−a)) and
/// F = (x^b, x^(d−b)) as factorizations of x^d.
pub fn hom_dim(a: u32, b: u32, d: u32, n: i64, t: i64) -> usize {
    let di = d as i64;
    let e = RankOne::pair(a, d);
    let f = RankOne::pair(b, d).suspended(di, n);
    let k_max = (4 * di + 2 * t.abs() + 2 * n.abs() * di + 8) as usize;

    // Unknown morphism (g⁻¹, g⁰), every coefficient up to k_max.
    let g = Space { k_max, blocks: 2 };
    let deg_gm1 = f.e1 - e.e1 + t;
    let deg_g0 = f.e0 - e.e0 + t;
    let mut constraints: Vec<Vec<BigRational>> = Vec::new();
    for (block, deg) in [(0, deg_gm1), (1, deg_g0)] {
        for k in 0..=k_max {
            if k as i64 != deg {
                let mut row = vec![BigRational::zero(); g.dim()];
                row[g.at(block, k)] = BigRational::one();
                constraints.push(row);
            }
        }
    }
    // φ⁰_F g⁻¹ − g⁰ φ⁰_E = 0 and φ⁻¹_F g⁰ − g⁻¹ φ⁻¹_E = 0, coefficientwise.
    let width = k_max + 2 * d as usize + 2 * n.unsigned_abs() as usize * d as usize + 1;
    for (lhs_block, lhs_s, lhs_p, rhs_block, rhs_s, rhs_p) in
        [(0, f.s0, f.p0, 1, e.s0, e.p0), (1, f.s1, f.p1, 0, e.s1, e.p1)]
    {
        for m in 0..width {
            let mut row = vec![BigRational::zero(); g.dim()];
            let mut any = false;
            let m = m as i64;
            if m - lhs_p >= 0 && m - lhs_p <= k_max as i64 {
                row[g.at(lhs_block, (m - lhs_p) as usize)] += q(lhs_s);
                any = true;
            }
            if m - rhs_p >= 0 && m - rhs_p <= k_max as i64 {
                row[g.at(rhs_block, (m - rhs_p) as usize)] -= q(rhs_s);
                any = true;
            }
            if any {
                constraints.push(row);
            }
        }
    }
    let closed = g.dim() - rank(constraints);

    // Null-homotopic morphisms: images of homogeneous (h⁰, h⁻¹) under
    // (h⁰φ⁰_E + φ⁻¹_F h⁻¹, φ⁰_F h⁰ + h⁻¹φ⁻¹_E).
    let deg_h0 = f.e1 - e.e0 + t;
    let deg_hm1 = f.e0 - di - e.e1 + t;
    let mut images = Vec::new();
    if (0..=k_max as i64).contains(&deg_h0) {
        let mut v = vec![BigRational::zero(); g.dim()];
        let k = deg_h0;
        if (k + e.p0) as usize <= k_max {
            v[g.at(0, (k + e.p0) as usize)] += q(e.s0);
        }
        if (k + f.p0) as usize <= k_max {
            v[g.at(1, (k + f.p0) as usize)] += q(f.s0);
        }
        images.push(v);
    }
    if (0..=k_max as i64).contains(&deg_hm1) {
        let mut v = vec![BigRational::zero(); g.dim()];
        let k = deg_hm1;
        if (k + f.p1) as usize <= k_max {
            v[g.at(0, (k + f.p1) as usize)] += q(f.s1);
        }
        if (k + e.p1) as usize <= k_max {
            v[g.at(1, (k + e.p1) as usize)] += q(e.s1);
        }
        images.push(v);
    }
    closed - rank(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_class() {
        assert_eq!(hom_dim(1, 1, 2, 0, 0), 1);
        assert_eq!(hom_dim(1, 2, 3, 0, 0), 0);
        let total: usize = (-3..=3).map(|t| hom_dim(1, 2, 3, 0, t)).sum();
        assert!(total > 0);
    }

    #[test]
    fn two_periodic_up_to_twist() {
        for t in -3..=3 {
            assert_eq!(hom_dim(1, 2, 4, 2, t), hom_dim(1, 2, 4, 0, t + 4));
        }
    }
}
