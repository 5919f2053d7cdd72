//! Dense exact linear algebra over the coefficient field.
//!
//! Elimination runs on `u64` residues over 𝔽ₚ and on big rationals over ℚ;
//! both backends share one reduced-row-echelon routine.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of solving `A·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Option<Vec<Scalar>>,
    pub nullspace_basis: Vec<Vec<Scalar>>,
}

impl FieldMatrix {
    pub fn zero(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix { field: field.clone(), rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows
            .into_iter()
            .flatten()
            .map(|x| field.reduce(&x))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldMatrix { field: field.clone(), rows: r, cols: c, data })
    }

    pub fn from_i64_rows(field: &FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular input")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &FieldSpec, nrows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zero(field, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Scalar::zero(), |acc, j| {
                    self.field.add(&acc, &self.field.mul(self.get(i, j), &v[j]))
                })
            })
            .collect()
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = FieldMatrix::zero(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = self.field.add(out.get(i, j), &self.field.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = FieldMatrix::zero(&self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Rows listed in `rows`, all columns.
    pub fn select_rows(&self, rows: &[usize]) -> FieldMatrix {
        let mut out = FieldMatrix::zero(&self.field, rows.len(), self.cols);
        for (a, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(a, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        match self.field {
            FieldSpec::Rationals => {
                let mut rows = self.to_rows();
                let pivots = rref_in_place(&RationalOps, &mut rows, self.cols);
                (self.with_rows(rows.into_iter().flatten().collect()), pivots)
            }
            FieldSpec::PrimeField(p) => {
                let ops = ModOps(p as u64);
                let mut rows: Vec<Vec<u64>> = self
                    .to_rows()
                    .into_iter()
                    .map(|r| r.iter().map(|x| x.numer().to_u64().unwrap()).collect())
                    .collect();
                let pivots = rref_in_place(&ops, &mut rows, self.cols);
                let data = rows
                    .into_iter()
                    .flatten()
                    .map(|v| Scalar::from_integer(BigInt::from(v)))
                    .collect();
                (self.with_rows(data), pivots)
            }
        }
    }

    fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    fn with_rows(&self, data: Vec<Scalar>) -> FieldMatrix {
        FieldMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : A·v = 0}, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&self.field, &r, &pivots)
    }

    /// Indices of columns forming a basis of the column space.
    pub fn column_basis(&self) -> Vec<usize> {
        self.rref().1
    }
}

fn nullspace_from_rref(field: &FieldSpec, r: &FieldMatrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; r.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..r.cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![Scalar::zero(); r.cols];
            v[free] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(r.get(row, free));
            }
            v
        })
        .collect()
}

/// Exact Gaussian elimination for `A·x = b`.
pub fn exact_solve(a: &FieldMatrix, b: &[Scalar]) -> Result<LinearSolution> {
    if b.len() != a.rows {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    let field = &a.field;
    let rhs = FieldMatrix::from_columns(field, a.rows, &[b.iter().map(|x| field.reduce(x)).collect::<Result<_>>()?]);
    let (r, pivots) = a.hcat(&rhs).rref();
    let consistent = !pivots.contains(&a.cols);
    let particular = consistent.then(|| {
        let mut x = vec![Scalar::zero(); a.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, a.cols).clone();
        }
        x
    });
    let (ra, pa) = a.rref();
    Ok(LinearSolution { particular, nullspace_basis: nullspace_from_rref(field, &ra, &pa) })
}

trait ElimOps {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// a − b·c
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

struct RationalOps;

impl ElimOps for RationalOps {
    type E = Scalar;
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn sub_mul(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        a - b * c
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.recip()
    }
}

struct ModOps(u64);

impl ElimOps for ModOps {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + self.0 - b * c % self.0) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        let p = self.0;
        let (mut result, mut base, mut e) = (1u64, *a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }
}

fn rref_in_place<O: ElimOps>(ops: &O, rows: &mut [Vec<O::E>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !ops.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = ops.inv(&rows[r][c]);
        for j in c..ncols {
            rows[r][j] = ops.mul(&rows[r][j], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || ops.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..ncols {
                if !ops.is_zero(&pivot_row[j]) {
                    row[j] = ops.sub_mul(&row[j], &factor, &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> Scalar {
        FieldSpec::Rationals.from_i64(v)
    }

    #[test]
    fn identity_system() {
        let a = FieldMatrix::from_i64_rows(&FieldSpec::Rationals, &[&[1, 0], &[0, 1]]);
        let s = exact_solve(&a, &[q(1), q(2)]).unwrap();
        assert_eq!(s.particular, Some(vec![q(1), q(2)]));
        assert!(s.nullspace_basis.is_empty());
    }

    #[test]
    fn inconsistent_system() {
        let a = FieldMatrix::from_i64_rows(&FieldSpec::Rationals, &[&[0]]);
        let s = exact_solve(&a, &[q(1)]).unwrap();
        assert!(s.particular.is_none());
    }

    #[test]
    fn underdetermined_system() {
        let a = FieldMatrix::from_i64_rows(&FieldSpec::Rationals, &[&[1, 1]]);
        let s = exact_solve(&a, &[q(0)]).unwrap();
        assert_eq!(s.particular, Some(vec![q(0), q(0)]));
        assert_eq!(s.nullspace_basis.len(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        let a = FieldMatrix::from_i64_rows(&FieldSpec::Rationals, &[&[1, 1]]);
        assert!(exact_solve(&a, &[q(0), q(1)]).is_err());
    }

    #[test]
    fn prime_field_rank_drops() {
        // det = 5 vanishes mod 5.
        let rows: &[&[i64]] = &[&[1, 2], &[-1, 3]];
        assert_eq!(FieldMatrix::from_i64_rows(&FieldSpec::Rationals, rows).rank(), 2);
        assert_eq!(FieldMatrix::from_i64_rows(&FieldSpec::PrimeField(5), rows).rank(), 1);
    }

    fn check_solution(field: &FieldSpec, a: &FieldMatrix, b: &[Scalar]) {
        let s = exact_solve(a, b).unwrap();
        if let Some(x) = &s.particular {
            assert_eq!(a.mul_vec(x), b.to_vec());
        }
        for v in &s.nullspace_basis {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        let basis = FieldMatrix::from_columns(field, a.cols(), &s.nullspace_basis);
        assert_eq!(basis.rank(), s.nullspace_basis.len());
        assert_eq!(s.nullspace_basis.len() + a.rank(), a.cols());
    }

    proptest! {
        #[test]
        fn solutions_are_exact(
            entries in prop::collection::vec(-3i64..=3, 12),
            rhs in prop::collection::vec(-3i64..=3, 3),
            prime in prop::bool::ANY,
        ) {
            let field = if prime { FieldSpec::PrimeField(5) } else { FieldSpec::Rationals };
            let rows: Vec<&[i64]> = entries.chunks(4).collect();
            let a = FieldMatrix::from_i64_rows(&field, &rows);
            let b: Vec<Scalar> = rhs.iter().map(|&v| field.from_i64(v)).collect();
            check_solution(&field, &a, &b);
        }
    }
}
