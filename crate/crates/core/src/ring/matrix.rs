use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{GradedRing, Poly, Scalar};

/// Dense matrix of polynomials, row-major. Matrices act on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<GradedRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(ring: &Arc<GradedRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Poly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Arc<GradedRing>, n: usize) -> Self {
        Self::scalar(&Poly::one(ring), n)
    }

    /// `p · Id` of size n.
    pub fn scalar(p: &Poly, n: usize) -> Self {
        let mut m = Self::zero(p.ring(), n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(ring: &Arc<GradedRing>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_entries(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_entries(ring: &Arc<GradedRing>, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        if let Some(p) = entries.iter().find(|p| p.ring() != ring) {
            return Err(Error::RingMismatch(format!("entry over {}, expected {ring}", p.ring())));
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    /// 1×1 matrix.
    pub fn single(p: Poly) -> Self {
        PolyMatrix { ring: p.ring().clone(), rows: 1, cols: 1, entries: vec![p] }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        debug_assert_eq!(p.ring(), &self.ring);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn checked_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, rhs.ring)));
        }
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolyMatrix> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, rhs.ring)));
        }
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &Scalar) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, q: &Poly) -> PolyMatrix {
        self.map(|p| p * q)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise ring change; the closure must return polynomials over `ring`.
    pub fn try_map_into(
        &self,
        ring: &Arc<GradedRing>,
        f: impl Fn(&Poly) -> Result<Poly>,
    ) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_entries(ring, self.rows, self.cols, entries)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Copy of rows `r0..r1`, columns `c0..c1`.
    pub fn sub_block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Gathers the rows listed in `rows` and the columns listed in `cols`.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Writes `block` with its top-left corner at (r0, c0).
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Scatters `block` into the listed rows and columns.
    pub fn put_scattered(&mut self, rows: &[usize], cols: &[usize], block: &PolyMatrix) {
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                self.set(i, j, block.get(a, b).clone());
            }
        }
    }

    /// Assembles a block matrix. `blocks[i][j]` must agree in height along
    /// block rows and in width along block columns.
    pub fn block(ring: &Arc<GradedRing>, blocks: &[Vec<PolyMatrix>]) -> Result<PolyMatrix> {
        let heights: Vec<usize> = blocks.iter().map(|row| row.first().map_or(0, |b| b.rows)).collect();
        let widths: Vec<usize> = blocks.first().map_or(vec![], |row| row.iter().map(|b| b.cols).collect());
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::Dimension("ragged block rows".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::Dimension(format!("block ({bi},{bj}) has shape {:?}", b.shape())));
                }
            }
        }
        let mut out = PolyMatrix::zero(ring, heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                out.put_block(r0, c0, b);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn block_diag(ring: &Arc<GradedRing>, parts: &[&PolyMatrix]) -> PolyMatrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = PolyMatrix::zero(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.put_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Largest total degree of any entry.
    pub fn max_entry_degree(&self) -> u32 {
        self.entries.iter().filter_map(Poly::total_degree).max().unwrap_or(0)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    #[test]
    fn product_and_blocks() {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let a = PolyMatrix::from_rows(&r, vec![vec![p("x"), p("y")], vec![p("0"), p("y")]]).unwrap();
        let b = PolyMatrix::from_rows(&r, vec![vec![p("y"), p("-y")], vec![p("0"), p("x")]]).unwrap();
        assert_eq!(a.checked_mul(&b).unwrap(), PolyMatrix::scalar(&p("x*y"), 2));
        let big = PolyMatrix::block(&r, &[vec![a.clone(), PolyMatrix::zero(&r, 2, 1)]]).unwrap();
        assert_eq!(big.shape(), (2, 3));
        assert_eq!(big.sub_block(0, 2, 0, 2), a);
        assert!(a.checked_mul(&big.transpose()).is_err());
    }
}
