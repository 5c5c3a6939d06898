use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Poly, Ring};

/// Dense row-major matrix of polynomials, read as a map of free modules
/// `S^cols -> S^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl RingMatrix {
    pub fn new(ring: &Arc<Ring>, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| **e.ring() != **ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        Self::scalar(ring, n, &Poly::one(ring))
    }

    /// `f * I_n`.
    pub fn scalar(ring: &Arc<Ring>, n: usize, f: &Poly) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = f.clone();
        }
        m
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(ring: &Arc<Ring>, rows: usize, columns: &[Vec<Poly>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Shape("column length mismatch".into()));
        }
        let cols = columns.len();
        let mut m = Self::zeros(ring, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, e) in col.iter().enumerate() {
                m.entries[i * cols + j] = e.clone();
            }
        }
        if m.entries.iter().any(|e| **e.ring() != **ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(m)
    }

    /// Parse rows of comma-separated polynomials.
    pub fn parse_rows(ring: &Arc<Ring>, lines: &[&str]) -> Result<Self> {
        let mut rows = Vec::new();
        for line in lines {
            let row = line
                .split(',')
                .map(|s| ring.parse(s))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Poly) {
        self.entries[i * self.cols + j] = f;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// First entry where the two matrices differ.
    pub fn first_difference(&self, other: &RingMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    pub fn checked_mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if *self.ring != *other.ring {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &RingMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<RingMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if *self.ring != *other.ring {
            return Err(Error::ContextMismatch);
        }
        Ok(RingMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> RingMatrix {
        RingMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale_poly(&self, f: &Poly) -> RingMatrix {
        self.map(|e| e * f)
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> RingMatrix {
        let mut out = Self::zeros(&self.ring, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.entries[(i - r0) * (c1 - c0) + (j - c0)] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn hstack(parts: &[&RingMatrix]) -> Result<RingMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Shape("empty hstack".into()))?;
        let rows = first.rows;
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(&first.ring, rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    out.entries[i * cols + off + j] = p.get(i, j).clone();
                }
            }
            off += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&RingMatrix]) -> Result<RingMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Shape("empty vstack".into()))?;
        let cols = first.cols;
        if parts.iter().any(|p| p.cols != cols) {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut entries = Vec::new();
        for p in parts {
            entries.extend(p.entries.iter().cloned());
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        Self::new(&first.ring, rows, cols, entries)
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2(a: &RingMatrix, b: &RingMatrix, c: &RingMatrix, d: &RingMatrix) -> Result<RingMatrix> {
        let top = Self::hstack(&[a, b])?;
        let bottom = Self::hstack(&[c, d])?;
        Self::vstack(&[&top, &bottom])
    }

    pub fn block_diag(parts: &[&RingMatrix]) -> RingMatrix {
        let ring = parts[0].ring.clone();
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(&ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.entries[(r0 + i) * cols + c0 + j] = p.get(i, j).clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// Stack the columns into one vector (column-major).
    pub fn vectorize(&self) -> Vec<Poly> {
        (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect()
    }

    /// Inverse of [`RingMatrix::vectorize`].
    pub fn unvectorize(ring: &Arc<Ring>, rows: usize, cols: usize, v: &[Poly]) -> RingMatrix {
        assert_eq!(v.len(), rows * cols);
        let mut m = Self::zeros(ring, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.entries[i * cols + j] = v[j * rows + i].clone();
            }
        }
        m
    }

    /// Rows rendered as comma-separated polynomials, one line per row.
    pub fn row_lines(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect()
    }
}

macro_rules! forward_matop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingMatrix> for &RingMatrix {
            type Output = RingMatrix;
            fn $method(self, rhs: &RingMatrix) -> RingMatrix {
                self.$checked(rhs).unwrap_or_else(|e| panic!("matrix {}: {e}", stringify!($method)))
            }
        }
    };
}

forward_matop!(Add, add, checked_add);
forward_matop!(Sub, sub, checked_sub);
forward_matop!(Mul, mul, checked_mul);

impl Neg for &RingMatrix {
    type Output = RingMatrix;
    fn neg(self) -> RingMatrix {
        self.map(|e| -e)
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, line) in self.row_lines().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{line}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    #[test]
    fn products_and_blocks() {
        let r = Ring::new(32003, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let a = RingMatrix::parse_rows(&r, &["x, y", "0, 1"]).unwrap();
        let b = RingMatrix::parse_rows(&r, &["1, 0", "-x, y"]).unwrap();
        let ab = &a * &b;
        assert_eq!(ab, RingMatrix::parse_rows(&r, &["x - x*y, y^2", "-x, y"]).unwrap());
        assert!(a.checked_mul(&RingMatrix::zeros(&r, 3, 1)).is_err());
        let d = RingMatrix::block_diag(&[&a, &RingMatrix::identity(&r, 1)]);
        assert_eq!((d.rows(), d.cols()), (3, 3));
        assert_eq!(a.transpose().transpose(), a);
        let v = a.vectorize();
        assert_eq!(RingMatrix::unvectorize(&r, 2, 2, &v), a);
        assert_eq!(a.to_string(), "[x, y; 0, 1]");
    }
}
