use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{check_ring, Poly, Ring};

/// Element of a free module R^k.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    ring: Ring,
    entries: Vec<Poly>,
}

impl Vector {
    pub fn zero(ring: &Ring, rank: usize) -> Self {
        Vector {
            ring: ring.clone(),
            entries: vec![Poly::zero(ring); rank],
        }
    }

    /// The standard basis vector e_i of R^rank.
    pub fn unit(ring: &Ring, rank: usize, i: usize) -> Self {
        let mut v = Vector::zero(ring, rank);
        v.entries[i] = Poly::one(ring);
        v
    }

    pub fn new(ring: &Ring, entries: Vec<Poly>) -> Result<Self> {
        for e in &entries {
            check_ring(ring, e.ring())?;
        }
        Ok(Vector {
            ring: ring.clone(),
            entries,
        })
    }

    pub(crate) fn from_entries(ring: &Ring, entries: Vec<Poly>) -> Self {
        Vector {
            ring: ring.clone(),
            entries,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Poly> {
        self.entries
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        Vector::from_entries(
            &self.ring,
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        Vector::from_entries(
            &self.ring,
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn neg(&self) -> Vector {
        Vector::from_entries(&self.ring, self.entries.iter().map(Poly::neg).collect())
    }

    pub fn scale(&self, c: &Poly) -> Vector {
        Vector::from_entries(&self.ring, self.entries.iter().map(|a| a * c).collect())
    }

    /// Concatenation `(self, other)` in R^(k+l).
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        Vector::from_entries(&self.ring, e)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Vector {
        Vector::from_entries(&self.ring, self.entries[range].to_vec())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Matrix over R stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    nrows: usize,
    cols: Vec<Vector>,
}

impl Matrix {
    pub fn from_cols(ring: &Ring, nrows: usize, cols: Vec<Vector>) -> Result<Self> {
        for c in &cols {
            if c.rank() != nrows {
                return Err(Error::RankMismatch {
                    expected: nrows,
                    found: c.rank(),
                });
            }
            check_ring(ring, c.ring())?;
        }
        Ok(Matrix {
            ring: ring.clone(),
            nrows,
            cols,
        })
    }

    pub fn from_rows(ring: &Ring, ncols: usize, rows: &[Vec<Poly>]) -> Result<Self> {
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {ncols} columns",
                    r.len()
                )));
            }
        }
        let cols = (0..ncols)
            .map(|j| Vector::new(ring, rows.iter().map(|r| r[j].clone()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_cols(ring, rows.len(), cols)
    }

    pub fn zero(ring: &Ring, nrows: usize, ncols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            nrows,
            cols: vec![Vector::zero(ring, nrows); ncols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            nrows: n,
            cols: (0..n).map(|i| Vector::unit(ring, n, i)).collect(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[Vector] {
        &self.cols
    }

    pub fn into_cols(self) -> Vec<Vector> {
        self.cols
    }

    pub fn col(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        self.cols[j].get(i)
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.cols.iter().map(|c| c.get(i).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    /// `self * v`.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(v.rank(), self.ncols(), "rank mismatch in matrix-vector product");
        let mut acc = Vector::zero(&self.ring, self.nrows);
        for (c, a) in self.cols.iter().zip(v.entries()) {
            if !a.is_zero() {
                acc = acc.add(&c.scale(a));
            }
        }
        acc
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch in matrix product");
        Matrix {
            ring: self.ring.clone(),
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let rows = self.rows();
        Matrix {
            ring: self.ring.clone(),
            nrows: self.ncols(),
            cols: rows
                .into_iter()
                .map(|r| Vector::from_entries(&self.ring, r))
                .collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        Matrix {
            ring: self.ring.clone(),
            nrows: self.nrows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            nrows: self.nrows,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// Block column `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows, other.nrows);
        let mut cols = self.cols.clone();
        cols.extend_from_slice(&other.cols);
        Matrix {
            ring: self.ring.clone(),
            nrows: self.nrows,
            cols,
        }
    }

    /// Block row `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.ncols());
        Matrix {
            ring: self.ring.clone(),
            nrows: self.nrows + other.nrows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.concat(b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vector::is_zero)
    }
}

impl fmt::Display for Matrix {
    /// Row-major `[[a, b], [c, d]]`; a matrix without rows prints as `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.nrows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, c) in self.cols.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", c.get(i))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.nrows, self.ncols(), self)
    }
}
