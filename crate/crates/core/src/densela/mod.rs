//! Dense complex matrix kernel.
//!
//! Everything downstream (MNA assembly, linearization, Krylov bases,
//! projections) works on [`Matrix`], a column-major array of `Complex64`.
//! Dimension mismatches in arithmetic are programming errors and panic;
//! numerical failures (singular pivots) are reported through [`Error`].

mod chol;
mod lu;
mod orth;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chol::{cholesky, is_psd_shifted};
pub use lu::{lu_factor, LuFactorization};
pub use orth::{orthonormalize, DEFAULT_RANK_TOL};
pub(crate) use orth::residual_norm;

pub type C64 = Complex64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Column-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from column-major data, rejecting non-finite entries.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from complex rows, rejecting ragged or non-finite input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let m = Self::from_fn(r, c, |i, j| rows[i][j]);
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    /// Convenience constructor for real data given row by row. Panics on ragged input.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        assert!(
            rows.iter().all(|row| row.as_ref().len() == c),
            "ragged rows"
        );
        Self::from_fn(r, c, |i, j| c64(rows[i].as_ref()[j], 0.0))
    }

    pub fn from_diag(d: &[C64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn column_vector(v: &[C64]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Unit vector `e_k` of length `n` as an `n x 1` matrix.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m[(k, 0)] = ONE;
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, alpha: C64) -> Self {
        self.map(|z| alpha * z)
    }

    /// `self + alpha * other`
    pub fn axpy(&self, alpha: C64, other: &Matrix) -> Self {
        self.assert_same_shape(other);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + alpha * b)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest column 2-norm.
    pub fn max_col_norm(&self) -> f64 {
        (0..self.cols)
            .map(|j| vec_norm(self.col(j)))
            .fold(0.0, f64::max)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix out of range");
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn rows_range(&self, r0: usize, nr: usize) -> Self {
        self.submatrix(r0, 0, nr, self.cols)
    }

    pub fn cols_range(&self, c0: usize, nc: usize) -> Self {
        assert!(c0 + nc <= self.cols, "column range out of range");
        Matrix {
            rows: self.rows,
            cols: nc,
            data: self.data[c0 * self.rows..(c0 + nc) * self.rows].to_vec(),
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for &j in idx {
            data.extend_from_slice(self.col(j));
        }
        Matrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for j in 0..block.cols {
            for i in 0..block.rows {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn push_col(&mut self, v: &[C64]) {
        if self.cols == 0 && self.data.is_empty() && self.rows == 0 {
            self.rows = v.len();
        }
        assert_eq!(v.len(), self.rows, "column length mismatch");
        self.data.extend_from_slice(v);
        self.cols += 1;
    }

    pub fn hstack(blocks: &[&Matrix]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let mut data = Vec::new();
        let mut cols = 0;
        for b in blocks {
            data.extend_from_slice(&b.data);
            cols += b.cols;
        }
        Matrix { rows, cols, data }
    }

    pub fn vstack(blocks: &[&Matrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            m.set_block(r0, 0, b);
            r0 += b.rows;
        }
        m
    }

    /// Block matrix from a grid; `None` entries are exact zero blocks.
    /// Every block row needs at least one `Some` to fix its height, and
    /// likewise every block column.
    pub fn from_blocks(grid: &[Vec<Option<&Matrix>>]) -> Self {
        let nbr = grid.len();
        let nbc = grid.first().map_or(0, Vec::len);
        let mut heights = vec![None; nbr];
        let mut widths = vec![None; nbc];
        for (bi, row) in grid.iter().enumerate() {
            assert_eq!(row.len(), nbc, "ragged block grid");
            for (bj, blk) in row.iter().enumerate() {
                if let Some(b) = blk {
                    match heights[bi] {
                        None => heights[bi] = Some(b.rows),
                        Some(h) => assert_eq!(h, b.rows, "block height mismatch"),
                    }
                    match widths[bj] {
                        None => widths[bj] = Some(b.cols),
                        Some(w) => assert_eq!(w, b.cols, "block width mismatch"),
                    }
                }
            }
        }
        let heights: Vec<usize> = heights
            .into_iter()
            .map(|h| h.expect("block row without a sized block"))
            .collect();
        let widths: Vec<usize> = widths
            .into_iter()
            .map(|w| w.expect("block column without a sized block"))
            .collect();
        let mut m = Self::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, blk) in row.iter().enumerate() {
                if let Some(b) = blk {
                    m.set_block(r0, c0, b);
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        m
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let oc = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for k in 0..self.cols {
                let b = rhs.data[j * rhs.rows + k];
                if b == ZERO {
                    continue;
                }
                let ac = &self.data[k * self.rows..(k + 1) * self.rows];
                for (o, &a) in oc.iter_mut().zip(ac) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self^H * rhs` without forming the adjoint.
    pub fn adjoint_mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "adjoint_mul row mismatch");
        Matrix::from_fn(self.cols, rhs.cols, |i, j| dot(self.col(i), rhs.col(j)))
    }

    /// `V^H * self * V`
    pub fn congruence(&self, v: &Matrix) -> Matrix {
        v.adjoint_mul(&self.matmul(v))
    }

    /// Largest entrywise distance between two equally shaped matrices.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.assert_same_shape(other);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Hermitian within `tol` entrywise.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn hermitian_part(&self) -> Matrix {
        (self + &self.adjoint()).scale(c64(0.5, 0.0))
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    fn assert_same_shape(&self, other: &Matrix) {
        assert_eq!(
            self.shape(),
            other.shape(),
            "shape mismatch {:?} vs {:?}",
            self.shape(),
            other.shape()
        );
    }
}

/// Conjugated dot product `x^H y`.
#[inline]
pub fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

#[inline]
pub fn vec_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.axpy(ONE, rhs)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.axpy(-ONE, rhs)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                if z.im == 0.0 {
                    write!(f, "{:>12.5e} ", z.re)?;
                } else {
                    write!(f, "{:>12.5e}{:+.5e}i ", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// JSON layout: `{"rows": r, "cols": c, "entries": [[[re, im], ...], ...]}`,
/// entries row-major. Floats use shortest round-trip formatting, so a
/// write/read cycle is bit-exact.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let z = self[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows
            || repr.entries.iter().any(|r| r.len() != repr.cols)
        {
            return Err(de::Error::custom(format!(
                "entries do not match declared shape {}x{}",
                repr.rows, repr.cols
            )));
        }
        let m = Matrix::from_fn(repr.rows, repr.cols, |i, j| {
            let [re, im] = repr.entries[i][j];
            c64(re, im)
        });
        if !m.is_finite() {
            return Err(de::Error::custom("non-finite matrix entry"));
        }
        Ok(m)
    }
}
