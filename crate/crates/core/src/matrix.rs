//! Rectangular `N x n` matrices (`N` rows, `n <= N` columns).

use alloc::vec::Vec;
use core::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Row-major matrix with `1 <= cols <= rows`.
#[derive(Clone, Debug, PartialEq)]
pub struct RectMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> RectMatrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if cols == 0 || cols > rows {
            return Err(Error::InvalidShape { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCount { expected: rows * cols, found: entries.len() });
        }
        Ok(RectMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::EntryCount { expected: n_cols, found: row.len() });
            }
            entries.extend(row);
        }
        Self::new(n_rows, n_cols, entries)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for j in 0..rows {
            for r in 0..cols {
                entries.push(f(j, r));
            }
        }
        Self::new(rows, cols, entries)
    }

    /// `N`, the number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `n`, the number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.cols + col]
    }

    pub fn try_get(&self, row: usize, col: usize) -> Result<&S> {
        if row >= self.rows {
            return Err(Error::IndexOutOfRange { what: "row", index: row, bound: self.rows });
        }
        if col >= self.cols {
            return Err(Error::IndexOutOfRange { what: "column", index: col, bound: self.cols });
        }
        Ok(self.get(row, col))
    }

    pub fn row(&self, row: usize) -> &[S] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<S> {
        (0..self.rows).map(|j| self.get(j, col).clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> RectMatrix<T> {
        RectMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Keep the first `cols` columns.
    pub fn leading_columns(&self, cols: usize) -> Result<Self> {
        if cols == 0 || cols > self.cols {
            return Err(Error::InvalidShape { rows: self.rows, cols });
        }
        Self::from_fn(self.rows, cols, |j, r| self.get(j, r).clone())
    }

    /// Column means `z~_r`.
    pub fn column_means(&self) -> Vec<S> {
        let inv = S::from_rational(&Rational::new(1, self.rows as i64));
        (0..self.cols)
            .map(|r| {
                let mut sum = S::zero();
                for j in 0..self.rows {
                    sum += self.get(j, r);
                }
                sum * &inv
            })
            .collect()
    }

    /// Column means together with the centred entries `a_jr = z_jr - z~_r`.
    pub fn column_stats(&self) -> ColumnStats<S> {
        let means = self.column_means();
        let residuals = RectMatrix::from_fn(self.rows, self.cols, |j, r| self.get(j, r).clone() - &means[r])
            .expect("shape already validated");
        ColumnStats { means, residuals }
    }

    /// `y_uvr = z_ur - z_vr`.
    pub fn pair_diff(&self, u: usize, v: usize, r: usize) -> Result<S> {
        Ok(self.try_get(u, r)?.clone() - self.try_get(v, r)?)
    }

    /// Every entry lies in the closed unit disc.
    pub fn entries_in_unit_disc(&self) -> bool {
        self.entries.iter().all(S::within_unit_disc)
    }

    /// Every entry is exactly 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|z| z.is_zero() || z.is_one())
    }

    pub fn to_complex(&self) -> RectMatrix<Complex64> {
        self.map(S::to_complex)
    }
}

impl<S> Index<(usize, usize)> for RectMatrix<S> {
    type Output = S;
    fn index(&self, (row, col): (usize, usize)) -> &S {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of range");
        &self.entries[row * self.cols + col]
    }
}

/// Column means and centred entries of a matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnStats<S> {
    pub means: Vec<S>,
    pub residuals: RectMatrix<S>,
}

/// Dense table of `y_uvr` indexed as `((u * N) + v) * n + r`.
#[derive(Clone, Debug)]
pub(crate) struct PairDiffs<S> {
    rows: usize,
    cols: usize,
    values: Vec<S>,
}

impl<S: Scalar> PairDiffs<S> {
    pub(crate) fn new(z: &RectMatrix<S>) -> Self {
        let (rows, cols) = (z.rows(), z.cols());
        let mut values = Vec::with_capacity(rows * rows * cols);
        for u in 0..rows {
            for v in 0..rows {
                for r in 0..cols {
                    values.push(z.get(u, r).clone() - z.get(v, r));
                }
            }
        }
        PairDiffs { rows, cols, values }
    }

    #[inline]
    pub(crate) fn get(&self, u: usize, v: usize, r: usize) -> &S {
        &self.values[(u * self.rows + v) * self.cols + r]
    }
}

/// A matrix over either scalar domain.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Rational(RectMatrix<Rational>),
    Complex(RectMatrix<Complex64>),
}

impl AnyMatrix {
    pub fn rows(&self) -> usize {
        match self {
            AnyMatrix::Rational(m) => m.rows(),
            AnyMatrix::Complex(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            AnyMatrix::Rational(m) => m.cols(),
            AnyMatrix::Complex(m) => m.cols(),
        }
    }

    pub fn to_complex(&self) -> RectMatrix<Complex64> {
        match self {
            AnyMatrix::Rational(m) => m.to_complex(),
            AnyMatrix::Complex(m) => m.clone(),
        }
    }
}
