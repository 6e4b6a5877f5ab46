//! Dense matrices over a [`Field`] with exact Gaussian elimination.
//!
//! Pivot rule: exact fields take the first nonzero entry scanning rows
//! top-down inside the current column, columns left to right. Fields that
//! report a pivot magnitude (floating point) take the largest candidate.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::{Field, ScalarField};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

/// Rank of a matrix together with the pivot positions found by elimination.
///
/// The submatrix on `pivot_rows x pivot_cols` is invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Matrix { field, rows: n_rows, cols, entries })
    }

    /// Builds an `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
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

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Submatrix on the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, entries }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.field.clone(), self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for l in 0..self.cols {
                    acc = f.add(&acc, &f.mul(&self[(i, l)], &other[(l, j)]));
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let entries = self.entries.iter().map(|x| self.field.mul(c, x)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale_column(&mut self, j: usize, c: &F::Elem) {
        for i in 0..self.rows {
            let x = self.field.mul(&self[(i, j)], c);
            self[(i, j)] = x;
        }
    }

    /// Entrywise equality under the field's comparison rule.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| self.field.equal(a, b))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn map_entries<G: Field>(&self, field: G, mut f: impl FnMut(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(&mut f).collect(), field }
    }

    pub fn rank_profile(&self) -> RankProfile {
        let mut work = Elimination::new(self, self.cols);
        work.run(false);
        let mut pivot_rows: Vec<usize> = work.row_origin[..work.pivot_cols.len()].to_vec();
        pivot_rows.sort_unstable();
        RankProfile { rank: work.pivot_cols.len(), pivot_rows, pivot_cols: work.pivot_cols }
    }

    pub fn rank(&self) -> usize {
        self.rank_profile().rank
    }

    /// Determinant by elimination; the empty matrix has determinant 1.
    pub fn determinant(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let mut work = Elimination::new(self, self.cols);
        work.run(false);
        if work.pivot_cols.len() < self.rows {
            return Ok(f.zero());
        }
        let mut det = f.one();
        for (i, row) in work.rows.iter().enumerate() {
            det = f.mul(&det, &row[i]);
        }
        if work.swaps % 2 == 1 {
            det = f.neg(&det);
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let augmented = self.hstack(&Self::identity(self.field.clone(), n))?;
        let mut work = Elimination::new(&augmented, n);
        work.run(true);
        if work.pivot_cols.len() < n {
            return Err(Error::Singular);
        }
        let entries = work.rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Matrix::new(self.field.clone(), n, n, entries)
    }

    /// Coordinates of `target` in the basis formed by the columns of `self`.
    ///
    /// Returns `Ok(None)` when `target` is outside the column span. The basis
    /// must have full column rank.
    pub fn solve_in_column_space(&self, target: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if target.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: target.len() });
        }
        let k = self.cols;
        let column = Matrix::from_columns(self.field.clone(), self.rows, &[target.to_vec()])?;
        let augmented = self.hstack(&column)?;
        let mut work = Elimination::new(&augmented, k);
        work.run(true);
        let rank = work.pivot_cols.len();
        if rank < k {
            return Err(Error::RankDeficientBasis { rank, cols: k });
        }
        let f = &self.field;
        if work.rows[k..].iter().any(|row| !f.is_zero(&row[k])) {
            return Ok(None);
        }
        Ok(Some(work.rows[..k].iter().map(|row| row[k].clone()).collect()))
    }
}

impl<F: ScalarField> Matrix<F> {
    /// Entries as rows of scalar strings.
    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| self.field.format(x)).collect()).collect()
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;

    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

/// Row-reduction workspace. Only the first `pivot_limit` columns are used as
/// pivot columns; the rest ride along (augmented right-hand sides).
struct Elimination<'a, F: Field> {
    field: &'a F,
    rows: Vec<Vec<F::Elem>>,
    row_origin: Vec<usize>,
    pivot_cols: Vec<usize>,
    pivot_limit: usize,
    swaps: usize,
}

impl<'a, F: Field> Elimination<'a, F> {
    fn new(m: &'a Matrix<F>, pivot_limit: usize) -> Self {
        Elimination {
            field: &m.field,
            rows: m.to_rows(),
            row_origin: (0..m.rows).collect(),
            pivot_cols: Vec::new(),
            pivot_limit,
            swaps: 0,
        }
    }

    fn choose_pivot(&self, col: usize, from: usize) -> Option<usize> {
        let f = self.field;
        let mut best: Option<(usize, f64)> = None;
        for r in from..self.rows.len() {
            let x = &self.rows[r][col];
            if f.is_zero(x) {
                continue;
            }
            match f.pivot_magnitude(x) {
                None => return Some(r),
                Some(mag) => {
                    if best.is_none_or(|(_, b)| mag > b) {
                        best = Some((r, mag));
                    }
                }
            }
        }
        best.map(|(r, _)| r)
    }

    /// Forward elimination; with `reduce`, produces reduced row echelon form
    /// (pivots scaled to one, cleared above as well as below).
    fn run(&mut self, reduce: bool) {
        let f = self.field;
        let n_rows = self.rows.len();
        let width = self.rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..self.pivot_limit {
            if r == n_rows {
                break;
            }
            let Some(p) = self.choose_pivot(c, r) else { continue };
            if p != r {
                self.rows.swap(p, r);
                self.row_origin.swap(p, r);
                self.swaps += 1;
            }
            if reduce {
                let inv = f.inv(&self.rows[r][c]).expect("pivot is nonzero");
                for x in self.rows[r][c..width].iter_mut() {
                    *x = f.mul(x, &inv);
                }
            }
            let pivot_row = self.rows[r].clone();
            let targets = if reduce { 0..n_rows } else { r + 1..n_rows };
            for i in targets {
                if i == r || f.is_zero(&self.rows[i][c]) {
                    continue;
                }
                let factor = if reduce {
                    self.rows[i][c].clone()
                } else {
                    f.div(&self.rows[i][c], &pivot_row[c]).expect("pivot is nonzero")
                };
                let row = &mut self.rows[i];
                for j in c..width {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &pivot_row[j]));
                }
                // exact zero below the pivot even in floating point
                row[c] = f.zero();
            }
            self.pivot_cols.push(c);
            r += 1;
        }
    }
}
