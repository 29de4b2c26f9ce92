//! Dense exact linear algebra over a runtime-selected field.
//!
//! Row reduction picks the first nonzero entry in column order, so every
//! canonical form produced here (RREF, kernel bases, subspace bases) is
//! deterministic and reproducible across runs.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A dense row-major matrix whose entries all live in `field`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Result of reduced-row-echelon elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: DenseMatrix,
    /// Strictly increasing pivot column indices.
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl DenseMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    row.len(),
                    c
                )));
            }
            for e in row {
                if !field.owns(&e) {
                    return Err(Error::MixedField);
                }
                entries.push(e);
            }
        }
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            field,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(field: Field, cols: &[Vec<Scalar>], dim: usize) -> Result<Self> {
        let mut m = Self::zero(field, dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {} rows",
                    col.len(),
                    dim
                )));
            }
            for (i, e) in col.iter().enumerate() {
                if !field.owns(e) {
                    return Err(Error::MixedField);
                }
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    /// Integer-literal constructor, mostly for tests and fixtures.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&k| field.from_i64(k)).collect())
            .collect();
        Self::from_rows(field, data).expect("rectangular integer literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.field != rhs.field {
            return Err(Error::MixedField);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = f.mul(a, rhs.get(k, j));
                    let cur = f.add(out.get(i, j), &term);
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix with {} columns applied to vector of length {}",
                self.cols,
                v.len()
            )));
        }
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = f.zero();
            for j in 0..self.cols {
                if !f.is_zero(&v[j]) {
                    acc = f.add(&acc, &f.mul(self.get(i, j), &v[j]));
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.field != rhs.field {
            return Err(Error::MixedField);
        }
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut out = Self::zero(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// The unique reduced row echelon form, eliminating with the first
    /// nonzero entry of each column.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, j))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, j));
            for c in j..m.cols {
                let v = f.mul(m.get(r, c), &inv);
                m.set(r, c, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, j)) {
                    continue;
                }
                let factor = m.get(i, j).clone();
                for c in j..m.cols {
                    let v = f.sub(m.get(i, c), &f.mul(&factor, m.get(r, c)));
                    m.set(i, c, v);
                }
            }
            pivot_cols.push(j);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivot_cols.len(),
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the right null space: one vector per free column,
    /// with the free coordinate set to 1 and pivot coordinates set to the
    /// negated RREF solution.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let red = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in red.pivot_cols.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::with_capacity(self.cols - red.rank);
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![f.zero(); self.cols];
            vec[free] = f.one();
            for (row, &col) in red.pivot_cols.iter().enumerate() {
                vec[col] = f.neg(red.matrix.get(row, free));
            }
            basis.push(vec);
        }
        basis
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self
            .hstack(&DenseMatrix::identity(self.field, self.rows))
            .expect("same row count");
        let red = aug.rref();
        if red.rank < self.rows || red.pivot_cols.iter().any(|&c| c >= self.rows) {
            return None;
        }
        let mut inv = DenseMatrix::zero(self.field, self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                inv.set(i, j, red.matrix.get(i, self.rows + j).clone());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Expresses `target` in the span of `basis` (interpreted as vectors over
/// `field`), or reports a definite negative. The coefficients reproduce the
/// target exactly; free columns of a dependent spanning set get 0.
pub fn solve_in_span(
    field: Field,
    basis: &[Vec<Scalar>],
    target: &[Scalar],
) -> Result<Option<Vec<Scalar>>> {
    let dim = target.len();
    for b in basis {
        if b.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "span vector of length {} vs target of length {}",
                b.len(),
                dim
            )));
        }
    }
    let a = DenseMatrix::from_cols(field, basis, dim)?;
    let t = DenseMatrix::from_cols(field, std::slice::from_ref(&target.to_vec()), dim)?;
    let red = a.hstack(&t)?.rref();
    if red.pivot_cols.last() == Some(&basis.len()) {
        return Ok(None); // the target column is a pivot: not in the span
    }
    let mut coeffs = vec![field.zero(); basis.len()];
    for (row, &col) in red.pivot_cols.iter().enumerate() {
        coeffs[col] = red.matrix.get(row, basis.len()).clone();
    }
    Ok(Some(coeffs))
}

/// Dimension of the span of the given vectors.
pub fn span_dim(field: Field, vectors: &[Vec<Scalar>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    DenseMatrix::from_cols(field, vectors, dim)
        .expect("span vectors share dimension")
        .rank()
}

/// Canonical RREF basis of the span of the given vectors (zero rows dropped).
/// Two lists of vectors span the same subspace iff this output is equal.
pub fn rref_basis(field: Field, vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = DenseMatrix::from_rows(field, vectors.to_vec()).expect("rectangular");
    debug_assert_eq!(m.cols(), dim);
    let red = m.rref();
    (0..red.rank).map(|i| red.matrix.row(i).to_vec()).collect()
}

/// Greedy completion: returns the indices of `candidates` that enlarge the
/// span of `base`, scanning in order (lowest index wins ties).
pub fn greedy_completion(
    field: Field,
    base: &[Vec<Scalar>],
    candidates: &[Vec<Scalar>],
    dim: usize,
) -> Vec<usize> {
    let mut span: Vec<Vec<Scalar>> = base.to_vec();
    let mut chosen = Vec::new();
    let mut rank = span_dim(field, &span, dim);
    for (i, cand) in candidates.iter().enumerate() {
        span.push(cand.clone());
        let new_rank = span_dim(field, &span, dim);
        if new_rank > rank {
            rank = new_rank;
            chosen.push(i);
        } else {
            span.pop();
        }
    }
    chosen
}
