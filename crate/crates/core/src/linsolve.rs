//! Exact dense linear algebra: reduced row echelon form, rank, null spaces
//! and subspace comparisons.
//!
//! Elimination is fraction-exact, so the pivot in each column is simply the
//! first available nonzero entry. Reduced echelon form is unique, which makes
//! it the canonical form for [`SubspaceBasis`].

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|v| v.spec() != spec) {
            return Err(Error::FieldMismatch {
                left: spec,
                right: bad.spec(),
            });
        }
        Ok(Self {
            spec,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            spec,
            rows,
            cols,
            data: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    pub fn from_rows(spec: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Self::new(spec, n, cols, data)
    }

    pub fn from_i64_rows(spec: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            spec,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| spec.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
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

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.spec.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row echelon form (same shape, zero rows at the bottom) and rank.
    pub fn rref(&self) -> (ExactMatrix, usize) {
        let mut reducer = RowReducer::new(self.spec, self.cols);
        for i in 0..self.rows {
            reducer.push_row(self.row(i).to_vec());
        }
        let rank = reducer.rank();
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for row in reducer.into_rows() {
            data.extend(row);
        }
        data.resize(self.rows * self.cols, self.spec.zero());
        let out = ExactMatrix {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            data,
        };
        (out, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of `{v : M v = 0}`.
    pub fn null_space(&self) -> SubspaceBasis {
        let mut reducer = RowReducer::new(self.spec, self.cols);
        for i in 0..self.rows {
            reducer.push_row(self.row(i).to_vec());
        }
        reducer.null_space()
    }
}

/// Incremental Gauss-Jordan elimination. Rows are reduced as they arrive and
/// only independent ones are kept, so the memory footprint is `rank x cols`
/// no matter how many constraint rows are pushed.
#[derive(Debug, Clone)]
pub struct RowReducer {
    spec: FieldSpec,
    cols: usize,
    /// Reduced rows, each paired with its pivot column, sorted by pivot.
    basis: Vec<(usize, Vec<Scalar>)>,
}

impl RowReducer {
    pub fn new(spec: FieldSpec, cols: usize) -> Self {
        Self {
            spec,
            cols,
            basis: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `row` against the current basis; the result is zero exactly
    /// when `row` lies in the row span.
    fn reduce(&self, row: &mut [Scalar]) {
        for (pivot, b) in &self.basis {
            if row[*pivot].is_zero() {
                continue;
            }
            let factor = row[*pivot].clone();
            for (c, bv) in b.iter().enumerate() {
                if !bv.is_zero() {
                    row[c] = &row[c] - &(&factor * bv);
                }
            }
        }
    }

    /// Adds a row; returns `true` when it increased the rank.
    pub fn push_row(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        if row.iter().all(Scalar::is_zero) {
            return false;
        }
        self.reduce(&mut row);
        let Some(pivot) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = row[pivot].inverse().expect("pivot is nonzero");
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let support: Vec<usize> = (0..self.cols).filter(|&c| !row[c].is_zero()).collect();
        for (_, b) in self.basis.iter_mut() {
            if b[pivot].is_zero() {
                continue;
            }
            let factor = b[pivot].clone();
            for &c in &support {
                b[c] = &b[c] - &(&factor * &row[c]);
            }
        }
        let at = self.basis.partition_point(|(p, _)| *p < pivot);
        self.basis.insert(at, (pivot, row));
        true
    }

    /// Adds a row given as `(column, value)` pairs; repeated columns add up.
    pub fn push_sparse(&mut self, terms: &[(usize, Scalar)]) -> bool {
        if terms.is_empty() {
            return false;
        }
        let mut row = vec![self.spec.zero(); self.cols];
        for (c, v) in terms {
            row[*c] = &row[*c] + v;
        }
        self.push_row(row)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut row = v.to_vec();
        self.reduce(&mut row);
        row.iter().all(Scalar::is_zero)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|(p, _)| *p).collect()
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.basis.into_iter().map(|(_, r)| r).collect()
    }

    pub fn row_space(self) -> SubspaceBasis {
        SubspaceBasis {
            spec: self.spec,
            ambient_dim: self.cols,
            vectors: self.into_rows(),
        }
    }

    /// Null space of the accumulated rows: one vector per free column.
    pub fn null_space(&self) -> SubspaceBasis {
        let pivots = self.pivots();
        let mut reducer = RowReducer::new(self.spec, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.spec.zero(); self.cols];
            v[free] = self.spec.one();
            for (p, row) in &self.basis {
                v[*p] = -&row[free];
            }
            reducer.push_row(v);
        }
        reducer.row_space()
    }
}

/// A subspace of `F^d`, held as the rows of its reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    spec: FieldSpec,
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceQuery<'a> {
    ContainsVector(&'a [Scalar]),
    Equals(&'a SubspaceBasis),
    Dimension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceAnswer {
    Bool(bool),
    Dimension(usize),
}

impl SubspaceBasis {
    pub fn span<I>(spec: FieldSpec, ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut reducer = RowReducer::new(spec, ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::LengthMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
            if let Some(bad) = v.iter().find(|x| x.spec() != spec) {
                return Err(Error::FieldMismatch {
                    left: spec,
                    right: bad.spec(),
                });
            }
            reducer.push_row(v);
        }
        Ok(reducer.row_space())
    }

    pub fn zero(spec: FieldSpec, ambient_dim: usize) -> Self {
        Self {
            spec,
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(spec: FieldSpec, ambient_dim: usize) -> Self {
        Self {
            spec,
            ambient_dim,
            vectors: (0..ambient_dim)
                .map(|i| {
                    let mut v = vec![spec.zero(); ambient_dim];
                    v[i] = spec.one();
                    v
                })
                .collect(),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    fn reducer(&self) -> RowReducer {
        let basis = self
            .vectors
            .iter()
            .map(|v| {
                let p = v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
                (p, v.clone())
            })
            .collect();
        RowReducer {
            spec: self.spec,
            cols: self.ambient_dim,
            basis,
        }
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::LengthMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(self.reducer().contains(v))
    }

    pub fn equals(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.vectors == other.vectors)
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let mut reducer = self.reducer();
        for v in &other.vectors {
            reducer.push_row(v.clone());
        }
        Ok(reducer.row_space())
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_ambient(other)?;
        let r = other.reducer();
        Ok(self.vectors.iter().all(|v| r.contains(v)))
    }

    pub fn query(&self, q: SubspaceQuery<'_>) -> Result<SubspaceAnswer> {
        Ok(match q {
            SubspaceQuery::ContainsVector(v) => SubspaceAnswer::Bool(self.contains_vector(v)?),
            SubspaceQuery::Equals(o) => SubspaceAnswer::Bool(self.equals(o)?),
            SubspaceQuery::Dimension => SubspaceAnswer::Dimension(self.dimension()),
        })
    }

    fn check_ambient(&self, other: &SubspaceBasis) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch {
                left: self.spec,
                right: other.spec,
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::LengthMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }
}
