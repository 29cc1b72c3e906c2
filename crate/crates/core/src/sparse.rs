//! Compressed-row storage for real symmetric matrices.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::{Error, Result};

/// Entries whose mirror differs by more than this are rejected.
pub const SYMMETRY_TOL: f64 = 1e-14;

/// Row count above which matrix-vector products are split across the rayon
/// pool. Each output row is still summed sequentially in column order.
const PARALLEL_ROWS: usize = 4096;

/// Real symmetric matrix in CSR layout. Both triangles are stored, columns
/// ascending within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetricMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseSymmetricMatrix {
    /// Builds from per-row `(column, value)` lists. Columns are sorted;
    /// repeated columns, out-of-range columns and asymmetric patterns are
    /// rejected.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for (r, mut row) in rows.into_iter().enumerate() {
            row.sort_by_key(|&(c, _)| c);
            for w in row.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::InvalidMatrix(format!(
                        "duplicate entry ({r}, {})",
                        w[0].0
                    )));
                }
            }
            for (c, v) in row {
                if c >= dim {
                    return Err(Error::InvalidMatrix(format!(
                        "column {c} out of range in row {r}"
                    )));
                }
                if !v.is_finite() {
                    return Err(Error::InvalidMatrix(format!("non-finite entry ({r}, {c})")));
                }
                cols.push(c as u32);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        let m = SparseSymmetricMatrix {
            dim,
            row_ptr,
            cols,
            vals,
        };
        m.check_symmetric(SYMMETRY_TOL)?;
        Ok(m)
    }

    pub fn identity(dim: usize) -> Self {
        SparseSymmetricMatrix {
            dim,
            row_ptr: (0..=dim).collect(),
            cols: (0..dim as u32).collect(),
            vals: vec![1.0; dim],
        }
    }

    /// Keeps every nonzero entry of a dense matrix.
    pub fn from_dense(dense: &DMatrix<f64>) -> Result<Self> {
        if dense.nrows() != dense.ncols() {
            return Err(Error::InvalidMatrix("dense matrix not square".into()));
        }
        let rows = (0..dense.nrows())
            .map(|r| {
                (0..dense.ncols())
                    .filter(|&c| dense[(r, c)] != 0.0)
                    .map(|c| (c, dense[(r, c)]))
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .zip(&self.vals[span])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&(c as u32)) {
            Ok(k) => self.vals[span.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                let span = self.row_ptr[c]..self.row_ptr[c + 1];
                match self.cols[span.clone()].binary_search(&(r as u32)) {
                    Ok(k) if (self.vals[span.start + k] - v).abs() <= tol => {}
                    _ => return Err(Error::NotSymmetric { row: r, col: c }),
                }
            }
        }
        Ok(())
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        let mut y = vec![0.0; self.dim];
        self.apply_into(x, &mut y);
        Ok(y)
    }

    /// Unchecked kernel; slices must have length `dim`.
    pub(crate) fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let row_dot = |r: usize| {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k] as usize];
            }
            acc
        };
        if self.dim >= PARALLEL_ROWS {
            y.par_iter_mut()
                .with_min_len(512)
                .enumerate()
                .for_each(|(r, out)| *out = row_dot(r));
        } else {
            for (r, out) in y.iter_mut().enumerate() {
                *out = row_dot(r);
            }
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                d[(r, c)] = v;
            }
        }
        d
    }
}
