use nalgebra::DMatrix;

use crate::sparse::SparseSymmetricMatrix;
use crate::{Error, Result};

pub const DENSE_DIM_LIMIT: usize = 4000;

/// Full spectrum, ascending, with eigenvectors as matching columns.
#[derive(Debug, Clone)]
pub struct DenseSpectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl DenseSpectrum {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k).iter().copied().collect()
    }
}

/// Reference eigendecomposition for small sector matrices.
pub fn dense_eigensolve_oracle(matrix: &SparseSymmetricMatrix) -> Result<DenseSpectrum> {
    let dim = matrix.dim();
    if dim > DENSE_DIM_LIMIT {
        return Err(Error::DimensionGuard {
            dim,
            limit: DENSE_DIM_LIMIT,
        });
    }
    let eig = matrix.to_dense().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(DenseSpectrum { values, vectors })
}
