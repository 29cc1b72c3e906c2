use super::{LadderSpec, SectorBasis};
use crate::sparse::SparseSymmetricMatrix;
use crate::{Error, Result};

/// Sector matrix of the ladder Hamiltonian.
///
/// Per bond with coupling `J`: the diagonal gains `J * delta * s_a * s_b`
/// (`s = +-1` from the mask bits) and an antiparallel pair is swapped with
/// amplitude `2 J`, which is `sx sx + sy sy` in the Pauli convention.
/// Zero-coupling bonds are skipped so no explicit zeros are stored off the
/// diagonal.
pub fn build_hamiltonian(spec: &LadderSpec, basis: &SectorBasis) -> Result<SparseSymmetricMatrix> {
    spec.validate()?;
    if basis.n_sites() != spec.n_sites() {
        return Err(Error::InvalidSector(format!(
            "basis has {} sites, ladder has {}",
            basis.n_sites(),
            spec.n_sites()
        )));
    }
    let bonds: Vec<(usize, usize, f64)> = spec
        .bonds()
        .into_iter()
        .map(|b| (b.a, b.b, b.coupling))
        .collect();
    assemble(&bonds, spec.delta, basis)
}

pub(crate) fn assemble(
    bonds: &[(usize, usize, f64)],
    delta: f64,
    basis: &SectorBasis,
) -> Result<SparseSymmetricMatrix> {
    let rows = basis
        .states()
        .iter()
        .enumerate()
        .map(|(row, &mask)| {
            let mut entries = Vec::with_capacity(bonds.len() + 1);
            let mut diag = 0.0;
            for &(a, b, j) in bonds {
                if j == 0.0 {
                    continue;
                }
                let up_a = (mask >> a) & 1;
                let up_b = (mask >> b) & 1;
                if up_a == up_b {
                    diag += j * delta;
                } else {
                    diag -= j * delta;
                    let flipped = mask ^ (1 << a | 1 << b);
                    let col = basis
                        .rank_of(flipped)
                        .expect("pair swap conserves magnetization");
                    entries.push((col, 2.0 * j));
                }
            }
            entries.push((row, diag));
            entries
        })
        .collect();
    SparseSymmetricMatrix::from_rows(rows)
}

pub fn apply_hamiltonian(matrix: &SparseSymmetricMatrix, vector: &[f64]) -> Result<Vec<f64>> {
    matrix.apply(vector)
}
