//! Exact diagonalization of periodic two-leg spin-1/2 XXZ ladders in the
//! zero-magnetization sector, with the entanglement diagnostics used to map
//! their ground-state phase diagram: nearest-neighbour concurrence along legs
//! and rungs, the generalized geometric measure of genuine multipartite
//! entanglement, connected spin correlators and the excitation gap.
//!
//! The pipeline for one point of the coupling/anisotropy plane is
//!
//! 1. [`LadderSpec`] describes the Hamiltonian (Pauli-operator convention),
//! 2. [`SectorBasis`] enumerates the fixed-magnetization bit-mask basis,
//! 3. [`build_hamiltonian`] assembles the real symmetric sector matrix,
//! 4. [`lanczos_extremal`] finds the two lowest eigenpairs,
//! 5. [`embed_to_full`] lifts the ground state into the full Hilbert space,
//!    where [`two_site_rdm`], [`concurrence`], [`spin_correlation`] and
//!    [`ggm`] evaluate the observables.
//!
//! [`scan`] drives whole grids and the finite-size study; [`io`] holds the
//! CSV, config, heatmap and state-cache formats used by the CLI.

pub mod bits;
pub mod eigen;
pub mod entanglement;
mod error;
pub mod io;
pub mod ladder;
pub mod scan;
pub mod sparse;
pub mod state;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
mod oracle;

pub use eigen::{
    dense_eigensolve_oracle, energy_gap_per_spin, lanczos_extremal, DenseSpectrum,
    GroundStateResult, LanczosOptions, DEGENERACY_TOL,
};
pub use entanglement::{
    concurrence, enumerate_bipartitions, ggm, max_schmidt_sq, Bipartition, GgmResult,
};
pub use error::{Error, Result};
pub use ladder::{
    apply_hamiltonian, build_hamiltonian, enumerate_sector_basis, site_index, Boundary,
    LadderSpec, OperatorConvention, SectorBasis,
};
pub use scan::{
    couplings_from_point, evaluate_point, run_phase_scan, run_scaling_study, AxisRange, LegMode,
    Observable, ObservableSet, ScalingRow, ScanConfig, ScanRecord, SolverSettings,
};
pub use sparse::SparseSymmetricMatrix;
pub use state::{
    embed_to_full, partial_trace, spin_correlation, two_site_rdm, DensityMatrix,
    FullStateVector, PauliAxis,
};
