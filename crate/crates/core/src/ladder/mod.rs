//! Ladder geometry, the fixed-magnetization basis and the sector Hamiltonian.

mod basis;
mod hamiltonian;
mod spec;

pub use basis::{enumerate_sector_basis, SectorBasis};
pub use hamiltonian::{apply_hamiltonian, build_hamiltonian};
pub use spec::{site_index, Bond, BondKind, Boundary, LadderSpec, OperatorConvention};
