//! Lowest eigenpairs of the sector Hamiltonian.

mod dense;
mod lanczos;

pub use dense::{dense_eigensolve_oracle, DenseSpectrum, DENSE_DIM_LIMIT};
pub use lanczos::{lanczos_extremal, lanczos_lowest, LanczosOptions, RitzPair};

use crate::ladder::LadderSpec;

/// Eigenvalue splittings below this mark the ground state as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Two lowest levels of a sector Hamiltonian and the ground state.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateResult {
    pub e0: f64,
    pub e1: f64,
    /// Unit norm; the first amplitude with magnitude above `SIGN_EPS` is
    /// positive.
    pub psi0: Vec<f64>,
    pub residual0: f64,
    pub residual1: f64,
    pub degenerate: bool,
    /// Matrix-vector products spent.
    pub iterations: usize,
}

/// Amplitudes at or below this magnitude are skipped when fixing the sign.
pub const SIGN_EPS: f64 = 1e-12;

pub(crate) fn fix_sign(v: &mut [f64]) {
    if let Some(first) = v.iter().find(|x| x.abs() > SIGN_EPS) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// `(e1 - e0) / (|j_leg| N)`, reported as a nonnegative magnitude.
pub fn energy_gap_per_spin(result: &GroundStateResult, spec: &LadderSpec) -> f64 {
    let scale = spec.j_leg.abs() * spec.n_sites() as f64;
    ((result.e1 - result.e0) / scale).max(0.0)
}
