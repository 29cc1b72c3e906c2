//! Full-register state vectors, reduced density matrices and connected spin
//! correlators.
//!
//! Amplitudes are real throughout: the sector Hamiltonian is real symmetric,
//! so its eigenvectors can be chosen real. Bit `s` of a basis index is site
//! `s`, set meaning spin up (sigma_z = +1).
//!
//! Reduced density matrices order their qubits by the site list they were
//! built from, first site most significant. [`partial_trace`] lists the kept
//! sites ascending; [`two_site_rdm`] uses `(site_a, site_b)` as given.

use nalgebra::DMatrix;

use crate::bits::BitGather;
use crate::ladder::SectorBasis;
use crate::{Error, Result};

/// Registers are addressed with `u32` masks.
pub const MAX_STATE_SITES: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct FullStateVector {
    n_sites: usize,
    amplitudes: Vec<f64>,
}

impl FullStateVector {
    pub fn new(n_sites: usize, amplitudes: Vec<f64>) -> Result<Self> {
        if n_sites == 0 || n_sites > MAX_STATE_SITES {
            return Err(Error::InvalidState(format!(
                "register size must be in 1..={MAX_STATE_SITES}, got {n_sites}"
            )));
        }
        if amplitudes.len() != 1 << n_sites {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_sites,
                actual: amplitudes.len(),
            });
        }
        Ok(FullStateVector {
            n_sites,
            amplitudes,
        })
    }

    pub fn basis_state(n_sites: usize, mask: u32) -> Result<Self> {
        let mut amps = vec![0.0; 1 << n_sites.min(MAX_STATE_SITES)];
        *amps
            .get_mut(mask as usize)
            .ok_or_else(|| Error::InvalidState(format!("mask {mask:#x} out of range")))? = 1.0;
        Self::new(n_sites, amps)
    }

    /// (|0...0> + |1...1>) / sqrt 2
    pub fn ghz(n_sites: usize) -> Result<Self> {
        let mut amps = vec![0.0; 1 << n_sites.min(MAX_STATE_SITES)];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        amps[0] = h;
        *amps.last_mut().expect("nonempty") = h;
        Self::new(n_sites, amps)
    }

    /// Equal superposition of all single-up-spin states.
    pub fn w_state(n_sites: usize) -> Result<Self> {
        let mut amps = vec![0.0; 1 << n_sites.min(MAX_STATE_SITES)];
        let a = 1.0 / (n_sites as f64).sqrt();
        for s in 0..n_sites {
            amps[1 << s] = a;
        }
        Self::new(n_sites, amps)
    }

    /// Tensor product with `self` on the low sites and `other` above them.
    pub fn tensor(&self, other: &FullStateVector) -> Result<Self> {
        let n = self.n_sites + other.n_sites;
        if n > MAX_STATE_SITES {
            return Err(Error::InvalidState(format!("{n} sites exceed the register limit")));
        }
        let mut amps = vec![0.0; 1 << n];
        for (hi, &b) in other.amplitudes.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            for (lo, &a) in self.amplitudes.iter().enumerate() {
                amps[hi << self.n_sites | lo] = a * b;
            }
        }
        Self::new(n, amps)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Nonzero amplitudes as `(mask, amplitude)`, ascending mask.
    pub fn support(&self) -> Vec<(u32, f64)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(m, &a)| (m as u32, a))
            .collect()
    }
}

/// Places sector amplitudes at their masks; every other amplitude is zero.
pub fn embed_to_full(psi_sector: &[f64], basis: &SectorBasis) -> Result<FullStateVector> {
    if psi_sector.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            actual: psi_sector.len(),
        });
    }
    let mut amps = vec![0.0; 1 << basis.n_sites()];
    for (&mask, &a) in basis.states().iter().zip(psi_sector) {
        amps[mask as usize] = a;
    }
    FullStateVector::new(basis.n_sites(), amps)
}

/// Sector amplitudes of a full state, dropping everything outside the sector.
pub fn project_to_sector(state: &FullStateVector, basis: &SectorBasis) -> Result<Vec<f64>> {
    if state.n_sites() != basis.n_sites() {
        return Err(Error::DimensionMismatch {
            expected: basis.n_sites(),
            actual: state.n_sites(),
        });
    }
    Ok(basis
        .states()
        .iter()
        .map(|&m| state.amplitudes[m as usize])
        .collect())
}

/// Real symmetric reduced state of `sites.len()` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    sites: Vec<usize>,
    matrix: DMatrix<f64>,
}

impl DensityMatrix {
    /// Wraps an explicit matrix; `sites` only labels the qubits.
    pub fn from_matrix(sites: Vec<usize>, matrix: DMatrix<f64>) -> Result<Self> {
        let dim = 1usize << sites.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::InvalidDensityMatrix(format!(
                "{} qubits need a {dim}x{dim} matrix, got {}x{}",
                sites.len(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(DensityMatrix { sites, matrix })
    }

    pub fn n_sub(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.matrix[(r, c)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn symmetry_error(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.matrix.symmetric_eigenvalues().iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Traces out the qubit at `position` (0 = most significant).
    pub fn trace_out(&self, position: usize) -> Result<DensityMatrix> {
        let k = self.n_sub();
        if position >= k || k < 2 {
            return Err(Error::InvalidSubset(format!(
                "cannot trace qubit {position} of a {k}-qubit state"
            )));
        }
        let bit = k - 1 - position;
        let low = (1usize << bit) - 1;
        let squeeze = |i: usize| (i >> (bit + 1)) << bit | (i & low);
        let dim = 1 << (k - 1);
        let mut out = DMatrix::zeros(dim, dim);
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                if (r >> bit) & 1 == (c >> bit) & 1 {
                    out[(squeeze(r), squeeze(c))] += self.matrix[(r, c)];
                }
            }
        }
        let mut sites = self.sites.clone();
        sites.remove(position);
        Ok(DensityMatrix { sites, matrix: out })
    }
}

/// `Tr_B |psi><psi|` for the kept sites in `subset` (bit mask), ascending site
/// order, most significant first.
pub fn partial_trace(state: &FullStateVector, subset: u32) -> Result<DensityMatrix> {
    let n = state.n_sites();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    if subset == 0 || subset & !all != 0 || subset == all {
        return Err(Error::InvalidSubset(format!(
            "kept sites {subset:#x} must be a nonempty proper subset of {n} sites"
        )));
    }
    let sites: Vec<usize> = (0..n).filter(|&s| subset >> s & 1 == 1).collect();
    Ok(reduced_state(state, &sites))
}

/// Two-qubit reduced state with `site_a` as the most significant qubit.
pub fn two_site_rdm(state: &FullStateVector, site_a: usize, site_b: usize) -> Result<DensityMatrix> {
    let n = state.n_sites();
    if site_a == site_b || site_a >= n || site_b >= n {
        return Err(Error::InvalidSubset(format!(
            "sites ({site_a}, {site_b}) must be distinct and below {n}"
        )));
    }
    Ok(reduced_state(state, &[site_a, site_b]))
}

/// Gathers amplitudes into a (kept x traced) matrix by bit extraction and
/// returns its row Gram matrix.
pub(crate) fn reduced_state(state: &FullStateVector, sites: &[usize]) -> DensityMatrix {
    let n = state.n_sites();
    let k = sites.len();
    let traced: Vec<usize> = (0..n).filter(|s| !sites.contains(s)).collect();
    let rows = BitGather::new(sites, n);
    let cols = BitGather::new(&traced, n);
    let n_rows = 1usize << k;
    let n_cols = 1usize << traced.len();
    // column-major: each traced configuration owns a contiguous column
    let mut reshaped = vec![0.0; n_rows * n_cols];
    for (m, &a) in state.amplitudes.iter().enumerate() {
        if a != 0.0 {
            let m = m as u32;
            reshaped[cols.gather(m) as usize * n_rows + rows.gather(m) as usize] = a;
        }
    }
    let mut rho = DMatrix::<f64>::zeros(n_rows, n_rows);
    for col in reshaped.chunks_exact(n_rows) {
        for (r, &x) in col.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (c, &y) in col.iter().enumerate().skip(r) {
                rho[(r, c)] += x * y;
            }
        }
    }
    for r in 0..n_rows {
        for c in 0..r {
            rho[(r, c)] = rho[(c, r)];
        }
    }
    DensityMatrix {
        sites: sites.to_vec(),
        matrix: rho,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
}

/// `<sigma_axis>` of the qubit at `position` of a reduced state.
pub fn single_site_expectation(rho: &DensityMatrix, position: usize, axis: PauliAxis) -> f64 {
    let bit = rho.n_sub() - 1 - position;
    let m = rho.matrix();
    (0..rho.dim())
        .map(|i| match axis {
            PauliAxis::Z => {
                if (i >> bit) & 1 == 1 {
                    m[(i, i)]
                } else {
                    -m[(i, i)]
                }
            }
            PauliAxis::X => m[(i, i ^ (1 << bit))],
            // sigma_y is imaginary antisymmetric; its trace against a real
            // symmetric matrix vanishes identically.
            PauliAxis::Y => 0.0,
        })
        .sum()
}

/// `<sigma_a (x) sigma_b>` on a two-qubit state for real-valued operator
/// products. Mixed products with exactly one sigma_y are imaginary
/// antisymmetric and have zero expectation on real states.
pub fn pair_expectation(rho: &DensityMatrix, axis_a: PauliAxis, axis_b: PauliAxis) -> f64 {
    debug_assert_eq!(rho.n_sub(), 2);
    let m = rho.matrix();
    // index bits: 2 = qubit a, 1 = qubit b
    let flip = |axis: PauliAxis, bit: usize| match axis {
        PauliAxis::Z => 0,
        _ => bit,
    };
    match (axis_a == PauliAxis::Y, axis_b == PauliAxis::Y) {
        (true, false) | (false, true) => 0.0,
        (ya, _) => {
            let mask = flip(axis_a, 2) | flip(axis_b, 1);
            (0..4)
                .map(|i| {
                    let ba = (i >> 1) & 1;
                    let bb = i & 1;
                    let mut sign = 1.0;
                    if axis_a == PauliAxis::Z && ba == 0 {
                        sign = -sign;
                    }
                    if axis_b == PauliAxis::Z && bb == 0 {
                        sign = -sign;
                    }
                    if ya {
                        // (i Y)(x)(i Y) = -Y(x)Y, Y = [[0, 1], [-1, 0]] in (down, up)
                        // <j| Y(x)Y |i> picks up -1 per qubit whose bit was 1
                        let s_a = if ba == 1 { -1.0 } else { 1.0 };
                        let s_b = if bb == 1 { -1.0 } else { 1.0 };
                        sign = -s_a * s_b;
                    }
                    sign * m[(i, i ^ mask)]
                })
                .sum()
        }
    }
}

/// Connected correlator `<s_a s_b> - <s_a><s_b>` from a two-qubit state.
pub fn connected_correlation(rho: &DensityMatrix, axis: PauliAxis) -> f64 {
    connected_cross_correlation(rho, axis, axis)
}

pub fn connected_cross_correlation(rho: &DensityMatrix, axis_a: PauliAxis, axis_b: PauliAxis) -> f64 {
    pair_expectation(rho, axis_a, axis_b)
        - single_site_expectation(rho, 0, axis_a) * single_site_expectation(rho, 1, axis_b)
}

pub fn spin_correlation(
    state: &FullStateVector,
    site_i: usize,
    site_j: usize,
    axis: PauliAxis,
) -> Result<f64> {
    let rho = two_site_rdm(state, site_i, site_j)?;
    Ok(connected_correlation(&rho, axis))
}
