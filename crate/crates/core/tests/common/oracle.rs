//! Brute-force reference computations. Everything here works on dense
//! full-Hilbert-space matrices built from explicit Kronecker products, with
//! no bit tricks shared with the library code it checks.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// Pauli matrices in the (down, up) = (bit 0, bit 1) ordering, with
/// sigma_y = i * Y_REAL.
pub fn pauli_x() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_z() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0])
}

pub fn pauli_y_real() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

/// `op` acting on `site` of an `n`-site register; site `n - 1` is the most
/// significant Kronecker factor so that bit `s` of the index is site `s`.
pub fn embed(n: usize, site: usize, op: &DMatrix<f64>) -> DMatrix<f64> {
    let mut full = DMatrix::<f64>::identity(1, 1);
    for s in (0..n).rev() {
        let factor = if s == site {
            op.clone()
        } else {
            DMatrix::identity(2, 2)
        };
        full = full.kronecker(&factor);
    }
    full
}

/// sum over bonds of J (sx sx + sy sy + delta sz sz) with Pauli operators.
pub fn full_xxz_hamiltonian(n: usize, bonds: &[(usize, usize, f64)], delta: f64) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for &(a, b, j) in bonds {
        let xx = embed(n, a, &pauli_x()) * embed(n, b, &pauli_x());
        // (i Y)(i Y) = -Y Y
        let yy = -(embed(n, a, &pauli_y_real()) * embed(n, b, &pauli_y_real()));
        let zz = embed(n, a, &pauli_z()) * embed(n, b, &pauli_z());
        h += (xx + yy + zz * delta) * j;
    }
    h
}

pub fn ring_bonds(n: usize, j: f64) -> Vec<(usize, usize, f64)> {
    (0..n).map(|i| (i, (i + 1) % n, j)).collect()
}

/// Ladder bonds with site = 2 * rung + leg, periodic along the legs.
pub fn ladder_bonds(n_rungs: usize, j_leg: f64, j_rung: f64) -> Vec<(usize, usize, f64)> {
    let mut bonds = Vec::new();
    for r in 0..n_rungs {
        for leg in 0..2 {
            bonds.push((2 * r + leg, 2 * ((r + 1) % n_rungs) + leg, j_leg));
        }
        bonds.push((2 * r, 2 * r + 1, j_rung));
    }
    bonds
}

/// Rows/columns of `full` whose index has `popcount` set bits, ascending.
pub fn sector_block(full: &DMatrix<f64>, popcount: u32) -> (DMatrix<f64>, Vec<usize>) {
    let idx: Vec<usize> = (0..full.nrows())
        .filter(|m| (*m as u32).count_ones() == popcount)
        .collect();
    let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| full[(idx[r], idx[c])]);
    (block, idx)
}

/// Eigenvalues ascending with matching eigenvector columns.
pub fn sorted_eigh(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Ground energy and state of a periodic `n`-site XXZ ring in the full space.
pub fn ring_ground_state(n: usize, j: f64, delta: f64) -> (f64, DVector<f64>) {
    let h = full_xxz_hamiltonian(n, &ring_bonds(n, j), delta);
    let (vals, vecs) = sorted_eigh(&h);
    (vals[0], vecs.column(0).into_owned())
}

/// Ground state of a ring restricted to the half-filled sector, embedded back
/// into the full space.
pub fn ring_sector_ground_state(n: usize, j: f64, delta: f64) -> (f64, Vec<f64>) {
    let h = full_xxz_hamiltonian(n, &ring_bonds(n, j), delta);
    let (block, idx) = sector_block(&h, (n / 2) as u32);
    let (vals, vecs) = sorted_eigh(&block);
    let mut full = vec![0.0; 1 << n];
    for (k, &m) in idx.iter().enumerate() {
        full[m] = vecs[(k, 0)];
    }
    (vals[0], full)
}

/// Reduced density matrix by explicit outer product and trace: element
/// (r, r') sums psi(m) psi(m') over all index pairs that agree on the traced
/// sites. `kept[0]` is the most significant qubit of the result.
pub fn naive_rdm(amps: &[f64], n: usize, kept: &[usize]) -> DMatrix<f64> {
    let k = kept.len();
    let dim = 1usize << n;
    let mut rho = DMatrix::<f64>::zeros(1 << k, 1 << k);
    let traced_mask: usize = (0..n).filter(|s| !kept.contains(s)).map(|s| 1 << s).sum();
    let local = |m: usize| -> usize {
        kept.iter()
            .enumerate()
            .map(|(p, &s)| ((m >> s) & 1) << (k - 1 - p))
            .sum()
    };
    for m in 0..dim {
        if amps[m] == 0.0 {
            continue;
        }
        for mp in 0..dim {
            if (m & traced_mask) == (mp & traced_mask) {
                rho[(local(m), local(mp))] += amps[m] * amps[mp];
            }
        }
    }
    rho
}

/// Concurrence via the general non-Hermitian eigenvalues of rho * rho_tilde.
pub fn wootters_general(rho: &DMatrix<f64>) -> f64 {
    // sigma_y (x) sigma_y = (i)^2 Y (x) Y = -Y (x) Y, real.
    let yy = -(pauli_y_real().kronecker(&pauli_y_real()));
    let rho_tilde = &yy * rho * &yy;
    let prod = rho * rho_tilde;
    let mut lambdas: Vec<f64> = prod
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Sector block of the XXZ Hamiltonian built by applying Pauli operators to
/// basis kets one at a time (sigma_x flips a bit, sigma_y flips it with
/// phase +-i, sigma_z reads it), without Kronecker products. Rows follow
/// ascending index order within the popcount class.
pub fn pauli_action_hamiltonian(
    n: usize,
    bonds: &[(usize, usize, f64)],
    delta: f64,
    popcount: u32,
) -> DMatrix<f64> {
    let idx: Vec<usize> = (0..1usize << n)
        .filter(|m| (*m as u32).count_ones() == popcount)
        .collect();
    let pos = |m: usize| idx.binary_search(&m).unwrap();
    let z = |m: usize, s: usize| if (m >> s) & 1 == 1 { 1.0 } else { -1.0 };
    // sigma_y |up> = -i |down>, sigma_y |down> = i |up>, as (phase, new ket)
    let y_phase = |m: usize, s: usize| if (m >> s) & 1 == 1 { -1.0 } else { 1.0 };
    let mut h = DMatrix::<f64>::zeros(idx.len(), idx.len());
    for (col, &m) in idx.iter().enumerate() {
        for &(a, b, j) in bonds {
            h[(col, col)] += j * delta * z(m, a) * z(m, b);
            let flipped = m ^ (1 << a) ^ (1 << b);
            if (flipped as u32).count_ones() != popcount {
                continue;
            }
            let row = pos(flipped);
            // xx contributes 1; yy contributes (i * phase_a)(i * phase_b)
            let yy = -(y_phase(m, a) * y_phase(m, b));
            h[(row, col)] += j * (1.0 + yy);
        }
    }
    h
}
