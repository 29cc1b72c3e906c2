use nalgebra::{DMatrix, Matrix4};

use crate::state::DensityMatrix;
use crate::{Error, Result};

/// Negative eigenvalues of rho down to this size are rounding
/// noise and are set to zero before square roots.
pub const CLAMP_TOL: f64 = 1e-12;

/// Eigenvalues of rho at or below this are treated as exact zeros.
const RANK_TOL: f64 = 1e-15;
const SYMMETRY_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-8;
const PSD_TOL: f64 = 1e-10;

/// Wootters concurrence of a real two-qubit density matrix.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.n_sub() != 2 {
        return Err(Error::InvalidDensityMatrix(format!(
            "concurrence needs a two-qubit state, got {} qubits",
            rho.n_sub()
        )));
    }
    let m = rho.matrix();
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidDensityMatrix("non-finite entry".into()));
    }
    let asym = rho.symmetry_error();
    if asym > SYMMETRY_TOL {
        return Err(Error::InvalidDensityMatrix(format!("asymmetry {asym:e}")));
    }
    let tr = rho.trace();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
    }
    let min_eig = rho.eigenvalues()[0];
    if min_eig < -PSD_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "negative eigenvalue {min_eig:e}"
        )));
    }
    let mut lambdas = if is_x_shaped(m) {
        x_state_roots(m)
    } else {
        general_roots(m)?
    };
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0))
}

/// Nonzero entries only on the diagonal and antidiagonal.
fn is_x_shaped(m: &DMatrix<f64>) -> bool {
    (0..4).all(|r| (0..4).all(|c| r == c || r + c == 3 || m[(r, c)] == 0.0))
}

/// For an X state `rho * rho_tilde` splits into two 2x2 blocks whose
/// eigenvalue square roots are `|w| +- sqrt(ad)` and `|z| +- sqrt(bc)`.
fn x_state_roots(m: &DMatrix<f64>) -> [f64; 4] {
    let (a, b, c, d) = (m[(0, 0)], m[(1, 1)], m[(2, 2)], m[(3, 3)]);
    let w = 0.5 * (m[(0, 3)] + m[(3, 0)]).abs();
    let z = 0.5 * (m[(1, 2)] + m[(2, 1)]).abs();
    let ad = (a * d).max(0.0).sqrt();
    let bc = (b * c).max(0.0).sqrt();
    [w + ad, (w - ad).abs(), z + bc, (z - bc).abs()]
}

/// `A = sqrt(rho) Y sqrt(rho)` is symmetric with `A^2 = sqrt(rho) rho_tilde
/// sqrt(rho)`, which shares its spectrum with `rho rho_tilde`. Taking `|eig A|`
/// avoids square roots of near-zero eigenvalues of `rho rho_tilde`.
fn general_roots(m: &DMatrix<f64>) -> Result<[f64; 4]> {
    let rho = Matrix4::from_fn(|r, c| 0.5 * (m[(r, c)] + m[(c, r)]));
    // sigma_y (x) sigma_y is real: -1 on |00><11| and |11><00|, +1 on
    // |01><10| and |10><01|.
    let yy = Matrix4::new(
        0.0, 0.0, 0.0, -1.0, //
        0.0, 0.0, 1.0, 0.0, //
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0,
    );
    let eig = rho.symmetric_eigen();
    if let Some(&v) = eig.eigenvalues.iter().find(|&&v| v < -CLAMP_TOL) {
        return Err(Error::InvalidDensityMatrix(format!("eigenvalue {v:e}")));
    }
    let sqrt_vals = eig
        .eigenvalues
        .map(|v| if v <= RANK_TOL { 0.0 } else { v.sqrt() });
    let sqrt_rho =
        eig.eigenvectors * Matrix4::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose();
    let a = sqrt_rho * yy * sqrt_rho;
    let a = 0.5 * (a + a.transpose());
    let mut out = [0.0; 4];
    for (slot, mu) in out.iter_mut().zip(a.symmetric_eigenvalues().iter()) {
        *slot = mu.abs();
    }
    Ok(out)
}
