use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fix_sign, GroundStateResult, DEGENERACY_TOL};
use crate::sparse::SparseSymmetricMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Target residual `||H v - lambda v||` for every returned pair.
    pub tol: f64,
    /// Budget of matrix-vector products over the whole solve.
    pub max_iter: usize,
    pub seed: u64,
    /// Krylov basis size that triggers a thick restart.
    pub max_krylov: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            tol: 1e-10,
            max_iter: 20_000,
            seed: 0x5eed,
            max_krylov: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RitzPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

/// Ground state and first excited level with the default pair count of two.
pub fn lanczos_extremal(
    matrix: &SparseSymmetricMatrix,
    opts: &LanczosOptions,
) -> Result<GroundStateResult> {
    let (mut pairs, iterations) = lanczos_lowest(matrix, 2, opts)?;
    let second = pairs.pop().expect("two pairs");
    let mut ground = pairs.pop().expect("two pairs");
    fix_sign(&mut ground.vector);
    Ok(GroundStateResult {
        e0: ground.value,
        e1: second.value,
        degenerate: second.value - ground.value < DEGENERACY_TOL,
        psi0: ground.vector,
        residual0: ground.residual,
        residual1: second.residual,
        iterations,
    })
}

/// The `n_pairs` lowest eigenpairs, ascending, and the number of
/// matrix-vector products used.
///
/// Each pair comes from its own thick-restart Lanczos run in the orthogonal
/// complement of the pairs already found, so a degenerate level is returned
/// once per multiplicity. Every run reorthogonalizes fully (two Gram-Schmidt
/// passes) and restarts from a fresh seeded direction on breakdown.
pub fn lanczos_lowest(
    matrix: &SparseSymmetricMatrix,
    n_pairs: usize,
    opts: &LanczosOptions,
) -> Result<(Vec<RitzPair>, usize)> {
    let dim = matrix.dim();
    if n_pairs == 0 || dim < n_pairs {
        return Err(Error::InvalidMatrix(format!(
            "dimension {dim} cannot supply {n_pairs} eigenpairs"
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidMatrix(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if opts.max_krylov < 2 {
        return Err(Error::InvalidMatrix("Krylov cap must be at least 2".into()));
    }
    let mut run = Run {
        h: matrix,
        opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        matvecs: 0,
    };
    let mut pairs: Vec<RitzPair> = Vec::with_capacity(n_pairs + 1);
    while pairs.len() < n_pairs {
        let locked: Vec<&[f64]> = pairs.iter().map(|p| p.vector.as_slice()).collect();
        let pair = run.lowest_in_complement(&locked)?;
        pairs.push(pair);
    }
    let in_order = pairs
        .windows(2)
        .all(|w| w[1].value >= w[0].value - opts.tol);
    if !in_order {
        // An earlier run settled above the true minimum; one more level in
        // the complement of everything found restores the lowest n_pairs.
        if dim > pairs.len() {
            let locked: Vec<&[f64]> = pairs.iter().map(|p| p.vector.as_slice()).collect();
            let extra = run.lowest_in_complement(&locked)?;
            pairs.push(extra);
        }
        pairs.sort_by(|a, b| a.value.total_cmp(&b.value));
        pairs.truncate(n_pairs);
    }
    Ok((pairs, run.matvecs))
}

struct Run<'a> {
    h: &'a SparseSymmetricMatrix,
    opts: &'a LanczosOptions,
    rng: ChaCha8Rng,
    matvecs: usize,
}

impl Run<'_> {
    fn lowest_in_complement(&mut self, locked: &[&[f64]]) -> Result<RitzPair> {
        let n = self.h.dim();
        let avail = n - locked.len();
        let cap = avail.min(self.opts.max_krylov);
        let accept = 0.5 * self.opts.tol;

        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(cap);
        let mut proj = DMatrix::<f64>::zeros(cap, cap);
        let mut w = vec![0.0; n];
        let mut v = self.fresh_direction(locked, &basis)?;
        let mut best_residual = f64::INFINITY;
        let mut coeffs = Vec::with_capacity(cap);

        loop {
            basis.push(v);
            let j = basis.len() - 1;
            self.h.apply_into(&basis[j], &mut w);
            self.matvecs += 1;
            project_out(&mut w, locked);

            coeffs.clear();
            coeffs.resize(j + 1, 0.0);
            for _ in 0..2 {
                for (i, b) in basis.iter().enumerate() {
                    let c = dot(b, &w);
                    coeffs[i] += c;
                    axpy(-c, b, &mut w);
                }
                project_out(&mut w, locked);
            }
            for (i, &c) in coeffs.iter().enumerate() {
                proj[(i, j)] = c;
                proj[(j, i)] = c;
            }

            let beta = norm(&w);
            let m = j + 1;
            let scale = proj.view((0, 0), (m, m)).amax().max(1.0);
            let breakdown = beta <= 1e-13 * scale;
            let exhausted = m == avail;
            let at_cap = m == cap;

            if m <= 40 || m % 8 == 0 || breakdown || exhausted || at_cap {
                let (values, vectors) = sorted_eig(&proj.view((0, 0), (m, m)).into_owned());
                let estimate = beta * vectors[(m - 1, 0)].abs();
                if estimate <= accept || breakdown || exhausted {
                    let mut y = combine(&basis, vectors.column(0).as_slice());
                    project_out(&mut y, locked);
                    let ny = norm(&y);
                    y.iter_mut().for_each(|x| *x /= ny);
                    let theta = values[0];
                    let (deflated, plain) = self.residuals(&y, theta, locked);
                    best_residual = best_residual.min(deflated);
                    if deflated <= accept {
                        return Ok(RitzPair {
                            value: theta,
                            vector: y,
                            residual: plain,
                        });
                    }
                    if exhausted {
                        // the whole complement is spanned; nothing left to add
                        return Err(Error::NotConverged {
                            iterations: self.matvecs,
                            best_residual,
                        });
                    }
                } else {
                    best_residual = best_residual.min(estimate);
                }
                if self.matvecs >= self.opts.max_iter {
                    return Err(Error::NotConverged {
                        iterations: self.matvecs,
                        best_residual,
                    });
                }
                if at_cap {
                    let keep = (cap / 2).max(1);
                    let kept: Vec<Vec<f64>> = (0..keep)
                        .map(|k| combine(&basis, vectors.column(k).as_slice()))
                        .collect();
                    basis = kept;
                    proj.fill(0.0);
                    for (k, &theta) in values.iter().take(keep).enumerate() {
                        proj[(k, k)] = theta;
                    }
                }
            } else if self.matvecs >= self.opts.max_iter {
                return Err(Error::NotConverged {
                    iterations: self.matvecs,
                    best_residual,
                });
            }

            v = if breakdown {
                self.fresh_direction(locked, &basis)?
            } else {
                w.iter().map(|x| x / beta).collect()
            };
        }
    }

    /// `(||(I - P)(H y - theta y)||, ||H y - theta y||)` with `P` the
    /// projector on the locked vectors.
    fn residuals(&mut self, y: &[f64], theta: f64, locked: &[&[f64]]) -> (f64, f64) {
        let mut r = vec![0.0; y.len()];
        self.h.apply_into(y, &mut r);
        self.matvecs += 1;
        axpy(-theta, y, &mut r);
        let plain = norm(&r);
        project_out(&mut r, locked);
        (norm(&r), plain)
    }

    /// Seeded uniform vector orthogonal to `locked` and `basis`.
    fn fresh_direction(&mut self, locked: &[&[f64]], basis: &[Vec<f64>]) -> Result<Vec<f64>> {
        let n = self.h.dim();
        for _ in 0..8 {
            let mut v: Vec<f64> = (0..n).map(|_| self.rng.random::<f64>() - 0.5).collect();
            for _ in 0..2 {
                project_out(&mut v, locked);
                for b in basis {
                    let c = dot(b, &v);
                    axpy(-c, b, &mut v);
                }
            }
            let nv = norm(&v);
            if nv > 1e-8 {
                v.iter_mut().for_each(|x| *x /= nv);
                return Ok(v);
            }
        }
        Err(Error::NotConverged {
            iterations: self.matvecs,
            best_residual: f64::INFINITY,
        })
    }
}

fn sorted_eig(t: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = t.clone().symmetric_eigen();
    let m = t.nrows();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(m, m, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

fn combine(basis: &[Vec<f64>], coeffs: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; basis[0].len()];
    for (b, &c) in basis.iter().zip(coeffs) {
        axpy(c, b, &mut y);
    }
    y
}

fn project_out(w: &mut [f64], locked: &[&[f64]]) {
    for l in locked {
        let c = dot(l, w);
        axpy(-c, l, w);
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
