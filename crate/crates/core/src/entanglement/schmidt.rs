//! Largest squared Schmidt coefficient across a cut, from the Gram matrix
//! of the reshaped amplitude array on the smaller side.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{binomial, popcount_rank_table, BitGather};
use crate::state::FullStateVector;

/// Residual `||G v - lambda v||` at which power iteration stops.
pub const POWER_TOL: f64 = 1e-12;
/// Gram matrices up to this dimension get a full symmetric eigensolve.
const DENSE_EIG_DIM: usize = 64;
const POWER_MAX_ITER: usize = 20_000;
const POWER_SEED: u64 = 0x9e37_79b9;
const BOUND_SLACK: f64 = 1e-10;

/// Largest eigenvalue of a symmetric positive semidefinite matrix.
pub fn largest_eigenvalue(g: &DMatrix<f64>) -> f64 {
    let n = g.nrows();
    if n == 0 {
        return 0.0;
    }
    if n == 1 {
        return g[(0, 0)];
    }
    if n <= DENSE_EIG_DIM {
        return g.clone().symmetric_eigenvalues().max();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(POWER_SEED);
    let mut v = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
    v /= v.norm();
    let mut best = 0.0f64;
    for _ in 0..POWER_MAX_ITER {
        let w = g * &v;
        let lambda = v.dot(&w);
        best = best.max(lambda);
        let residual = (&w - &v * lambda).norm();
        let nw = w.norm();
        if residual <= POWER_TOL || nw == 0.0 {
            break;
        }
        v = w / nw;
    }
    best
}

/// Precomputed state data reused across every bipartition of one state.
pub(crate) struct SchmidtEngine<'a> {
    n_sites: usize,
    amplitudes: &'a [f64],
    support: Vec<(u32, f64)>,
    /// Common popcount of every supported basis state, if there is one.
    popcount: Option<usize>,
    /// `rank[k][mask]`: index of `mask` among `k`-bit masks of equal weight.
    rank: Vec<Vec<u32>>,
}

impl<'a> SchmidtEngine<'a> {
    pub(crate) fn new(state: &'a FullStateVector) -> Self {
        let n = state.n_sites();
        let support = state.support();
        let popcount = support
            .first()
            .map(|&(m, _)| m.count_ones())
            .filter(|&p| support.iter().all(|&(m, _)| m.count_ones() == p))
            .map(|p| p as usize);
        let rank = if popcount.is_some() {
            (0..=n).map(popcount_rank_table).collect()
        } else {
            Vec::new()
        };
        SchmidtEngine {
            n_sites: n,
            amplitudes: state.amplitudes(),
            support,
            popcount,
            rank,
        }
    }

    /// Any nonempty proper subset works; the Gram matrix is always built on
    /// whichever side has fewer sites.
    pub(crate) fn max_schmidt_sq(&self, part_a: u32) -> f64 {
        self.max_schmidt_sq_above(part_a, 0.0)
    }

    /// Exact when the result is at least `floor`. Otherwise the true value
    /// is known to lie below `floor` and some smaller lower bound is
    /// returned, which lets a search skip cuts that cannot win.
    pub(crate) fn max_schmidt_sq_above(&self, part_a: u32, floor: f64) -> f64 {
        let all = (1u32 << self.n_sites) - 1;
        let part_b = all & !part_a;
        let (small, large) = if part_a.count_ones() <= part_b.count_ones() {
            (part_a, part_b)
        } else {
            (part_b, part_a)
        };
        match self.popcount {
            Some(p) => self.blocked(small, large, p, floor),
            None if self.support.is_empty() => 0.0,
            None => self.dense(small, large),
        }
    }

    /// With a definite total popcount, rho_small is block diagonal in the
    /// popcount of the small side. Each block is the Gram matrix of a
    /// (C(ks, j) x C(kl, p - j)) slab. A block's largest eigenvalue is
    /// bounded by its trace and by its Frobenius norm, so blocks are visited
    /// heaviest first and skipped once they cannot beat the running maximum
    /// or `floor`.
    fn blocked(&self, small: u32, large: u32, p: usize, floor: f64) -> f64 {
        let ks = small.count_ones() as usize;
        let kl = large.count_ones() as usize;
        let mut weight = vec![0.0; ks + 1];
        for &(m, a) in &self.support {
            weight[(m & small).count_ones() as usize] += a * a;
        }
        let mut order: Vec<usize> = (0..=ks).filter(|&j| weight[j] > 0.0).collect();
        order.sort_by(|&x, &y| weight[y].total_cmp(&weight[x]).then(x.cmp(&y)));
        if order.first().is_none_or(|&j| below(weight[j], floor)) {
            return 0.0;
        }

        let gs = BitGather::ascending(small, self.n_sites);
        let gl = BitGather::ascending(large, self.n_sites);
        let mut shape = vec![(0usize, 0usize); ks + 1];
        let mut offset = vec![0usize; ks + 2];
        for j in 0..=ks {
            let cols = if p >= j && p - j <= kl {
                binomial(kl, p - j)
            } else {
                0
            };
            shape[j] = (binomial(ks, j), cols);
            offset[j + 1] = offset[j] + shape[j].0 * cols;
        }
        let mut slab = vec![0.0; offset[ks + 1]];
        for &(m, a) in &self.support {
            let s = gs.gather(m);
            let j = s.count_ones() as usize;
            let r = self.rank[ks][s as usize] as usize;
            let c = self.rank[kl][gl.gather(m) as usize] as usize;
            slab[offset[j] + c * shape[j].0 + r] = a;
        }
        let mut best = 0.0f64;
        for j in order {
            if weight[j] <= best || below(weight[j], floor) {
                break;
            }
            let (rows, cols) = shape[j];
            let g = gram(&slab[offset[j]..offset[j + 1]], rows, cols);
            let frobenius = g.norm();
            if frobenius <= best || below(frobenius, floor) {
                continue;
            }
            best = best.max(largest_eigenvalue(&g));
        }
        best
    }

    fn dense(&self, small: u32, large: u32) -> f64 {
        let rows = 1usize << small.count_ones();
        let cols = 1usize << large.count_ones();
        let gs = BitGather::ascending(small, self.n_sites);
        let gl = BitGather::ascending(large, self.n_sites);
        let mut slab = vec![0.0; rows * cols];
        for (m, &a) in self.amplitudes.iter().enumerate() {
            if a != 0.0 {
                let m = m as u32;
                slab[gl.gather(m) as usize * rows + gs.gather(m) as usize] = a;
            }
        }
        largest_eigenvalue(&gram(&slab, rows, cols))
    }
}

/// `bound` is an upper bound that is tight for rank-one blocks, where the
/// eigensolver may land a few ulps above it.
fn below(bound: f64, floor: f64) -> bool {
    bound * (1.0 + BOUND_SLACK) < floor
}

/// Gram matrix of a column-major `rows x cols` slab on its smaller side;
/// both choices share the nonzero spectrum.
fn gram(slab: &[f64], rows: usize, cols: usize) -> DMatrix<f64> {
    if rows <= cols {
        let mut g = DMatrix::<f64>::zeros(rows, rows);
        for col in slab.chunks_exact(rows) {
            for (r, &x) in col.iter().enumerate() {
                if x == 0.0 {
                    continue;
                }
                for (c, &y) in col.iter().enumerate().skip(r) {
                    g[(r, c)] += x * y;
                }
            }
        }
        g.fill_lower_triangle_with_upper_triangle();
        g
    } else {
        let columns: Vec<&[f64]> = slab.chunks_exact(rows).collect();
        let mut g = DMatrix::<f64>::zeros(cols, cols);
        for a in 0..cols {
            for b in a..cols {
                let dot: f64 = columns[a].iter().zip(columns[b]).map(|(x, y)| x * y).sum();
                g[(a, b)] = dot;
                g[(b, a)] = dot;
            }
        }
        g
    }
}
