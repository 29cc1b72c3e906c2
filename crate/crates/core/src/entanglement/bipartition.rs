use crate::bits::{binomial, masks_with_popcount};
use crate::{Error, Result};

/// A split of `n_sites` qubits into `A` and its complement `B`, stored in
/// canonical form with site 0 in `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    part_a: u32,
    n_sites: usize,
}

impl Bipartition {
    /// Canonicalizes `mask` (complementing it if site 0 is not in it).
    pub fn new(mask: u32, n_sites: usize) -> Result<Self> {
        if !(2..=24).contains(&n_sites) {
            return Err(Error::InvalidSubset(format!(
                "bipartitions need 2..=24 sites, got {n_sites}"
            )));
        }
        let all = (1u32 << n_sites) - 1;
        if mask == 0 || mask & !all != 0 || mask == all {
            return Err(Error::InvalidSubset(format!(
                "{mask:#x} is not a nonempty proper subset of {n_sites} sites"
            )));
        }
        let part_a = if mask & 1 == 1 { mask } else { all & !mask };
        Ok(Bipartition { part_a, n_sites })
    }

    pub fn part_a(&self) -> u32 {
        self.part_a
    }

    pub fn part_b(&self) -> u32 {
        ((1u32 << self.n_sites) - 1) & !self.part_a
    }

    pub fn size_a(&self) -> usize {
        self.part_a.count_ones() as usize
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }
}

/// Number of canonical bipartitions with `|A| <= max_size_a`.
pub fn bipartition_count(n_sites: usize, max_size_a: Option<usize>) -> usize {
    if n_sites < 2 {
        return 0;
    }
    let top = max_size_a.unwrap_or(n_sites - 1).min(n_sites - 1);
    (1..=top).map(|k| binomial(n_sites - 1, k - 1)).sum()
}

/// Canonical bipartitions (site 0 in `A`) ordered by `|A|`, then by mask.
/// `None` yields all `2^(n-1) - 1`; `Some(m)` keeps only `|A| <= m`.
pub fn enumerate_bipartitions(
    n_sites: usize,
    max_size_a: Option<usize>,
) -> impl Iterator<Item = Bipartition> {
    let top = if (2..=24).contains(&n_sites) {
        max_size_a.unwrap_or(n_sites - 1).min(n_sites - 1)
    } else {
        0
    };
    (1..=top).flat_map(move |k| {
        masks_with_popcount(n_sites - 1, k - 1)
            .into_iter()
            .map(move |rest| Bipartition {
                part_a: rest << 1 | 1,
                n_sites,
            })
    })
}
