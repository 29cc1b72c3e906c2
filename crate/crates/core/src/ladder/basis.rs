use crate::bits::{binomial, masks_with_popcount};
use crate::{Error, Result};

const NOT_IN_SECTOR: u32 = u32::MAX;

/// Largest register the dense rank table is built for.
pub const MAX_SITES: usize = 24;

/// Fixed-magnetization basis: every `n_sites`-bit mask with
/// `(n_sites + sz_total) / 2` up spins, ascending. Bit `s` set means site `s`
/// is up (sigma_z = +1).
#[derive(Debug, Clone)]
pub struct SectorBasis {
    n_sites: usize,
    sz_total: i32,
    states: Vec<u32>,
    rank: Vec<u32>,
}

impl SectorBasis {
    pub fn new(n_sites: usize, sz_total: i32) -> Result<Self> {
        if n_sites == 0 || n_sites % 2 != 0 || n_sites > MAX_SITES {
            return Err(Error::InvalidSector(format!(
                "n_sites must be even and in 2..={MAX_SITES}, got {n_sites}"
            )));
        }
        if sz_total.unsigned_abs() as usize > n_sites {
            return Err(Error::InvalidSector(format!(
                "|sz_total| = {} exceeds {n_sites} sites",
                sz_total.abs()
            )));
        }
        if (n_sites as i32 + sz_total) % 2 != 0 {
            return Err(Error::InvalidSector(format!(
                "sz_total {sz_total} has the wrong parity for {n_sites} sites"
            )));
        }
        let n_up = ((n_sites as i32 + sz_total) / 2) as usize;
        let states = masks_with_popcount(n_sites, n_up);
        debug_assert_eq!(states.len(), binomial(n_sites, n_up));
        let mut rank = vec![NOT_IN_SECTOR; 1 << n_sites];
        for (i, &m) in states.iter().enumerate() {
            rank[m as usize] = i as u32;
        }
        Ok(SectorBasis {
            n_sites,
            sz_total,
            states,
            rank,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn sz_total(&self) -> i32 {
        self.sz_total
    }

    pub fn n_up(&self) -> usize {
        ((self.n_sites as i32 + self.sz_total) / 2) as usize
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    pub fn state(&self, i: usize) -> u32 {
        self.states[i]
    }

    /// Ordinal of `mask`, or `None` outside the sector.
    pub fn rank_of(&self, mask: u32) -> Option<usize> {
        match self.rank.get(mask as usize) {
            Some(&r) if r != NOT_IN_SECTOR => Some(r as usize),
            _ => None,
        }
    }
}

pub fn enumerate_sector_basis(n_sites: usize, sz_total: i32) -> Result<SectorBasis> {
    SectorBasis::new(n_sites, sz_total)
}
