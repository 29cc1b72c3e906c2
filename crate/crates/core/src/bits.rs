//! Bit-mask helpers shared by the basis, the reduced-density-matrix code and
//! the bipartition search.

/// Next integer with the same popcount (Gosper's hack). `None` once the
/// result would not fit in `n_bits`.
pub fn next_same_popcount(x: u32, n_bits: usize) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    let next = (((r ^ x) >> 2) / c) | r;
    if n_bits < 32 && next >> n_bits != 0 {
        None
    } else {
        Some(next)
    }
}

/// All `n_bits`-bit masks with exactly `k` set bits, ascending.
pub fn masks_with_popcount(n_bits: usize, k: usize) -> Vec<u32> {
    assert!(n_bits <= 31 && k <= n_bits);
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(binomial(n_bits, k));
    let mut x = (1u32 << k) - 1;
    loop {
        out.push(x);
        match next_same_popcount(x, n_bits) {
            Some(n) => x = n,
            None => break,
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// For every `n_bits`-bit integer, its position among the integers with the
/// same popcount in ascending order.
pub fn popcount_rank_table(n_bits: usize) -> Vec<u32> {
    assert!(n_bits <= 24);
    let mut table = vec![0u32; 1 << n_bits];
    let mut seen = vec![0u32; n_bits + 1];
    for (x, slot) in table.iter_mut().enumerate() {
        let p = (x as u32).count_ones() as usize;
        *slot = seen[p];
        seen[p] += 1;
    }
    table
}

/// Compresses selected bits of a mask into a dense index using one lookup
/// table per byte of the input.
///
/// `sites[p]` lands on output bit `sites.len() - 1 - p`, so the first listed
/// site is the most significant bit of the gathered index.
#[derive(Debug, Clone)]
pub struct BitGather {
    tables: Vec<[u32; 256]>,
}

impl BitGather {
    pub fn new(sites: &[usize], n_sites: usize) -> Self {
        let n_chunks = n_sites.div_ceil(8).max(1);
        let mut tables = vec![[0u32; 256]; n_chunks];
        let k = sites.len();
        for (chunk, table) in tables.iter_mut().enumerate() {
            for (byte, slot) in table.iter_mut().enumerate() {
                let mut out = 0u32;
                for (p, &site) in sites.iter().enumerate() {
                    if site / 8 == chunk && (byte >> (site % 8)) & 1 == 1 {
                        out |= 1 << (k - 1 - p);
                    }
                }
                *slot = out;
            }
        }
        BitGather { tables }
    }

    /// Sites of `mask`, ascending, as a gather ordered most-significant-first.
    pub fn ascending(mask: u32, n_sites: usize) -> Self {
        let sites: Vec<usize> = (0..n_sites).filter(|&s| mask >> s & 1 == 1).collect();
        Self::new(&sites, n_sites)
    }

    #[inline]
    pub fn gather(&self, mask: u32) -> u32 {
        let mut out = 0;
        for (chunk, table) in self.tables.iter().enumerate() {
            out |= table[((mask >> (8 * chunk)) & 0xff) as usize];
        }
        out
    }
}
