//! Explicit limits for the exhaustive routines.
//!
//! Every exponential search checks its size against a [`Budget`] up front and
//! fails with [`Error::BudgetExceeded`] instead of truncating.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Enumerating `F_q^n`: `q^n <= 2^enum_bits`.
    pub enum_bits: u32,
    /// Sphere oracle message pairs: `q^n * q^n <= 2^pair_bits`.
    pub pair_bits: u32,
    /// Minrank assignments: `q^free <= 2^minrank_bits`.
    pub minrank_bits: u32,
    /// Packet subset enumeration: `2^n <= 2^subset_bits`.
    pub subset_bits: u32,
    /// Node cap for the generator and classical-code searches.
    pub search_nodes: u64,
    /// Longest code considered by `l_q` and the GECIC length search.
    pub max_code_len: usize,
    /// `Ind_q` search space: `q^N <= 2^ind_bits`.
    pub ind_bits: u32,
    /// Edge-deletion bound is exhaustive up to this many deleted graphs.
    pub edge_deletion_exhaustive: u64,
    /// Sample size when the edge-deletion family is larger than that.
    pub edge_deletion_samples: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enum_bits: 24,
            pair_bits: 24,
            minrank_bits: 24,
            subset_bits: 20,
            search_nodes: 200_000_000,
            max_code_len: 15,
            ind_bits: 20,
            edge_deletion_exhaustive: 10_000,
            edge_deletion_samples: 256,
            seed: 0x1c51e,
        }
    }
}

/// `q^exp` if it fits in `2^bits`.
pub(crate) fn power_within(q: u32, exp: usize, bits: u32, what: &'static str) -> Result<u64> {
    let limit = 1u128 << bits.min(100);
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= q as u128;
        if acc > limit {
            return Err(Error::budget(what, format!("{q}^{exp}"), format!("2^{bits}")));
        }
    }
    Ok(acc as u64)
}

pub(crate) fn ensure_mask_width(n: usize, what: &'static str) -> Result<()> {
    if n > 63 {
        return Err(Error::budget(what, format!("n = {n}"), "n <= 63"));
    }
    Ok(())
}
