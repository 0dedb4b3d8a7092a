use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_candidates`].
pub const CAP_ENV: &str = "CATOMS_CAP";

/// Resource bounds for the exhaustive procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of candidate sets any sweep may visit (2^20 by
    /// default, i.e. 20 free atoms).
    pub max_candidates: u64,
    /// Largest model handled by the brute-force level-mapping search.
    pub max_brute_levels: usize,
    /// Largest number of unfolded rules produced from a single rule.
    pub max_unfold_product: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_candidates: 1 << 20,
            max_brute_levels: 7,
            max_unfold_product: 1 << 16,
        }
    }
}

impl Limits {
    /// Defaults, with `CATOMS_CAP` applied when it parses as an integer.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(n) = std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            l.max_candidates = n;
        }
        l
    }

    pub fn with_max_candidates(mut self, n: u64) -> Self {
        self.max_candidates = n;
        self
    }

    /// Errors unless a sweep over all subsets of `atoms` atoms fits.
    pub fn check_sweep(&self, what: &'static str, atoms: usize) -> Result<()> {
        let needed: u128 = if atoms >= 127 {
            u128::MAX
        } else {
            1u128 << atoms
        };
        if needed > self.max_candidates as u128 {
            return Err(Error::cap(what, needed, self.max_candidates as u128));
        }
        Ok(())
    }
}
