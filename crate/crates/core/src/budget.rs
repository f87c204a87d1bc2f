//! Explicit size and search budgets shared by every enumeration.

use serde::{Deserialize, Serialize};

/// Caps that keep every exhaustive search at desk scale.
///
/// `max_size` bounds materialized semilattices (products, free algebras,
/// cubes). `max_enumeration_size` bounds `enumerate_semilattices`.
/// `max_candidates` bounds any brute-force candidate space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_size: usize,
    pub max_enumeration_size: usize,
    pub max_candidates: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_size: 64,
            max_enumeration_size: 5,
            max_candidates: 10_000_000,
        }
    }
}

impl Budget {
    pub fn with_candidates(mut self, max_candidates: u128) -> Self {
        self.max_candidates = max_candidates;
        self
    }

    pub fn with_enumeration_size(mut self, n: usize) -> Self {
        self.max_enumeration_size = n;
        self
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
