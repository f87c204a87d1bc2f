use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};

use super::canonical::{canonical_labelling, relabel, CanonicalForm};
use super::types::FiniteSemilattice;

/// One representative per isomorphism class of inhabited semilattices of size `n`,
/// in canonical position and sorted by canonical form.
///
/// Candidates are partial orders on `0..n` in which `0..n` is a linear extension and
/// `n - 1` is the top; every class has such a labelling.
pub fn enumerate_semilattices(n: usize, budget: &Budget) -> Result<Vec<Arc<FiniteSemilattice>>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > budget.max_enumeration_size {
        return Err(Error::SizeBudget {
            size: n as u128,
            cap: budget.max_enumeration_size as u128,
        });
    }
    let free_pairs: Vec<(usize, usize)> = (0..n.saturating_sub(1))
        .flat_map(|i| (i + 1..n - 1).map(move |j| (i, j)))
        .collect();
    let space = 1u128 << free_pairs.len();
    if space > budget.max_candidates {
        return Err(Error::CandidateSpaceExceeded {
            space,
            cap: budget.max_candidates,
        });
    }
    let mut classes: BTreeMap<CanonicalForm, Arc<FiniteSemilattice>> = BTreeMap::new();
    for mask in 0u64..(1u64 << free_pairs.len()) {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            leq[x * n + n - 1] = true;
        }
        for (k, &(i, j)) in free_pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| !leq[y * n + z] || leq[x * n + z]))
        });
        if !transitive {
            continue;
        }
        let Ok(s) = FiniteSemilattice::from_order(n, &leq) else {
            continue;
        };
        let (form, perm) = canonical_labelling(&s);
        classes
            .entry(form)
            .or_insert_with(|| Arc::new(relabel(&s, &perm)));
    }
    Ok(classes.into_values().collect())
}

/// All classes of sizes `1..=max`, smallest first.
pub fn enumerate_up_to(max: usize, budget: &Budget) -> Result<Vec<Arc<FiniteSemilattice>>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(enumerate_semilattices(n, budget)?);
    }
    Ok(out)
}
