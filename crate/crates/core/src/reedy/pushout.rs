use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::semilattice::types::same_object;
use crate::semilattice::{enumerate_homs, FiniteSemilattice, SLatMorphism};
use crate::union_find::UnionFind;

/// A pushout square of a span of surjections `B0 <- A -> B1` with cocone `B0 -> P <- B1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoweringPushoutSquare {
    pub e0: SLatMorphism,
    pub e1: SLatMorphism,
    pub f0: SLatMorphism,
    pub f1: SLatMorphism,
}

impl LoweringPushoutSquare {
    pub fn apex(&self) -> &Arc<FiniteSemilattice> {
        self.f0.cod()
    }

    pub fn commutes(&self) -> bool {
        self.f0.after(&self.e0).ok() == self.f1.after(&self.e1).ok()
    }
}

/// Pushout of two surjections out of a common domain.
///
/// The carrier is the set-level pushout `(B0 ⊔ B1) / (e0 a ~ e1 a)`. The join is
/// then induced from either leg; the construction fails with `Error::Invalid` if
/// the induced join is not well defined, so a successful return certifies that the
/// forgetful functor preserves this pushout.
pub fn lowering_pushout(e0: &SLatMorphism, e1: &SLatMorphism) -> Result<LoweringPushoutSquare> {
    if !same_object(e0.dom(), e1.dom()) {
        return Err(Error::DomainMismatch);
    }
    if !e0.is_surjective() || !e1.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let (b0, b1) = (e0.cod(), e1.cod());
    let (n0, n1) = (b0.size(), b1.size());
    let mut uf = UnionFind::new(n0 + n1);
    for a in 0..e0.dom().size() {
        uf.union(e0.apply(a), n0 + e1.apply(a));
    }
    let (k, class) = uf.classes();
    let c0 = &class[..n0];
    let c1 = &class[n0..];
    // A representative in B0 for every class; every class meets B0 because e1 is onto
    // and each e1(a) is glued to e0(a).
    let mut rep0 = vec![usize::MAX; k];
    for x in (0..n0).rev() {
        rep0[c0[x]] = x;
    }
    if rep0.contains(&usize::MAX) {
        return Err(Error::Invalid("pushout class without a B0 element".into()));
    }
    for (b, cls) in [(b0, c0), (b1, c1)] {
        let n = b.size();
        for x in 0..n {
            for x2 in 0..n {
                if cls[x] != cls[x2] {
                    continue;
                }
                for y in 0..n {
                    if cls[b.join(x, y)] != cls[b.join(x2, y)] {
                        return Err(Error::Invalid(format!(
                            "induced join is not well defined at ({x},{x2},{y})"
                        )));
                    }
                }
            }
        }
    }
    let mut join = vec![0; k * k];
    for p in 0..k {
        for q in 0..k {
            join[p * k + q] = c0[b0.join(rep0[p], rep0[q])];
        }
    }
    let apex = Arc::new(FiniteSemilattice::from_flat(k, join)?);
    let f0 = SLatMorphism::new(b0.clone(), apex.clone(), c0.to_vec())?;
    let f1 = SLatMorphism::new(b1.clone(), apex, c1.to_vec())?;
    Ok(LoweringPushoutSquare {
        e0: e0.clone(),
        e1: e1.clone(),
        f0,
        f1,
    })
}

/// Checks the universal property against every commuting cocone into each of `targets`.
/// Returns the number of cocones examined, or a description of the first failure.
pub fn verify_pushout_universal(
    sq: &LoweringPushoutSquare,
    targets: &[Arc<FiniteSemilattice>],
    budget: &Budget,
) -> Result<std::result::Result<u64, String>> {
    let mut count = 0;
    for c in targets {
        let g0s = enumerate_homs(sq.e0.cod(), c, budget)?;
        let g1s = enumerate_homs(sq.e1.cod(), c, budget)?;
        let hs = enumerate_homs(sq.apex(), c, budget)?;
        for g0 in &g0s {
            let g0e0 = g0.after(&sq.e0)?;
            for g1 in &g1s {
                if g1.after(&sq.e1)? != g0e0 {
                    continue;
                }
                count += 1;
                let factoring = hs
                    .iter()
                    .filter(|h| {
                        h.after(&sq.f0).ok().as_ref() == Some(g0) && h.after(&sq.f1).ok().as_ref() == Some(g1)
                    })
                    .count();
                if factoring != 1 {
                    return Ok(Err(format!(
                        "cocone ({:?}, {:?}) into a {}-element object has {factoring} factorizations",
                        g0.map(),
                        g1.map(),
                        c.size()
                    )));
                }
            }
        }
    }
    Ok(Ok(count))
}
