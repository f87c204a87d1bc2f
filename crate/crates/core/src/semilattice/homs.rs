use std::sync::Arc;

use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};

use super::types::{first_join_failure, FiniteSemilattice, SLatMorphism};

/// All join-preserving maps `A -> B`, sorted lexicographically by map array.
///
/// Values are chosen only on the join-irreducible generators of `A`, each at or above
/// the images of the generators below it. On a cube the generators are the bottom
/// and the atoms, so this is exactly the choice of a bottom image `b` and `m`
/// generator images above `b`.
pub fn enumerate_homs(
    a: &Arc<FiniteSemilattice>,
    b: &Arc<FiniteSemilattice>,
    budget: &Budget,
) -> Result<Vec<SLatMorphism>> {
    Ok(enumerate_hom_maps(a, b, budget)?
        .into_iter()
        .map(|m| SLatMorphism::trusted(a.clone(), b.clone(), m))
        .collect())
}

/// Map arrays of `enumerate_homs`, without wrapping.
pub fn enumerate_hom_maps(
    a: &FiniteSemilattice,
    b: &FiniteSemilattice,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let gens = a.generators();
    let space = saturating_pow(b.size(), gens.len());
    if space > budget.max_candidates {
        return Err(Error::CandidateSpaceExceeded {
            space,
            cap: budget.max_candidates,
        });
    }
    // For each element, the generators below it (as positions in `gens`).
    let gens_below: Vec<Vec<usize>> = (0..a.size())
        .map(|x| (0..gens.len()).filter(|&i| a.leq(gens[i], x)).collect())
        .collect();
    let lower: Vec<Vec<usize>> = (0..gens.len())
        .map(|i| (0..i).filter(|&j| a.lt(gens[j], gens[i])).collect())
        .collect();
    let mut out = Vec::new();
    let mut img = vec![0usize; gens.len()];
    rec(a, b, &gens_below, &lower, 0, &mut img, &mut out);
    out.sort();
    Ok(out)
}

fn rec(
    a: &FiniteSemilattice,
    b: &FiniteSemilattice,
    gens_below: &[Vec<usize>],
    lower: &[Vec<usize>],
    i: usize,
    img: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == img.len() {
        let map: Vec<usize> = gens_below
            .iter()
            .map(|gs| b.join_all(gs.iter().map(|&g| img[g])).expect("every element lies above a generator"))
            .collect();
        if first_join_failure(a, b, &map).is_none() {
            out.push(map);
        }
        return;
    }
    let floor = b.join_all(lower[i].iter().map(|&j| img[j]));
    for v in 0..b.size() {
        if floor.is_none_or(|f| b.leq(f, v)) {
            img[i] = v;
            rec(a, b, gens_below, lower, i + 1, img, out);
        }
    }
}

/// Brute-force filtration of all `|B|^|A|` functions.
pub fn brute_force_homs(
    a: &Arc<FiniteSemilattice>,
    b: &Arc<FiniteSemilattice>,
    budget: &Budget,
) -> Result<Vec<SLatMorphism>> {
    let space = saturating_pow(b.size(), a.size());
    if space > budget.max_candidates {
        return Err(Error::CandidateSpaceExceeded {
            space,
            cap: budget.max_candidates,
        });
    }
    let (na, nb) = (a.size(), b.size());
    let mut out = Vec::new();
    let mut map = vec![0usize; na];
    loop {
        if first_join_failure(a, b, &map).is_none() {
            out.push(SLatMorphism::trusted(a.clone(), b.clone(), map.clone()));
        }
        let mut k = na;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            map[k] += 1;
            if map[k] < nb {
                break;
            }
            map[k] = 0;
        }
    }
}

/// All endomorphisms `f` with `f ∘ f = f`.
pub fn idempotents(a: &Arc<FiniteSemilattice>, budget: &Budget) -> Result<Vec<SLatMorphism>> {
    Ok(enumerate_homs(a, a, budget)?
        .into_iter()
        .filter(|f| f.is_idempotent())
        .collect())
}

/// All automorphisms of `a`.
pub fn automorphisms(a: &Arc<FiniteSemilattice>, budget: &Budget) -> Result<Vec<SLatMorphism>> {
    Ok(enumerate_homs(a, a, budget)?
        .into_iter()
        .filter(|f| f.is_iso())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::constructions::*;

    fn count(a: &Arc<FiniteSemilattice>, b: &Arc<FiniteSemilattice>) -> usize {
        enumerate_homs(a, b, &Budget::default()).unwrap().len()
    }

    #[test]
    fn interval_endomorphisms() {
        let i = interval();
        let homs = enumerate_homs(&i, &i, &Budget::default()).unwrap();
        let maps: Vec<&[usize]> = homs.iter().map(|h| h.map()).collect();
        assert_eq!(maps, vec![&[0, 0][..], &[0, 1][..], &[1, 1][..]]);
    }

    #[test]
    fn square_to_interval() {
        assert_eq!(count(&cube(2), &interval()), 5);
    }

    #[test]
    fn vee_homs_are_pairs_of_generator_images() {
        for b in [terminal(), interval(), chain(2), vee(), cube(2), diamond(), tripod()] {
            assert_eq!(count(&vee(), &b), b.size() * b.size());
        }
    }

    #[test]
    fn generator_search_agrees_with_brute_force() {
        let objs = [terminal(), interval(), chain(2), vee(), cube(2), tripod(), diamond(), pentagon()];
        let budget = Budget::default();
        for a in &objs {
            for b in &objs {
                assert_eq!(
                    enumerate_homs(a, b, &budget).unwrap(),
                    brute_force_homs(a, b, &budget).unwrap()
                );
            }
        }
    }

    #[test]
    fn brute_force_respects_budget() {
        let tight = Budget::default().with_candidates(100);
        assert!(matches!(
            brute_force_homs(&cube(3), &cube(2), &tight),
            Err(Error::CandidateSpaceExceeded { .. })
        ));
        assert_eq!(enumerate_homs(&cube(3), &interval(), &tight).unwrap().len(), 9);
    }

    #[test]
    fn automorphism_counts() {
        let b = Budget::default();
        assert_eq!(automorphisms(&vee(), &b).unwrap().len(), 2);
        assert_eq!(automorphisms(&cube(3), &b).unwrap().len(), 6);
        assert_eq!(automorphisms(&diamond(), &b).unwrap().len(), 6);
    }
}
