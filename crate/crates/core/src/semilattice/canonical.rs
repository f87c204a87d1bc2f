use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::types::FiniteSemilattice;

/// A labelling-invariant code: the order matrix, row-major, under the
/// lexicographically least relabelling reachable by colour refinement plus
/// individualization.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub size: usize,
    pub code: Vec<u64>,
}

/// The canonical form together with a relabelling `perm` (old index to new index)
/// that realizes it.
pub fn canonical_labelling(a: &FiniteSemilattice) -> (CanonicalForm, Vec<usize>) {
    let n = a.size();
    let colors = refine(a, vec![0; n]);
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(a, colors, &mut best);
    let (code, perm) = best.expect("search reaches a leaf");
    (CanonicalForm { size: n, code }, perm)
}

pub fn canonical_form(a: &FiniteSemilattice) -> CanonicalForm {
    canonical_labelling(a).0
}

/// The semilattice relabelled into canonical position; labels are dropped.
pub fn canonicalize(a: &FiniteSemilattice) -> FiniteSemilattice {
    let (_, perm) = canonical_labelling(a);
    relabel(a, &perm)
}

/// Relabels by `perm` (old index to new index).
pub fn relabel(a: &FiniteSemilattice, perm: &[usize]) -> FiniteSemilattice {
    let n = a.size();
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            join[perm[x] * n + perm[y]] = perm[a.join(x, y)];
        }
    }
    FiniteSemilattice::trusted(n, join)
}

pub fn are_isomorphic(a: &FiniteSemilattice, b: &FiniteSemilattice) -> bool {
    a.size() == b.size() && canonical_form(a) == canonical_form(b)
}

/// An isomorphism `a -> b` as an index map, if one exists.
pub fn find_isomorphism(a: &FiniteSemilattice, b: &FiniteSemilattice) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let (ca, pa) = canonical_labelling(a);
    let (cb, pb) = canonical_labelling(b);
    if ca != cb {
        return None;
    }
    let mut inv_b = vec![0; b.size()];
    for (x, &p) in pb.iter().enumerate() {
        inv_b[p] = x;
    }
    Some(pa.iter().map(|&p| inv_b[p]).collect())
}

/// Plain backtracking search for a join-table-preserving bijection.
pub fn find_isomorphism_brute_force(a: &FiniteSemilattice, b: &FiniteSemilattice) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    fn go(a: &FiniteSemilattice, b: &FiniteSemilattice, k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = a.size();
        if k == n {
            return (0..n).all(|x| (0..n).all(|y| map[a.join(x, y)] == b.join(map[x], map[y])));
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            map[k] = v;
            let ok = (0..=k).all(|x| {
                let j = a.join(x, k);
                j > k || map[j] == b.join(map[x], v)
            });
            if ok {
                used[v] = true;
                if go(a, b, k + 1, map, used) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    let mut map = vec![0; n];
    let mut used = vec![false; n];
    if !go(a, b, 0, &mut map, &mut used) {
        return None;
    }
    Some(map)
}

fn rank(sigs: &[Vec<usize>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<usize>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).expect("present"))
        .collect()
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn refine(a: &FiniteSemilattice, mut colors: Vec<usize>) -> Vec<usize> {
    let n = a.size();
    let lower_covers: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| a.covers_pair(y, x)).count()).collect();
    let upper_covers: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| a.covers_pair(x, y)).count()).collect();
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut below: Vec<usize> = (0..n).filter(|&y| a.lt(y, x)).map(|y| colors[y]).collect();
                let mut above: Vec<usize> = (0..n).filter(|&y| a.lt(x, y)).map(|y| colors[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                let mut s = vec![colors[x], below.len(), above.len(), lower_covers[x], upper_covers[x]];
                s.push(usize::MAX);
                s.extend(below);
                s.push(usize::MAX);
                s.extend(above);
                s
            })
            .collect();
        let next = rank(&sigs);
        if count_classes(&next) == count_classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn code_of(a: &FiniteSemilattice, perm: &[usize]) -> Vec<u64> {
    let n = a.size();
    let mut bits = vec![0u64; (n * n).div_ceil(64)];
    for x in 0..n {
        for y in 0..n {
            if a.leq(x, y) {
                let i = perm[x] * n + perm[y];
                bits[i / 64] |= 1 << (63 - i % 64);
            }
        }
    }
    bits
}

fn search(a: &FiniteSemilattice, colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let n = a.size();
    if count_classes(&colors) == n {
        let code = code_of(a, &colors);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, colors));
        }
        return;
    }
    // First (smallest colour) non-singleton cell.
    let mut cell_sizes = vec![0usize; n];
    for &c in &colors {
        cell_sizes[c] += 1;
    }
    let target = (0..n).find(|&c| cell_sizes[c] > 1).expect("some cell is not a singleton");
    for x in (0..n).filter(|&x| colors[x] == target) {
        let indiv: Vec<usize> = (0..n)
            .map(|y| if y == x { 2 * colors[y] } else { 2 * colors[y] + 1 })
            .collect();
        let indiv = rank(&indiv.iter().map(|&c| vec![c]).collect::<Vec<_>>());
        search(a, refine(a, indiv), best);
    }
}

impl FiniteSemilattice {
    pub(crate) fn covers_pair(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !(0..self.size()).any(|z| self.lt(x, z) && self.lt(z, y))
    }
}

/// Shared handle to a canonical representative.
pub fn canonical_arc(a: &FiniteSemilattice) -> Arc<FiniteSemilattice> {
    Arc::new(canonicalize(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::constructions::*;

    #[test]
    fn permuted_copy_is_isomorphic() {
        let m3 = diamond();
        let perm = vec![3, 0, 4, 1, 2];
        let p = relabel(&m3, &perm);
        assert!(are_isomorphic(&m3, &p));
        let iso = find_isomorphism(&m3, &p).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(iso[m3.join(x, y)], p.join(iso[x], iso[y]));
            }
        }
        assert_eq!(canonicalize(&m3), canonicalize(&p));
    }

    #[test]
    fn chain_and_vee_differ() {
        assert!(!are_isomorphic(&chain(2), &vee()));
        assert!(find_isomorphism_brute_force(&chain(2), &vee()).is_none());
    }

    #[test]
    fn cone_on_vee_is_square() {
        let cone = adjoin_bottom(&vee()).cod().clone();
        assert!(are_isomorphic(&cone, &cube(2)));
        assert!(find_isomorphism_brute_force(&cone, &cube(2)).is_some());
    }

    #[test]
    fn cube_of_dimension_four_canonicalizes() {
        let c = cube(4);
        let perm: Vec<usize> = (0..16).map(|x: usize| x.reverse_bits() >> (usize::BITS - 4)).collect();
        assert!(are_isomorphic(&c, &relabel(&c, &perm)));
    }
}
