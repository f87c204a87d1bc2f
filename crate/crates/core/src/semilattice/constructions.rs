use std::sync::Arc;

use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

use super::types::{FinPoset, FiniteSemilattice, SLatMorphism};

fn check_size(size: u128, budget: &Budget) -> Result<()> {
    if size > budget.max_size as u128 {
        return Err(Error::SizeBudget {
            size,
            cap: budget.max_size as u128,
        });
    }
    Ok(())
}

/// The one-element semilattice.
pub fn terminal() -> Arc<FiniteSemilattice> {
    Arc::new(FiniteSemilattice::trusted(1, vec![0]))
}

/// The chain `[k] = {0 < 1 < ... < k}`, with `k + 1` elements.
pub fn chain(k: usize) -> Arc<FiniteSemilattice> {
    let n = k + 1;
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            join[x * n + y] = x.max(y);
        }
    }
    let s = FiniteSemilattice::trusted(n, join)
        .with_labels((0..n).map(|i| i.to_string()).collect())
        .expect("label count");
    Arc::new(s)
}

/// The interval `[1]`.
pub fn interval() -> Arc<FiniteSemilattice> {
    chain(1)
}

/// Bit label of a cube element: coordinate `i` is bit `n - 1 - i`.
pub fn cube_label(n: usize, x: usize) -> String {
    (0..n)
        .map(|i| if x >> (n - 1 - i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Coordinate `i` of a cube element.
#[inline]
pub fn cube_coord(n: usize, x: usize, i: usize) -> usize {
    x >> (n - 1 - i) & 1
}

/// The cube `[1]^n` with bitwise-or joins; element `x` has coordinates given by its bits,
/// most significant first, which agrees with iterated `product`.
pub fn cube(n: usize) -> Arc<FiniteSemilattice> {
    let size = 1usize << n;
    let mut join = vec![0; size * size];
    for x in 0..size {
        for y in 0..size {
            join[x * size + y] = x | y;
        }
    }
    let s = FiniteSemilattice::trusted(size, join)
        .with_labels((0..size).map(|x| cube_label(n, x)).collect())
        .expect("label count");
    Arc::new(s)
}

/// The diamond lattice M3: bottom 0, atoms 1, 2, 3, top 4.
pub fn diamond() -> Arc<FiniteSemilattice> {
    let order = |x: usize, y: usize| x == y || x == 0 || y == 4;
    let leq: Vec<bool> = (0..25).map(|i| order(i / 5, i % 5)).collect();
    let s = FiniteSemilattice::from_order(5, &leq)
        .expect("diamond is a lattice")
        .with_labels(vec!["⊥".into(), "a".into(), "b".into(), "c".into(), "⊤".into()])
        .expect("label count");
    Arc::new(s)
}

/// The pentagon lattice N5: `0 < a < b < 1`, `0 < c < 1`.
pub fn pentagon() -> Arc<FiniteSemilattice> {
    let below = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)];
    let leq: Vec<bool> = (0..25)
        .map(|i| i / 5 == i % 5 || below.contains(&(i / 5, i % 5)))
        .collect();
    let s = FiniteSemilattice::from_order(5, &leq).expect("pentagon is a lattice");
    Arc::new(s)
}

/// `V = {a, b, ⊤}`: two incomparable elements and their join.
pub fn vee() -> Arc<FiniteSemilattice> {
    tops_over_antichain(2)
}

/// The tripod `{a, b, c, ⊤}` with all pairwise joins equal to `⊤`.
pub fn tripod() -> Arc<FiniteSemilattice> {
    tops_over_antichain(3)
}

fn tops_over_antichain(k: usize) -> Arc<FiniteSemilattice> {
    let n = k + 1;
    let leq: Vec<bool> = (0..n * n)
        .map(|i| i / n == i % n || i % n == k)
        .collect();
    let mut labels: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    labels.push("⊤".into());
    let s = FiniteSemilattice::from_order(n, &leq)
        .expect("antichain with top")
        .with_labels(labels)
        .expect("label count");
    Arc::new(s)
}

/// A product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: Arc<FiniteSemilattice>,
    pub p1: SLatMorphism,
    pub p2: SLatMorphism,
}

/// `A × B` with componentwise joins; the pair `(x, y)` has index `x·|B| + y`.
pub fn product(
    a: &Arc<FiniteSemilattice>,
    b: &Arc<FiniteSemilattice>,
    budget: &Budget,
) -> Result<Product> {
    let (na, nb) = (a.size(), b.size());
    check_size((na as u128) * (nb as u128), budget)?;
    let n = na * nb;
    let mut join = vec![0; n * n];
    for p in 0..n {
        for q in 0..n {
            join[p * n + q] = a.join(p / nb, q / nb) * nb + b.join(p % nb, q % nb);
        }
    }
    let mut obj = FiniteSemilattice::trusted(n, join);
    if a.labels().is_some() || b.labels().is_some() {
        let labels = (0..n)
            .map(|p| {
                let (la, lb) = (a.label(p / nb), b.label(p % nb));
                if a.labels().is_some() && la.chars().all(|c| c == '0' || c == '1')
                    && lb.chars().all(|c| c == '0' || c == '1')
                {
                    format!("{la}{lb}")
                } else {
                    format!("({la},{lb})")
                }
            })
            .collect();
        obj = obj.with_labels(labels)?;
    }
    let object = Arc::new(obj);
    let p1 = SLatMorphism::trusted(object.clone(), a.clone(), (0..n).map(|p| p / nb).collect());
    let p2 = SLatMorphism::trusted(object.clone(), b.clone(), (0..n).map(|p| p % nb).collect());
    Ok(Product { object, p1, p2 })
}

/// A free semilattice on a poset: nonempty downsets under union, with the unit
/// sending each point to its principal downset.
#[derive(Clone, Debug)]
pub struct FreeSemilattice {
    pub object: Arc<FiniteSemilattice>,
    pub poset: FinPoset,
    pub unit: Vec<usize>,
    downsets: Vec<u64>,
}

impl FreeSemilattice {
    /// The unique join-preserving extension of a monotone map out of the poset.
    pub fn extend(&self, target: &Arc<FiniteSemilattice>, phi: &[usize]) -> Result<SLatMorphism> {
        if phi.len() != self.poset.size() {
            return Err(Error::WrongLength {
                got: phi.len(),
                expected: self.poset.size(),
            });
        }
        if !self.poset.is_monotone_into(&target.to_poset(), phi) {
            return Err(Error::NotMonotone(0, 0));
        }
        let map = self
            .downsets
            .iter()
            .map(|&d| {
                target
                    .join_all((0..self.poset.size()).filter(|&p| d >> p & 1 == 1).map(|p| phi[p]))
                    .expect("downsets are nonempty")
            })
            .collect();
        SLatMorphism::new(self.object.clone(), target.clone(), map)
    }

    /// Points of the poset contained in element `x`.
    pub fn points_of(&self, x: usize) -> Vec<usize> {
        (0..self.poset.size())
            .filter(|&p| self.downsets[x] >> p & 1 == 1)
            .collect()
    }
}

pub fn free_on_poset(p: &FinPoset, budget: &Budget) -> Result<FreeSemilattice> {
    let k = p.size();
    if k == 0 {
        return Err(Error::Empty);
    }
    if k >= 63 || saturating_pow(2, k) > budget.max_candidates {
        return Err(Error::CandidateSpaceExceeded {
            space: saturating_pow(2, k),
            cap: budget.max_candidates,
        });
    }
    let below: Vec<u64> = (0..k)
        .map(|x| (0..k).filter(|&y| p.leq(y, x)).fold(0u64, |m, y| m | 1 << y))
        .collect();
    let downsets: Vec<u64> = (1u64..1 << k)
        .filter(|&d| (0..k).all(|x| d >> x & 1 == 0 || d & below[x] == below[x]))
        .collect();
    check_size(downsets.len() as u128, budget)?;
    let n = downsets.len();
    let index = |d: u64| downsets.binary_search(&d).expect("union of downsets is a downset");
    let mut join = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            join[i * n + j] = index(downsets[i] | downsets[j]);
        }
    }
    let labels = downsets
        .iter()
        .map(|&d| {
            let pts: Vec<String> = (0..k).filter(|&x| d >> x & 1 == 1).map(|x| x.to_string()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    let object = Arc::new(FiniteSemilattice::trusted(n, join).with_labels(labels)?);
    let unit = below.iter().map(|&d| index(d)).collect();
    Ok(FreeSemilattice {
        object,
        poset: p.clone(),
        unit,
        downsets,
    })
}

/// The free semilattice on `k` generators: nonempty subsets of `{0..k}`, where
/// the subset with bitmask `s` has index `s - 1`.
pub fn free_on_generators(k: usize, budget: &Budget) -> Result<FreeSemilattice> {
    if k == 0 {
        return Err(Error::Empty);
    }
    check_size(saturating_pow(2, k) - 1, budget)?;
    free_on_poset(&FinPoset::discrete(k), budget)
}

/// `1 ⋆ A` with the inclusion of `A`; the new bottom has index 0 and `x` moves to `x + 1`.
pub fn adjoin_bottom(a: &Arc<FiniteSemilattice>) -> SLatMorphism {
    let n = a.size() + 1;
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            join[x * n + y] = match (x, y) {
                (0, y) => y,
                (x, 0) => x,
                (x, y) => a.join(x - 1, y - 1) + 1,
            };
        }
    }
    let mut labels = vec!["⊥".to_string()];
    labels.extend((0..a.size()).map(|x| a.label(x)));
    let obj = Arc::new(
        FiniteSemilattice::trusted(n, join)
            .with_labels(labels)
            .expect("label count"),
    );
    SLatMorphism::trusted(a.clone(), obj, (1..n).collect())
}

/// Projection onto the quotient by the least join-congruence containing `pairs`.
pub fn quotient_by_pairs(a: &Arc<FiniteSemilattice>, pairs: &[(usize, usize)]) -> SLatMorphism {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    congruence_closure(a, &mut uf);
    quotient_from_classes(a, &mut uf)
}

/// Saturates `uf` until `x ~ x'` implies `x v y ~ x' v y`.
pub(crate) fn congruence_closure(a: &FiniteSemilattice, uf: &mut UnionFind) {
    let n = a.size();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for y in 0..n {
                changed |= uf.union(a.join(x, y), a.join(r, y));
            }
        }
        if !changed {
            break;
        }
    }
}

pub(crate) fn quotient_from_classes(a: &Arc<FiniteSemilattice>, uf: &mut UnionFind) -> SLatMorphism {
    let n = a.size();
    let (k, class) = uf.classes();
    let mut rep = vec![usize::MAX; k];
    for x in (0..n).rev() {
        rep[class[x]] = x;
    }
    let mut join = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            join[i * k + j] = class[a.join(rep[i], rep[j])];
        }
    }
    let mut q = FiniteSemilattice::trusted(k, join);
    if a.labels().is_some() {
        q = q
            .with_labels(rep.iter().map(|&r| a.label(r)).collect())
            .expect("label count");
    }
    SLatMorphism::trusted(a.clone(), Arc::new(q), class)
}

/// Factorization `f = mono ∘ surjection` through the image of `f`.
pub fn image_factorize(f: &SLatMorphism) -> (SLatMorphism, SLatMorphism) {
    let image = f.image();
    let mono = f
        .cod()
        .subsemilattice(&image)
        .expect("images are join-closed");
    let surj = SLatMorphism::trusted(
        f.dom().clone(),
        mono.dom().clone(),
        f.map()
            .iter()
            .map(|v| image.binary_search(v).expect("value lies in image"))
            .collect(),
    );
    (surj, mono)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::canonical::are_isomorphic;

    #[test]
    fn cube_matches_iterated_product() {
        let b = Budget::default();
        let i = interval();
        let sq = product(&i, &i, &b).unwrap();
        assert_eq!(sq.object.size(), 4);
        let c3 = product(&sq.object, &i, &b).unwrap();
        assert_eq!(*c3.object, *cube(3));
        assert_eq!(c3.object.label(0b101), "101");
    }

    #[test]
    fn unit_law_for_product() {
        let b = Budget::default();
        let m3 = diamond();
        let p = product(&terminal(), &m3, &b).unwrap();
        assert!(are_isomorphic(&p.object, &m3));
    }

    #[test]
    fn product_respects_size_budget() {
        let b = Budget { max_size: 8, ..Budget::default() };
        assert!(matches!(product(&cube(2), &cube(2), &b), Err(Error::SizeBudget { .. })));
    }

    #[test]
    fn free_algebra_sizes() {
        let b = Budget::default();
        assert_eq!(free_on_generators(1, &b).unwrap().object.size(), 1);
        let f2 = free_on_generators(2, &b).unwrap();
        assert!(are_isomorphic(&f2.object, &vee()));
        assert_eq!(free_on_generators(4, &b).unwrap().object.size(), 15);
        let small = Budget { max_size: 8, ..b };
        assert!(free_on_generators(4, &small).is_err());
    }

    #[test]
    fn free_on_cone_is_cube() {
        let b = Budget::default();
        let f1 = free_on_poset(&FinPoset::discrete(1).with_bottom(), &b).unwrap();
        assert_eq!(*f1.object, *interval());
        assert_eq!(f1.unit, vec![0, 1]);
        let f2 = free_on_poset(&FinPoset::discrete(2).with_bottom(), &b).unwrap();
        assert!(are_isomorphic(&f2.object, &cube(2)));
        let f3 = free_on_poset(&FinPoset::chain(3), &b).unwrap();
        assert_eq!(*f3.object, *chain(2));
    }

    #[test]
    fn adjoin_bottom_examples() {
        assert_eq!(*adjoin_bottom(&terminal()).cod().clone(), *interval());
        assert!(are_isomorphic(adjoin_bottom(&vee()).cod(), &cube(2)));
        assert!(are_isomorphic(adjoin_bottom(&tripod()).cod(), &diamond()));
    }

    #[test]
    fn distributivity_examples() {
        use crate::semilattice::Distributivity;
        for n in 0..4 {
            assert!(cube(n).is_distributive_lattice());
        }
        match diamond().distributivity() {
            Distributivity::Violation(x, y, z) => {
                let atoms = [1, 2, 3];
                assert!(atoms.contains(&x) && atoms.contains(&y) && atoms.contains(&z));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(vee().distributivity(), Distributivity::NoBottom);
        assert!(!pentagon().is_distributive_lattice());
    }

    #[test]
    fn quotient_examples() {
        let sq = cube(2);
        assert!(quotient_by_pairs(&sq, &[]).is_iso());
        // 01 ~ 10 forces 01 = 01 v 01 ~ 10 v 01 = 11, so only the bottom stays apart.
        let q = quotient_by_pairs(&sq, &[(0b01, 0b10)]);
        assert_eq!(q.cod().size(), 2);
        assert_eq!(q.map(), &smallest_congruence(&sq, &[(0b01, 0b10)])[..]);
        let t = quotient_by_pairs(&interval(), &[(0, 1)]);
        assert_eq!(t.cod().size(), 1);
    }

    /// Finest join-compatible partition containing `pairs`, by scanning all set partitions.
    fn smallest_congruence(a: &FiniteSemilattice, pairs: &[(usize, usize)]) -> Vec<usize> {
        fn partitions(n: usize) -> Vec<Vec<usize>> {
            let mut out = vec![vec![]];
            for _ in 0..n {
                let mut next = Vec::new();
                for p in out {
                    let k = p.iter().max().map_or(0, |m| m + 1);
                    for c in 0..=k {
                        let mut q = p.clone();
                        q.push(c);
                        next.push(q);
                    }
                }
                out = next;
            }
            out
        }
        let n = a.size();
        let ok: Vec<Vec<usize>> = partitions(n)
            .into_iter()
            .filter(|p| pairs.iter().all(|&(x, y)| p[x] == p[y]))
            .filter(|p| {
                (0..n).all(|x| {
                    (0..n).all(|x2| p[x] != p[x2] || (0..n).all(|y| p[a.join(x, y)] == p[a.join(x2, y)]))
                })
            })
            .collect();
        let finest = ok
            .iter()
            .find(|p| ok.iter().all(|q| (0..n).all(|x| (0..n).all(|y| p[x] != p[y] || q[x] == q[y]))))
            .unwrap();
        finest.clone()
    }

    #[test]
    fn quotient_agrees_with_partition_scan() {
        let objs = [cube(2), diamond(), pentagon(), chain(3)];
        for a in &objs {
            let n = a.size();
            for x in 0..n {
                for y in 0..n {
                    let q = quotient_by_pairs(a, &[(x, y)]);
                    assert_eq!(q.map(), &smallest_congruence(a, &[(x, y)])[..]);
                }
            }
        }
    }

    #[test]
    fn image_factorization_of_identity() {
        let c = cube(2);
        let (e, m) = image_factorize(&SLatMorphism::identity(&c));
        assert!(e.is_iso() && m.is_iso());
        assert_eq!(m.after(&e).unwrap(), SLatMorphism::identity(&c));
    }
}
