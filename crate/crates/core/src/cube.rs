//! Cube and simplex categories: compact cube morphisms, idempotent splitting,
//! retracts of cubes, truncated triangulation and Dedekind-style monotone maps.
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::{saturating_pow, Budget};
use crate::certificate::Certificate;
use crate::elegance::projective_lift;
use crate::error::{Error, Result};
use crate::semilattice::{
    are_isomorphic, chain, cube, enumerate_hom_maps, enumerate_homs, enumerate_up_to, FinPoset, FiniteSemilattice,
    SLatMorphism,
};

/// A morphism `[1]^m -> [1]^n`, stored as the image of the bottom and of the `m`
/// generators `e_0, ..., e_{m-1}`. Cube elements are bitmasks as in [`cube`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CubeHom {
    pub m: usize,
    pub n: usize,
    pub bottom_image: usize,
    pub generator_images: Vec<usize>,
}

/// The generator `e_i` of `[1]^m`: coordinate `i` set, all others clear.
pub fn cube_generator(m: usize, i: usize) -> usize {
    1 << (m - 1 - i)
}

impl CubeHom {
    pub fn new(m: usize, n: usize, bottom_image: usize, generator_images: Vec<usize>) -> Result<Self> {
        if generator_images.len() != m {
            return Err(Error::WrongLength {
                got: generator_images.len(),
                expected: m,
            });
        }
        let top = 1usize << n;
        if let Some(&v) = generator_images.iter().chain([&bottom_image]).find(|&&v| v >= top) {
            return Err(Error::OutOfRange { x: 0, y: 0, value: v });
        }
        if generator_images.iter().any(|&g| g | bottom_image != g) {
            return Err(Error::Invalid("generator image below the bottom image".into()));
        }
        Ok(CubeHom {
            m,
            n,
            bottom_image,
            generator_images,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        (0..self.m)
            .filter(|&i| x & cube_generator(self.m, i) != 0)
            .fold(self.bottom_image, |acc, i| acc | self.generator_images[i])
    }

    pub fn to_map(&self) -> Vec<usize> {
        (0..1usize << self.m).map(|x| self.apply(x)).collect()
    }

    pub fn decode(&self) -> SLatMorphism {
        SLatMorphism::new(cube(self.m), cube(self.n), self.to_map()).expect("cube homs preserve joins")
    }

    /// The morphism as a cube hom; `m`, `n` are read off the sizes.
    pub fn encode(f: &SLatMorphism) -> Result<Self> {
        let (a, b) = (f.dom().size(), f.cod().size());
        if !a.is_power_of_two() || !b.is_power_of_two() || !are_isomorphic(f.dom(), &cube(a.trailing_zeros() as usize)) {
            return Err(Error::DomainMismatch);
        }
        let (m, n) = (a.trailing_zeros() as usize, b.trailing_zeros() as usize);
        let gens = (0..m).map(|i| f.apply(cube_generator(m, i))).collect();
        CubeHom::new(m, n, f.apply(0), gens)
    }

    /// `self ∘ first`, by substituting generator images.
    pub fn after(&self, first: &CubeHom) -> Result<CubeHom> {
        if first.n != self.m {
            return Err(Error::NotComposable);
        }
        Ok(CubeHom {
            m: first.m,
            n: self.n,
            bottom_image: self.apply(first.bottom_image),
            generator_images: first.generator_images.iter().map(|&g| self.apply(g)).collect(),
        })
    }
}

/// Every cube hom `[1]^m -> [1]^n`, ordered by bottom image then generator images.
pub fn all_cube_homs(m: usize, n: usize, budget: &Budget) -> Result<Vec<CubeHom>> {
    let count = cube_hom_count(m, n);
    if count > budget.max_candidates {
        return Err(Error::CandidateSpaceExceeded {
            space: count,
            cap: budget.max_candidates,
        });
    }
    let mut out = Vec::new();
    for b in 0..1usize << n {
        let up: Vec<usize> = (0..1usize << n).filter(|&y| y | b == y).collect();
        let mut idx = vec![0usize; m];
        loop {
            out.push(CubeHom {
                m,
                n,
                bottom_image: b,
                generator_images: idx.iter().map(|&i| up[i]).collect(),
            });
            let mut k = m;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < up.len() {
                    break;
                }
                idx[k] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    Ok(out)
}

/// `Σ_{b ∈ [1]^n} |↑b|^m`.
pub fn cube_hom_count(m: usize, n: usize) -> u128 {
    (0..1usize << n)
        .map(|b| saturating_pow(1 << (n - b.count_ones() as usize), m))
        .fold(0u128, |a, x| a.saturating_add(x))
}

/// `|Hom([1]^m, [1]^n)|` by generator-pruned enumeration.
pub fn cube_hom_count_by_enumeration(m: usize, n: usize, budget: &Budget) -> Result<u128> {
    Ok(enumerate_hom_maps(&cube(m), &cube(n), budget)?.len() as u128)
}

/// A splitting `f = section ∘ retraction` with `retraction ∘ section = id`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub retraction: SLatMorphism,
    pub section: SLatMorphism,
}

impl Splitting {
    pub fn object(&self) -> &Arc<FiniteSemilattice> {
        self.section.dom()
    }
}

/// Splits an idempotent through its fixed points.
pub fn split_idempotent(f: &SLatMorphism) -> Result<Splitting> {
    if f.dom() != f.cod() {
        return Err(Error::DomainMismatch);
    }
    if !f.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let fixed: Vec<usize> = (0..f.dom().size()).filter(|&x| f.apply(x) == x).collect();
    let section = f.dom().subsemilattice(&fixed)?;
    let pos: HashMap<usize, usize> = section.map().iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let retraction = SLatMorphism::new(
        f.dom().clone(),
        section.dom().clone(),
        (0..f.dom().size()).map(|x| pos[&f.apply(x)]).collect(),
    )?;
    Ok(Splitting { retraction, section })
}

/// `A` as a retract of `[1]^{|A|}`.
#[derive(Clone, Debug)]
pub struct CubeRetract {
    pub dim: usize,
    pub section: SLatMorphism,
    pub retraction: SLatMorphism,
}

/// The retraction sends a subset `S` of `A` to `⊥ ∨ ⋁S`; the section is found by
/// lifting the identity through it.
pub fn retract_of_cube(a: &Arc<FiniteSemilattice>, budget: &Budget) -> Result<CubeRetract> {
    if !a.is_distributive_lattice() {
        return Err(Error::NotDistributive);
    }
    let dim = a.size();
    let size = saturating_pow(2, dim);
    if size > budget.max_size as u128 {
        return Err(Error::SizeBudget {
            size,
            cap: budget.max_size as u128,
        });
    }
    let bottom = a.bottom().expect("lattices have a bottom");
    let q = cube(dim);
    let map = (0..1usize << dim)
        .map(|s| {
            let members = (0..dim).filter(|&i| s & cube_generator(dim, i) != 0);
            members.fold(bottom, |acc, i| a.join(acc, i))
        })
        .collect();
    let retraction = SLatMorphism::new(q, a.clone(), map)?;
    let section = projective_lift(a, &retraction, &SLatMorphism::identity(a), budget)?
        .ok_or_else(|| Error::Invalid("no section of the cube retraction".into()))?;
    Ok(CubeRetract {
        dim,
        section,
        retraction,
    })
}

/// Idempotents on cubes split with distributive fixed points, and distributive
/// classes are retracts of cubes.
pub fn certify_idempotent_completion(dim_cap: usize, size_cap: usize, budget: &Budget) -> Result<Certificate> {
    let mut cert = Certificate::new("idempotent-completion");
    let (mut split, mut split_fail) = (0u64, None);
    let mut dist_fail = None;
    for n in 0..=dim_cap {
        let q = cube(n);
        for f in enumerate_homs(&q, &q, budget)?.into_iter().filter(|f| f.is_idempotent()) {
            let s = split_idempotent(&f)?;
            split += 1;
            let round = s.retraction.after(&s.section)?;
            let back = s.section.after(&s.retraction)?;
            if round != SLatMorphism::identity(s.object()) || back != f {
                split_fail.get_or_insert(format!("idempotent {:?} on [1]^{n}", f.map()));
            }
            if !s.object().is_distributive_lattice() {
                dist_fail.get_or_insert(format!("idempotent {:?} on [1]^{n}", f.map()));
            }
        }
    }
    cert.record("cube-idempotents-split", split, split_fail);
    cert.record("split-objects-distributive", split, dist_fail);
    let classes = enumerate_up_to(size_cap, budget)?;
    let (mut retracts, mut retract_fail, mut rejected, mut reject_fail) = (0u64, None, 0u64, None);
    for a in &classes {
        if a.is_distributive_lattice() {
            let r = retract_of_cube(a, budget)?;
            retracts += 1;
            if r.retraction.after(&r.section)? != SLatMorphism::identity(a) {
                retract_fail.get_or_insert(format!("class of size {} with table {:?}", a.size(), a.table()));
            }
        } else {
            rejected += 1;
            if !matches!(retract_of_cube(a, budget), Err(Error::NotDistributive)) {
                reject_fail.get_or_insert(format!("class of size {} was not rejected", a.size()));
            }
        }
    }
    cert.record("distributive-classes-are-cube-retracts", retracts, retract_fail);
    cert.record("non-distributive-classes-rejected", rejected, reject_fail);
    let q2 = cube(2);
    let example = SLatMorphism::new(q2.clone(), q2, vec![0b00, 0b01, 0b11, 0b11])?;
    let s = split_idempotent(&example)?;
    cert.record(
        "example-splits-through-chain",
        1,
        (!are_isomorphic(s.object(), &chain(2))).then(|| format!("split object has size {}", s.object().size())),
    );
    let q3 = cube(3);
    let total = SLatMorphism::new(q3.clone(), q3, (0..8).map(|x| if x == 0 { 0 } else { 7 }).collect())?;
    let s = split_idempotent(&total)?;
    cert.record(
        "diagonal-join-splits-through-interval",
        1,
        (!are_isomorphic(s.object(), &chain(1))).then(|| format!("split object has size {}", s.object().size())),
    );
    cert.config = serde_json::json!({ "dim_cap": dim_cap, "size_cap": size_cap });
    Ok(cert)
}

/// The simplex `[n]` as a chain semilattice.
#[derive(Clone, Debug)]
pub struct SimplexObject {
    pub n: usize,
    pub carrier: Arc<FiniteSemilattice>,
}

pub fn simplex(n: usize) -> SimplexObject {
    SimplexObject { n, carrier: chain(n) }
}

fn face_map(i: usize, n: usize) -> Vec<usize> {
    (0..n).map(|j| if j < i { j } else { j + 1 }).collect()
}

fn degeneracy_map(i: usize, n: usize) -> Vec<usize> {
    (0..n + 2).map(|j| if j <= i { j } else { j - 1 }).collect()
}

/// `d_i: [n-1] -> [n]`, skipping `i`.
pub fn face(i: usize, n: usize) -> Result<SLatMorphism> {
    if n == 0 || i > n {
        return Err(Error::Invalid(format!("no face d_{i} into [{n}]")));
    }
    SLatMorphism::new(chain(n - 1), chain(n), face_map(i, n))
}

/// `s_i: [n+1] -> [n]`, identifying `i` and `i + 1`.
pub fn degeneracy(i: usize, n: usize) -> Result<SLatMorphism> {
    if i > n {
        return Err(Error::Invalid(format!("no degeneracy s_{i} onto [{n}]")));
    }
    SLatMorphism::new(chain(n + 1), chain(n), degeneracy_map(i, n))
}

fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// The cosimplicial identities up to dimension `max_n`, on map arrays.
pub fn simplicial_identity_failure(max_n: usize) -> Option<String> {
    for n in 2..=max_n {
        for j in 0..=n {
            for i in 0..j {
                if compose(&face_map(j, n), &face_map(i, n - 1)) != compose(&face_map(i, n), &face_map(j - 1, n - 1)) {
                    return Some(format!("d_{j} d_{i} at [{n}]"));
                }
            }
        }
    }
    for n in 0..max_n {
        for j in 0..=n {
            for i in 0..=j {
                if compose(&degeneracy_map(j, n), &degeneracy_map(i, n + 1))
                    != compose(&degeneracy_map(i, n), &degeneracy_map(j + 1, n + 1))
                {
                    return Some(format!("s_{j} s_{i} at [{n}]"));
                }
            }
        }
    }
    for n in 0..max_n {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = compose(&degeneracy_map(j, n), &face_map(i, n + 1));
                let rhs: Vec<usize> = if i < j {
                    compose(&face_map(i, n), &degeneracy_map(j - 1, n - 1))
                } else if i == j || i == j + 1 {
                    (0..=n).collect()
                } else {
                    compose(&face_map(i - 1, n), &degeneracy_map(j, n - 1))
                };
                if lhs != rhs {
                    return Some(format!("s_{j} d_{i} at [{n}]"));
                }
            }
        }
    }
    None
}

/// Levels `0..=maxdim` of a simplicial set with face and degeneracy actions.
/// `faces[m][i]` maps level `m` to level `m - 1`; `degeneracies[m][i]` maps level
/// `m` to level `m + 1` (only for `m < maxdim`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSimplicialSet {
    pub levels: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

impl TruncatedSimplicialSet {
    pub fn maxdim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn nondegenerate(&self, m: usize) -> Vec<usize> {
        let mut degenerate = vec![false; self.levels[m]];
        if m > 0 {
            for s in &self.degeneracies[m - 1] {
                for &x in s {
                    degenerate[x] = true;
                }
            }
        }
        (0..self.levels[m]).filter(|&x| !degenerate[x]).collect()
    }

    /// Levelwise product with componentwise actions; `(x, y)` has index `x·|Y_m| + y`.
    pub fn product(&self, other: &TruncatedSimplicialSet) -> Result<TruncatedSimplicialSet> {
        if self.maxdim() != other.maxdim() {
            return Err(Error::Invalid("truncations differ".into()));
        }
        let levels: Vec<usize> = self.levels.iter().zip(&other.levels).map(|(a, b)| a * b).collect();
        let pair = |acts_a: &Vec<Vec<usize>>, acts_b: &Vec<Vec<usize>>, tgt: usize| -> Vec<Vec<usize>> {
            acts_a
                .iter()
                .zip(acts_b)
                .map(|(fa, fb)| {
                    let nb = fb.len();
                    (0..fa.len() * nb).map(|k| fa[k / nb] * tgt + fb[k % nb]).collect()
                })
                .collect()
        };
        let faces = (0..levels.len())
            .map(|m| if m == 0 { Vec::new() } else { pair(&self.faces[m], &other.faces[m], other.levels[m - 1]) })
            .collect();
        let degeneracies = (0..levels.len() - 1)
            .map(|m| pair(&self.degeneracies[m], &other.degeneracies[m], other.levels[m + 1]))
            .collect();
        Ok(TruncatedSimplicialSet {
            levels,
            faces,
            degeneracies,
        })
    }
}

/// Monotone maps `[m] -> A`, which coincide with join-preserving maps out of a chain.
pub fn triangulate(a: &Arc<FiniteSemilattice>, maxdim: usize, budget: &Budget) -> Result<TruncatedSimplicialSet> {
    let levels_maps: Vec<Vec<Vec<usize>>> = (0..=maxdim)
        .map(|m| enumerate_hom_maps(&chain(m), a, budget))
        .collect::<Result<_>>()?;
    let index: Vec<HashMap<&[usize], usize>> = levels_maps
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, x)| (x.as_slice(), i)).collect())
        .collect();
    let act = |m: usize, target: usize, g: &[usize]| -> Vec<usize> {
        levels_maps[m].iter().map(|x| index[target][compose(x, g).as_slice()]).collect()
    };
    let faces = (0..=maxdim)
        .map(|m| if m == 0 { Vec::new() } else { (0..=m).map(|i| act(m, m - 1, &face_map(i, m))).collect() })
        .collect();
    let degeneracies = (0..maxdim).map(|m| (0..=m).map(|i| act(m, m + 1, &degeneracy_map(i, m))).collect()).collect();
    Ok(TruncatedSimplicialSet {
        levels: levels_maps.iter().map(|l| l.len()).collect(),
        faces,
        degeneracies,
    })
}

/// The 1-simplex in the simplicial world: at level `m`, element `k ∈ 0..=m+1` is the
/// step sequence ending in exactly `k` ones.
pub fn interval_simplicial_set(maxdim: usize) -> TruncatedSimplicialSet {
    let step = |m: usize, k: usize| -> Vec<usize> { (0..=m).map(|j| usize::from(j + k > m)).collect() };
    let index = |seq: &[usize]| seq.iter().filter(|&&b| b == 1).count();
    let faces = (0..=maxdim)
        .map(|m| {
            if m == 0 {
                return Vec::new();
            }
            (0..=m)
                .map(|i| (0..m + 2).map(|k| index(&compose(&step(m, k), &face_map(i, m)))).collect())
                .collect()
        })
        .collect();
    let degeneracies = (0..maxdim)
        .map(|m| (0..=m).map(|i| (0..m + 2).map(|k| index(&compose(&step(m, k), &degeneracy_map(i, m)))).collect()).collect())
        .collect();
    TruncatedSimplicialSet {
        levels: (0..=maxdim).map(|m| m + 2).collect(),
        faces,
        degeneracies,
    }
}

/// Checks that `x ↦ (coordinates of x)` is a levelwise bijection from the triangulation
/// of `[1]^n` onto the `n`-fold product of the interval, commuting with all actions.
pub fn triangulation_product_failure(n: usize, maxdim: usize, budget: &Budget) -> Result<Option<String>> {
    let tri = triangulate(&cube(n), maxdim, budget)?;
    let interval = interval_simplicial_set(maxdim);
    let mut prod = TruncatedSimplicialSet {
        levels: vec![1; maxdim + 1],
        faces: (0..=maxdim).map(|m| if m == 0 { Vec::new() } else { vec![vec![0]; m + 1] }).collect(),
        degeneracies: (0..maxdim).map(|m| vec![vec![0]; m + 1]).collect(),
    };
    for _ in 0..n {
        prod = prod.product(&interval)?;
    }
    let maps: Vec<Vec<Vec<usize>>> = (0..=maxdim)
        .map(|m| enumerate_hom_maps(&chain(m), &cube(n), budget))
        .collect::<Result<_>>()?;
    let phi: Vec<Vec<usize>> = maps
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|x| {
                    (0..n).fold(0, |acc, i| {
                        let ones = x.iter().filter(|&&v| crate::semilattice::cube_coord(n, v, i) == 1).count();
                        acc * (x.len() + 1) + ones
                    })
                })
                .collect()
        })
        .collect();
    for m in 0..=maxdim {
        let mut seen = phi[m].clone();
        seen.sort_unstable();
        if tri.levels[m] != prod.levels[m] || seen != (0..prod.levels[m]).collect::<Vec<_>>() {
            return Ok(Some(format!("level {m} is not in bijection")));
        }
        if m > 0 {
            for i in 0..=m {
                if (0..tri.levels[m]).any(|x| phi[m - 1][tri.faces[m][i][x]] != prod.faces[m][i][phi[m][x]]) {
                    return Ok(Some(format!("face d_{i} at level {m}")));
                }
            }
        }
        if m < maxdim {
            for i in 0..=m {
                if (0..tri.levels[m]).any(|x| phi[m + 1][tri.degeneracies[m][i][x]] != prod.degeneracies[m][i][phi[m][x]]) {
                    return Ok(Some(format!("degeneracy s_{i} at level {m}")));
                }
            }
        }
    }
    Ok(None)
}

/// Monotone maps out of a chain into `A` coincide with join-preserving ones.
pub fn chain_monotone_is_join_failure(a: &Arc<FiniteSemilattice>, maxdim: usize, budget: &Budget) -> Result<Option<usize>> {
    for m in 0..=maxdim {
        let mut homs = enumerate_hom_maps(&chain(m), a, budget)?;
        let mut mono = FinPoset::chain(m + 1).monotone_maps(&a.to_poset());
        homs.sort();
        mono.sort();
        if homs != mono {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Monotone maps `[1]^m -> [1]^n` of posets.
pub fn dedekind_homs(m: usize, n: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let size = 1u128 << m.max(n).min(127);
    if size > budget.max_size as u128 {
        return Err(Error::SizeBudget {
            size,
            cap: budget.max_size as u128,
        });
    }
    Ok(cube(m).to_poset().monotone_maps(&cube(n).to_poset()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::{diamond, enumerate_homs};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn hom_counts_two_ways() {
        assert_eq!(cube_hom_count(1, 1), 3);
        assert_eq!(cube_hom_count(2, 1), 5);
        assert_eq!(cube_hom_count(3, 1), 9);
        assert_eq!(cube_hom_count(1, 2), 9);
        for m in 0..=3 {
            for n in 0..=3 {
                let count = cube_hom_count(m, n);
                assert_eq!(cube_hom_count_by_enumeration(m, n, &b()).unwrap(), count, "({m},{n})");
                assert_eq!(all_cube_homs(m, n, &b()).unwrap().len() as u128, count);
            }
        }
        assert_eq!(cube_hom_count(3, 3), 729);
    }

    #[test]
    fn encode_decode_is_a_bijection() {
        for m in 0..=3 {
            for n in 0..=3 {
                let homs = enumerate_homs(&cube(m), &cube(n), &b()).unwrap();
                let mut codes: Vec<CubeHom> = homs.iter().map(|f| CubeHom::encode(f).unwrap()).collect();
                for (f, c) in homs.iter().zip(&codes) {
                    assert_eq!(&c.decode(), f);
                }
                codes.sort();
                codes.dedup();
                assert_eq!(codes.len(), homs.len());
            }
        }
    }

    #[test]
    fn composition_by_substitution_matches_tables() {
        let f = all_cube_homs(2, 3, &b()).unwrap();
        let g = all_cube_homs(3, 1, &b()).unwrap();
        for x in f.iter().step_by(7) {
            for y in &g {
                let composite = y.after(x).unwrap();
                assert_eq!(composite.decode(), y.decode().after(&x.decode()).unwrap());
            }
        }
        assert!(g[0].after(&g[0]).is_err());
    }

    #[test]
    fn rejects_generator_below_bottom() {
        assert!(CubeHom::new(1, 1, 1, vec![0]).is_err());
        assert!(CubeHom::new(1, 1, 0, vec![2]).is_err());
    }

    #[test]
    fn identity_splits_trivially() {
        let q = cube(2);
        let s = split_idempotent(&SLatMorphism::identity(&q)).unwrap();
        assert_eq!(s.object().size(), 4);
    }

    #[test]
    fn non_idempotent_rejected() {
        let q = cube(1);
        let f = SLatMorphism::new(q.clone(), q, vec![1, 1]).unwrap();
        assert!(split_idempotent(&f).is_ok());
        let i = chain(2);
        let g = SLatMorphism::new(i.clone(), i, vec![1, 2, 2]).unwrap();
        assert!(matches!(split_idempotent(&g), Err(Error::NotIdempotent)));
    }

    #[test]
    fn retracts_of_small_distributive_lattices() {
        let r = retract_of_cube(&chain(1), &b()).unwrap();
        assert_eq!(r.dim, 2);
        let r = retract_of_cube(&chain(2), &b()).unwrap();
        assert_eq!(r.dim, 3);
        assert_eq!(r.retraction.after(&r.section).unwrap(), SLatMorphism::identity(&chain(2)));
        assert!(matches!(retract_of_cube(&diamond(), &b()), Err(Error::NotDistributive)));
    }

    #[test]
    fn join_irreducible_section_is_a_lift() {
        // In a distributive lattice, a ↦ {join-irreducibles below a} is a section.
        for a in enumerate_up_to(4, &b()).unwrap().iter().filter(|a| a.is_distributive_lattice()) {
            let r = retract_of_cube(a, &b()).unwrap();
            let irreducibles = a.generators();
            let bottom = a.bottom().unwrap();
            let map: Vec<usize> = (0..a.size())
                .map(|x| {
                    irreducibles
                        .iter()
                        .filter(|&&j| j != bottom && a.leq(j, x))
                        .fold(0, |acc, &j| acc | cube_generator(r.dim, j))
                })
                .collect();
            let section = SLatMorphism::new(a.clone(), r.retraction.dom().clone(), map).unwrap();
            assert_eq!(r.retraction.after(&section).unwrap(), SLatMorphism::identity(a));
        }
    }

    #[test]
    fn idempotent_completion_certificate() {
        let cert = certify_idempotent_completion(3, 4, &b()).unwrap();
        assert!(cert.all_passed(), "{:?}", cert.failures());
        assert_eq!(cert.check("distributive-classes-are-cube-retracts").unwrap().count, 5);
        assert_eq!(cert.check("non-distributive-classes-rejected").unwrap().count, 4);
    }

    #[test]
    fn simplicial_identities_and_examples() {
        assert!(simplicial_identity_failure(5).is_none());
        assert_eq!(degeneracy(0, 0).unwrap().map(), &[0, 0]);
        assert_eq!(face(1, 1).unwrap().map(), &[0]);
        assert_eq!(face(0, 1).unwrap().map(), &[1]);
        for n in 0..4 {
            for i in 0..=n {
                let s = degeneracy(i, n).unwrap();
                assert_eq!(s.after(&face(i, n + 1).unwrap()).unwrap(), SLatMorphism::identity(&chain(n)));
            }
        }
        assert!(face(3, 2).is_err());
    }

    #[test]
    fn triangulated_interval() {
        let t = triangulate(&chain(1), 3, &b()).unwrap();
        assert_eq!(t.levels, vec![2, 3, 4, 5]);
        assert_eq!(t.nondegenerate(0).len(), 2);
        assert_eq!(t.nondegenerate(1).len(), 1);
        assert_eq!(t.nondegenerate(2).len(), 0);
        assert_eq!(t, interval_simplicial_set(3));
    }

    #[test]
    fn cube_triangulation_top_simplices() {
        let fact = [1, 1, 2, 6];
        for n in 1..=3 {
            let t = triangulate(&cube(n), n, &b()).unwrap();
            assert_eq!(t.nondegenerate(n).len(), fact[n]);
            assert!(triangulation_product_failure(n, 4, &b()).unwrap().is_none());
        }
    }

    #[test]
    fn chain_monotone_maps_preserve_joins() {
        for a in enumerate_up_to(4, &b()).unwrap() {
            assert!(chain_monotone_is_join_failure(&a, 3, &b()).unwrap().is_none());
        }
    }

    #[test]
    fn dedekind_counts() {
        assert_eq!(dedekind_homs(2, 1, &b()).unwrap().len(), 6);
        assert_eq!(dedekind_homs(3, 1, &b()).unwrap().len(), 20);
        assert_eq!(dedekind_homs(0, 3, &b()).unwrap().len(), 8);
    }
}
