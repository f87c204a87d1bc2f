//! Executable obstructions: the map `u` on `[1]^3` that admits no Reedy
//! factorization among distributive lattices, and crown posets with winding
//! numbers, which separate the sieves generated by the folded crown extensions.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::certificate::Certificate;
use crate::cube::{degeneracy, face};
use crate::error::{Error, Result};
use crate::semilattice::{
    are_isomorphic, chain, cube, diamond, enumerate_hom_maps, enumerate_semilattices, image_factorize, FinPoset,
    SLatMorphism,
};

fn bit(n: usize, j: usize) -> usize {
    1 << (n - 1 - j)
}

fn coord(n: usize, x: usize, j: usize) -> bool {
    x >> (n - 1 - j) & 1 == 1
}

/// `u(x, y, z) = (x ∨ y, y ∨ z, z ∨ x)` on `[1]^3`.
pub fn map_u() -> SLatMorphism {
    let map = (0..8)
        .map(|v| {
            let (x, y, z) = (coord(3, v, 0), coord(3, v, 1), coord(3, v, 2));
            [(x || y), (y || z), (z || x)]
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &b)| if b { acc | bit(3, j) } else { acc })
        })
        .collect();
    SLatMorphism::new(cube(3), cube(3), map).expect("u preserves joins")
}

fn label(n: usize, x: usize) -> String {
    (0..n).map(|j| if coord(n, x, j) { '1' } else { '0' }).collect()
}

fn permute_coords(perm: &[usize], x: usize) -> usize {
    (0..3).filter(|&j| coord(3, x, perm[j])).fold(0, |acc, j| acc | bit(3, j))
}

/// Image of `u`, its shape, and its coordinate symmetry.
pub fn verify_u_image() -> Certificate {
    let mut cert = Certificate::new("obstruction-u-image");
    let u = map_u();
    let image = u.image();
    let labels: Vec<String> = image.iter().map(|&v| label(3, v)).collect();
    let expected = ["000", "011", "101", "110", "111"];
    cert.record(
        "image-elements",
        image.len() as u64,
        (labels != expected).then(|| format!("image {labels:?}")),
    );
    let (_, mono) = image_factorize(&u);
    let sub = mono.dom();
    cert.record(
        "image-is-diamond",
        1,
        (!are_isomorphic(sub, &diamond())).then(|| "image is not M3".to_string()),
    );
    cert.record(
        "image-not-distributive",
        1,
        sub.is_distributive_lattice().then(|| "image is distributive".to_string()),
    );
    cert.record(
        "u-100-is-101",
        1,
        (u.apply(0b100) != 0b101).then(|| format!("u(100) = {}", label(3, u.apply(0b100)))),
    );
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut failure = None;
    for p in &perms {
        let matched = perms.iter().any(|q| (0..8).all(|v| u.apply(permute_coords(p, v)) == permute_coords(q, u.apply(v))));
        if !matched && failure.is_none() {
            failure = Some(format!("no output permutation matches input permutation {p:?}"));
        }
    }
    cert.record("coordinate-symmetry", perms.len() as u64, failure);
    cert
}

fn closed_subsets_containing(base: &[usize]) -> Vec<Vec<usize>> {
    let required = base.iter().fold(0u32, |acc, &v| acc | 1 << v);
    (0u32..256)
        .filter(|s| s & required == required)
        .filter(|s| (0..8).all(|x| (0..8).all(|y| s >> x & 1 == 0 || s >> y & 1 == 0 || s >> (x | y) & 1 == 1)))
        .map(|s| (0..8).filter(|&x| s >> x & 1 == 1).collect())
        .collect()
}

/// `t(x, y, z) = x ∨ 2y ∨ 2z` as a morphism `[1]^3 -> [2]`.
pub fn map_t() -> SLatMorphism {
    let map = (0..8)
        .map(|v| {
            if coord(3, v, 1) || coord(3, v, 2) {
                2
            } else {
                usize::from(coord(3, v, 0))
            }
        })
        .collect();
    SLatMorphism::new(cube(3), chain(2), map).expect("t preserves joins")
}

/// Exhaustive certificate that `u` has no factorization into a lowering and a
/// raising map inside distributive lattices other than the trivial one.
pub fn certify_no_reedy_factorization_of_u() -> Certificate {
    let mut cert = Certificate::new("obstruction-u");
    cert.absorb("", verify_u_image());
    let u = map_u();
    let image = u.image();
    let c3 = cube(3);

    let supersets = closed_subsets_containing(&image);
    let distributive: Vec<&Vec<usize>> = supersets
        .iter()
        .filter(|s| {
            c3.subsemilattice(s)
                .map(|m| m.dom().is_distributive_lattice())
                .unwrap_or(false)
        })
        .collect();
    cert.record(
        "distributive-supersets-are-full-cube",
        supersets.len() as u64,
        (distributive.len() != 1 || distributive[0].len() != 8)
            .then(|| format!("distributive closed supersets: {distributive:?}")),
    );

    let budget = Budget::default();
    let mut found = 0u64;
    let mut examined = 0u64;
    let classes = enumerate_semilattices(image.len(), &budget).expect("size 5 is enumerable");
    for d in classes.iter().filter(|d| d.is_distributive_lattice()) {
        let surj = enumerate_hom_maps(&c3, d, &budget).expect("small hom space");
        let inj = enumerate_hom_maps(d, &c3, &budget).expect("small hom space");
        for e in surj.iter().filter(|e| is_onto(e, d.size())) {
            for m in inj.iter().filter(|m| is_one_to_one(m, 8)) {
                examined += 1;
                if (0..8).all(|v| m[e[v]] == u.apply(v)) {
                    found += 1;
                }
            }
        }
    }
    cert.record(
        "no-surjective-factorization-through-distributive",
        examined,
        (found > 0).then(|| format!("{found} factorizations found")),
    );

    let mut failure = None;
    for s in &distributive {
        let m = c3.subsemilattice(s).expect("closed subset");
        let corestricted: Vec<usize> = (0..8).map(|v| s.binary_search(&u.apply(v)).expect("image inside")).collect();
        let lowering_is_u = s.len() == 8 && (0..8).all(|v| s[corestricted[v]] == u.apply(v));
        if !lowering_is_u && failure.is_none() {
            failure = Some(format!("mono factorization through {} elements", m.dom().size()));
        }
    }
    cert.record("mono-factorization-forces-u", distributive.len() as u64, failure);

    let t = map_t();
    let s1 = degeneracy(1, 1).expect("s_1 exists");
    let d1 = face(1, 2).expect("d_1 exists");
    let bad = (0..8).find(|&v| d1.apply(s1.apply(t.apply(v))) != t.apply(u.apply(v)));
    cert.record(
        "t-square-commutes",
        8,
        bad.map(|v| format!("square fails at {}", label(3, v))),
    );
    let interval = chain(1);
    let js = enumerate_hom_maps(&c3, &interval, &budget).expect("small hom space");
    let lifts = js.iter().filter(|j| (0..8).all(|v| d1.apply(j[v]) == t.apply(v))).count();
    cert.record(
        "t-has-no-lift-through-d1",
        js.len() as u64,
        (lifts > 0 || js.len() != 9).then(|| format!("{lifts} lifts among {} maps", js.len())),
    );
    let uu = u.after(&u).expect("composable");
    let (_, mono) = image_factorize(&uu);
    cert.record(
        "uu-factors-through-interval",
        1,
        (!are_isomorphic(mono.dom(), &interval)).then(|| format!("image of uu has {} elements", mono.dom().size())),
    );
    cert
}

fn is_onto(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    map.iter().for_each(|&v| seen[v] = true);
    seen.into_iter().all(|b| b)
}

fn is_one_to_one(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// The crown `C_n`: elements `0..2n`, with `i <= i ± 1` for even `i`, indices mod `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownPoset {
    pub n: usize,
}

pub fn crown(n: usize) -> Result<CrownPoset> {
    if n < 3 {
        return Err(Error::CrownTooSmall(n));
    }
    Ok(CrownPoset { n })
}

impl CrownPoset {
    pub fn size(&self) -> usize {
        2 * self.n
    }

    /// The quotient map from the fence.
    pub fn project(&self, i: i64) -> usize {
        i.rem_euclid(2 * self.n as i64) as usize
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        let s = self.size();
        x == y || (x.is_multiple_of(2) && (y == (x + 1) % s || y == (x + s - 1) % s))
    }

    /// Cover pairs `(below, above)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let s = self.size();
        (0..s)
            .step_by(2)
            .flat_map(|x| [(x, (x + s - 1) % s), (x, x + 1)])
            .collect()
    }

    pub fn to_poset(&self) -> FinPoset {
        FinPoset::from_relation(self.size(), |x, y| self.leq(x, y)).expect("crowns are posets")
    }
}

/// A monotone map `C_m -> C_n` with its lift on the window `[0, 2m]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownMap {
    pub m: usize,
    pub n: usize,
    pub values: Vec<usize>,
    pub lift: Vec<i64>,
}

fn lift_from(values: &[usize], n: usize, base: i64) -> Vec<i64> {
    let period = 2 * n as i64;
    let len = values.len();
    let mut lift = Vec::with_capacity(len + 1);
    lift.push(base);
    for i in 1..=len {
        let prev = lift[i - 1];
        let target = values[i % len] as i64;
        let step = [-1, 0, 1]
            .into_iter()
            .find(|d| (prev + d).rem_euclid(period) == target)
            .expect("adjacent values are comparable");
        lift.push(prev + step);
    }
    lift
}

pub fn crown_map(m: usize, n: usize, values: Vec<usize>) -> Result<CrownMap> {
    let (dom, cod) = (crown(m)?, crown(n)?);
    if values.len() != dom.size() {
        return Err(Error::WrongLength {
            got: values.len(),
            expected: dom.size(),
        });
    }
    if let Some(&v) = values.iter().find(|&&v| v >= cod.size()) {
        return Err(Error::OutOfRange { x: 0, y: 0, value: v });
    }
    for (x, y) in dom.covers() {
        if !cod.leq(values[x], values[y]) {
            return Err(Error::NotMonotone(x, y));
        }
    }
    let lift = lift_from(&values, n, values[0] as i64);
    Ok(CrownMap { m, n, values, lift })
}

impl CrownMap {
    pub fn identity(n: usize) -> Result<Self> {
        crown_map(n, n, (0..2 * n).collect())
    }

    /// `f_a: C_{an} -> C_n`, induced by the identity of the fence.
    pub fn fold(a: usize, n: usize) -> Result<Self> {
        if a == 0 {
            return Err(Error::Invalid("fold factor must be positive".into()));
        }
        crown_map(a * n, n, (0..2 * a * n).map(|i| i % (2 * n)).collect())
    }

    /// Rotation `i -> i + 2k`.
    pub fn rotation(n: usize, k: usize) -> Result<Self> {
        crown_map(n, n, (0..2 * n).map(|i| (i + 2 * k) % (2 * n)).collect())
    }

    /// Reflection `i -> -i`.
    pub fn reflection(n: usize) -> Result<Self> {
        crown_map(n, n, (0..2 * n).map(|i| (2 * n - i) % (2 * n)).collect())
    }

    pub fn constant(m: usize, n: usize, value: usize) -> Result<Self> {
        crown_map(m, n, vec![value; 2 * m])
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CrownMap) -> Result<CrownMap> {
        if first.n != self.m {
            return Err(Error::NotComposable);
        }
        crown_map(first.m, self.n, first.values.iter().map(|&v| self.values[v]).collect())
    }

    pub fn winding(&self) -> i64 {
        let period = 2 * self.n as i64;
        let delta = self.lift[2 * self.m] - self.lift[0];
        assert!(delta % period == 0, "lift endpoints differ by {delta}, not a multiple of {period}");
        delta / period
    }

    /// Recomputes the lift from the base point `f(0) + 2n` and compares windings
    /// and the lift modulo `2n`.
    pub fn lift_is_independent(&self) -> bool {
        let period = 2 * self.n as i64;
        let other = lift_from(&self.values, self.n, self.values[0] as i64 + period);
        let same_shape = other.iter().zip(&self.lift).all(|(a, b)| a - b == period);
        let delta = other[2 * self.m] - other[0];
        same_shape && delta % period == 0 && delta / period == self.winding()
    }
}

/// Every monotone map `C_m -> C_n`, by backtracking in cyclic order.
pub fn enumerate_crown_maps(m: usize, n: usize) -> Result<Vec<CrownMap>> {
    let (dom, cod) = (crown(m)?, crown(n)?);
    if m > 6 || n > 6 {
        return Err(Error::SizeBudget {
            size: m.max(n) as u128,
            cap: 6,
        });
    }
    let mut out = Vec::new();
    let mut values = vec![0; dom.size()];
    fn extend(i: usize, values: &mut Vec<usize>, dom: &CrownPoset, cod: &CrownPoset, out: &mut Vec<CrownMap>) {
        let len = values.len();
        if i == len {
            if ordered(cod, len - 1, values[len - 1], values[0]) {
                let lift = lift_from(values, cod.n, values[0] as i64);
                out.push(CrownMap {
                    m: dom.n,
                    n: cod.n,
                    values: values.clone(),
                    lift,
                });
            }
            return;
        }
        for v in 0..cod.size() {
            if i == 0 || ordered(cod, i - 1, values[i - 1], v) {
                values[i] = v;
                extend(i + 1, values, dom, cod, out);
            }
        }
    }
    fn ordered(cod: &CrownPoset, prev_index: usize, prev: usize, next: usize) -> bool {
        if prev_index.is_multiple_of(2) {
            cod.leq(prev, next)
        } else {
            cod.leq(next, prev)
        }
    }
    extend(0, &mut values, &dom, &cod, &mut out);
    Ok(out)
}

/// A monotone map of cubes `[1]^m -> [1]^n` given on bitmasks; not in general join-preserving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneCubeMap {
    pub m: usize,
    pub n: usize,
    pub map: Vec<usize>,
}

impl MonotoneCubeMap {
    pub fn identity(n: usize) -> Self {
        MonotoneCubeMap {
            m: n,
            n,
            map: (0..1 << n).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn after(&self, first: &MonotoneCubeMap) -> Result<MonotoneCubeMap> {
        if first.n != self.m {
            return Err(Error::NotComposable);
        }
        Ok(MonotoneCubeMap {
            m: first.m,
            n: self.n,
            map: first.map.iter().map(|&v| self.map[v]).collect(),
        })
    }

    pub fn is_monotone(&self) -> bool {
        (0..self.map.len()).all(|x| {
            (0..self.m).all(|j| {
                let y = x | bit(self.m, j);
                self.map[x] & !self.map[y] == 0
            })
        })
    }

    pub fn preserves_joins(&self) -> bool {
        let size = self.map.len();
        (0..size).all(|x| (0..size).all(|y| self.map[x | y] == self.map[x] | self.map[y]))
    }

    pub fn is_idempotent(&self) -> bool {
        self.m == self.n && self.map.iter().all(|&v| self.map[v] == v)
    }

    pub fn to_semilattice_morphism(&self) -> Result<SLatMorphism> {
        SLatMorphism::new(cube(self.m), cube(self.n), self.map.clone())
    }
}

/// `c_n(i)_j = 1` iff `⌊i/2⌋ <= j <= ⌈i/2⌉`, with `j` read mod `n`.
pub fn crown_embedding(n: usize) -> Result<Vec<usize>> {
    let c = crown(n)?;
    Ok((0..c.size())
        .map(|i| bit(n, (i / 2) % n) | bit(n, i.div_ceil(2) % n))
        .collect())
}

/// Position of each cube point in the crown image, if any.
fn crown_preimage(n: usize, embedding: &[usize]) -> Vec<Option<usize>> {
    let mut pre = vec![None; 1 << n];
    for (i, &v) in embedding.iter().enumerate() {
        pre[v] = Some(i);
    }
    pre
}

/// The extension `overline(f)`: crown points map along `c_n ∘ f`, the bottom to
/// the bottom, and every other point to the top.
pub fn crown_extension(f: &CrownMap) -> MonotoneCubeMap {
    let cm = crown_embedding(f.m).expect("crown maps have m >= 3");
    let cn = crown_embedding(f.n).expect("crown maps have n >= 3");
    let pre = crown_preimage(f.m, &cm);
    let top = (1 << f.n) - 1;
    let map = (0..1usize << f.m)
        .map(|v| match pre[v] {
            Some(i) => cn[f.values[i]],
            None if v == 0 => 0,
            None => top,
        })
        .collect();
    MonotoneCubeMap { m: f.m, n: f.n, map }
}

/// The square `(c_m, overline f; f, c_n)` commutes and is a pullback.
pub fn verify_extension_pullback(f: &CrownMap) -> Certificate {
    let mut cert = Certificate::new("crown-extension-pullback");
    let cm = crown_embedding(f.m).expect("m >= 3");
    let cn = crown_embedding(f.n).expect("n >= 3");
    let dom = crown(f.m).expect("m >= 3");
    let embedding_ok = |c: &[usize], p: &CrownPoset| {
        let injective = is_one_to_one(c, 1 << p.n);
        let monotone = (0..p.size()).all(|x| (0..p.size()).all(|y| !p.leq(x, y) || c[x] & !c[y] == 0));
        injective && monotone
    };
    let cod = crown(f.n).expect("n >= 3");
    cert.record(
        "embeddings-injective-monotone",
        (dom.size() + cod.size()) as u64,
        (!embedding_ok(&cm, &dom) || !embedding_ok(&cn, &cod)).then(|| "crown embedding fails".to_string()),
    );
    let ext = crown_extension(f);
    cert.record(
        "extension-monotone",
        ext.map.len() as u64,
        (!ext.is_monotone()).then(|| "extension is not monotone".to_string()),
    );
    let bad = (0..dom.size()).find(|&i| ext.apply(cm[i]) != cn[f.values[i]]);
    cert.record(
        "square-commutes",
        dom.size() as u64,
        bad.map(|i| format!("fails at crown point {i}")),
    );
    let in_cm = crown_preimage(f.m, &cm);
    let in_cn = crown_preimage(f.n, &cn);
    let bad = (0..1usize << f.m).find(|&v| in_cn[ext.apply(v)].is_some() && in_cm[v].is_none());
    cert.record(
        "square-is-pullback",
        1 << f.m,
        bad.map(|v| format!("{} maps into the crown but is not a crown point", label(f.m, v))),
    );
    cert
}

/// Certificate for the winding facts: maps into larger crowns wind zero, winding
/// is multiplicative, and the bar-extension preserves composites but not identities.
pub fn certify_wind_properties() -> Result<Certificate> {
    let mut cert = Certificate::new("crown-winding");
    for (m, n) in [(3, 4), (3, 5), (4, 5), (3, 6)] {
        let maps = enumerate_crown_maps(m, n)?;
        let bad = maps.iter().find(|f| f.winding() != 0);
        cert.record(
            format!("zero-winding-C{m}-to-C{n}"),
            maps.len() as u64,
            bad.map(|f| format!("{:?} winds {}", f.values, f.winding())),
        );
    }
    let mut maps = std::collections::BTreeMap::new();
    for a in 3..=4 {
        for b in 3..=4 {
            maps.insert((a, b), enumerate_crown_maps(a, b)?);
        }
    }
    let mut count = 0u64;
    let mut failure = None;
    let mut independent = true;
    for ((a, b), fs) in &maps {
        for f in fs {
            independent &= f.lift_is_independent();
            for c in 3..=4 {
                for g in &maps[&(*b, c)] {
                    count += 1;
                    let gf = g.after(f)?;
                    if gf.winding() != g.winding() * f.winding() && failure.is_none() {
                        failure = Some(format!("C{a}->C{b}->C{c}: {:?} then {:?}", f.values, g.values));
                    }
                }
            }
        }
    }
    cert.record("winding-multiplicative", count, failure);
    cert.record(
        "lift-independent-of-base-point",
        maps.values().map(|v| v.len() as u64).sum(),
        (!independent).then(|| "lift depends on the base point".to_string()),
    );

    let mut failure = None;
    for n in 3..=4 {
        let f2 = CrownMap::fold(2, n)?;
        let f4 = f2.after(&CrownMap::fold(2, 2 * n)?)?;
        if f2.winding() != 2 || f4.winding() != 4 || CrownMap::identity(n)?.winding() != 1 {
            failure = Some(format!("n = {n}: folds wind {} and {}", f2.winding(), f4.winding()));
        }
        for k in 0..n {
            let r = CrownMap::rotation(n, k)?;
            let s = CrownMap::reflection(n)?.after(&r)?;
            if r.winding() != 1 || s.winding() != -1 {
                failure = Some(format!("n = {n}: rotation by {k} winds {}", r.winding()));
            }
        }
    }
    cert.record("fold-and-symmetry-windings", 2, failure);

    let mut count = 0u64;
    let mut failure = None;
    for ((_, b), fs) in &maps {
        for f in fs.iter().step_by(7) {
            for c in 3..=4 {
                for g in maps[&(*b, c)].iter().step_by(5) {
                    count += 1;
                    let lhs = crown_extension(&g.after(f)?);
                    let rhs = crown_extension(g).after(&crown_extension(f))?;
                    if lhs != rhs && failure.is_none() {
                        failure = Some(format!("{:?} then {:?}", f.values, g.values));
                    }
                }
            }
        }
    }
    cert.record("extension-preserves-composites", count, failure);

    let mut failure = None;
    for n in 3..=4 {
        let e = crown_extension(&CrownMap::identity(n)?);
        let c = crown_embedding(n)?;
        let fixed: Vec<usize> = (0..1 << n).filter(|&v| e.apply(v) == v).collect();
        let mut expected: Vec<usize> = c.iter().copied().chain([0, (1 << n) - 1]).collect();
        expected.sort_unstable();
        if !e.is_idempotent() || fixed != expected {
            failure = Some(format!("n = {n}: fixed points {fixed:?}"));
        }
    }
    let e4 = crown_extension(&CrownMap::identity(4)?);
    if e4 == MonotoneCubeMap::identity(4) {
        failure = Some("extension of the identity of C4 is the identity".to_string());
    }
    cert.record("extension-of-identity-is-idempotent", 2, failure);
    Ok(cert)
}

/// Certificate that the sieves generated by the extensions of the folds
/// `f_1 <- f_2 <- f_4` do not stabilize at the first step.
pub fn certify_sieve_chain_nonstabilization(n: usize, budget: &Budget) -> Result<Certificate> {
    crown(n)?;
    if 1usize << (2 * n) > budget.max_size {
        return Err(Error::SizeBudget {
            size: 1u128 << (2 * n),
            cap: budget.max_size as u128,
        });
    }
    let mut cert = Certificate::new("sieve-chain");
    let f1 = CrownMap::identity(n)?;
    let f2 = CrownMap::fold(2, n)?;
    let f4 = CrownMap::fold(4, n)?;
    let fold2 = CrownMap::fold(2, n)?;
    let fold4 = CrownMap::fold(2, 2 * n)?;
    let mut count = 0u64;
    let mut failure = None;
    for (fa, fold, f2a) in [(&f1, &fold2, &f2), (&f2, &fold4, &f4)] {
        let lhs = crown_extension(f2a);
        let rhs = crown_extension(fa).after(&crown_extension(fold))?;
        count += lhs.map.len() as u64;
        if lhs != rhs || fa.after(fold)? != *f2a {
            failure = Some(format!("stage C{} -> C{n}", f2a.m));
        }
    }
    cert.record("sieve-inclusions", count, failure);

    let target = crown_extension(&f1);
    let ext2 = crown_extension(&f2);
    let (nodes, found) = search_factorization(&ext2, &target, budget)?;
    cert.record(
        "no-factorization-of-f1-through-f2",
        nodes,
        found.map(|g| format!("g = {g:?}")),
    );
    let maps = enumerate_crown_maps(n, 2 * n)?;
    let bad = maps.iter().find(|f| f.winding() != 0);
    cert.record(
        format!("zero-winding-C{n}-to-C{}", 2 * n),
        maps.len() as u64,
        bad.map(|f| format!("{:?} winds {}", f.values, f.winding())),
    );
    cert.config = serde_json::json!({ "n": n });
    Ok(cert)
}

/// Backtracking search for a monotone `g` with `through ∘ g = target`.
/// Returns the number of search nodes and a witness if one exists.
pub fn search_factorization(
    through: &MonotoneCubeMap,
    target: &MonotoneCubeMap,
    budget: &Budget,
) -> Result<(u64, Option<Vec<usize>>)> {
    if through.n != target.n {
        return Err(Error::NotComposable);
    }
    let (m, k) = (target.m, through.m);
    let candidates: Vec<Vec<usize>> = (0..1usize << m)
        .map(|v| (0..1usize << k).filter(|&w| through.apply(w) == target.apply(v)).collect())
        .collect();
    let mut g = vec![0usize; 1 << m];
    let mut nodes = 0u64;
    fn go(
        v: usize,
        m: usize,
        g: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        nodes: &mut u64,
        cap: u128,
    ) -> Result<bool> {
        if v == g.len() {
            return Ok(true);
        }
        for &w in &candidates[v] {
            *nodes += 1;
            if *nodes as u128 > cap {
                return Err(Error::CandidateSpaceExceeded {
                    space: *nodes as u128,
                    cap,
                });
            }
            let below_ok = (0..m).filter(|&j| v & bit(m, j) != 0).all(|j| g[v & !bit(m, j)] & !w == 0);
            if below_ok {
                g[v] = w;
                if go(v + 1, m, g, candidates, nodes, cap)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    let found = go(0, m, &mut g, &candidates, &mut nodes, budget.max_candidates)?;
    Ok((nodes, found.then_some(g)))
}

/// Height one, with every even element below exactly two odd ones.
pub fn crown_shape_holds(c: &CrownPoset) -> bool {
    let s = c.size();
    (0..s).all(|x| {
        let above = (0..s).filter(|&y| y != x && c.leq(x, y)).count();
        let below = (0..s).filter(|&y| y != x && c.leq(y, x)).count();
        if x % 2 == 0 {
            above == 2 && below == 0
        } else {
            above == 0 && below == 2
        }
    })
}
