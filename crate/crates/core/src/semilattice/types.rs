use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Law, Result};

/// A finite inhabited join-semilattice on the carrier `0..size`.
///
/// The induced order `x <= y` (iff `x v y = y`) and the top element are
/// cached at construction.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "SemilatticeJson", into = "SemilatticeJson")]
pub struct FiniteSemilattice {
    size: usize,
    join: Vec<usize>,
    leq: Vec<bool>,
    top: usize,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemilatticeJson {
    pub size: usize,
    pub join: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TryFrom<SemilatticeJson> for FiniteSemilattice {
    type Error = Error;

    fn try_from(j: SemilatticeJson) -> Result<Self> {
        if j.join.len() != j.size {
            return Err(Error::NotSquare {
                row: j.join.len(),
                len: j.join.len(),
                size: j.size,
            });
        }
        let s = validate_semilattice(&j.join)?;
        match j.labels {
            Some(l) => s.with_labels(l),
            None => Ok(s),
        }
    }
}

impl From<FiniteSemilattice> for SemilatticeJson {
    fn from(s: FiniteSemilattice) -> Self {
        SemilatticeJson {
            size: s.size,
            join: s.table(),
            labels: s.labels,
        }
    }
}

impl PartialEq for FiniteSemilattice {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.join == other.join
    }
}

impl Eq for FiniteSemilattice {}

impl fmt::Debug for FiniteSemilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSemilattice({}; {:?})", self.size, self.table())
    }
}

/// Validates a square join table against the semilattice laws.
pub fn validate_semilattice(table: &[Vec<usize>]) -> Result<FiniteSemilattice> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut join = Vec::with_capacity(n * n);
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                row: x,
                len: row.len(),
                size: n,
            });
        }
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::OutOfRange { x, y, value: v });
            }
            join.push(v);
        }
    }
    FiniteSemilattice::from_flat(n, join)
}

impl FiniteSemilattice {
    /// Validates a flattened row-major table.
    pub fn from_flat(size: usize, join: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Empty);
        }
        if join.len() != size * size {
            return Err(Error::NotSquare {
                row: 0,
                len: join.len(),
                size: size * size,
            });
        }
        if let Some((x, y)) = join
            .iter()
            .enumerate()
            .find(|(_, &v)| v >= size)
            .map(|(i, _)| (i / size, i % size))
        {
            return Err(Error::OutOfRange {
                x,
                y,
                value: join[x * size + y],
            });
        }
        let j = |x: usize, y: usize| join[x * size + y];
        for x in 0..size {
            if j(x, x) != x {
                return Err(Error::ViolatedLaw {
                    law: Law::Idempotence,
                    witness: (x, x, x),
                });
            }
        }
        for x in 0..size {
            for y in 0..size {
                if j(x, y) != j(y, x) {
                    return Err(Error::ViolatedLaw {
                        law: Law::Commutativity,
                        witness: (x, y, y),
                    });
                }
            }
        }
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    if j(j(x, y), z) != j(x, j(y, z)) {
                        return Err(Error::ViolatedLaw {
                            law: Law::Associativity,
                            witness: (x, y, z),
                        });
                    }
                }
            }
        }
        Ok(Self::trusted(size, join))
    }

    /// Builds from a table already known to satisfy the laws.
    pub(crate) fn trusted(size: usize, join: Vec<usize>) -> Self {
        let mut leq = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                leq[x * size + y] = join[x * size + y] == y;
            }
        }
        let top = (0..size).fold(0, |acc, x| join[acc * size + x]);
        FiniteSemilattice {
            size,
            join,
            leq,
            top,
            labels: None,
        }
    }

    /// Builds from a partial order in which every pair has a least upper bound.
    pub fn from_order(size: usize, leq: &[bool]) -> Result<Self> {
        let poset = FinPoset::new(size, leq.to_vec())?;
        let mut join = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                join[x * size + y] = poset.least_upper_bound(x, y).ok_or_else(|| {
                    Error::NotPartialOrder(format!("{x} and {y} have no least upper bound"))
                })?;
            }
        }
        Ok(Self::trusted(size, join))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::WrongLength {
                got: labels.len(),
                expected: self.size,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.join
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// The least element, if one exists.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.size).find(|&b| (0..self.size).all(|x| self.leq(b, x)))
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, it: I) -> Option<usize> {
        it.into_iter().reduce(|a, b| self.join(a, b))
    }

    /// Meet as the join of common lower bounds; `None` when there are none.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.join_all((0..self.size).filter(|&z| self.leq(z, x) && self.leq(z, y)))
    }

    pub fn upset(&self, x: usize) -> Vec<usize> {
        (0..self.size).filter(|&y| self.leq(x, y)).collect()
    }

    pub fn downset(&self, x: usize) -> Vec<usize> {
        (0..self.size).filter(|&y| self.leq(y, x)).collect()
    }

    /// Covering pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in 0..self.size {
                if self.lt(x, y) && !(0..self.size).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Join-irreducible elements: those that are not the join of the elements strictly below.
    /// Every element is the join of the generators below it; sorted by downset size.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = (0..self.size)
            .filter(|&x| {
                let below = self.join_all((0..self.size).filter(|&y| self.lt(y, x)));
                below != Some(x)
            })
            .collect();
        gens.sort_by_key(|&g| (self.downset(g).len(), g));
        gens
    }

    pub fn is_closed_subset(&self, subset: &[usize]) -> bool {
        let mut mask = vec![false; self.size];
        for &s in subset {
            mask[s] = true;
        }
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| mask[self.join(a, b)]))
    }

    /// The sub-semilattice on a nonempty join-closed subset, with its inclusion.
    /// Elements keep the relative order of `subset` after sorting.
    pub fn subsemilattice(self: &Arc<Self>, subset: &[usize]) -> Result<SLatMorphism> {
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::Empty);
        }
        if !self.is_closed_subset(&elems) {
            return Err(Error::Invalid("subset is not join-closed".into()));
        }
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let k = elems.len();
        let mut join = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                join[i * k + j] = pos[self.join(elems[i], elems[j])];
            }
        }
        let mut sub = Self::trusted(k, join);
        if let Some(l) = &self.labels {
            sub.labels = Some(elems.iter().map(|&e| l[e].clone()).collect());
        }
        Ok(SLatMorphism::trusted(Arc::new(sub), self.clone(), elems))
    }

    pub fn to_poset(&self) -> FinPoset {
        FinPoset {
            size: self.size,
            leq: self.leq.clone(),
        }
    }

    /// Distributivity verdict for the lattice structure.
    pub fn distributivity(&self) -> Distributivity {
        if self.bottom().is_none() {
            return Distributivity::NoBottom;
        }
        let n = self.size;
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[x * n + y] = self.meet(x, y).expect("bottom exists");
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = meet[x * n + self.join(y, z)];
                    let rhs = self.join(meet[x * n + y], meet[x * n + z]);
                    if lhs != rhs {
                        return Distributivity::Violation(x, y, z);
                    }
                }
            }
        }
        Distributivity::Distributive
    }

    pub fn is_distributive_lattice(&self) -> bool {
        self.distributivity() == Distributivity::Distributive
    }
}

/// Outcome of a distributivity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distributivity {
    Distributive,
    NoBottom,
    /// `x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z)`.
    Violation(usize, usize, usize),
}

/// A finite partial order on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinPoset {
    size: usize,
    leq: Vec<bool>,
}

impl FinPoset {
    pub fn new(size: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != size * size {
            return Err(Error::WrongLength {
                got: leq.len(),
                expected: size * size,
            });
        }
        let r = |x: usize, y: usize| leq[x * size + y];
        for x in 0..size {
            if !r(x, x) {
                return Err(Error::NotPartialOrder(format!("{x} <= {x} fails")));
            }
            for y in 0..size {
                if x != y && r(x, y) && r(y, x) {
                    return Err(Error::NotPartialOrder(format!("{x} and {y} are mutually below")));
                }
                for z in 0..size {
                    if r(x, y) && r(y, z) && !r(x, z) {
                        return Err(Error::NotPartialOrder(format!("{x} <= {y} <= {z} not transitive")));
                    }
                }
            }
        }
        Ok(FinPoset { size, leq })
    }

    pub fn from_relation(size: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                leq[x * size + y] = rel(x, y);
            }
        }
        Self::new(size, leq)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_relation(n, |x, y| x == y).expect("discrete order")
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_relation(n, |x, y| x <= y).expect("chain order")
    }

    /// `1 ⋆ P`: a fresh least element 0 below the shifted copy of `P`.
    pub fn with_bottom(&self) -> Self {
        Self::from_relation(self.size + 1, |x, y| {
            x == 0 || (y != 0 && self.leq(x - 1, y - 1))
        })
        .expect("adjoining a bottom keeps a partial order")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn least_upper_bound(&self, x: usize, y: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.size)
            .filter(|&z| self.leq(x, z) && self.leq(y, z))
            .collect();
        ubs.iter()
            .copied()
            .find(|&z| ubs.iter().all(|&w| self.leq(z, w)))
    }

    pub fn is_monotone_into(&self, target: &FinPoset, map: &[usize]) -> bool {
        (0..self.size).all(|x| {
            (0..self.size).all(|y| !self.leq(x, y) || target.leq(map[x], map[y]))
        })
    }

    /// All monotone maps into `target` by backtracking along a linear extension.
    pub fn monotone_maps(&self, target: &FinPoset) -> Vec<Vec<usize>> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; self.size];
        self.monotone_rec(target, &order, 0, &mut map, &mut out);
        out.sort();
        out
    }

    fn monotone_rec(
        &self,
        target: &FinPoset,
        order: &[usize],
        k: usize,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            out.push(map.clone());
            return;
        }
        let x = order[k];
        for v in 0..target.size {
            let ok = order[..k].iter().all(|&y| !self.leq(y, x) || target.leq(map[y], v));
            if ok {
                map[x] = v;
                self.monotone_rec(target, order, k + 1, map, out);
            }
        }
        map[x] = usize::MAX;
    }

    /// Elements sorted so that every element follows everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.size).collect();
        v.sort_by_key(|&x| ((0..self.size).filter(|&y| self.leq(y, x)).count(), x));
        v
    }
}

/// A join-preserving map between finite semilattices.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MorphismJson", into = "MorphismJson")]
pub struct SLatMorphism {
    dom: Arc<FiniteSemilattice>,
    cod: Arc<FiniteSemilattice>,
    map: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismJson {
    pub dom: FiniteSemilattice,
    pub cod: FiniteSemilattice,
    pub map: Vec<usize>,
}

impl TryFrom<MorphismJson> for SLatMorphism {
    type Error = Error;

    fn try_from(j: MorphismJson) -> Result<Self> {
        SLatMorphism::new(Arc::new(j.dom), Arc::new(j.cod), j.map)
    }
}

impl From<SLatMorphism> for MorphismJson {
    fn from(m: SLatMorphism) -> Self {
        MorphismJson {
            dom: (*m.dom).clone(),
            cod: (*m.cod).clone(),
            map: m.map,
        }
    }
}

impl fmt::Debug for SLatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SLatMorphism({} -> {}: {:?})", self.dom.size(), self.cod.size(), self.map)
    }
}

impl SLatMorphism {
    pub fn new(
        dom: Arc<FiniteSemilattice>,
        cod: Arc<FiniteSemilattice>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != dom.size() {
            return Err(Error::WrongLength {
                got: map.len(),
                expected: dom.size(),
            });
        }
        if let Some(&v) = map.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::OutOfRange { x: 0, y: 0, value: v });
        }
        if let Some((x, y)) = first_join_failure(&dom, &cod, &map) {
            return Err(Error::NotJoinPreserving(x, y));
        }
        Ok(SLatMorphism { dom, cod, map })
    }

    pub(crate) fn trusted(
        dom: Arc<FiniteSemilattice>,
        cod: Arc<FiniteSemilattice>,
        map: Vec<usize>,
    ) -> Self {
        debug_assert!(first_join_failure(&dom, &cod, &map).is_none());
        SLatMorphism { dom, cod, map }
    }

    pub fn identity(a: &Arc<FiniteSemilattice>) -> Self {
        SLatMorphism::trusted(a.clone(), a.clone(), (0..a.size()).collect())
    }

    pub fn constant(
        dom: &Arc<FiniteSemilattice>,
        cod: &Arc<FiniteSemilattice>,
        value: usize,
    ) -> Self {
        SLatMorphism::trusted(dom.clone(), cod.clone(), vec![value; dom.size()])
    }

    pub fn dom(&self) -> &Arc<FiniteSemilattice> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteSemilattice> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SLatMorphism) -> Result<SLatMorphism> {
        if !same_object(&first.cod, &self.dom) {
            return Err(Error::NotComposable);
        }
        Ok(SLatMorphism::trusted(
            first.dom.clone(),
            self.cod.clone(),
            first.map.iter().map(|&x| self.map[x]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_idempotent(&self) -> bool {
        same_object(&self.dom, &self.cod) && self.map.iter().all(|&y| self.map[y] == y)
    }

    pub fn inverse(&self) -> Option<SLatMorphism> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.cod.size()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(SLatMorphism::trusted(self.cod.clone(), self.dom.clone(), inv))
    }
}

pub(crate) fn first_join_failure(
    dom: &FiniteSemilattice,
    cod: &FiniteSemilattice,
    map: &[usize],
) -> Option<(usize, usize)> {
    let n = dom.size();
    for x in 0..n {
        for y in x..n {
            if map[dom.join(x, y)] != cod.join(map[x], map[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

pub(crate) fn same_object(a: &Arc<FiniteSemilattice>, b: &Arc<FiniteSemilattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_and_interval_tables_validate() {
        let t = validate_semilattice(&[vec![0]]).unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(t.top(), 0);
        let i = validate_semilattice(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(i.top(), 1);
        assert_eq!(i.bottom(), Some(0));
        assert!(i.leq(0, 1) && !i.leq(1, 0));
    }

    #[test]
    fn asymmetric_table_reports_commutativity() {
        let err = validate_semilattice(&[vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::ViolatedLaw {
                law: Law::Commutativity,
                witness: (0, 1, 1)
            }
        );
    }

    #[test]
    fn empty_table_is_rejected() {
        assert_eq!(validate_semilattice(&[]).unwrap_err(), Error::Empty);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // Rock-paper-scissors: commutative and idempotent but not associative.
        let t = vec![vec![0, 0, 2], vec![0, 1, 1], vec![2, 1, 2]];
        assert!(matches!(
            validate_semilattice(&t),
            Err(Error::ViolatedLaw {
                law: Law::Associativity,
                ..
            })
        ));
    }

    #[test]
    fn json_round_trip() {
        let i = validate_semilattice(&[vec![0, 1], vec![1, 1]]).unwrap();
        let s = serde_json::to_string(&i).unwrap();
        let back: FiniteSemilattice = serde_json::from_str(&s).unwrap();
        assert_eq!(i, back);
        assert!(serde_json::from_str::<FiniteSemilattice>(r#"{"size":2,"join":[[0,0],[1,1]]}"#).is_err());
    }
}
