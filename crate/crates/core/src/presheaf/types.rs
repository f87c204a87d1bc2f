use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reedy::FinCategory;
use crate::union_find::UnionFind;

/// A finite-set-valued presheaf: a set `X_a` per object and, for each morphism
/// `f: a -> b`, a function `X_b -> X_a` written `x ↦ x·f`.
#[derive(Clone, Debug)]
pub struct FinPresheaf {
    base: Arc<FinCategory>,
    sizes: Vec<usize>,
    actions: Vec<Vec<usize>>,
}

impl PartialEq for FinPresheaf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base) && self.sizes == other.sizes && self.actions == other.actions
    }
}

impl Eq for FinPresheaf {}

impl FinPresheaf {
    pub fn new(base: Arc<FinCategory>, sizes: Vec<usize>, actions: Vec<Vec<usize>>) -> Result<Self> {
        let x = Self::unchecked(base, sizes, actions)?;
        if let Some(w) = x.functoriality_failure() {
            return Err(Error::InvalidPresheaf(w));
        }
        Ok(x)
    }

    /// Shape-checked but not functoriality-checked.
    pub(crate) fn unchecked(base: Arc<FinCategory>, sizes: Vec<usize>, actions: Vec<Vec<usize>>) -> Result<Self> {
        if sizes.len() != base.num_objects() || actions.len() != base.num_morphisms() {
            return Err(Error::InvalidPresheaf("wrong number of levels or actions".into()));
        }
        for (f, act) in actions.iter().enumerate() {
            let (a, b) = (base.dom(f), base.cod(f));
            if act.len() != sizes[b] || act.iter().any(|&v| v >= sizes[a]) {
                return Err(Error::InvalidPresheaf(format!("action of morphism {f} has the wrong shape")));
            }
        }
        Ok(FinPresheaf { base, sizes, actions })
    }

    /// First failure of `X(id) = id` or `X(g∘f) = X(f)∘X(g)`.
    pub fn functoriality_failure(&self) -> Option<String> {
        let c = &self.base;
        for a in 0..c.num_objects() {
            let id = c.identity(a);
            if self.actions[id].iter().enumerate().any(|(i, &v)| i != v) {
                return Some(format!("identity at object {a} acts nontrivially"));
            }
        }
        for f in 0..c.num_morphisms() {
            for &g in c.out_of(c.cod(f)) {
                let gf = c.compose(g, f);
                for x in 0..self.sizes[c.cod(g)] {
                    if self.actions[gf][x] != self.actions[f][self.actions[g][x]] {
                        return Some(format!("X({g}∘{f}) differs from X({f})∘X({g}) at {x}"));
                    }
                }
            }
        }
        None
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    #[inline]
    pub fn size(&self, a: usize) -> usize {
        self.sizes[a]
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `x·f` for `x ∈ X_{cod f}`.
    #[inline]
    pub fn act(&self, x: usize, f: usize) -> usize {
        self.actions[f][x]
    }

    pub fn action(&self, f: usize) -> &[usize] {
        &self.actions[f]
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    /// The representable `yo(r)`: level `s` is `Hom(s, r)` in hom-list order.
    pub fn representable(base: &Arc<FinCategory>, r: usize) -> Self {
        let sizes = (0..base.num_objects()).map(|s| base.hom(s, r).len()).collect();
        let actions = (0..base.num_morphisms())
            .map(|f| {
                base.hom(base.cod(f), r)
                    .iter()
                    .map(|&g| base.hom_pos(base.compose(g, f)))
                    .collect()
            })
            .collect();
        FinPresheaf {
            base: base.clone(),
            sizes,
            actions,
        }
    }

    pub fn terminal(base: &Arc<FinCategory>) -> Self {
        FinPresheaf {
            base: base.clone(),
            sizes: vec![1; base.num_objects()],
            actions: vec![vec![0]; base.num_morphisms()],
        }
    }

    pub fn empty(base: &Arc<FinCategory>) -> Self {
        FinPresheaf {
            base: base.clone(),
            sizes: vec![0; base.num_objects()],
            actions: vec![Vec::new(); base.num_morphisms()],
        }
    }

    /// `X ⊔ Y`; elements of `Y` follow those of `X` in each level.
    pub fn coproduct(&self, other: &FinPresheaf) -> Result<Self> {
        if !Arc::ptr_eq(&self.base, &other.base) {
            return Err(Error::InvalidPresheaf("different base categories".into()));
        }
        let c = &self.base;
        let sizes: Vec<usize> = (0..c.num_objects()).map(|a| self.sizes[a] + other.sizes[a]).collect();
        let actions = (0..c.num_morphisms())
            .map(|f| {
                let off = self.sizes[c.dom(f)];
                self.actions[f]
                    .iter()
                    .copied()
                    .chain(other.actions[f].iter().map(|&v| v + off))
                    .collect()
            })
            .collect();
        Ok(FinPresheaf {
            base: c.clone(),
            sizes,
            actions,
        })
    }

    /// Offsets of each level inside a flat numbering of all elements.
    pub(crate) fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.sizes.len());
        let mut acc = 0;
        for &s in &self.sizes {
            off.push(acc);
            acc += s;
        }
        off
    }

    /// Quotient by the least action-compatible equivalence containing `pairs`
    /// (pairs of elements `(object, x, y)` in a common level), with the projection.
    pub fn quotient(&self, pairs: &[(usize, usize, usize)]) -> (FinPresheaf, PresheafMorphism) {
        let c = &self.base;
        let off = self.offsets();
        let mut uf = UnionFind::new(self.total_size());
        for &(a, x, y) in pairs {
            uf.union(off[a] + x, off[a] + y);
        }
        loop {
            let mut changed = false;
            for f in 0..c.num_morphisms() {
                let (a, b) = (c.dom(f), c.cod(f));
                for x in 0..self.sizes[b] {
                    let r = uf.find(off[b] + x) - off[b];
                    if r != x {
                        changed |= uf.union(off[a] + self.act(x, f), off[a] + self.act(r, f));
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let (_, class) = uf.classes();
        let mut comps = Vec::new();
        let mut sizes = Vec::new();
        for a in 0..c.num_objects() {
            let mut local: BTreeMap<usize, usize> = BTreeMap::new();
            let mut comp = Vec::with_capacity(self.sizes[a]);
            for x in 0..self.sizes[a] {
                let k = local.len();
                comp.push(*local.entry(class[off[a] + x]).or_insert(k));
            }
            sizes.push(local.len());
            comps.push(comp);
        }
        let actions = (0..c.num_morphisms())
            .map(|f| {
                let (a, b) = (c.dom(f), c.cod(f));
                let mut act = vec![0; sizes[b]];
                for x in 0..self.sizes[b] {
                    act[comps[b][x]] = comps[a][self.act(x, f)];
                }
                act
            })
            .collect();
        let q = FinPresheaf {
            base: c.clone(),
            sizes,
            actions,
        };
        let proj = PresheafMorphism {
            dom: self.clone(),
            cod: q.clone(),
            components: comps,
        };
        (q, proj)
    }

    /// The sub-presheaf generated by `(object, element)` seeds, with its inclusion.
    pub fn generated_subpresheaf(&self, seeds: &[(usize, usize)]) -> (FinPresheaf, PresheafMorphism) {
        let c = &self.base;
        let mut keep: Vec<Vec<bool>> = self.sizes.iter().map(|&s| vec![false; s]).collect();
        let mut stack: Vec<(usize, usize)> = seeds.to_vec();
        while let Some((b, x)) = stack.pop() {
            if std::mem::replace(&mut keep[b][x], true) {
                continue;
            }
            for a in 0..c.num_objects() {
                for &f in c.hom(a, b) {
                    let y = self.act(x, f);
                    if !keep[a][y] {
                        stack.push((a, y));
                    }
                }
            }
        }
        self.restrict_to(&keep).expect("generated sets are closed")
    }

    /// The sub-presheaf on the marked elements, which must be closed under the action.
    pub fn restrict_to(&self, keep: &[Vec<bool>]) -> Result<(FinPresheaf, PresheafMorphism)> {
        let c = &self.base;
        let elems: Vec<Vec<usize>> = keep
            .iter()
            .map(|k| k.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
            .collect();
        let mut pos: Vec<Vec<usize>> = self.sizes.iter().map(|&s| vec![usize::MAX; s]).collect();
        for (a, es) in elems.iter().enumerate() {
            for (i, &x) in es.iter().enumerate() {
                pos[a][x] = i;
            }
        }
        let mut actions = Vec::with_capacity(c.num_morphisms());
        for f in 0..c.num_morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            let mut act = Vec::with_capacity(elems[b].len());
            for &x in &elems[b] {
                let y = pos[a][self.act(x, f)];
                if y == usize::MAX {
                    return Err(Error::InvalidPresheaf("subset is not closed under the action".into()));
                }
                act.push(y);
            }
            actions.push(act);
        }
        let sub = FinPresheaf {
            base: c.clone(),
            sizes: elems.iter().map(|e| e.len()).collect(),
            actions,
        };
        let inc = PresheafMorphism {
            dom: sub.clone(),
            cod: self.clone(),
            components: elems,
        };
        Ok((sub, inc))
    }

    pub fn to_json(&self, base_id: &str) -> PresheafJson {
        PresheafJson {
            base: base_id.to_string(),
            levels: self.sizes.clone(),
            actions: self
                .actions
                .iter()
                .enumerate()
                .filter(|(f, _)| !self.base.is_identity(*f))
                .map(|(f, a)| (f.to_string(), a.clone()))
                .collect(),
        }
    }

    pub fn from_json(json: &PresheafJson, base: &Arc<FinCategory>) -> Result<Self> {
        let mut actions = Vec::with_capacity(base.num_morphisms());
        for f in 0..base.num_morphisms() {
            if base.is_identity(f) {
                actions.push((0..*json.levels.get(base.cod(f)).unwrap_or(&0)).collect());
            } else {
                actions.push(
                    json.actions
                        .get(&f.to_string())
                        .cloned()
                        .ok_or_else(|| Error::InvalidPresheaf(format!("missing action for morphism {f}")))?,
                );
            }
        }
        FinPresheaf::new(base.clone(), json.levels.clone(), actions)
    }
}

/// JSON form: `{"base": id, "levels": [...], "actions": {"<morphism id>": [...]}}`;
/// identity actions are implied.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresheafJson {
    pub base: String,
    pub levels: Vec<usize>,
    pub actions: BTreeMap<String, Vec<usize>>,
}

/// A covariant finite-set-valued functor: for `f: a -> b`, a function `F(a) -> F(b)`.
#[derive(Clone, Debug)]
pub struct FinCopresheaf {
    base: Arc<FinCategory>,
    sizes: Vec<usize>,
    actions: Vec<Vec<usize>>,
}

impl FinCopresheaf {
    pub fn new(base: Arc<FinCategory>, sizes: Vec<usize>, actions: Vec<Vec<usize>>) -> Result<Self> {
        let c = &base;
        if sizes.len() != c.num_objects() || actions.len() != c.num_morphisms() {
            return Err(Error::InvalidPresheaf("wrong number of levels or actions".into()));
        }
        for f in 0..c.num_morphisms() {
            if actions[f].len() != sizes[c.dom(f)] || actions[f].iter().any(|&v| v >= sizes[c.cod(f)]) {
                return Err(Error::InvalidPresheaf(format!("action of morphism {f} has the wrong shape")));
            }
        }
        for a in 0..c.num_objects() {
            if actions[c.identity(a)].iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::InvalidPresheaf("identity acts nontrivially".into()));
            }
        }
        for f in 0..c.num_morphisms() {
            for &g in c.out_of(c.cod(f)) {
                let gf = c.compose(g, f);
                for y in 0..sizes[c.dom(f)] {
                    if actions[gf][y] != actions[g][actions[f][y]] {
                        return Err(Error::InvalidPresheaf("not functorial".into()));
                    }
                }
            }
        }
        Ok(FinCopresheaf { base, sizes, actions })
    }

    /// `Hom(c, -)`.
    pub fn corepresentable(base: &Arc<FinCategory>, c: usize) -> Self {
        let sizes = (0..base.num_objects()).map(|s| base.hom(c, s).len()).collect();
        let actions = (0..base.num_morphisms())
            .map(|f| {
                base.hom(c, base.dom(f))
                    .iter()
                    .map(|&g| base.hom_pos(base.compose(f, g)))
                    .collect()
            })
            .collect();
        FinCopresheaf {
            base: base.clone(),
            sizes,
            actions,
        }
    }

    /// The subfunctor of `Hom(r, -)` on arrows of degree below `deg r`; level `s`
    /// lists those arrows (as morphism ids) in hom-list order.
    pub fn boundary(base: &Arc<FinCategory>, r: usize) -> (Self, Vec<Vec<usize>>) {
        let n = base.degree(r);
        let elems: Vec<Vec<usize>> = (0..base.num_objects())
            .map(|s| {
                base.hom(r, s)
                    .iter()
                    .copied()
                    .filter(|&f| base.morphism_degree(f) < n)
                    .collect()
            })
            .collect();
        let actions = (0..base.num_morphisms())
            .map(|g| {
                elems[base.dom(g)]
                    .iter()
                    .map(|&f| {
                        let gf = base.compose(g, f);
                        elems[base.cod(g)].binary_search(&gf).expect("boundary is a subfunctor")
                    })
                    .collect()
            })
            .collect();
        let sizes = elems.iter().map(|e| e.len()).collect();
        (
            FinCopresheaf {
                base: base.clone(),
                sizes,
                actions,
            },
            elems,
        )
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    #[inline]
    pub fn size(&self, a: usize) -> usize {
        self.sizes[a]
    }

    /// `F(f)(y)` for `y ∈ F(dom f)`.
    #[inline]
    pub fn apply(&self, f: usize, y: usize) -> usize {
        self.actions[f][y]
    }
}

/// A natural transformation between presheaves on the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMorphism {
    pub dom: FinPresheaf,
    pub cod: FinPresheaf,
    pub components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    pub fn new(dom: FinPresheaf, cod: FinPresheaf, components: Vec<Vec<usize>>) -> Result<Self> {
        let m = PresheafMorphism { dom, cod, components };
        if let Some(w) = m.naturality_failure() {
            return Err(Error::InvalidPresheaf(w));
        }
        Ok(m)
    }

    pub fn naturality_failure(&self) -> Option<String> {
        let c = self.dom.base();
        if !Arc::ptr_eq(c, self.cod.base()) {
            return Some("different base categories".into());
        }
        for a in 0..c.num_objects() {
            if self.components[a].len() != self.dom.size(a)
                || self.components[a].iter().any(|&v| v >= self.cod.size(a))
            {
                return Some(format!("component at {a} has the wrong shape"));
            }
        }
        for f in 0..c.num_morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            for x in 0..self.dom.size(b) {
                if self.components[a][self.dom.act(x, f)] != self.cod.act(self.components[b][x], f) {
                    return Some(format!("naturality fails at morphism {f}, element {x}"));
                }
            }
        }
        None
    }

    pub fn identity(x: &FinPresheaf) -> Self {
        PresheafMorphism {
            dom: x.clone(),
            cod: x.clone(),
            components: x.sizes().iter().map(|&s| (0..s).collect()).collect(),
        }
    }

    pub fn from_empty(y: &FinPresheaf) -> Self {
        PresheafMorphism {
            dom: FinPresheaf::empty(y.base()),
            cod: y.clone(),
            components: vec![Vec::new(); y.sizes().len()],
        }
    }

    /// `yo(f): yo(a) -> yo(b)`, post-composition with `f: a -> b`.
    pub fn yoneda(base: &Arc<FinCategory>, f: usize) -> Self {
        let (a, b) = (base.dom(f), base.cod(f));
        let components = (0..base.num_objects())
            .map(|s| base.hom(s, a).iter().map(|&g| base.hom_pos(base.compose(f, g))).collect())
            .collect();
        PresheafMorphism {
            dom: FinPresheaf::representable(base, a),
            cod: FinPresheaf::representable(base, b),
            components,
        }
    }

    #[inline]
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.components[a][x]
    }

    pub fn is_levelwise_injective(&self) -> bool {
        self.components.iter().enumerate().all(|(a, comp)| {
            let mut seen = vec![false; self.cod.size(a)];
            comp.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }
}

/// Automorphism quotient `yo(r)/H`: orbits of `Hom(s, r)` under post-composition by `H`,
/// with the projection from `yo(r)`.
pub fn autquo(base: &Arc<FinCategory>, r: usize, h: &[usize]) -> Result<(FinPresheaf, PresheafMorphism)> {
    let closed = h.iter().all(|&t| base.dom(t) == r && base.cod(t) == r && base.is_iso(t))
        && h.contains(&base.identity(r))
        && h.iter().all(|&s| h.iter().all(|&t| h.contains(&base.compose(s, t))))
        && h.iter().all(|&t| h.contains(&base.inverse(t).expect("isomorphism")));
    if !closed {
        return Err(Error::InvalidPresheaf("H is not a subgroup of Aut(r)".into()));
    }
    let y = FinPresheaf::representable(base, r);
    let mut pairs = Vec::new();
    for s in 0..base.num_objects() {
        for &g in base.hom(s, r) {
            for &t in h {
                pairs.push((s, base.hom_pos(g), base.hom_pos(base.compose(t, g))));
            }
        }
    }
    Ok(y.quotient(&pairs))
}

/// Levelwise pushout of `Y0 <- X -> Y1`, with its two legs.
pub fn pushout(m0: &PresheafMorphism, m1: &PresheafMorphism) -> Result<(FinPresheaf, PresheafMorphism, PresheafMorphism)> {
    if m0.dom != m1.dom {
        return Err(Error::InvalidPresheaf("span legs have different domains".into()));
    }
    let sum = m0.cod.coproduct(&m1.cod)?;
    let c = sum.base().clone();
    let mut pairs = Vec::new();
    for a in 0..c.num_objects() {
        for x in 0..m0.dom.size(a) {
            pairs.push((a, m0.apply(a, x), m0.cod.size(a) + m1.apply(a, x)));
        }
    }
    let (p, proj) = sum.quotient(&pairs);
    let leg0 = (0..c.num_objects())
        .map(|a| (0..m0.cod.size(a)).map(|y| proj.apply(a, y)).collect())
        .collect();
    let leg1 = (0..c.num_objects())
        .map(|a| (0..m1.cod.size(a)).map(|y| proj.apply(a, m0.cod.size(a) + y)).collect())
        .collect();
    Ok((
        p.clone(),
        PresheafMorphism::new(m0.cod.clone(), p.clone(), leg0)?,
        PresheafMorphism::new(m1.cod.clone(), p, leg1)?,
    ))
}
