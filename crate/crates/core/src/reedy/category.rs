use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::semilattice::canonical::find_isomorphism;
use crate::semilattice::{enumerate_hom_maps, FiniteSemilattice, SLatMorphism};

/// Degrees of objects and the lowering/raising classification of morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReedyData {
    pub degree: Vec<usize>,
    pub lowering: Vec<bool>,
    pub raising: Vec<bool>,
}

/// An explicit finite category whose objects are finite semilattices and whose
/// morphisms are all join-preserving maps between them.
///
/// Morphism ids are grouped by `(dom, cod)` and sorted by map array inside each group.
#[derive(Clone, Debug)]
pub struct FinCategory {
    names: Vec<String>,
    objects: Vec<Arc<FiniteSemilattice>>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    maps: Vec<Vec<usize>>,
    homs: Vec<Vec<Vec<usize>>>,
    identity: Vec<usize>,
    out: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    comp: Vec<Vec<usize>>,
    inverse: Vec<Option<usize>>,
    index: HashMap<(usize, usize, Vec<usize>), usize>,
    reedy: ReedyData,
    factors: OnceLock<Vec<Option<(usize, usize)>>>,
}

impl FinCategory {
    /// The full subcategory on `objects`, with the (surjective, injective) Reedy data
    /// and degree given by cardinality.
    pub fn from_semilattices(
        names: Vec<String>,
        objects: Vec<Arc<FiniteSemilattice>>,
        budget: &Budget,
    ) -> Result<Self> {
        let k = objects.len();
        if names.len() != k {
            return Err(Error::InvalidCategory("one name per object".into()));
        }
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        let mut maps = Vec::new();
        let mut homs = vec![vec![Vec::new(); k]; k];
        let mut index = HashMap::new();
        for a in 0..k {
            for b in 0..k {
                for m in enumerate_hom_maps(&objects[a], &objects[b], budget)? {
                    let id = maps.len();
                    homs[a][b].push(id);
                    index.insert((a, b, m.clone()), id);
                    dom.push(a);
                    cod.push(b);
                    maps.push(m);
                }
            }
        }
        let n = maps.len();
        let identity: Vec<usize> = (0..k)
            .map(|a| index[&(a, a, (0..objects[a].size()).collect::<Vec<_>>())])
            .collect();
        let mut out = vec![Vec::new(); k];
        let mut out_pos = vec![0; n];
        for f in 0..n {
            out_pos[f] = out[dom[f]].len();
            out[dom[f]].push(f);
        }
        let mut comp = Vec::with_capacity(n);
        for f in 0..n {
            let row: Vec<usize> = out[cod[f]]
                .iter()
                .map(|&g| {
                    let m: Vec<usize> = maps[f].iter().map(|&x| maps[g][x]).collect();
                    index[&(dom[f], cod[g], m)]
                })
                .collect();
            comp.push(row);
        }
        let mut inverse = vec![None; n];
        for f in 0..n {
            let back = &homs[cod[f]][dom[f]];
            inverse[f] = back.iter().copied().find(|&g| {
                comp[f][out_pos[g]] == identity[dom[f]] && comp[g][out_pos[f]] == identity[cod[f]]
            });
        }
        let degree = objects.iter().map(|o| o.size()).collect();
        let lowering = (0..n).map(|f| is_onto(&maps[f], objects[cod[f]].size())).collect();
        let raising = (0..n).map(|f| is_one_to_one(&maps[f], objects[cod[f]].size())).collect();
        Ok(FinCategory {
            names,
            objects,
            dom,
            cod,
            maps,
            homs,
            identity,
            out,
            out_pos,
            comp,
            inverse,
            index,
            reedy: ReedyData {
                degree,
                lowering,
                raising,
            },
            factors: OnceLock::new(),
        })
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.maps.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn object(&self, a: usize) -> &Arc<FiniteSemilattice> {
        &self.objects[a]
    }

    pub fn objects(&self) -> &[Arc<FiniteSemilattice>] {
        &self.objects
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn dom(&self, f: usize) -> usize {
        self.dom[f]
    }

    #[inline]
    pub fn cod(&self, f: usize) -> usize {
        self.cod[f]
    }

    pub fn map(&self, f: usize) -> &[usize] {
        &self.maps[f]
    }

    pub fn morphism(&self, f: usize) -> SLatMorphism {
        SLatMorphism::new(
            self.objects[self.dom[f]].clone(),
            self.objects[self.cod[f]].clone(),
            self.maps[f].clone(),
        )
        .expect("stored maps are homomorphisms")
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a][b]
    }

    /// Position of `f` inside `hom(dom f, cod f)`.
    #[inline]
    pub fn hom_pos(&self, f: usize) -> usize {
        f - self.homs[self.dom[f]][self.cod[f]][0]
    }

    /// Morphisms with domain `a`.
    pub fn out_of(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.dom[f]] == f
    }

    /// `g ∘ f`; panics unless `cod f = dom g`.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.cod[f], self.dom[g], "composing non-composable morphisms");
        self.comp[f][self.out_pos[g]]
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    pub fn find(&self, a: usize, b: usize, map: &[usize]) -> Option<usize> {
        self.index.get(&(a, b, map.to_vec())).copied()
    }

    pub fn automorphisms(&self, a: usize) -> Vec<usize> {
        self.homs[a][a].iter().copied().filter(|&f| self.is_iso(f)).collect()
    }

    pub fn reedy(&self) -> &ReedyData {
        &self.reedy
    }

    #[inline]
    pub fn degree(&self, a: usize) -> usize {
        self.reedy.degree[a]
    }

    #[inline]
    pub fn is_lowering(&self, f: usize) -> bool {
        self.reedy.lowering[f]
    }

    #[inline]
    pub fn is_raising(&self, f: usize) -> bool {
        self.reedy.raising[f]
    }

    /// Degree of the intermediate object of the Reedy factorization.
    pub fn morphism_degree(&self, f: usize) -> usize {
        let mut im = self.maps[f].clone();
        im.sort_unstable();
        im.dedup();
        im.len()
    }

    pub fn is_strictly_lowering(&self, f: usize) -> bool {
        self.is_lowering(f) && self.degree(self.dom[f]) > self.degree(self.cod[f])
    }

    /// The object isomorphic to `s`, with an isomorphism `s -> object` as an index map.
    pub fn locate(&self, s: &FiniteSemilattice) -> Option<(usize, Vec<usize>)> {
        self.objects
            .iter()
            .enumerate()
            .filter(|(_, o)| o.size() == s.size())
            .find_map(|(i, o)| find_isomorphism(s, o).map(|iso| (i, iso)))
    }

    /// The Reedy factorization `f = m ∘ e` inside the category, as morphism ids.
    pub fn factor(&self, f: usize) -> Option<(usize, usize)> {
        let (e, m) = crate::semilattice::image_factorize(&self.morphism(f));
        let (c, iso) = self.locate(e.cod())?;
        let e_map: Vec<usize> = e.map().iter().map(|&x| iso[x]).collect();
        let mut inv = vec![0; iso.len()];
        for (x, &y) in iso.iter().enumerate() {
            inv[y] = x;
        }
        let m_map: Vec<usize> = (0..iso.len()).map(|y| m.apply(inv[y])).collect();
        Some((
            self.find(self.dom[f], c, &e_map)?,
            self.find(c, self.cod[f], &m_map)?,
        ))
    }

    /// A factorization `f = m ∘ e` with `e` lowering and `m` raising, found in the
    /// composition table and cached for all morphisms on first use.
    pub fn reedy_factorization(&self, f: usize) -> Option<(usize, usize)> {
        self.factors.get_or_init(|| {
            (0..self.num_morphisms())
                .map(|f| {
                    let target = self.cod[f];
                    self.out[self.dom[f]].iter().filter(|&&e| self.is_lowering(e)).find_map(|&e| {
                        self.homs[self.cod[e]][target]
                            .iter()
                            .find(|&&m| self.is_raising(m) && self.compose(m, e) == f)
                            .map(|&m| (e, m))
                    })
                })
                .collect()
        })[f]
    }

    /// Verifies identity and associativity laws exhaustively; returns the number of triples checked.
    pub fn check_category_laws(&self) -> std::result::Result<u64, String> {
        for f in 0..self.num_morphisms() {
            if self.compose(self.identity[self.cod[f]], f) != f
                || self.compose(f, self.identity[self.dom[f]]) != f
            {
                return Err(format!("unit law fails at morphism {f}"));
            }
        }
        let mut count = 0;
        for f in 0..self.num_morphisms() {
            for &g in &self.out[self.cod[f]] {
                let gf = self.compose(g, f);
                for &h in &self.out[self.cod[g]] {
                    count += 1;
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(format!("associativity fails at ({f},{g},{h})"));
                    }
                }
            }
        }
        Ok(count)
    }

    /// Replaces the Reedy data, e.g. to test a deliberately wrong degree map.
    pub fn with_reedy(mut self, data: ReedyData) -> Result<Self> {
        if data.degree.len() != self.num_objects()
            || data.lowering.len() != self.num_morphisms()
            || data.raising.len() != self.num_morphisms()
        {
            return Err(Error::InvalidCategory("Reedy data has the wrong shape".into()));
        }
        self.reedy = data;
        self.factors = OnceLock::new();
        Ok(self)
    }

    pub fn to_json(&self) -> CategoryJson {
        CategoryJson {
            names: self.names.clone(),
            objects: self.objects.iter().map(|o| (**o).clone()).collect(),
            morphisms: (0..self.num_morphisms())
                .map(|f| MorphismEntry {
                    dom: self.dom[f],
                    cod: self.cod[f],
                    map: self.maps[f].clone(),
                })
                .collect(),
            identities: self.identity.clone(),
            composition: (0..self.num_morphisms())
                .flat_map(|f| self.out[self.cod[f]].iter().map(move |&g| [f, g, self.compose(g, f)]))
                .collect(),
            reedy: self.reedy.clone(),
        }
    }
}

fn is_onto(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &v in map {
        seen[v] = true;
    }
    seen.into_iter().all(|b| b)
}

fn is_one_to_one(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub dom: usize,
    pub cod: usize,
    pub map: Vec<usize>,
}

/// JSON form of a category: objects, morphisms, and composition triples `[f, g, g∘f]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryJson {
    pub names: Vec<String>,
    pub objects: Vec<FiniteSemilattice>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: Vec<usize>,
    pub composition: Vec<[usize; 3]>,
    pub reedy: ReedyData,
}

impl CategoryJson {
    /// Rebuilds the category from its objects and checks the stored tables against it.
    pub fn rebuild(&self, budget: &Budget) -> Result<FinCategory> {
        let cat = FinCategory::from_semilattices(
            self.names.clone(),
            self.objects.iter().cloned().map(Arc::new).collect(),
            budget,
        )?;
        let fresh = cat.to_json();
        let same = fresh.morphisms.len() == self.morphisms.len()
            && fresh
                .morphisms
                .iter()
                .zip(&self.morphisms)
                .all(|(a, b)| a.dom == b.dom && a.cod == b.cod && a.map == b.map)
            && fresh.identities == self.identities
            && fresh.composition == self.composition;
        if !same {
            return Err(Error::InvalidCategory("stored tables disagree with the objects".into()));
        }
        cat.with_reedy(self.reedy.clone())
    }
}
