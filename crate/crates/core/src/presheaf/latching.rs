use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::reedy::CategorySquare;

use super::colimit::{coend, finite_colimit, SetDiagram};
use super::types::{FinCopresheaf, FinPresheaf, PresheafMorphism};

/// A latching object with its map into `X_r`.
#[derive(Clone, Debug, Serialize)]
pub struct LatchingObject {
    pub object: usize,
    pub size: usize,
    /// Latching map: class index to element of `X_r`.
    pub map: Vec<usize>,
    /// Class of each pair `(f, x)` that the construction ranges over.
    pub pair_class: HashMap<(usize, usize), usize>,
}

impl LatchingObject {
    pub fn is_injective(&self) -> bool {
        let mut m = self.map.clone();
        m.sort_unstable();
        m.windows(2).all(|w| w[0] != w[1])
    }

    pub fn class_of(&self, f: usize, x: usize) -> usize {
        self.pair_class[&(f, x)]
    }

    /// The least pair in each class.
    pub fn representatives(&self) -> Vec<(usize, usize)> {
        let mut reps = vec![(usize::MAX, usize::MAX); self.size];
        for (&p, &k) in &self.pair_class {
            reps[k] = reps[k].min(p);
        }
        reps
    }
}

fn build_map(x: &FinPresheaf, size: usize, pair_class: &HashMap<(usize, usize), usize>) -> Vec<usize> {
    let mut map = vec![usize::MAX; size];
    for (&(f, el), &cls) in pair_class {
        let v = x.act(el, f);
        assert!(map[cls] == usize::MAX || map[cls] == v, "latching map is well defined");
        map[cls] = v;
    }
    map
}

/// Pairs `(e: r -> s strictly lowering, x ∈ X_s)` modulo `(f∘e, x) ~ (e, x·f)` for
/// lowering `f`, mapping `(e, x) ↦ x·e`.
pub fn latching_object(x: &FinPresheaf, r: usize) -> LatchingObject {
    let c = x.base();
    let strict: Vec<usize> = c.out_of(r).iter().copied().filter(|&e| c.is_strictly_lowering(e)).collect();
    let mut d = SetDiagram::default();
    let mut node = HashMap::new();
    for &e in &strict {
        node.insert(e, d.add_node(x.size(c.cod(e))));
    }
    for &e in &strict {
        let s = c.cod(e);
        for &f in c.out_of(s).iter().filter(|&&f| c.is_lowering(f)) {
            let fe = c.compose(f, e);
            let map = (0..x.size(c.cod(f))).map(|y| x.act(y, f)).collect();
            d.add_edge(node[&fe], node[&e], map).expect("edge shapes match");
        }
    }
    let col = finite_colimit(&d);
    let mut pair_class = HashMap::new();
    for &e in &strict {
        for el in 0..x.size(c.cod(e)) {
            pair_class.insert((e, el), col.legs[node[&e]][el]);
        }
    }
    let map = build_map(x, col.size, &pair_class);
    LatchingObject {
        object: r,
        size: col.size,
        map,
        pair_class,
    }
}

/// The weighted colimit of `X` by the degree-truncated hom functor out of `r`:
/// pairs `(f: r -> c of degree < deg r, x ∈ X_c)` modulo `(g∘f, x) ~ (f, x·g)` for all `g`.
pub fn latching_object_via_weights(x: &FinPresheaf, r: usize) -> LatchingObject {
    let c = x.base();
    let (w, elems) = FinCopresheaf::boundary(c, r);
    let co = coend(x, &w).expect("same base");
    let mut pair_class = HashMap::new();
    for t in 0..c.num_objects() {
        for (i, &f) in elems[t].iter().enumerate() {
            for el in 0..x.size(t) {
                pair_class.insert((f, el), co.classes[t][el * w.size(t) + i]);
            }
        }
    }
    let map = build_map(x, co.size, &pair_class);
    LatchingObject {
        object: r,
        size: co.size,
        map,
        pair_class,
    }
}

/// Checks that `(e, x) ↦ (e, x)` induces a bijection between the two latching
/// objects that commutes with the maps into `X_r`.
pub fn latching_routes_agree(x: &FinPresheaf, r: usize) -> Result<(), String> {
    let l1 = latching_object(x, r);
    let l2 = latching_object_via_weights(x, r);
    if l1.size != l2.size {
        return Err(format!("object {r}: sizes {} and {}", l1.size, l2.size));
    }
    let mut phi = vec![usize::MAX; l1.size];
    for (&(e, el), &c1) in &l1.pair_class {
        let c2 = *l2
            .pair_class
            .get(&(e, el))
            .ok_or_else(|| format!("pair ({e},{el}) missing from the weighted route"))?;
        if phi[c1] != usize::MAX && phi[c1] != c2 {
            return Err(format!("object {r}: comparison is not well defined"));
        }
        phi[c1] = c2;
    }
    let mut hit = vec![false; l2.size];
    for (c1, &c2) in phi.iter().enumerate() {
        if c2 == usize::MAX || std::mem::replace(&mut hit[c2], true) {
            return Err(format!("object {r}: comparison is not a bijection"));
        }
        if l1.map[c1] != l2.map[c2] {
            return Err(format!("object {r}: comparison does not commute with the latching maps"));
        }
    }
    Ok(())
}

/// First object whose latching map is not injective.
pub fn latching_failure(x: &FinPresheaf) -> Option<usize> {
    (0..x.base().num_objects()).find(|&r| !latching_object(x, r).is_injective())
}

pub fn is_reedy_mono(x: &FinPresheaf) -> bool {
    latching_failure(x).is_none()
}

/// The relative latching map `X_r ⊔_{L_r X} L_r Y -> Y_r`.
#[derive(Clone, Debug, Serialize)]
pub struct RelativeLatching {
    pub object: usize,
    pub size: usize,
    pub map: Vec<usize>,
    pub injective: bool,
}

pub fn relative_latching_map(m: &PresheafMorphism, r: usize) -> RelativeLatching {
    let c = m.dom.base();
    let lx = latching_object(&m.dom, r);
    let ly = latching_object(&m.cod, r);
    let mut d = SetDiagram::default();
    let nlx = d.add_node(lx.size);
    let nxr = d.add_node(m.dom.size(r));
    let nly = d.add_node(ly.size);
    d.add_edge(nlx, nxr, lx.map.clone()).expect("shape");
    let mut lm = vec![usize::MAX; lx.size];
    for (&(e, el), &cls) in &lx.pair_class {
        lm[cls] = ly.class_of(e, m.apply(c.cod(e), el));
    }
    d.add_edge(nlx, nly, lm).expect("shape");
    let col = finite_colimit(&d);
    let mut map = vec![usize::MAX; col.size];
    for el in 0..m.dom.size(r) {
        map[col.legs[nxr][el]] = m.apply(r, el);
    }
    for cls in 0..ly.size {
        let k = col.legs[nly][cls];
        assert!(map[k] == usize::MAX || map[k] == ly.map[cls], "relative latching map is well defined");
        map[k] = ly.map[cls];
    }
    let mut sorted = map.clone();
    sorted.sort_unstable();
    let injective = sorted.windows(2).all(|w| w[0] != w[1]);
    RelativeLatching {
        object: r,
        size: col.size,
        map,
        injective,
    }
}

pub fn is_reedy_mono_morphism(m: &PresheafMorphism) -> bool {
    (0..m.dom.base().num_objects()).all(|r| relative_latching_map(m, r).injective)
}

/// Whether `X` sends each lowering pushout square to a pullback of sets.
pub fn maps_lowering_pushouts_to_pullbacks(x: &FinPresheaf, squares: &[CategorySquare]) -> Result<(), String> {
    let c = x.base();
    for (i, sq) in squares.iter().enumerate() {
        let mut fiber = BTreeMap::new();
        for u in 0..x.size(c.cod(sq.e0)) {
            for v in 0..x.size(c.cod(sq.e1)) {
                if x.act(u, sq.e0) == x.act(v, sq.e1) {
                    fiber.insert((u, v), 0usize);
                }
            }
        }
        for z in 0..x.size(sq.apex) {
            let key = (x.act(z, sq.f0), x.act(z, sq.f1));
            match fiber.get_mut(&key) {
                Some(n) => *n += 1,
                None => return Err(format!("square {i}: image of the apex leaves the fibre product")),
            }
        }
        if let Some(((u, v), n)) = fiber.iter().find(|(_, &n)| n != 1) {
            return Err(format!(
                "square {i} (e0={}, e1={}): fibre element ({u},{v}) has {n} preimages",
                sq.e0, sq.e1
            ));
        }
    }
    Ok(())
}
