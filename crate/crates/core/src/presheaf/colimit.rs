use crate::error::{Error, Result};
use crate::union_find::UnionFind;

use super::types::{FinCopresheaf, FinPresheaf};

/// A finite diagram of finite sets given by generating edges; the colimit only
/// depends on these generators.
#[derive(Clone, Debug, Default)]
pub struct SetDiagram {
    pub nodes: Vec<usize>,
    /// `(source node, target node, function on elements)`.
    pub edges: Vec<(usize, usize, Vec<usize>)>,
}

impl SetDiagram {
    pub fn add_node(&mut self, size: usize) -> usize {
        self.nodes.push(size);
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, src: usize, tgt: usize, map: Vec<usize>) -> Result<()> {
        if map.len() != self.nodes[src] || map.iter().any(|&v| v >= self.nodes[tgt]) {
            return Err(Error::Invalid(format!("edge {src} -> {tgt} has the wrong shape")));
        }
        self.edges.push((src, tgt, map));
        Ok(())
    }
}

/// A colimit of finite sets: `size` classes and, per node, the leg into them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetColimit {
    pub size: usize,
    pub legs: Vec<Vec<usize>>,
}

/// Quotient of the disjoint union by the equivalence generated by the edges.
/// Classes are numbered by first occurrence in node order.
pub fn finite_colimit(d: &SetDiagram) -> SetColimit {
    let mut off = Vec::with_capacity(d.nodes.len());
    let mut total = 0;
    for &n in &d.nodes {
        off.push(total);
        total += n;
    }
    let mut uf = UnionFind::new(total);
    for (s, t, map) in &d.edges {
        for (x, &y) in map.iter().enumerate() {
            uf.union(off[*s] + x, off[*t] + y);
        }
    }
    let (size, class) = uf.classes();
    let legs = d
        .nodes
        .iter()
        .enumerate()
        .map(|(i, &n)| class[off[i]..off[i] + n].to_vec())
        .collect();
    SetColimit { size, legs }
}

/// The coend `∫^c P(c) × Q(c)` of a presheaf and a copresheaf on the same base,
/// computed as the colimit over the category of elements of `P` of `Q ∘ π`.
///
/// `classes[c][p * |Q(c)| + q]` is the class of `(p, q) ∈ P(c) × Q(c)`.
#[derive(Clone, Debug)]
pub struct Coend {
    pub size: usize,
    pub classes: Vec<Vec<usize>>,
}

impl Coend {
    pub fn class(&self, q_sizes: &[usize], c: usize, p: usize, q: usize) -> usize {
        self.classes[c][p * q_sizes[c] + q]
    }
}

pub fn coend(p: &FinPresheaf, q: &FinCopresheaf) -> Result<Coend> {
    let base = p.base();
    if !std::sync::Arc::ptr_eq(base, q.base()) {
        return Err(Error::InvalidPresheaf("different base categories".into()));
    }
    let mut d = SetDiagram::default();
    // One node per element (c, p) of P, carrying Q(c).
    let mut node = Vec::with_capacity(base.num_objects());
    for c in 0..base.num_objects() {
        node.push((0..p.size(c)).map(|_| d.add_node(q.size(c))).collect::<Vec<_>>());
    }
    // g: c -> e and x ∈ P(e) give an arrow (c, x·g) -> (e, x) in the elements, acting by Q(g).
    for g in 0..base.num_morphisms() {
        let (c, e) = (base.dom(g), base.cod(g));
        for x in 0..p.size(e) {
            let map = (0..q.size(c)).map(|y| q.apply(g, y)).collect();
            d.add_edge(node[c][p.act(x, g)], node[e][x], map)?;
        }
    }
    let col = finite_colimit(&d);
    let classes = (0..base.num_objects())
        .map(|c| {
            (0..p.size(c))
                .flat_map(|x| col.legs[node[c][x]].iter().copied())
                .collect()
        })
        .collect();
    Ok(Coend {
        size: col.size,
        classes,
    })
}

/// Weighted colimit `W ⋆ F` of a covariant diagram `F` weighted by a presheaf `W`.
pub fn weighted_colimit(w: &FinPresheaf, f: &FinCopresheaf) -> Result<Coend> {
    coend(w, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::reedy::truncated_semilattice_category;
    use std::sync::Arc;

    #[test]
    fn single_node_colimit_is_the_set() {
        let mut d = SetDiagram::default();
        d.add_node(3);
        assert_eq!(finite_colimit(&d).size, 3);
    }

    #[test]
    fn coequalizer_of_bijections_is_orbit_quotient() {
        let mut d = SetDiagram::default();
        let a = d.add_node(4);
        let b = d.add_node(4);
        d.add_edge(a, b, vec![0, 1, 2, 3]).unwrap();
        d.add_edge(a, b, vec![1, 0, 3, 2]).unwrap();
        let col = finite_colimit(&d);
        assert_eq!(col.size, 2);
        assert_eq!(col.legs[b], vec![0, 0, 1, 1]);
    }

    #[test]
    fn representable_weight_evaluates() {
        let t = truncated_semilattice_category(3, &Budget::default()).unwrap();
        let base = Arc::new(t.cat);
        let v = base.object_by_name("V").unwrap();
        let f = FinCopresheaf::corepresentable(&base, base.object_by_name("[2]").unwrap());
        for c in 0..base.num_objects() {
            let w = FinPresheaf::representable(&base, c);
            assert_eq!(weighted_colimit(&w, &f).unwrap().size, f.size(c));
        }
        let term = FinPresheaf::terminal(&base);
        let g = FinCopresheaf::corepresentable(&base, v);
        // Hom(V, -) has an initial-object component at V, so its colimit is a point.
        assert_eq!(weighted_colimit(&term, &g).unwrap().size, 1);
        let empty = FinPresheaf::empty(&base);
        assert_eq!(weighted_colimit(&empty, &g).unwrap().size, 0);
    }
}
