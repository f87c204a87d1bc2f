use serde::Serialize;

use crate::certificate::Certificate;

use super::latching::{is_reedy_mono, is_reedy_mono_morphism};
use super::types::{FinPresheaf, PresheafMorphism};

/// `x = core · lowering`, with `core ∈ X_target` non-degenerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EzDecomposition {
    pub object: usize,
    pub element: usize,
    pub lowering: usize,
    pub target: usize,
    pub core: usize,
}

/// Whether `x ∈ X_r` factors through some non-invertible lowering map.
pub fn is_degenerate(x: &FinPresheaf, r: usize, el: usize) -> bool {
    let c = x.base();
    c.out_of(r).iter().any(|&e| {
        c.is_lowering(e) && !c.is_iso(e) && (0..x.size(c.cod(e))).any(|y| x.act(y, e) == el)
    })
}

/// A decomposition through a lowering map of least target degree.
pub fn ez_decompose(x: &FinPresheaf, r: usize, el: usize) -> EzDecomposition {
    let c = x.base();
    let mut lowering: Vec<usize> = c.out_of(r).iter().copied().filter(|&e| c.is_lowering(e)).collect();
    lowering.sort_by_key(|&e| (c.degree(c.cod(e)), e));
    for e in lowering {
        let s = c.cod(e);
        if let Some(y) = (0..x.size(s)).find(|&y| x.act(y, e) == el) {
            let d = EzDecomposition {
                object: r,
                element: el,
                lowering: e,
                target: s,
                core: y,
            };
            debug_assert!(!is_degenerate(x, s, y), "minimal-degree factor is non-degenerate");
            return d;
        }
    }
    unreachable!("the identity is lowering")
}

/// Least degree of a lowering map through which the element factors.
pub fn ez_degree(x: &FinPresheaf, r: usize, el: usize) -> usize {
    let d = ez_decompose(x, r, el);
    x.base().degree(d.target)
}

/// Every EZ decomposition of `x ∈ X_r`.
pub fn all_ez_decompositions(x: &FinPresheaf, r: usize, el: usize) -> Vec<EzDecomposition> {
    let c = x.base();
    let mut out = Vec::new();
    for &e in c.out_of(r).iter().filter(|&&e| c.is_lowering(e)) {
        let s = c.cod(e);
        for y in 0..x.size(s) {
            if x.act(y, e) == el && !is_degenerate(x, s, y) {
                out.push(EzDecomposition {
                    object: r,
                    element: el,
                    lowering: e,
                    target: s,
                    core: y,
                });
            }
        }
    }
    out
}

/// Decompositions are isomorphic when an isomorphism `θ: s0 -> s1` has
/// `θ ∘ e0 = e1` and `x1'·θ = x0'`.
pub fn ez_isomorphic(x: &FinPresheaf, d0: &EzDecomposition, d1: &EzDecomposition) -> bool {
    let c = x.base();
    c.hom(d0.target, d1.target).iter().any(|&t| {
        c.is_iso(t) && c.compose(t, d0.lowering) == d1.lowering && x.act(d1.core, t) == d0.core
    })
}

/// A pair of non-isomorphic decompositions of the same element.
pub type EzWitness = (EzDecomposition, EzDecomposition);

pub fn unique_ez_failure(x: &FinPresheaf) -> Option<EzWitness> {
    let c = x.base();
    for r in 0..c.num_objects() {
        for el in 0..x.size(r) {
            let ds = all_ez_decompositions(x, r, el);
            for (i, d0) in ds.iter().enumerate() {
                for d1 in &ds[i + 1..] {
                    if !ez_isomorphic(x, d0, d1) {
                        return Some((*d0, *d1));
                    }
                }
            }
        }
    }
    None
}

pub fn has_unique_ez(x: &FinPresheaf) -> bool {
    unique_ez_failure(x).is_none()
}

/// Elements of EZ degree below `n`, with the inclusion.
pub fn skeleton(x: &FinPresheaf, n: usize) -> (FinPresheaf, PresheafMorphism) {
    let keep: Vec<Vec<bool>> = (0..x.base().num_objects())
        .map(|r| (0..x.size(r)).map(|el| ez_degree(x, r, el) < n).collect())
        .collect();
    x.restrict_to(&keep).expect("skeleta are closed under the action")
}

/// For levelwise injective `m: X -> Y`: whenever `m(x)` is degenerate, so is `x`.
pub fn reflects_degeneracy(m: &PresheafMorphism) -> bool {
    let c = m.dom.base();
    (0..c.num_objects()).all(|r| {
        (0..m.dom.size(r)).all(|el| !is_degenerate(&m.cod, r, m.apply(r, el)) || is_degenerate(&m.dom, r, el))
    })
}

/// Over the given injective morphisms: degeneracy reflection into a Reedy monomorphic
/// codomain yields a Reedy monomorphism.
pub fn certify_reflects_degeneracy_lemma(samples: &[PresheafMorphism]) -> Certificate {
    let mut cert = Certificate::new("reflects-degeneracy");
    let mut applicable = 0;
    let mut wit = None;
    for (i, m) in samples.iter().enumerate() {
        if !m.is_levelwise_injective() {
            continue;
        }
        if reflects_degeneracy(m) && is_reedy_mono(&m.cod) {
            applicable += 1;
            if !is_reedy_mono_morphism(m) && wit.is_none() {
                wit = Some(format!("sample {i} reflects degeneracy but is not a Reedy monomorphism"));
            }
        }
    }
    cert.record("reflection-implies-reedy-mono-morphism", applicable, wit);
    cert.record("samples", samples.len() as u64, None);
    cert
}
