//! Elegant-core membership, hom-preservation of lowering pushouts, projective lifts,
//! principal sieves, and the contraction morphism.

use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::reedy::{lowering_pushout, LoweringPushoutSquare};
use crate::semilattice::types::same_object;
use crate::semilattice::{
    adjoin_bottom, enumerate_homs, free_on_generators, interval, product, FiniteSemilattice,
    SLatMorphism,
};
use crate::union_find::UnionFind;

/// A section/retraction pair exhibiting `A` as a retract of a free semilattice.
#[derive(Clone, Debug, Serialize)]
pub struct RetractData {
    pub section: SLatMorphism,
    pub retraction: SLatMorphism,
}

/// Outcome of comparing the set pushout of hom-sets with the hom-set into the apex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preservation {
    pub preserved: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElegantCoreVerdict {
    pub subject: FiniteSemilattice,
    /// Whether `1 ⋆ A` is a distributive lattice.
    pub closed_form: bool,
    /// The codiagonal square of the counit, present when `closed_form` is false.
    pub witness: Option<LoweringPushoutSquare>,
    pub witness_failure: Option<String>,
    pub retract_data: Option<RetractData>,
}

/// The counit `F(UA) -> A` sending each generator to the element it names.
pub fn counit(a: &Arc<FiniteSemilattice>, budget: &Budget) -> Result<SLatMorphism> {
    let free = free_on_generators(a.size(), budget)?;
    let phi: Vec<usize> = (0..a.size()).collect();
    free.extend(a, &phi)
}

pub fn in_elegant_core(a: &Arc<FiniteSemilattice>, budget: &Budget) -> Result<ElegantCoreVerdict> {
    let closed_form = adjoin_bottom(a).cod().is_distributive_lattice();
    let eps = counit(a, budget)?;
    let mut verdict = ElegantCoreVerdict {
        subject: (**a).clone(),
        closed_form,
        witness: None,
        witness_failure: None,
        retract_data: None,
    };
    if closed_form {
        let section = projective_lift(a, &eps, &SLatMorphism::identity(a), budget)?.ok_or_else(|| {
            Error::Invalid("distributive cone but no section of the counit".into())
        })?;
        verdict.retract_data = Some(RetractData {
            section,
            retraction: eps,
        });
    } else {
        let sq = lowering_pushout(&eps, &eps)?;
        let p = hom_preserves_lowering_pushout(a, &sq, budget)?;
        verdict.witness_failure = p.witness;
        verdict.witness = Some(sq);
    }
    Ok(verdict)
}

/// Compares `Hom(A, B0) ⊔_{Hom(A, S)} Hom(A, B1)` with `Hom(A, P)` via the canonical map.
pub fn hom_preserves_lowering_pushout(
    a: &Arc<FiniteSemilattice>,
    sq: &LoweringPushoutSquare,
    budget: &Budget,
) -> Result<Preservation> {
    let src = enumerate_homs(a, sq.e0.dom(), budget)?;
    let h0 = enumerate_homs(a, sq.e0.cod(), budget)?;
    let h1 = enumerate_homs(a, sq.e1.cod(), budget)?;
    let hp = enumerate_homs(a, sq.apex(), budget)?;
    let pos = |list: &[SLatMorphism], m: &SLatMorphism| {
        list.binary_search_by(|x| x.map().cmp(m.map())).expect("hom lists are complete and sorted")
    };
    let n0 = h0.len();
    let mut uf = UnionFind::new(n0 + h1.len());
    for h in &src {
        uf.union(pos(&h0, &sq.e0.after(h)?), n0 + pos(&h1, &sq.e1.after(h)?));
    }
    let (k, class) = uf.classes();
    let mut image = vec![usize::MAX; k];
    let mut hit = vec![false; hp.len()];
    for (i, g) in h0.iter().map(|g| sq.f0.after(g)).chain(h1.iter().map(|g| sq.f1.after(g))).enumerate() {
        let target = pos(&hp, &g?);
        let c = class[i];
        if image[c] == usize::MAX {
            image[c] = target;
        } else if image[c] != target {
            return Err(Error::Invalid("square does not commute".into()));
        }
        hit[target] = true;
    }
    if let Some(miss) = hit.iter().position(|&h| !h) {
        return Ok(Preservation {
            preserved: false,
            witness: Some(format!("map {:?} into the apex is not in the image", hp[miss].map())),
        });
    }
    let mut seen = vec![usize::MAX; hp.len()];
    for (c, &t) in image.iter().enumerate() {
        if seen[t] != usize::MAX {
            return Ok(Preservation {
                preserved: false,
                witness: Some(format!(
                    "classes {} and {c} both map to {:?}",
                    seen[t],
                    hp[t].map()
                )),
            });
        }
        seen[t] = c;
    }
    Ok(Preservation {
        preserved: true,
        witness: None,
    })
}

/// A morphism `h: A -> dom e` with `e ∘ h = f`, or `None` after exhausting `Hom(A, dom e)`.
pub fn projective_lift(
    a: &Arc<FiniteSemilattice>,
    e: &SLatMorphism,
    f: &SLatMorphism,
    budget: &Budget,
) -> Result<Option<SLatMorphism>> {
    if !e.is_surjective() {
        return Err(Error::NotSurjective);
    }
    if !same_object(f.dom(), a) || !same_object(f.cod(), e.cod()) {
        return Err(Error::NotComposable);
    }
    Ok(enumerate_homs(a, e.dom(), budget)?
        .into_iter()
        .find(|h| e.after(h).ok().as_ref() == Some(f)))
}

/// Searches for a section of the counit `F(UA) -> A`.
pub fn is_perfectly_presentable(a: &Arc<FiniteSemilattice>, budget: &Budget) -> Result<Option<RetractData>> {
    let eps = counit(a, budget)?;
    let id = SLatMorphism::identity(a);
    let section = enumerate_homs(a, eps.dom(), budget)?
        .into_iter()
        .find(|s| eps.after(s).ok().as_ref() == Some(&id));
    Ok(section.map(|section| RetractData {
        section,
        retraction: eps,
    }))
}

/// Degree of the principal sieve generated by `f`: the size of its image.
pub fn sieve_degree(f: &SLatMorphism) -> usize {
    f.image().len()
}

/// Whether `⟨f'⟩ ⊆ ⟨f⟩`, i.e. `f' = f ∘ g` for some `g`.
pub fn principal_sieve_leq(f_small: &SLatMorphism, f: &SLatMorphism, budget: &Budget) -> Result<bool> {
    if !same_object(f_small.cod(), f.cod()) {
        return Err(Error::NotComposable);
    }
    Ok(enumerate_homs(f_small.dom(), f.dom(), budget)?
        .iter()
        .any(|g| f.after(g).ok().as_ref() == Some(f_small)))
}

/// Inclusion of principal sieves is reflected by degrees, strictly on strict inclusions,
/// over all maps into `codomain` from each of `sources`.
pub fn certify_sieve_monotonicity(
    codomain: &Arc<FiniteSemilattice>,
    sources: &[Arc<FiniteSemilattice>],
    budget: &Budget,
) -> Result<Certificate> {
    let mut cert = Certificate::new("sieve-monotonicity");
    let mut maps = Vec::new();
    for s in sources {
        maps.extend(enumerate_homs(s, codomain, budget)?);
    }
    let mut pairs = 0;
    let mut weak = None;
    let mut strict = None;
    for f in &maps {
        for g in &maps {
            if !principal_sieve_leq(g, f, budget)? {
                continue;
            }
            pairs += 1;
            let (dg, df) = (sieve_degree(g), sieve_degree(f));
            if dg > df {
                weak.get_or_insert(format!("{:?} <= {:?} but degrees {dg} > {df}", g.map(), f.map()));
            }
            if dg == df && !principal_sieve_leq(f, g, budget)? {
                strict.get_or_insert(format!(
                    "strict inclusion {:?} < {:?} at equal degree {dg}",
                    g.map(),
                    f.map()
                ));
            }
        }
    }
    cert.record("inclusion-implies-degree-leq", pairs, weak);
    cert.record("strict-inclusion-implies-degree-lt", pairs, strict);
    cert.record("maps-examined", maps.len() as u64, None);
    Ok(cert)
}

/// Builds `↑: [1] × A -> A` (`(0, a) ↦ a`, `(1, a) ↦ ⊤`) and checks that it is a
/// homomorphism commuting with `[1] × g` and `g`.
pub fn contraction_square(a: &Arc<FiniteSemilattice>, g: &SLatMorphism, budget: &Budget) -> Result<bool> {
    if !g.is_iso() || !same_object(g.dom(), a) || !same_object(g.cod(), a) {
        return Err(Error::Invalid("expected an automorphism".into()));
    }
    let n = a.size();
    let p = product(&interval(), a, budget)?;
    let up_map: Vec<usize> = (0..2 * n).map(|x| if x / n == 0 { x % n } else { a.top() }).collect();
    let up = match SLatMorphism::new(p.object.clone(), a.clone(), up_map) {
        Ok(m) => m,
        Err(_) => return Ok(false),
    };
    let lifted = SLatMorphism::new(
        p.object.clone(),
        p.object.clone(),
        (0..2 * n).map(|x| (x / n) * n + g.apply(x % n)).collect(),
    )?;
    Ok(up.after(&lifted)? == g.after(&up)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::{automorphisms, chain, cube, tripod, vee};

    #[test]
    fn cubes_and_chains_are_in_the_core() {
        let b = Budget::default();
        for a in [cube(1), cube(2), chain(2)] {
            let v = in_elegant_core(&a, &b).unwrap();
            assert!(v.closed_form && v.retract_data.is_some() && v.witness.is_none());
        }
    }

    #[test]
    fn tripod_fails_with_codiagonal_witness() {
        let b = Budget::default();
        let t = tripod();
        let v = in_elegant_core(&t, &b).unwrap();
        assert!(!v.closed_form);
        assert!(v.retract_data.is_none());
        let sq = v.witness.unwrap();
        assert_eq!(sq.e0.dom().size(), 15);
        assert!(!hom_preserves_lowering_pushout(&t, &sq, &b).unwrap().preserved);
        assert!(is_perfectly_presentable(&t, &b).unwrap().is_none());
        let eps = counit(&t, &b).unwrap();
        assert!(projective_lift(&t, &eps, &SLatMorphism::identity(&t), &b).unwrap().is_none());
    }

    #[test]
    fn free_objects_are_perfectly_presentable() {
        let b = Budget::default();
        assert!(is_perfectly_presentable(&cube(2), &b).unwrap().is_some());
        assert!(is_perfectly_presentable(&vee(), &b).unwrap().is_some());
    }

    #[test]
    fn interval_preserves_every_small_square() {
        let b = Budget::default();
        let t = crate::reedy::truncated_semilattice_category(3, &b).unwrap();
        for sq in &t.squares {
            assert!(hom_preserves_lowering_pushout(&interval(), &sq.square, &b).unwrap().preserved);
        }
    }

    #[test]
    fn sieves_on_the_square() {
        let b = Budget::default();
        let sq = cube(2);
        let id = SLatMorphism::identity(&sq);
        assert_eq!(sieve_degree(&id), 4);
        let pt = SLatMorphism::constant(&crate::semilattice::terminal(), &sq, 0);
        assert!(principal_sieve_leq(&pt, &id, &b).unwrap());
        assert_eq!(sieve_degree(&pt), 1);
        let d1 = SLatMorphism::new(interval(), sq.clone(), vec![0, 0b10]).unwrap();
        let d2 = SLatMorphism::new(interval(), sq.clone(), vec![0, 0b01]).unwrap();
        assert!(!principal_sieve_leq(&d1, &d2, &b).unwrap());
        assert!(!principal_sieve_leq(&d2, &d1, &b).unwrap());
        assert_eq!(sieve_degree(&d1), sieve_degree(&d2));
    }

    #[test]
    fn projective_lift_through_t() {
        let b = Budget::default();
        let t_map: Vec<usize> = (0..8usize)
            .map(|v| (v >> 2 & 1).max(2 * (v >> 1 & 1)).max(2 * (v & 1)))
            .collect();
        let t = SLatMorphism::new(cube(3), chain(2), t_map).unwrap();
        let s1 = SLatMorphism::new(chain(2), interval(), vec![0, 1, 1]).unwrap();
        let f = SLatMorphism::new(interval(), chain(2), vec![0, 2]).unwrap();
        let h = projective_lift(&interval(), &t, &f, &b).unwrap().unwrap();
        assert_eq!(t.after(&h).unwrap(), f);
        let split = projective_lift(&interval(), &s1, &SLatMorphism::identity(&interval()), &b).unwrap();
        assert!(split.is_some());
    }

    #[test]
    fn contraction_commutes_with_automorphisms() {
        let b = Budget::default();
        for a in [cube(2), vee(), chain(2), tripod()] {
            for g in automorphisms(&a, &b).unwrap() {
                assert!(contraction_square(&a, &g, &b).unwrap());
            }
        }
    }
}
