use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;
use crate::budget::Budget;
use crate::reedy::{truncated_semilattice_category, FinCategory, Truncation};

fn truncation(n: usize) -> (Arc<FinCategory>, Truncation) {
    let t = truncated_semilattice_category(n, &Budget::default()).unwrap();
    (Arc::new(t.cat.clone()), t)
}

fn obj(c: &FinCategory, name: &str) -> usize {
    c.object_by_name(name).unwrap()
}

#[test]
fn representable_levels_are_hom_sets() {
    let (c, _) = truncation(3);
    let v = obj(&c, "V");
    let y = FinPresheaf::representable(&c, v);
    assert_eq!(y.size(v), 9);
    assert!(y.functoriality_failure().is_none());
    let one = FinPresheaf::representable(&c, obj(&c, "1"));
    assert!(one.sizes().iter().all(|&s| s == 1));
}

#[test]
fn trivial_autquo_is_representable() {
    let (c, _) = truncation(3);
    let v = obj(&c, "V");
    let (q, _) = autquo(&c, v, &[c.identity(v)]).unwrap();
    assert_eq!(q.sizes(), FinPresheaf::representable(&c, v).sizes());
}

#[test]
fn autquo_of_vee_orbits() {
    let (c, _) = truncation(3);
    let v = obj(&c, "V");
    let autos = c.automorphisms(v);
    assert_eq!(autos.len(), 2);
    let (q, _) = autquo(&c, v, &autos).unwrap();
    // Orbits of the 9 endomorphisms under post-composition by the swap.
    let mut orbits = BTreeSet::new();
    for &g in c.hom(v, v) {
        let orbit: BTreeSet<usize> = autos.iter().map(|&t| c.compose(t, g)).collect();
        orbits.insert(orbit);
    }
    assert_eq!(q.size(v), orbits.len());
    assert_eq!(q.size(v), 5);
    assert!(is_reedy_mono(&q));
    assert!(has_unique_ez(&q));
}

#[test]
fn autquo_rejects_non_subgroup() {
    let (c, _) = truncation(3);
    let v = obj(&c, "V");
    let swap = c.automorphisms(v).into_iter().find(|&t| !c.is_identity(t)).unwrap();
    assert!(autquo(&c, v, &[swap]).is_err());
}

#[test]
fn latching_of_interval_representable() {
    let (c, _) = truncation(2);
    let i = obj(&c, "[1]");
    let y = FinPresheaf::representable(&c, i);
    for l in [latching_object(&y, i), latching_object_via_weights(&y, i)] {
        assert_eq!(l.size, 2);
        assert!(l.is_injective());
        let mut image = l.map.clone();
        image.sort_unstable();
        let consts: Vec<usize> = c
            .hom(i, i)
            .iter()
            .filter(|&&f| c.morphism_degree(f) == 1)
            .map(|&f| c.hom_pos(f))
            .collect();
        assert_eq!(image, consts);
    }
}

#[test]
fn latching_of_vee_representable() {
    let (c, _) = truncation(3);
    let v = obj(&c, "V");
    let y = FinPresheaf::representable(&c, v);
    let l = latching_object(&y, v);
    assert_eq!(l.size, 7);
    assert!(l.is_injective());
    let degenerate = c.hom(v, v).iter().filter(|&&f| !c.is_iso(f)).count();
    assert_eq!(degenerate, 9 - 2);
    let mut image = l.map.clone();
    image.sort_unstable();
    let expected: Vec<usize> = c.hom(v, v).iter().filter(|&&f| !c.is_iso(f)).map(|&f| c.hom_pos(f)).collect();
    assert_eq!(image, expected);
    assert!(latching_routes_agree(&y, v).is_ok());
}

#[test]
fn minimal_degree_latching_is_empty() {
    let (c, _) = truncation(3);
    let x = FinPresheaf::terminal(&c);
    let one = obj(&c, "1");
    assert_eq!(latching_object(&x, one).size, 0);
    assert_eq!(latching_object_via_weights(&x, one).size, 0);
}

#[test]
fn ez_decomposition_of_representable_is_reedy_factorization() {
    let (c, _) = truncation(3);
    for r in 0..c.num_objects() {
        let y = FinPresheaf::representable(&c, r);
        for s in 0..c.num_objects() {
            for (pos, &f) in c.hom(s, r).iter().enumerate() {
                let d = ez_decompose(&y, s, pos);
                let (e, _) = crate::reedy::reedy_factor(&c.morphism(f));
                assert_eq!(c.degree(d.target), e.cod().size());
                // Equal up to an automorphism of the target: same kernel.
                let lowering = c.morphism(d.lowering);
                let n = e.dom().size();
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(lowering.apply(a) == lowering.apply(b), e.apply(a) == e.apply(b));
                    }
                }
                assert!(!is_degenerate(&y, d.target, d.core));
            }
        }
    }
}

#[test]
fn terminal_elements_degenerate_to_the_point() {
    let (c, _) = truncation(2);
    let x = FinPresheaf::terminal(&c);
    let d = ez_decompose(&x, obj(&c, "[1]"), 0);
    assert_eq!(d.target, obj(&c, "1"));
    let n = ez_decompose(&x, obj(&c, "1"), 0);
    assert!(c.is_identity(n.lowering));
}

#[test]
fn skeleta_of_vee_representable() {
    let (c, _) = truncation(3);
    let v = obj(&c, "V");
    let y = FinPresheaf::representable(&c, v);
    assert_eq!(skeleton(&y, 0).0.total_size(), 0);
    assert_eq!(skeleton(&y, 1).0.total_size(), 0);
    assert_eq!(skeleton(&y, 2).0.size(v), 3);
    assert_eq!(skeleton(&y, 3).0.size(v), 7);
    assert_eq!(skeleton(&y, 4).0.sizes(), y.sizes());
    assert!(skeleton_chain_failure(&y).is_none());
}

#[test]
fn weighted_colimit_by_representable_is_evaluation() {
    let (c, _) = truncation(3);
    for r in 0..c.num_objects() {
        let w = FinPresheaf::representable(&c, r);
        for s in 0..c.num_objects() {
            let f = FinCopresheaf::corepresentable(&c, s);
            assert_eq!(weighted_colimit(&w, &f).unwrap().size, f.size(r));
        }
    }
}

#[test]
fn weighted_colimit_by_terminal_is_ordinary_colimit() {
    let (c, _) = truncation(2);
    let w = FinPresheaf::terminal(&c);
    // Colimit of a corepresentable is a point.
    for s in 0..c.num_objects() {
        let f = FinCopresheaf::corepresentable(&c, s);
        assert_eq!(weighted_colimit(&w, &f).unwrap().size, 1);
    }
    let empty = FinPresheaf::empty(&c);
    assert_eq!(weighted_colimit(&empty, &FinCopresheaf::corepresentable(&c, 0)).unwrap().size, 0);
}

#[test]
fn n2_enumeration_matches_brute_force() {
    let (c, _) = truncation(2);
    let fast = enumerate_presheaves(&c, 2);
    let slow = brute_force_presheaves(&c, 2, &Budget::default()).unwrap();
    assert_eq!(fast.len(), 6);
    let key = |x: &FinPresheaf| (x.sizes().to_vec(), x.actions().to_vec());
    let a: BTreeSet<_> = fast.iter().map(key).collect();
    let b: BTreeSet<_> = slow.iter().map(key).collect();
    assert_eq!(a.len(), fast.len());
    assert_eq!(a, b);
}

fn triple(x: &FinPresheaf, t: &Truncation) -> (bool, bool, bool) {
    (
        is_reedy_mono(x),
        has_unique_ez(x),
        maps_lowering_pushouts_to_pullbacks(x, &t.squares).is_ok(),
    )
}

#[test]
fn n2_corpus_triple_agreement_and_cells() {
    let (c, t) = truncation(2);
    for x in enumerate_presheaves(&c, 2) {
        let (a, b, p) = triple(&x, &t);
        assert_eq!((a, a), (b, p), "{:?}", x.sizes());
        for r in 0..c.num_objects() {
            assert!(latching_routes_agree(&x, r).is_ok());
        }
        assert!(skeleton_chain_failure(&x).is_none());
        for n in 0..=3 {
            let cert = verify_cell_square(&x, n);
            assert!(!cert.any_failed(), "{:?}", cert.failures());
        }
    }
}

#[test]
fn small_truncations_admit_no_failing_presheaf() {
    for n in [2, 3] {
        let (c, t) = truncation(n);
        assert!(failing_pushout_presheaf(&c, &t.squares, &Budget::default()).unwrap().is_none());
        assert!(smallest_non_reedy_mono(&c, 2).is_none());
    }
    let (c, t) = truncation(3);
    let x = two_surjections_pushout(&c).unwrap();
    assert_eq!(triple(&x, &t), (true, true, true));
}

#[test]
fn tripod_pushout_fails_all_three() {
    let (c, t) = truncation(5);
    let (x, r, i) = failing_pushout_presheaf(&c, &t.squares, &Budget::default()).unwrap().unwrap();
    assert_eq!(c.name(r), "T");
    assert_eq!(triple(&x, &t), (false, false, false));
    assert!(unique_ez_failure(&x).is_some());
    assert!(maps_lowering_pushouts_to_pullbacks(&x, &t.squares[i..=i]).is_err());
    let mut cell_fails = false;
    for n in 0..=6 {
        let report = cell_square(&x, n);
        assert!(report.commutes.is_none() && report.pushout.is_none(), "{n}: {report:?}");
        cell_fails |= report.levels.iter().any(|l| !l.cell_injective);
        let cert = verify_cell_square(&x, n);
        assert!(!cert.any_failed());
    }
    assert!(cell_fails);
}

#[test]
fn n3_random_corpus_properties() {
    let (c, t) = truncation(3);
    let corpus = standard_corpus(&c, 200, 7).unwrap();
    for x in &corpus {
        let (a, b, p) = triple(x, &t);
        assert_eq!((a, a), (b, p), "{:?}", x.sizes());
        for r in 0..c.num_objects() {
            assert!(latching_routes_agree(x, r).is_ok());
        }
        for n in 0..=4 {
            let cert = verify_cell_square(x, n);
            assert!(!cert.any_failed(), "{:?}", cert.failures());
        }
    }
}

#[test]
fn relative_latching_of_identity_and_initial() {
    let (c, _) = truncation(3);
    let v = obj(&c, "V");
    let y = FinPresheaf::representable(&c, v);
    let id = PresheafMorphism::identity(&y);
    let rel = relative_latching_map(&id, v);
    assert_eq!(rel.size, y.size(v));
    assert!(rel.injective);
    let from_empty = PresheafMorphism::from_empty(&y);
    let rel = relative_latching_map(&from_empty, v);
    assert_eq!(rel.size, latching_object(&y, v).size);
    assert!(is_reedy_mono_morphism(&from_empty));
    let (_, proj) = autquo(&c, v, &c.automorphisms(v)).unwrap();
    let rel = relative_latching_map(&proj, v);
    assert!(!rel.injective);
}

#[test]
fn skeleton_inclusions_reflect_degeneracy() {
    let (c, _) = truncation(3);
    let samples: Vec<PresheafMorphism> = standard_corpus(&c, 40, 3)
        .unwrap()
        .iter()
        .flat_map(|x| (0..=4).map(move |n| skeleton(x, n).1))
        .collect();
    assert!(samples.iter().all(reflects_degeneracy));
    let cert = certify_reflects_degeneracy_lemma(&samples);
    assert!(cert.all_passed());
}

#[test]
fn json_round_trip() {
    let (c, _) = truncation(3);
    let x = two_surjections_pushout(&c).unwrap();
    let j = x.to_json("N3");
    let s = serde_json::to_string(&j).unwrap();
    let back = FinPresheaf::from_json(&serde_json::from_str(&s).unwrap(), &c).unwrap();
    assert_eq!(back, x);
}

