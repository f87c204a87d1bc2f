use std::sync::Arc;

use crate::budget::Budget;
use crate::certificate::Certificate;
use crate::error::Result;
use crate::semilattice::canonical::find_isomorphism;
use crate::semilattice::{enumerate_homs, image_factorize, FiniteSemilattice, SLatMorphism};

use super::category::{FinCategory, ReedyData};
use super::pushout::{lowering_pushout, verify_pushout_universal};

/// Degree of a semilattice: its cardinality.
pub fn degree(a: &FiniteSemilattice) -> usize {
    a.size()
}

/// Reedy factorization `(lowering, raising)`: the image factorization.
pub fn reedy_factor(f: &SLatMorphism) -> (SLatMorphism, SLatMorphism) {
    image_factorize(f)
}

/// Every (surjection, injection) factorization of `f` through one of `middles`,
/// checking that each is related to the image factorization by exactly one
/// isomorphism. Returns how many factorizations were found.
pub fn certify_factorization_unique(
    f: &SLatMorphism,
    middles: &[Arc<FiniteSemilattice>],
    budget: &Budget,
) -> Result<std::result::Result<u64, String>> {
    let (e, m) = reedy_factor(f);
    let mut found = 0;
    for c in middles.iter().filter(|c| c.size() == e.cod().size()) {
        let es = enumerate_homs(f.dom(), c, budget)?;
        let ms = enumerate_homs(c, f.cod(), budget)?;
        let thetas: Vec<SLatMorphism> = enumerate_homs(e.cod(), c, budget)?
            .into_iter()
            .filter(|t| t.is_iso())
            .collect();
        for e2 in es.iter().filter(|x| x.is_surjective()) {
            for m2 in ms.iter().filter(|x| x.is_injective()) {
                if m2.after(e2)? != *f {
                    continue;
                }
                found += 1;
                let relating = thetas
                    .iter()
                    .filter(|t| t.after(&e).ok().as_ref() == Some(e2) && m2.after(t).ok().as_ref() == Some(&m))
                    .count();
                if relating != 1 {
                    return Ok(Err(format!(
                        "factorization {:?};{:?} is related by {relating} isomorphisms",
                        e2.map(),
                        m2.map()
                    )));
                }
            }
        }
    }
    if found == 0 {
        return Ok(Err("no factorization found".into()));
    }
    Ok(Ok(found))
}

fn first<T>(it: impl IntoIterator<Item = T>) -> Option<T> {
    it.into_iter().next()
}

/// Exhaustive check of the Reedy axioms for `data` on `cat`.
pub fn certify_reedy_axioms(cat: &FinCategory, data: &ReedyData) -> Certificate {
    let mut cert = Certificate::new("reedy-axioms");
    let nm = cat.num_morphisms() as u64;
    let low = |f: usize| data.lowering[f];
    let rai = |f: usize| data.raising[f];

    match cat.check_category_laws() {
        Ok(n) => cert.record("category-laws", n, None),
        Err(w) => cert.record("category-laws", 0, Some(w)),
    }

    let w = first((0..cat.num_morphisms()).filter(|&f| cat.is_iso(f) != (low(f) && rai(f))));
    cert.record(
        "isos-are-lowering-and-raising",
        nm,
        w.map(|f| format!("morphism {f} {:?}", cat.map(f))),
    );

    let mut pairs = 0;
    let mut wl = None;
    let mut wr = None;
    for f in 0..cat.num_morphisms() {
        for &g in cat.out_of(cat.cod(f)) {
            pairs += 1;
            let gf = cat.compose(g, f);
            if low(f) && low(g) && !low(gf) && wl.is_none() {
                wl = Some(format!("({f},{g})"));
            }
            if rai(f) && rai(g) && !rai(gf) && wr.is_none() {
                wr = Some(format!("({f},{g})"));
            }
        }
    }
    cert.record("lowering-closed-under-composition", pairs, wl);
    cert.record("raising-closed-under-composition", pairs, wr);

    let w = first((0..cat.num_morphisms()).filter(|&f| {
        let (da, db) = (data.degree[cat.dom(f)], data.degree[cat.cod(f)]);
        (low(f) && (da < db || (da == db && !cat.is_iso(f))))
            || (rai(f) && (da > db || (da == db && !cat.is_iso(f))))
    }));
    cert.record(
        "degree-compatibility",
        nm,
        w.map(|f| {
            format!(
                "morphism {f} {} -> {} at degrees {} -> {}",
                cat.name(cat.dom(f)),
                cat.name(cat.cod(f)),
                data.degree[cat.dom(f)],
                data.degree[cat.cod(f)]
            )
        }),
    );

    let mut missing = None;
    let mut ambiguous = None;
    let mut total = 0u64;
    for f in 0..cat.num_morphisms() {
        let (a, b) = (cat.dom(f), cat.cod(f));
        let mut facts = Vec::new();
        for c in 0..cat.num_objects() {
            for &e in cat.hom(a, c).iter().filter(|&&e| low(e)) {
                for &m in cat.hom(c, b).iter().filter(|&&m| rai(m)) {
                    if cat.compose(m, e) == f {
                        facts.push((c, e, m));
                    }
                }
            }
        }
        total += facts.len() as u64;
        if facts.is_empty() && missing.is_none() {
            missing = Some(format!("morphism {f} has no factorization"));
        }
        let (c0, e0, m0) = match facts.first() {
            Some(&x) => x,
            None => continue,
        };
        for &(c1, e1, m1) in &facts {
            let relating = cat
                .hom(c0, c1)
                .iter()
                .filter(|&&t| cat.is_iso(t) && cat.compose(t, e0) == e1 && cat.compose(m1, t) == m0)
                .count();
            if relating != 1 && ambiguous.is_none() {
                ambiguous = Some(format!("morphism {f}: factorizations related by {relating} isos"));
            }
        }
    }
    cert.record("factorization-exists", nm, missing);
    cert.record("factorization-unique-up-to-unique-iso", total, ambiguous);

    let mut squares = 0;
    let mut wit = None;
    for e in (0..cat.num_morphisms()).filter(|&e| low(e)) {
        let (a, b) = (cat.dom(e), cat.cod(e));
        for m in (0..cat.num_morphisms()).filter(|&m| rai(m)) {
            let (c, d) = (cat.dom(m), cat.cod(m));
            for &u in cat.hom(a, c) {
                let mu = cat.compose(m, u);
                for &v in cat.hom(b, d) {
                    if cat.compose(v, e) != mu {
                        continue;
                    }
                    squares += 1;
                    let lifts = cat
                        .hom(b, c)
                        .iter()
                        .filter(|&&h| cat.compose(h, e) == u && cat.compose(m, h) == v)
                        .count();
                    if lifts != 1 && wit.is_none() {
                        wit = Some(format!("square e={e} m={m} u={u} v={v} has {lifts} lifts"));
                    }
                }
            }
        }
    }
    cert.record("orthogonal-lifting", squares, wit);

    let (count, wit) = free_action(cat, data);
    cert.record("isos-act-freely-on-lowering", count, wit);
    cert
}

fn free_action(cat: &FinCategory, data: &ReedyData) -> (u64, Option<String>) {
    let mut count = 0;
    for e in (0..cat.num_morphisms()).filter(|&e| data.lowering[e]) {
        for t in cat.automorphisms(cat.cod(e)) {
            count += 1;
            if cat.compose(t, e) == e && !cat.is_identity(t) {
                return (count, Some(format!("automorphism {t} fixes lowering map {e}")));
            }
        }
    }
    (count, None)
}

/// Cancellation laws and split epis/monos.
pub fn certify_cancellation(cat: &FinCategory, data: &ReedyData) -> Certificate {
    let mut cert = Certificate::new("cancellation");
    let mut pairs = 0;
    let mut wl = None;
    let mut wr = None;
    let mut split_epis = 0;
    let mut split_monos = 0;
    let mut we = None;
    let mut wm = None;
    for f in 0..cat.num_morphisms() {
        for &g in cat.out_of(cat.cod(f)) {
            pairs += 1;
            let gf = cat.compose(g, f);
            if data.lowering[gf] && !data.lowering[g] && wl.is_none() {
                wl = Some(format!("g∘f lowering but g={g} is not (f={f})"));
            }
            if data.raising[gf] && !data.raising[f] && wr.is_none() {
                wr = Some(format!("g∘f raising but f={f} is not (g={g})"));
            }
        }
        let b = cat.cod(f);
        let a = cat.dom(f);
        if cat.hom(b, a).iter().any(|&s| cat.compose(f, s) == cat.identity(b)) {
            split_epis += 1;
            if !data.lowering[f] && we.is_none() {
                we = Some(format!("split epi {f} is not lowering"));
            }
        }
        if cat.hom(b, a).iter().any(|&r| cat.compose(r, f) == cat.identity(a)) {
            split_monos += 1;
            if !data.raising[f] && wm.is_none() {
                wm = Some(format!("split mono {f} is not raising"));
            }
        }
    }
    cert.record("lowering-right-cancellation", pairs, wl);
    cert.record("raising-left-cancellation", pairs, wr);
    cert.record("split-epi-is-lowering", split_epis, we);
    cert.record("split-mono-is-raising", split_monos, wm);
    cert
}

/// Closure under lowering pushouts, bounded universality, and epimorphic lowering maps.
pub fn certify_pre_elegance(cat: &FinCategory, data: &ReedyData, budget: &Budget) -> Certificate {
    let mut cert = Certificate::new("pre-elegance");
    let mut spans = 0;
    let mut outside = None;
    let mut cocones = 0;
    let mut not_universal = None;
    let targets: Vec<Arc<FiniteSemilattice>> = cat.objects().to_vec();
    for a in 0..cat.num_objects() {
        let lowering: Vec<usize> = cat.out_of(a).iter().copied().filter(|&f| data.lowering[f]).collect();
        for &e0 in &lowering {
            for &e1 in &lowering {
                spans += 1;
                match lowering_pushout(&cat.morphism(e0), &cat.morphism(e1)) {
                    Err(err) => {
                        outside.get_or_insert(format!("span ({e0},{e1}): {err}"));
                    }
                    Ok(sq) => {
                        if cat.locate(sq.apex()).is_none() {
                            outside.get_or_insert(format!(
                                "span ({e0},{e1}) has a {}-element pushout outside the category",
                                sq.apex().size()
                            ));
                        }
                        match verify_pushout_universal(&sq, &targets, budget) {
                            Ok(Ok(n)) => cocones += n,
                            Ok(Err(w)) => {
                                not_universal.get_or_insert(format!("span ({e0},{e1}): {w}"));
                            }
                            Err(err) => {
                                not_universal.get_or_insert(format!("span ({e0},{e1}): {err}"));
                            }
                        }
                    }
                }
            }
        }
    }
    cert.record("lowering-pushout-closure", spans, outside);
    cert.record("pushout-universal-within-category", cocones, not_universal);

    let mut count = 0;
    let mut wit = None;
    for e in (0..cat.num_morphisms()).filter(|&e| data.lowering[e]) {
        let b = cat.cod(e);
        for c in 0..cat.num_objects() {
            let hs = cat.hom(b, c);
            for (i, &g) in hs.iter().enumerate() {
                for &h in &hs[i + 1..] {
                    count += 1;
                    if cat.compose(g, e) == cat.compose(h, e) && wit.is_none() {
                        wit = Some(format!("lowering {e} does not separate {g} and {h}"));
                    }
                }
            }
        }
    }
    cert.record("lowering-maps-are-epi", count, wit);
    let (n, w) = free_action(cat, data);
    cert.record("isos-act-freely-on-lowering", n, w);
    cert
}

/// Exhaustive check that every morphism among `objects` factors uniquely.
pub fn certify_unique_factorizations(
    objects: &[Arc<FiniteSemilattice>],
    budget: &Budget,
) -> Result<Certificate> {
    let mut cert = Certificate::new("factorization-uniqueness");
    let mut count = 0;
    let mut wit = None;
    for a in objects {
        for b in objects {
            for f in enumerate_homs(a, b, budget)? {
                match certify_factorization_unique(&f, objects, budget)? {
                    Ok(n) => count += n,
                    Err(w) => {
                        wit.get_or_insert(format!("{:?}: {w}", f.map()));
                    }
                }
            }
        }
    }
    cert.record("surjection-injection-factorization-unique", count, wit);
    Ok(cert)
}

/// Checks `find_isomorphism` agreement used by skeleton lookups.
pub fn locate_is_consistent(cat: &FinCategory) -> bool {
    (0..cat.num_objects()).all(|a| {
        (0..cat.num_objects()).all(|b| (a == b) == find_isomorphism(cat.object(a), cat.object(b)).is_some())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reedy::truncated::truncated_semilattice_category;
    use crate::semilattice::{cube, enumerate_up_to, interval, SLatMorphism};

    #[test]
    fn n3_truncation_passes_everything() {
        let b = Budget::default();
        let t = truncated_semilattice_category(3, &b).unwrap();
        let data = t.cat.reedy().clone();
        for cert in [
            certify_reedy_axioms(&t.cat, &data),
            certify_cancellation(&t.cat, &data),
            certify_pre_elegance(&t.cat, &data, &b),
        ] {
            assert!(cert.all_passed(), "{:?}", cert.failures());
        }
        assert!(locate_is_consistent(&t.cat));
    }

    #[test]
    fn constant_degree_fails() {
        let b = Budget::default();
        let t = truncated_semilattice_category(2, &b).unwrap();
        let mut data = t.cat.reedy().clone();
        data.degree = vec![0; data.degree.len()];
        let cert = certify_reedy_axioms(&t.cat, &data);
        assert!(!cert.passed("degree-compatibility"));
        assert!(cert.passed("orthogonal-lifting"));
    }

    #[test]
    fn image_factorizations_are_unique() {
        let b = Budget::default();
        let objs = enumerate_up_to(3, &b).unwrap();
        assert!(certify_unique_factorizations(&objs, &b).unwrap().all_passed());
    }

    #[test]
    fn t_map_is_its_own_lowering_part() {
        let t_map: Vec<usize> = (0..8usize).map(|v| {
            let (x, y, z) = (v >> 2 & 1, v >> 1 & 1, v & 1);
            x.max(2 * y).max(2 * z)
        }).collect();
        let t = SLatMorphism::new(cube(3), crate::semilattice::chain(2), t_map).unwrap();
        let (e, m) = reedy_factor(&t);
        assert_eq!(e.map(), t.map());
        assert!(m.is_iso());
        let inj = SLatMorphism::new(interval(), cube(2), vec![0, 3]).unwrap();
        let (e, m) = reedy_factor(&inj);
        assert!(e.is_iso());
        assert_eq!(m.map(), inj.map());
        assert_eq!(degree(&cube(3)), 8);
    }
}
