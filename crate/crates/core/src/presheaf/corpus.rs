use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::elegance::hom_preserves_lowering_pushout;
use crate::reedy::{CategorySquare, FinCategory};

use super::latching::is_reedy_mono;
use super::types::{autquo, pushout, FinPresheaf, PresheafMorphism};

struct Search<'a> {
    base: &'a Arc<FinCategory>,
    c: &'a FinCategory,
    sizes: Vec<usize>,
    actions: Vec<Option<Vec<usize>>>,
    order: Vec<usize>,
}

impl Search<'_> {
    /// Fills in every composite of assigned morphisms; `false` on a conflict.
    /// Newly assigned morphisms are pushed to `trail`.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        let c = self.c;
        loop {
            let mut changed = false;
            for f in 0..c.num_morphisms() {
                let Some(af) = self.actions[f].clone() else { continue };
                for &g in c.out_of(c.cod(f)) {
                    let Some(ag) = &self.actions[g] else { continue };
                    let comp: Vec<usize> = ag.iter().map(|&y| af[y]).collect();
                    let gf = c.compose(g, f);
                    match &self.actions[gf] {
                        Some(a) if *a != comp => return false,
                        Some(_) => {}
                        None => {
                            self.actions[gf] = Some(comp);
                            trail.push(gf);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run<B>(&mut self, depth: usize, visit: &mut impl FnMut(FinPresheaf) -> ControlFlow<B>) -> ControlFlow<B> {
        let Some(pos) = (depth..self.order.len()).find(|&i| self.actions[self.order[i]].is_none()) else {
            let actions = self.actions.iter().map(|a| a.clone().expect("assigned")).collect();
            let x = FinPresheaf::unchecked(self.base.clone(), self.sizes.clone(), actions).expect("shapes are consistent");
            return visit(x);
        };
        let f = self.order[pos];
        let (m, k) = (self.sizes[self.c.cod(f)], self.sizes[self.c.dom(f)]);
        if m > 0 && k == 0 {
            return ControlFlow::Continue(());
        }
        let mut func = vec![0usize; m];
        loop {
            self.actions[f] = Some(func.clone());
            let mut trail = Vec::new();
            if self.propagate(&mut trail) {
                self.run(pos + 1, visit)?;
            }
            for t in trail {
                self.actions[t] = None;
            }
            self.actions[f] = None;
            let mut i = 0;
            while i < m && func[i] + 1 == k {
                func[i] = 0;
                i += 1;
            }
            if i == m {
                return ControlFlow::Continue(());
            }
            func[i] += 1;
        }
    }
}

/// Visits every presheaf on `base` whose levels have at most `max_level` elements,
/// by level sizes in lexicographic order. Composites are forced from their factors.
pub fn for_each_presheaf<B>(base: &Arc<FinCategory>, max_level: usize, mut visit: impl FnMut(FinPresheaf) -> ControlFlow<B>) -> Option<B> {
    let c: &FinCategory = base;
    let n = c.num_objects();
    let mut order: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    order.sort_by_key(|&f| (c.degree(c.dom(f)).max(c.degree(c.cod(f))), c.morphism_degree(f), f));
    let mut sizes = vec![0usize; n];
    loop {
        let mut actions = vec![None; c.num_morphisms()];
        for a in 0..n {
            actions[c.identity(a)] = Some((0..sizes[a]).collect());
        }
        let mut s = Search {
            base,
            c,
            sizes: sizes.clone(),
            actions,
            order: order.clone(),
        };
        if let ControlFlow::Break(b) = s.run(0, &mut visit) {
            return Some(b);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if sizes[i] < max_level {
                sizes[i] += 1;
                break;
            }
            sizes[i] = 0;
        }
    }
}

pub fn enumerate_presheaves(base: &Arc<FinCategory>, max_level: usize) -> Vec<FinPresheaf> {
    let mut out = Vec::new();
    for_each_presheaf::<()>(base, max_level, |x| {
        out.push(x);
        ControlFlow::Continue(())
    });
    out
}

/// Every assignment of functions to non-identity morphisms, filtered by functoriality.
pub fn brute_force_presheaves(base: &Arc<FinCategory>, max_level: usize, budget: &Budget) -> Result<Vec<FinPresheaf>> {
    let c: &FinCategory = base;
    let n = c.num_objects();
    let free: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    let mut out = Vec::new();
    let mut sizes = vec![0usize; n];
    loop {
        let space = free.iter().fold(1u128, |acc, &f| {
            acc.saturating_mul(saturating_pow(sizes[c.dom(f)], sizes[c.cod(f)]))
        });
        if space > budget.max_candidates {
            return Err(Error::CandidateSpaceExceeded {
                space,
                cap: budget.max_candidates,
            });
        }
        let mut counters = vec![0u128; free.len()];
        let mut actions: Vec<Vec<usize>> = (0..c.num_morphisms())
            .map(|f| if c.is_identity(f) { (0..sizes[c.dom(f)]).collect() } else { vec![0; sizes[c.cod(f)]] })
            .collect();
        for _ in 0..space {
            for (i, &f) in free.iter().enumerate() {
                let (k, mut v) = (sizes[c.dom(f)], counters[i]);
                for slot in actions[f].iter_mut() {
                    *slot = (v % k as u128) as usize;
                    v /= k as u128;
                }
            }
            if let Ok(x) = FinPresheaf::new(base.clone(), sizes.clone(), actions.clone()) {
                out.push(x);
            }
            for (i, &f) in free.iter().enumerate() {
                let card = saturating_pow(sizes[c.dom(f)], sizes[c.cod(f)]);
                counters[i] += 1;
                if counters[i] < card {
                    break;
                }
                counters[i] = 0;
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if sizes[i] < max_level {
                sizes[i] += 1;
                break;
            }
            sizes[i] = 0;
        }
    }
}

/// The first presheaf with levels of size at most `max_level` that is not Reedy
/// monomorphic, minimizing total size.
pub fn smallest_non_reedy_mono(base: &Arc<FinCategory>, max_level: usize) -> Option<FinPresheaf> {
    let mut best: Option<FinPresheaf> = None;
    for_each_presheaf::<()>(base, max_level, |x| {
        if best.as_ref().is_none_or(|b| x.total_size() < b.total_size()) && !is_reedy_mono(&x) {
            best = Some(x);
        }
        ControlFlow::Continue(())
    });
    best
}

fn object(base: &FinCategory, name: &str) -> Result<usize> {
    base.object_by_name(name)
        .ok_or_else(|| Error::InvalidCategory(format!("no object named {name}")))
}

/// `yo([1]) ⊔_{yo(V)} yo([1])` along the two surjections `V -> [1]`.
pub fn two_surjections_pushout(base: &Arc<FinCategory>) -> Result<FinPresheaf> {
    let v = object(base, "V")?;
    let i = object(base, "[1]")?;
    let surj: Vec<usize> = base
        .hom(v, i)
        .iter()
        .copied()
        .filter(|&f| base.morphism(f).is_surjective())
        .collect();
    if surj.len() != 2 {
        return Err(Error::InvalidCategory("expected two surjections V -> [1]".into()));
    }
    let m0 = PresheafMorphism::yoneda(base, surj[0]);
    let m1 = PresheafMorphism::yoneda(base, surj[1]);
    Ok(pushout(&m0, &m1)?.0)
}

/// A random presheaf: a coproduct of one or two representables or automorphism
/// quotients, followed by a random quotient and a random generated sub-presheaf.
pub fn random_presheaf(base: &Arc<FinCategory>, rng: &mut ChaCha8Rng) -> FinPresheaf {
    let c: &FinCategory = base;
    let pieces = rng.gen_range(1..=2);
    let mut x = FinPresheaf::empty(base);
    for _ in 0..pieces {
        let r = rng.gen_range(0..c.num_objects());
        let autos = c.automorphisms(r);
        let piece = if autos.len() > 1 && rng.gen_bool(0.5) {
            autquo(base, r, &autos).expect("full group").0
        } else {
            FinPresheaf::representable(base, r)
        };
        x = x.coproduct(&piece).expect("same base");
    }
    if rng.gen_bool(0.5) {
        let nonempty: Vec<usize> = (0..c.num_objects()).filter(|&a| x.size(a) > 1).collect();
        if let Some(&a) = nonempty.choose(rng) {
            let p = rng.gen_range(0..x.size(a));
            let q = rng.gen_range(0..x.size(a));
            x = x.quotient(&[(a, p, q)]).0;
        }
    }
    if rng.gen_bool(0.5) {
        let seeds: Vec<(usize, usize)> = (0..rng.gen_range(1..=2))
            .filter_map(|_| {
                let a = rng.gen_range(0..c.num_objects());
                (x.size(a) > 0).then(|| (a, rng.gen_range(0..x.size(a))))
            })
            .collect();
        if !seeds.is_empty() {
            x = x.generated_subpresheaf(&seeds).0;
        }
    }
    x
}

pub fn random_corpus(base: &Arc<FinCategory>, count: usize, seed: u64) -> Vec<FinPresheaf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_presheaf(base, &mut rng)).collect()
}

/// The seeded corpus together with the terminal presheaf and the two-surjection pushout.
pub fn standard_corpus(base: &Arc<FinCategory>, count: usize, seed: u64) -> Result<Vec<FinPresheaf>> {
    let mut out = random_corpus(base, count, seed);
    out.push(FinPresheaf::terminal(base));
    out.push(two_surjections_pushout(base)?);
    Ok(out)
}

/// The pushout `yo(b0) ⊔_{yo(a)} yo(b1)` of the first lowering square (in the given order)
/// that some `Hom(r, -)` fails to preserve, trying objects `r` by increasing degree.
/// Such a presheaf does not send that square to a pullback. `None` when every square is
/// preserved, in which case every presheaf on the base is Reedy monomorphic.
pub fn failing_pushout_presheaf(
    base: &Arc<FinCategory>,
    squares: &[CategorySquare],
    budget: &Budget,
) -> Result<Option<(FinPresheaf, usize, usize)>> {
    let mut objects: Vec<usize> = (0..base.num_objects()).collect();
    objects.sort_by_key(|&r| (base.degree(r), r));
    for r in objects {
        for (i, sq) in squares.iter().enumerate() {
            if !hom_preserves_lowering_pushout(base.object(r), &sq.square, budget)?.preserved {
                let m0 = PresheafMorphism::yoneda(base, sq.e0);
                let m1 = PresheafMorphism::yoneda(base, sq.e1);
                return Ok(Some((pushout(&m0, &m1)?.0, r, i)));
            }
        }
    }
    Ok(None)
}
