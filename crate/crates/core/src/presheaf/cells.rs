use std::collections::{BTreeMap, HashMap};

use crate::certificate::Certificate;
use crate::union_find::UnionFind;

use super::colimit::{finite_colimit, SetDiagram};
use super::ez::ez_degree;
use super::latching::{is_reedy_mono, latching_object, LatchingObject};
use super::types::FinPresheaf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Item {
    /// `(r, g: s -> r, x ∈ X_r)`.
    Elem(usize, usize, usize),
    /// `(r, g: s -> r, ℓ ∈ L_r X)`.
    Latch(usize, usize, usize),
}

fn quotient(items: &[Item], pairs: &[(Item, Item)]) -> (usize, HashMap<Item, usize>) {
    let idx: HashMap<Item, usize> = items.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut uf = UnionFind::new(items.len());
    for (a, b) in pairs {
        uf.union(idx[a], idx[b]);
    }
    let (n, labels) = uf.classes();
    (n, items.iter().map(|t| (*t, labels[idx[t]])).collect())
}

/// Assigns `f(item)` to the class of each item; `None` when two items of one class disagree.
fn descend(size: usize, class: &HashMap<Item, usize>, f: impl Fn(Item) -> usize) -> Option<Vec<usize>> {
    let mut out = vec![usize::MAX; size];
    for (&t, &k) in class {
        let v = f(t);
        if out[k] != usize::MAX && out[k] != v {
            return None;
        }
        out[k] = v;
    }
    Some(out)
}

fn injective(map: &[usize]) -> bool {
    let mut m = map.to_vec();
    m.sort_unstable();
    m.windows(2).all(|w| w[0] != w[1])
}

/// One level of the weighted skeleton: pairs `(g: s -> r, y ∈ X_r)` with `deg g < n`
/// modulo `(h∘g, y) ~ (g, y·h)`, with the comparison `(g, y) ↦ y·g` into `X_s`.
///
/// Every pair is equivalent to one whose map is lowering, through the Reedy
/// factorization, so only those are stored.
#[derive(Clone, Debug)]
pub struct WeightedSkeletonLevel {
    pub size: usize,
    pub to_x: Vec<usize>,
    /// One lowering pair per class.
    pub reps: Vec<(usize, usize)>,
    class: HashMap<(usize, usize), usize>,
}

impl WeightedSkeletonLevel {
    /// Class of `(g, y)`; `g` must have degree below `n`.
    pub fn class_of(&self, x: &FinPresheaf, g: usize, y: usize) -> usize {
        let (e, m) = x.base().reedy_factorization(g).expect("Reedy factorization");
        self.class[&(e, x.act(y, m))]
    }
}

pub fn weighted_skeleton_level(x: &FinPresheaf, n: usize, s: usize) -> WeightedSkeletonLevel {
    let c = x.base();
    let lowering: Vec<usize> = c
        .out_of(s)
        .iter()
        .copied()
        .filter(|&e| c.is_lowering(e) && c.morphism_degree(e) < n)
        .collect();
    let mut items = Vec::new();
    for &e in &lowering {
        for y in 0..x.size(c.cod(e)) {
            items.push((e, y));
        }
    }
    let idx: HashMap<(usize, usize), usize> = items.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut uf = UnionFind::new(items.len());
    for &e in &lowering {
        for &h in c.out_of(c.cod(e)) {
            let he = c.compose(h, e);
            let (e2, m2) = c.reedy_factorization(he).expect("Reedy factorization");
            for z in 0..x.size(c.cod(h)) {
                uf.union(idx[&(e, x.act(z, h))], idx[&(e2, x.act(z, m2))]);
            }
        }
    }
    let (size, labels) = uf.classes();
    let mut to_x = vec![usize::MAX; size];
    let mut reps = vec![(0, 0); size];
    let mut class = HashMap::new();
    for (i, &(e, y)) in items.iter().enumerate().rev() {
        to_x[labels[i]] = x.act(y, e);
        reps[labels[i]] = (e, y);
        class.insert((e, y), labels[i]);
    }
    WeightedSkeletonLevel {
        size,
        to_x,
        reps,
        class,
    }
}

/// Sizes of the corners of the cell square at one level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellLevel {
    pub object: usize,
    pub upper_left: usize,
    pub upper_right: usize,
    pub lower_left: usize,
    pub lower_right: usize,
    pub cell_injective: bool,
}

/// Outcome of the cell square at one degree, with the first failure of each property.
#[derive(Clone, Debug, Default)]
pub struct CellSquareReport {
    pub degree: usize,
    pub levels: Vec<CellLevel>,
    pub commutes: Option<String>,
    /// Pushout onto the weighted skeleta.
    pub pushout: Option<String>,
    /// Pushout onto the sub-presheaves of elements of EZ degree below `n` and `n + 1`.
    pub ez_pushout: Option<String>,
    /// Whether the weighted skeleta embed onto the EZ skeleta.
    pub comparison: Option<String>,
}

struct Corners {
    ul_n: usize,
    ur_n: usize,
    ul: HashMap<Item, usize>,
    ur: HashMap<Item, usize>,
}

fn corners(x: &FinPresheaf, n: usize, s: usize, latch: &BTreeMap<usize, LatchingObject>) -> Corners {
    let c = x.base();
    let mut ur_items = Vec::new();
    let mut ur_pairs = Vec::new();
    let mut ul_items = Vec::new();
    let mut ul_pairs = Vec::new();
    for (&r, lr) in latch {
        let autos = c.automorphisms(r);
        let rep = lr.representatives();
        for &g in c.hom(s, r) {
            let low = c.morphism_degree(g) < n;
            for el in 0..x.size(r) {
                ur_items.push(Item::Elem(r, g, el));
                if low {
                    ul_items.push(Item::Elem(r, g, el));
                }
            }
            for l in 0..lr.size {
                ul_items.push(Item::Latch(r, g, l));
                if low {
                    ul_pairs.push((Item::Elem(r, g, lr.map[l]), Item::Latch(r, g, l)));
                }
            }
            for &t in &autos {
                let tg = c.compose(t, g);
                for el in 0..x.size(r) {
                    let p = (Item::Elem(r, tg, el), Item::Elem(r, g, x.act(el, t)));
                    ur_pairs.push(p);
                    if low {
                        ul_pairs.push(p);
                    }
                }
                for (l, &(e, y)) in rep.iter().enumerate() {
                    ul_pairs.push((Item::Latch(r, tg, l), Item::Latch(r, g, lr.class_of(c.compose(e, t), y))));
                }
            }
        }
    }
    let (ur_n, ur) = quotient(&ur_items, &ur_pairs);
    let (ul_n, ul) = quotient(&ul_items, &ul_pairs);
    Corners { ul_n, ur_n, ul, ur }
}

/// Checks that `bottom ∘ left = right ∘ cell` and that the square is a pushout of sets.
fn check_square(
    s: usize,
    ul_n: usize,
    cell: &[usize],
    ur_n: usize,
    left: &[usize],
    ll_n: usize,
    right: &[usize],
    bottom: &[usize],
    lr_n: usize,
) -> (Option<String>, Option<String>) {
    if let Some(k) = (0..ul_n).find(|&k| right[cell[k]] != bottom[left[k]]) {
        return (Some(format!("object {s}: upper-left class {k} has two images")), None);
    }
    let mut d = SetDiagram::default();
    let nul = d.add_node(ul_n);
    let nur = d.add_node(ur_n);
    let nll = d.add_node(ll_n);
    d.add_edge(nul, nur, cell.to_vec()).expect("shape");
    d.add_edge(nul, nll, left.to_vec()).expect("shape");
    let col = finite_colimit(&d);
    let mut induced = vec![usize::MAX; col.size];
    for (i, &v) in bottom.iter().enumerate() {
        induced[col.legs[nll][i]] = v;
    }
    for (k, &v) in right.iter().enumerate() {
        induced[col.legs[nur][k]] = v;
    }
    let mut hit = induced.clone();
    hit.sort_unstable();
    if hit != (0..lr_n).collect::<Vec<_>>() {
        return (
            None,
            Some(format!(
                "object {s}: pushout has {} elements, lower-right corner has {lr_n}",
                col.size
            )),
        );
    }
    (None, None)
}

/// The square `sk^n X <- UL -> UR -> sk^{n+1} X` at degree `n`, where `UR` is the
/// degree-`n` cells and `UL` their boundaries glued to the latching objects. It is
/// checked against the weighted skeleta and against the EZ skeleta.
pub fn cell_square(x: &FinPresheaf, n: usize) -> CellSquareReport {
    let c = x.base();
    let latch: BTreeMap<usize, LatchingObject> = (0..c.num_objects())
        .filter(|&r| c.degree(r) == n)
        .map(|r| (r, latching_object(x, r)))
        .collect();
    let reps: HashMap<usize, Vec<(usize, usize)>> = latch.iter().map(|(&r, l)| (r, l.representatives())).collect();
    let ez: Vec<Vec<usize>> = (0..c.num_objects())
        .map(|r| (0..x.size(r)).map(|el| ez_degree(x, r, el)).collect())
        .collect();
    let mut report = CellSquareReport {
        degree: n,
        ..Default::default()
    };
    for s in 0..c.num_objects() {
        let k = corners(x, n, s, &latch);
        let w_n = weighted_skeleton_level(x, n, s);
        let w_n1 = weighted_skeleton_level(x, n + 1, s);
        let sk_n: Vec<usize> = (0..x.size(s)).filter(|&el| ez[s][el] < n).collect();
        let sk_n1: Vec<usize> = (0..x.size(s)).filter(|&el| ez[s][el] <= n).collect();
        let as_elem = |t: Item| match t {
            Item::Elem(_, g, el) => (g, el),
            Item::Latch(r, g, l) => (g, latch[&r].map[l]),
        };
        let cell = descend(k.ul_n, &k.ul, |t| {
            let (g, el) = as_elem(t);
            k.ur[&Item::Elem(c.cod(g), g, el)]
        });
        let right_w = descend(k.ur_n, &k.ur, |t| {
            let (g, el) = as_elem(t);
            w_n1.class_of(x, g, el)
        });
        let left_w = descend(k.ul_n, &k.ul, |t| match t {
            Item::Elem(_, g, el) => w_n.class_of(x, g, el),
            Item::Latch(r, g, l) => {
                let (e, y) = reps[&r][l];
                w_n.class_of(x, c.compose(e, g), y)
            }
        });
        let bottom_w: Vec<usize> = w_n.reps.iter().map(|&(g, y)| w_n1.class_of(x, g, y)).collect();
        let mut level = CellLevel {
            object: s,
            upper_left: k.ul_n,
            upper_right: k.ur_n,
            lower_left: w_n.size,
            lower_right: w_n1.size,
            cell_injective: false,
        };
        let (Some(cell), Some(right_w), Some(left_w)) = (cell, right_w, left_w) else {
            report.commutes.get_or_insert(format!("object {s}: a corner map is not well defined"));
            report.levels.push(level);
            continue;
        };
        level.cell_injective = injective(&cell);
        let (comm, po) = check_square(s, k.ul_n, &cell, k.ur_n, &left_w, w_n.size, &right_w, &bottom_w, w_n1.size);
        if report.commutes.is_none() {
            report.commutes = comm;
        }
        if report.pushout.is_none() {
            report.pushout = po;
        }
        if report.comparison.is_none() {
            for (w, sk, m) in [(&w_n, &sk_n, n), (&w_n1, &sk_n1, n + 1)] {
                let mut img = w.to_x.clone();
                img.sort_unstable();
                if &img != sk {
                    report.comparison = Some(format!("object {s}: weighted sk^{m} does not embed onto the EZ skeleton"));
                    break;
                }
            }
        }
        if report.ez_pushout.is_none() && report.comparison.is_none() {
            let pos_n: HashMap<usize, usize> = sk_n.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let pos_n1: HashMap<usize, usize> = sk_n1.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let left: Vec<usize> = left_w.iter().map(|&k| pos_n[&w_n.to_x[k]]).collect();
            let right: Vec<usize> = right_w.iter().map(|&k| pos_n1[&w_n1.to_x[k]]).collect();
            let bottom: Vec<usize> = sk_n.iter().map(|v| pos_n1[v]).collect();
            let (c1, p1) = check_square(s, k.ul_n, &cell, k.ur_n, &left, sk_n.len(), &right, &bottom, sk_n1.len());
            report.ez_pushout = c1.or(p1);
        } else if report.ez_pushout.is_none() {
            report.ez_pushout = Some(format!("object {s}: EZ skeleta differ from the weighted skeleta"));
        }
        report.levels.push(level);
    }
    report
}

/// Certifies the cell square at degree `n`: commutation and the pushout onto the weighted
/// skeleta for every `X`; when `X` is Reedy monomorphic also injectivity of the cell map,
/// the comparison of weighted and EZ skeleta, and the pushout onto EZ skeleta.
pub fn verify_cell_square(x: &FinPresheaf, n: usize) -> Certificate {
    let mut cert = Certificate::new(format!("cell-square-{n}"));
    let report = cell_square(x, n);
    let count = report.levels.len() as u64;
    cert.record("square-commutes", count, report.commutes.clone());
    cert.record("levelwise-pushout", count, report.pushout.clone());
    let bad = report.levels.iter().find(|l| !l.cell_injective).map(|l| l.object);
    if is_reedy_mono(x) {
        cert.record(
            "cell-map-injective",
            count,
            bad.map(|s| format!("cell map not injective at object {s}")),
        );
        cert.record("skeleton-comparison", count, report.comparison.clone());
        cert.record("ez-skeleton-pushout", count, report.ez_pushout.clone());
    } else {
        let note = |what: &str, failure: &Option<String>| match failure {
            Some(w) => format!("not Reedy monomorphic; {what} fails: {w}"),
            None => format!("not Reedy monomorphic; {what} holds"),
        };
        let cell_failure = bad.map(|s| format!("cell map not injective at object {s}"));
        cert.skip("cell-map-injective", note("cell injectivity", &cell_failure));
        cert.skip("skeleton-comparison", note("skeleton comparison", &report.comparison));
        cert.skip("ez-skeleton-pushout", note("EZ-skeleton pushout", &report.ez_pushout));
    }
    cert
}

/// Skeleta form an increasing chain of sub-presheaves ending at `X`.
pub fn skeleton_chain_failure(x: &FinPresheaf) -> Option<String> {
    let c = x.base();
    let top = (0..c.num_objects()).map(|r| c.degree(r)).max().unwrap_or(0);
    let mut prev: Option<Vec<usize>> = None;
    for n in 0..=top + 1 {
        let keep: Vec<Vec<bool>> = (0..c.num_objects())
            .map(|r| (0..x.size(r)).map(|el| ez_degree(x, r, el) < n).collect())
            .collect();
        if x.restrict_to(&keep).is_err() {
            return Some(format!("sk^{n} is not closed under the action"));
        }
        let sizes: Vec<usize> = keep.iter().map(|l| l.iter().filter(|&&b| b).count()).collect();
        if let Some(p) = &prev {
            if p.iter().zip(&sizes).any(|(a, b)| a > b) {
                return Some(format!("sk^{n} is smaller than its predecessor"));
            }
        }
        prev = Some(sizes);
    }
    if prev.as_deref() != Some(x.sizes()) {
        return Some("the top skeleton is not the whole presheaf".into());
    }
    None
}
