use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::semilattice::{
    are_isomorphic, chain, cube, diamond, enumerate_up_to, pentagon, tripod, vee, FiniteSemilattice,
};

use super::category::FinCategory;
use super::pushout::{lowering_pushout, LoweringPushoutSquare};

/// A lowering pushout square whose corners are objects of a truncated category.
#[derive(Clone, Debug, Serialize)]
pub struct CategorySquare {
    pub e0: usize,
    pub e1: usize,
    pub f0: usize,
    pub f1: usize,
    pub apex: usize,
    pub square: LoweringPushoutSquare,
}

/// The skeletal full subcategory of inhabited semilattices of size at most `n`, with
/// every lowering pushout square among its objects.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub n: usize,
    pub cat: FinCategory,
    pub squares: Vec<CategorySquare>,
}

/// A readable name for small semilattices, falling back to `S<size>.<index>`.
pub fn object_name(s: &FiniteSemilattice, fallback_index: usize) -> String {
    let n = s.size();
    if n == 1 {
        return "1".into();
    }
    if are_isomorphic(s, &chain(n - 1)) {
        return format!("[{}]", n - 1);
    }
    if n.is_power_of_two() && are_isomorphic(s, &cube(n.trailing_zeros() as usize)) {
        return format!("[1]^{}", n.trailing_zeros());
    }
    let named: [(&str, Arc<FiniteSemilattice>); 4] =
        [("V", vee()), ("T", tripod()), ("M3", diamond()), ("N5", pentagon())];
    for (name, obj) in named {
        if are_isomorphic(s, &obj) {
            return name.into();
        }
    }
    format!("S{n}.{fallback_index}")
}

pub fn truncated_semilattice_category(n: usize, budget: &Budget) -> Result<Truncation> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > 5 {
        return Err(Error::SizeBudget {
            size: n as u128,
            cap: 5,
        });
    }
    let enum_budget = budget.with_enumeration_size(budget.max_enumeration_size.max(n));
    let objects = enumerate_up_to(n, &enum_budget)?;
    let mut names = Vec::new();
    let mut per_size = vec![0usize; n + 1];
    for o in &objects {
        names.push(object_name(o, per_size[o.size()]));
        per_size[o.size()] += 1;
    }
    let cat = FinCategory::from_semilattices(names, objects, budget)?;
    let squares = all_lowering_squares(&cat)?;
    Ok(Truncation { n, cat, squares })
}

/// Pushouts of every ordered pair of lowering maps with a common domain.
pub fn all_lowering_squares(cat: &FinCategory) -> Result<Vec<CategorySquare>> {
    let mut out = Vec::new();
    for a in 0..cat.num_objects() {
        let lowering: Vec<usize> = cat.out_of(a).iter().copied().filter(|&f| cat.is_lowering(f)).collect();
        for &e0 in &lowering {
            for &e1 in &lowering {
                let square = lowering_pushout(&cat.morphism(e0), &cat.morphism(e1))?;
                let (apex, iso) = cat.locate(square.apex()).ok_or_else(|| {
                    Error::InvalidCategory("pushout object missing from the truncation".into())
                })?;
                let f0_map: Vec<usize> = square.f0.map().iter().map(|&x| iso[x]).collect();
                let f1_map: Vec<usize> = square.f1.map().iter().map(|&x| iso[x]).collect();
                let f0 = cat.find(cat.cod(e0), apex, &f0_map).expect("relabelled leg is a morphism");
                let f1 = cat.find(cat.cod(e1), apex, &f1_map).expect("relabelled leg is a morphism");
                out.push(CategorySquare {
                    e0,
                    e1,
                    f0,
                    f1,
                    apex,
                    square,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_truncations() {
        let b = Budget::default();
        let t1 = truncated_semilattice_category(1, &b).unwrap();
        assert_eq!(t1.cat.num_objects(), 1);
        assert_eq!(t1.cat.num_morphisms(), 1);
        let t2 = truncated_semilattice_category(2, &b).unwrap();
        assert_eq!(t2.cat.names(), &["1".to_string(), "[1]".to_string()]);
        let i = t2.cat.object_by_name("[1]").unwrap();
        assert_eq!(t2.cat.hom(i, i).len(), 3);
        let t3 = truncated_semilattice_category(3, &b).unwrap();
        let mut names = t3.cat.names().to_vec();
        names.sort();
        assert_eq!(names, vec!["1", "V", "[1]", "[2]"]);
        let v = t3.cat.object_by_name("V").unwrap();
        assert_eq!(t3.cat.automorphisms(v).len(), 2);
        assert_eq!(t3.cat.num_morphisms(), 69);
        assert!(t3.cat.check_category_laws().is_ok());
    }

    #[test]
    fn json_round_trip_rebuilds_category() {
        let b = Budget::default();
        let t3 = truncated_semilattice_category(3, &b).unwrap();
        let json = serde_json::to_string(&t3.cat.to_json()).unwrap();
        let back: super::super::category::CategoryJson = serde_json::from_str(&json).unwrap();
        let rebuilt = back.rebuild(&b).unwrap();
        assert_eq!(rebuilt.num_morphisms(), 69);
    }
}
