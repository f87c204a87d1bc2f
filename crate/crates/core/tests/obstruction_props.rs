use std::sync::OnceLock;

use proptest::prelude::*;
use reedylab_core::obstruction::{
    crown_embedding, crown_extension, enumerate_crown_maps, verify_extension_pullback, CrownMap,
};

fn maps(m: usize, n: usize) -> &'static [CrownMap] {
    static CACHE: OnceLock<Vec<Vec<Vec<CrownMap>>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (0..=5)
            .map(|m| {
                (0..=5)
                    .map(|n| if m >= 3 && n >= 3 { enumerate_crown_maps(m, n).unwrap() } else { Vec::new() })
                    .collect()
            })
            .collect()
    });
    &all[m][n]
}

fn crown_map() -> impl Strategy<Value = CrownMap> {
    (3usize..=5, 3usize..=5, any::<prop::sample::Index>()).prop_map(|(m, n, i)| i.get(maps(m, n)).clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn winding_is_invariant_under_symmetries(f in crown_map(), a in 0usize..6, b in 0usize..6, fa in any::<bool>(), fb in any::<bool>()) {
        let r = |n: usize, k: usize, flip: bool| {
            let r = CrownMap::rotation(n, k % n).unwrap();
            if flip { CrownMap::reflection(n).unwrap().after(&r).unwrap() } else { r }
        };
        let post = r(f.n, a, fa);
        let pre = r(f.m, b, fb);
        let g = post.after(&f).unwrap().after(&pre).unwrap();
        prop_assert_eq!(g.winding(), post.winding() * f.winding() * pre.winding());
    }

    #[test]
    fn lift_is_independent_of_base_point(f in crown_map()) {
        prop_assert!(f.lift_is_independent());
        prop_assert_eq!(f.lift.len(), 2 * f.m + 1);
        for (i, w) in f.lift.windows(2).enumerate() {
            prop_assert!((w[1] - w[0]).abs() <= 1, "step at {}", i);
        }
    }

    #[test]
    fn shorter_source_winds_zero(f in crown_map()) {
        if f.m < f.n {
            prop_assert_eq!(f.winding(), 0);
        }
    }

    #[test]
    fn extension_is_semifunctorial(f in crown_map(), i in any::<prop::sample::Index>(), c in 3usize..=5) {
        let g = i.get(maps(f.n, c));
        let lhs = crown_extension(&g.after(&f).unwrap());
        let rhs = crown_extension(g).after(&crown_extension(&f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_square_is_a_pullback(f in crown_map()) {
        let cert = verify_extension_pullback(&f);
        prop_assert!(cert.all_passed(), "{:?}", cert.failures());
        prop_assert!(crown_extension(&f).is_monotone());
    }
}

#[test]
fn embeddings_follow_the_component_formula() {
    for n in 3..=6 {
        let c = crown_embedding(n).unwrap();
        for (i, &v) in c.iter().enumerate() {
            let lo = i / 2;
            let hi = i.div_ceil(2) % n;
            let expected: usize = [lo, hi].iter().fold(0, |acc, &j| acc | 1 << (n - 1 - j));
            assert_eq!(v, expected);
        }
    }
}

#[test]
fn enumeration_counts_are_rotation_orbit_multiples() {
    for m in 3..=5 {
        for n in 3..=5 {
            assert_eq!(maps(m, n).len() % n, 0, "C{m} -> C{n}");
        }
    }
}
