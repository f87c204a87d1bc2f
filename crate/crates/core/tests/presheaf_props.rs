use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reedylab_core::presheaf::{
    has_unique_ez, is_reedy_mono, latching_routes_agree, maps_lowering_pushouts_to_pullbacks, random_presheaf,
    skeleton, skeleton_chain_failure, verify_cell_square, FinPresheaf,
};
use reedylab_core::reedy::{truncated_semilattice_category, FinCategory, Truncation};
use reedylab_core::Budget;

fn base() -> &'static (Arc<FinCategory>, Truncation) {
    static BASE: OnceLock<(Arc<FinCategory>, Truncation)> = OnceLock::new();
    BASE.get_or_init(|| {
        let t = truncated_semilattice_category(3, &Budget::default()).unwrap();
        (Arc::new(t.cat.clone()), t)
    })
}

fn presheaf(seed: u64) -> FinPresheaf {
    random_presheaf(&base().0, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reedy_mono_criteria_agree(seed in any::<u64>()) {
        let x = presheaf(seed);
        prop_assert!(x.functoriality_failure().is_none());
        let a = is_reedy_mono(&x);
        prop_assert_eq!(a, has_unique_ez(&x));
        prop_assert_eq!(a, maps_lowering_pushouts_to_pullbacks(&x, &base().1.squares).is_ok());
    }

    #[test]
    fn latching_routes_agree_everywhere(seed in any::<u64>()) {
        let x = presheaf(seed);
        for r in 0..base().0.num_objects() {
            prop_assert!(latching_routes_agree(&x, r).is_ok());
        }
    }

    #[test]
    fn skeleta_grow_to_the_whole_presheaf(seed in any::<u64>()) {
        let x = presheaf(seed);
        prop_assert!(skeleton_chain_failure(&x).is_none());
        let mut prev = 0;
        for n in 0..=4 {
            let (s, incl) = skeleton(&x, n);
            prop_assert!(incl.is_levelwise_injective());
            prop_assert!(s.total_size() >= prev);
            prev = s.total_size();
        }
        prop_assert_eq!(prev, x.total_size());
    }

    #[test]
    fn cell_squares_hold(seed in any::<u64>(), n in 0usize..=4) {
        let x = presheaf(seed);
        let cert = verify_cell_square(&x, n);
        prop_assert!(!cert.any_failed(), "{:?}", cert.failures());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let x = presheaf(seed);
        let json = serde_json::to_string(&x.to_json("n3")).unwrap();
        let back = FinPresheaf::from_json(&serde_json::from_str(&json).unwrap(), &base().0).unwrap();
        prop_assert_eq!(back.sizes(), x.sizes());
        prop_assert_eq!(back.actions(), x.actions());
    }
}
