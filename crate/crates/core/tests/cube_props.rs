use proptest::prelude::*;
use reedylab_core::cube::{all_cube_homs, cube_hom_count, dedekind_homs, CubeHom};
use reedylab_core::semilattice::{brute_force_homs, cube};
use reedylab_core::Budget;

fn cube_hom(m: usize, n: usize) -> impl Strategy<Value = CubeHom> {
    let top = 1usize << n;
    (0..top, prop::collection::vec(0..top, m)).prop_map(move |(b, gens)| {
        let gens = gens.into_iter().map(|g| g | b).collect();
        CubeHom::new(m, n, b, gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decode_then_encode_is_identity(f in (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| cube_hom(m, n))) {
        let g = CubeHom::encode(&f.decode()).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn substitution_matches_composition(
        (f, g) in (1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(l, m, n)| (cube_hom(l, m), cube_hom(m, n)))
    ) {
        let composed = g.after(&f).unwrap();
        let direct = g.decode().after(&f.decode()).unwrap();
        prop_assert_eq!(composed.decode(), direct);
    }
}

#[test]
fn counts_agree_three_ways() {
    let b = Budget::default();
    for m in 0..=2 {
        for n in 0..=2 {
            let formula = cube_hom_count(m, n);
            assert_eq!(all_cube_homs(m, n, &b).unwrap().len() as u128, formula);
            assert_eq!(brute_force_homs(&cube(m), &cube(n), &b).unwrap().len() as u128, formula);
        }
    }
    assert_eq!([(1, 1), (2, 1), (3, 1), (1, 2)].map(|(m, n)| cube_hom_count(m, n)), [3, 5, 9, 9]);
}

#[test]
fn dedekind_numbers() {
    let b = Budget::default();
    let counts: Vec<usize> = (0..=3).map(|n| dedekind_homs(n, 1, &b).unwrap().len()).collect();
    assert_eq!(counts, vec![2, 3, 6, 20]);
}
