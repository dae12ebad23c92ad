mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vscif::auxiliary::{pack_cff, pack_ff, pack_ffd, pack_nfc, UniformPackingRequest};
use vscif::exact::{min_bins_exact, solve_exact, ExactLimits, ExactOutcome};
use vscif::verify_packing;

fn sizes_and_cap() -> impl Strategy<Value = (Vec<u64>, u64)> {
    (1u64..=40).prop_flat_map(|cap| (prop::collection::vec(1..=cap, 0..40), Just(cap)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ff_matches_naive((sizes, cap) in sizes_and_cap()) {
        let p = pack_ff(&UniformPackingRequest::new(sizes.clone(), cap)).unwrap();
        prop_assert_eq!(contents(&p), naive_ff(&sizes, cap));
    }

    #[test]
    fn ffd_matches_naive((sizes, cap) in sizes_and_cap()) {
        let p = pack_ffd(&UniformPackingRequest::new(sizes.clone(), cap)).unwrap();
        prop_assert_eq!(contents(&p), naive_ffd(&sizes, cap));
    }

    #[test]
    fn nfc_matches_naive((sizes, cap) in sizes_and_cap(), d in 0u32..3) {
        let inst = linear(&sizes, &[cap], d);
        let p = pack_nfc(&inst).unwrap();
        prop_assert_eq!(contents(&p), naive_nfc(&sizes, cap, d >= 1));
        prop_assert!(verify_packing(&p, &inst).is_valid());
    }

    #[test]
    fn cff_matches_naive(sizes in prop::collection::vec(1u64..=60, 0..30), cap in 20u64..=30) {
        let inst = linear(&sizes, &[cap], 2);
        let p = pack_cff(&inst).unwrap();
        prop_assert_eq!(contents(&p), naive_ff(&naive_cff_pieces(&sizes, cap), cap));
        prop_assert!(verify_packing(&p, &inst).is_valid());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_cost_matches_brute_force(seed in any::<u64>()) {
        let shape = TinyShape { max_items: 4, max_size: 9, max_classes: 3, cut_limits: 0..=1, strong: false };
        let inst = tiny(&mut ChaCha8Rng::seed_from_u64(seed), &shape);
        let ExactOutcome::Optimal(res) = solve_exact(&inst, &ExactLimits::default()).unwrap() else {
            return Err(TestCaseError::fail("budget exceeded"));
        };
        prop_assert_eq!(res.cost, brute_force(&inst, &class_price(&inst)));
        prop_assert_eq!(verify_packing(&res.packing, &inst).cost(), Some(res.cost));
    }

    #[test]
    fn exact_bins_match_brute_force(seed in any::<u64>()) {
        let shape = TinyShape { max_items: 3, max_size: 8, max_classes: 2, cut_limits: 0..=2, strong: false };
        let inst = tiny(&mut ChaCha8Rng::seed_from_u64(seed), &shape);
        let bins = min_bins_exact(&inst, &ExactLimits::default()).unwrap().optimal().unwrap();
        prop_assert_eq!(bins as u64, brute_force(&inst, &bin_price(&inst)));
    }

    #[test]
    fn pruning_does_not_change_optimum(seed in any::<u64>()) {
        let inst = tiny(&mut ChaCha8Rng::seed_from_u64(seed), &TinyShape::default());
        let on = ExactLimits::default();
        let off = ExactLimits { symmetry_pruning: false, ..on };
        let a = solve_exact(&inst, &on).unwrap().optimal().map(|r| r.cost);
        let b = solve_exact(&inst, &off).unwrap().optimal().map(|r| r.cost);
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!(a, b);
        }
    }
}
