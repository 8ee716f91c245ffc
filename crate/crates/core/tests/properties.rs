use num_bigint::BigUint;
use proptest::prelude::*;
use symres::su2_dims::{dim_invariant, sector_dims};
use symres::typical_entropy::{entropy_bounds, entropy_stats, max_entropy};
use symres::TwiceSpin;

fn cut() -> impl Strategy<Value = (u64, u64, TwiceSpin)> {
    (2u64..=60)
        .prop_flat_map(|n| (Just(n), 1..n, 0..=n / 2))
        .prop_map(|(n, n_a, k)| (n, n_a, TwiceSpin::new((n - 2 * k) as u32)))
}

proptest! {
    #[test]
    fn sum_rule_holds((n, n_a, j) in cut()) {
        let dims = sector_dims(n, n_a, j).unwrap();
        let sum: BigUint = dims.sectors().iter().map(|s| &s.d * &s.b).sum();
        prop_assert_eq!(sum, dim_invariant(n, j));
    }

    #[test]
    fn moments_respect_bounds((n, n_a, j) in cut()) {
        let dims = sector_dims(n, n_a, j).unwrap();
        let stats = entropy_stats(&dims);
        let (lo, hi) = entropy_bounds(&dims);
        prop_assert!(lo <= stats.mean + 1e-12 && stats.mean <= hi + 1e-12);
        prop_assert!(hi <= max_entropy(&dims) + 1e-12);
        prop_assert!(stats.variance >= 0.0);
    }

    #[test]
    fn spin_text_round_trips(t in 0u32..1000) {
        let j = TwiceSpin::new(t);
        prop_assert_eq!(j.to_string().parse::<TwiceSpin>().unwrap(), j);
    }
}
