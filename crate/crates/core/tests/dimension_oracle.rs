use num_bigint::BigUint;
use symres::su2_dims::{dim_complement, dim_invariant, dim_oracle_branching, sector_dims};
use symres::TwiceSpin;

fn spins(n: u64) -> impl Iterator<Item = TwiceSpin> {
    (n % 2..=n).step_by(2).map(|t| TwiceSpin::new(t as u32))
}

#[test]
fn multiplicities_fill_the_product_space() {
    for n in 1..=20u64 {
        let total: BigUint = spins(n)
            .map(|j| dim_invariant(n, j) * (j.twice() + 1))
            .sum();
        assert_eq!(total, BigUint::from(1u32) << n, "N = {n}");
    }
}

#[test]
fn sectors_sum_to_invariant_dimension() {
    for n in 2..=16u64 {
        for n_a in 1..n {
            for j in spins(n) {
                let dims = sector_dims(n, n_a, j).unwrap();
                let sum: BigUint = dims.sectors().iter().map(|s| &s.d * &s.b).sum();
                assert_eq!(sum, dim_invariant(n, j), "N = {n}, N_A = {n_a}, j = {j}");
            }
        }
    }
}

#[test]
fn complement_matches_branching_count() {
    // b_jℓ counts spin-j multiplets in ℓ ⊗ (N − N_A spin-½ sites)
    for n in 2..=12u64 {
        for n_a in 1..n {
            for j in spins(n) {
                for l in spins(n_a) {
                    let oracle = dim_oracle_branching(n - n_a, &[l], j).unwrap();
                    assert_eq!(dim_complement(n, n_a, j, l), oracle, "{n} {n_a} {j} {l}");
                }
            }
        }
    }
}

#[test]
fn worked_dimensions() {
    assert_eq!(dim_invariant(6, TwiceSpin::ONE), 9u32.into());
    assert_eq!(dim_invariant(4, TwiceSpin::ZERO), 2u32.into());
    assert_eq!(dim_invariant(10, TwiceSpin::new(10)), 1u32.into());
    assert!(sector_dims(7, 3, TwiceSpin::ONE).is_err());
}
