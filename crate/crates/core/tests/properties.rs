//! Invariants checked on random inputs.

use proptest::prelude::*;

use rpotent::decomposition::{
    brute_force_decomposable, is_block_upper_triangular, is_decomposable, main_decomposability_test,
    BlockTriangularization,
};
use rpotent::generators::random_r_potent_bounded;
use rpotent::matrix::{parse_csv, parse_json};
use rpotent::matrix::ratio;
use rpotent::potency::{is_r_potent, rank_trace_check};
use rpotent::semigroup::pattern_closure;
use rpotent::spectral::period;
use rpotent::structure::analyze_structure;
use rpotent::{PatternMatrix, Permutation, RMatrix};

fn sparse_matrix(max_n: usize) -> impl Strategy<Value = RMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0i64..4, 1i64..4, prop::bool::weighted(0.45)), n * n).prop_map(move |cells| {
            let data = cells
                .into_iter()
                .map(|(p, q, keep)| if keep { ratio(p, q) } else { ratio(0, 1) })
                .collect();
            RMatrix::new(n, data).unwrap()
        })
    })
}

fn matrix_pair(max_n: usize) -> impl Strategy<Value = (RMatrix, RMatrix)> {
    (1..=max_n).prop_flat_map(|n| {
        let cells = || proptest::collection::vec((0i64..3, 1i64..3, prop::bool::weighted(0.5)), n * n);
        (cells(), cells()).prop_map(move |(a, b)| {
            let build = |cells: Vec<(i64, i64, bool)>| {
                let data = cells
                    .into_iter()
                    .map(|(p, q, keep)| if keep { ratio(p, q) } else { ratio(0, 1) })
                    .collect();
                RMatrix::new(n, data).unwrap()
            };
            (build(a), build(b))
        })
    })
}

fn permutation_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|m| Permutation::new(m).unwrap())
}

fn r_potent() -> impl Strategy<Value = (u32, RMatrix)> {
    (2u32..6, 1usize..7, any::<u64>()).prop_filter_map("generator declined", |(r, rank, seed)| {
        random_r_potent_bounded(r, rank, seed, 10).ok().map(|a| (r, a))
    })
}

fn pattern_gens() -> impl Strategy<Value = Vec<PatternMatrix>> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(0u64..(1 << (n * n)), 1..=3)
            .prop_map(move |codes| codes.into_iter().map(|c| PatternMatrix::from_code(n, c)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pattern_of_product_is_boolean_product((a, b) in matrix_pair(6)) {
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(ab.pattern(), a.pattern().product(&b.pattern()));
    }

    #[test]
    fn powers_cycle_with_period_r_minus_one((r, a) in r_potent(), k in 1u64..4) {
        prop_assert!(is_r_potent(&a, r).unwrap());
        prop_assert_eq!(a.power(k * (r as u64 - 1) + 1), a);
    }

    #[test]
    fn rank_equals_trace_of_idempotent_power((r, a) in r_potent()) {
        prop_assert!(rank_trace_check(&a, r).unwrap());
    }

    #[test]
    fn conjugation_preserves_invariants(
        (a, p) in sparse_matrix(7).prop_flat_map(|a| {
            let n = a.n();
            (Just(a), permutation_of(n))
        })
    ) {
        let b = a.conjugate(&p).unwrap();
        prop_assert_eq!(b.exact_rank(), a.exact_rank());
        prop_assert_eq!(is_decomposable(&b), is_decomposable(&a));
        if !is_decomposable(&a) && !a.is_zero() {
            prop_assert_eq!(period(&b).unwrap(), period(&a).unwrap());
        }
        prop_assert_eq!(b.conjugate(&p.inverse()).unwrap(), a);
    }

    #[test]
    fn json_and_csv_round_trip(a in sparse_matrix(6)) {
        let json = serde_json::to_string(&a.to_json()).unwrap();
        prop_assert_eq!(parse_json(&json).unwrap(), a.clone());
        let csv: String = a
            .rows()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") + "\n")
            .collect();
        prop_assert_eq!(parse_csv(&csv).unwrap(), a);
    }

    #[test]
    fn kron_rank_is_multiplicative(a in sparse_matrix(4), b in sparse_matrix(4)) {
        prop_assert_eq!(a.kron(&b).exact_rank(), a.exact_rank() * b.exact_rank());
    }

    #[test]
    fn graph_test_matches_brute_force(a in sparse_matrix(6)) {
        let oracle = brute_force_decomposable(&a).unwrap();
        prop_assert_eq!(is_decomposable(&a), oracle.is_some());
        if let Some(w) = oracle {
            prop_assert!(w.holds_for(&a));
        }
    }

    #[test]
    fn block_triangularization_is_valid(a in sparse_matrix(8)) {
        let t = BlockTriangularization::new(&a);
        prop_assert_eq!(t.block_sizes.iter().sum::<usize>(), a.n());
        prop_assert!(is_block_upper_triangular(&t.conjugated.pattern(), &t.block_sizes));
        prop_assert_eq!(&t.conjugated, &a.conjugate(&t.permutation).unwrap());
        for block in &t.diagonal_blocks {
            prop_assert!(!is_decomposable(block));
        }
        prop_assert_eq!(t.is_trivial, !is_decomposable(&a));
    }

    #[test]
    fn structure_claims_hold_for_r_potents((r, a) in r_potent()) {
        let s = analyze_structure(&a, r).unwrap();
        prop_assert!(s.blocks_ok);
        prop_assert!(s.rank_sum_ok);
        if s.applicable {
            prop_assert!(s.nonzero_bounds_ok());
            prop_assert!(s.separated_total_bound_ok());
        }
        prop_assert!(main_decomposability_test(&a, r).unwrap().agrees);
    }

    #[test]
    fn closure_is_a_fixed_point(gens in pattern_gens()) {
        let s = pattern_closure(&gens, 100_000).unwrap();
        prop_assert!(!s.truncated);
        prop_assert!(s.is_closed());
        for g in &gens {
            prop_assert!(s.contains(g));
        }
        let again = pattern_closure(&s.members, 100_000).unwrap();
        prop_assert_eq!(again.len(), s.len());
    }

    #[test]
    fn word_patterns_follow_boolean_products(
        seeds in proptest::collection::vec(any::<u64>(), 1..5),
        word in proptest::collection::vec(0usize..4, 1..6),
    ) {
        let n = 4;
        let gens: Vec<RMatrix> = seeds
            .iter()
            .filter_map(|&s| random_r_potent_bounded(3, 2, s, n).ok())
            .filter(|g| g.n() == n)
            .collect();
        prop_assume!(!gens.is_empty());
        let mut exact = RMatrix::identity(n);
        let mut boolean = PatternMatrix::identity(n);
        for &w in &word {
            let g = &gens[w % gens.len()];
            exact = exact.multiply(g).unwrap();
            boolean = boolean.product(&g.pattern());
        }
        prop_assert_eq!(exact.pattern(), boolean);
    }
}
