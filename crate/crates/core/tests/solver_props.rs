mod common;

use ccut::gen::gen_instance;
use ccut::graph::{build_graph, families, one_sum, EdgeId, Graph};
use ccut::oracle::{BruteOutcome, Oracle};
use ccut::solver::{count_cuts, solve, solve_forced, solve_with, SolveError, SolveOptions};
use ccut::Mode;
use common::small_config;
use num_bigint::BigUint;
use proptest::prelude::*;

fn instance(seed: u64, parts: usize, wmax: u64) -> Graph {
    let mut cfg = small_config(seed, parts);
    cfg.weight_max = wmax;
    gen_instance(&cfg).unwrap().graph
}

fn brute(g: &Graph, mode: Mode, forced: &[EdgeId]) -> Option<(u64, Vec<EdgeId>)> {
    match Oracle::default().best_cut_brute(g, mode, forced).unwrap() {
        BruteOutcome::Optimal { cut, value } => Some((value, cut.edge_ids)),
        BruteOutcome::Infeasible => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_oracle_including_ties(seed in 0u64..1_000_000, parts in 1usize..5, wmax in 1u64..4) {
        let g = instance(seed, parts, wmax);
        prop_assume!(g.vertex_count() <= 16);
        for mode in [Mode::Max, Mode::Min] {
            let sol = solve(&g, mode).unwrap();
            let (value, edges) = brute(&g, mode, &[]).unwrap();
            prop_assert_eq!(sol.value, value);
            prop_assert_eq!(&sol.cut.edge_ids, &edges);
            prop_assert!(sol.cut.side_a.contains(&0));
        }
        let count = count_cuts(&g).unwrap().value;
        prop_assert_eq!(count, BigUint::from(Oracle::default().count_connected_cuts(&g).unwrap()));
    }

    #[test]
    fn min_cut_is_global_min(seed in 0u64..1_000_000, parts in 1usize..4) {
        let g = instance(seed, parts, 50);
        prop_assume!(g.vertex_count() <= 13);
        prop_assert_eq!(solve(&g, Mode::Min).unwrap().value, Oracle::default().min_over_all_bipartitions(&g).unwrap());
    }

    #[test]
    fn forced_matches_oracle(seed in 0u64..1_000_000, parts in 1usize..5, pick in any::<prop::sample::Index>(), wmax in 1u64..30) {
        let g = instance(seed, parts, wmax);
        prop_assume!(g.vertex_count() <= 15);
        let e = g.edges()[pick.index(g.edge_count())].id;
        for mode in [Mode::Max, Mode::Min] {
            let sol = solve_forced(&g, mode, e).unwrap();
            let (value, edges) = brute(&g, mode, &[e]).unwrap();
            prop_assert_eq!(sol.value, value);
            prop_assert_eq!(&sol.cut.edge_ids, &edges);
            prop_assert!(sol.cut.edge_ids.contains(&e));
        }
    }

    #[test]
    fn boosting_an_edge_forces_it(seed in 0u64..1_000_000, parts in 1usize..8, pick in any::<prop::sample::Index>()) {
        let g = instance(seed, parts, 100);
        let e = g.edges()[pick.index(g.edge_count())];
        let t = g.total_weight();
        let boosted = g.map_weights(|f| if f.id == e.id { f.weight + t } else { f.weight });
        let via_boost = solve(&boosted, Mode::Max).unwrap();
        let forced = solve_forced(&g, Mode::Max, e.id).unwrap();
        prop_assert_eq!(via_boost.value - t, forced.value);
    }

    #[test]
    fn scaling_weights_scales_value(seed in 0u64..1_000_000, parts in 1usize..8, c in 2u64..50) {
        let g = instance(seed, parts, 100);
        let scaled = g.map_weights(|f| f.weight * c);
        for mode in [Mode::Max, Mode::Min] {
            let a = solve(&g, mode).unwrap();
            let b = solve(&scaled, mode).unwrap();
            prop_assert_eq!(a.value * c, b.value);
            prop_assert_eq!(a.cut, b.cut);
        }
    }

    #[test]
    fn jobs_do_not_change_answers(seed in 0u64..1_000_000, parts in 1usize..12) {
        let mut cfg = small_config(seed, parts);
        cfg.one_sum_percent = 60;
        let g = gen_instance(&cfg).unwrap().graph;
        let one = SolveOptions { allow_k5: false, jobs: 1 };
        let four = SolveOptions { allow_k5: false, jobs: 4 };
        for mode in [Mode::Max, Mode::Min] {
            let a = solve_with(&g, mode, one).unwrap();
            let b = solve_with(&g, mode, four).unwrap();
            prop_assert_eq!((a.value, a.cut), (b.value, b.cut));
        }
    }

    #[test]
    fn k5_parts_with_flag(seed in 0u64..1_000_000, parts in 1usize..4) {
        let mut cfg = small_config(seed, parts);
        cfg.allow_k5 = true;
        let g = gen_instance(&cfg).unwrap().graph;
        prop_assume!(g.vertex_count() <= 15);
        let opts = SolveOptions { allow_k5: true, jobs: 1 };
        for mode in [Mode::Max, Mode::Min] {
            prop_assert_eq!(Some(solve_with(&g, mode, opts).unwrap().value), brute(&g, mode, &[]).map(|b| b.0));
        }
    }
}

#[test]
fn small_examples() {
    let t = build_graph(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
    assert_eq!(solve(&t, Mode::Max).unwrap().value, 5);
    let k2 = build_graph(2, &[(0, 1, 7)]).unwrap();
    let s = solve(&k2, Mode::Max).unwrap();
    assert_eq!((s.value, s.cut.side_a.clone(), s.cut.side_b.clone()), (7, vec![0], vec![1]));
    let c4 = build_graph(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]).unwrap();
    assert_eq!(solve_forced(&c4, Mode::Max, EdgeId(0)).unwrap().value, 5);
    let bowtie = one_sum(&families::complete(3), 0, &families::complete(3), 0).unwrap();
    assert_eq!(count_cuts(&bowtie).unwrap().value, BigUint::from(6u32));
}

#[test]
fn errors() {
    assert_eq!(solve(&families::path(1), Mode::Max).unwrap_err(), SolveError::NoCutExists);
    let split = build_graph(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
    assert_eq!(solve(&split, Mode::Max).unwrap_err(), SolveError::Disconnected);
    assert!(matches!(solve(&families::k5_minus_edge(), Mode::Max), Err(SolveError::NotInClass(_))));
    assert!(matches!(solve(&families::complete(5), Mode::Max), Err(SolveError::NotInClass(_))));
    assert_eq!(
        solve_forced(&families::cycle(4), Mode::Max, EdgeId(9)).unwrap_err(),
        SolveError::UnknownEdge(EdgeId(9))
    );
}

#[test]
fn huge_counts_need_big_integers() {
    // A chain of 1-sums of W12 multiplies nothing but adds; 2-sums multiply.
    let mut cfg = small_config(3, 400);
    cfg.one_sum_percent = 0;
    cfg.min_size = 12;
    cfg.max_size = 12;
    let g = gen_instance(&cfg).unwrap().graph;
    let c = count_cuts(&g).unwrap().value;
    assert!(c > BigUint::from(u64::MAX));
}
