mod common;

use common::{arb_digraph, arb_semicomplete, optimum_by_enumeration, optimum_by_subsets, with_ordering};
use cutwidth_core::exact::{
    brute_force_optimum, exact_optimum, prefix_cut_profile, pure_vertex_dp, subset_dp, witness_attains,
};
use cutwidth_core::{classify, cut_vector, induced_subdigraph, Digraph, Objective, SolverCaps};
use proptest::prelude::*;

const OBJECTIVES: [Objective; 2] = [Objective::Cutwidth, Objective::Ola];

/// Semi-complete digraph whose non-pure vertices are at most `k`: a random
/// tournament with symmetric pairs only among the first `k` vertices.
fn few_non_pure(max_n: usize, k: usize) -> impl Strategy<Value = Digraph> {
    (arb_semicomplete(2, max_n), proptest::collection::vec(any::<bool>(), k * k)).prop_map(move |(d, extra)| {
        let k = k.min(d.n());
        Digraph::from_fn(d.n(), |u, v| {
            let (a, b) = (u.min(v), u.max(v));
            if b < k && extra[a * k + b] {
                true
            } else if d.has_arc(a, b) {
                u == a
            } else {
                u == b
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn subset_dp_and_brute_force_match_enumeration(d in arb_digraph(0, 7)) {
        let caps = SolverCaps::default();
        for obj in OBJECTIVES {
            let expected = optimum_by_enumeration(&d, obj);
            let brute = brute_force_optimum(&d, obj, &caps).unwrap();
            let dp = subset_dp(&d, obj, &caps).unwrap();
            prop_assert_eq!(brute.value, expected);
            prop_assert_eq!(dp.value, expected);
            prop_assert!(witness_attains(&d, &brute).unwrap());
            prop_assert!(witness_attains(&d, &dp).unwrap());
        }
    }

    #[test]
    fn subset_dp_matches_plain_dp(d in arb_digraph(0, 12)) {
        for obj in OBJECTIVES {
            prop_assert_eq!(subset_dp(&d, obj, &SolverCaps::default()).unwrap().value, optimum_by_subsets(&d, obj));
        }
    }

    #[test]
    fn pure_vertex_dp_matches_subset_dp(d in few_non_pure(13, 5)) {
        let caps = SolverCaps::default();
        prop_assert!(classify(&d).non_pure_count() <= 5);
        for obj in OBJECTIVES {
            let pure = pure_vertex_dp(&d, obj, &caps).unwrap();
            prop_assert_eq!(pure.value, subset_dp(&d, obj, &caps).unwrap().value);
            prop_assert!(witness_attains(&d, &pure).unwrap());
        }
    }

    #[test]
    fn dispatch_witness_attains_value(d in arb_digraph(0, 14)) {
        for obj in OBJECTIVES {
            let r = exact_optimum(&d, obj, &SolverCaps::default()).unwrap();
            prop_assert!(witness_attains(&d, &r).unwrap());
        }
    }

    #[test]
    fn cutwidth_monotone_under_induced_subdigraphs(d in arb_digraph(1, 11), drop in any::<prop::sample::Index>()) {
        let caps = SolverCaps::default();
        let v = drop.index(d.n());
        let keep: Vec<usize> = (0..d.n()).filter(|&u| u != v).collect();
        let (sub, _) = induced_subdigraph(&d, &keep).unwrap();
        let whole = subset_dp(&d, Objective::Cutwidth, &caps).unwrap().value;
        prop_assert!(subset_dp(&sub, Objective::Cutwidth, &caps).unwrap().value <= whole);
    }

    #[test]
    fn profile_brackets_every_ordering((d, pi) in with_ordering(arb_digraph(0, 11))) {
        let p = prefix_cut_profile(&d, &SolverCaps::default()).unwrap();
        let cuts = cut_vector(&d, &pi).unwrap();
        for (i, &c) in cuts.entries().iter().enumerate() {
            prop_assert!(p.min_at_size[i] <= c && c <= p.max_at_size[i]);
        }
    }
}

#[test]
fn caps_are_errors_not_truncation() {
    let d = Digraph::empty(12);
    let caps = SolverCaps { brute_force_n: 5, subset_n: 8, non_pure_k: 3 };
    assert!(brute_force_optimum(&d, Objective::Ola, &caps).is_err());
    assert!(subset_dp(&d, Objective::Ola, &caps).is_err());
    assert!(exact_optimum(&d, Objective::Ola, &caps).is_err());
}
