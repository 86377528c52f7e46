mod common;

use common::{arb_semicomplete, arb_tournament, for_each_permutation, optimum_by_subsets, with_ordering};
use cutwidth_core::tournament::{
    approximate_semicomplete, is_sorted, relaxation, sorted_ordering, tournament_exact, weighted_approx,
    FractionalTournament, Rational, WeightedSemicomplete,
};
use cutwidth_core::{cut_vector, Objective, VertexOrdering};
use proptest::collection::vec;
use proptest::prelude::*;

/// Weights are multiples of 1/4 so that in-weight ties are common.
fn arb_fractional(lo: usize, hi: usize) -> impl Strategy<Value = FractionalTournament> {
    (lo..=hi).prop_flat_map(|n| {
        vec(0i128..=4, n * n).prop_map(move |q| {
            FractionalTournament::from_fn(n, |u, v| {
                let x = Rational::new(q[u.min(v) * n + u.max(v)], 4);
                if u < v {
                    x
                } else {
                    Rational::from_integer(1) - x
                }
            })
            .unwrap()
        })
    })
}

fn dominated(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sorted_is_minimum_and_only_sorted_is(t in arb_fractional(1, 6)) {
        let best = t.cut_vector(&sorted_ordering(&t)).unwrap();
        let mut ok = true;
        for_each_permutation(t.n(), |seq| {
            let pi = VertexOrdering::new(seq.to_vec()).unwrap();
            let cuts = t.cut_vector(&pi).unwrap();
            ok &= dominated(&best, &cuts);
            if !is_sorted(&t, &pi) {
                ok &= !dominated(&cuts, &best);
            }
        });
        prop_assert!(ok);
    }

    #[test]
    fn fractional_counting_identity(t in arb_fractional(1, 8), seed in any::<u64>()) {
        let n = t.n();
        let mut seq: Vec<usize> = (0..n).collect();
        seq.rotate_left((seed as usize) % n);
        let pi = VertexOrdering::new(seq.clone()).unwrap();
        let cuts = t.cut_vector(&pi).unwrap();
        for i in 0..=n {
            let inw: Rational = seq[..i].iter().map(|&v| t.in_weight(v)).sum();
            let pairs = Rational::from_integer((i * i.saturating_sub(1) / 2) as i128);
            prop_assert_eq!(cuts[i], inw - pairs);
        }
    }

    #[test]
    fn relaxation_sandwich((d, pi) in with_ordering(arb_semicomplete(1, 12))) {
        let t = relaxation(&d).unwrap();
        let half = t.cut_vector(&pi).unwrap();
        let full = cut_vector(&d, &pi).unwrap();
        for (r, &c) in half.iter().zip(full.entries()) {
            let c = Rational::from_integer(c as i128);
            prop_assert!(*r <= c && c <= *r * Rational::from_integer(2));
        }
    }

    #[test]
    fn tournaments_solved_exactly(d in arb_tournament(1, 11)) {
        let (ctw, ola) = tournament_exact(&d).unwrap();
        prop_assert_eq!(ctw.value, optimum_by_subsets(&d, Objective::Cutwidth));
        prop_assert_eq!(ola.value, optimum_by_subsets(&d, Objective::Ola));
    }

    #[test]
    fn approximation_within_two(d in arb_semicomplete(1, 11)) {
        let a = approximate_semicomplete(&d).unwrap();
        prop_assert!(a.width <= 2 * optimum_by_subsets(&d, Objective::Cutwidth));
        prop_assert!(a.cost <= 2 * optimum_by_subsets(&d, Objective::Ola));
        let cuts = cut_vector(&d, &a.ordering).unwrap();
        prop_assert_eq!((cuts.width(), cuts.cost()), (a.width, a.cost));
    }

    #[test]
    fn weighted_factor_bounds_every_ordering(
        n in 2usize..6,
        raw in vec((1i128..5, 0i128..5), 15),
    ) {
        let w = WeightedSemicomplete::from_fn(n, |u, v| {
            let (a, b) = raw[(u.min(v) * 5 + u.max(v)) % raw.len()];
            if u < v { Rational::from_integer(a) } else { Rational::from_integer(b) }
        })
        .unwrap();
        let approx = weighted_approx(&w);
        let mine = w.cut_vector(&approx.ordering).unwrap();
        let width = |c: &[Rational]| c.iter().copied().max().unwrap();
        let cost = |c: &[Rational]| c.iter().copied().sum::<Rational>();
        let two = Rational::from_integer(2);
        let mut ok = true;
        for_each_permutation(n, |seq| {
            let c = w.cut_vector(&VertexOrdering::new(seq.to_vec()).unwrap()).unwrap();
            ok &= width(&mine) <= two * approx.factor * width(&c);
            ok &= cost(&mine) <= two * approx.factor * cost(&c);
        });
        prop_assert!(ok);
    }
}
