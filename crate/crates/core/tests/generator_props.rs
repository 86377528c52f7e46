mod common;

use cutwidth_core::exact::{prefix_cut_profile, SolverCaps};
use cutwidth_core::generators::random::{random_cnf_with, rng};
use cutwidth_core::generators::{
    circular_tournament, lambda_profile, nae_brute_check, nae_instance, random_semicomplete, random_tournament,
    witness_ordering,
};
use cutwidth_core::tournament::{is_sorted, relaxation};
use cutwidth_core::{classify, cut_vector, io, Error, VertexOrdering};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn formula_digraph_shape(seed in any::<u64>(), vars in 1usize..5, clauses in 1usize..7) {
        let phi = random_cnf_with(vars, clauses, &mut rng(seed)).unwrap();
        prop_assert_eq!(io::parse_cnf(&io::write_cnf(&phi)).unwrap(), phi.clone());
        let inst = match nae_instance(&phi) {
            Err(Error::EmptyFormula) => return Ok(()),
            other => other.unwrap(),
        };
        let m = inst.m;
        let d = &inst.digraph;
        prop_assert_eq!((d.n(), d.arc_count()), (14 * m, 24 * m));
        let cls = classify(d);
        prop_assert!(cls.is_basic);
        prop_assert!(cls.in_degrees.iter().all(|&x| x <= 2));
        prop_assert!(cls.out_degrees.iter().all(|&x| x <= 3));
        let lambda = lambda_profile(m).unwrap();
        if m == 1 {
            let p = prefix_cut_profile(d, &SolverCaps::default()).unwrap();
            prop_assert!(p.max_at_size.iter().zip(&lambda.lambda).all(|(a, b)| a <= b));
            prop_assert!(p.max_at_size.iter().all(|&x| x <= 11));
        }
        match nae_brute_check(&inst.preprocessed.formula).unwrap() {
            Some(a) => {
                let cuts = cut_vector(d, &witness_ordering(&inst, &a).unwrap()).unwrap();
                prop_assert_eq!(cuts.0, lambda.lambda);
            }
            None => prop_assert!(witness_ordering(&inst, &vec![true; phi.num_vars()]).is_err()),
        }
    }

    #[test]
    fn random_generators_are_deterministic(n in 0usize..20, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = random_semicomplete(n, p, seed).unwrap();
        prop_assert!(a.is_semicomplete());
        prop_assert_eq!(&a, &random_semicomplete(n, p, seed).unwrap());
        let t = random_tournament(n, seed);
        prop_assert!(t.is_tournament());
        prop_assert_eq!(t, random_tournament(n, seed));
    }
}

#[test]
fn circular_identity_is_sorted() {
    for t in 1..=8 {
        for x in 0..=t {
            let d = circular_tournament(t, x).unwrap();
            assert!(is_sorted(&relaxation(&d).unwrap(), &VertexOrdering::identity(d.n())));
            let cuts = cut_vector(&d, &VertexOrdering::identity(d.n())).unwrap();
            assert_eq!(cuts.width() as usize, t * (t + 1) / 2 - x);
        }
    }
}
