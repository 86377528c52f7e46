//! Browser bindings. Every export takes plain numbers or text and returns a
//! JSON string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use cutwidth_core::exact::{exact_optimum, SolverCaps};
use cutwidth_core::generators::{
    circular_tournament, lambda_profile, nae_brute_check, nae_instance, random_semicomplete, witness_ordering,
};
use cutwidth_core::io;
use cutwidth_core::tournament::{approximate_semicomplete, relaxation, sorted_ordering};
use cutwidth_core::{cut_vector, Digraph, Objective, Result};

/// Largest instance the demo solves exactly.
pub const DEMO_MAX_N: usize = 14;

fn finish(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn arcs(d: &Digraph) -> Vec<[usize; 2]> {
    d.arcs().map(|(u, v)| [u + 1, v + 1]).collect()
}

/// A random semi-complete digraph with the approximation next to the exact
/// cutwidth and OLA cost.
#[wasm_bindgen]
pub fn approx_vs_exact(n: usize, p_sym: f64, seed: u64) -> String {
    finish((|| {
        if n > DEMO_MAX_N {
            return Err(cutwidth_core::Error::CapExceeded {
                what: "demo vertex count",
                size: n,
                cap: DEMO_MAX_N,
            });
        }
        let d = random_semicomplete(n, p_sym, seed)?;
        let approx = approximate_semicomplete(&d)?;
        let caps = SolverCaps::default();
        let ctw = exact_optimum(&d, Objective::Cutwidth, &caps)?;
        let ola = exact_optimum(&d, Objective::Ola, &caps)?;
        Ok(json!({
            "n": n,
            "arcs": arcs(&d),
            "approx": {
                "ordering": io::to_one_based(approx.ordering.sequence()),
                "cut_vector": cut_vector(&d, &approx.ordering)?.0,
                "width": approx.width,
                "cost": approx.cost,
            },
            "exact": {
                "ordering": io::to_one_based(ctw.ordering.sequence()),
                "cut_vector": cut_vector(&d, &ctw.ordering)?.0,
                "cutwidth": ctw.value,
                "ola": ola.value,
            },
        }))
    })())
}

/// Cut vector of the sorted ordering of a circular tournament.
#[wasm_bindgen]
pub fn circular_cut_vector(t: usize, x: usize) -> String {
    finish((|| {
        let d = circular_tournament(t, x)?;
        let ordering = sorted_ordering(&relaxation(&d)?);
        let cuts = cut_vector(&d, &ordering)?;
        Ok(json!({
            "n": d.n(),
            "arcs": arcs(&d),
            "ordering": io::to_one_based(ordering.sequence()),
            "cut_vector": cuts.0,
            "cutwidth": cuts.width(),
            "formula": t * (t + 1) / 2 - x,
        }))
    })())
}

/// The extremal profile for a formula and, when one exists, the cut vector
/// of the ordering built from a not-all-equal satisfying assignment.
#[wasm_bindgen]
pub fn nae_profile(cnf: &str) -> String {
    finish((|| {
        let phi = io::parse_cnf(cnf)?;
        let inst = nae_instance(&phi)?;
        let profile = lambda_profile(inst.m)?;
        let assignment = nae_brute_check(&inst.preprocessed.formula)?;
        let witness = match &assignment {
            Some(a) => Some(cut_vector(&inst.digraph, &witness_ordering(&inst, a)?)?.0),
            None => None,
        };
        Ok(json!({
            "m": inst.m,
            "vertices": inst.digraph.n(),
            "arc_count": inst.digraph.arc_count(),
            "lambda": profile.lambda,
            "lambda_bar": profile.lambda_bar,
            "satisfiable": assignment.is_some(),
            "assignment": assignment,
            "witness_cut_vector": witness,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn approx_within_factor_two() {
        let v = parse(&approx_vs_exact(9, 0.3, 4));
        let (w, c) = (v["approx"]["width"].as_u64().unwrap(), v["approx"]["cost"].as_u64().unwrap());
        assert!(w <= 2 * v["exact"]["cutwidth"].as_u64().unwrap());
        assert!(c <= 2 * v["exact"]["ola"].as_u64().unwrap());
        assert!(parse(&approx_vs_exact(40, 0.3, 4))["error"].is_string());
    }

    #[test]
    fn circular_matches_formula() {
        let v = parse(&circular_cut_vector(3, 1));
        assert_eq!(v["cutwidth"], v["formula"]);
        assert_eq!(v["cutwidth"], 5);
        assert!(parse(&circular_cut_vector(2, 5))["error"].is_string());
    }

    #[test]
    fn profile_and_witness() {
        let v = parse(&nae_profile("p cnf 1 1\n1 1 -1 0\n"));
        assert_eq!(v["satisfiable"], true);
        assert_eq!(v["witness_cut_vector"], v["lambda"]);
        let u = parse(&nae_profile("p cnf 1 1\n1 0\n"));
        assert_eq!(u["satisfiable"], false);
        assert!(u["witness_cut_vector"].is_null());
    }
}
