//! Seeded random instances. The same seed always yields the same digraph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cnf::{CnfFormula, Literal};
use super::families::Graph;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")))
    }
}

/// Every pair becomes a symmetric pair with probability `p_sym`, otherwise a
/// single arc with uniformly random direction.
pub fn random_semicomplete_with<R: Rng>(n: usize, p_sym: f64, rng: &mut R) -> Result<Digraph> {
    check_probability(p_sym)?;
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p_sym) {
                arcs.push((u, v));
                arcs.push((v, u));
            } else if rng.gen_bool(0.5) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}

pub fn random_semicomplete(n: usize, p_sym: f64, seed: u64) -> Result<Digraph> {
    random_semicomplete_with(n, p_sym, &mut rng(seed))
}

pub fn random_tournament_with<R: Rng>(n: usize, rng: &mut R) -> Digraph {
    random_semicomplete_with(n, 0.0, rng).expect("valid probability")
}

pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    random_tournament_with(n, &mut rng(seed))
}

/// Each ordered pair independently carries an arc with probability `p`.
pub fn random_digraph_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Digraph> {
    check_probability(p)?;
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}

pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    random_digraph_with(n, p, &mut rng(seed))
}

/// Each edge present independently with probability `p`.
pub fn random_graph_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    check_probability(p)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// `clauses` clauses of three uniformly random literals over `num_vars`
/// variables.
pub fn random_cnf_with<R: Rng>(num_vars: usize, clauses: usize, rng: &mut R) -> Result<CnfFormula> {
    if num_vars == 0 {
        return Err(Error::InvalidArgument("formula needs at least one variable".into()));
    }
    let cls = (0..clauses)
        .map(|_| {
            (0..3)
                .map(|_| {
                    let v = rng.gen_range(1..=num_vars) as Literal;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, cls)
}
