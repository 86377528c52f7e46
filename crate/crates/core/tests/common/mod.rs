//! Independent oracles and instance strategies shared by the integration
//! tests. Nothing here calls into the solvers under test.

#![allow(dead_code)]

use cutwidth_core::{Digraph, Objective, VertexOrdering};
use proptest::collection::vec;
use proptest::prelude::*;

/// Builds a digraph from one code per unordered pair `u < v`:
/// 0 none, 1 `u -> v`, 2 `v -> u`, 3 both.
pub fn from_pair_codes(n: usize, codes: &[u8]) -> Digraph {
    let mut arcs = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            match codes[k] {
                1 => arcs.push((u, v)),
                2 => arcs.push((v, u)),
                3 => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
                _ => {}
            }
            k += 1;
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

fn with_codes(lo: usize, hi: usize, codes: std::ops::Range<u8>) -> impl Strategy<Value = Digraph> {
    (lo..=hi).prop_flat_map(move |n| vec(codes.clone(), n * n.saturating_sub(1) / 2).prop_map(move |c| from_pair_codes(n, &c)))
}

pub fn arb_digraph(lo: usize, hi: usize) -> impl Strategy<Value = Digraph> {
    with_codes(lo, hi, 0..4)
}

pub fn arb_semicomplete(lo: usize, hi: usize) -> impl Strategy<Value = Digraph> {
    with_codes(lo, hi, 1..4)
}

pub fn arb_tournament(lo: usize, hi: usize) -> impl Strategy<Value = Digraph> {
    with_codes(lo, hi, 1..3)
}

/// A digraph together with an ordering of its vertices.
pub fn with_ordering(d: impl Strategy<Value = Digraph>) -> impl Strategy<Value = (Digraph, VertexOrdering)> {
    d.prop_flat_map(|d| {
        let n = d.n();
        (Just(d), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
    .prop_map(|(d, seq)| (d, VertexOrdering::new(seq).unwrap()))
}

/// Cut vector straight from the definition: entry `i` counts arcs from the
/// last `n - i` vertices into the first `i`.
pub fn cuts_by_definition(d: &Digraph, seq: &[usize]) -> Vec<u64> {
    let n = seq.len();
    (0..=n)
        .map(|i| {
            let mut c = 0;
            for &u in &seq[i..] {
                for &v in &seq[..i] {
                    if d.has_arc(u, v) {
                        c += 1;
                    }
                }
            }
            c
        })
        .collect()
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Optimum over all `n!` orderings, evaluated by definition.
pub fn optimum_by_enumeration(d: &Digraph, objective: Objective) -> u64 {
    let mut best = u64::MAX;
    for_each_permutation(d.n(), |seq| {
        let cuts = cuts_by_definition(d, seq);
        let v = match objective {
            Objective::Cutwidth => cuts.iter().copied().max().unwrap_or(0),
            Objective::Ola => cuts.iter().sum(),
        };
        best = best.min(v);
    });
    best
}

/// Minimum number of arcs from a set containing `sources` into a disjoint
/// set containing `sinks`, over all bipartitions. Equals the maximum number
/// of arc-disjoint source-to-sink paths.
pub fn min_cut_by_enumeration(d: &Digraph, sources: &[usize], sinks: &[usize]) -> u64 {
    let n = d.n();
    let free: Vec<usize> = (0..n).filter(|v| !sources.contains(v) && !sinks.contains(v)).collect();
    let mut best = u64::MAX;
    for mask in 0u32..(1 << free.len()) {
        let mut source_side = vec![false; n];
        for &s in sources {
            source_side[s] = true;
        }
        for (i, &v) in free.iter().enumerate() {
            if mask & (1 << i) != 0 {
                source_side[v] = true;
            }
        }
        let c = d.arcs().filter(|&(u, v)| source_side[u] && !source_side[v]).count() as u64;
        best = best.min(c);
    }
    best
}

/// Optimum by a plain dynamic program over prefix sets, with every cut
/// counted from scratch.
pub fn optimum_by_subsets(d: &Digraph, objective: Objective) -> u64 {
    let n = d.n();
    let full = (1usize << n) - 1;
    let cut = |mask: usize| -> u64 {
        d.arcs()
            .filter(|&(u, v)| mask & (1 << u) == 0 && mask & (1 << v) != 0)
            .count() as u64
    };
    let mut best = vec![u64::MAX; 1 << n];
    best[0] = 0;
    for mask in 0..=full {
        if best[mask] == u64::MAX {
            continue;
        }
        for v in 0..n {
            if mask & (1 << v) == 0 {
                let next = mask | (1 << v);
                let c = cut(next);
                let val = match objective {
                    Objective::Cutwidth => best[mask].max(c),
                    Objective::Ola => best[mask] + c,
                };
                best[next] = best[next].min(val);
            }
        }
    }
    best[full]
}

/// Smallest `k` such that deleting some `k` vertices leaves cutwidth at most
/// `c`, by enumeration over vertex subsets.
pub fn cvd_by_enumeration(d: &Digraph, c: u64) -> usize {
    let n = d.n();
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k >= best {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) == 0).collect();
        let (sub, _) = cutwidth_core::induced_subdigraph(d, &keep).unwrap();
        if optimum_by_subsets(&sub, Objective::Cutwidth) <= c {
            best = k;
        }
    }
    best
}
