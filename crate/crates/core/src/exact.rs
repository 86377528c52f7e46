//! Exact solvers used as ground truth: permutation brute force, dynamic
//! programming over vertex subsets, and the dynamic program parameterized by
//! the number of non-pure vertices.

use serde::{Deserialize, Serialize};

use crate::digraph::{classify, cut_vector, CutVector, Digraph, VertexOrdering};
use crate::error::{Error, Result};
use crate::tournament::tournament_exact;

/// Which aggregate of the cut vector is minimised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Cutwidth,
    Ola,
}

impl Objective {
    /// Value of a cut vector under this objective.
    pub fn evaluate(self, cuts: &CutVector) -> u64 {
        match self {
            Objective::Cutwidth => cuts.width(),
            Objective::Ola => cuts.cost(),
        }
    }

    #[inline]
    fn extend(self, acc: u64, cut: u64) -> u64 {
        match self {
            Objective::Cutwidth => acc.max(cut),
            Objective::Ola => acc + cut,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Brute,
    SubsetDp,
    PureVertexDp,
    Tournament,
}

/// An optimum together with an ordering attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub objective: Objective,
    pub value: u64,
    pub ordering: VertexOrdering,
    pub solver: SolverKind,
}

/// Size limits for the exponential solvers. Exceeding a limit is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverCaps {
    pub brute_force_n: usize,
    pub subset_n: usize,
    pub non_pure_k: usize,
}

impl Default for SolverCaps {
    fn default() -> Self {
        SolverCaps {
            brute_force_n: 10,
            subset_n: 24,
            non_pure_k: 24,
        }
    }
}

// Table-based solvers index by machine-word bitmasks.
const HARD_BRUTE_LIMIT: usize = 16;
const HARD_TABLE_LIMIT: usize = 32;

fn check_cap(what: &'static str, size: usize, cap: usize, hard: usize) -> Result<()> {
    let cap = cap.min(hard);
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// Minimises over all `n!` orderings. Among optimal orderings the
/// lexicographically least one is returned.
pub fn brute_force_optimum(d: &Digraph, objective: Objective, caps: &SolverCaps) -> Result<ExactResult> {
    let n = d.n();
    check_cap("brute force vertex count", n, caps.brute_force_n, HARD_BRUTE_LIMIT)?;
    let (inm, outm) = d.neighbor_masks().expect("n <= 16");

    struct Search<'a> {
        n: usize,
        inm: &'a [u64],
        outm: &'a [u64],
        objective: Objective,
        current: Vec<usize>,
        best_value: u64,
        best: Vec<usize>,
    }

    impl Search<'_> {
        fn descend(&mut self, used: u64, cut: u64, acc: u64) {
            if self.current.len() == self.n {
                if acc < self.best_value {
                    self.best_value = acc;
                    self.best.clone_from(&self.current);
                }
                return;
            }
            for v in 0..self.n {
                if used & (1 << v) != 0 {
                    continue;
                }
                let next = used | (1 << v);
                let cut = cut + (self.inm[v] & !next).count_ones() as u64
                    - (self.outm[v] & used).count_ones() as u64;
                self.current.push(v);
                self.descend(next, cut, self.objective.extend(acc, cut));
                self.current.pop();
            }
        }
    }

    let mut search = Search {
        n,
        inm: &inm,
        outm: &outm,
        objective,
        current: Vec::with_capacity(n),
        best_value: u64::MAX,
        best: Vec::new(),
    };
    search.descend(0, 0, 0);
    Ok(ExactResult {
        objective,
        value: search.best_value,
        ordering: VertexOrdering::new(search.best)?,
        solver: SolverKind::Brute,
    })
}

/// `cut[S] = |E(V \ S, S)|` for every subset `S`, built one vertex at a time.
fn subset_cut_table(n: usize, inm: &[u64], outm: &[u64]) -> Vec<u32> {
    let size = 1usize << n;
    let mut cut = vec![0u32; size];
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let opened = (inm[v] & !(mask as u64)).count_ones();
        let closed = (outm[v] & rest as u64).count_ones();
        cut[mask] = cut[rest] + opened - closed;
    }
    cut
}

/// Dynamic programming over vertex subsets in `O(2^n n)` time.
///
/// `best(S)` is the optimum over orderings of `S` placed as a prefix; the
/// witness is recovered backwards, taking the smallest admissible vertex as
/// the last one at every step.
pub fn subset_dp(d: &Digraph, objective: Objective, caps: &SolverCaps) -> Result<ExactResult> {
    let n = d.n();
    check_cap("subset DP vertex count", n, caps.subset_n, HARD_TABLE_LIMIT)?;
    let (inm, outm) = d.neighbor_masks().expect("n <= 32");
    let size = 1usize << n;
    let cut = subset_cut_table(n, &inm, &outm);

    let mut best = vec![0u32; size];
    for mask in 1..size {
        let mut m = mask;
        let mut lowest = u32::MAX;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            lowest = lowest.min(best[mask ^ bit]);
            m ^= bit;
        }
        best[mask] = objective.extend(lowest as u64, cut[mask] as u64) as u32;
    }

    let full = size - 1;
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    while mask != 0 {
        let target = best[mask] as u64;
        let v = (0..n)
            .find(|&v| {
                mask & (1 << v) != 0
                    && objective.extend(best[mask ^ (1 << v)] as u64, cut[mask] as u64) == target
            })
            .expect("back-link exists");
        order.push(v);
        mask ^= 1 << v;
    }
    order.reverse();
    Ok(ExactResult {
        objective,
        value: best[full] as u64,
        ordering: VertexOrdering::new(order)?,
        solver: SolverKind::SubsetDp,
    })
}

/// Dynamic program over pairs `(X, i)`: `X` a subset of the non-pure vertices
/// and `i` a length of the sorted sequence of pure vertices. Runs in
/// `O(2^k n^2)` for `k` non-pure vertices.
///
/// Pure vertices are sorted by in-degree with ties broken by vertex id; some
/// optimal ordering restricts to exactly this sequence on them.
pub fn pure_vertex_dp(d: &Digraph, objective: Objective, caps: &SolverCaps) -> Result<ExactResult> {
    let class = classify(d);
    let is_pure = {
        let mut f = vec![false; d.n()];
        for &v in &class.pure_vertices {
            f[v] = true;
        }
        f
    };
    let mut pure = class.pure_vertices.clone();
    pure.sort_by_key(|&v| (d.in_degree(v), v));
    let non_pure: Vec<usize> = (0..d.n()).filter(|&v| !is_pure[v]).collect();
    let k = non_pure.len();
    check_cap("non-pure vertex count", k, caps.non_pure_k, HARD_TABLE_LIMIT)?;

    let p = pure.len();
    let mut q_index = vec![usize::MAX; d.n()];
    for (j, &v) in non_pure.iter().enumerate() {
        q_index[v] = j;
    }
    let mut in_q = vec![0u64; k];
    let mut out_q = vec![0u64; k];
    for (j, &x) in non_pure.iter().enumerate() {
        for &u in d.in_neighbors(x) {
            if q_index[u] != usize::MAX {
                in_q[j] |= 1 << q_index[u];
            }
        }
        for &w in d.out_neighbors(x) {
            if q_index[w] != usize::MAX {
                out_q[j] |= 1 << q_index[w];
            }
        }
    }

    let subsets = 1usize << k;
    // Sum of in-degrees over X and the number of arcs inside X.
    let mut indeg_x = vec![0u64; subsets];
    let mut inside_x = vec![0u64; subsets];
    for mask in 1..subsets {
        let j = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        indeg_x[mask] = indeg_x[rest] + d.in_degree(non_pure[j]) as u64;
        inside_x[mask] = inside_x[rest]
            + (in_q[j] & rest as u64).count_ones() as u64
            + (out_q[j] & rest as u64).count_ones() as u64;
    }
    let mut indeg_prefix = vec![0u64; p + 1];
    for (i, &v) in pure.iter().enumerate() {
        indeg_prefix[i + 1] = indeg_prefix[i] + d.in_degree(v) as u64;
    }

    // |E(V \ S, S)| = sum of in-degrees over S - |E(S, S)|, where every pure
    // vertex contributes exactly one arc towards each other vertex of S.
    let cut = |mask: usize, i: usize| -> u64 {
        let x = mask.count_ones() as u64;
        let i64_ = i as u64;
        indeg_x[mask] + indeg_prefix[i]
            - inside_x[mask]
            - i64_ * x
            - i64_ * i64_.saturating_sub(1) / 2
    };

    let width = p + 1;
    let mut table = vec![u64::MAX; subsets * width];
    table[0] = 0;
    for mask in 0..subsets {
        for i in 0..=p {
            if mask == 0 && i == 0 {
                continue;
            }
            let mut lowest = u64::MAX;
            if i > 0 {
                lowest = lowest.min(table[mask * width + i - 1]);
            }
            let mut m = mask;
            while m != 0 {
                let bit = m & m.wrapping_neg();
                lowest = lowest.min(table[(mask ^ bit) * width + i]);
                m ^= bit;
            }
            table[mask * width + i] = objective.extend(lowest, cut(mask, i));
        }
    }

    let full = subsets - 1;
    let value = table[full * width + p];
    let mut order = Vec::with_capacity(d.n());
    let (mut mask, mut i) = (full, p);
    while mask != 0 || i != 0 {
        let target = table[mask * width + i];
        let here = cut(mask, i);
        let mut pick: Option<(usize, usize, usize)> = None;
        let consider = |vertex: usize, m: usize, ii: usize, pick: &mut Option<(usize, usize, usize)>| {
            if objective.extend(table[m * width + ii], here) == target
                && pick.map_or(true, |(best_v, _, _)| vertex < best_v)
            {
                *pick = Some((vertex, m, ii));
            }
        };
        if i > 0 {
            consider(pure[i - 1], mask, i - 1, &mut pick);
        }
        let mut m = mask;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            let j = bit.trailing_zeros() as usize;
            consider(non_pure[j], mask ^ bit, i, &mut pick);
            m ^= bit;
        }
        let (vertex, m, ii) = pick.expect("back-link exists");
        order.push(vertex);
        mask = m;
        i = ii;
    }
    order.reverse();
    Ok(ExactResult {
        objective,
        value,
        ordering: VertexOrdering::new(order)?,
        solver: SolverKind::PureVertexDp,
    })
}

/// Per-size extremes of the cut function over all vertex subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixCutProfile {
    pub max_at_size: Vec<u64>,
    pub min_at_size: Vec<u64>,
}

/// For every `i`, the maximum and minimum of `|E(V \ A, A)|` over `|A| = i`.
pub fn prefix_cut_profile(d: &Digraph, caps: &SolverCaps) -> Result<PrefixCutProfile> {
    let n = d.n();
    check_cap("profile vertex count", n, caps.subset_n, HARD_TABLE_LIMIT)?;
    let (inm, outm) = d.neighbor_masks().expect("n <= 32");
    let cut = subset_cut_table(n, &inm, &outm);
    let mut max_at_size = vec![0u64; n + 1];
    let mut min_at_size = vec![u64::MAX; n + 1];
    for (mask, &c) in cut.iter().enumerate() {
        let s = mask.count_ones() as usize;
        max_at_size[s] = max_at_size[s].max(c as u64);
        min_at_size[s] = min_at_size[s].min(c as u64);
    }
    Ok(PrefixCutProfile {
        max_at_size,
        min_at_size,
    })
}

/// An ordering whose cut vector is entrywise minimal among all orderings, if
/// one exists. Every subset is the prefix of some ordering, so such an
/// ordering must meet the per-size minimum of the cut function at each step.
pub fn minimum_ordering(d: &Digraph, caps: &SolverCaps) -> Result<Option<VertexOrdering>> {
    let n = d.n();
    check_cap("minimum ordering vertex count", n, caps.subset_n, HARD_TABLE_LIMIT)?;
    let (inm, outm) = d.neighbor_masks().expect("n <= 32");
    let cut = subset_cut_table(n, &inm, &outm);
    let mut min_at = vec![u32::MAX; n + 1];
    for (mask, &c) in cut.iter().enumerate() {
        let s = mask.count_ones() as usize;
        min_at[s] = min_at[s].min(c);
    }
    let size = 1usize << n;
    let mut good = vec![false; size];
    good[0] = true;
    for mask in 1..size {
        if cut[mask] != min_at[mask.count_ones() as usize] {
            continue;
        }
        let mut m = mask;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            if good[mask ^ bit] {
                good[mask] = true;
                break;
            }
            m ^= bit;
        }
    }
    if !good[size - 1] {
        return Ok(None);
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = size - 1;
    while mask != 0 {
        let v = (0..n)
            .find(|&v| mask & (1 << v) != 0 && good[mask ^ (1 << v)])
            .expect("back-link exists");
        order.push(v);
        mask ^= 1 << v;
    }
    order.reverse();
    Ok(Some(VertexOrdering::new(order)?))
}

/// Exact optimum through the cheapest applicable solver: the sorted ordering
/// for tournaments, the pure-vertex DP when few vertices are non-pure, the
/// subset DP otherwise.
pub fn exact_optimum(d: &Digraph, objective: Objective, caps: &SolverCaps) -> Result<ExactResult> {
    let class = classify(d);
    if class.is_tournament {
        let (ctw, ola) = tournament_exact(d)?;
        return Ok(match objective {
            Objective::Cutwidth => ctw,
            Objective::Ola => ola,
        });
    }
    if class.non_pure_count() <= caps.non_pure_k.min(HARD_TABLE_LIMIT) {
        return pure_vertex_dp(d, objective, caps);
    }
    if d.n() <= caps.subset_n.min(HARD_TABLE_LIMIT) {
        return subset_dp(d, objective, caps);
    }
    Err(Error::CapExceeded {
        what: "exact solver (non-pure vertex count)",
        size: class.non_pure_count(),
        cap: caps.non_pure_k.min(HARD_TABLE_LIMIT),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutwidthDecision {
    pub holds: bool,
    pub cutwidth: u64,
    /// Present when `holds`; an ordering of width at most the threshold.
    pub witness: Option<VertexOrdering>,
    pub solver: SolverKind,
}

/// Decides `ctw(d) <= c` with an exact solver.
pub fn decide_cutwidth(d: &Digraph, c: u64, caps: &SolverCaps) -> Result<CutwidthDecision> {
    let res = exact_optimum(d, Objective::Cutwidth, caps)?;
    let holds = res.value <= c;
    Ok(CutwidthDecision {
        holds,
        cutwidth: res.value,
        witness: holds.then_some(res.ordering),
        solver: res.solver,
    })
}

/// Re-evaluates `result.ordering` on `d` and checks it attains `result.value`.
pub fn witness_attains(d: &Digraph, result: &ExactResult) -> Result<bool> {
    let cuts = cut_vector(d, &result.ordering)?;
    Ok(result.objective.evaluate(&cuts) == result.value)
}
