//! Arc-disjoint path packings, lean orderings, milestones and the Turing
//! kernel for cutwidth of semi-complete digraphs.

use serde::Serialize;

use crate::digraph::{cut_vector, induced_subdigraph, CutVector, Digraph, VertexOrdering};
use crate::error::{Error, Result};
use crate::exact::{decide_cutwidth, CutwidthDecision, SolverCaps};
use crate::tournament::approximate_semicomplete;

/// A maximum packing of arc-disjoint paths with a matching arc cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowResult {
    pub value: u64,
    /// Vertices not reachable from the sources in the residual graph; holds
    /// every sink.
    pub sink_side: Vec<usize>,
    /// Vertices reachable from the sources in the residual graph.
    pub source_side: Vec<usize>,
}

struct UnitFlow<'a> {
    d: &'a Digraph,
    n: usize,
    flow: Vec<bool>,
    is_source: Vec<bool>,
    is_sink: Vec<bool>,
}

impl<'a> UnitFlow<'a> {
    fn new(d: &'a Digraph, sources: &[usize], sinks: &[usize]) -> Result<Self> {
        let n = d.n();
        let mut is_source = vec![false; n];
        let mut is_sink = vec![false; n];
        for &s in sources {
            if s >= n {
                return Err(Error::UnknownVertex { vertex: s, n });
            }
            is_source[s] = true;
        }
        for &t in sinks {
            if t >= n {
                return Err(Error::UnknownVertex { vertex: t, n });
            }
            if is_source[t] {
                return Err(Error::OverlappingTerminals(t));
            }
            is_sink[t] = true;
        }
        Ok(UnitFlow {
            d,
            n,
            flow: vec![false; n * n],
            is_source,
            is_sink,
        })
    }

    /// Breadth-first search in the residual graph from all sources. Returns
    /// the parent array and the first sink reached, if any.
    fn search(&self) -> (Vec<usize>, Option<usize>) {
        let n = self.n;
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for v in 0..n {
            if self.is_source[v] {
                parent[v] = v;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            let forward = self
                .d
                .out_neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !self.flow[u * n + w]);
            let backward = self
                .d
                .in_neighbors(u)
                .iter()
                .copied()
                .filter(|&w| self.flow[w * n + u]);
            for w in forward.chain(backward) {
                if parent[w] != usize::MAX {
                    continue;
                }
                parent[w] = u;
                if self.is_sink[w] {
                    return (parent, Some(w));
                }
                queue.push_back(w);
            }
        }
        (parent, None)
    }

    fn augment(&mut self, parent: &[usize], sink: usize) {
        let n = self.n;
        let mut w = sink;
        while parent[w] != w {
            let u = parent[w];
            if self.d.has_arc(w, u) && self.flow[w * n + u] {
                self.flow[w * n + u] = false;
            } else {
                self.flow[u * n + w] = true;
            }
            w = u;
        }
    }

    /// Augments until no path remains or `limit` paths are found.
    fn run(&mut self, limit: u64) -> (u64, Vec<usize>) {
        let mut value = 0;
        loop {
            let (parent, reached) = self.search();
            match reached {
                Some(t) if value < limit => {
                    self.augment(&parent, t);
                    value += 1;
                    if value == limit {
                        return (value, parent);
                    }
                }
                _ => return (value, parent),
            }
        }
    }
}

/// Maximum number of arc-disjoint paths from `sources` to `sinks`, with the
/// minimum cut read off the final residual graph. An empty terminal set gives
/// value 0.
pub fn max_arc_disjoint_paths(d: &Digraph, sources: &[usize], sinks: &[usize]) -> Result<FlowResult> {
    let mut flow = UnitFlow::new(d, sources, sinks)?;
    let (value, parent) = if sources.is_empty() || sinks.is_empty() {
        (0, vec![usize::MAX; d.n()])
    } else {
        flow.run(u64::MAX)
    };
    let mut source_side = Vec::new();
    let mut sink_side = Vec::new();
    for (v, &p) in parent.iter().enumerate() {
        if p != usize::MAX || flow.is_source[v] {
            source_side.push(v);
        } else {
            sink_side.push(v);
        }
    }
    Ok(FlowResult {
        value,
        sink_side,
        source_side,
    })
}

fn bounded_flow(d: &Digraph, sources: &[usize], sinks: &[usize], limit: u64) -> Result<u64> {
    if sources.is_empty() || sinks.is_empty() {
        return Ok(0);
    }
    Ok(UnitFlow::new(d, sources, sinks)?.run(limit).0)
}

/// A pair `a <= b` where fewer than `min_cut` arc-disjoint paths lead from the
/// last `n-b` vertices to the first `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeanViolation {
    pub a: usize,
    pub b: usize,
    pub min_cut: u64,
    pub flow: u64,
}

/// Checks every pair `a <= b`; returns the first violation in the order of
/// increasing `a`, then `b`.
pub fn is_lean(d: &Digraph, ordering: &VertexOrdering) -> Result<Option<LeanViolation>> {
    let cuts = cut_vector(d, ordering)?;
    first_violation(d, ordering, &cuts)
}

fn first_violation(d: &Digraph, ordering: &VertexOrdering, cuts: &CutVector) -> Result<Option<LeanViolation>> {
    let n = ordering.len();
    let seq = ordering.sequence();
    let e = cuts.entries();
    for a in 1..n {
        let mut lowest = e[a];
        for b in a + 1..n {
            lowest = lowest.min(e[b]);
            if lowest == 0 {
                break;
            }
            let flow = bounded_flow(d, &seq[b..], &seq[..a], lowest)?;
            if flow < lowest {
                return Ok(Some(LeanViolation {
                    a,
                    b,
                    min_cut: lowest,
                    flow,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefineStep {
    pub violation: LeanViolation,
    pub width: u64,
    pub cost: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeanRefinement {
    pub ordering: VertexOrdering,
    pub cuts: CutVector,
    /// Width and cost after each refinement step.
    pub steps: Vec<RefineStep>,
}

/// Repeatedly repairs the first violation: the minimum cut `(A, B)` between
/// the violating suffix and prefix replaces the ordering by its restriction
/// to `A` followed by its restriction to `B`.
pub fn lean_refine(d: &Digraph, ordering: &VertexOrdering) -> Result<LeanRefinement> {
    let mut ordering = ordering.clone();
    let mut cuts = cut_vector(d, &ordering)?;
    let mut steps = Vec::new();
    while let Some(violation) = first_violation(d, &ordering, &cuts)? {
        let seq = ordering.sequence();
        let flow = max_arc_disjoint_paths(d, &seq[violation.b..], &seq[..violation.a])?;
        let mut on_sink_side = vec![false; d.n()];
        for &v in &flow.sink_side {
            on_sink_side[v] = true;
        }
        let next: Vec<usize> = seq
            .iter()
            .copied()
            .filter(|&v| on_sink_side[v])
            .chain(seq.iter().copied().filter(|&v| !on_sink_side[v]))
            .collect();
        let next = VertexOrdering::new(next)?;
        let next_cuts = cut_vector(d, &next)?;
        assert!(
            next_cuts.cost() < cuts.cost(),
            "refinement step must decrease the arrangement cost"
        );
        steps.push(RefineStep {
            violation,
            width: next_cuts.width(),
            cost: next_cuts.cost(),
        });
        ordering = next;
        cuts = next_cuts;
    }
    Ok(LeanRefinement {
        ordering,
        cuts,
        steps,
    })
}

/// Whether `m` has the least cut entry among positions within distance `span`.
pub fn is_milestone(cuts: &CutVector, m: usize, span: usize) -> bool {
    let e = cuts.entries();
    let hi = (m + span).min(e.len() - 1);
    e[m.saturating_sub(span)..=hi].iter().all(|&x| x >= e[m])
}

/// Starting at `p`, jumps to the smallest position of the window with a
/// strictly smaller cut entry until the current position is a milestone.
pub fn find_milestone(cuts: &CutVector, p: usize, span: usize) -> usize {
    let e = cuts.entries();
    let n = e.len() - 1;
    let mut m = p.min(n);
    loop {
        let lo = m.saturating_sub(span);
        let hi = (m + span).min(n);
        match (lo..=hi).find(|&j| e[j] < e[m]) {
            Some(j) => m = j,
            None => return m,
        }
    }
}

/// Greedy ascending scan for span-`6c` milestones pairwise more than `12c`
/// apart, always containing `0` and `n`.
pub fn dispersed_milestones(cuts: &CutVector, c: usize) -> Result<Vec<usize>> {
    let n = cuts.entries().len() - 1;
    if n <= 12 * c {
        return Err(Error::InvalidArgument(format!(
            "dispersed milestones need more than {} positions, got {n}",
            12 * c
        )));
    }
    let mut chosen = vec![0, n];
    for p in 1..n {
        if is_milestone(cuts, p, 6 * c) && chosen.iter().all(|&q| p.abs_diff(q) > 12 * c) {
            chosen.push(p);
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Largest number of vertices in a Turing-kernel piece.
pub fn piece_size_bound(c: usize) -> usize {
    24 * c * c + 40 * c + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    /// Vertices of the host digraph, listed in the order of the lean ordering.
    pub vertices: Vec<usize>,
    #[serde(skip)]
    pub digraph: Digraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum KernelOutput {
    /// The approximation already has width above `2c`, so `ctw > c`.
    Reject { approximation_width: u64 },
    /// `ctw <= c` holds iff it holds for every piece.
    Pieces {
        ordering: Option<VertexOrdering>,
        milestones: Vec<usize>,
        pieces: Vec<Piece>,
    },
}

/// Reduces `ctw(d) <= c` to at most `n` instances on at most
/// `24c^2 + 40c + 1` vertices each.
pub fn turing_kernel(d: &Digraph, c: usize) -> Result<KernelOutput> {
    let approx = approximate_semicomplete(d)?;
    if approx.width > 2 * c as u64 {
        return Ok(KernelOutput::Reject {
            approximation_width: approx.width,
        });
    }
    let n = d.n();
    if n <= 12 * c {
        return Ok(KernelOutput::Pieces {
            ordering: None,
            milestones: vec![0, n],
            pieces: vec![Piece {
                vertices: (0..n).collect(),
                digraph: d.clone(),
            }],
        });
    }
    let lean = lean_refine(d, &approx.ordering)?;
    let milestones = dispersed_milestones(&lean.cuts, c)?;
    let seq = lean.ordering.sequence();
    let positions = lean.ordering.positions();
    let pad = 6 * c;

    let mut pieces = Vec::with_capacity(milestones.len() - 1);
    for pair in milestones.windows(2) {
        let (left, right) = (pair[0], pair[1]);
        let mut take = vec![false; n];
        // Positions are 1-based here: position q holds seq[q - 1].
        let lo = left.saturating_sub(pad).max(1);
        let hi = (right + pad).min(n);
        for q in lo..=hi {
            take[seq[q - 1]] = true;
        }
        if left > pad {
            let i = left - pad;
            for &v in &seq[..i] {
                if d.in_neighbors(v).iter().any(|&u| positions[u] >= i) {
                    take[v] = true;
                }
            }
        }
        if right + pad < n {
            let i = right + pad;
            for &u in &seq[i..] {
                if d.out_neighbors(u).iter().any(|&v| positions[v] < i) {
                    take[u] = true;
                }
            }
        }
        let vertices: Vec<usize> = seq.iter().copied().filter(|&v| take[v]).collect();
        let (digraph, _) = induced_subdigraph(d, &vertices)?;
        pieces.push(Piece { vertices, digraph });
    }
    Ok(KernelOutput::Pieces {
        ordering: Some(lean.ordering),
        milestones,
        pieces,
    })
}

/// Decides `ctw <= c` for every piece with the exact solvers, in piece
/// order. Pieces are independent and may be decided on separate threads.
pub fn solve_pieces(pieces: &[Piece], c: usize, caps: &SolverCaps, parallel: bool) -> Result<Vec<CutwidthDecision>> {
    let decide = |p: &Piece| decide_cutwidth(&p.digraph, c as u64, caps);
    if parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = pieces.iter().map(|p| s.spawn(move || decide(p))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("piece solver panicked"))
                .collect()
        })
    } else {
        pieces.iter().map(decide).collect()
    }
}

/// Answers `ctw(d) <= c` through the kernel: the conjunction of the piece
/// answers.
pub fn decide_via_kernel(d: &Digraph, c: usize, caps: &SolverCaps, parallel: bool) -> Result<bool> {
    match turing_kernel(d, c)? {
        KernelOutput::Reject { .. } => Ok(false),
        KernelOutput::Pieces { pieces, .. } => {
            Ok(solve_pieces(&pieces, c, caps, parallel)?.iter().all(|r| r.holds))
        }
    }
}
