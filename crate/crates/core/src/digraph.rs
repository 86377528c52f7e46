//! Simple digraphs, vertex orderings and cut vectors.
//!
//! Vertices are dense indices `0..n`. Text formats and reports shift them to
//! `1..=n`; everything inside the library is zero-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple digraph: no self-loops, no parallel arcs.
///
/// Arcs are kept both as an `n x n` membership matrix and as sorted in/out
/// adjacency lists. The struct is immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    matrix: Vec<bool>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    /// Edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            matrix: vec![false; n * n],
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    /// Builds a digraph from zero-based arcs, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            d.try_add_arc(u, v)?;
        }
        d.finish();
        Ok(d)
    }

    /// Builds a digraph from a membership predicate evaluated on every
    /// ordered pair `u != v`.
    pub fn from_fn(n: usize, mut has_arc: impl FnMut(usize, usize) -> bool) -> Self {
        let mut d = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && has_arc(u, v) {
                    d.matrix[u * n + v] = true;
                    d.out[u].push(v);
                    d.inn[v].push(u);
                    d.arc_count += 1;
                }
            }
        }
        d
    }

    fn try_add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n;
        for w in [u, v] {
            if w >= n {
                return Err(Error::UnknownVertex { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.matrix[u * n + v] {
            return Err(Error::DuplicateArc(u, v));
        }
        self.matrix[u * n + v] = true;
        self.out[u].push(v);
        self.inn[v].push(u);
        self.arc_count += 1;
        Ok(())
    }

    fn finish(&mut self) {
        for list in self.out.iter_mut().chain(self.inn.iter_mut()) {
            list.sort_unstable();
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.inn[u]
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.inn[u].len()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// In- and out-neighbourhood bitmasks, available when `n <= 64`.
    pub fn neighbor_masks(&self) -> Option<(Vec<u64>, Vec<u64>)> {
        if self.n > 64 {
            return None;
        }
        let mut inm = vec![0u64; self.n];
        let mut outm = vec![0u64; self.n];
        for (u, v) in self.arcs() {
            outm[u] |= 1 << v;
            inm[v] |= 1 << u;
        }
        Some((inm, outm))
    }

    /// `|E(V \ S, S)|`: arcs entering the vertex set `S` from outside.
    pub fn cut_into(&self, in_set: &[bool]) -> u64 {
        let mut cut = 0u64;
        for (v, &inside) in in_set.iter().enumerate() {
            if inside {
                cut += self.inn[v].iter().filter(|&&u| !in_set[u]).count() as u64;
            }
        }
        cut
    }

    pub fn is_semicomplete(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.has_arc(u, v) || self.has_arc(v, u)))
    }

    pub fn is_tournament(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.has_arc(u, v) != self.has_arc(v, u)))
    }

    /// Same vertex set, every arc reversed.
    pub fn reverse(&self) -> Digraph {
        Digraph::from_fn(self.n, |u, v| self.has_arc(v, u))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

/// A vertex ordering: `sequence()[i]` is the vertex at (zero-based) position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexOrdering {
    seq: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; seq.len()];
        for &v in &seq {
            if v >= seq.len() {
                return Err(Error::InvalidOrdering(format!(
                    "vertex {v} out of range for length {}",
                    seq.len()
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidOrdering(format!("vertex {v} repeated")));
            }
        }
        Ok(VertexOrdering { seq })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            seq: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn into_sequence(self) -> Vec<usize> {
        self.seq
    }

    /// `positions()[v]` is the zero-based position of `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.seq.len()];
        for (i, &v) in self.seq.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Indicator of the first `i` vertices.
    pub fn prefix_mask(&self, i: usize) -> Vec<bool> {
        let mut mask = vec![false; self.seq.len()];
        for &v in &self.seq[..i] {
            mask[v] = true;
        }
        mask
    }
}

impl TryFrom<Vec<usize>> for VertexOrdering {
    type Error = Error;
    fn try_from(seq: Vec<usize>) -> Result<Self> {
        VertexOrdering::new(seq)
    }
}

impl From<VertexOrdering> for Vec<usize> {
    fn from(o: VertexOrdering) -> Self {
        o.seq
    }
}

/// Sizes of the feedback cuts along an ordering: entry `i` counts arcs from
/// the last `n - i` vertices into the first `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CutVector(pub Vec<u64>);

impl CutVector {
    pub fn width(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn cost(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// Product order: every entry of `self` is at most the matching entry of `other`.
    pub fn dominated_by(&self, other: &CutVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// Cut vector of `ordering` on `d`, computed in `O(n + m)`.
pub fn cut_vector(d: &Digraph, ordering: &VertexOrdering) -> Result<CutVector> {
    if ordering.len() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: d.n(),
            got: ordering.len(),
        });
    }
    let pos = ordering.positions();
    let mut cuts = Vec::with_capacity(d.n() + 1);
    cuts.push(0u64);
    let mut cur: i64 = 0;
    for (i, &v) in ordering.sequence().iter().enumerate() {
        // v joins the prefix: in-arcs from later vertices open, out-arcs to
        // earlier vertices close.
        let opened = d.in_neighbors(v).iter().filter(|&&u| pos[u] > i).count() as i64;
        let closed = d.out_neighbors(v).iter().filter(|&&w| pos[w] < i).count() as i64;
        cur += opened - closed;
        debug_assert!(cur >= 0);
        cuts.push(cur as u64);
    }
    Ok(CutVector(cuts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_basic: bool,
    pub is_tournament: bool,
    pub is_semicomplete: bool,
    pub pure_vertices: Vec<usize>,
    pub in_degrees: Vec<usize>,
    pub out_degrees: Vec<usize>,
}

impl Classification {
    /// Number of vertices that are not pure.
    pub fn non_pure_count(&self) -> usize {
        self.in_degrees.len() - self.pure_vertices.len()
    }
}

pub fn classify(d: &Digraph) -> Classification {
    let n = d.n();
    let mut is_basic = true;
    let mut is_semicomplete = true;
    let mut pure = vec![true; n];
    for u in 0..n {
        for v in u + 1..n {
            match (d.has_arc(u, v), d.has_arc(v, u)) {
                (true, true) => {
                    is_basic = false;
                    pure[u] = false;
                    pure[v] = false;
                }
                (false, false) => {
                    is_semicomplete = false;
                    pure[u] = false;
                    pure[v] = false;
                }
                _ => {}
            }
        }
    }
    Classification {
        is_basic,
        is_tournament: is_basic && is_semicomplete,
        is_semicomplete,
        pure_vertices: (0..n).filter(|&v| pure[v]).collect(),
        in_degrees: (0..n).map(|v| d.in_degree(v)).collect(),
        out_degrees: (0..n).map(|v| d.out_degree(v)).collect(),
    }
}

/// Arc `(u, v)` is present iff `u != v` and `(u, v)` is absent from `d`.
pub fn complement(d: &Digraph) -> Digraph {
    Digraph::from_fn(d.n(), |u, v| !d.has_arc(u, v))
}

/// Subdigraph induced by `vertices`, relabelled to `0..k` in the given order.
/// Returns the digraph and the map from new index to original vertex.
pub fn induced_subdigraph(d: &Digraph, vertices: &[usize]) -> Result<(Digraph, Vec<usize>)> {
    let mut seen = vec![false; d.n()];
    for &v in vertices {
        if v >= d.n() {
            return Err(Error::UnknownVertex { vertex: v, n: d.n() });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidArgument(format!("vertex {v} listed twice")));
        }
    }
    let map = vertices.to_vec();
    let sub = Digraph::from_fn(map.len(), |a, b| d.has_arc(map[a], map[b]));
    Ok((sub, map))
}

/// `d` minus the given vertices; surviving vertices keep their relative order.
pub fn delete_vertices(d: &Digraph, removed: &[usize]) -> Result<(Digraph, Vec<usize>)> {
    let mut drop = vec![false; d.n()];
    for &v in removed {
        if v >= d.n() {
            return Err(Error::UnknownVertex { vertex: v, n: d.n() });
        }
        drop[v] = true;
    }
    let keep: Vec<usize> = (0..d.n()).filter(|&v| !drop[v]).collect();
    induced_subdigraph(d, &keep)
}

/// Strongly connected components in topological order: for `i < j` there is
/// no arc from component `j` to component `i`. Each component is sorted.
pub fn strongly_connected_components(d: &Digraph) -> Vec<Vec<usize>> {
    // Iterative Tarjan; components pop out sinks-first.
    const UNVISITED: usize = usize::MAX;
    let n = d.n();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            let succ = d.out_neighbors(v);
            if *next < succ.len() {
                let w = succ[*next];
                *next += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.reverse();
    comps
}
