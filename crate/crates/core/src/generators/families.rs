//! Tournament families with prescribed cutwidth and the reduction from
//! vertex cover.

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// `C_{t,x}` on `2t+1` vertices: for `i < j` (1-based) the arc goes forward
/// when `j - i <= t`, or when `j = 2t+1` and `i <= x`; otherwise backward.
/// Its cutwidth is `t(t+1)/2 - x` and the identity ordering is sorted.
pub fn circular_tournament(t: usize, x: usize) -> Result<Digraph> {
    if t < 1 || x > t {
        return Err(Error::InvalidArgument(format!(
            "circular tournament needs t >= 1 and 0 <= x <= t, got t={t}, x={x}"
        )));
    }
    let n = 2 * t + 1;
    Ok(Digraph::from_fn(n, |a, b| {
        let (i, j) = (a.min(b) + 1, a.max(b) + 1);
        let forward = j - i <= t || (j == n && i <= x);
        forward == (a < b)
    }))
}

/// Smallest `t` with `t(t+1)/2 >= c` and `x = t(t+1)/2 - c`.
pub fn circular_parameters(c: usize) -> (usize, usize) {
    let mut t = 1;
    while t * (t + 1) / 2 < c {
        t += 1;
    }
    (t, t * (t + 1) / 2 - c)
}

/// Transitive tournament on `2c+1` vertices with `c` arcs reversed. Pairs
/// are 1-based `(tail, head)` positions with tails in `[c+2, 2c+1]` and
/// heads in `[1, c]`, forming a perfect matching between the two ranges.
/// The default matching reverses `(c+1+i, c+1-i)` for `i` in `1..=c`.
pub fn minimal_tournament(c: usize, matching: Option<&[(usize, usize)]>) -> Result<Digraph> {
    if c < 1 {
        return Err(Error::InvalidArgument("minimal tournament needs c >= 1".into()));
    }
    let default: Vec<(usize, usize)> = (1..=c).map(|i| (c + 1 + i, c + 1 - i)).collect();
    let pairs = matching.unwrap_or(&default);
    if pairs.len() != c {
        return Err(Error::InvalidArgument(format!(
            "matching must have {c} pairs, got {}",
            pairs.len()
        )));
    }
    let n = 2 * c + 1;
    let mut tails = vec![false; n + 1];
    let mut heads = vec![false; n + 1];
    for &(tail, head) in pairs {
        if !(c + 2..=n).contains(&tail) || !(1..=c).contains(&head) {
            return Err(Error::InvalidArgument(format!(
                "backward pair ({tail}, {head}) must go from [{}, {n}] to [1, {c}]",
                c + 2
            )));
        }
        if std::mem::replace(&mut tails[tail], true) || std::mem::replace(&mut heads[head], true) {
            return Err(Error::InvalidArgument(format!(
                "backward pair ({tail}, {head}) reuses an endpoint"
            )));
        }
    }
    let reversed = |u: usize, v: usize| pairs.contains(&(v + 1, u + 1));
    Ok(Digraph::from_fn(n, |u, v| {
        if u < v {
            !reversed(u, v)
        } else {
            reversed(v, u)
        }
    }))
}

/// Undirected simple graph given by its edge list on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateArc(u, v));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v)) || self.edges.contains(&(v, u))
    }

    /// Whether `cover` touches every edge.
    pub fn is_vertex_cover(&self, cover: &[usize]) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| cover.contains(&u) || cover.contains(&v))
    }
}

/// Tournament `T(G)`: vertex `i` of `G` becomes a block made of an apex
/// followed by a copy of `C_{t,x}` it dominates, with `t`, `x` from
/// [`circular_parameters`]. Blocks point forward, except that apexes of
/// adjacent vertices point backward. Block `i` occupies ids
/// `i(2t+2)..(i+1)(2t+2)` with the apex first.
pub fn vc_reduction(g: &Graph, c: usize) -> Result<Digraph> {
    if c < 1 {
        return Err(Error::InvalidArgument("vertex cover reduction needs c >= 1".into()));
    }
    let (t, x) = circular_parameters(c);
    let gadget = circular_tournament(t, x)?;
    let size = 2 * t + 2;
    Ok(Digraph::from_fn(g.n * size, |a, b| {
        let (ba, oa) = (a / size, a % size);
        let (bb, ob) = (b / size, b % size);
        if ba == bb {
            match (oa, ob) {
                (0, _) => true,
                (_, 0) => false,
                _ => gadget.has_arc(oa - 1, ob - 1),
            }
        } else if oa == 0 && ob == 0 {
            g.has_edge(ba, bb) == (ba > bb)
        } else {
            ba < bb
        }
    }))
}

/// A 5-vertex semi-complete digraph without a minimum ordering: vertices
/// `1..=4` are pairwise joined by symmetric pairs and vertex `0` has arcs
/// to `1` and `3` and from `2` and `4`.
pub fn no_minimum_fixture() -> Digraph {
    Digraph::from_fn(5, |u, v| match (u, v) {
        (0, w) => w == 1 || w == 3,
        (w, 0) => w == 2 || w == 4,
        _ => true,
    })
}
