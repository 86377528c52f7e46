//! Degree tangles, cutwidth-minimal subdigraphs, catalogues of small minimal
//! obstructions and the algorithms for deleting vertices down to cutwidth `c`.
//!
//! Every cutwidth question is answered by the exact solvers of
//! [`crate::exact`], which bounds the practical instance size.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::Zero;
use serde::Serialize;

use crate::digraph::{delete_vertices, induced_subdigraph, Digraph};
use crate::error::{Error, Result};
use crate::exact::{exact_optimum, Objective, SolverCaps};
use crate::tournament::{FractionalTournament, Rational};

/// A vertex set with pairwise in-weight differences at most `alpha`; it
/// certifies `ctw >= k(k+1-alpha)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangleCertificate {
    pub vertices: Vec<usize>,
    pub k: usize,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub bound: Rational,
}

impl TangleCertificate {
    /// Re-checks size and spread against `t`.
    pub fn validate(&self, t: &FractionalTournament) -> bool {
        let inw: Vec<Rational> = self.vertices.iter().map(|&v| t.in_weight(v)).collect();
        let spread_ok = match (inw.iter().max(), inw.iter().min()) {
            (Some(hi), Some(lo)) => *hi - *lo <= self.alpha,
            _ => false,
        };
        spread_ok
            && self.vertices.len() > 2 * self.k
            && self.bound == tangle_bound(self.k, self.alpha)
    }
}

fn tangle_bound(k: usize, alpha: Rational) -> Rational {
    let k = Rational::from_integer(k as i128);
    k * (k + Rational::from_integer(1) - alpha) / Rational::from_integer(2)
}

/// Best tangle over windows of the sorted in-weight sequence with spread at
/// most `alpha`. Windows of fewer than three vertices are ignored.
pub fn find_degree_tangle(t: &FractionalTournament, alpha: Rational) -> Option<TangleCertificate> {
    if alpha < Rational::zero() {
        return None;
    }
    let inw = t.in_weights();
    let mut order: Vec<usize> = (0..t.n()).collect();
    order.sort_by_key(|&v| (inw[v], v));
    let mut best: Option<TangleCertificate> = None;
    let mut end = 0;
    for start in 0..order.len() {
        end = end.max(start);
        while end + 1 < order.len() && inw[order[end + 1]] - inw[order[start]] <= alpha {
            end += 1;
        }
        let size = end - start + 1;
        if size < 3 {
            continue;
        }
        let k = (size - 1) / 2;
        let bound = tangle_bound(k, alpha);
        if best.as_ref().map_or(true, |b| bound > b.bound) {
            let mut vertices = order[start..=end].to_vec();
            vertices.sort_unstable();
            best = Some(TangleCertificate {
                vertices,
                k,
                alpha,
                bound,
            });
        }
    }
    best
}

/// The strongest tangle over every spread that occurs between two
/// in-weights.
pub fn best_degree_tangle(t: &FractionalTournament) -> Option<TangleCertificate> {
    let inw = t.in_weights();
    let mut spreads: Vec<Rational> = inw
        .iter()
        .flat_map(|a| inw.iter().filter(move |b| *b >= a).map(move |b| *b - *a))
        .collect();
    spreads.sort_unstable();
    spreads.dedup();
    spreads
        .into_iter()
        .filter_map(|alpha| find_degree_tangle(t, alpha))
        .fold(None, |best: Option<TangleCertificate>, cand| match best {
            Some(b) if b.bound >= cand.bound => Some(b),
            _ => Some(cand),
        })
}

/// Exact cutwidth with an optional memo keyed by the labelled adjacency
/// matrix. Safe to share between threads.
pub struct CutwidthOracle {
    caps: SolverCaps,
    memo: Option<Mutex<HashMap<(usize, Vec<u64>), u64>>>,
}

impl CutwidthOracle {
    pub fn new(caps: SolverCaps) -> Self {
        CutwidthOracle {
            caps,
            memo: Some(Mutex::new(HashMap::new())),
        }
    }

    pub fn without_memo(caps: SolverCaps) -> Self {
        CutwidthOracle { caps, memo: None }
    }

    pub fn caps(&self) -> &SolverCaps {
        &self.caps
    }

    fn key(d: &Digraph) -> (usize, Vec<u64>) {
        let n = d.n();
        let mut bits = vec![0u64; (n * n).div_ceil(64)];
        for (u, v) in d.arcs() {
            let i = u * n + v;
            bits[i / 64] |= 1 << (i % 64);
        }
        (n, bits)
    }

    pub fn cutwidth(&self, d: &Digraph) -> Result<u64> {
        let Some(memo) = &self.memo else {
            return Ok(exact_optimum(d, Objective::Cutwidth, &self.caps)?.value);
        };
        let key = Self::key(d);
        if let Some(&v) = memo.lock().expect("memo lock").get(&key) {
            return Ok(v);
        }
        let v = exact_optimum(d, Objective::Cutwidth, &self.caps)?.value;
        memo.lock().expect("memo lock").insert(key, v);
        Ok(v)
    }

    /// `ctw(d[vertices])`.
    pub fn cutwidth_of(&self, d: &Digraph, vertices: &[usize]) -> Result<u64> {
        let (sub, _) = induced_subdigraph(d, vertices)?;
        self.cutwidth(&sub)
    }
}

impl Default for CutwidthOracle {
    fn default() -> Self {
        Self::new(SolverCaps::default())
    }
}

/// Induced subdigraph on `vertices` with cutwidth at least `threshold` whose
/// every proper induced subdigraph has smaller cutwidth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub vertices: Vec<usize>,
    pub threshold: u64,
}

impl ObstructionReport {
    /// Recomputes the cutwidth of the set and of each one-vertex deletion.
    pub fn validate(&self, d: &Digraph, oracle: &CutwidthOracle) -> Result<bool> {
        if oracle.cutwidth_of(d, &self.vertices)? < self.threshold {
            return Ok(false);
        }
        for skip in 0..self.vertices.len() {
            let rest: Vec<usize> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            if oracle.cutwidth_of(d, &rest)? >= self.threshold {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum MinimalSearch {
    WithinBound { cutwidth: u64 },
    Obstruction(ObstructionReport),
}

/// Either reports `ctw(d) <= c` or shrinks `d` to a `(c+1)`-cutwidth-minimal
/// induced subdigraph by trying to delete vertices in increasing id order.
pub fn find_cutwidth_minimal(d: &Digraph, c: u64, oracle: &CutwidthOracle) -> Result<MinimalSearch> {
    let ctw = oracle.cutwidth(d)?;
    if ctw <= c {
        return Ok(MinimalSearch::WithinBound { cutwidth: ctw });
    }
    let mut kept: Vec<usize> = (0..d.n()).collect();
    for v in 0..d.n() {
        let trial: Vec<usize> = kept.iter().copied().filter(|&u| u != v).collect();
        if oracle.cutwidth_of(d, &trial)? > c {
            kept = trial;
        }
    }
    Ok(MinimalSearch::Obstruction(ObstructionReport {
        vertices: kept,
        threshold: c + 1,
    }))
}

fn ceil_sqrt(x: usize) -> usize {
    let mut s = 0;
    while s * s < x {
        s += 1;
    }
    s
}

/// Largest possible vertex count of a `c`-cutwidth-minimal tournament.
pub fn tournament_obstruction_bound(c: usize) -> usize {
    2 * c + 2 * ceil_sqrt(2 * c) + 1
}

/// Largest possible vertex count of a `c`-cutwidth-minimal semi-complete
/// digraph.
pub fn semicomplete_obstruction_bound(c: usize) -> usize {
    24 * c * c + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Tournament,
    Semicomplete,
}

impl Family {
    pub fn obstruction_bound(self, c: usize) -> usize {
        match self {
            Family::Tournament => tournament_obstruction_bound(c),
            Family::Semicomplete => semicomplete_obstruction_bound(c),
        }
    }

    fn max_enumeration_n(self) -> usize {
        match self {
            Family::Tournament => 7,
            Family::Semicomplete => 5,
        }
    }
}

const CANON_MAX_N: usize = 8;

fn vertex_invariant(d: &Digraph, v: usize) -> (usize, usize) {
    (d.in_degree(v), d.out_degree(v))
}

fn encode(d: &Digraph, seq: &[usize]) -> u64 {
    let n = seq.len();
    let mut code = 0u64;
    for p in 0..n {
        for q in 0..n {
            if p != q && d.has_arc(seq[p], seq[q]) {
                code |= 1 << (p * n + q);
            }
        }
    }
    code
}

/// Canonical labelling: among relabellings that list vertices by
/// non-decreasing `(in-degree, out-degree)`, the one with the least adjacency
/// code. Isomorphic digraphs get equal codes.
pub fn canonical_form(d: &Digraph) -> Result<(u64, Vec<usize>)> {
    let n = d.n();
    if n > CANON_MAX_N {
        return Err(Error::CapExceeded {
            what: "canonical form vertex count",
            size: n,
            cap: CANON_MAX_N,
        });
    }
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(vertex_invariant(d, v)).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();

    fn permute(
        d: &Digraph,
        classes: &[Vec<usize>],
        class: usize,
        current: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<(u64, Vec<usize>)>,
    ) {
        if class == classes.len() {
            let code = encode(d, current);
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                *best = Some((code, current.clone()));
            }
            return;
        }
        let members = &classes[class];
        let placed = members.iter().filter(|&&v| used[v]).count();
        if placed == members.len() {
            permute(d, classes, class + 1, current, used, best);
            return;
        }
        for &v in members {
            if used[v] {
                continue;
            }
            used[v] = true;
            current.push(v);
            permute(d, classes, class, current, used, best);
            current.pop();
            used[v] = false;
        }
    }

    let mut best = None;
    permute(d, &classes, 0, &mut Vec::with_capacity(n), &mut vec![false; n], &mut best);
    Ok(best.expect("at least one labelling"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub n: usize,
    pub code: u64,
    pub cutwidth: u64,
    #[serde(serialize_with = "crate::report::ser_arcs")]
    pub digraph: Digraph,
}

/// All `c`-cutwidth-minimal members of `family` on at most `n_max` vertices,
/// one per isomorphism class, ordered by size and canonical code.
pub fn enumerate_minimal_obstructions(
    c: u64,
    n_max: usize,
    family: Family,
    caps: &SolverCaps,
) -> Result<Vec<CatalogEntry>> {
    if n_max > family.max_enumeration_n() {
        return Err(Error::CapExceeded {
            what: "enumeration vertex count",
            size: n_max,
            cap: family.max_enumeration_n(),
        });
    }
    let oracle = CutwidthOracle::without_memo(*caps);
    let mut found: BTreeMap<(usize, u64), CatalogEntry> = BTreeMap::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let states: u64 = match family {
            Family::Tournament => 2,
            Family::Semicomplete => 3,
        };
        let total = states.pow(pairs.len() as u32);
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        let mut choice = vec![0u64; pairs.len()];
        for index in 0..total {
            let mut rest = index;
            indeg.iter_mut().for_each(|x| *x = 0);
            outdeg.iter_mut().for_each(|x| *x = 0);
            for (j, &(u, v)) in pairs.iter().enumerate() {
                choice[j] = rest % states;
                rest /= states;
                if choice[j] != 1 {
                    outdeg[u] += 1;
                    indeg[v] += 1;
                }
                if choice[j] != 0 {
                    outdeg[v] += 1;
                    indeg[u] += 1;
                }
            }
            // Every isomorphism class has a labelling sorted by invariant.
            if (1..n).any(|v| (indeg[v - 1], outdeg[v - 1]) > (indeg[v], outdeg[v])) {
                continue;
            }
            let arcs = pairs.iter().zip(&choice).flat_map(|(&(u, v), &ch)| {
                let fwd = (ch != 1).then_some((u, v));
                let bwd = (ch != 0).then_some((v, u));
                fwd.into_iter().chain(bwd)
            });
            let d = Digraph::from_arcs(n, arcs)?;
            let ctw = oracle.cutwidth(&d)?;
            if ctw < c {
                continue;
            }
            let mut minimal = true;
            for v in 0..n {
                let (sub, _) = delete_vertices(&d, &[v])?;
                if oracle.cutwidth(&sub)? >= c {
                    minimal = false;
                    break;
                }
            }
            if !minimal {
                continue;
            }
            let (code, seq) = canonical_form(&d)?;
            found.entry((n, code)).or_insert_with(|| {
                let (canon, _) = induced_subdigraph(&d, &seq).expect("permutation");
                CatalogEntry {
                    n,
                    code,
                    cutwidth: ctw,
                    digraph: canon,
                }
            });
        }
    }
    Ok(found.into_values().collect())
}

/// A set of vertices whose removal leaves cutwidth at most `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionSet {
    pub vertices: Vec<usize>,
    pub c: u64,
    /// The remaining digraph was checked to have cutwidth at most `c`.
    pub certified: bool,
}

fn certify(d: &Digraph, mut vertices: Vec<usize>, c: u64, oracle: &CutwidthOracle) -> Result<DeletionSet> {
    vertices.sort_unstable();
    let (rest, _) = delete_vertices(d, &vertices)?;
    let certified = oracle.cutwidth(&rest)? <= c;
    Ok(DeletionSet {
        vertices,
        c,
        certified,
    })
}

/// Bounded search tree: some vertex of any `(c+1)`-cutwidth-minimal
/// subdigraph must be deleted. Returns `None` when no set of at most `k`
/// vertices works.
pub fn cvd_branching(d: &Digraph, c: u64, k: usize, oracle: &CutwidthOracle) -> Result<Option<DeletionSet>> {
    fn search(
        d: &Digraph,
        alive: &[usize],
        c: u64,
        budget: usize,
        oracle: &CutwidthOracle,
    ) -> Result<Option<Vec<usize>>> {
        let (sub, map) = induced_subdigraph(d, alive)?;
        let obstruction = match find_cutwidth_minimal(&sub, c, oracle)? {
            MinimalSearch::WithinBound { .. } => return Ok(Some(Vec::new())),
            MinimalSearch::Obstruction(o) => o,
        };
        if budget == 0 {
            return Ok(None);
        }
        let mut branch: Vec<usize> = obstruction.vertices.iter().map(|&i| map[i]).collect();
        branch.sort_unstable();
        for v in branch {
            let next: Vec<usize> = alive.iter().copied().filter(|&u| u != v).collect();
            if let Some(mut z) = search(d, &next, c, budget - 1, oracle)? {
                z.push(v);
                return Ok(Some(z));
            }
        }
        Ok(None)
    }

    let all: Vec<usize> = (0..d.n()).collect();
    match search(d, &all, c, k, oracle)? {
        Some(z) => Ok(Some(certify(d, z, c, oracle)?)),
        None => Ok(None),
    }
}

/// Deletes whole `(c+1)`-cutwidth-minimal subdigraphs until the cutwidth is
/// at most `c`.
pub fn cvd_approx(d: &Digraph, c: u64, oracle: &CutwidthOracle) -> Result<DeletionSet> {
    let mut alive: Vec<usize> = (0..d.n()).collect();
    let mut removed = Vec::new();
    loop {
        let (sub, map) = induced_subdigraph(d, &alive)?;
        match find_cutwidth_minimal(&sub, c, oracle)? {
            MinimalSearch::WithinBound { .. } => break,
            MinimalSearch::Obstruction(o) => {
                let hit: Vec<usize> = o.vertices.iter().map(|&i| map[i]).collect();
                alive.retain(|v| !hit.contains(v));
                removed.extend(hit);
            }
        }
    }
    certify(d, removed, c, oracle)
}

const CVD_KERNEL_MAX_N: usize = 16;

/// Vertex sets of all `(c+1)`-cutwidth-minimal induced subdigraphs, as
/// bitmasks in increasing order.
pub fn minimal_obstruction_sets(d: &Digraph, c: u64, oracle: &CutwidthOracle) -> Result<Vec<u32>> {
    let n = d.n();
    if n > CVD_KERNEL_MAX_N {
        return Err(Error::CapExceeded {
            what: "obstruction family vertex count",
            size: n,
            cap: CVD_KERNEL_MAX_N,
        });
    }
    let size = 1usize << n;
    // `above[S]`: ctw(d[S]) > c. Cutwidth is monotone under induced
    // subdigraphs, so a set with an offending subset needs no solver call.
    let mut above = vec![false; size];
    let mut family = Vec::new();
    for mask in 1..size {
        let mut m = mask;
        let mut inherited = false;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            if above[mask ^ bit] {
                inherited = true;
                break;
            }
            m ^= bit;
        }
        if inherited {
            above[mask] = true;
            continue;
        }
        let vertices: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if oracle.cutwidth_of(d, &vertices)? > c {
            above[mask] = true;
            family.push(mask as u32);
        }
    }
    Ok(family)
}

/// A sunflower with `petals` members among `sets`: indices into `sets`
/// whose pairwise intersections all equal a common core.
pub fn find_sunflower(sets: &[u32], petals: usize) -> Option<Vec<usize>> {
    fn grow(sets: &[u32], pool: &[usize], core: u32, petals: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::new();
        let mut used = 0u32;
        for &i in pool {
            let rest = sets[i] & !core;
            if rest & used == 0 {
                chosen.push(i);
                used |= rest;
                if chosen.len() == petals {
                    return Some(chosen);
                }
            }
        }
        let mut m = used;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            m ^= bit;
            let sub: Vec<usize> = pool.iter().copied().filter(|&i| sets[i] & bit != 0).collect();
            if sub.len() >= petals {
                if let Some(found) = grow(sets, &sub, core | bit, petals) {
                    return Some(found);
                }
            }
        }
        None
    }
    let pool: Vec<usize> = (0..sets.len()).collect();
    grow(sets, &pool, 0, petals)
}

fn factorial(d: usize) -> f64 {
    (1..=d).map(|x| x as f64).product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CvdKernel {
    /// All `(c+1)`-cutwidth-minimal vertex sets.
    pub family: Vec<Vec<usize>>,
    /// The subfamily left after sunflower reductions.
    pub reduced_family: Vec<Vec<usize>>,
    /// Host vertices kept in the reduced instance.
    pub vertices: Vec<usize>,
    #[serde(skip)]
    pub digraph: Digraph,
    pub k: usize,
}

fn mask_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Restricts `d` to the union of its minimal obstructions after shrinking
/// that family with the sunflower rule: while it has more than
/// `s!(k+1)^s` sets (`s` the largest set size), a sunflower with `k+2`
/// petals exists and one petal can be dropped without changing which sets
/// of size at most `k` hit the family.
pub fn cvd_kernel(d: &Digraph, c: u64, k: usize, oracle: &CutwidthOracle) -> Result<CvdKernel> {
    let family = minimal_obstruction_sets(d, c, oracle)?;
    let mut reduced = family.clone();
    loop {
        let s = reduced.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
        let threshold = factorial(s) * ((k + 1) as f64).powi(s as i32);
        if (reduced.len() as f64) <= threshold {
            break;
        }
        match find_sunflower(&reduced, k + 2) {
            Some(petals) => {
                let drop = *petals.iter().max().expect("k + 2 petals");
                reduced.remove(drop);
            }
            None => break,
        }
    }
    let union = reduced.iter().fold(0u32, |acc, &m| acc | m);
    let vertices = mask_vertices(union);
    let (digraph, _) = induced_subdigraph(d, &vertices)?;
    Ok(CvdKernel {
        family: family.into_iter().map(mask_vertices).collect(),
        reduced_family: reduced.into_iter().map(mask_vertices).collect(),
        vertices,
        digraph,
        k,
    })
}
