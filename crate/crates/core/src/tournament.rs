//! Sorted orderings of fractional tournaments, the exact tournament solver and
//! the approximations for semi-complete digraphs.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::digraph::{cut_vector, Digraph, VertexOrdering};
use crate::error::{Error, Result};
use crate::exact::{ExactResult, Objective, SolverKind};

pub type Rational = Ratio<i128>;

/// Weights on ordered pairs with `w(u,v) + w(v,u) = 1` for every pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalTournament {
    n: usize,
    w: Vec<Rational>,
}

fn check_nonnegative(w: &[Rational], n: usize) -> Result<()> {
    for u in 0..n {
        if !w[u * n + u].is_zero() {
            return Err(Error::InvalidWeights(format!("w({u},{u}) is not zero")));
        }
        for v in 0..n {
            if w[u * n + v] < Rational::zero() {
                return Err(Error::InvalidWeights(format!("w({u},{v}) is negative")));
            }
        }
    }
    Ok(())
}

impl FractionalTournament {
    /// `weights` is row-major: entry `u*n+v` is `w(u,v)`.
    pub fn new(n: usize, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: weights.len(),
            });
        }
        check_nonnegative(&weights, n)?;
        for u in 0..n {
            for v in u + 1..n {
                if weights[u * n + v] + weights[v * n + u] != Rational::one() {
                    return Err(Error::InvalidWeights(format!("w({u},{v}) + w({v},{u}) != 1")));
                }
            }
        }
        Ok(FractionalTournament { n, w: weights })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut w = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                w.push(if u == v { Rational::zero() } else { f(u, v) });
            }
        }
        Self::new(n, w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> Rational {
        self.w[u * self.n + v]
    }

    /// Fractional in-degree `sum_u w(u,v)`.
    pub fn in_weight(&self, v: usize) -> Rational {
        (0..self.n).map(|u| self.w[u * self.n + v]).sum()
    }

    pub fn in_weights(&self) -> Vec<Rational> {
        (0..self.n).map(|v| self.in_weight(v)).collect()
    }

    /// Entry `i` is the total weight from the last `n-i` vertices into the
    /// first `i`.
    pub fn cut_vector(&self, ordering: &VertexOrdering) -> Result<Vec<Rational>> {
        weighted_cuts(self.n, &self.w, ordering)
    }
}

fn weighted_cuts(n: usize, w: &[Rational], ordering: &VertexOrdering) -> Result<Vec<Rational>> {
    if ordering.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: ordering.len(),
        });
    }
    let mut placed = vec![false; n];
    let mut cuts = Vec::with_capacity(n + 1);
    let mut cur = Rational::zero();
    cuts.push(cur);
    for &v in ordering.sequence() {
        placed[v] = true;
        for u in 0..n {
            if u == v {
                continue;
            }
            if placed[u] {
                cur -= w[v * n + u];
            } else {
                cur += w[u * n + v];
            }
        }
        cuts.push(cur);
    }
    Ok(cuts)
}

/// Single arcs get weight 1 and symmetric pairs weight 1/2 in each direction.
pub fn relaxation(d: &Digraph) -> Result<FractionalTournament> {
    if !d.is_semicomplete() {
        return Err(Error::NotSemicomplete);
    }
    let half = Rational::new(1, 2);
    FractionalTournament::from_fn(d.n(), |u, v| match (d.has_arc(u, v), d.has_arc(v, u)) {
        (true, true) => half,
        (true, false) => Rational::one(),
        _ => Rational::zero(),
    })
}

fn sort_by_keys<K: Ord + Copy>(keys: &[K]) -> VertexOrdering {
    let mut seq: Vec<usize> = (0..keys.len()).collect();
    seq.sort_by_key(|&v| (keys[v], v));
    VertexOrdering::new(seq).expect("permutation")
}

/// Vertices by non-decreasing fractional in-degree, ties by vertex id.
pub fn sorted_ordering(t: &FractionalTournament) -> VertexOrdering {
    sort_by_keys(&t.in_weights())
}

/// Whether `ordering` lists vertices with non-decreasing in-weight.
pub fn is_sorted(t: &FractionalTournament, ordering: &VertexOrdering) -> bool {
    let inw = t.in_weights();
    ordering.sequence().windows(2).all(|p| inw[p[0]] <= inw[p[1]])
}

/// Cutwidth and OLA of a tournament, both attained by its sorted ordering.
pub fn tournament_exact(d: &Digraph) -> Result<(ExactResult, ExactResult)> {
    if !d.is_tournament() {
        return Err(Error::NotTournament);
    }
    let indeg: Vec<usize> = (0..d.n()).map(|v| d.in_degree(v)).collect();
    let ordering = sort_by_keys(&indeg);
    let cuts = cut_vector(d, &ordering)?;
    let make = |objective: Objective| ExactResult {
        objective,
        value: objective.evaluate(&cuts),
        ordering: ordering.clone(),
        solver: SolverKind::Tournament,
    };
    Ok((make(Objective::Cutwidth), make(Objective::Ola)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub ordering: VertexOrdering,
    pub width: u64,
    pub cost: u64,
}

/// The sorted ordering of the relaxation. Its width and cost are within a
/// factor two of the cutwidth and OLA cost.
pub fn approximate_semicomplete(d: &Digraph) -> Result<Approximation> {
    if !d.is_semicomplete() {
        return Err(Error::NotSemicomplete);
    }
    // Twice the fractional in-degree, kept integral.
    let n = d.n();
    let doubled: Vec<usize> = (0..n)
        .map(|v| d.in_degree(v) + (n.saturating_sub(1) - d.out_degree(v)))
        .collect();
    let ordering = sort_by_keys(&doubled);
    let cuts = cut_vector(d, &ordering)?;
    Ok(Approximation {
        width: cuts.width(),
        cost: cuts.cost(),
        ordering,
    })
}

/// Non-negative weights on ordered pairs with every pair sum positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSemicomplete {
    n: usize,
    w: Vec<Rational>,
}

impl WeightedSemicomplete {
    pub fn new(n: usize, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: weights.len(),
            });
        }
        check_nonnegative(&weights, n)?;
        for u in 0..n {
            for v in u + 1..n {
                if (weights[u * n + v] + weights[v * n + u]).is_zero() {
                    return Err(Error::InvalidWeights(format!("pair ({u},{v}) has total weight 0")));
                }
            }
        }
        Ok(WeightedSemicomplete { n, w: weights })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut w = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                w.push(if u == v { Rational::zero() } else { f(u, v) });
            }
        }
        Self::new(n, w)
    }

    /// Unit weight on every arc of a semi-complete digraph.
    pub fn from_digraph(d: &Digraph) -> Result<Self> {
        if !d.is_semicomplete() {
            return Err(Error::NotSemicomplete);
        }
        Self::from_fn(d.n(), |u, v| if d.has_arc(u, v) { Rational::one() } else { Rational::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> Rational {
        self.w[u * self.n + v]
    }

    pub fn cut_vector(&self, ordering: &VertexOrdering) -> Result<Vec<Rational>> {
        weighted_cuts(self.n, &self.w, ordering)
    }

    /// Each pair rescaled to total weight one.
    pub fn normalized(&self) -> FractionalTournament {
        let n = self.n;
        FractionalTournament::from_fn(n, |u, v| {
            self.w[u * n + v] / (self.w[u * n + v] + self.w[v * n + u])
        })
        .expect("pair sums are positive")
    }

    /// Largest and smallest pair sum `w(u,v) + w(v,u)`; `None` below two vertices.
    pub fn pair_sum_range(&self) -> Option<(Rational, Rational)> {
        let n = self.n;
        let mut range: Option<(Rational, Rational)> = None;
        for u in 0..n {
            for v in u + 1..n {
                let s = self.w[u * n + v] + self.w[v * n + u];
                range = Some(match range {
                    None => (s, s),
                    Some((hi, lo)) => (hi.max(s), lo.min(s)),
                });
            }
        }
        range
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedApproximation {
    pub ordering: VertexOrdering,
    pub factor: Rational,
}

/// Sorted ordering of the normalized instance; `factor` is the ratio of the
/// largest to the smallest pair sum.
pub fn weighted_approx(w: &WeightedSemicomplete) -> WeightedApproximation {
    let ordering = sorted_ordering(&w.normalized());
    let factor = w
        .pair_sum_range()
        .map_or_else(Rational::one, |(hi, lo)| hi / lo);
    WeightedApproximation { ordering, factor }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn rejects_unbalanced_weights() {
        let err = FractionalTournament::from_fn(2, |_, _| r(1, 3)).unwrap_err();
        assert!(matches!(err, Error::InvalidWeights(_)));
    }

    #[test]
    fn relaxation_of_pair() {
        let d = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        let t = relaxation(&d).unwrap();
        assert_eq!(t.weight(0, 1), r(1, 2));
        assert_eq!(t.weight(1, 0), r(1, 2));
        assert!(relaxation(&Digraph::empty(2)).is_err());
    }

    #[test]
    fn sorted_by_indegree() {
        // in-degrees (2, 0, 1)
        let d = Digraph::from_arcs(3, [(1, 0), (2, 0), (1, 2)]).unwrap();
        let t = relaxation(&d).unwrap();
        assert_eq!(sorted_ordering(&t).sequence(), &[1, 2, 0]);
    }

    #[test]
    fn regular_five_is_identity() {
        let d = Digraph::from_fn(5, |u, v| (v + 5 - u) % 5 <= 2 && u != v);
        let t = relaxation(&d).unwrap();
        assert_eq!(sorted_ordering(&t), VertexOrdering::identity(5));
    }

    #[test]
    fn exact_on_triangle() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let (ctw, ola) = tournament_exact(&d).unwrap();
        assert_eq!((ctw.value, ola.value), (1, 2));
        assert!(tournament_exact(&Digraph::from_fn(3, |_, _| true)).is_err());
    }

    #[test]
    fn approximation_on_k3() {
        let d = Digraph::from_fn(3, |_, _| true);
        let a = approximate_semicomplete(&d).unwrap();
        assert_eq!(a.width, 2);
    }

    #[test]
    fn weighted_factor() {
        let w = WeightedSemicomplete::from_fn(3, |u, v| {
            if (u, v) == (0, 1) || (u, v) == (1, 0) {
                r(2, 1)
            } else if u < v {
                r(1, 1)
            } else {
                r(0, 1)
            }
        })
        .unwrap();
        assert_eq!(weighted_approx(&w).factor, r(4, 1));
        assert!(WeightedSemicomplete::from_fn(2, |_, _| r(0, 1)).is_err());
    }

    #[test]
    fn counting_identity() {
        let d = Digraph::from_fn(4, |u, v| (u + 2 * v) % 3 == 0 || (v + 2 * u) % 3 != 0);
        let t = relaxation(&d).unwrap();
        let ord = VertexOrdering::new(vec![2, 0, 3, 1]).unwrap();
        let cuts = t.cut_vector(&ord).unwrap();
        let inw = t.in_weights();
        let mut acc = Rational::zero();
        for (i, &v) in ord.sequence().iter().enumerate() {
            acc += inw[v];
            let i1 = (i + 1) as i128;
            assert_eq!(cuts[i + 1], acc - r(i1 * (i1 - 1) / 2, 1));
        }
    }
}
