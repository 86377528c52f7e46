//! The linear vertex kernel for OLA and the AND-composition for cutwidth.

use serde::Serialize;

use crate::digraph::{induced_subdigraph, strongly_connected_components, Digraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum OlaKernelOutput {
    /// More than `2k` vertices lie on cycles, so `OLA > k`.
    Reject { remaining: usize },
    Reduced {
        /// Host vertices kept, in increasing order.
        vertices: Vec<usize>,
        #[serde(skip)]
        digraph: Digraph,
    },
}

/// Drops every vertex forming a strongly connected component on its own. The
/// result has the same OLA cost; if it keeps more than `2k` vertices the
/// instance is rejected.
pub fn ola_kernel(d: &Digraph, k: u64) -> Result<OlaKernelOutput> {
    let mut vertices: Vec<usize> = strongly_connected_components(d)
        .into_iter()
        .filter(|c| c.len() > 1)
        .flatten()
        .collect();
    vertices.sort_unstable();
    if vertices.len() as u64 > 2 * k {
        return Ok(OlaKernelOutput::Reject {
            remaining: vertices.len(),
        });
    }
    let (digraph, _) = induced_subdigraph(d, &vertices)?;
    Ok(OlaKernelOutput::Reduced { vertices, digraph })
}

/// Disjoint union of the members with every arc from an earlier member to a
/// later one added. Member `i` occupies a contiguous block of ids.
pub fn and_compose(members: &[Digraph]) -> Result<Digraph> {
    if members.is_empty() {
        return Err(Error::InvalidArgument("and_compose needs at least one member".into()));
    }
    if members.iter().any(|d| !d.is_semicomplete()) {
        return Err(Error::NotSemicomplete);
    }
    let mut block = Vec::new();
    let mut offset = Vec::new();
    for (i, d) in members.iter().enumerate() {
        offset.push(block.len());
        block.extend(std::iter::repeat(i).take(d.n()));
    }
    Ok(Digraph::from_fn(block.len(), |u, v| {
        let (bu, bv) = (block[u], block[v]);
        if bu == bv {
            members[bu].has_arc(u - offset[bu], v - offset[bv])
        } else {
            bu < bv
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn kernel_keeps_cycle() {
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 0)]).unwrap();
        match ola_kernel(&d, 2).unwrap() {
            OlaKernelOutput::Reduced { vertices, digraph } => {
                assert_eq!(vertices, vec![0, 1, 2]);
                assert_eq!(digraph.arc_count(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kernel_rejects_two_cycles() {
        let d = Digraph::from_arcs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(ola_kernel(&d, 1).unwrap(), OlaKernelOutput::Reject { remaining: 6 });
    }

    #[test]
    fn kernel_of_dag_is_empty() {
        let d = Digraph::from_fn(5, |u, v| u < v);
        match ola_kernel(&d, 0).unwrap() {
            OlaKernelOutput::Reduced { digraph, .. } => assert_eq!(digraph.n(), 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn compose_blocks() {
        let d = and_compose(&[triangle(), triangle()]).unwrap();
        assert_eq!(d.n(), 6);
        assert!(d.is_semicomplete());
        assert!(d.has_arc(2, 3) && !d.has_arc(3, 2));
        assert_eq!(and_compose(&[triangle()]).unwrap(), triangle());
        assert!(and_compose(&[]).is_err());
        assert!(and_compose(&[Digraph::empty(2)]).is_err());
    }
}
