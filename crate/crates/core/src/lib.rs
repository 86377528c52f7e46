//! Cutwidth and optimal linear arrangement of digraphs, with a focus on
//! tournaments and semi-complete digraphs.
//!
//! Vertices are `0..n` internally; the text formats in [`io`] use `1..=n`.

pub mod digraph;
pub mod error;
pub mod exact;
pub mod generators;
pub mod io;
pub mod kernels;
pub mod lean;
pub mod obstructions;
pub mod report;
pub mod tournament;

pub use digraph::{
    classify, complement, cut_vector, delete_vertices, induced_subdigraph, strongly_connected_components,
    Classification, CutVector, Digraph, VertexOrdering,
};
pub use error::{Error, Result};
pub use exact::{Objective, SolverCaps};
