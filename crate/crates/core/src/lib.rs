//! Cycle isolation in graphs.
//!
//! A set `D` of vertices *isolates* a cycle family when `G - N[D]` contains
//! no cycle of the family. This crate computes minimum isolating sets
//! exactly ([`exact`]), builds isolating sets within the `(m + 1) / 6` edge
//! bound for non-triangle cycles ([`constructive`]), generates and
//! recognizes the special graphs that attain the bounds ([`special`]), and
//! runs exhaustive small-graph censuses ([`harness`]).

pub mod constructive;
pub mod detect;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod special;

pub use detect::{contains_family_graph, find_family_witness, is_isolating, CycleFamily, CycleWitness};
pub use error::{Error, Result};
pub use graph::{Graph, SubgraphView, VertexSet};
