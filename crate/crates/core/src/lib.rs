//! Structure of chordal graphs: maximal cliques, minimal separators, clique
//! trees, perfect sequences of cliques, boundary cliques, and the bipartite
//! relation between clique trees and perfect sequences.
//!
//! Structural operations take a [`ChordalGraph`], which is built from a
//! connected, non-empty chordal [`Graph`]. Cliques are addressed by their
//! 0-based position in lexicographic order.

pub mod boundary;
pub mod check;
pub mod chordal;
pub mod clique_tree;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod relation;
pub mod theorems;
pub mod verify;

pub use boundary::{CliqueClass, CliqueClassification};
pub use check::CheckReport;
pub use chordal::{
    is_chordal, maximal_cliques, maximum_cardinality_search, minimal_separators, ChordalGraph,
    CliqueSet, EliminationOrder, PerfectSequence, SeparatorCatalog,
};
pub use clique_tree::{count_clique_trees, enumerate_clique_trees, CliqueTree, Tiebreak};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use relation::{BipartiteGraph, Side, WalkLog, WalkNode};
pub use verify::{SuiteReport, VerifyOptions};
