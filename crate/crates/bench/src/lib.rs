//! Benchmark inputs shared by the criterion benches.

use chordkit_core::generate::{random_chordal_seeded, Method};
use chordkit_core::{ChordalGraph, Graph};

/// Star with `leaves` leaves: every clique tree is a labelled tree.
pub fn star(leaves: u32) -> ChordalGraph {
    ChordalGraph::new(Graph::from_edges((1..=leaves).map(|i| (0, i))).unwrap()).unwrap()
}

/// Seeded tree-of-cliques graph on `n` vertices.
pub fn random(n: usize, seed: u64) -> ChordalGraph {
    ChordalGraph::new(random_chordal_seeded(n, Method::TreeOfCliques, seed).unwrap()).unwrap()
}
