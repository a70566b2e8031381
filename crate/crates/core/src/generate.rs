//! Random and exhaustive sources of connected chordal graphs.

use std::collections::BTreeSet;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chordal::is_chordal;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Grow cliques one at a time, each sharing a non-empty subset of an
    /// existing clique.
    #[default]
    TreeOfCliques,
    /// Random connected graph completed by the fill-in of a random
    /// elimination order.
    FillIn,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree-of-cliques" => Ok(Method::TreeOfCliques),
            "fill-in" => Ok(Method::FillIn),
            other => Err(Error::invalid(format!(
                "unknown generation method {other:?}"
            ))),
        }
    }
}

const MAX_NEW_PER_CLIQUE: usize = 3;

/// Connected chordal graph on vertices `0..n`.
pub fn random_chordal<R: Rng + ?Sized>(n: usize, method: Method, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let g = match method {
        Method::TreeOfCliques => tree_of_cliques(n, rng),
        Method::FillIn => fill_in(n, rng),
    };
    debug_assert!(is_chordal(&g) && g.is_connected());
    Ok(g)
}

/// Seeded convenience wrapper around [`random_chordal`].
pub fn random_chordal_seeded(n: usize, method: Method, seed: u64) -> Result<Graph> {
    random_chordal(n, method, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn tree_of_cliques<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let first = rng.gen_range(1..=n.min(MAX_NEW_PER_CLIQUE + 1));
    let mut cliques: Vec<VertexSet> = vec![(0..first as Vertex).collect()];
    let mut next = first;
    while next < n {
        let base = cliques.choose(rng).unwrap().clone();
        let overlap = rng.gen_range(1..=base.len());
        let shared: Vec<Vertex> = base
            .as_slice()
            .choose_multiple(rng, overlap)
            .copied()
            .collect();
        let fresh = rng.gen_range(1..=MAX_NEW_PER_CLIQUE.min(n - next));
        let clique: VertexSet = shared
            .into_iter()
            .chain(next as Vertex..(next + fresh) as Vertex)
            .collect();
        next += fresh;
        cliques.push(clique);
    }
    Graph::from_cliques(&cliques)
}

fn fill_in<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let add = |adj: &mut Vec<BTreeSet<usize>>, u: usize, v: usize| {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    };
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        add(&mut adj, parent, v);
    }
    let density: f64 = rng.gen_range(0.0..0.3);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                add(&mut adj, u, v);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    for &v in &order {
        let later: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                add(&mut adj, a, b);
            }
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| {
            ns.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u as Vertex, v as Vertex))
        })
        .collect::<Vec<_>>();
    Graph::new(0..n as Vertex, edges).unwrap()
}

/// Every connected chordal graph on the labelled vertex set `0..n`.
/// Isomorphic copies are all included.
pub fn connected_chordal_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "exhaustive enumeration is limited to 8 vertices");
    let pairs: Vec<(Vertex, Vertex)> = (0..n as Vertex)
        .flat_map(|u| (u + 1..n as Vertex).map(move |v| (u, v)))
        .collect();
    let total: u64 = 1 << pairs.len();
    (0..total)
        .filter_map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e);
            let g = Graph::new(0..n as Vertex, edges).unwrap();
            (g.is_connected() && is_chordal(&g)).then_some(g)
        })
        .collect()
}

/// All connected chordal graphs with `1..=max_n` vertices.
pub fn exhaustive_corpus(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_chordal_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        for m in [Method::TreeOfCliques, Method::FillIn] {
            let g = random_chordal_seeded(1, m, 5).unwrap();
            assert_eq!(g.vertex_count(), 1);
            assert_eq!(g.edge_count(), 0);
        }
        assert!(random_chordal_seeded(0, Method::FillIn, 5).is_err());
    }

    #[test]
    fn generated_graphs_are_connected_chordal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..1000 {
            let m = if i % 2 == 0 {
                Method::TreeOfCliques
            } else {
                Method::FillIn
            };
            let n = rng.gen_range(1..=14);
            let g = random_chordal(n, m, &mut rng).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert!(is_chordal(&g), "{g:?}");
            assert!(g.is_connected());
        }
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        for m in [Method::TreeOfCliques, Method::FillIn] {
            assert_eq!(
                random_chordal_seeded(9, m, 77).unwrap(),
                random_chordal_seeded(9, m, 77).unwrap()
            );
        }
    }

    #[test]
    fn labelled_connected_chordal_counts() {
        // Labelled connected chordal graphs: OEIS A058862 gives 1, 1, 4, 35, 541.
        let counts: Vec<usize> = (1..=5).map(|n| connected_chordal_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 35, 541]);
    }

    #[test]
    fn method_parsing() {
        assert_eq!("fill-in".parse::<Method>().unwrap(), Method::FillIn);
        assert_eq!(
            "tree-of-cliques".parse::<Method>().unwrap(),
            Method::TreeOfCliques
        );
        assert!("other".parse::<Method>().is_err());
    }
}
