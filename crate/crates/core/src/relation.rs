//! The relation between clique trees and perfect sequences.
//!
//! A tree `T` and a sequence `π` are related when `T` can be produced from
//! `π` by attaching each clique to a valid earlier one, equivalently when
//! `π` is a topological order of `T` from some root. Both hold exactly when
//! every prefix of `π` induces a connected subtree of `T`, which is the test
//! used here.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chordal::{ChordalGraph, PerfectSequence, DEFAULT_MAX_SEQUENCE_CLIQUES};
use crate::clique_tree::{
    enumerate_clique_trees, sample_sequence_from_tree, sample_tree_from_sequence, CliqueTree,
};
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Materialization refuses above this many tree/sequence pairs.
pub const MAX_RELATION_PAIRS: u64 = 10_000_000;

pub fn in_relation(cg: &ChordalGraph, t: &CliqueTree, seq: &PerfectSequence) -> Result<bool> {
    let k = cg.k();
    if t.node_count() != k || seq.len() != k {
        return Err(Error::invalid(format!(
            "tree has {} nodes and sequence {} cliques, graph has {k}",
            t.node_count(),
            seq.len()
        )));
    }
    Ok(prefixes_connected(&t.adjacency(), seq.order()))
}

fn prefixes_connected(adj: &[Vec<usize>], order: &[usize]) -> bool {
    let mut placed = vec![false; adj.len()];
    for (k, &c) in order.iter().enumerate() {
        if k > 0 && !adj[c].iter().any(|&j| placed[j]) {
            return false;
        }
        placed[c] = true;
    }
    true
}

/// All clique trees and perfect sequences of a graph with the relation
/// between them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub trees: Vec<CliqueTree>,
    pub sequences: Vec<PerfectSequence>,
    /// `tree_adjacency[t]` lists the related sequence indices, ascending.
    pub tree_adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn edge_count(&self) -> usize {
        self.tree_adjacency.iter().map(Vec::len).sum()
    }

    pub fn sequence_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.sequences.len()];
        for (t, seqs) in self.tree_adjacency.iter().enumerate() {
            for &s in seqs {
                adj[s].push(t);
            }
        }
        adj
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.trees.len() * self.sequences.len()
    }

    /// Minimum degree over both sides.
    pub fn min_degree(&self) -> usize {
        let t = self.tree_adjacency.iter().map(Vec::len).min().unwrap_or(0);
        let s = self
            .sequence_adjacency()
            .iter()
            .map(Vec::len)
            .min()
            .unwrap_or(0);
        t.min(s)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tree_adjacency
            .iter()
            .enumerate()
            .flat_map(|(t, ss)| ss.iter().map(move |&s| (t, s)))
    }
}

pub fn build_bipartite(cg: &ChordalGraph) -> Result<BipartiteGraph> {
    let trees = enumerate_clique_trees(cg)?;
    let sequences = cg.all_perfect_sequences(DEFAULT_MAX_SEQUENCE_CLIQUES)?;
    let pairs = trees.len() as u64 * sequences.len() as u64;
    if pairs > MAX_RELATION_PAIRS {
        return Err(Error::limit(format!(
            "{pairs} tree/sequence pairs (limit {MAX_RELATION_PAIRS})"
        )));
    }
    let tree_adjacency = trees
        .par_iter()
        .map(|t| {
            let adj = t.adjacency();
            sequences
                .iter()
                .enumerate()
                .filter(|(_, s)| prefixes_connected(&adj, s.order()))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Ok(BipartiteGraph {
        trees,
        sequences,
        tree_adjacency,
    })
}

/// Breadth-first connectivity over trees and sequences together.
pub fn is_connected(b: &BipartiteGraph) -> bool {
    let nt = b.trees.len();
    let total = nt + b.sequences.len();
    if total == 0 {
        return true;
    }
    let seq_adj = b.sequence_adjacency();
    let mut seen = vec![false; total];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        let nbrs: Box<dyn Iterator<Item = usize>> = if x < nt {
            Box::new(b.tree_adjacency[x].iter().map(|&s| nt + s))
        } else {
            Box::new(seq_adj[x - nt].iter().copied())
        };
        for y in nbrs {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Tree,
    Sequence,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Tree => "tree",
            Side::Sequence => "sequence",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WalkNode {
    Tree(CliqueTree),
    Sequence(PerfectSequence),
}

impl WalkNode {
    pub fn side(&self) -> Side {
        match self {
            WalkNode::Tree(_) => Side::Tree,
            WalkNode::Sequence(_) => Side::Sequence,
        }
    }

    /// Integer code identifying the state without enumerating its side:
    /// the Prüfer rank of a tree or the Lehmer rank of a sequence.
    pub fn code(&self) -> BigUint {
        match self {
            WalkNode::Tree(t) => prufer_rank(t),
            WalkNode::Sequence(s) => lehmer_rank(s.order()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkStep {
    pub step: usize,
    pub node: WalkNode,
}

/// Seeded alternating walk between related trees and sequences.
#[derive(Debug, Clone)]
pub struct WalkLog {
    pub seed: u64,
    pub start: WalkNode,
    pub steps: Vec<WalkStep>,
}

impl WalkLog {
    /// Distinct trees and sequences visited, including the start state.
    pub fn coverage(&self) -> (usize, usize) {
        let visited: BTreeSet<&WalkNode> = std::iter::once(&self.start)
            .chain(self.steps.iter().map(|s| &s.node))
            .collect();
        let trees = visited.iter().filter(|n| n.side() == Side::Tree).count();
        (trees, visited.len() - trees)
    }
}

/// Runs `steps` transitions starting from the canonical tree or canonical
/// sequence. From a tree, draws a related sequence (uniform root, then
/// uniform among the available cliques); from a sequence, draws a related
/// tree (uniform valid attachment per position).
pub fn random_walk(cg: &ChordalGraph, start: Side, steps: usize, seed: u64) -> WalkLog {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start_node = match start {
        Side::Tree => WalkNode::Tree(cg.canonical_tree().clone()),
        Side::Sequence => WalkNode::Sequence(cg.canonical_sequence().clone()),
    };
    let mut current = start_node.clone();
    let mut log = Vec::with_capacity(steps);
    for step in 1..=steps {
        current = match &current {
            WalkNode::Tree(t) => WalkNode::Sequence(sample_sequence_from_tree(cg, t, &mut rng)),
            WalkNode::Sequence(s) => WalkNode::Tree(sample_tree_from_sequence(cg, s, &mut rng)),
        };
        log.push(WalkStep {
            step,
            node: current.clone(),
        });
    }
    WalkLog {
        seed,
        start: start_node,
        steps: log,
    }
}

/// Prüfer sequence of a labelled tree, read as a base-`k` number.
pub fn prufer_rank(t: &CliqueTree) -> BigUint {
    let k = t.node_count();
    let mut rank = BigUint::zero();
    if k <= 2 {
        return rank;
    }
    let adj = t.adjacency();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; k];
    for _ in 0..k - 2 {
        let leaf = (0..k).find(|&i| !removed[i] && degree[i] == 1).unwrap();
        removed[leaf] = true;
        let parent = adj[leaf].iter().copied().find(|&j| !removed[j]).unwrap();
        degree[parent] -= 1;
        rank = rank * BigUint::from(k) + BigUint::from(parent);
    }
    rank
}

/// Position of a permutation in lexicographic order.
pub fn lehmer_rank(order: &[usize]) -> BigUint {
    let n = order.len();
    let mut rank = BigUint::zero();
    for i in 0..n {
        let smaller = order[i + 1..].iter().filter(|&&x| x < order[i]).count();
        rank = rank * BigUint::from(n - i) + BigUint::from(smaller);
    }
    rank
}

/// Result of restricting every clique tree to a subset of the cliques.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// Sorted clique indices of the subset.
    pub subset: Vec<usize>,
    /// Distinct connected restrictions, relabelled to positions in `subset`.
    pub trees: Vec<CliqueTree>,
    /// Whether any clique tree induces a connected subtree on `subset`.
    pub restrictable: bool,
}

pub fn induced_subtree_restriction(cg: &ChordalGraph, subset: &[usize]) -> Result<Restriction> {
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    if subset.is_empty() || subset.iter().any(|&i| i >= cg.k()) {
        return Err(Error::invalid(
            "clique subset must be non-empty and in range",
        ));
    }
    let trees: BTreeSet<CliqueTree> = enumerate_clique_trees(cg)?
        .iter()
        .filter_map(|t| t.restrict(&subset))
        .collect();
    Ok(Restriction {
        subset,
        restrictable: !trees.is_empty(),
        trees: trees.into_iter().collect(),
    })
}

/// Compares the restrictions of all clique trees to `subset` with the clique
/// trees of the graph induced by the subset's vertices. `Ok(None)` when no
/// tree restricts to a connected subtree.
pub fn restriction_matches_induced(cg: &ChordalGraph, subset: &[usize]) -> Result<Option<bool>> {
    let r = induced_subtree_restriction(cg, subset)?;
    if !r.restrictable {
        return Ok(None);
    }
    let support: VertexSet = r.subset.iter().flat_map(|&i| cg.clique(i).iter()).collect();
    let induced = ChordalGraph::new(cg.graph().induced_subgraph(&support)?)?;
    let same_cliques = induced.k() == r.subset.len()
        && r.subset
            .iter()
            .enumerate()
            .all(|(p, &i)| induced.clique(p) == cg.clique(i));
    if !same_cliques {
        return Ok(Some(false));
    }
    Ok(Some(enumerate_clique_trees(&induced)? == r.trees))
}
