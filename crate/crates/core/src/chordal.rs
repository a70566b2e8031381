//! Chordality recognition and the clique/separator structure of chordal graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clique_tree::{self, CliqueTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Default upper bound on the number of cliques for exhaustive
/// perfect-sequence enumeration.
pub const DEFAULT_MAX_SEQUENCE_CLIQUES: usize = 9;

/// Vertex elimination order: `order[i]` is eliminated at step `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder(pub Vec<Vertex>);

impl EliminationOrder {
    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }
}

/// Maximum cardinality search. Visits vertices by largest number of
/// already-visited neighbors, ties broken by smallest id, and returns the
/// reverse of the visit order. For chordal input this is a perfect
/// elimination ordering.
pub fn maximum_cardinality_search(g: &Graph) -> EliminationOrder {
    let n = g.vertex_count();
    let verts = g.vertices();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if !visited[i] && best.is_none_or(|b| weight[i] > weight[b]) {
                best = Some(i);
            }
        }
        let i = best.unwrap();
        visited[i] = true;
        visit.push(verts[i]);
        for w in g.neighbors(verts[i]).iter() {
            let j = g.index_of(w).unwrap();
            if !visited[j] {
                weight[j] += 1;
            }
        }
    }
    visit.reverse();
    EliminationOrder(visit)
}

fn positions(g: &Graph, order: &EliminationOrder) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if order.0.len() != n {
        return Err(Error::invalid(
            "elimination order is not a permutation of the vertices",
        ));
    }
    let mut pos = vec![usize::MAX; n];
    for (p, &v) in order.0.iter().enumerate() {
        let i = g
            .index_of(v)
            .ok_or_else(|| Error::invalid(format!("unknown vertex {v} in elimination order")))?;
        if pos[i] != usize::MAX {
            return Err(Error::invalid(format!(
                "vertex {v} repeated in elimination order"
            )));
        }
        pos[i] = p;
    }
    Ok(pos)
}

fn later_neighbors(g: &Graph, pos: &[usize], v: Vertex) -> VertexSet {
    let p = pos[g.index_of(v).unwrap()];
    VertexSet::from_sorted(
        g.neighbors(v)
            .iter()
            .filter(|&w| pos[g.index_of(w).unwrap()] > p)
            .collect(),
    )
}

/// True iff every vertex's later neighbors form a clique.
pub fn is_perfect_elimination(g: &Graph, order: &EliminationOrder) -> Result<bool> {
    let pos = positions(g, order)?;
    for &v in &order.0 {
        let later = later_neighbors(g, &pos, v);
        if !g.is_clique(&later)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_chordal(g: &Graph) -> bool {
    is_perfect_elimination(g, &maximum_cardinality_search(g)).expect("MCS yields a permutation")
}

/// The maximal cliques of a chordal graph, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSet(Vec<VertexSet>);

impl CliqueSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[VertexSet] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &VertexSet {
        &self.0[i]
    }

    pub fn index_of(&self, c: &VertexSet) -> Option<usize> {
        self.0.binary_search(c).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.0.iter()
    }
}

/// Maximal cliques read off a perfect elimination ordering.
pub fn maximal_cliques(g: &Graph) -> Result<CliqueSet> {
    let order = maximum_cardinality_search(g);
    if !is_perfect_elimination(g, &order)? {
        return Err(Error::UnsupportedInput("graph is not chordal".into()));
    }
    let pos = positions(g, &order)?;
    let mut candidates: Vec<VertexSet> = order
        .0
        .iter()
        .map(|&v| later_neighbors(g, &pos, v).union(&VertexSet::singleton(v)))
        .collect();
    candidates.sort();
    candidates.dedup();
    let maximal: Vec<VertexSet> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| c.is_proper_subset(d)))
        .cloned()
        .collect();
    Ok(CliqueSet(maximal))
}

/// Minimal vertex separators with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SeparatorCatalog(BTreeMap<VertexSet, usize>);

impl SeparatorCatalog {
    pub fn from_multiset<'a, I: IntoIterator<Item = &'a VertexSet>>(items: I) -> Self {
        let mut m = BTreeMap::new();
        for s in items {
            *m.entry(s.clone()).or_insert(0) += 1;
        }
        SeparatorCatalog(m)
    }

    /// Number of distinct separators.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, s: &VertexSet) -> usize {
        self.0.get(s).copied().unwrap_or(0)
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.0.contains_key(s)
    }

    pub fn separators(&self) -> impl Iterator<Item = &VertexSet> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexSet, usize)> {
        self.0.iter().map(|(s, &m)| (s, m))
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Separators not strictly containing another separator.
    pub fn inclusion_minimal(&self) -> Vec<VertexSet> {
        self.0
            .keys()
            .filter(|s| !self.0.keys().any(|t| t.is_proper_subset(s)))
            .cloned()
            .collect()
    }
}

/// An ordering of the maximal cliques with the running intersection property.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PerfectSequence {
    order: Vec<usize>,
    separators: Vec<VertexSet>,
}

impl PerfectSequence {
    /// Validates `order` against the cliques of `cg`.
    pub fn new(cg: &ChordalGraph, order: Vec<usize>) -> Result<Self> {
        if !cg.is_perfect_sequence(&order)? {
            return Err(Error::invalid(format!(
                "{order:?} is not a perfect sequence"
            )));
        }
        let separators = sequence_separators(cg.cliques(), &order);
        Ok(PerfectSequence { order, separators })
    }

    pub(crate) fn new_unchecked(cg: &ChordalGraph, order: Vec<usize>) -> Self {
        let separators = sequence_separators(cg.cliques(), &order);
        PerfectSequence { order, separators }
    }

    /// Clique indices in sequence order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `separators()[k - 1]` is the intersection of the k-th clique (0-based
    /// position k ≥ 1) with the union of the cliques before it.
    pub fn separators(&self) -> &[VertexSet] {
        &self.separators
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn first(&self) -> usize {
        self.order[0]
    }

    pub fn last(&self) -> usize {
        *self.order.last().unwrap()
    }

    pub fn separator_catalog(&self) -> SeparatorCatalog {
        SeparatorCatalog::from_multiset(&self.separators)
    }
}

fn sequence_separators(cliques: &CliqueSet, order: &[usize]) -> Vec<VertexSet> {
    let mut history = VertexSet::new();
    let mut out = Vec::with_capacity(order.len().saturating_sub(1));
    for (k, &c) in order.iter().enumerate() {
        let clique = cliques.get(c);
        if k > 0 {
            out.push(history.intersection(clique));
        }
        history = history.union(clique);
    }
    out
}

fn check_permutation(order: &[usize], k: usize) -> Result<()> {
    if order.len() != k {
        return Err(Error::invalid(format!(
            "sequence has {} entries, expected {k}",
            order.len()
        )));
    }
    let mut seen = vec![false; k];
    for &i in order {
        if i >= k || seen[i] {
            return Err(Error::invalid(format!(
                "{order:?} is not a permutation of 0..{k}"
            )));
        }
        seen[i] = true;
    }
    Ok(())
}

/// A connected chordal graph together with its maximal cliques, minimal
/// separators and simplicial vertices.
#[derive(Debug, Clone)]
pub struct ChordalGraph {
    graph: Graph,
    cliques: CliqueSet,
    separators: SeparatorCatalog,
    simplicial: VertexSet,
    canonical_tree: CliqueTree,
    canonical_sequence: PerfectSequence,
}

impl ChordalGraph {
    /// Fails with `UnsupportedInput` unless `graph` is non-empty, connected
    /// and chordal.
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.vertex_count() == 0 {
            return Err(Error::UnsupportedInput("graph has no vertices".into()));
        }
        if !graph.is_connected() {
            return Err(Error::UnsupportedInput("graph is not connected".into()));
        }
        let cliques = maximal_cliques(&graph)?;
        let canonical_tree = max_weight_clique_tree(&cliques);
        let order = clique_tree::canonical_linear_extension(&canonical_tree, 0);
        let seps = sequence_separators(&cliques, &order);
        let separators = SeparatorCatalog::from_multiset(&seps);
        let simplicial = VertexSet::from_sorted(
            graph
                .vertices()
                .iter()
                .copied()
                .filter(|&v| graph.is_clique(graph.neighbors(v)).unwrap())
                .collect(),
        );
        let canonical_sequence = PerfectSequence {
            order,
            separators: seps,
        };
        Ok(ChordalGraph {
            graph,
            cliques,
            separators,
            simplicial,
            canonical_tree,
            canonical_sequence,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cliques(&self) -> &CliqueSet {
        &self.cliques
    }

    pub fn clique(&self, i: usize) -> &VertexSet {
        self.cliques.get(i)
    }

    /// Number of maximal cliques.
    pub fn k(&self) -> usize {
        self.cliques.len()
    }

    pub fn separators(&self) -> &SeparatorCatalog {
        &self.separators
    }

    pub fn is_complete(&self) -> bool {
        self.cliques.len() == 1
    }

    /// Clique tree obtained as the maximum-weight spanning tree of the
    /// clique intersection graph, grown from clique 0.
    pub fn canonical_tree(&self) -> &CliqueTree {
        &self.canonical_tree
    }

    /// The canonical linear extension of [`Self::canonical_tree`] from clique 0.
    pub fn canonical_sequence(&self) -> &PerfectSequence {
        &self.canonical_sequence
    }

    pub fn simplicial_vertices(&self) -> &VertexSet {
        &self.simplicial
    }

    /// Indices of the maximal cliques containing `d`, ascending.
    pub fn cliques_containing(&self, d: &VertexSet) -> Vec<usize> {
        (0..self.k())
            .filter(|&i| d.is_subset(self.clique(i)))
            .collect()
    }

    pub fn clique_index(&self, c: &VertexSet) -> Result<usize> {
        self.cliques
            .index_of(c)
            .ok_or_else(|| Error::invalid(format!("{c} is not a maximal clique")))
    }

    /// Simplicial members of clique `i`.
    pub fn simp(&self, i: usize) -> VertexSet {
        self.clique(i).intersection(&self.simplicial)
    }

    /// Non-simplicial members of clique `i`.
    pub fn sep(&self, i: usize) -> VertexSet {
        self.clique(i).difference(&self.simplicial)
    }

    /// `(Simp(c), Sep(c))` for a maximal clique given by its vertex set.
    pub fn simp_sep_partition(&self, c: &VertexSet) -> Result<(VertexSet, VertexSet)> {
        let i = self.clique_index(c)?;
        Ok((self.simp(i), self.sep(i)))
    }

    /// Running intersection check for a permutation of clique indices.
    pub fn is_perfect_sequence(&self, order: &[usize]) -> Result<bool> {
        check_permutation(order, self.k())?;
        let mut history = VertexSet::new();
        for (k, &c) in order.iter().enumerate() {
            let clique = self.clique(c);
            if k > 0 {
                let s = history.intersection(clique);
                if !order[..k].iter().any(|&p| s.is_subset(self.clique(p))) {
                    return Ok(false);
                }
            }
            history = history.union(clique);
        }
        Ok(true)
    }

    /// Every perfect sequence, in lexicographic order of the clique indices.
    /// Refuses when the number of cliques exceeds `max_k`.
    pub fn all_perfect_sequences(&self, max_k: usize) -> Result<Vec<PerfectSequence>> {
        let k = self.k();
        if k > max_k {
            return Err(Error::limit(format!(
                "perfect-sequence enumeration over {k} cliques (limit {max_k})"
            )));
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(k);
        let mut used = vec![false; k];
        self.extend_sequences(&mut prefix, &mut used, &VertexSet::new(), &mut out);
        Ok(out)
    }

    // Running intersection only constrains each position against its
    // prefix, so pruning failed prefixes enumerates exactly the perfect
    // permutations.
    fn extend_sequences(
        &self,
        prefix: &mut Vec<usize>,
        used: &mut [bool],
        history: &VertexSet,
        out: &mut Vec<PerfectSequence>,
    ) {
        let k = self.k();
        if prefix.len() == k {
            out.push(PerfectSequence::new_unchecked(self, prefix.clone()));
            return;
        }
        for c in 0..k {
            if used[c] {
                continue;
            }
            let clique = self.clique(c);
            if !prefix.is_empty() {
                let s = history.intersection(clique);
                if !prefix.iter().any(|&p| s.is_subset(self.clique(p))) {
                    continue;
                }
            }
            used[c] = true;
            prefix.push(c);
            let h = history.union(clique);
            self.extend_sequences(prefix, used, &h, out);
            prefix.pop();
            used[c] = false;
        }
    }
}

/// Prim's algorithm on the clique intersection graph with weights
/// `|C_i ∩ C_j|`. Ties go to the smallest new clique, then the smallest
/// attachment point.
fn max_weight_clique_tree(cliques: &CliqueSet) -> CliqueTree {
    let k = cliques.len();
    let mut in_tree = vec![false; k];
    let mut best: Vec<Option<(usize, usize)>> = vec![None; k];
    let mut edges = Vec::with_capacity(k.saturating_sub(1));
    in_tree[0] = true;
    let mut last = 0;
    for _ in 1..k {
        for j in 0..k {
            if in_tree[j] {
                continue;
            }
            let w = cliques.get(last).intersection(cliques.get(j)).len();
            if w > 0 && best[j].is_none_or(|(bw, _)| w > bw) {
                best[j] = Some((w, last));
            }
        }
        let mut pick: Option<usize> = None;
        for j in 0..k {
            if in_tree[j] || best[j].is_none() {
                continue;
            }
            if pick.is_none_or(|p| best[j].unwrap().0 > best[p].unwrap().0) {
                pick = Some(j);
            }
        }
        let j = pick.expect("clique intersection graph of a connected graph is connected");
        in_tree[j] = true;
        edges.push((best[j].unwrap().1, j));
        last = j;
    }
    CliqueTree::from_edges_unchecked(k, edges)
}

/// Minimal vertex separators of a connected chordal graph with multiplicities.
pub fn minimal_separators(g: &Graph) -> Result<SeparatorCatalog> {
    Ok(ChordalGraph::new(g.clone())?.separators().clone())
}

pub fn simplicial_vertices(g: &Graph) -> Result<VertexSet> {
    if !is_chordal(g) {
        return Err(Error::UnsupportedInput("graph is not chordal".into()));
    }
    Ok(VertexSet::from_sorted(
        g.vertices()
            .iter()
            .copied()
            .filter(|&v| g.is_clique(g.neighbors(v)).unwrap())
            .collect(),
    ))
}
