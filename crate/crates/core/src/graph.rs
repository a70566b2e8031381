//! Immutable undirected simple graphs and canonical vertex sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex identifier. Ids are kept exactly as read from input.
pub type Vertex = u32;

/// A sorted, duplicate-free set of vertices.
///
/// The derived `Ord` is lexicographic on the sorted members, which is the
/// canonical order used for cliques and separators throughout the crate.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from arbitrary input, sorting and removing duplicates.
    pub fn from_iter_unsorted<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// Wraps an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for &x in &self.0 {
            for &y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subset(&self, other: &VertexSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        VertexSet(out)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.len() + other.len());
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        VertexSet(out)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection(other).is_empty()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::from_iter_unsorted(iter)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(a: [Vertex; N]) -> Self {
        VertexSet::from_iter_unsorted(a)
    }
}

impl From<BTreeSet<Vertex>> for VertexSet {
    fn from(s: BTreeSet<Vertex>) -> Self {
        VertexSet(s.into_iter().collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Undirected simple graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<Vertex>,
    adjacency: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from a vertex list and an edge list. Edge endpoints are
    /// added to the vertex set; self-loops are rejected, repeated edges merged.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            vs.push(u);
            vs.push(v);
        }
        vs.sort_unstable();
        vs.dedup();
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); vs.len()];
        for &(u, v) in &edges {
            let iu = vs.binary_search(&u).unwrap();
            let iv = vs.binary_search(&v).unwrap();
            adj[iu].push(v);
            adj[iv].push(u);
        }
        let adjacency = adj.into_iter().map(VertexSet::from_iter_unsorted).collect();
        Ok(Graph {
            vertices: vs,
            adjacency,
        })
    }

    pub fn from_edges<E: IntoIterator<Item = (Vertex, Vertex)>>(edges: E) -> Result<Self> {
        Graph::new(std::iter::empty(), edges)
    }

    pub fn empty() -> Self {
        Graph {
            vertices: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    /// Complete graph on `0..n`.
    pub fn complete(n: u32) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(0..n, edges).unwrap()
    }

    /// Union of complete graphs, one per given vertex set.
    pub fn from_cliques<'a, I: IntoIterator<Item = &'a VertexSet>>(cliques: I) -> Self {
        let mut vs = Vec::new();
        let mut edges = Vec::new();
        for c in cliques {
            let s = c.as_slice();
            vs.extend_from_slice(s);
            for (i, &u) in s.iter().enumerate() {
                for &v in &s[i + 1..] {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(vs, edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_sorted(self.vertices.clone())
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, &u) in self.vertices.iter().enumerate() {
            for v in self.adjacency[i].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match self.index_of(u) {
            Some(i) => self.adjacency[i].contains(v),
            None => false,
        }
    }

    pub(crate) fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    fn require(&self, v: Vertex) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::invalid(format!("unknown vertex {v}")))
    }

    fn require_all(&self, vs: &VertexSet) -> Result<()> {
        for v in vs.iter() {
            self.require(v)?;
        }
        Ok(())
    }

    /// Neighbors of a vertex known to be present.
    pub(crate) fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adjacency[self.index_of(v).expect("vertex in graph")]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.index_of(v).map_or(0, |i| self.adjacency[i].len())
    }

    /// N(v).
    pub fn open_neighborhood(&self, v: Vertex) -> Result<VertexSet> {
        let i = self.require(v)?;
        Ok(self.adjacency[i].clone())
    }

    /// N\[v\] = N(v) ∪ {v}.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet> {
        let i = self.require(v)?;
        Ok(self.adjacency[i].union(&VertexSet::singleton(v)))
    }

    /// Union of the open neighborhoods of `vs`, minus `vs` itself.
    pub fn set_neighborhood(&self, vs: &VertexSet) -> Result<VertexSet> {
        self.require_all(vs)?;
        let mut acc = BTreeSet::new();
        for v in vs.iter() {
            acc.extend(self.neighbors(v).iter().filter(|&w| !vs.contains(w)));
        }
        Ok(acc.into())
    }

    pub fn is_clique(&self, vs: &VertexSet) -> Result<bool> {
        self.require_all(vs)?;
        let s = vs.as_slice();
        Ok(s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| self.neighbors(u).contains(v))))
    }

    pub fn induced_subgraph(&self, vs: &VertexSet) -> Result<Graph> {
        self.require_all(vs)?;
        let adjacency = vs
            .iter()
            .map(|v| self.neighbors(v).intersection(vs))
            .collect();
        Ok(Graph {
            vertices: vs.as_slice().to_vec(),
            adjacency,
        })
    }

    /// Graph with the given vertices removed.
    pub fn without(&self, removed: &VertexSet) -> Graph {
        let keep = self.vertex_set().difference(removed);
        self.induced_subgraph(&keep)
            .expect("subset of own vertices")
    }

    /// Connected components in canonical order (each sorted, ordered by
    /// their members lexicographically, i.e. by smallest vertex).
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut members = Vec::new();
            while let Some(i) = stack.pop() {
                members.push(self.vertices[i]);
                for w in self.adjacency[i].iter() {
                    let j = self.index_of(w).unwrap();
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comps.push(VertexSet::from_iter_unsorted(members));
        }
        comps.sort();
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertices.len();
        self.adjacency.iter().all(|a| a.len() + 1 == n)
    }
}
