//! Clique trees: validation, construction from perfect sequences and back,
//! exact counting, enumeration and the uniqueness/arbitrariness criteria.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chordal::{ChordalGraph, PerfectSequence};
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Enumeration refuses above this many cliques.
pub const MAX_ENUMERATION_CLIQUES: usize = 12;
/// Enumeration refuses when the counting formula predicts more trees.
pub const MAX_ENUMERATION_TREES: u64 = 1_000_000;

/// A tree on clique indices `0..k`. Edges are stored as `(i, j)` with
/// `i < j`, sorted, so equal trees compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CliqueTree {
    k: usize,
    edges: Vec<(usize, usize)>,
}

impl CliqueTree {
    /// Validates that `edges` form a spanning tree on `0..k`.
    pub fn from_edges(k: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("a clique tree needs at least one node"));
        }
        let t = CliqueTree::from_edges_unchecked(k, edges);
        if t.edges.iter().any(|&(a, b)| a == b || b >= k) {
            return Err(Error::invalid("edge endpoint out of range or self-loop"));
        }
        if t.edges.len() != k - 1 || !t.is_connected_subset(&vec![true; k]) {
            return Err(Error::invalid(format!(
                "{} edges on {k} nodes do not form a spanning tree",
                t.edges.len()
            )));
        }
        Ok(t)
    }

    pub(crate) fn from_edges_unchecked(
        k: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        CliqueTree { k, edges }
    }

    /// The single-node tree.
    pub fn trivial() -> Self {
        CliqueTree {
            k: 1,
            edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.k];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == i || b == i)
            .count()
    }

    /// Degree-one nodes; the only node when `k == 1`.
    pub fn endpoints(&self) -> Vec<usize> {
        if self.k == 1 {
            return vec![0];
        }
        (0..self.k).filter(|&i| self.degree(i) == 1).collect()
    }

    /// Whether the nodes flagged in `members` induce a connected subgraph.
    /// The empty subset counts as connected.
    pub fn is_connected_subset(&self, members: &[bool]) -> bool {
        let Some(start) = members.iter().position(|&m| m) else {
            return true;
        };
        let adj = self.adjacency();
        let mut seen = vec![false; self.k];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if members[j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        members.iter().zip(&seen).all(|(&m, &s)| !m || s)
    }

    /// Induced subforest on `subset` (indices into `0..k`), relabelled to
    /// positions in `subset`, or `None` if it is disconnected.
    pub fn restrict(&self, subset: &[usize]) -> Option<CliqueTree> {
        let mut members = vec![false; self.k];
        for &i in subset {
            members[i] = true;
        }
        if !self.is_connected_subset(&members) {
            return None;
        }
        let pos = |x: usize| subset.iter().position(|&s| s == x).unwrap();
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| members[a] && members[b])
            .map(|&(a, b)| (pos(a), pos(b)));
        Some(CliqueTree::from_edges_unchecked(subset.len(), edges))
    }
}

fn check_nodes(cg: &ChordalGraph, t: &CliqueTree) -> Result<()> {
    if t.node_count() != cg.k() {
        return Err(Error::invalid(format!(
            "tree has {} nodes but the graph has {} maximal cliques",
            t.node_count(),
            cg.k()
        )));
    }
    Ok(())
}

/// First separator `S` whose containing cliques do not induce a connected
/// subtree of `t`, if any.
pub fn junction_violation(cg: &ChordalGraph, t: &CliqueTree) -> Result<Option<VertexSet>> {
    check_nodes(cg, t)?;
    for s in cg.separators().separators() {
        let mut members = vec![false; cg.k()];
        for i in cg.cliques_containing(s) {
            members[i] = true;
        }
        if !t.is_connected_subset(&members) {
            return Ok(Some(s.clone()));
        }
    }
    Ok(None)
}

/// Junction property, checked on the cliques containing each minimal
/// separator (sufficient for all cliques).
pub fn is_clique_tree(cg: &ChordalGraph, t: &CliqueTree) -> Result<bool> {
    check_nodes(cg, t)?;
    if t.edges().len() + 1 != t.node_count() || !t.is_connected_subset(&vec![true; t.k]) {
        return Ok(false);
    }
    Ok(junction_violation(cg, t)?.is_none())
}

/// Positions `k' < k` whose clique meets the clique at position `k` in
/// exactly the sequence separator at `k`.
pub fn valid_parents(cg: &ChordalGraph, seq: &PerfectSequence, k: usize) -> Vec<usize> {
    let order = seq.order();
    let c = cg.clique(order[k]);
    let s = &seq.separators()[k - 1];
    (0..k)
        .filter(|&p| &cg.clique(order[p]).intersection(c) == s)
        .collect()
}

/// Builds a tree from a perfect sequence, attaching the clique at each
/// position `k ≥ 1` to the position returned by `choose(k)`.
pub fn tree_from_sequence_with(
    cg: &ChordalGraph,
    seq: &PerfectSequence,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<CliqueTree> {
    let order = seq.order();
    let mut edges = Vec::with_capacity(order.len().saturating_sub(1));
    for k in 1..order.len() {
        let p = choose(k);
        if !valid_parents(cg, seq, k).contains(&p) {
            return Err(Error::invalid(format!(
                "position {p} is not a valid attachment for position {k}"
            )));
        }
        edges.push((order[p], order[k]));
    }
    Ok(CliqueTree::from_edges_unchecked(order.len(), edges))
}

/// Builds a tree choosing the smallest valid attachment at every step.
pub fn tree_from_sequence(cg: &ChordalGraph, seq: &PerfectSequence) -> CliqueTree {
    tree_from_sequence_with(cg, seq, |k| valid_parents(cg, seq, k)[0])
        .expect("a perfect sequence always has a valid attachment")
}

/// Every tree the sequence can generate, over all attachment choices.
pub fn all_trees_from_sequence(cg: &ChordalGraph, seq: &PerfectSequence) -> Vec<CliqueTree> {
    let order = seq.order();
    let choices: Vec<Vec<usize>> = (1..order.len())
        .map(|k| valid_parents(cg, seq, k))
        .collect();
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let edges = pick
            .iter()
            .enumerate()
            .map(|(i, &c)| (order[choices[i][c]], order[i + 1]));
        out.insert(CliqueTree::from_edges_unchecked(order.len(), edges));
        // odometer
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out.into_iter().collect();
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Tie-break rule for choosing the next clique among the available ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tiebreak {
    /// Smallest clique index first.
    Canonical,
    /// Uniform choice from a generator seeded with the given value.
    Seeded(u64),
}

pub(crate) fn canonical_linear_extension(t: &CliqueTree, root: usize) -> Vec<usize> {
    linear_extension(t, root, |frontier| frontier[0])
}

fn linear_extension(
    t: &CliqueTree,
    root: usize,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Vec<usize> {
    let adj = t.adjacency();
    let mut placed = vec![false; t.node_count()];
    let mut frontier = BTreeSet::new();
    let mut out = Vec::with_capacity(t.node_count());
    frontier.insert(root);
    while !frontier.is_empty() {
        let avail: Vec<usize> = frontier.iter().copied().collect();
        let next = pick(&avail);
        frontier.remove(&next);
        placed[next] = true;
        out.push(next);
        frontier.extend(adj[next].iter().copied().filter(|&j| !placed[j]));
    }
    out
}

/// Orders the cliques topologically with respect to `t` rooted at `root`.
pub fn sequence_from_tree(
    cg: &ChordalGraph,
    t: &CliqueTree,
    root: usize,
    tiebreak: Tiebreak,
) -> Result<PerfectSequence> {
    check_nodes(cg, t)?;
    if root >= t.node_count() {
        return Err(Error::invalid(format!("unknown root clique {root}")));
    }
    let order = match tiebreak {
        Tiebreak::Canonical => canonical_linear_extension(t, root),
        Tiebreak::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            linear_extension(t, root, |f| *f.choose(&mut rng).unwrap())
        }
    };
    Ok(PerfectSequence::new_unchecked(cg, order))
}

/// Random linear extension: uniform root, then uniform among the available
/// cliques at each step.
pub fn sample_sequence_from_tree<R: Rng + ?Sized>(
    cg: &ChordalGraph,
    t: &CliqueTree,
    rng: &mut R,
) -> PerfectSequence {
    let root = rng.gen_range(0..t.node_count());
    let order = linear_extension(t, root, |f| f[rng.gen_range(0..f.len())]);
    PerfectSequence::new_unchecked(cg, order)
}

/// Random tree generated from `seq`, choosing each attachment uniformly
/// among the valid ones.
pub fn sample_tree_from_sequence<R: Rng + ?Sized>(
    cg: &ChordalGraph,
    seq: &PerfectSequence,
    rng: &mut R,
) -> CliqueTree {
    tree_from_sequence_with(cg, seq, |k| {
        let v = valid_parents(cg, seq, k);
        v[rng.gen_range(0..v.len())]
    })
    .expect("sampled attachments are valid")
}

/// All orderings whose every prefix induces a connected subtree of `t`,
/// over all roots, in lexicographic order.
pub fn all_sequences_from_tree(
    cg: &ChordalGraph,
    t: &CliqueTree,
    max_k: usize,
) -> Result<Vec<PerfectSequence>> {
    check_nodes(cg, t)?;
    let k = t.node_count();
    if k > max_k {
        return Err(Error::limit(format!(
            "linear-extension enumeration over {k} cliques (limit {max_k})"
        )));
    }
    let adj = t.adjacency();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    fn rec(
        adj: &[Vec<usize>],
        prefix: &mut Vec<usize>,
        placed: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = adj.len();
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for c in 0..k {
            let available = !placed[c] && (prefix.is_empty() || adj[c].iter().any(|&j| placed[j]));
            if available {
                placed[c] = true;
                prefix.push(c);
                rec(adj, prefix, placed, out);
                prefix.pop();
                placed[c] = false;
            }
        }
    }
    let mut orders = Vec::new();
    rec(&adj, &mut prefix, &mut placed, &mut orders);
    out.extend(
        orders
            .into_iter()
            .map(|o| PerfectSequence::new_unchecked(cg, o)),
    );
    Ok(out)
}

/// Degree-one nodes of `t`.
pub fn endpoints(t: &CliqueTree) -> Vec<usize> {
    t.endpoints()
}

/// Ingredients of the counting formula for one separator `S`: for every
/// component `Γ` of `G - S` whose neighborhood is exactly `S`, the number
/// of maximal cliques strictly containing `S` and contained in `Γ ∪ S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorFactor {
    pub separator: VertexSet,
    pub full_component_cliques: Vec<usize>,
}

impl SeparatorFactor {
    /// `(Σ a_m)^(|M_S| - 2) · Π a_m`.
    pub fn value(&self) -> BigUint {
        let m = self.full_component_cliques.len();
        assert!(
            m >= 2,
            "minimal separator {} has fewer than two full components",
            self.separator
        );
        let sum: usize = self.full_component_cliques.iter().sum();
        let mut v = BigUint::from(sum).pow((m - 2) as u32);
        for &a in &self.full_component_cliques {
            v *= BigUint::from(a);
        }
        v
    }
}

pub fn separator_factors(cg: &ChordalGraph) -> Vec<SeparatorFactor> {
    let g = cg.graph();
    cg.separators()
        .separators()
        .map(|s| {
            let counts = g
                .without(s)
                .connected_components()
                .into_iter()
                .filter(|comp| &g.set_neighborhood(comp).unwrap() == s)
                .map(|comp| {
                    let region = comp.union(s);
                    cg.cliques()
                        .iter()
                        .filter(|c| c.is_subset(&region) && s.is_proper_subset(c))
                        .count()
                })
                .collect();
            SeparatorFactor {
                separator: s.clone(),
                full_component_cliques: counts,
            }
        })
        .collect()
}

/// Exact number of clique trees, as a product over minimal separators.
pub fn count_clique_trees(cg: &ChordalGraph) -> BigUint {
    separator_factors(cg)
        .iter()
        .fold(BigUint::one(), |acc, f| acc * f.value())
}

/// All clique trees, in canonical order, using the default guards.
pub fn enumerate_clique_trees(cg: &ChordalGraph) -> Result<Vec<CliqueTree>> {
    enumerate_clique_trees_limited(cg, MAX_ENUMERATION_CLIQUES, MAX_ENUMERATION_TREES)
}

/// Spanning trees of the clique intersection graph whose edges are labelled
/// by minimal separators, each separator used at most its multiplicity,
/// filtered by the junction property.
pub fn enumerate_clique_trees_limited(
    cg: &ChordalGraph,
    max_k: usize,
    max_trees: u64,
) -> Result<Vec<CliqueTree>> {
    let k = cg.k();
    let predicted = count_clique_trees(cg);
    if k > max_k || predicted > BigUint::from(max_trees) {
        return Err(Error::limit(format!(
            "clique-tree enumeration: {k} cliques, {predicted} trees (limits {max_k}, {max_trees})"
        )));
    }
    let seps: Vec<&VertexSet> = cg.separators().separators().collect();
    let mut quota: Vec<usize> = seps
        .iter()
        .map(|s| cg.separators().multiplicity(s))
        .collect();
    let mut candidates = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let label = cg.clique(i).intersection(cg.clique(j));
            if let Ok(si) = seps.binary_search(&&label) {
                candidates.push((i, j, si));
            }
        }
    }
    let mut out = Vec::with_capacity(predicted.to_usize().unwrap_or(0));
    let mut chosen = Vec::with_capacity(k.saturating_sub(1));
    let parent: Vec<usize> = (0..k).collect();
    search_spanning(
        cg,
        &candidates,
        0,
        &mut quota,
        &mut chosen,
        parent,
        &mut out,
    );
    out.sort();
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn search_spanning(
    cg: &ChordalGraph,
    candidates: &[(usize, usize, usize)],
    next: usize,
    quota: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
    parent: Vec<usize>,
    out: &mut Vec<CliqueTree>,
) {
    let needed = cg.k() - 1 - chosen.len();
    if needed == 0 {
        let t = CliqueTree::from_edges_unchecked(cg.k(), chosen.iter().copied());
        if is_clique_tree(cg, &t).unwrap() {
            out.push(t);
        }
        return;
    }
    if candidates.len() - next < needed {
        return;
    }
    let (i, j, si) = candidates[next];
    let mut with = parent.clone();
    let (ri, rj) = (find(&mut with, i), find(&mut with, j));
    if ri != rj && quota[si] > 0 {
        with[ri] = rj;
        quota[si] -= 1;
        chosen.push((i, j));
        search_spanning(cg, candidates, next + 1, quota, chosen, with, out);
        chosen.pop();
        quota[si] += 1;
    }
    search_spanning(cg, candidates, next + 1, quota, chosen, parent, out);
}

/// Every labelled tree on `0..k`, decoded from all `k^(k-2)` Prüfer sequences.
pub fn all_labeled_trees(k: usize) -> Vec<CliqueTree> {
    if k <= 2 {
        let edges = if k == 2 { vec![(0, 1)] } else { vec![] };
        return vec![CliqueTree::from_edges_unchecked(k, edges)];
    }
    let len = k - 2;
    let total = k.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut code = vec![0usize; len];
    for mut r in 0..total {
        for slot in code.iter_mut().rev() {
            *slot = r % k;
            r /= k;
        }
        out.push(prufer_decode(k, &code));
    }
    out
}

fn prufer_decode(k: usize, code: &[usize]) -> CliqueTree {
    let mut degree = vec![1usize; k];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &c in code {
        let leaf = (0..k).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf, c));
        degree[leaf] = 0;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    CliqueTree::from_edges_unchecked(k, edges)
}

/// Every labelled tree on the cliques is a clique tree iff there is exactly
/// one minimal separator.
pub fn is_arbitrary_tree(cg: &ChordalGraph) -> Result<bool> {
    if cg.k() < 2 {
        return Err(Error::invalid("arbitrariness needs at least two cliques"));
    }
    Ok(cg.separators().len() == 1)
}

/// Three equivalent characterizations of having a unique clique tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessFormulations {
    /// Every multiplicity is 1 and no two separators are nested.
    pub simple_and_incomparable: bool,
    /// Every separator lies in exactly two maximal cliques.
    pub two_cliques_per_separator: bool,
    /// Every separator has exactly two full components, each holding one
    /// clique strictly containing it.
    pub two_full_components: bool,
}

impl UniquenessFormulations {
    pub fn agree(&self) -> bool {
        self.simple_and_incomparable == self.two_cliques_per_separator
            && self.two_cliques_per_separator == self.two_full_components
    }
}

pub fn uniqueness_formulations(cg: &ChordalGraph) -> UniquenessFormulations {
    let cat = cg.separators();
    let seps: Vec<&VertexSet> = cat.separators().collect();
    let simple = cat.iter().all(|(_, m)| m == 1);
    let incomparable = seps
        .iter()
        .all(|a| seps.iter().all(|b| !a.is_proper_subset(b)));
    let two_cliques = seps.iter().all(|s| cg.cliques_containing(s).len() == 2);
    let two_full = separator_factors(cg)
        .iter()
        .all(|f| f.full_component_cliques == [1, 1]);
    UniquenessFormulations {
        simple_and_incomparable: simple && incomparable,
        two_cliques_per_separator: two_cliques,
        two_full_components: two_full,
    }
}

pub fn is_unique_tree(cg: &ChordalGraph) -> bool {
    uniqueness_formulations(cg).simple_and_incomparable
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeClassification {
    #[serde(with = "decimal")]
    pub count: BigUint,
    pub unique: bool,
    /// `None` for a single clique, where the notion is undefined.
    pub arbitrary: Option<bool>,
}

/// Serializes a `BigUint` as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

pub fn classify_trees(cg: &ChordalGraph) -> TreeClassification {
    TreeClassification {
        count: count_clique_trees(cg),
        unique: is_unique_tree(cg),
        arbitrary: is_arbitrary_tree(cg).ok(),
    }
}
