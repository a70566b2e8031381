//! Brute-force oracles written without the library's algorithms, compared
//! against the library on small graphs.

use std::collections::{BTreeMap, BTreeSet};

use chordkit_core::generate::{connected_chordal_graphs, exhaustive_corpus};
use chordkit_core::{
    count_clique_trees, enumerate_clique_trees, is_chordal, ChordalGraph, Graph, Vertex,
};
use num_bigint::BigUint;

type Set = BTreeSet<Vertex>;

fn adjacent(g: &Graph, u: Vertex, v: Vertex) -> bool {
    g.has_edge(u, v)
}

fn subsets(vs: &[Vertex]) -> impl Iterator<Item = Set> + '_ {
    (0u32..1 << vs.len()).map(move |m| {
        vs.iter()
            .enumerate()
            .filter(|(i, _)| m & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn is_clique(g: &Graph, s: &Set) -> bool {
    s.iter()
        .all(|&u| s.iter().all(|&v| u == v || adjacent(g, u, v)))
}

fn brute_maximal_cliques(g: &Graph) -> BTreeSet<Set> {
    let cliques: Vec<Set> = subsets(g.vertices())
        .filter(|s| !s.is_empty() && is_clique(g, s))
        .collect();
    cliques
        .iter()
        .filter(|c| !cliques.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
        .cloned()
        .collect()
}

/// Every induced subgraph has a vertex whose neighbourhood in it is a clique.
fn brute_chordal(g: &Graph) -> bool {
    subsets(g.vertices()).filter(|s| !s.is_empty()).all(|s| {
        s.iter().any(|&v| {
            let nbrs: Set = s.iter().copied().filter(|&w| adjacent(g, v, w)).collect();
            is_clique(g, &nbrs)
        })
    })
}

fn components(g: &Graph, alive: &Set) -> Vec<Set> {
    let mut seen = Set::new();
    let mut out = Vec::new();
    for &s in alive {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = Set::from([s]);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in alive {
                if adjacent(g, x, y) && comp.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.extend(comp.iter().copied());
        out.push(comp);
    }
    out
}

/// S is a minimal vertex separator when at least two components of G - S
/// have every vertex of S as a neighbour.
fn brute_minimal_separators(g: &Graph) -> BTreeSet<Set> {
    let all: Set = g.vertices().iter().copied().collect();
    subsets(g.vertices())
        .filter(|s| {
            let rest: Set = all.difference(s).copied().collect();
            let full = components(g, &rest)
                .into_iter()
                .filter(|comp| s.iter().all(|&x| comp.iter().any(|&y| adjacent(g, x, y))))
                .count();
            full >= 2
        })
        .collect()
}

fn decode_prufer(code: &[usize], k: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; k];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::new();
    for &c in code {
        let leaf = (0..k).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf.min(c), leaf.max(c)));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort();
    edges
}

fn labelled_trees(k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 1 {
        return vec![vec![]];
    }
    if k == 2 {
        return vec![vec![(0, 1)]];
    }
    let len = k - 2;
    (0..k.pow(len as u32))
        .map(|mut x| {
            let code: Vec<usize> = (0..len)
                .map(|_| {
                    let d = x % k;
                    x /= k;
                    d
                })
                .collect();
            decode_prufer(&code, k)
        })
        .collect()
}

fn tree_path(edges: &[(usize, usize)], k: usize, a: usize, b: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); k];
    for &(x, y) in edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut parent = vec![usize::MAX; k];
    parent[a] = a;
    let mut stack = vec![a];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = parent[x];
        path.push(x);
    }
    path
}

/// Junction property: for every pair of cliques, each clique on their path
/// contains their intersection.
fn brute_junction(cliques: &[Set], edges: &[(usize, usize)]) -> bool {
    let k = cliques.len();
    (0..k).all(|a| {
        (a + 1..k).all(|b| {
            let common: Set = cliques[a].intersection(&cliques[b]).copied().collect();
            tree_path(edges, k, a, b)
                .iter()
                .all(|&c| common.is_subset(&cliques[c]))
        })
    })
}

fn library_cliques(cg: &ChordalGraph) -> Vec<Set> {
    cg.cliques().iter().map(|c| c.iter().collect()).collect()
}

#[test]
fn chordality_matches_brute_force() {
    for n in 1..=6 {
        let pairs: Vec<(Vertex, Vertex)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e);
            let g = Graph::new(0..n, edges).unwrap();
            assert_eq!(is_chordal(&g), brute_chordal(&g), "{g:?}");
        }
    }
}

#[test]
fn cliques_and_separators_match_brute_force() {
    for g in exhaustive_corpus(6) {
        let cg = ChordalGraph::new(g.clone()).unwrap();
        let lib: BTreeSet<Set> = library_cliques(&cg).into_iter().collect();
        assert_eq!(lib, brute_maximal_cliques(&g), "{g:?}");
        let seps: BTreeSet<Set> = cg
            .separators()
            .separators()
            .map(|s| s.iter().collect())
            .collect();
        assert_eq!(seps, brute_minimal_separators(&g), "{g:?}");
    }
}

#[test]
fn clique_trees_match_labelled_tree_filter() {
    for g in exhaustive_corpus(6) {
        let cg = ChordalGraph::new(g.clone()).unwrap();
        let cliques = library_cliques(&cg);
        let brute: BTreeSet<Vec<(usize, usize)>> = labelled_trees(cliques.len())
            .into_iter()
            .filter(|e| brute_junction(&cliques, e))
            .collect();
        let lib: BTreeSet<Vec<(usize, usize)>> = enumerate_clique_trees(&cg)
            .unwrap()
            .iter()
            .map(|t| t.edges().to_vec())
            .collect();
        assert_eq!(lib, brute, "{g:?}");
        assert_eq!(count_clique_trees(&cg), BigUint::from(brute.len()), "{g:?}");

        // every clique tree carries the same multiset of edge labels
        let labels: BTreeSet<BTreeMap<Set, usize>> = brute
            .iter()
            .map(|edges| {
                let mut m = BTreeMap::new();
                for &(a, b) in edges {
                    let s: Set = cliques[a].intersection(&cliques[b]).copied().collect();
                    *m.entry(s).or_insert(0) += 1;
                }
                m
            })
            .collect();
        assert_eq!(labels.len(), 1);
        let catalog: BTreeMap<Set, usize> = cg
            .separators()
            .iter()
            .map(|(s, m)| (s.iter().collect(), m))
            .collect();
        assert_eq!(labels.into_iter().next().unwrap(), catalog, "{g:?}");
    }
}

fn running_intersection(cliques: &[Set], order: &[usize]) -> bool {
    (1..order.len()).all(|i| {
        let before: Set = order[..i]
            .iter()
            .flat_map(|&c| cliques[c].iter().copied())
            .collect();
        let s: Set = cliques[order[i]].intersection(&before).copied().collect();
        order[..i].iter().any(|&c| s.is_subset(&cliques[c]))
    })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn perfect_sequences_match_permutation_filter() {
    for n in 1..=6 {
        for g in connected_chordal_graphs(n) {
            let cg = ChordalGraph::new(g.clone()).unwrap();
            let cliques = library_cliques(&cg);
            let brute: BTreeSet<Vec<usize>> = permutations(cliques.len())
                .into_iter()
                .filter(|p| running_intersection(&cliques, p))
                .collect();
            let lib: BTreeSet<Vec<usize>> = cg
                .all_perfect_sequences(9)
                .unwrap()
                .iter()
                .map(|s| s.order().to_vec())
                .collect();
            assert_eq!(lib, brute, "{g:?}");
        }
    }
}
