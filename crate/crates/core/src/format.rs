//! Plain-text formats.
//!
//! Edge list: one `u v` edge per line, whitespace separated; a line with a
//! single id declares an isolated vertex; `#` starts a comment line.
//!
//! Clique tree: a clique table `i : v1 v2 …` followed by one edge per line
//! as `i j | s1 s2 …`, where the `s` are the vertices of the edge's
//! separator. Clique indices are 0-based positions in canonical order.

use std::fmt::Write as _;
use std::hash::Hasher;

use fnv::FnvHasher;

use crate::chordal::ChordalGraph;
use crate::clique_tree::CliqueTree;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::relation::{BipartiteGraph, WalkLog};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ids = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Vertex>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("expected a nonnegative integer, found {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match ids[..] {
            [v] => vertices.push(v),
            [u, v] if u == v => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("self-loop at vertex {u}"),
                })
            }
            [u, v] => edges.push((u, v)),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected one or two ids, found {}", ids.len()),
                })
            }
        }
    }
    Graph::new(vertices, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for &v in g.vertices() {
        if g.degree(v) == 0 {
            writeln!(out, "{v}").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Stable 64-bit FNV-1a hash of the canonical edge list.
pub fn graph_hash(g: &Graph) -> u64 {
    let mut h = FnvHasher::default();
    h.write(write_edge_list(g).as_bytes());
    h.finish()
}

pub fn write_clique_table(cg: &ChordalGraph) -> String {
    let mut out = String::new();
    for (i, c) in cg.cliques().iter().enumerate() {
        write!(out, "{i} :").unwrap();
        for v in c.iter() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_tree_edges(cg: &ChordalGraph, t: &CliqueTree) -> String {
    let mut out = String::new();
    for &(i, j) in t.edges() {
        write!(out, "{i} {j} |").unwrap();
        for v in cg.clique(i).intersection(cg.clique(j)).iter() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Clique table followed by the tree's edges.
pub fn write_tree(cg: &ChordalGraph, t: &CliqueTree) -> String {
    write_clique_table(cg) + &write_tree_edges(cg, t)
}

/// Parses a tree file. Clique-table lines, if present, must match the
/// graph's cliques; separator labels after `|` must match the endpoints'
/// intersection.
pub fn parse_tree(cg: &ChordalGraph, text: &str) -> Result<CliqueTree> {
    let mut edges = Vec::new();
    let parse_err = |line: usize, message: String| Error::Parse { line, message };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = |s: &str| -> Result<Vec<u64>> {
            s.split_whitespace()
                .map(|t| {
                    t.parse::<u64>().map_err(|_| {
                        parse_err(line_no, format!("expected an integer, found {t:?}"))
                    })
                })
                .collect()
        };
        if let Some((head, tail)) = line.split_once(':') {
            let head = nums(head)?;
            let members = nums(tail)?;
            let [i] = head[..] else {
                return Err(parse_err(
                    line_no,
                    "clique table line needs one index".into(),
                ));
            };
            let i = i as usize;
            let ok = i < cg.k()
                && cg
                    .clique(i)
                    .iter()
                    .map(u64::from)
                    .eq(members.iter().copied());
            if !ok {
                return Err(parse_err(
                    line_no,
                    format!("clique {i} does not match the graph"),
                ));
            }
        } else {
            let (ends, label) = match line.split_once('|') {
                Some((e, l)) => (e, Some(l)),
                None => (line, None),
            };
            let ends = nums(ends)?;
            let [i, j] = ends[..] else {
                return Err(parse_err(
                    line_no,
                    "edge line needs two clique indices".into(),
                ));
            };
            let (i, j) = (i as usize, j as usize);
            if i >= cg.k() || j >= cg.k() {
                return Err(parse_err(
                    line_no,
                    format!("clique index out of range 0..{}", cg.k()),
                ));
            }
            if let Some(label) = label {
                let sep = nums(label)?;
                let actual = cg.clique(i).intersection(cg.clique(j));
                if !actual.iter().map(u64::from).eq(sep.iter().copied()) {
                    return Err(parse_err(
                        line_no,
                        format!("edge label does not equal the intersection {actual}"),
                    ));
                }
            }
            edges.push((i, j));
        }
    }
    CliqueTree::from_edges(cg.k(), edges)
}

pub fn write_walk_log(g: &Graph, log: &WalkLog) -> String {
    let mut out = String::new();
    writeln!(out, "# seed {} graph {:016x}", log.seed, graph_hash(g)).unwrap();
    writeln!(
        out,
        "# start {} {}",
        log.start.side().label(),
        log.start.code()
    )
    .unwrap();
    for s in &log.steps {
        writeln!(
            out,
            "{} {} {}",
            s.step,
            s.node.side().label(),
            s.node.code()
        )
        .unwrap();
    }
    out
}

/// Tree table, sequence table and relation edges.
pub fn write_bipartite(cg: &ChordalGraph, b: &BipartiteGraph) -> String {
    let mut out = String::new();
    writeln!(out, "# trees {}", b.trees.len()).unwrap();
    for (i, t) in b.trees.iter().enumerate() {
        let edges: Vec<String> = t.edges().iter().map(|(a, c)| format!("{a}-{c}")).collect();
        writeln!(out, "T{i} {}", edges.join(" ")).unwrap();
    }
    writeln!(out, "# sequences {}", b.sequences.len()).unwrap();
    for (i, s) in b.sequences.iter().enumerate() {
        let order: Vec<String> = s.order().iter().map(usize::to_string).collect();
        writeln!(out, "P{i} {}", order.join(" ")).unwrap();
    }
    writeln!(out, "# edges {}", b.edge_count()).unwrap();
    for (t, s) in b.edges() {
        writeln!(out, "T{t} P{s}").unwrap();
    }
    debug_assert_eq!(
        cg.k(),
        b.trees.first().map_or(cg.k(), CliqueTree::node_count)
    );
    out
}
