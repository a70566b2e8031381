//! The `analyze` report and its text rendering.

use std::fmt::Write as _;

use chordkit_core::boundary::classify;
use chordkit_core::clique_tree::{classify_trees, enumerate_clique_trees};
use chordkit_core::relation::{build_bipartite, is_connected};
use chordkit_core::{is_chordal, ChordalGraph, Error, Graph, Vertex};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueEntry {
    pub index: usize,
    pub vertices: Vec<Vertex>,
    pub simp: Vec<Vertex>,
    pub sep: Vec<Vertex>,
    pub class: String,
    pub dominant: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorEntry {
    pub vertices: Vec<Vertex>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub trees: usize,
    pub sequences: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteStats {
    pub trees: usize,
    pub sequences: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub connected: bool,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub vertices: usize,
    pub edges: usize,
    pub chordal: bool,
    pub connected: bool,
    pub cliques: Vec<CliqueEntry>,
    pub separators: Vec<SeparatorEntry>,
    /// Exact count as a decimal string.
    pub tree_count: Option<String>,
    pub unique: Option<bool>,
    pub arbitrary: Option<bool>,
    pub enumeration: Option<EnumerationStats>,
    pub bipartite: Option<BipartiteStats>,
    /// Why structure was not computed, or which optional part was skipped.
    pub findings: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub enumerate: bool,
    pub bipartite: bool,
}

impl AnalysisReport {
    pub fn new(g: &Graph, opts: AnalyzeOptions) -> Self {
        let mut r = AnalysisReport {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            chordal: is_chordal(g),
            connected: g.is_connected(),
            cliques: Vec::new(),
            separators: Vec::new(),
            tree_count: None,
            unique: None,
            arbitrary: None,
            enumeration: None,
            bipartite: None,
            findings: Vec::new(),
        };
        if g.vertex_count() == 0 {
            return r;
        }
        let cg = match ChordalGraph::new(g.clone()) {
            Ok(cg) => cg,
            Err(e) => {
                r.findings.push(e.to_string());
                return r;
            }
        };
        let classes = classify(&cg);
        r.cliques = cg
            .cliques()
            .iter()
            .zip(&classes)
            .enumerate()
            .map(|(i, (c, cl))| CliqueEntry {
                index: i,
                vertices: c.as_slice().to_vec(),
                simp: cg.simp(i).as_slice().to_vec(),
                sep: cg.sep(i).as_slice().to_vec(),
                class: cl.class.label().to_string(),
                dominant: cl.dominant,
            })
            .collect();
        r.separators = cg
            .separators()
            .iter()
            .map(|(s, m)| SeparatorEntry {
                vertices: s.as_slice().to_vec(),
                multiplicity: m,
            })
            .collect();
        let tc = classify_trees(&cg);
        r.tree_count = Some(tc.count.to_string());
        r.unique = Some(tc.unique);
        r.arbitrary = tc.arbitrary;
        if opts.enumerate {
            let trees = enumerate_clique_trees(&cg);
            let seqs =
                cg.all_perfect_sequences(chordkit_core::chordal::DEFAULT_MAX_SEQUENCE_CLIQUES);
            match (trees, seqs) {
                (Ok(t), Ok(s)) => {
                    r.enumeration = Some(EnumerationStats {
                        trees: t.len(),
                        sequences: s.len(),
                    })
                }
                (Err(e), _) | (_, Err(e)) => r.findings.push(format!("enumeration skipped: {e}")),
            }
        }
        if opts.bipartite {
            match build_bipartite(&cg) {
                Ok(b) => {
                    r.bipartite = Some(BipartiteStats {
                        trees: b.trees.len(),
                        sequences: b.sequences.len(),
                        edges: b.edge_count(),
                        min_degree: b.min_degree(),
                        connected: is_connected(&b),
                        complete: b.is_complete(),
                    })
                }
                Err(e) => r.findings.push(format!("bipartite graph skipped: {e}")),
            }
        }
        r
    }

    /// The report describes a graph the structure operations accept.
    pub fn supported(&self) -> bool {
        self.vertices == 0 || (self.chordal && self.connected)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        let line = |out: &mut String, key: &str, value: &dyn std::fmt::Display| {
            writeln!(out, "{key:<12}{value}").unwrap();
        };
        line(&mut out, "vertices", &self.vertices);
        line(&mut out, "edges", &self.edges);
        line(&mut out, "chordal", &yn(self.chordal));
        line(&mut out, "connected", &yn(self.connected));
        if !self.cliques.is_empty() {
            line(&mut out, "cliques", &self.cliques.len());
            let width = self
                .cliques
                .iter()
                .map(|c| join(&c.vertices).len())
                .max()
                .unwrap_or(0);
            for c in &self.cliques {
                let dominant = c.dominant.map_or("-".to_string(), |d| d.to_string());
                writeln!(
                    out,
                    "  {:>3} : {:<width$}  simp {{{}}}  sep {{{}}}  {}  dominant {dominant}",
                    c.index,
                    join(&c.vertices),
                    join_comma(&c.simp),
                    join_comma(&c.sep),
                    c.class
                )
                .unwrap();
            }
            line(&mut out, "separators", &self.separators.len());
            for s in &self.separators {
                writeln!(out, "  {{{}}} x{}", join_comma(&s.vertices), s.multiplicity).unwrap();
            }
        }
        if let Some(c) = &self.tree_count {
            line(&mut out, "trees", c);
        }
        if let Some(u) = self.unique {
            line(&mut out, "unique", &yn(u));
        }
        if let Some(a) = self.arbitrary {
            line(&mut out, "arbitrary", &yn(a));
        }
        if let Some(e) = &self.enumeration {
            line(
                &mut out,
                "enumerated",
                &format!("{} trees, {} sequences", e.trees, e.sequences),
            );
        }
        if let Some(b) = &self.bipartite {
            line(
                &mut out,
                "bipartite",
                &format!(
                    "{} trees, {} sequences, {} edges, min degree {}, connected {}, complete {}",
                    b.trees,
                    b.sequences,
                    b.edges,
                    b.min_degree,
                    yn(b.connected),
                    yn(b.complete)
                ),
            );
        }
        for f in &self.findings {
            line(&mut out, "finding", f);
        }
        out
    }
}

fn join(vs: &[Vertex]) -> String {
    vs.iter()
        .map(Vertex::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn join_comma(vs: &[Vertex]) -> String {
    vs.iter()
        .map(Vertex::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Exit status for a core error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedInput(_) => crate::EXIT_UNSUPPORTED,
        Error::ResourceLimit { .. } => crate::EXIT_GUARD,
        Error::InvalidArgument(_) | Error::Parse { .. } => crate::EXIT_USAGE,
    }
}
