//! Corpus-wide verification of the structural theorems.
//!
//! [`verify_graph`] runs every check on one connected chordal graph and
//! [`verify_corpus`] aggregates over many graphs in parallel. Aggregation is
//! keyed by check name, so the report does not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{
    boundary_components_check, boundary_via_removal, boundary_via_separator, classify,
    is_boundary_clique, non_adjacent_boundary_pair, CliqueClass,
};
use crate::chordal::{ChordalGraph, PerfectSequence, SeparatorCatalog};
use crate::clique_tree::{
    all_labeled_trees, all_sequences_from_tree, all_trees_from_sequence, count_clique_trees,
    enumerate_clique_trees, is_arbitrary_tree, is_clique_tree, sequence_from_tree,
    tree_from_sequence, uniqueness_formulations, CliqueTree, Tiebreak,
};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::relation::{build_bipartite, in_relation, is_connected, restriction_matches_induced};
use crate::theorems::{
    endpoint_boundary_check_with, endpoint_component_check_with, final_clique_check,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Largest clique count for perfect-sequence enumeration.
    pub sequence_max_k: usize,
    /// Largest clique count for the brute-force relation and subset checks.
    pub relation_max_k: usize,
    /// Largest clique count for checking every labelled tree.
    pub arbitrary_max_k: usize,
    /// Negative control: add a labelled tree that violates the junction
    /// property to the enumerated trees, which must make checks fail.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            sequence_max_k: 8,
            relation_max_k: 5,
            arbitrary_max_k: 6,
            inject_fault: false,
        }
    }
}

/// Outcome of one named check on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Outside the check's hypothesis or guard.
    Skip,
}

#[derive(Debug, Clone, Default)]
pub struct GraphVerdict {
    pub outcomes: Vec<(&'static str, Outcome)>,
    /// Existence claims witnessed by this graph.
    pub witnesses: BTreeSet<&'static str>,
}

impl GraphVerdict {
    fn record(&mut self, name: &'static str, ok: bool, describe: impl FnOnce() -> String) {
        let o = if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(describe())
        };
        self.outcomes.push((name, o));
    }

    fn skip(&mut self, name: &'static str) {
        self.outcomes.push((name, Outcome::Skip));
    }

    fn report(&mut self, name: &'static str, r: Result<crate::check::CheckReport>) {
        match r {
            Ok(rep) => self.record(name, rep.passed(), || rep.failures.join("; ")),
            Err(_) => self.skip(name),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcomes
            .iter()
            .all(|(_, o)| !matches!(o, Outcome::Fail(_)))
    }
}

pub const EXISTENCE_CLAIMS: [&str; 3] = [
    "boundary clique that is not strongly simplicial",
    "simplicial clique that is not boundary",
    "bipartite graph that is not complete",
];

/// Runs every check on one graph. Graphs that are not connected and chordal
/// yield a single failing outcome.
pub fn verify_graph(g: &Graph, opts: &VerifyOptions) -> GraphVerdict {
    let mut v = GraphVerdict::default();
    let cg = match ChordalGraph::new(g.clone()) {
        Ok(cg) => cg,
        Err(e) => {
            v.record("input", false, || e.to_string());
            return v;
        }
    };
    let k = cg.k();
    let sequences = cg.all_perfect_sequences(opts.sequence_max_k).ok();
    let mut trees = enumerate_clique_trees(&cg).ok();
    if opts.inject_fault {
        if let Some(ts) = trees.as_mut() {
            if let Some(bad) = all_labeled_trees(k)
                .into_iter()
                .find(|t| !is_clique_tree(&cg, t).unwrap())
            {
                ts.push(bad);
            }
        }
    }

    structure_checks(&cg, sequences.as_deref(), &mut v);
    boundary_checks(&cg, &mut v);
    tree_checks(&cg, trees.as_deref(), sequences.as_deref(), opts, &mut v);
    endpoint_checks(&cg, trees.as_deref(), opts, &mut v);
    relation_checks(&cg, trees.as_deref(), sequences.as_deref(), opts, &mut v);
    v
}

fn structure_checks(
    cg: &ChordalGraph,
    sequences: Option<&[PerfectSequence]>,
    v: &mut GraphVerdict,
) {
    let g = cg.graph();
    let cat = cg.separators();
    let in_separator: VertexSet = cat.separators().flat_map(|s| s.iter()).collect();

    let mismatch = g.vertices().iter().copied().find(|&x| {
        let a = g.is_clique(&g.open_neighborhood(x).unwrap()).unwrap();
        let b = cg.cliques_containing(&VertexSet::singleton(x)).len() == 1;
        let c = !in_separator.contains(x);
        !(a == b && b == c)
    });
    v.record("simplicial equivalence", mismatch.is_none(), || {
        format!("vertex {mismatch:?} disagrees")
    });

    if !cg.is_complete() {
        let simp = cg.simplicial_vertices();
        let pair = simp
            .iter()
            .any(|a| simp.iter().any(|b| a < b && !g.has_edge(a, b)));
        v.record("two non-adjacent simplicial vertices", simp.len() >= 2 && pair, || {
            format!("simplicial {simp}")
        });
    } else {
        v.skip("two non-adjacent simplicial vertices");
    }

    let non_clique = cat.separators().find(|s| !g.is_clique(s).unwrap());
    v.record("separators are cliques", non_clique.is_none(), || {
        format!("{non_clique:?}")
    });
    let disconnecting = cat.separators().all(|s| !g.without(s).is_connected());
    v.record("separators disconnect", disconnecting, String::new);
    v.record(
        "multiplicities sum to K-1",
        cat.total() + 1 == cg.k(),
        || format!("sum {} with K = {}", cat.total(), cg.k()),
    );

    match sequences {
        Some(seqs) => {
            let bad = seqs.iter().find(|s| &s.separator_catalog() != cat);
            v.record("multiplicity invariance", bad.is_none(), || {
                format!("sequence {:?}", bad.unwrap().order())
            });
        }
        None => v.skip("multiplicity invariance"),
    }

    let ups: Vec<Vec<usize>> = cat.separators().map(|s| cg.cliques_containing(s)).collect();
    let distinct = ups.iter().collect::<BTreeSet<_>>().len() == ups.len();
    v.record(
        "distinct separators, distinct containing cliques",
        distinct,
        String::new,
    );

    let mut partition_ok = true;
    for s in cat.inclusion_minimal() {
        let mut owners = vec![0usize; cg.k()];
        for comp in g.without(&s).connected_components() {
            let region = comp.union(&s);
            for (i, c) in cg.cliques().iter().enumerate() {
                if c.is_subset(&region) {
                    owners[i] += 1;
                }
            }
        }
        partition_ok &= owners.iter().all(|&o| o == 1);
    }
    v.record("component clique partition", partition_ok, String::new);

    let first_ok = (0..cg.k()).all(|r| {
        let s = sequence_from_tree(cg, cg.canonical_tree(), r, Tiebreak::Canonical).unwrap();
        s.first() == r && cg.is_perfect_sequence(s.order()).unwrap()
    });
    v.record(
        "every clique starts a perfect sequence",
        first_ok,
        String::new,
    );
}

fn boundary_checks(cg: &ChordalGraph, v: &mut GraphVerdict) {
    let classes = classify(cg);
    if cg.is_complete() {
        for name in [
            "boundary equivalence",
            "boundary cliques are simplicial",
            "strongly simplicial implies boundary",
            "two non-adjacent boundary cliques",
            "boundary clique in every component",
        ] {
            v.skip(name);
        }
        return;
    }
    let mut disagree = None;
    let mut remark_ok = true;
    for (i, c) in cg.cliques().iter().enumerate() {
        let (a, _) = is_boundary_clique(cg, c).unwrap();
        let b = boundary_via_separator(cg, c).unwrap();
        let r = boundary_via_removal(cg, c).unwrap();
        if !(a == b && b == r) && disagree.is_none() {
            disagree = Some((i, a, b, r));
        }
        if a && cg.simp(i).is_empty() {
            remark_ok = false;
        }
    }
    v.record("boundary equivalence", disagree.is_none(), || {
        format!("{disagree:?}")
    });
    v.record("boundary cliques are simplicial", remark_ok, String::new);

    let strong_not_boundary = (0..cg.k()).find(|&i| {
        crate::boundary::is_strongly_simplicial(cg, i) && !classes[i].class.is_boundary()
    });
    v.record(
        "strongly simplicial implies boundary",
        strong_not_boundary.is_none(),
        || format!("clique {strong_not_boundary:?}"),
    );
    if classes
        .iter()
        .any(|c| c.class == CliqueClass::BoundaryNotStronglySimplicial)
    {
        v.witnesses.insert(EXISTENCE_CLAIMS[0]);
    }
    if classes
        .iter()
        .any(|c| c.class == CliqueClass::SimplicialNotBoundary)
    {
        v.witnesses.insert(EXISTENCE_CLAIMS[1]);
    }

    v.record(
        "two non-adjacent boundary cliques",
        non_adjacent_boundary_pair(cg).is_some(),
        String::new,
    );
    v.report(
        "boundary clique in every component",
        boundary_components_check(cg),
    );
}

fn tree_checks(
    cg: &ChordalGraph,
    trees: Option<&[CliqueTree]>,
    sequences: Option<&[PerfectSequence]>,
    opts: &VerifyOptions,
    v: &mut GraphVerdict,
) {
    let k = cg.k();
    let count = count_clique_trees(cg);
    match trees {
        Some(ts) => {
            let valid = ts.iter().all(|t| is_clique_tree(cg, t).unwrap());
            let n = BigUint::from(ts.len());
            v.record("count equals enumeration", n == count && valid, || {
                format!("formula {count}, enumerated {n}, all valid {valid}")
            });
            let labels_ok = ts.iter().all(|t| {
                let labels: Vec<VertexSet> = t
                    .edges()
                    .iter()
                    .map(|&(a, b)| cg.clique(a).intersection(cg.clique(b)))
                    .collect();
                &SeparatorCatalog::from_multiset(&labels) == cg.separators()
            });
            v.record(
                "edge labels are the separator multiset",
                labels_ok,
                String::new,
            );
            let perfect = ts.iter().all(|t| {
                (0..k).all(|r| {
                    let s = sequence_from_tree(cg, t, r, Tiebreak::Canonical).unwrap();
                    cg.is_perfect_sequence(s.order()).unwrap()
                })
            });
            v.record("tree orders are perfect sequences", perfect, String::new);
        }
        None => {
            v.skip("count equals enumeration");
            v.skip("edge labels are the separator multiset");
            v.skip("tree orders are perfect sequences");
        }
    }

    match sequences {
        Some(seqs) => {
            let ok = seqs
                .iter()
                .all(|s| is_clique_tree(cg, &tree_from_sequence(cg, s)).unwrap());
            v.record("sequence trees are clique trees", ok, String::new);
        }
        None => v.skip("sequence trees are clique trees"),
    }

    if k >= 2 && k <= opts.arbitrary_max_k {
        let arbitrary = is_arbitrary_tree(cg).unwrap();
        let labeled = all_labeled_trees(k);
        let all_valid = labeled.iter().all(|t| is_clique_tree(cg, t).unwrap());
        let cayley = count == BigUint::from(k).pow(k as u32 - 2);
        v.record("arbitrariness", arbitrary == (cayley && all_valid), || {
            format!("arbitrary {arbitrary}, count {count}, all labelled trees valid {all_valid}")
        });
    } else {
        v.skip("arbitrariness");
    }

    let u = uniqueness_formulations(cg);
    let one = count == BigUint::from(1u32);
    v.record(
        "uniqueness",
        u.agree() && u.simple_and_incomparable == one,
        || format!("{u:?} with count {count}"),
    );
}

fn endpoint_checks(
    cg: &ChordalGraph,
    trees: Option<&[CliqueTree]>,
    opts: &VerifyOptions,
    v: &mut GraphVerdict,
) {
    let names = [
        "endpoints are boundary cliques",
        "joint endpoints across components",
        "unique tree endpoints",
    ];
    match trees {
        Some(ts) => {
            for (name, rep) in names
                .iter()
                .zip(endpoint_boundary_check_with(cg, ts).unwrap())
            {
                v.report(name, Ok(rep));
            }
            if cg.is_complete() {
                v.skip("endpoints span two components");
            } else {
                v.report(
                    "endpoints span two components",
                    endpoint_component_check_with(cg, ts),
                );
            }
        }
        None => {
            for name in names {
                v.skip(name);
            }
            v.skip("endpoints span two components");
        }
    }
    v.report(
        "final cliques are boundary cliques",
        final_clique_check(cg, opts.sequence_max_k),
    );
}

fn relation_checks(
    cg: &ChordalGraph,
    trees: Option<&[CliqueTree]>,
    sequences: Option<&[PerfectSequence]>,
    opts: &VerifyOptions,
    v: &mut GraphVerdict,
) {
    let k = cg.k();
    let small = k <= opts.relation_max_k;
    match (trees, sequences) {
        (Some(ts), Some(seqs)) if small => {
            let gen_trees: Vec<BTreeSet<CliqueTree>> = seqs
                .iter()
                .map(|s| all_trees_from_sequence(cg, s).into_iter().collect())
                .collect();
            let gen_seqs: Vec<BTreeSet<Vec<usize>>> = ts
                .iter()
                .map(|t| {
                    all_sequences_from_tree(cg, t, k)
                        .unwrap()
                        .iter()
                        .map(|s| s.order().to_vec())
                        .collect()
                })
                .collect();
            let mut bad = None;
            for (ti, t) in ts.iter().enumerate() {
                for (si, s) in seqs.iter().enumerate() {
                    let r = in_relation(cg, t, s).unwrap();
                    let a = gen_trees[si].contains(t);
                    let b = gen_seqs[ti].contains(s.order());
                    if !(r == a && a == b) && bad.is_none() {
                        bad = Some((ti, si, r, a, b));
                    }
                }
            }
            v.record("relation symmetry", bad.is_none(), || format!("{bad:?}"));

            // prefix sets of perfect sequences vs connected subtrees
            let mut prefixes = BTreeSet::new();
            for s in seqs {
                let mut mask = 0u32;
                for &c in s.order() {
                    mask |= 1 << c;
                    prefixes.insert(mask);
                }
            }
            let connected: BTreeSet<u32> = (1u32..1 << k)
                .filter(|&mask| {
                    let members: Vec<bool> = (0..k).map(|i| mask & (1 << i) != 0).collect();
                    ts.iter().any(|t| t.is_connected_subset(&members))
                })
                .collect();
            v.record(
                "prefix sets are connected subtrees",
                prefixes == connected,
                String::new,
            );

            let restriction_ok = (1u32..1 << k).all(|mask| {
                let subset: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
                restriction_matches_induced(cg, &subset).unwrap() != Some(false)
            });
            v.record("induced subtree restriction", restriction_ok, String::new);
        }
        _ => {
            v.skip("relation symmetry");
            v.skip("prefix sets are connected subtrees");
            v.skip("induced subtree restriction");
        }
    }

    match build_bipartite(cg) {
        Ok(b) => {
            v.record(
                "bipartite degrees positive",
                b.min_degree() >= 1,
                String::new,
            );
            v.record("bipartite connected", is_connected(&b), String::new);
            if !b.is_complete() {
                v.witnesses.insert(EXISTENCE_CLAIMS[2]);
            }
        }
        Err(_) => {
            v.skip("bipartite degrees positive");
            v.skip("bipartite connected");
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Up to a few counterexamples, as "graph-index: detail".
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub graphs: usize,
    pub checks: BTreeMap<String, CheckTally>,
    pub witnesses: BTreeMap<String, usize>,
}

const MAX_EXAMPLES: usize = 3;

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|t| t.failed == 0)
    }

    pub fn failures(&self) -> usize {
        self.checks.values().map(|t| t.failed).sum()
    }

    fn absorb(&mut self, index: usize, verdict: GraphVerdict) {
        self.graphs += 1;
        for (name, outcome) in verdict.outcomes {
            let t = self.checks.entry(name.to_string()).or_default();
            match outcome {
                Outcome::Pass => t.passed += 1,
                Outcome::Skip => t.skipped += 1,
                Outcome::Fail(d) => {
                    t.failed += 1;
                    t.examples.push(format!("{index}: {d}"));
                }
            }
        }
        for w in verdict.witnesses {
            *self.witnesses.entry(w.to_string()).or_default() += 1;
        }
    }

    fn finish(mut self) -> Self {
        for t in self.checks.values_mut() {
            t.examples.sort();
            t.examples.truncate(MAX_EXAMPLES);
        }
        for claim in EXISTENCE_CLAIMS {
            self.witnesses.entry(claim.to_string()).or_default();
        }
        self
    }

    pub fn render(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        writeln!(out, "graphs checked: {}", self.graphs).unwrap();
        let width = self.checks.keys().map(String::len).max().unwrap_or(0);
        for (name, t) in &self.checks {
            let status = if t.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} {name:<width$}  pass {:>7}  fail {:>5}  skip {:>6}",
                t.passed, t.failed, t.skipped
            )
            .unwrap();
            for e in &t.examples {
                writeln!(out, "     counterexample {e}").unwrap();
            }
        }
        for (claim, n) in &self.witnesses {
            let status = if *n > 0 { "found" } else { "not found" };
            writeln!(out, "exists: {claim}: {status} ({n} graphs)").unwrap();
        }
        out
    }
}

/// Verifies every graph, in parallel, and aggregates per check. Graph
/// indices in counterexamples refer to positions in `graphs`.
pub fn verify_corpus(graphs: &[Graph], opts: &VerifyOptions) -> SuiteReport {
    let verdicts: Vec<(usize, GraphVerdict)> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| (i, verify_graph(g, opts)))
        .collect();
    let mut report = SuiteReport::default();
    for (i, v) in verdicts {
        report.absorb(i, v);
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::exhaustive_corpus;

    #[test]
    fn small_corpus_passes() {
        let corpus = exhaustive_corpus(4);
        let r = verify_corpus(&corpus, &VerifyOptions::default());
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.graphs, 41);
    }

    #[test]
    fn injected_fault_is_detected() {
        let star = Graph::from_edges([(1, 2), (2, 3), (3, 4)]).unwrap();
        let opts = VerifyOptions {
            inject_fault: true,
            ..VerifyOptions::default()
        };
        let v = verify_graph(&star, &opts);
        assert!(!v.passed());
        let r = verify_corpus(&[star], &opts);
        assert!(r.checks["count equals enumeration"].failed == 1);
    }

    #[test]
    fn non_chordal_input_fails() {
        let c4 = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!verify_graph(&c4, &VerifyOptions::default()).passed());
    }
}
