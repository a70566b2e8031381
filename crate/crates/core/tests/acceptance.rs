//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chordkit_core::boundary::{boundary_via_removal, boundary_via_separator, is_boundary_clique};
use chordkit_core::clique_tree::{
    all_labeled_trees, all_sequences_from_tree, all_trees_from_sequence, is_arbitrary_tree,
    is_clique_tree, uniqueness_formulations,
};
use chordkit_core::format::write_walk_log;
use chordkit_core::generate::{exhaustive_corpus, random_chordal_seeded, Method};
use chordkit_core::relation::{build_bipartite, in_relation, is_connected, random_walk};
use chordkit_core::theorems::{endpoint_boundary_check, final_clique_check};
use chordkit_core::{count_clique_trees, enumerate_clique_trees, ChordalGraph, Error, Graph, Side};
use num_bigint::BigUint;
use rayon::prelude::*;

const RANDOM_GRAPHS: usize = 500;
const RANDOM_SEED_BASE: u64 = 0x5eed;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    let mut detail = summary;
    if let Some(first) = failures.first() {
        detail += &format!("; {} failures, first: {first}", failures.len());
    }
    Outcome {
        pass: failures.is_empty(),
        detail,
    }
}

fn chordal(g: &Graph) -> ChordalGraph {
    ChordalGraph::new(g.clone()).expect("corpus graphs are connected and chordal")
}

/// `count` seeded random connected chordal graphs with at most `max_n`
/// vertices and `max_k` maximal cliques, alternating generation methods.
fn random_corpus(count: usize, max_n: usize, max_k: usize, salt: u64) -> Vec<ChordalGraph> {
    let mut out = Vec::with_capacity(count);
    let mut seed = RANDOM_SEED_BASE ^ salt;
    while out.len() < count {
        let n = 1 + (seed as usize % max_n);
        let method = if seed.is_multiple_of(2) {
            Method::TreeOfCliques
        } else {
            Method::FillIn
        };
        let g = random_chordal_seeded(n, method, seed).unwrap();
        seed += 1;
        let cg = chordal(&g);
        if cg.k() <= max_k {
            out.push(cg);
        }
    }
    out
}

fn collect_failures<F>(graphs: &[ChordalGraph], f: F) -> Vec<String>
where
    F: Fn(&ChordalGraph) -> Option<String> + Sync,
{
    let mut v: Vec<(usize, String)> = graphs
        .par_iter()
        .enumerate()
        .filter_map(|(i, cg)| f(cg).map(|m| (i, m)))
        .collect();
    v.sort();
    v.into_iter()
        .map(|(i, m)| format!("graph {i} {:?}: {m}", cg_edges(&graphs[i])))
        .collect()
}

fn cg_edges(cg: &ChordalGraph) -> Vec<(u32, u32)> {
    cg.graph().edges()
}

fn criterion_1(corpus: &[ChordalGraph]) -> Outcome {
    let start = Instant::now();
    let failures = collect_failures(corpus, |cg| {
        let trees = enumerate_clique_trees(cg).ok()?;
        let valid = trees.iter().all(|t| is_clique_tree(cg, t).unwrap());
        let distinct = trees.iter().collect::<BTreeSet<_>>().len() == trees.len();
        let count = count_clique_trees(cg);
        (count != BigUint::from(trees.len()) || !valid || !distinct)
            .then(|| format!("formula {count}, enumerated {}", trees.len()))
    });
    let elapsed = start.elapsed();
    let mut failures = failures;
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("runtime {elapsed:?} exceeds 5 min"));
    }
    outcome(
        &failures,
        format!("{} graphs in {elapsed:.2?}", corpus.len()),
    )
}

fn pin(edges: &[(u32, u32)]) -> ChordalGraph {
    chordal(&Graph::from_edges(edges.iter().copied()).unwrap())
}

fn star() -> ChordalGraph {
    pin(&[(1, 2), (1, 3), (1, 4)])
}

fn criterion_2() -> Outcome {
    let cases = [
        ("star", star(), 3u32),
        ("path of three cliques", pin(&[(1, 2), (2, 3), (3, 4)]), 1),
        (
            "five-vertex example",
            pin(&[(1, 2), (2, 3), (2, 4), (3, 4), (2, 5), (4, 5)]),
            2,
        ),
    ];
    let mut failures = Vec::new();
    let mut got = Vec::new();
    for (name, cg, expected) in cases {
        let count = count_clique_trees(&cg);
        let enumerated = enumerate_clique_trees(&cg).unwrap().len();
        got.push(format!("{name}={count}"));
        if count != BigUint::from(expected) || enumerated != expected as usize {
            failures.push(format!(
                "{name}: formula {count}, enumerated {enumerated}, expected {expected}"
            ));
        }
    }
    outcome(&failures, got.join(", "))
}

fn criterion_3(corpus: &[ChordalGraph]) -> Outcome {
    let non_complete: Vec<ChordalGraph> = corpus
        .iter()
        .filter(|cg| !cg.is_complete())
        .cloned()
        .collect();
    let cliques: usize = non_complete.iter().map(ChordalGraph::k).sum();
    let failures = collect_failures(&non_complete, |cg| {
        cg.cliques().iter().enumerate().find_map(|(i, c)| {
            let a = is_boundary_clique(cg, c).unwrap().0;
            let b = boundary_via_separator(cg, c).unwrap();
            let r = boundary_via_removal(cg, c).unwrap();
            (!(a == b && b == r)).then(|| format!("clique {i}: {a} {b} {r}"))
        })
    });
    outcome(
        &failures,
        format!("{cliques} cliques in {} graphs", non_complete.len()),
    )
}

fn criterion_4(exhaustive: &[ChordalGraph]) -> Outcome {
    let failures = collect_failures(exhaustive, |cg| {
        let mut msgs: Vec<String> = endpoint_boundary_check(cg)
            .unwrap()
            .into_iter()
            .filter(|r| !r.passed())
            .map(|r| format!("{}: {}", r.name, r.failures.join("; ")))
            .collect();
        if cg.k() <= 8 {
            let r = final_clique_check(cg, 8).unwrap();
            if !r.passed() {
                msgs.push(format!("{}: {}", r.name, r.failures.join("; ")));
            }
        }
        (!msgs.is_empty()).then(|| msgs.join(" | "))
    });
    outcome(&failures, format!("{} graphs", exhaustive.len()))
}

fn criterion_5(corpus: &[ChordalGraph]) -> Outcome {
    let small: Vec<ChordalGraph> = corpus.iter().filter(|cg| cg.k() <= 5).cloned().collect();
    let pairs: usize = small
        .par_iter()
        .map(|cg| {
            let t = enumerate_clique_trees(cg).unwrap().len();
            let s = cg.all_perfect_sequences(5).unwrap().len();
            t * s
        })
        .sum();
    let failures = collect_failures(&small, |cg| {
        let k = cg.k();
        let trees = enumerate_clique_trees(cg).unwrap();
        let seqs = cg.all_perfect_sequences(5).unwrap();
        let from_seq: Vec<BTreeSet<_>> = seqs
            .iter()
            .map(|s| all_trees_from_sequence(cg, s).into_iter().collect())
            .collect();
        let from_tree: Vec<BTreeSet<Vec<usize>>> = trees
            .iter()
            .map(|t| {
                all_sequences_from_tree(cg, t, k)
                    .unwrap()
                    .iter()
                    .map(|s| s.order().to_vec())
                    .collect()
            })
            .collect();
        for (ti, t) in trees.iter().enumerate() {
            for (si, s) in seqs.iter().enumerate() {
                let r = in_relation(cg, t, s).unwrap();
                let a = from_seq[si].contains(t);
                let b = from_tree[ti].contains(s.order());
                if !(r == a && a == b) {
                    return Some(format!("tree {ti}, sequence {si}: {r} {a} {b}"));
                }
            }
        }
        None
    });
    outcome(
        &failures,
        format!("{pairs} pairs in {} graphs", small.len()),
    )
}

fn criterion_6(corpus: &[ChordalGraph], extra: &[ChordalGraph]) -> Outcome {
    let all: Vec<ChordalGraph> = corpus.iter().chain(extra).cloned().collect();
    let results: Vec<Result<bool, Error>> = all
        .par_iter()
        .map(|cg| build_bipartite(cg).map(|b| is_connected(&b)))
        .collect();
    let mut failures = Vec::new();
    let mut materialized = 0;
    let mut guarded = 0;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(true) => materialized += 1,
            Ok(false) => {
                materialized += 1;
                failures.push(format!("graph {i} {:?}: B disconnected", cg_edges(&all[i])));
            }
            Err(Error::ResourceLimit { .. }) => guarded += 1,
            Err(e) => failures.push(format!("graph {i}: {e}")),
        }
    }
    outcome(
        &failures,
        format!("{materialized} materialized, {guarded} over the pair guard"),
    )
}

fn criterion_7(corpus: &[ChordalGraph]) -> Outcome {
    let failures = collect_failures(corpus, |cg| {
        let k = cg.k();
        let count = count_clique_trees(cg);
        if (2..=6).contains(&k) {
            let arbitrary = is_arbitrary_tree(cg).unwrap();
            let all_valid = all_labeled_trees(k)
                .iter()
                .all(|t| is_clique_tree(cg, t).unwrap());
            let cayley = count == BigUint::from(k).pow(k as u32 - 2);
            if arbitrary != (cayley && all_valid) {
                return Some(format!(
                    "arbitrary {arbitrary}, count {count}, all valid {all_valid}"
                ));
            }
        }
        let u = uniqueness_formulations(cg);
        let one = count == BigUint::from(1u32);
        let each = [
            u.simple_and_incomparable,
            u.two_cliques_per_separator,
            u.two_full_components,
        ];
        (!each.iter().all(|&f| f == one)).then(|| format!("{u:?} with count {count}"))
    });
    outcome(&failures, format!("{} graphs", corpus.len()))
}

fn criterion_8() -> Outcome {
    let b = build_bipartite(&star()).unwrap();
    let got = (
        b.trees.len(),
        b.sequences.len(),
        b.edge_count(),
        is_connected(&b),
        b.is_complete(),
    );
    let expected = (3, 6, 12, true, false);
    let failures = if got == expected {
        vec![]
    } else {
        vec![format!("expected {expected:?}")]
    };
    outcome(
        &failures,
        format!(
            "trees {}, sequences {}, edges {}, connected {}, complete {}",
            got.0, got.1, got.2, got.3, got.4
        ),
    )
}

fn criterion_9() -> Outcome {
    let cg = star();
    let seed = 2024;
    let start = Instant::now();
    let log = random_walk(&cg, Side::Tree, 10_000, seed);
    let text = write_walk_log(cg.graph(), &log);
    let elapsed = start.elapsed();
    let again = write_walk_log(cg.graph(), &random_walk(&cg, Side::Tree, 10_000, seed));
    let (t, s) = log.coverage();
    let mut failures = Vec::new();
    if t + s != 9 {
        failures.push(format!("visited {t} trees and {s} sequences"));
    }
    if text.as_bytes() != again.as_bytes() {
        failures.push("logs differ for the same seed".into());
    }
    if elapsed > Duration::from_secs(1) {
        failures.push(format!("runtime {elapsed:?}"));
    }
    outcome(
        &failures,
        format!("{} states visited in {elapsed:.2?}", t + s),
    )
}

fn criterion_10(corpus: &[ChordalGraph]) -> Outcome {
    let eligible: Vec<ChordalGraph> = corpus.iter().filter(|cg| cg.k() <= 8).cloned().collect();
    let failures = collect_failures(&eligible, |cg| {
        let cat = cg.separators();
        if cat.total() + 1 != cg.k() {
            return Some(format!(
                "sum of multiplicities {} with K = {}",
                cat.total(),
                cg.k()
            ));
        }
        cg.all_perfect_sequences(8)
            .unwrap()
            .iter()
            .find(|s| &s.separator_catalog() != cat)
            .map(|s| format!("sequence {:?}", s.order()))
    });
    outcome(&failures, format!("{} graphs", eligible.len()))
}

fn main() -> ExitCode {
    let build = Instant::now();
    let exhaustive: Vec<ChordalGraph> = exhaustive_corpus(6).par_iter().map(chordal).collect();
    let random = random_corpus(RANDOM_GRAPHS, 10, 8, 1);
    let random_small = random_corpus(RANDOM_GRAPHS, 8, usize::MAX, 2);
    let corpus: Vec<ChordalGraph> = exhaustive.iter().chain(&random).cloned().collect();
    println!(
        "corpus: {} exhaustive (n <= 6) + {} random (n <= 10, K <= 8), built in {:.2?}",
        exhaustive.len(),
        random.len(),
        build.elapsed()
    );

    let criteria: Vec<Criterion> = vec![
        (
            "counting formula equals enumeration",
            Box::new(|| criterion_1(&corpus)),
        ),
        ("pinned tree counts 3, 1, 2", Box::new(criterion_2)),
        ("boundary tests agree", Box::new(|| criterion_3(&corpus))),
        (
            "endpoint and final-clique theorems",
            Box::new(|| criterion_4(&exhaustive)),
        ),
        (
            "relation symmetry for K <= 5",
            Box::new(|| criterion_5(&corpus)),
        ),
        (
            "bipartite graph connected",
            Box::new(|| criterion_6(&corpus, &random_small)),
        ),
        (
            "arbitrary and unique classifications",
            Box::new(|| criterion_7(&corpus)),
        ),
        ("star bipartite graph pin", Box::new(criterion_8)),
        ("walk coverage and reproducibility", Box::new(criterion_9)),
        (
            "multiplicity invariance",
            Box::new(|| criterion_10(&corpus)),
        ),
    ];

    let mut all_pass = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all_pass &= o.pass;
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {name} ({})", i + 1, o.detail);
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
