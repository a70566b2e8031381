//! Checks relating clique-tree endpoints and final cliques of perfect
//! sequences to boundary cliques. Each check enumerates trees or sequences,
//! so all of them are subject to the enumeration guards.

use std::collections::BTreeSet;

use crate::boundary::{boundary_cliques, component_of_clique};
use crate::check::CheckReport;
use crate::chordal::ChordalGraph;
use crate::clique_tree::{enumerate_clique_trees, is_unique_tree, CliqueTree};
use crate::error::{Error, Result};

fn set_of(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

/// Verifies that
/// - the cliques that are an endpoint of some clique tree are exactly the
///   boundary cliques;
/// - for every inclusion-minimal separator `S`, any two boundary cliques in
///   different components of `G - S` are simultaneously endpoints of some
///   clique tree;
/// - when the clique tree is unique, its endpoints are the boundary cliques.
pub fn endpoint_boundary_check(cg: &ChordalGraph) -> Result<Vec<CheckReport>> {
    let trees = enumerate_clique_trees(cg)?;
    endpoint_boundary_check_with(cg, &trees)
}

pub fn endpoint_boundary_check_with(
    cg: &ChordalGraph,
    trees: &[CliqueTree],
) -> Result<Vec<CheckReport>> {
    let boundary = set_of(&boundary_cliques(cg));
    let endpoint_sets: Vec<BTreeSet<usize>> =
        trees.iter().map(|t| set_of(&t.endpoints())).collect();

    let mut union_check = CheckReport::new("endpoints of clique trees = boundary cliques");
    let union: BTreeSet<usize> = endpoint_sets.iter().flatten().copied().collect();
    union_check.expect(union == boundary, || {
        format!("endpoints {union:?} vs boundary cliques {boundary:?}")
    });

    let mut pair_check = CheckReport::new("cross-component boundary pair are joint endpoints");
    if !cg.is_complete() {
        for s in cg.separators().inclusion_minimal() {
            let comps = cg.graph().without(&s).connected_components();
            let located: Vec<(usize, usize)> = boundary
                .iter()
                .filter_map(|&c| component_of_clique(cg, &comps, c).map(|m| (c, m)))
                .collect();
            for (x, &(c1, m1)) in located.iter().enumerate() {
                for &(c2, m2) in &located[x + 1..] {
                    if m1 == m2 {
                        continue;
                    }
                    let joint = endpoint_sets
                        .iter()
                        .any(|e| e.contains(&c1) && e.contains(&c2));
                    pair_check.expect(joint, || {
                        format!("S={s}: cliques {c1} and {c2} are never endpoints of one tree")
                    });
                }
            }
        }
    }

    let mut unique_check =
        CheckReport::new("unique clique tree has the boundary cliques as endpoints");
    if is_unique_tree(cg) {
        let ok = trees.len() == 1 && endpoint_sets[0] == boundary;
        unique_check.expect(ok, || {
            format!(
                "{} trees; endpoints {:?} vs boundary {boundary:?}",
                trees.len(),
                endpoint_sets.first()
            )
        });
    }
    Ok(vec![union_check, pair_check, unique_check])
}

/// Verifies that the cliques appearing last in some perfect sequence are
/// exactly the boundary cliques.
pub fn final_clique_check(cg: &ChordalGraph, max_k: usize) -> Result<CheckReport> {
    let seqs = cg.all_perfect_sequences(max_k)?;
    let last: BTreeSet<usize> = seqs.iter().map(|s| s.last()).collect();
    let boundary = set_of(&boundary_cliques(cg));
    let mut report = CheckReport::new("final cliques of perfect sequences = boundary cliques");
    report.expect(last == boundary, || {
        format!("final cliques {last:?} vs boundary cliques {boundary:?}")
    });
    Ok(report)
}

/// For every clique tree and inclusion-minimal separator `S`, the tree's
/// endpoints meet the cliques of at least two components of `G - S`.
pub fn endpoint_component_check(cg: &ChordalGraph) -> Result<CheckReport> {
    let trees = enumerate_clique_trees(cg)?;
    endpoint_component_check_with(cg, &trees)
}

pub fn endpoint_component_check_with(
    cg: &ChordalGraph,
    trees: &[CliqueTree],
) -> Result<CheckReport> {
    if cg.is_complete() {
        return Err(Error::invalid("graph is complete"));
    }
    let mut report = CheckReport::new("tree endpoints span two components of every minimal S");
    for s in cg.separators().inclusion_minimal() {
        let comps = cg.graph().without(&s).connected_components();
        // component of each clique: every clique of a chordal graph minus S
        // lies within one component plus S
        let clique_comp: Vec<Option<usize>> = cg
            .cliques()
            .iter()
            .map(|c| {
                let rest = c.difference(&s);
                let v = rest.iter().next()?;
                comps.iter().position(|comp| comp.contains(v))
            })
            .collect();
        for t in trees {
            let hit: BTreeSet<usize> = t
                .endpoints()
                .iter()
                .filter_map(|&c| clique_comp[c])
                .collect();
            report.expect(hit.len() >= 2, || {
                format!(
                    "S={s}: tree {:?} has endpoints in components {hit:?}",
                    t.edges()
                )
            });
        }
    }
    Ok(report)
}
