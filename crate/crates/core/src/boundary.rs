//! Boundary (simply separated) and strongly simplicial cliques.
//!
//! A maximal clique `C` is a boundary clique when some other maximal clique
//! `C'` (a dominant clique) satisfies `Sep(C) = C ∩ C'`, where `Sep(C)` is
//! the set of non-simplicial vertices of `C`. Equivalently `Sep(C)` is a
//! minimal vertex separator, or deleting `C` leaves a chordal graph whose
//! maximal cliques are exactly the remaining ones.

use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::chordal::{maximal_cliques, ChordalGraph, SeparatorCatalog};
use crate::error::{Error, Result};
use crate::graph::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliqueClass {
    NotSimplicial,
    SimplicialNotBoundary,
    BoundaryNotStronglySimplicial,
    StronglySimplicial,
}

impl CliqueClass {
    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            CliqueClass::BoundaryNotStronglySimplicial | CliqueClass::StronglySimplicial
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            CliqueClass::NotSimplicial => "not-simplicial",
            CliqueClass::SimplicialNotBoundary => "simplicial-not-boundary",
            CliqueClass::BoundaryNotStronglySimplicial => "boundary-not-strongly-simplicial",
            CliqueClass::StronglySimplicial => "strongly-simplicial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueClassification {
    pub clique: usize,
    pub class: CliqueClass,
    pub dominant: Option<usize>,
    pub boundary_separator: Option<VertexSet>,
}

/// Canonically first clique `C' != C` with `C ∩ C' = Sep(C)`.
pub fn dominant_clique(cg: &ChordalGraph, i: usize) -> Option<usize> {
    let sep = cg.sep(i);
    let c = cg.clique(i);
    (0..cg.k()).find(|&j| j != i && c.intersection(cg.clique(j)) == sep)
}

/// Boundary test by dominant clique. Returns the witness when one exists.
pub fn is_boundary_clique(cg: &ChordalGraph, c: &VertexSet) -> Result<(bool, Option<usize>)> {
    let i = cg.clique_index(c)?;
    let d = dominant_clique(cg, i);
    Ok((d.is_some(), d))
}

fn reject_complete(cg: &ChordalGraph) -> Result<()> {
    if cg.is_complete() {
        return Err(Error::invalid("graph is complete"));
    }
    Ok(())
}

/// Boundary test: `Sep(C)` is itself a minimal vertex separator.
pub fn boundary_via_separator(cg: &ChordalGraph, c: &VertexSet) -> Result<bool> {
    reject_complete(cg)?;
    let i = cg.clique_index(c)?;
    Ok(cg.separators().contains(&cg.sep(i)))
}

/// Boundary test: the graph induced by the other cliques' vertices is
/// chordal and its maximal cliques are exactly the other cliques.
pub fn boundary_via_removal(cg: &ChordalGraph, c: &VertexSet) -> Result<bool> {
    reject_complete(cg)?;
    let i = cg.clique_index(c)?;
    let others: Vec<VertexSet> = (0..cg.k())
        .filter(|&j| j != i)
        .map(|j| cg.clique(j).clone())
        .collect();
    let support: VertexSet = others.iter().flat_map(|c| c.iter()).collect();
    let h = cg.graph().induced_subgraph(&support)?;
    Ok(match maximal_cliques(&h) {
        Ok(cs) => cs.as_slice() == others.as_slice(),
        Err(_) => false,
    })
}

/// `Simp(C)` is non-empty and the closed neighborhoods of `N[Simp(C)]` form
/// a chain under inclusion.
pub fn is_strongly_simplicial(cg: &ChordalGraph, i: usize) -> bool {
    let simp = cg.simp(i);
    if simp.is_empty() {
        return false;
    }
    let g = cg.graph();
    let mut reach = VertexSet::new();
    for v in simp.iter() {
        reach = reach.union(&g.closed_neighborhood(v).unwrap());
    }
    let mut hoods: Vec<VertexSet> = reach
        .iter()
        .map(|v| g.closed_neighborhood(v).unwrap())
        .collect();
    hoods.sort_by_key(VertexSet::len);
    hoods.windows(2).all(|w| w[0].is_subset(&w[1]))
}

pub fn strongly_simplicial_cliques(cg: &ChordalGraph) -> Vec<usize> {
    (0..cg.k())
        .filter(|&i| is_strongly_simplicial(cg, i))
        .collect()
}

pub fn classify_clique(cg: &ChordalGraph, i: usize) -> CliqueClassification {
    let simp = cg.simp(i);
    // A complete graph's only clique has no dominant clique but is
    // strongly simplicial.
    if cg.is_complete() {
        return CliqueClassification {
            clique: i,
            class: CliqueClass::StronglySimplicial,
            dominant: None,
            boundary_separator: None,
        };
    }
    let dominant = dominant_clique(cg, i);
    let class = if simp.is_empty() {
        CliqueClass::NotSimplicial
    } else if dominant.is_none() {
        CliqueClass::SimplicialNotBoundary
    } else if is_strongly_simplicial(cg, i) {
        CliqueClass::StronglySimplicial
    } else {
        CliqueClass::BoundaryNotStronglySimplicial
    };
    CliqueClassification {
        clique: i,
        class,
        dominant,
        boundary_separator: dominant.map(|_| cg.sep(i)),
    }
}

pub fn classify(cg: &ChordalGraph) -> Vec<CliqueClassification> {
    (0..cg.k()).map(|i| classify_clique(cg, i)).collect()
}

/// Indices of boundary cliques. For a complete graph this is its only clique.
pub fn boundary_cliques(cg: &ChordalGraph) -> Vec<usize> {
    classify(cg)
        .into_iter()
        .filter(|c| c.class.is_boundary())
        .map(|c| c.clique)
        .collect()
}

pub fn inclusion_minimal_separators(cat: &SeparatorCatalog) -> Vec<VertexSet> {
    cat.inclusion_minimal()
}

/// Index into `components` of the component of `G - s` holding the simplicial
/// vertices of clique `i`. Simplicial vertices never lie in a separator.
pub(crate) fn component_of_clique(
    cg: &ChordalGraph,
    components: &[VertexSet],
    i: usize,
) -> Option<usize> {
    let v = cg.simp(i).iter().next()?;
    components.iter().position(|comp| comp.contains(v))
}

/// For every inclusion-minimal separator `S` and every component of `G - S`,
/// looks for a boundary clique whose simplicial vertices lie in it.
pub fn boundary_components_check(cg: &ChordalGraph) -> Result<CheckReport> {
    reject_complete(cg)?;
    let mut report = CheckReport::new("boundary clique in every component");
    let boundary = boundary_cliques(cg);
    for s in cg.separators().inclusion_minimal() {
        let comps = cg.graph().without(&s).connected_components();
        for (m, comp) in comps.iter().enumerate() {
            let found = boundary
                .iter()
                .any(|&i| component_of_clique(cg, &comps, i) == Some(m));
            report.expect(found, || {
                format!("S={s}: no boundary clique inside component {comp}")
            });
        }
    }
    Ok(report)
}

/// Two boundary cliques whose simplicial parts are non-adjacent, if any.
pub fn non_adjacent_boundary_pair(cg: &ChordalGraph) -> Option<(usize, usize)> {
    let b = boundary_cliques(cg);
    let g = cg.graph();
    for (x, &i) in b.iter().enumerate() {
        for &j in &b[x + 1..] {
            let si = cg.simp(i);
            let sj = cg.simp(j);
            let adjacent = si.iter().any(|u| sj.iter().any(|v| g.has_edge(u, v)));
            if !adjacent {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cg(g: Graph) -> ChordalGraph {
        ChordalGraph::new(g).unwrap()
    }

    fn path3() -> ChordalGraph {
        cg(Graph::from_edges([(1, 2), (2, 3)]).unwrap())
    }

    fn star() -> ChordalGraph {
        cg(Graph::from_edges([(1, 2), (1, 3), (1, 4)]).unwrap())
    }

    fn five() -> ChordalGraph {
        cg(Graph::from_cliques(&[
            [1, 2].into(),
            [2, 3, 4].into(),
            [2, 4, 5].into(),
        ]))
    }

    #[test]
    fn dominant_examples() {
        let g = path3();
        assert_eq!(
            is_boundary_clique(&g, &[1, 2].into()).unwrap(),
            (true, Some(1))
        );
        assert_eq!(
            is_boundary_clique(&g, &[2, 3].into()).unwrap(),
            (true, Some(0))
        );
        let g = star();
        for c in g.cliques().iter() {
            assert!(is_boundary_clique(&g, c).unwrap().0);
        }
        let g = five();
        assert_eq!(
            is_boundary_clique(&g, &[2, 3, 4].into()).unwrap(),
            (true, Some(2))
        );
        assert_eq!(
            is_boundary_clique(&g, &[1, 2].into()).unwrap(),
            (true, Some(1))
        );
        assert!(is_boundary_clique(&g, &[1, 3].into()).is_err());
    }

    #[test]
    fn separator_and_removal_examples() {
        let g = path3();
        assert!(boundary_via_separator(&g, &[1, 2].into()).unwrap());
        assert!(boundary_via_removal(&g, &[1, 2].into()).unwrap());
        let g = five();
        assert!(boundary_via_separator(&g, &[2, 3, 4].into()).unwrap());
        assert!(boundary_via_removal(&g, &[2, 3, 4].into()).unwrap());
        let k = cg(Graph::complete(3));
        assert!(boundary_via_separator(&k, &[0, 1, 2].into()).is_err());
        assert!(boundary_via_removal(&k, &[0, 1, 2].into()).is_err());
    }

    #[test]
    fn simplicial_not_boundary_exists() {
        // Sep({1,2,3}) = {1,3} is the union of two separators, not one.
        let g = cg(Graph::from_cliques(&[
            [1, 2, 3].into(),
            [1, 4].into(),
            [3, 5].into(),
        ]));
        let c: VertexSet = [1, 2, 3].into();
        assert_eq!(g.simp_sep_partition(&c).unwrap().1, [1, 3].into());
        assert!(!is_boundary_clique(&g, &c).unwrap().0);
        assert!(!boundary_via_separator(&g, &c).unwrap());
        assert!(!boundary_via_removal(&g, &c).unwrap());
        let i = g.clique_index(&c).unwrap();
        assert_eq!(
            classify_clique(&g, i).class,
            CliqueClass::SimplicialNotBoundary
        );
    }

    #[test]
    fn strongly_simplicial_examples() {
        let g = path3();
        assert_eq!(strongly_simplicial_cliques(&g), vec![0, 1]);
        let k = cg(Graph::complete(4));
        assert_eq!(strongly_simplicial_cliques(&k), vec![0]);
        assert_eq!(classify(&k)[0].class, CliqueClass::StronglySimplicial);
        assert_eq!(boundary_cliques(&k), vec![0]);
    }

    #[test]
    fn classification_invariants_on_five() {
        let g = five();
        for c in classify(&g) {
            assert_eq!(c.dominant.is_some(), c.class.is_boundary());
            if let Some(d) = c.dominant {
                assert_eq!(
                    g.clique(c.clique).intersection(g.clique(d)),
                    g.sep(c.clique)
                );
                assert_eq!(c.boundary_separator, Some(g.sep(c.clique)));
            }
        }
    }

    #[test]
    fn inclusion_minimal_examples() {
        assert_eq!(
            inclusion_minimal_separators(five().separators()),
            vec![[2].into()]
        );
    }

    #[test]
    fn components_check_examples() {
        let r = boundary_components_check(&path3()).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 2);
        let r = boundary_components_check(&star()).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 3);
        assert!(boundary_components_check(&cg(Graph::complete(2))).is_err());
    }

    #[test]
    fn non_adjacent_pair_examples() {
        assert_eq!(non_adjacent_boundary_pair(&path3()), Some((0, 1)));
        assert!(non_adjacent_boundary_pair(&cg(Graph::complete(3))).is_none());
    }
}
