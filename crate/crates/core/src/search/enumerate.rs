//! Isomorphism-free graph generation by one-vertex extension and canonical dedup.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{BudgetExceeded, EnumerationBudget, Meter};
use crate::bits;
use crate::graph::{canonical_form, CanonicalForm, Graph, GraphBuilder};

/// Hereditary constraints applied while generating; each prunes whole branches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphFilter {
    /// Reject graphs containing `K_r`.
    pub clique_free: Option<usize>,
    /// Reject graphs with more edges.
    pub max_edges: Option<usize>,
}

impl GraphFilter {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn clique_free(r: usize) -> Self {
        GraphFilter { clique_free: Some(r), max_edges: None }
    }

    pub fn with_max_edges(mut self, e: usize) -> Self {
        self.max_edges = Some(e);
        self
    }

    fn is_restrictive(&self) -> bool {
        self.clique_free.is_some() || self.max_edges.is_some()
    }

    /// Whether `g` plus a vertex adjacent to `nbrs` stays admissible.
    fn admits(&self, g: &Graph, nbrs: &[u64]) -> bool {
        if let Some(e) = self.max_edges {
            if g.edge_count() + bits::count(nbrs) > e {
                return false;
            }
        }
        match self.clique_free {
            Some(r) => r >= 1 && !g.has_clique_within(nbrs, r - 1),
            None => true,
        }
    }

    fn admits_base(&self) -> bool {
        self.clique_free != Some(1) && self.clique_free != Some(0)
    }
}

/// `g` plus a new last vertex adjacent to `nbrs`.
pub fn extend(g: &Graph, nbrs: &[u64]) -> Graph {
    let n = g.n();
    let mut b = GraphBuilder::new(n + 1);
    for (u, v) in g.edges() {
        b.edge(u, v);
    }
    for u in bits::ones(nbrs) {
        b.edge(u, n);
    }
    b.build()
}

fn vertex_cap(budget: &EnumerationBudget, filter: &GraphFilter) -> usize {
    if filter.is_restrictive() {
        budget.max_vertices_filtered
    } else {
        budget.max_vertices
    }
}

/// Canonical representatives of all admissible graphs on `n` vertices, sorted by canonical form.
pub fn enumerate_graphs(
    n: usize,
    filter: &GraphFilter,
    budget: &EnumerationBudget,
) -> Result<Vec<Graph>, BudgetExceeded> {
    let meter = Meter::new(budget);
    enumerate_with(n, filter, &meter)
}

pub(crate) fn enumerate_with(n: usize, filter: &GraphFilter, meter: &Meter) -> Result<Vec<Graph>, BudgetExceeded> {
    let cap = vertex_cap(meter.budget(), filter);
    if n > cap {
        return Err(BudgetExceeded::new(format!("{n} vertices exceeds the cap of {cap}")));
    }
    Ok(levels(n, filter, meter)?.into_iter().map(|f| f.to_graph()).collect())
}

fn levels(n: usize, filter: &GraphFilter, meter: &Meter) -> Result<Vec<CanonicalForm>, BudgetExceeded> {
    let mut level = vec![canonical_form(&Graph::empty(0))];
    for k in 0..n {
        meter.check_time()?;
        if k == 0 && !filter.admits_base() {
            return Ok(Vec::new());
        }
        let graphs: Vec<Graph> = level.iter().map(|f| f.to_graph()).collect();
        let next: Vec<BTreeSet<CanonicalForm>> = graphs
            .par_iter()
            .map(|g| {
                let mut out = BTreeSet::new();
                for code in 0u64..1 << k {
                    let nbrs = [code];
                    let nbrs = if k == 0 { &[][..] } else { &nbrs[..] };
                    if filter.admits(g, nbrs) {
                        out.insert(canonical_form(&extend(g, nbrs)));
                    }
                }
                meter.add_canon(1 << k);
                out
            })
            .collect();
        let mut merged = BTreeSet::new();
        for s in next {
            merged.extend(s);
        }
        level = merged.into_iter().collect();
    }
    meter.add_graphs(level.len() as u64);
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_tables() {
        let b = EnumerationBudget::default();
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_graphs(n, &GraphFilter::none(), &b).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        let tf: Vec<usize> =
            (0..=7).map(|n| enumerate_graphs(n, &GraphFilter::clique_free(3), &b).unwrap().len()).collect();
        assert_eq!(tf, vec![1, 1, 2, 3, 7, 14, 38, 107]);
    }

    #[test]
    fn triangle_free_five_includes_c5_and_k23() {
        let b = EnumerationBudget::default();
        let gs = enumerate_graphs(5, &GraphFilter::clique_free(3), &b).unwrap();
        let forms: Vec<_> = gs.iter().map(canonical_form).collect();
        assert!(forms.contains(&canonical_form(&Graph::cycle(5))));
        assert!(forms.contains(&canonical_form(&Graph::complete_bipartite(2, 3))));
    }

    #[test]
    fn edge_cap_prunes() {
        let b = EnumerationBudget::default();
        let gs = enumerate_graphs(5, &GraphFilter::none().with_max_edges(1), &b).unwrap();
        assert_eq!(gs.len(), 2);
        assert!(enumerate_graphs(40, &GraphFilter::none(), &b).is_err());
    }
}
