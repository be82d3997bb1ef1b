//! Canonical labeling by equitable partition refinement and individualization,
//! with leaf-automorphism orbit pruning.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::io::graph6;

/// graph6 bytes of the canonically relabelled graph.
///
/// Two graphs are isomorphic exactly when their forms compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical form is valid graph6")
    }
}

/// Permutation `lab` with `lab[v]` the canonical position of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 1 {
        return (0..n).collect();
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(g, &mut cells);
    let mut s = Search { g, first: None, best: None, autos: Vec::new() };
    let mut prefix = Vec::new();
    s.descend(cells, &mut prefix);
    s.best.expect("search visits at least one leaf").1
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let lab = canonical_labeling(g);
    CanonicalForm(graph6::encode(&g.relabel(&lab)).into_bytes())
}

const MAX_GENERATORS: usize = 512;

struct Search<'a> {
    g: &'a Graph,
    first: Option<(Vec<u64>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !tried.is_empty() {
                let orbit = self.orbit_roots(prefix);
                let rv = find(&orbit, v);
                if tried.iter().any(|&w| find(&orbit, w) == rv) {
                    continue;
                }
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, c) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            refine(self.g, &mut child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    /// Union-find parents for orbits of stored automorphisms fixing `prefix`.
    fn orbit_roots(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        for a in &self.autos {
            if prefix.iter().all(|&p| a[p] == p) {
                for x in 0..n {
                    let (rx, ry) = (find(&parent, x), find(&parent, a[x]));
                    if rx != ry {
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
        parent
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.n();
        let mut lab = vec![0; n];
        for (pos, c) in cells.iter().enumerate() {
            lab[c[0]] = pos;
        }
        let cert = certificate(self.g, cells);
        let Some((first_cert, first_lab)) = &self.first else {
            self.first = Some((cert.clone(), lab.clone()));
            self.best = Some((cert, lab));
            return;
        };
        let (best_cert, best_lab) = self.best.as_ref().unwrap();
        let matched = if cert == *first_cert {
            Some(first_lab)
        } else if cert == *best_cert {
            Some(best_lab)
        } else {
            None
        };
        if let Some(other) = matched {
            if self.autos.len() < MAX_GENERATORS {
                let mut inv = vec![0; n];
                for (v, &p) in other.iter().enumerate() {
                    inv[p] = v;
                }
                let auto: Vec<usize> = (0..n).map(|v| inv[lab[v]]).collect();
                self.autos.push(auto);
            }
        } else if cert > *best_cert {
            self.best = Some((cert, lab));
        }
    }
}

fn find(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

/// Upper-triangle adjacency bits in graph6 column order under a discrete partition.
fn certificate(g: &Graph, cells: &[Vec<usize>]) -> Vec<u64> {
    let n = cells.len();
    let mut out = vec![0u64; (n * (n - 1) / 2).div_ceil(64)];
    let mut k = 0;
    for j in 1..n {
        let vj = cells[j][0];
        for cell in &cells[..j] {
            if g.has_edge(cell[0], vj) {
                out[k >> 6] |= 1 << (63 - (k & 63));
            }
            k += 1;
        }
    }
    out
}

/// Splits cells by neighbour counts into every cell until the partition is equitable.
///
/// New cells replace their parent in place, ordered by count vector, so the
/// result depends only on the isomorphism type of (graph, ordered partition).
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(k);
        for c in cells.iter() {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut counts = vec![0u32; k];
                    for u in g.neighbors(v) {
                        counts[cell_of[u]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != k;
        *cells = next;
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn all_labeled(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p))
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn relabeled_cycle_matches() {
        let c5 = Graph::cycle(5);
        let r = c5.relabel(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&c5), canonical_form(&r));
        assert_ne!(canonical_form(&c5), canonical_form(&Graph::path(5)));
    }

    #[test]
    fn four_vertex_classes() {
        let forms: HashSet<_> = all_labeled(4).iter().map(canonical_form).collect();
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn five_vertex_classes() {
        let forms: HashSet<_> = all_labeled(5).iter().map(canonical_form).collect();
        assert_eq!(forms.len(), 34);
    }

    #[test]
    fn regular_graphs_need_individualization() {
        let a = Graph::cycle(6);
        let b = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert_ne!(canonical_form(&a), canonical_form(&b));
        let k33 = Graph::complete_bipartite(3, 3);
        let prism = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_ne!(canonical_form(&k33), canonical_form(&prism));
        assert_eq!(canonical_form(&k33), canonical_form(&k33.relabel(&[5, 3, 1, 4, 2, 0])));
    }

    #[test]
    fn form_decodes_to_isomorphic_graph() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (0, 4)]).unwrap();
        let f = canonical_form(&g);
        let h = f.to_graph();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(canonical_form(&h), f);
    }
}
