//! Immutable simple graphs over `0..n` stored as fixed-width neighbour bit rows.
//!
//! Every structural operation here (blow-ups, twin quotients, cones,
//! complements, induced subgraphs) returns a new value; nothing mutates a
//! [`Graph`] after construction.

mod canon;
mod clique;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("loop at vertex {0} is not allowed")]
    Loop(usize),
    #[error("vertex {v} outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("blow-up spec has {got} entries, graph has {expected} vertices")]
    BlowUpLength { expected: usize, got: usize },
    #[error("blow-up multiplicity of vertex {0} is zero")]
    ZeroMultiplicity(usize),
}

/// Undirected simple graph with cached edge count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

/// Mutable staging area used while a graph is being assembled.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let words = bits::words_for(n);
        GraphBuilder { n, words, rows: vec![0; n * words] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::EndpointOutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let w = self.words;
        bits::set(&mut self.rows[u * w..(u + 1) * w], v);
        bits::set(&mut self.rows[v * w..(v + 1) * w], u);
        Ok(self)
    }

    /// Panicking variant for internal constructions whose endpoints are known valid.
    pub(crate) fn edge(&mut self, u: usize, v: usize) {
        self.add_edge(u, v).expect("construction produced an invalid edge");
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::test(&self.rows[u * self.words..(u + 1) * self.words], v)
    }

    pub fn build(self) -> Graph {
        let edge_count = bits::count(&self.rows) / 2;
        Graph { n: self.n, words: self.words, rows: self.rows, edge_count }
    }
}

/// Per-vertex positive copy counts for [`Graph::blow_up`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUpSpec(pub Vec<usize>);

impl BlowUpSpec {
    pub fn ones(n: usize) -> Self {
        BlowUpSpec(vec![1; n])
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Partition of the vertices into classes of equal open neighbourhood.
///
/// Classes are sorted internally and ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinPartition {
    pub classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    pub fn is_discrete(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// Classes with at least two members.
    pub fn twin_classes(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.classes.iter().filter(|c| c.len() > 1)
    }
}

impl Graph {
    /// Builds a graph from an edge list; duplicate pairs collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.edge(u, v);
            }
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = GraphBuilder::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.edge(u, v);
            }
        }
        g.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbour bit row `Γ(v)`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::test(self.row(u), v)
    }

    pub fn neighbors(&self, v: usize) -> bits::Ones<'_> {
        bits::ones(self.row(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `δ(G)`; `None` on the null graph.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Non-adjacent pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn missing_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub(crate) fn to_builder(&self) -> GraphBuilder {
        GraphBuilder { n: self.n, words: self.words, rows: self.rows.clone() }
    }

    /// In-place insertion for crate-internal completion loops.
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let w = self.words;
        if !bits::test(&self.rows[u * w..(u + 1) * w], v) {
            bits::set(&mut self.rows[u * w..(u + 1) * w], v);
            bits::set(&mut self.rows[v * w..(v + 1) * w], u);
            self.edge_count += 1;
        }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut b = self.to_builder();
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        }
    }

    /// Vertices `v` with `v < n` as a bit row.
    pub fn vertex_mask(&self) -> Vec<u64> {
        bits::full(self.n)
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut b = GraphBuilder::new(self.n);
        for (u, v) in self.edges() {
            b.edge(perm[u], perm[v]);
        }
        b.build()
    }

    pub fn twin_partition(&self) -> TwinPartition {
        let mut index: HashMap<&[u64], usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            let id = *index.entry(self.row(v)).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(v);
        }
        TwinPartition { classes }
    }

    pub fn is_twin_free(&self) -> bool {
        self.twin_partition().is_discrete()
    }

    /// Replaces vertex `v` by `spec[v]` pairwise non-adjacent copies.
    ///
    /// Copies of vertex 0 come first, then copies of vertex 1, and so on.
    pub fn blow_up(&self, spec: &BlowUpSpec) -> Result<Graph, GraphError> {
        if spec.0.len() != self.n {
            return Err(GraphError::BlowUpLength { expected: self.n, got: spec.0.len() });
        }
        if let Some(v) = spec.0.iter().position(|&m| m == 0) {
            return Err(GraphError::ZeroMultiplicity(v));
        }
        let mut offset = Vec::with_capacity(self.n + 1);
        offset.push(0);
        for &m in &spec.0 {
            offset.push(offset.last().unwrap() + m);
        }
        let mut b = GraphBuilder::new(*offset.last().unwrap());
        for (u, v) in self.edges() {
            for cu in offset[u]..offset[u + 1] {
                for cv in offset[v]..offset[v + 1] {
                    b.edge(cu, cv);
                }
            }
        }
        Ok(b.build())
    }

    /// Quotient on twin classes together with the class sizes.
    pub fn twin_quotient(&self) -> (Graph, BlowUpSpec) {
        let part = self.twin_partition();
        let mut class_of = vec![0; self.n];
        for (i, c) in part.classes.iter().enumerate() {
            for &v in c {
                class_of[v] = i;
            }
        }
        let k = part.classes.len();
        let mut b = GraphBuilder::new(k);
        for (i, c) in part.classes.iter().enumerate() {
            for u in self.neighbors(c[0]) {
                let j = class_of[u];
                if j > i {
                    b.edge(i, j);
                }
            }
        }
        let spec = BlowUpSpec(part.classes.iter().map(Vec::len).collect());
        (b.build(), spec)
    }

    /// `G^s`: adds `s` vertices `n..n+s`, each adjacent to every other vertex.
    pub fn cone(&self, s: usize) -> Graph {
        let n2 = self.n + s;
        let mut b = GraphBuilder::new(n2);
        for (u, v) in self.edges() {
            b.edge(u, v);
        }
        for c in self.n..n2 {
            for u in 0..c {
                b.edge(u, c);
            }
        }
        b.build()
    }

    pub fn complement(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for (u, v) in self.missing_edges() {
            b.edge(u, v);
        }
        b.build()
    }

    /// `G[S]`, relabelled to `0..|S|` in ascending vertex order.
    pub fn induced(&self, subset: &[usize]) -> Result<Graph, GraphError> {
        let mut vs = subset.to_vec();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            self.check_vertex(v)?;
        }
        let mut b = GraphBuilder::new(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.edge(i, j);
                }
            }
        }
        Ok(b.build())
    }

    /// `G - v` with remaining vertices renumbered in order.
    pub fn without_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Disjoint union with vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut b = GraphBuilder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.edge(u, v);
        }
        for (u, v) in other.edges() {
            b.edge(u + self.n, v + self.n);
        }
        b.build()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let mut edges = Vec::new();
        for (i, p) in pairs.iter().enumerate() {
            for (j, q) in pairs.iter().enumerate().skip(i + 1) {
                if p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1 {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(10, edges).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let g = Graph::new(0, []).unwrap();
        assert_eq!((g.n(), g.edge_count()), (0, 0));
        let c5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5.edge_count(), 5);
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn make_graph_collapses_duplicates_and_rejects_bad_pairs() {
        let g = Graph::new(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(Graph::new(3, [(0, 3)]), Err(GraphError::EndpointOutOfRange { u: 0, v: 3, n: 3 }));
        assert_eq!(Graph::new(3, [(2, 2)]), Err(GraphError::Loop(2)));
    }

    #[test]
    fn adjacency_is_symmetric_and_loop_free() {
        let g = petersen();
        for u in 0..g.n() {
            assert!(!g.has_edge(u, u));
            for v in 0..g.n() {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        let total: usize = g.degrees().iter().sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn twin_partition_examples() {
        let star = Graph::complete_bipartite(1, 4);
        assert_eq!(star.twin_partition().classes, vec![vec![0], vec![1, 2, 3, 4]]);
        let c5 = Graph::cycle(5);
        assert!(c5.twin_partition().is_discrete());
        let b = c5.blow_up(&BlowUpSpec(vec![2, 1, 1, 1, 1])).unwrap();
        let mut sizes: Vec<usize> = b.twin_partition().classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn blow_up_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.blow_up(&BlowUpSpec::ones(5)).unwrap(), c5);
        let p3 = Graph::complete(2).blow_up(&BlowUpSpec(vec![1, 2])).unwrap();
        assert_eq!((p3.n(), p3.edge_count()), (3, 2));
        let b = c5.blow_up(&BlowUpSpec(vec![2, 1, 1, 1, 1])).unwrap();
        assert_eq!((b.n(), b.edge_count()), (6, 7));
        assert_eq!(c5.blow_up(&BlowUpSpec(vec![1, 0, 1, 1, 1])), Err(GraphError::ZeroMultiplicity(1)));
        assert!(c5.blow_up(&BlowUpSpec(vec![1, 1])).is_err());
    }

    #[test]
    fn twin_quotient_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.twin_quotient(), (c5.clone(), BlowUpSpec::ones(5)));
        let (h, spec) = Graph::complete_bipartite(2, 3).twin_quotient();
        assert_eq!(h, Graph::complete(2));
        assert_eq!(spec, BlowUpSpec(vec![2, 3]));
        let (h, spec) = Graph::complete_bipartite(1, 5).twin_quotient();
        assert_eq!(h, Graph::complete(2));
        assert_eq!(spec, BlowUpSpec(vec![1, 5]));
    }

    #[test]
    fn cone_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.cone(0), c5);
        assert_eq!(Graph::empty(3).cone(1).edge_count(), 3);
        let w5 = c5.cone(1);
        assert_eq!((w5.n(), w5.edge_count()), (6, 10));
        let g = c5.cone(3);
        assert_eq!(g.edge_count(), 5 + 3 * 5 + 3);
    }

    #[test]
    fn complement_and_induced() {
        let c7 = Graph::cycle(7);
        assert_eq!(c7.complement().complement(), c7);
        let cc = c7.complement();
        assert_eq!(cc.edge_count(), 14);
        assert!((0..7).all(|v| cc.degree(v) == 4));
        assert_eq!(Graph::cycle(5).induced(&[0, 1, 2]).unwrap(), Graph::path(3));
        assert_eq!(
            Graph::cycle(5).induced(&[0, 7]),
            Err(GraphError::VertexOutOfRange { v: 7, n: 5 })
        );
    }

    #[test]
    fn large_graphs_span_many_words() {
        let n = 5000;
        let g = Graph::cycle(n);
        assert_eq!(g.edge_count(), n);
        assert!(g.has_edge(n - 1, 0));
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, n - 1]);
    }
}
