//! Random graphs and systems shared by the property and acceptance suites.
#![allow(dead_code)]

use proptest::prelude::*;

use satlab::bits;
use satlab::graph::{Graph, GraphBuilder};
use satlab::systems::{maximalize, SystemInstance, VertexSetFamily};

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut b = GraphBuilder::new(n);
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[i] {
                b.add_edge(u, v).unwrap();
            }
            i += 1;
        }
    }
    b.build()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph_from(0, max_n)
}

pub fn arb_graph_from(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |b| graph_from_bits(n, &b)))
}

/// Drops every edge that would close a `K_r`, scanning in lexicographic order.
pub fn clique_free(g: &Graph, r: usize) -> Graph {
    let mut b = GraphBuilder::new(g.n());
    let mut cur = Graph::empty(g.n());
    for (u, v) in g.edges() {
        let common = bits::and(cur.row(u), cur.row(v));
        if !cur.has_clique_within(&common, r - 2) {
            b.add_edge(u, v).unwrap();
            cur = cur.with_edge(u, v).unwrap();
        }
    }
    b.build()
}

/// All maximally `K_{r-1}`-free vertex sets of `h`, by brute force.
pub fn maximal_free_subsets(h: &Graph, r: usize) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut out = Vec::new();
    for code in 0u32..1 << n {
        let set: Vec<usize> = (0..n).filter(|&v| code >> v & 1 == 1).collect();
        let mask = bits::from_indices(n, set.iter().copied());
        if h.has_clique_within(&mask, r - 1) {
            continue;
        }
        let dominated = (0..n)
            .filter(|&w| code >> w & 1 == 0)
            .all(|w| h.has_clique_within(&bits::and(&mask, h.row(w)), r - 2));
        if dominated {
            out.push(set);
        }
    }
    out
}

pub fn pick<T: Clone>(items: &[T], sel: u64) -> Vec<T> {
    items.iter().enumerate().filter(|(i, _)| sel.rotate_left(*i as u32 / 64) >> (i % 64) & 1 == 1).map(|(_, x)| x.clone()).collect()
}

/// Hosts and families mixing valid maximal-free sets with occasional arbitrary sets and repeats.
pub fn arb_r_system() -> impl Strategy<Value = SystemInstance> {
    (arb_graph(7), 3usize..=4, any::<u64>(), prop::option::weighted(0.2, any::<u8>()), any::<bool>()).prop_map(
        |(g, r, sel, extra, dup)| {
            let host = clique_free(&g, r);
            let n = host.n();
            let cands = maximal_free_subsets(&host, r);
            let mut sets = pick(&cands, sel);
            if let Some(x) = extra {
                sets.push((0..n).filter(|&v| x >> (v % 8) & 1 == 1).collect());
            }
            let mut mults = vec![1; sets.len()];
            if dup && !mults.is_empty() {
                mults[0] = 2;
            }
            let family = VertexSetFamily::new(sets, mults).unwrap();
            SystemInstance::new(host, family, r, None)
        },
    )
}

/// Valid `(3,t)'` systems: triangle-free host and distinct maximal independent `t`-sets.
pub fn arb_primed_system() -> impl Strategy<Value = SystemInstance> {
    (arb_graph_from(1, 7), any::<u64>(), any::<u8>()).prop_map(|(g, sel, tsel)| {
        let host = clique_free(&g, 3);
        let cands = maximal_free_subsets(&host, 3);
        let mut sizes: Vec<usize> = cands.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let t = sizes[tsel as usize % sizes.len()];
        let same: Vec<Vec<usize>> = cands.into_iter().filter(|s| s.len() == t).collect();
        let mut sets = pick(&same, sel);
        if sets.is_empty() {
            sets.push(same[0].clone());
        }
        SystemInstance::new(host, VertexSetFamily::from_sets(sets), 3, Some(t)).primed()
    })
}

/// Valid `(r,t)` systems: uniform pairwise-compatible families, maximalized.
pub fn arb_maximal_rt_system() -> impl Strategy<Value = SystemInstance> {
    (arb_graph(7), 3usize..=4, any::<u64>(), any::<u8>()).prop_filter_map("no nonempty family", |(g, r, sel, tsel)| {
        let host = clique_free(&g, r);
        let cands = maximal_free_subsets(&host, r);
        let mut sizes: Vec<usize> = cands.iter().map(Vec::len).filter(|&t| t + 2 >= r).collect();
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.is_empty() {
            return None;
        }
        let t = sizes[tsel as usize % sizes.len()];
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        for s in pick(&cands, sel).into_iter().filter(|s| s.len() == t) {
            let ok = chosen.iter().all(|c| {
                let inter: Vec<usize> = s.iter().copied().filter(|v| c.contains(v)).collect();
                host.has_clique_within(&bits::from_indices(host.n(), inter), r - 2)
            });
            if ok {
                chosen.push(s);
            }
        }
        if chosen.is_empty() {
            return None;
        }
        let inst = SystemInstance::new(host, VertexSetFamily::from_sets(chosen), r, Some(t));
        maximalize(&inst).ok()
    })
}
