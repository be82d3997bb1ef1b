//! `K_r`-freeness, `K_r`-saturation, saturating completion and the twin
//! conditions used by the twin-free and minimum-degree variants.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SaturationError {
    #[error("clique order r={0} must be at least 3")]
    SmallR(usize),
    #[error("graph already contains K_{r}: {clique:?}")]
    ContainsClique { r: usize, clique: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub is_free: bool,
    pub is_saturated: bool,
    /// Lexicographically first missing edge whose addition creates no `K_r`.
    pub violating_pair: Option<(usize, usize)>,
    pub clique_witness: Option<Vec<usize>>,
}

fn check_r(r: usize) -> Result<(), SaturationError> {
    if r < 3 {
        Err(SaturationError::SmallR(r))
    } else {
        Ok(())
    }
}

/// First pair `(u, v)` of non-adjacent vertices with no `K_{r-2}` in their
/// common neighbourhood.
pub fn first_unsaturated_pair(g: &Graph, r: usize) -> Option<(usize, usize)> {
    let n = g.n();
    if r == 3 {
        // Every non-neighbour must be reachable in two steps.
        return (0..n).into_par_iter().find_map_first(|u| {
            let mut reach = vec![0u64; g.words()];
            for w in g.neighbors(u) {
                bits::or_assign(&mut reach, g.row(w));
            }
            bits::or_assign(&mut reach, g.row(u));
            bits::set(&mut reach, u);
            (u + 1..n).find(|&v| !bits::test(&reach, v)).map(|v| (u, v))
        });
    }
    (0..n).into_par_iter().find_map_first(|u| {
        (u + 1..n).find_map(|v| {
            if g.has_edge(u, v) {
                return None;
            }
            let common = bits::and(g.row(u), g.row(v));
            (!g.has_clique_within(&common, r - 2)).then_some((u, v))
        })
    })
}

/// Some `K_r` in `g`; uses an edge scan when `r = 3`.
pub fn find_k_clique(g: &Graph, r: usize) -> Option<Vec<usize>> {
    if r == 3 {
        return (0..g.n()).into_par_iter().find_map_first(|u| {
            g.neighbors(u).filter(|&v| v > u).find_map(|v| {
                let common = bits::and(g.row(u), g.row(v));
                bits::ones(&common).next().map(|w| {
                    let mut c = vec![u, v, w];
                    c.sort_unstable();
                    c
                })
            })
        });
    }
    g.find_clique(r)
}

pub fn saturation_report(g: &Graph, r: usize) -> Result<SaturationReport, SaturationError> {
    check_r(r)?;
    if let Some(clique) = find_k_clique(g, r) {
        return Ok(SaturationReport {
            is_free: false,
            is_saturated: false,
            violating_pair: None,
            clique_witness: Some(clique),
        });
    }
    let violating_pair = first_unsaturated_pair(g, r);
    Ok(SaturationReport {
        is_free: true,
        is_saturated: violating_pair.is_none(),
        violating_pair,
        clique_witness: None,
    })
}

/// `K_r`-saturated; `false` for `r < 3`.
pub fn is_saturated(g: &Graph, r: usize) -> bool {
    saturation_report(g, r).map(|s| s.is_saturated).unwrap_or(false)
}

/// Adds missing edges in lexicographic order whenever the graph stays `K_r`-free.
///
/// One pass suffices: a rejected pair already has a `K_{r-2}` in its common
/// neighbourhood, and later additions only enlarge it.
pub fn saturate(g: &Graph, r: usize) -> Result<Graph, SaturationError> {
    check_r(r)?;
    if let Some(clique) = find_k_clique(g, r) {
        return Err(SaturationError::ContainsClique { r, clique });
    }
    let n = g.n();
    let mut cur = g.clone();
    for u in 0..n {
        for v in u + 1..n {
            if cur.has_edge(u, v) {
                continue;
            }
            let common = bits::and(cur.row(u), cur.row(v));
            if !cur.has_clique_within(&common, r - 2) {
                cur.insert_edge(u, v);
            }
        }
    }
    Ok(cur)
}

/// Saturated, `δ(G) ≥ t`, and every pair of twins has a common neighbour of degree `t`.
pub fn is_tsat_witness(g: &Graph, r: usize, t: usize) -> bool {
    if !is_saturated(g, r) {
        return false;
    }
    let deg = g.degrees();
    if deg.iter().any(|&d| d < t) {
        return false;
    }
    let part = g.twin_partition();
    // Twins share their neighbourhood, so one class test covers all its pairs.
    let ok = part.twin_classes().all(|class| g.neighbors(class[0]).any(|w| deg[w] == t));
    ok
}

/// Saturated and twin-free.
pub fn is_twin_free_saturated(g: &Graph, r: usize) -> bool {
    is_saturated(g, r) && g.is_twin_free()
}
