//! Isomorphism classes of systems and the `(3,3)` stability census.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{compatibility_graph, enumerate, for_each_k_clique, maximal_free_sets, BudgetExceeded, EnumerationBudget, GraphFilter, Meter};
use crate::bits;
use crate::constructions::lifted_family;
use crate::graph::{canonical_form, CanonicalForm, GraphBuilder};
use crate::systems::{SystemInstance, VertexSetFamily};

/// Canonical form of the host with one tagged vertex per family member.
///
/// Each member vertex is joined to its set and to a private `K_r`; these are
/// the only `K_{r+1}` in the graph, so isomorphic encodings mean isomorphic systems.
pub fn system_canonical_form(inst: &SystemInstance) -> CanonicalForm {
    let m = inst.m();
    let r = inst.r;
    let total = inst.family.total();
    let mut b = GraphBuilder::new(m + total * (r + 1));
    for (u, v) in inst.host.edges() {
        b.edge(u, v);
    }
    let mut next = m;
    for (set, mult) in inst.family.iter() {
        for _ in 0..mult {
            let f = next;
            for &v in set {
                b.edge(f, v);
            }
            for i in 0..r {
                b.edge(f, f + 1 + i);
                for j in i + 1..r {
                    b.edge(f + 1 + i, f + 1 + j);
                }
            }
            next += r + 1;
        }
    }
    canonical_form(&b.build())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub family_size: usize,
    /// Isomorphism classes of covering `(3,3)` systems with this many sets.
    pub systems: usize,
    /// How many of them are the lifted matching-removed bipartite family.
    pub standard: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub max_m: usize,
    pub rows: Vec<StabilityRow>,
    /// Least family size from which every enumerated system is standard.
    pub threshold: Option<usize>,
}

/// Classifies every `(3,3)` system on at most `max_m` host vertices in which
/// every vertex lies in some set.
pub fn classify_33_systems(max_m: usize, budget: &EnumerationBudget) -> Result<StabilityReport, BudgetExceeded> {
    let meter = Meter::new(budget);
    let mut classes: BTreeMap<usize, BTreeSet<CanonicalForm>> = BTreeMap::new();
    let mut standard: BTreeSet<CanonicalForm> = BTreeSet::new();
    for l in (2..max_m).step_by(2) {
        if let Ok(f) = lifted_family(2, l) {
            standard.insert(system_canonical_form(&f));
        }
    }
    for m in 3..=max_m {
        let hosts = enumerate::enumerate_with(m, &GraphFilter::clique_free(3), &meter)?;
        for h in hosts {
            meter.check_time()?;
            let cands = maximal_free_sets(&h, 3, 3);
            let compat = compatibility_graph(&h, 3, &cands);
            let full = bits::full(m);
            for k in 1..=cands.len() {
                let mut any = false;
                for_each_k_clique(&compat, k, budget.max_candidates, &mut |c| {
                    any = true;
                    let mut cover = vec![0u64; full.len()];
                    for &i in c {
                        bits::or_assign(&mut cover, &cands[i]);
                    }
                    if cover == full {
                        let fam = VertexSetFamily::from_sets(c.iter().map(|&i| bits::ones(&cands[i]).collect()).collect());
                        let inst = SystemInstance::new(h.clone(), fam, 3, Some(3));
                        classes.entry(k).or_default().insert(system_canonical_form(&inst));
                    }
                    false
                })?;
                if !any {
                    break;
                }
            }
        }
    }
    let rows: Vec<StabilityRow> = classes
        .iter()
        .map(|(&k, forms)| StabilityRow {
            family_size: k,
            systems: forms.len(),
            standard: forms.iter().filter(|f| standard.contains(f)).count(),
        })
        .collect();
    let mut threshold = rows.last().map(|r| r.family_size + 1);
    for row in rows.iter().rev() {
        if row.standard == row.systems {
            threshold = Some(row.family_size);
        } else {
            break;
        }
    }
    Ok(StabilityReport { max_m, rows, threshold })
}
