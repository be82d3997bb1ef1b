//! Explicit graphs and systems: the clique-plus-independent-set extremal
//! graph, sporadic twin-free saturated graphs, pair-shattering sets, the
//! `(H_{t,l}, F_{t,l})` families and the large witness pipelines built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits;
use crate::graph::{Graph, GraphBuilder};
use crate::systems::{
    self, assemble, check_maximal, check_system, cleanup_all, SystemError, SystemInstance, VertexSetFamily,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("no twin-free K_{r}-saturated graph on {n} vertices ({case})")]
    Nonexistent { n: usize, r: usize, case: String },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("unknown construction name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// `K_{r-2}` joined to an independent set of size `n - (r - 2)`.
pub fn ehm_graph(n: usize, r: usize) -> Result<Graph, ConstructionError> {
    if r < 3 || n < r - 2 {
        return Err(ConstructionError::BadParams(format!("need r >= 3 and n >= r-2, got n={n}, r={r}")));
    }
    let k = r - 2;
    let mut b = GraphBuilder::new(n);
    for u in 0..k {
        for v in u + 1..n {
            b.edge(u, v);
        }
    }
    Ok(b.build())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedGraph {
    C5,
    C7Complement,
    C8TwoChordsComplement,
    Wagner,
    Petersen,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 5] = [
        NamedGraph::C5,
        NamedGraph::C7Complement,
        NamedGraph::C8TwoChordsComplement,
        NamedGraph::Wagner,
        NamedGraph::Petersen,
    ];

    /// Clique order for which the graph is twin-free and saturated.
    pub fn saturated_r(self) -> usize {
        match self {
            NamedGraph::C5 | NamedGraph::Wagner | NamedGraph::Petersen => 3,
            NamedGraph::C7Complement | NamedGraph::C8TwoChordsComplement => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedGraph::C5 => "c5",
            NamedGraph::C7Complement => "c7_complement",
            NamedGraph::C8TwoChordsComplement => "c8_two_chords_complement",
            NamedGraph::Wagner => "wagner",
            NamedGraph::Petersen => "petersen",
        }
    }

    pub fn graph(self) -> Graph {
        match self {
            NamedGraph::C5 => Graph::cycle(5),
            NamedGraph::C7Complement => Graph::cycle(7).complement(),
            NamedGraph::C8TwoChordsComplement => {
                let c8 = Graph::cycle(8);
                c8.with_edge(0, 4).and_then(|g| g.with_edge(1, 5)).expect("chords in range").complement()
            }
            NamedGraph::Wagner => {
                Graph::new(8, (0..8).map(|i| (i, (i + 1) % 8)).chain((0..4).map(|i| (i, i + 4)))).unwrap()
            }
            NamedGraph::Petersen => {
                let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
                let mut b = GraphBuilder::new(10);
                for (i, p) in pairs.iter().enumerate() {
                    for (j, q) in pairs.iter().enumerate().skip(i + 1) {
                        if p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1 {
                            b.edge(i, j);
                        }
                    }
                }
                b.build()
            }
        }
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGraph {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedGraph::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| ConstructionError::UnknownName(s.to_string()))
    }
}

pub fn named_small(name: &str) -> Result<Graph, ConstructionError> {
    Ok(name.parse::<NamedGraph>()?.graph())
}

/// Binary sequences of length `k`; sequence `x` has `x_i` at bit `k - 1 - i`,
/// so numeric order is lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatteringSet {
    pub k: usize,
    pub sequences: Vec<u64>,
}

impl ShatteringSet {
    pub fn coord(&self, x: u64, i: usize) -> bool {
        x >> (self.k - 1 - i) & 1 == 1
    }

    /// Every coordinate pair sees all four patterns.
    pub fn shatters_all_pairs(&self) -> bool {
        shatters_all_pairs(self.k, &self.sequences)
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn render(&self, x: u64) -> String {
        (0..self.k).map(|i| if self.coord(x, i) { '1' } else { '0' }).collect()
    }
}

pub fn shatters_all_pairs(k: usize, seqs: &[u64]) -> bool {
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let mut seen = 0u8;
            for &x in seqs {
                let a = (x >> (k - 1 - i) & 1) as u8;
                let b = (x >> (k - 1 - j) & 1) as u8;
                seen |= 1 << (a * 2 + b);
            }
            seen == 0b1111
        })
    })
}

/// The base shattering set for `k`, padded to `size` with the least unused sequences.
pub fn shattering_set(k: usize, size: Option<usize>) -> Result<ShatteringSet, ConstructionError> {
    if !(2..=20).contains(&k) {
        return Err(ConstructionError::BadParams(format!("k={k} outside 2..=20")));
    }
    let even = |x: &u64| x.count_ones() % 2 == 0;
    let mut seqs: Vec<u64> = match k {
        2 => (0..4).collect(),
        3 => (0..8).filter(even).collect(),
        _ => (1..1u64 << k).filter(even).collect(),
    };
    if let Some(q) = size {
        if q < seqs.len() || q > 1 << k {
            return Err(ConstructionError::BadParams(format!(
                "size {q} outside {}..={} for k={k}",
                seqs.len(),
                1u64 << k
            )));
        }
        let mut x = 0u64;
        while seqs.len() < q {
            if !seqs.contains(&x) {
                seqs.push(x);
            }
            x += 1;
        }
        seqs.sort_unstable();
    }
    Ok(ShatteringSet { k, sequences: seqs })
}

/// The twin-free triangle-saturated graph on matched pairs, a shattering set and an apex.
///
/// Vertex `(i, b)` of the matching is `2i + b`; sequences follow at `2k..`,
/// and the apex is last.
pub fn shattering_graph(s: &ShatteringSet) -> Graph {
    let k = s.k;
    let q = s.len();
    let apex = 2 * k + q;
    let mut b = GraphBuilder::new(apex + 1);
    for i in 0..k {
        b.edge(2 * i, 2 * i + 1);
    }
    for (j, &x) in s.sequences.iter().enumerate() {
        let xv = 2 * k + j;
        for i in 0..k {
            b.edge(xv, 2 * i + s.coord(x, i) as usize);
        }
        b.edge(xv, apex);
    }
    b.build()
}

/// Which branch of the existence argument produced a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinFreeBranch {
    Complete,
    C5,
    C7Complement,
    C8TwoChordsComplement,
    Wagner,
    Petersen,
    Shattering,
}

/// Reason no twin-free `K_r`-saturated graph exists on `n` vertices, if any.
pub fn nonexistence_case(n: usize, r: usize) -> Option<&'static str> {
    if n == r {
        Some("n = r")
    } else if n == r + 1 {
        Some("n = r + 1")
    } else if r == 3 && n == 6 {
        Some("r = 3, n = 6")
    } else if r == 3 && n == 7 {
        Some("r = 3, n = 7")
    } else {
        None
    }
}

pub fn twin_free_saturated(n: usize, r: usize) -> Result<Graph, ConstructionError> {
    twin_free_saturated_with_branch(n, r).map(|(g, _)| g)
}

pub fn twin_free_saturated_with_branch(n: usize, r: usize) -> Result<(Graph, TwinFreeBranch), ConstructionError> {
    if r < 3 {
        return Err(ConstructionError::BadParams(format!("r={r} must be at least 3")));
    }
    if let Some(case) = nonexistence_case(n, r) {
        return Err(ConstructionError::Nonexistent { n, r, case: case.to_string() });
    }
    if n < r {
        return Ok((Graph::complete(n), TwinFreeBranch::Complete));
    }
    let base = n - r + 3;
    let (g, branch) = match base {
        5 => (NamedGraph::C5.graph().cone(r - 3), TwinFreeBranch::C5),
        6 => (NamedGraph::C7Complement.graph().cone(r - 4), TwinFreeBranch::C7Complement),
        7 => (NamedGraph::C8TwoChordsComplement.graph().cone(r - 4), TwinFreeBranch::C8TwoChordsComplement),
        8 => (NamedGraph::Wagner.graph().cone(r - 3), TwinFreeBranch::Wagner),
        10 => (NamedGraph::Petersen.graph().cone(r - 3), TwinFreeBranch::Petersen),
        _ => {
            let mut k = 2;
            while (1usize << k) + 2 * k + 1 < base {
                k += 1;
            }
            let s = shattering_set(k, Some(base - 2 * k - 1))?;
            (shattering_graph(&s).cone(r - 3), TwinFreeBranch::Shattering)
        }
    };
    debug_assert_eq!(g.n(), n);
    Ok((g, branch))
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Expected `|H_{t,l}|`.
pub fn family_host_order(t: usize, l: usize) -> usize {
    match t {
        2 => l,
        3 => 2 * l,
        4 => 2 * l * l,
        _ => t * l * l,
    }
}

/// Expected `|F_{t,l}|`.
pub fn family_size(t: usize, l: usize) -> usize {
    match t {
        2 => l / 2,
        3 => 2 * l,
        4 => l * l * (l - 1) * (l - 1) / 2,
        _ => l.pow(t as u32),
    }
}

/// Expected `e(H_{t,l})` where a closed form is known.
pub fn family_host_edges(t: usize, l: usize) -> Option<usize> {
    match t {
        2 => Some(ceil_div(l * l - 2 * l, 4)),
        4 => Some(l.pow(4) - 2 * l.pow(3) + 2 * l * l),
        t if t >= 5 => Some(t * l * l * 2 * l * (l - 1) / 2),
        _ => None,
    }
}

fn check_family_params(t: usize, l: usize) -> Result<(), ConstructionError> {
    let min_l = if t == 3 { 3 } else { 2 };
    if t < 2 || l < min_l {
        return Err(ConstructionError::BadParams(format!("need t >= 2 and l >= {min_l}, got t={t}, l={l}")));
    }
    if t >= 5 && (l as f64).powi(t as i32) > 5e7 {
        return Err(ConstructionError::BadParams(format!("family of size {l}^{t} is too large")));
    }
    Ok(())
}

fn raw_family(t: usize, l: usize) -> (Graph, Vec<Vec<usize>>) {
    match t {
        2 => {
            let a = l / 2;
            let mut b = GraphBuilder::new(l);
            for i in 0..a {
                for j in a..l {
                    if j - a != i {
                        b.edge(i, j);
                    }
                }
            }
            (b.build(), (0..a).map(|i| vec![i, a + i]).collect())
        }
        3 => {
            // a_i = i, b_i = l + i; the removed cycle is a_0 b_0 a_1 b_1 ... b_{l-1}.
            let mut b = GraphBuilder::new(2 * l);
            for i in 0..l {
                for j in 0..l {
                    if j != i && j != (i + l - 1) % l {
                        b.edge(i, l + j);
                    }
                }
            }
            let cyc: Vec<usize> = (0..l).flat_map(|i| [i, l + i]).collect();
            let sets = (0..2 * l).map(|k| vec![cyc[k], cyc[(k + 1) % (2 * l)], cyc[(k + 2) % (2 * l)]]).collect();
            (b.build(), sets)
        }
        4 => {
            let x = |a: usize, b: usize| a * l + b;
            let y = |c: usize, d: usize| l * l + c * l + d;
            let mut g = GraphBuilder::new(2 * l * l);
            for a in 0..l {
                for b in 0..l {
                    for c in 0..l {
                        for d in 0..l {
                            if (a != c && b != d) || (a == c && b == d) {
                                g.edge(x(a, b), y(c, d));
                            }
                        }
                    }
                }
            }
            let mut sets = Vec::new();
            for a in 0..l {
                for b in 0..l {
                    for c in a + 1..l {
                        for d in 0..l {
                            if d != b {
                                sets.push(vec![x(a, b), x(c, d), y(a, d), y(c, b)]);
                            }
                        }
                    }
                }
            }
            (g.build(), sets)
        }
        _ => {
            // Block v holds pairs (coordinate on edge v-1, coordinate on edge v).
            let idx = |v: usize, p: usize, q: usize| v * l * l + p * l + q;
            let mut g = GraphBuilder::new(t * l * l);
            for v in 0..t {
                let w = (v + 1) % t;
                for p in 0..l {
                    for q in 0..l {
                        for q2 in 0..l {
                            if q2 == q {
                                continue;
                            }
                            for r2 in 0..l {
                                g.edge(idx(v, p, q), idx(w, q2, r2));
                            }
                        }
                    }
                }
            }
            let total = l.pow(t as u32);
            let mut sets = Vec::with_capacity(total);
            let mut s = vec![0usize; t];
            for code in 0..total {
                let mut c = code;
                for i in (0..t).rev() {
                    s[i] = c % l;
                    c /= l;
                }
                sets.push((0..t).map(|v| idx(v, s[(v + t - 1) % t], s[v])).collect());
            }
            (g.build(), sets)
        }
    }
}

/// `(H_{t,l}, F_{t,l})` as a validated primed `(3,t)` system.
pub fn system_family(t: usize, l: usize) -> Result<SystemInstance, ConstructionError> {
    check_family_params(t, l)?;
    let (host, sets) = raw_family(t, l);
    let inst = SystemInstance::new(host, VertexSetFamily::from_sets(sets), 3, Some(t)).primed();
    let rep = check_system(&inst)?;
    if !rep.is_valid() {
        return Err(ConstructionError::Infeasible(format!(
            "t={t}, l={l} does not give a valid system: {:?}",
            rep.first_failure()
        )));
    }
    Ok(inst)
}

/// Whether the lifted family is claimed maximal.
pub fn lifted_claimed_maximal(t: usize, l: usize) -> bool {
    !(t == 2 && l % 2 == 1)
}

/// `(H'_{t,l}, F'_{t,l})`: the family with an isolated vertex added to host and sets.
///
/// The maximality flag records the claim; [`check_maximal`] decides it.
pub fn lifted_family(t: usize, l: usize) -> Result<SystemInstance, ConstructionError> {
    let base = system_family(t, l)?;
    Ok(systems::lift_unchecked(&base, t).with_maximal(lifted_claimed_maximal(t, l)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverRule {
    /// Lexicographically least set containing the uncovered edge.
    LexLeast,
    /// Set containing the edge that covers most uncovered edges, ties lexicographic.
    MostNew,
}

/// Picks `size` sets from `sets` (already in lexicographic order) so that every
/// edge in `targets` lies in a chosen set, then pads with the least unused sets.
fn cover_select(
    n: usize,
    sets: &[Vec<usize>],
    targets: &[(usize, usize)],
    size: usize,
    rule: CoverRule,
) -> Result<Vec<usize>, String> {
    let k = sets.len();
    let fw = bits::words_for(k);
    let mut in_sets = vec![vec![0u64; fw]; n];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            bits::set(&mut in_sets[v], i);
        }
    }
    let mut covered = vec![vec![0u64; bits::words_for(n)]; n];
    let mut chosen = vec![false; k];
    let mut picked = Vec::new();
    let take = |i: usize, covered: &mut Vec<Vec<u64>>, picked: &mut Vec<usize>, chosen: &mut Vec<bool>| {
        chosen[i] = true;
        picked.push(i);
        let s = &sets[i];
        for (a, &u) in s.iter().enumerate() {
            for &v in &s[a + 1..] {
                bits::set(&mut covered[u], v);
                bits::set(&mut covered[v], u);
            }
        }
    };
    for &(u, v) in targets {
        if bits::test(&covered[u], v) {
            continue;
        }
        let both = bits::and(&in_sets[u], &in_sets[v]);
        let pick = match rule {
            CoverRule::LexLeast => bits::first(&both),
            CoverRule::MostNew => bits::ones(&both).max_by_key(|&i| {
                let s = &sets[i];
                let gain: usize = s
                    .iter()
                    .enumerate()
                    .map(|(a, &x)| s[a + 1..].iter().filter(|&&y| !bits::test(&covered[x], y)).count())
                    .sum();
                (gain, std::cmp::Reverse(i))
            }),
        };
        let Some(i) = pick else {
            return Err(format!("no set contains missing edge ({u}, {v})"));
        };
        take(i, &mut covered, &mut picked, &mut chosen);
        if picked.len() > size {
            return Err(format!("cover needs more than {size} sets"));
        }
    }
    let mut next = 0;
    while picked.len() < size {
        while next < k && chosen[next] {
            next += 1;
        }
        if next == k {
            return Err(format!("only {k} sets available, {size} requested"));
        }
        take(next, &mut covered, &mut picked, &mut chosen);
    }
    picked.sort_unstable();
    Ok(picked)
}

/// Family entries sorted by vertex list.
fn lex_sets(f: &VertexSetFamily) -> Vec<Vec<usize>> {
    let mut s = f.sets().to_vec();
    s.sort();
    s
}

/// Output of the witness pipelines built on a host plus chosen subfamily.
#[derive(Debug, Clone)]
pub struct Witness {
    pub graph: Graph,
    pub system: SystemInstance,
    pub l: usize,
    pub rule: Option<CoverRule>,
    /// Host edges before any maximalizing additions.
    pub raw_host_edges: usize,
}

/// Smallest `l >= 2` with `l^p >= x`.
fn root_ceil(x: usize, p: u32) -> usize {
    let mut l: usize = 2;
    while l.pow(p) < x {
        l += 1;
    }
    l
}

/// Twin-free triangle-saturated graph on `n` vertices with minimum degree 6 from `H'_{5,l}`.
pub fn tsat_upper_witness(n: usize) -> Result<Witness, ConstructionError> {
    let l = root_ceil(n, 5);
    let lifted = lifted_family(5, l)?;
    let m = lifted.m();
    if n < m {
        return Err(ConstructionError::Infeasible(format!("n={n} is below the host order {m}")));
    }
    let size = n - m;
    let sets = lex_sets(&lifted.family);
    let host = &lifted.host;
    let masks: Vec<Vec<u64>> = lifted.family.masks(m);
    let mut in_any = vec![vec![0u64; bits::words_for(m)]; m];
    for mask in &masks {
        for u in bits::ones(mask) {
            bits::or_assign(&mut in_any[u], mask);
        }
    }
    let targets: Vec<(usize, usize)> = host
        .missing_edges()
        .into_iter()
        .filter(|&(u, v)| bits::test(&in_any[u], v))
        .collect();
    let mut last_err = String::new();
    for rule in [CoverRule::LexLeast, CoverRule::MostNew] {
        match cover_select(m, &sets, &targets, size, rule) {
            Ok(idx) => {
                let family = VertexSetFamily::from_sets(idx.iter().map(|&i| sets[i].clone()).collect());
                let system = SystemInstance { family, maximal: true, ..lifted.clone() };
                let graph = assemble(&system.host, &system.family);
                return Ok(Witness { graph, raw_host_edges: system.host.edge_count(), system, l, rule: Some(rule) });
            }
            Err(e) => {
                log::info!("tsat witness n={n}: {rule:?} cover failed: {e}");
                last_err = e;
            }
        }
    }
    Err(ConstructionError::Infeasible(format!("n={n}, l={l}: {last_err}")))
}

/// Maximal `(3,4)` system with `s` sets from pairs of an `l`-set.
pub fn e34_upper_witness(s: usize) -> Result<Witness, ConstructionError> {
    if s < 1 {
        return Err(ConstructionError::BadParams("s must be at least 1".into()));
    }
    let mut l = 2;
    while l * (l - 1) / 2 < s {
        l += 1;
    }
    let pairs: Vec<(usize, usize)> = (0..l).flat_map(|a| (a + 1..l).map(move |b| (a, b))).take(s).collect();
    let mut b = GraphBuilder::new(l + s);
    for (j, &(p, q)) in pairs.iter().enumerate() {
        for x in 0..l {
            if x != p && x != q {
                b.edge(x, l + j);
            }
        }
    }
    let sets = pairs.iter().enumerate().map(|(j, &(p, q))| vec![p, q, l + j]).collect();
    let base = SystemInstance::new(b.build(), VertexSetFamily::from_sets(sets), 3, Some(3)).primed();
    let lifted = systems::lift(&base)?;
    let raw_host_edges = lifted.host.edge_count();
    let system = if check_maximal(&lifted)?.0 {
        lifted.with_maximal(true)
    } else {
        log::info!("e34 witness s={s}: lifted system is not maximal; completing it");
        systems::maximalize(&lifted)?
    };
    let graph = assemble(&system.host, &system.family);
    Ok(Witness { graph, system, l, rule: None, raw_host_edges })
}

/// Maximal `(3,5)` system with `s` sets drawn from `F'_{4,l}`.
pub fn e35_upper_witness(s: usize) -> Result<Witness, ConstructionError> {
    if s < 1 {
        return Err(ConstructionError::BadParams("s must be at least 1".into()));
    }
    let mut l = 2;
    while family_size(4, l) < s {
        l += 1;
    }
    let lifted = lifted_family(4, l)?;
    let host = &lifted.host;
    let targets: Vec<(usize, usize)> = host
        .missing_edges()
        .into_iter()
        .filter(|&(u, v)| !bits::intersects(host.row(u), host.row(v)))
        .collect();
    let sets = lex_sets(&lifted.family);
    let idx = cover_select(host.n(), &sets, &targets, s, CoverRule::LexLeast)
        .map_err(|e| ConstructionError::Infeasible(format!("s={s}, l={l}: {e}")))?;
    let family = VertexSetFamily::from_sets(idx.iter().map(|&i| sets[i].clone()).collect());
    let system = SystemInstance { family, maximal: true, ..lifted.clone() };
    let graph = assemble(&system.host, &system.family);
    Ok(Witness { graph, raw_host_edges: system.host.edge_count(), system, l, rule: Some(CoverRule::LexLeast) })
}

/// Missing host edges of `H'_{4,l}` whose addition keeps it triangle-free.
pub fn e35_free_missing_edges(l: usize) -> Result<usize, ConstructionError> {
    let lifted = lifted_family(4, l)?;
    let h = &lifted.host;
    Ok(h.missing_edges().into_iter().filter(|&(u, v)| !bits::intersects(h.row(u), h.row(v))).count())
}

/// `K_r`-saturated graph on `n` vertices with `δ >= t` in which twins see a degree-`t` vertex.
pub fn tsat_min_deg_upper_witness(n: usize, r: usize, t: usize) -> Result<Witness, ConstructionError> {
    if r < 3 || t < r + 3 {
        return Err(ConstructionError::BadParams(format!("need r >= 3 and t >= r+3, got r={r}, t={t}")));
    }
    let tp = t - r + 2;
    let cone = r - 3;
    let order = |l: usize| tp * l * l + 1 + cone;
    let mut l: usize = 2;
    while l.pow(tp as u32) < n.saturating_sub(order(l)) {
        l += 1;
    }
    let lifted = lifted_family(tp, l)?;
    let seed = systems::cone_unchecked(&lifted, cone).with_maximal(true);
    let cleaned = cleanup_all(&seed)?;
    let m = cleaned.m();
    if (t + 1) * m > n.saturating_sub(m) {
        return Err(ConstructionError::Infeasible(format!("(t+1)*{m} exceeds n-{m} for n={n}")));
    }
    let size = n - m;
    let sets = lex_sets(&cleaned.family);
    if size > sets.len() {
        return Err(ConstructionError::Infeasible(format!("need {size} sets, only {} available", sets.len())));
    }
    let s_full = VertexSetFamily::from_sets(sets.clone()).membership(m);
    let mut order_v: Vec<usize> = (0..m).collect();
    order_v.sort_by_key(|&v| (std::cmp::Reverse(s_full[v]), v));
    let mut chosen = vec![false; sets.len()];
    let mut s_new = vec![0usize; m];
    let mut picked = 0usize;
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, set) in sets.iter().enumerate() {
        for &v in set {
            containing[v].push(i);
        }
    }
    for &v in &order_v {
        let want = s_full[v].min(t + 1);
        let mut it = containing[v].iter();
        while s_new[v] < want {
            let &i = it.next().expect("s(v) sets contain v");
            if chosen[i] {
                continue;
            }
            chosen[i] = true;
            picked += 1;
            for &u in &sets[i] {
                s_new[u] += 1;
            }
        }
    }
    if picked > size {
        return Err(ConstructionError::Infeasible(format!("degree floor needs {picked} sets, budget {size}")));
    }
    for c in chosen.iter_mut() {
        if picked == size {
            break;
        }
        if !*c {
            *c = true;
            picked += 1;
        }
    }
    let family =
        VertexSetFamily::from_sets(sets.iter().zip(&chosen).filter(|(_, &c)| c).map(|(s, _)| s.clone()).collect());
    let sub = SystemInstance { family, maximal: false, ..cleaned.clone() };
    let raw_host_edges = sub.host.edge_count();
    let system = systems::maximalize(&sub)?;
    let graph = assemble(&system.host, &system.family);
    Ok(Witness { graph, system, l, rule: None, raw_host_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saturation::{is_saturated, is_twin_free_saturated};

    #[test]
    fn ehm_examples() {
        let g = ehm_graph(5, 3).unwrap();
        assert_eq!(g, Graph::complete_bipartite(1, 4));
        assert_eq!(ehm_graph(8, 4).unwrap().edge_count(), 13);
        assert_eq!(ehm_graph(2, 4).unwrap().edge_count(), 1);
        assert!(ehm_graph(1, 4).is_err());
    }

    #[test]
    fn named_graphs_are_twin_free_saturated() {
        for g in NamedGraph::ALL {
            let h = g.graph();
            assert!(is_twin_free_saturated(&h, g.saturated_r()), "{g}");
        }
        assert_eq!(NamedGraph::Wagner.graph().edge_count(), 12);
        assert_eq!(NamedGraph::Petersen.graph().edge_count(), 15);
        assert!(named_small("nope").is_err());
    }

    #[test]
    fn shattering_examples() {
        assert_eq!(shattering_set(2, None).unwrap().len(), 4);
        assert_eq!(shattering_set(3, None).unwrap().len(), 4);
        let s4 = shattering_set(4, None).unwrap();
        assert_eq!(s4.len(), 7);
        assert!(!s4.sequences.contains(&0));
        for k in 2..=12 {
            assert!(shattering_set(k, None).unwrap().shatters_all_pairs(), "k={k}");
        }
        let padded = shattering_set(3, Some(6)).unwrap();
        assert_eq!(padded.len(), 6);
        assert!(padded.shatters_all_pairs());
        assert!(shattering_set(4, Some(6)).is_err());
    }

    #[test]
    fn twin_free_examples() {
        let (g, branch) = twin_free_saturated_with_branch(9, 3).unwrap();
        assert_eq!((g.n(), branch), (9, TwinFreeBranch::Shattering));
        assert!(is_twin_free_saturated(&g, 3));
        assert!(matches!(twin_free_saturated(6, 3), Err(ConstructionError::Nonexistent { .. })));
        let g = twin_free_saturated(10, 4).unwrap();
        assert!(is_twin_free_saturated(&g, 4));
    }

    #[test]
    fn family_examples() {
        let f = system_family(2, 4).unwrap();
        assert_eq!((f.m(), f.host.edge_count(), f.family.len()), (4, 2, 2));
        let f = system_family(4, 2).unwrap();
        assert_eq!((f.m(), f.host.edge_count(), f.family.len()), (8, 8, 2));
        let f = system_family(5, 2).unwrap();
        assert_eq!((f.m(), f.family.len()), (20, 32));
        assert!((0..20).all(|v| f.host.degree(v) == 4));
        assert!(system_family(3, 2).is_err());
    }

    #[test]
    fn lifted_odd_pairs_not_maximal() {
        let f = lifted_family(2, 5).unwrap();
        assert!(!f.maximal);
        assert!(!check_maximal(&f).unwrap().0);
        let m = systems::maximalize(&f).unwrap();
        assert!(check_maximal(&m).unwrap().0);
        let f6 = lifted_family(2, 6).unwrap();
        assert!(check_maximal(&f6).unwrap().0);
        assert!(is_saturated(&assemble(&f6.host, &f6.family), 3));
    }

    #[test]
    fn e34_small() {
        let w = e34_upper_witness(3).unwrap();
        assert_eq!(w.system.family.len(), 3);
        assert!(check_maximal(&w.system).unwrap().0);
        assert!(is_saturated(&w.graph, 3));
    }
}
