//! Exhaustive oracles for the extremal quantities, over isomorphism-reduced
//! enumerations of small hosts.

mod clique;
mod enumerate;
mod stability;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use clique::{for_each_k_clique, max_clique};
pub use enumerate::{enumerate_graphs, extend, GraphFilter};
pub use stability::{classify_33_systems, system_canonical_form, StabilityReport, StabilityRow};

use crate::bits;
use crate::graph::{canonical_form, Graph};
use crate::io::{graph6, SystemFile};
use crate::saturation::{is_saturated, is_tsat_witness, is_twin_free_saturated};
use crate::systems::{check_maximal, check_system, first_non_maximal_edge, SystemInstance, VertexSetFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("budget exceeded: {0}")]
pub struct BudgetExceeded(pub String);

impl BudgetExceeded {
    pub fn new(msg: impl Into<String>) -> Self {
        BudgetExceeded(msg.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationBudget {
    /// Vertex cap for unrestricted enumeration.
    pub max_vertices: usize,
    /// Vertex cap when a clique-free or edge filter prunes the enumeration.
    pub max_vertices_filtered: usize,
    /// Largest host edge count tried by the edge-minimizing oracles.
    pub max_edges: usize,
    /// Node cap per clique search.
    pub max_candidates: u64,
    pub wall_time_secs: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_vertices: 9,
            max_vertices_filtered: 12,
            max_edges: 40,
            max_candidates: 10_000_000,
            wall_time_secs: 3600,
        }
    }
}

impl EnumerationBudget {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_vertices == 0
            || self.max_vertices_filtered == 0
            || self.max_edges == 0
            || self.max_candidates == 0
            || self.wall_time_secs == 0
        {
            return Err(SearchError::BadParams("budget caps must be positive".into()));
        }
        Ok(())
    }

    /// Stable text key for caching.
    pub fn fingerprint(&self) -> String {
        format!(
            "v{}-f{}-e{}-c{}-w{}",
            self.max_vertices, self.max_vertices_filtered, self.max_edges, self.max_candidates, self.wall_time_secs
        )
    }
}

/// Shared work counters and the wall-clock deadline.
pub(crate) struct Meter<'a> {
    budget: &'a EnumerationBudget,
    deadline: Instant,
    graphs: AtomicU64,
    canon: AtomicU64,
    clique_nodes: AtomicU64,
    hosts: AtomicU64,
}

impl<'a> Meter<'a> {
    pub(crate) fn new(budget: &'a EnumerationBudget) -> Self {
        Meter {
            budget,
            deadline: Instant::now() + Duration::from_secs(budget.wall_time_secs),
            graphs: AtomicU64::new(0),
            canon: AtomicU64::new(0),
            clique_nodes: AtomicU64::new(0),
            hosts: AtomicU64::new(0),
        }
    }

    pub(crate) fn budget(&self) -> &EnumerationBudget {
        self.budget
    }

    pub(crate) fn check_time(&self) -> Result<(), BudgetExceeded> {
        if Instant::now() > self.deadline {
            Err(BudgetExceeded::new(format!("wall time cap of {}s", self.budget.wall_time_secs)))
        } else {
            Ok(())
        }
    }

    pub(crate) fn add_graphs(&self, k: u64) {
        self.graphs.fetch_add(k, Ordering::Relaxed);
    }

    pub(crate) fn add_canon(&self, k: u64) {
        self.canon.fetch_add(k, Ordering::Relaxed);
    }

    fn add_nodes(&self, k: u64) {
        self.clique_nodes.fetch_add(k, Ordering::Relaxed);
    }

    fn add_hosts(&self, k: u64) {
        self.hosts.fetch_add(k, Ordering::Relaxed);
    }

    fn counters(&self) -> Counters {
        Counters {
            graphs: self.graphs.load(Ordering::Relaxed),
            canonical_forms: self.canon.load(Ordering::Relaxed),
            hosts: self.hosts.load(Ordering::Relaxed),
            clique_nodes: self.clique_nodes.load(Ordering::Relaxed),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub graphs: u64,
    pub canonical_forms: u64,
    pub hosts: u64,
    pub clique_nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Sat,
    Tsat,
    TsatMinDeg,
    SRt,
    S3tPrime,
    ERt,
    ERtMaximal,
    E3tDoubleprime,
    MShatter,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Sat,
        Kind::Tsat,
        Kind::TsatMinDeg,
        Kind::SRt,
        Kind::S3tPrime,
        Kind::ERt,
        Kind::ERtMaximal,
        Kind::E3tDoubleprime,
        Kind::MShatter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Sat => "sat",
            Kind::Tsat => "tsat",
            Kind::TsatMinDeg => "tsat_min_deg",
            Kind::SRt => "s_rt",
            Kind::S3tPrime => "s3t_prime",
            Kind::ERt => "e_rt",
            Kind::ERtMaximal => "e_rt_maximal",
            Kind::E3tDoubleprime => "e3t_doubleprime",
            Kind::MShatter => "m_shatter",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Kind {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SearchError::BadParams(format!("unknown search kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Found,
    Nonexistent,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Construction,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessData {
    Graph(String),
    System(SystemFile),
    Sequences(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub kind: Kind,
    pub params: Params,
    pub value: Option<u64>,
    pub status: Status,
    pub witness: Option<WitnessData>,
    pub method: Method,
    pub budget_spent: Counters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ExtremalRecord {
    fn exhaustive(kind: Kind, params: Params, meter: &Meter, outcome: Result<Option<(u64, WitnessData)>, BudgetExceeded>) -> Self {
        let (value, status, witness, note) = match outcome {
            Ok(Some((v, w))) => (Some(v), Status::Found, Some(w), None),
            Ok(None) => (None, Status::Nonexistent, None, None),
            Err(e) => (None, Status::BudgetExceeded, None, Some(e.0)),
        };
        ExtremalRecord { kind, params, value, status, witness, method: Method::Exhaustive, budget_spent: meter.counters(), note }
    }

    pub fn witness_graph(&self) -> Option<Graph> {
        match &self.witness {
            Some(WitnessData::Graph(s)) => graph6::decode(s.as_bytes()).ok(),
            _ => None,
        }
    }

    pub fn witness_system(&self) -> Option<SystemInstance> {
        match &self.witness {
            Some(WitnessData::System(f)) => f.clone().into_instance().ok(),
            _ => None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

fn graph_witness(g: &Graph) -> WitnessData {
    WitnessData::Graph(graph6::encode(g))
}

fn system_witness(s: &SystemInstance) -> WitnessData {
    WitnessData::System(SystemFile::from(s))
}

/// Minimum edge count over graphs passing `pred`, ties broken by least canonical form.
fn min_edges_where(
    n: usize,
    filter: &GraphFilter,
    meter: &Meter,
    pred: impl Fn(&Graph) -> bool + Sync,
) -> Result<Option<(u64, WitnessData)>, BudgetExceeded> {
    let graphs = enumerate::enumerate_with(n, filter, meter)?;
    meter.add_hosts(graphs.len() as u64);
    let best = graphs
        .par_iter()
        .filter(|g| pred(g))
        .map(|g| (g.edge_count(), canonical_form(g), g))
        .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(best.map(|(e, _, g)| (e as u64, graph_witness(g))))
}

fn check_r(r: usize) -> Result<(), SearchError> {
    if r < 3 {
        return Err(SearchError::BadParams(format!("r={r} must be at least 3")));
    }
    Ok(())
}

/// `sat(n, K_r)` by exhaustive search over `K_r`-free graphs.
pub fn sat_min(n: usize, r: usize, budget: &EnumerationBudget) -> Result<ExtremalRecord, SearchError> {
    check_r(r)?;
    budget.validate()?;
    let meter = Meter::new(budget);
    let out = min_edges_where(n, &GraphFilter::clique_free(r), &meter, |g| is_saturated(g, r));
    let params = Params { n: Some(n), r: Some(r), ..Params::default() };
    Ok(ExtremalRecord::exhaustive(Kind::Sat, params, &meter, out))
}

/// `tsat(n, K_r)`, or the minimum-degree variant when `t` is given.
pub fn tsat_min(n: usize, r: usize, t: Option<usize>, budget: &EnumerationBudget) -> Result<ExtremalRecord, SearchError> {
    check_r(r)?;
    budget.validate()?;
    let meter = Meter::new(budget);
    let filter = GraphFilter::clique_free(r);
    let (kind, out) = match t {
        None => (Kind::Tsat, min_edges_where(n, &filter, &meter, |g| is_twin_free_saturated(g, r))),
        Some(t) => (Kind::TsatMinDeg, min_edges_where(n, &filter, &meter, |g| is_tsat_witness(g, r, t))),
    };
    let params = Params { n: Some(n), r: Some(r), t, ..Params::default() };
    Ok(ExtremalRecord::exhaustive(kind, params, &meter, out))
}

/// Maximally `K_{r-1}`-free `t`-subsets of `h`, as masks in lexicographic order.
pub fn maximal_free_sets(h: &Graph, r: usize, t: usize) -> Vec<Vec<u64>> {
    fn rec(h: &Graph, r: usize, t: usize, start: usize, cur: &mut Vec<u64>, size: usize, out: &mut Vec<Vec<u64>>) {
        let n = h.n();
        if size == t {
            let dominated = (0..n).all(|w| {
                bits::test(cur, w) || h.has_clique_within(&bits::and(cur, h.row(w)), r - 2)
            });
            if dominated {
                out.push(cur.clone());
            }
            return;
        }
        for v in start..n {
            if n - v < t - size {
                break;
            }
            if h.has_clique_within(&bits::and(cur, h.row(v)), r - 2) {
                continue;
            }
            bits::set(cur, v);
            rec(h, r, t, v + 1, cur, size + 1, out);
            bits::clear(cur, v);
        }
    }
    let mut out = Vec::new();
    if t <= h.n() && r >= 3 {
        rec(h, r, t, 0, &mut vec![0; h.words()], 0, &mut out);
    }
    out
}

/// Compatibility graph on candidate sets: adjacent when the intersection spans `K_{r-2}`.
pub fn compatibility_graph(h: &Graph, r: usize, cands: &[Vec<u64>]) -> Graph {
    let mut b = crate::graph::GraphBuilder::new(cands.len());
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            if h.has_clique_within(&bits::and(&cands[i], &cands[j]), r - 2) {
                b.edge(i, j);
            }
        }
    }
    b.build()
}

fn family_of(cands: &[Vec<u64>], idx: &[usize]) -> VertexSetFamily {
    VertexSetFamily::from_sets(idx.iter().map(|&i| bits::ones(&cands[i]).collect()).collect())
}

/// Per-host summary of the systems it supports.
#[derive(Debug, Clone)]
pub struct HostCensus {
    pub host: Graph,
    pub candidates: usize,
    /// A largest `(r,t)` family on this host.
    pub best: VertexSetFamily,
}

/// Candidate counts and largest families for every `K_r`-free host on `m` vertices.
pub fn host_census(m: usize, r: usize, t: usize, budget: &EnumerationBudget) -> Result<Vec<HostCensus>, BudgetExceeded> {
    let meter = Meter::new(budget);
    census_with(m, r, t, &meter)
}

fn census_with(m: usize, r: usize, t: usize, meter: &Meter) -> Result<Vec<HostCensus>, BudgetExceeded> {
    let hosts = enumerate::enumerate_with(m, &GraphFilter::clique_free(r), meter)?;
    meter.add_hosts(hosts.len() as u64);
    let limit = meter.budget().max_candidates;
    hosts
        .into_par_iter()
        .map(|h| {
            let cands = maximal_free_sets(&h, r, t);
            let compat = compatibility_graph(&h, r, &cands);
            let (best, nodes) = max_clique(&compat, usize::MAX, limit)?;
            meter.add_nodes(nodes);
            Ok(HostCensus { best: family_of(&cands, &best), candidates: cands.len(), host: h })
        })
        .collect()
}

fn check_rt(r: usize, t: usize) -> Result<(), SearchError> {
    check_r(r)?;
    if t + 2 < r {
        return Err(SearchError::BadParams(format!("need t >= r-2, got r={r}, t={t}")));
    }
    Ok(())
}

/// `s_{r,t}(m)`: the largest `(r,t)` family on an `m`-vertex host.
pub fn s_rt(m: usize, r: usize, t: usize, budget: &EnumerationBudget) -> Result<ExtremalRecord, SearchError> {
    check_rt(r, t)?;
    budget.validate()?;
    let meter = Meter::new(budget);
    let out = census_with(m, r, t, &meter).map(|census| {
        let best = census
            .iter()
            .max_by(|a, b| a.best.len().cmp(&b.best.len()).then_with(|| canonical_form(&b.host).cmp(&canonical_form(&a.host))))
            .expect("at least one host");
        let inst = SystemInstance::new(best.host.clone(), best.best.clone(), r, Some(t));
        Some((best.best.len() as u64, system_witness(&inst)))
    });
    let params = Params { m: Some(m), r: Some(r), t: Some(t), ..Params::default() };
    Ok(ExtremalRecord::exhaustive(Kind::SRt, params, &meter, out))
}

/// `s'_{3,t}(m)`: the most maximally independent `t`-sets in a triangle-free `m`-vertex host.
pub fn s3t_prime(m: usize, t: usize, budget: &EnumerationBudget) -> Result<ExtremalRecord, SearchError> {
    budget.validate()?;
    let meter = Meter::new(budget);
    let out = enumerate::enumerate_with(m, &GraphFilter::clique_free(3), &meter).map(|hosts| {
        meter.add_hosts(hosts.len() as u64);
        let (h, cands) = hosts
            .into_par_iter()
            .map(|h| {
                let c = maximal_free_sets(&h, 3, t);
                (h, c)
            })
            .min_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| canonical_form(&a.0).cmp(&canonical_form(&b.0))))
            .expect("at least one host");
        let idx: Vec<usize> = (0..cands.len()).collect();
        let inst = SystemInstance::new(h, family_of(&cands, &idx), 3, Some(t)).primed();
        Some((cands.len() as u64, system_witness(&inst)))
    });
    let params = Params { m: Some(m), t: Some(t), ..Params::default() };
    Ok(ExtremalRecord::exhaustive(Kind::S3tPrime, params, &meter, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeProblem {
    Plain,
    Maximal,
    Primed,
}

/// Smallest `s`-set family of the requested flavour on `h`, if any.
fn family_on_host(h: &Graph, r: usize, t: usize, s: usize, prob: EdgeProblem, limit: u64) -> Result<(Option<VertexSetFamily>, u64), BudgetExceeded> {
    let cands = maximal_free_sets(h, r, t);
    if cands.len() < s {
        return Ok((None, 0));
    }
    match prob {
        EdgeProblem::Primed => {
            let idx: Vec<usize> = (0..s).collect();
            Ok((Some(family_of(&cands, &idx)), 0))
        }
        EdgeProblem::Plain => {
            let compat = compatibility_graph(h, r, &cands);
            let (best, nodes) = max_clique(&compat, s, limit)?;
            if best.len() < s {
                return Ok((None, nodes));
            }
            Ok((Some(family_of(&cands, &best[..s])), nodes))
        }
        EdgeProblem::Maximal => {
            let compat = compatibility_graph(h, r, &cands);
            let mut found = None;
            let (_, nodes) = for_each_k_clique(&compat, s, limit, &mut |c| {
                let fam = family_of(&cands, c);
                if first_non_maximal_edge(h, &fam, r).is_none() {
                    found = Some(fam);
                    true
                } else {
                    false
                }
            })?;
            Ok((found, nodes))
        }
    }
}

fn edge_search(
    s: usize,
    r: usize,
    t: usize,
    prob: EdgeProblem,
    meter: &Meter,
) -> Result<Option<(u64, WitnessData)>, BudgetExceeded> {
    let make = |h: Graph, fam: VertexSetFamily| {
        let inst = SystemInstance::new(h, fam, r, Some(t));
        let inst = match prob {
            EdgeProblem::Primed => inst.primed(),
            EdgeProblem::Maximal => inst.with_maximal(true),
            EdgeProblem::Plain => inst,
        };
        system_witness(&inst)
    };
    if s == 0 {
        return Ok(Some((0, make(Graph::empty(0), VertexSetFamily::default()))));
    }
    let limit = meter.budget().max_candidates;
    for e in 0..=meter.budget().max_edges {
        // Any host with a nonempty family has at most e + t vertices.
        for m in t..=e + t {
            meter.check_time()?;
            let filter = GraphFilter::clique_free(r).with_max_edges(e);
            let hosts: Vec<Graph> = enumerate::enumerate_with(m, &filter, meter)?
                .into_iter()
                .filter(|h| h.edge_count() == e)
                .collect();
            meter.add_hosts(hosts.len() as u64);
            let hits: Vec<(Graph, VertexSetFamily)> = hosts
                .into_par_iter()
                .map(|h| {
                    let (fam, nodes) = family_on_host(&h, r, t, s, prob, limit)?;
                    meter.add_nodes(nodes);
                    Ok(fam.map(|f| (h, f)))
                })
                .collect::<Result<Vec<_>, BudgetExceeded>>()?
                .into_iter()
                .flatten()
                .collect();
            if let Some((h, f)) = hits.into_iter().min_by_key(|(h, _)| canonical_form(h)) {
                return Ok(Some((e as u64, make(h, f))));
            }
        }
    }
    Err(BudgetExceeded::new(format!("no host with at most {} edges", meter.budget().max_edges)))
}

/// `e_{r,t}(s)`, or `e'_{r,t}(s)` over maximal systems.
pub fn e_rt(s: usize, r: usize, t: usize, require_maximal: bool, budget: &EnumerationBudget) -> Result<ExtremalRecord, SearchError> {
    check_r(r)?;
    if t < r {
        return Err(SearchError::BadParams(format!("need t >= r, got r={r}, t={t}")));
    }
    budget.validate()?;
    let meter = Meter::new(budget);
    let prob = if require_maximal { EdgeProblem::Maximal } else { EdgeProblem::Plain };
    let out = edge_search(s, r, t, prob, &meter);
    let kind = if require_maximal { Kind::ERtMaximal } else { Kind::ERt };
    let params = Params { s: Some(s), r: Some(r), t: Some(t), ..Params::default() };
    Ok(ExtremalRecord::exhaustive(kind, params, &meter, out))
}

/// `e''_{3,t}(s)`: fewest host edges in a `(3,t)'` system with `s` sets.
pub fn e3t_doubleprime(s: usize, t: usize, budget: &EnumerationBudget) -> Result<ExtremalRecord, SearchError> {
    if t == 0 {
        return Err(SearchError::BadParams("t must be positive".into()));
    }
    budget.validate()?;
    let meter = Meter::new(budget);
    let out = edge_search(s, 3, t, EdgeProblem::Primed, &meter);
    let params = Params { s: Some(s), r: Some(3), t: Some(t), ..Params::default() };
    Ok(ExtremalRecord::exhaustive(Kind::E3tDoubleprime, params, &meter, out))
}

/// `m(k)`: smallest subset of `{0,1}^k` shattering every coordinate pair.
pub fn m_shatter(k: usize, budget: &EnumerationBudget) -> Result<ExtremalRecord, SearchError> {
    if !(2..=4).contains(&k) {
        return Err(SearchError::BadParams(format!("k={k} outside the exhaustive range 2..=4")));
    }
    budget.validate()?;
    let meter = Meter::new(budget);
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let pattern = |x: u64, (i, j): (usize, usize)| ((x >> (k - 1 - i) & 1) * 2 + (x >> (k - 1 - j) & 1)) as u8;

    // Per pair, a 4-bit mask of patterns seen so far.
    fn dfs(
        next: u64,
        left: usize,
        seen: &mut Vec<u8>,
        chosen: &mut Vec<u64>,
        ctx: &(usize, &[(usize, usize)], &dyn Fn(u64, (usize, usize)) -> u8),
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        let (k, pairs, pattern) = *ctx;
        if seen.iter().all(|&s| s == 0b1111) {
            return true;
        }
        if seen.iter().any(|&s| 4 - s.count_ones() as usize > left) {
            return false;
        }
        for x in next..1u64 << k {
            let saved = seen.clone();
            for (p, s) in pairs.iter().zip(seen.iter_mut()) {
                *s |= 1 << pattern(x, *p);
            }
            chosen.push(x);
            if dfs(x + 1, left - 1, seen, chosen, ctx, nodes) {
                return true;
            }
            chosen.pop();
            *seen = saved;
        }
        false
    }

    let mut nodes = 0;
    let mut result = None;
    for q in 1..=1usize << k {
        let mut seen = vec![0u8; pairs.len()];
        let mut chosen = Vec::new();
        if dfs(0, q, &mut seen, &mut chosen, &(k, &pairs, &pattern), &mut nodes) {
            result = Some(chosen);
            break;
        }
    }
    meter.add_nodes(nodes);
    let out = Ok(result.map(|seqs| {
        let shown = seqs.iter().map(|&x| (0..k).map(|i| if x >> (k - 1 - i) & 1 == 1 { '1' } else { '0' }).collect()).collect();
        (seqs.len() as u64, WitnessData::Sequences(shown))
    }));
    let params = Params { k: Some(k), ..Params::default() };
    Ok(ExtremalRecord::exhaustive(Kind::MShatter, params, &meter, out))
}

/// Runs the oracle named by `kind` with `params`.
pub fn run(kind: Kind, p: &Params, budget: &EnumerationBudget) -> Result<ExtremalRecord, SearchError> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| SearchError::BadParams(format!("{kind} needs --{name}")));
    match kind {
        Kind::Sat => sat_min(need(p.n, "n")?, need(p.r, "r")?, budget),
        Kind::Tsat => tsat_min(need(p.n, "n")?, need(p.r, "r")?, None, budget),
        Kind::TsatMinDeg => tsat_min(need(p.n, "n")?, need(p.r, "r")?, Some(need(p.t, "t")?), budget),
        Kind::SRt => s_rt(need(p.m, "m")?, need(p.r, "r")?, need(p.t, "t")?, budget),
        Kind::S3tPrime => s3t_prime(need(p.m, "m")?, need(p.t, "t")?, budget),
        Kind::ERt => e_rt(need(p.s, "s")?, need(p.r, "r")?, need(p.t, "t")?, false, budget),
        Kind::ERtMaximal => e_rt(need(p.s, "s")?, need(p.r, "r")?, need(p.t, "t")?, true, budget),
        Kind::E3tDoubleprime => e3t_doubleprime(need(p.s, "s")?, need(p.t, "t")?, budget),
        Kind::MShatter => m_shatter(need(p.k, "k")?, budget),
    }
}

/// Re-checks a record's witness against its predicate and claimed value.
pub fn validate_record(rec: &ExtremalRecord) -> bool {
    let p = &rec.params;
    let value = rec.value;
    match (rec.status, &rec.witness) {
        (Status::Found, Some(_)) => {}
        (Status::Found, None) => return false,
        (_, None) => return value.is_none(),
        (_, Some(_)) => return false,
    }
    let Some(v) = value else { return false };
    match rec.kind {
        Kind::Sat | Kind::Tsat | Kind::TsatMinDeg => {
            let (Some(g), Some(n), Some(r)) = (rec.witness_graph(), p.n, p.r) else { return false };
            let ok = match rec.kind {
                Kind::Sat => is_saturated(&g, r),
                Kind::Tsat => is_twin_free_saturated(&g, r),
                _ => p.t.is_some_and(|t| is_tsat_witness(&g, r, t)),
            };
            ok && g.n() == n && g.edge_count() as u64 == v
        }
        Kind::MShatter => {
            let (Some(WitnessData::Sequences(seqs)), Some(k)) = (&rec.witness, p.k) else { return false };
            let parsed: Option<Vec<u64>> = seqs
                .iter()
                .map(|s| (s.len() == k).then(|| u64::from_str_radix(s, 2).ok()).flatten())
                .collect();
            parsed.is_some_and(|xs| xs.len() as u64 == v && crate::constructions::shatters_all_pairs(k, &xs))
        }
        _ => {
            let Some(inst) = rec.witness_system() else { return false };
            let Ok(report) = check_system(&inst) else { return false };
            if !report.is_valid() {
                return false;
            }
            match rec.kind {
                Kind::SRt | Kind::S3tPrime => p.m == Some(inst.m()) && inst.family.len() as u64 == v,
                Kind::ERt | Kind::E3tDoubleprime => {
                    p.s == Some(inst.family.len()) && inst.host.edge_count() as u64 == v
                }
                Kind::ERtMaximal => {
                    p.s == Some(inst.family.len())
                        && inst.host.edge_count() as u64 == v
                        && check_maximal(&inst).map(|(ok, _)| ok).unwrap_or(false)
                }
                _ => false,
            }
        }
    }
}
