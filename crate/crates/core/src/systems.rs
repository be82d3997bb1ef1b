//! Host graph plus set family pairs `(H, F)`: validity and maximality checks,
//! assembly into `G(H, F)`, decomposition along a vertex cover, lifting and
//! restriction between primed and unprimed triangle systems, coning,
//! maximalization and the clean-up step.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits;
use crate::graph::{Graph, GraphBuilder, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("r={r}, t={t:?} is outside the supported range (r >= 3, t >= r-2)")]
    BadParams { r: usize, t: Option<usize> },
    #[error("{sets} sets but {mults} multiplicities")]
    MultLength { sets: usize, mults: usize },
    #[error("set {0} has multiplicity zero")]
    ZeroMultiplicity(usize),
    #[error("set {set} contains vertex {vertex} outside host of order {n}")]
    OutOfRange { set: usize, vertex: usize, n: usize },
    #[error("input is not a valid system: {0}")]
    Invalid(String),
    #[error("vertex set is not a cover: edge ({0}, {1}) is uncovered")]
    NotCover(usize, usize),
    #[error("neither clean-up property holds")]
    CleanupNotApplicable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Ordered list of vertex sets with positive multiplicities.
///
/// Each set is stored sorted without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSetFamily {
    sets: Vec<Vec<usize>>,
    mults: Vec<usize>,
}

fn normalize(mut s: Vec<usize>) -> Vec<usize> {
    s.sort_unstable();
    s.dedup();
    s
}

impl VertexSetFamily {
    pub fn new(sets: Vec<Vec<usize>>, mults: Vec<usize>) -> Result<Self, SystemError> {
        if sets.len() != mults.len() {
            return Err(SystemError::MultLength { sets: sets.len(), mults: mults.len() });
        }
        if let Some(i) = mults.iter().position(|&m| m == 0) {
            return Err(SystemError::ZeroMultiplicity(i));
        }
        Ok(VertexSetFamily { sets: sets.into_iter().map(normalize).collect(), mults })
    }

    /// Every set with multiplicity one.
    pub fn from_sets(sets: Vec<Vec<usize>>) -> Self {
        let mults = vec![1; sets.len()];
        VertexSetFamily { sets: sets.into_iter().map(normalize).collect(), mults }
    }

    pub fn push(&mut self, set: Vec<usize>, mult: usize) {
        assert!(mult > 0, "multiplicity must be positive");
        self.sets.push(normalize(set));
        self.mults.push(mult);
    }

    /// Number of entries, ignoring multiplicity.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `|F|` counted with multiplicity.
    pub fn total(&self) -> usize {
        self.mults.iter().sum()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, usize)> {
        self.sets.iter().zip(self.mults.iter().copied())
    }

    pub fn first_out_of_range(&self, n: usize) -> Option<(usize, usize)> {
        self.sets
            .iter()
            .enumerate()
            .find_map(|(i, s)| s.iter().find(|&&v| v >= n).map(|&v| (i, v)))
    }

    /// `s(v)`: number of members containing `v`, with multiplicity.
    pub fn membership(&self, n: usize) -> Vec<usize> {
        let mut s = vec![0; n];
        for (set, m) in self.iter() {
            for &v in set {
                s[v] += m;
            }
        }
        s
    }

    /// Bit row over the host for every entry.
    pub fn masks(&self, n: usize) -> Vec<Vec<u64>> {
        self.sets.iter().map(|s| bits::from_indices(n, s.iter().copied())).collect()
    }

    /// Sub-family of the entries at `idx`, in the given order.
    pub fn select(&self, idx: &[usize]) -> Self {
        VertexSetFamily {
            sets: idx.iter().map(|&i| self.sets[i].clone()).collect(),
            mults: idx.iter().map(|&i| self.mults[i]).collect(),
        }
    }

    /// Entries sorted by their vertex lists, used for order-insensitive comparison.
    pub fn sorted(&self) -> Self {
        let mut pairs: Vec<(Vec<usize>, usize)> =
            self.sets.iter().cloned().zip(self.mults.iter().copied()).collect();
        pairs.sort();
        let (sets, mults) = pairs.into_iter().unzip();
        VertexSetFamily { sets, mults }
    }

    /// Applies a vertex map; `None` entries drop the set.
    fn remap(&self, f: impl Fn(&[usize]) -> Option<Vec<usize>>) -> Self {
        let mut out = VertexSetFamily::default();
        for (s, m) in self.iter() {
            if let Some(t) = f(s) {
                out.push(t, m);
            }
        }
        out
    }
}

/// A pair `(H, F)` with its parameters and claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemInstance {
    pub host: Graph,
    pub family: VertexSetFamily,
    pub r: usize,
    /// Uniform set size; also forbids repeated sets.
    pub t: Option<usize>,
    /// Drops the pairwise intersection condition.
    pub primed: bool,
    /// Whether maximality is claimed (and so checked).
    pub maximal: bool,
}

impl SystemInstance {
    pub fn new(host: Graph, family: VertexSetFamily, r: usize, t: Option<usize>) -> Self {
        SystemInstance { host, family, r, t, primed: false, maximal: false }
    }

    pub fn primed(mut self) -> Self {
        self.primed = true;
        self
    }

    pub fn with_maximal(mut self, claim: bool) -> Self {
        self.maximal = claim;
        self
    }

    pub fn m(&self) -> usize {
        self.host.n()
    }

    pub fn membership(&self) -> Vec<usize> {
        self.family.membership(self.host.n())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    InRange,
    HostCliqueFree,
    SetsMaximallyFree,
    Intersections,
    Uniform,
    Maximal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Counterexample {
    OutOfRange { set: usize, vertex: usize },
    HostClique { clique: Vec<usize> },
    SetHasClique { set: usize, clique: Vec<usize> },
    NotDominated { set: usize, vertex: usize },
    WeakIntersection { a: usize, b: usize },
    WrongSize { set: usize, size: usize },
    Repeated { a: usize, b: usize },
    MissingEdge { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: Condition,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemReport {
    pub results: Vec<ConditionResult>,
}

impl SystemReport {
    /// All conditions other than maximality pass.
    pub fn is_valid(&self) -> bool {
        self.results.iter().filter(|c| c.condition != Condition::Maximal).all(|c| c.passed)
    }

    /// Maximality was evaluated and passed.
    pub fn is_maximal(&self) -> bool {
        self.is_valid()
            && self.results.iter().any(|c| c.condition == Condition::Maximal && c.passed)
    }

    pub fn first_failure(&self) -> Option<&ConditionResult> {
        self.results.iter().find(|c| !c.passed)
    }
}

fn result(condition: Condition, counterexample: Option<Counterexample>) -> ConditionResult {
    ConditionResult { condition, passed: counterexample.is_none(), counterexample }
}

fn check_params(r: usize, t: Option<usize>) -> Result<(), SystemError> {
    if r < 3 || t.is_some_and(|t| t + 2 < r) {
        return Err(SystemError::BadParams { r, t });
    }
    Ok(())
}

/// Set `S` fails maximal `K_{r-1}`-freeness: a clique inside, or an undominated outside vertex.
fn set_violation(host: &Graph, r: usize, idx: usize, set: &[usize], mask: &[u64]) -> Option<Counterexample> {
    if let Some(clique) = host.find_clique_within(mask, r - 1) {
        return Some(Counterexample::SetHasClique { set: idx, clique });
    }
    let mut inside = vec![false; host.n()];
    for &v in set {
        inside[v] = true;
    }
    (0..host.n()).find_map(|v| {
        if inside[v] {
            return None;
        }
        let common = bits::and(mask, host.row(v));
        (!host.has_clique_within(&common, r - 2)).then_some(Counterexample::NotDominated { set: idx, vertex: v })
    })
}

fn intersection_violation(host: &Graph, r: usize, family: &VertexSetFamily, masks: &[Vec<u64>]) -> Option<Counterexample> {
    let k = family.len();
    (0..k).into_par_iter().find_map_first(|a| {
        if family.mults[a] > 1 && !host.has_clique_within(&masks[a], r - 2) {
            return Some(Counterexample::WeakIntersection { a, b: a });
        }
        (a + 1..k).find_map(|b| {
            let common = bits::and(&masks[a], &masks[b]);
            (!host.has_clique_within(&common, r - 2)).then_some(Counterexample::WeakIntersection { a, b })
        })
    })
}

fn uniform_violation(family: &VertexSetFamily, t: usize) -> Option<Counterexample> {
    if let Some((i, s)) = family.sets.iter().enumerate().find(|(_, s)| s.len() != t) {
        return Some(Counterexample::WrongSize { set: i, size: s.len() });
    }
    if let Some(i) = family.mults.iter().position(|&m| m > 1) {
        return Some(Counterexample::Repeated { a: i, b: i });
    }
    let mut seen: HashMap<&[usize], usize> = HashMap::new();
    for (i, s) in family.sets.iter().enumerate() {
        if let Some(&j) = seen.get(s.as_slice()) {
            return Some(Counterexample::Repeated { a: j, b: i });
        }
        seen.insert(s, i);
    }
    None
}

/// First missing host edge `uv` that creates neither a `K_r` in `H + uv` nor a
/// `K_{r-1}` inside some `(H + uv)[S]`.
pub fn first_non_maximal_edge(host: &Graph, family: &VertexSetFamily, r: usize) -> Option<(usize, usize)> {
    let n = host.n();
    let k = family.len();
    let masks = family.masks(n);
    let fw = bits::words_for(k);
    let mut in_sets = vec![vec![0u64; fw]; n];
    for (i, s) in family.sets.iter().enumerate() {
        for &v in s {
            bits::set(&mut in_sets[v], i);
        }
    }
    (0..n).into_par_iter().find_map_first(|u| {
        (u + 1..n).find_map(|v| {
            if host.has_edge(u, v) {
                return None;
            }
            let common = bits::and(host.row(u), host.row(v));
            if host.has_clique_within(&common, r - 2) {
                return None;
            }
            let both = bits::and(&in_sets[u], &in_sets[v]);
            let covered = if r == 3 {
                !bits::is_empty(&both)
            } else {
                bits::ones(&both).any(|i| host.has_clique_within(&bits::and(&common, &masks[i]), r - 3))
            };
            (!covered).then_some((u, v))
        })
    })
}

/// Evaluates every applicable condition, with maximality only when claimed.
pub fn check_system(inst: &SystemInstance) -> Result<SystemReport, SystemError> {
    check_params(inst.r, inst.t)?;
    let host = &inst.host;
    let r = inst.r;
    let n = host.n();
    let mut results = Vec::new();
    let range = inst.family.first_out_of_range(n).map(|(set, vertex)| Counterexample::OutOfRange { set, vertex });
    let in_range = range.is_none();
    results.push(result(Condition::InRange, range));
    if !in_range {
        return Ok(SystemReport { results });
    }
    let clique = crate::saturation::find_k_clique(host, r).map(|clique| Counterexample::HostClique { clique });
    results.push(result(Condition::HostCliqueFree, clique));
    let masks = inst.family.masks(n);
    let sets_bad = (0..inst.family.len())
        .into_par_iter()
        .find_map_first(|i| set_violation(host, r, i, &inst.family.sets[i], &masks[i]));
    results.push(result(Condition::SetsMaximallyFree, sets_bad));
    if !inst.primed {
        results.push(result(Condition::Intersections, intersection_violation(host, r, &inst.family, &masks)));
    }
    if let Some(t) = inst.t {
        results.push(result(Condition::Uniform, uniform_violation(&inst.family, t)));
    }
    if inst.maximal {
        let missing = first_non_maximal_edge(host, &inst.family, r).map(|(u, v)| Counterexample::MissingEdge { u, v });
        results.push(result(Condition::Maximal, missing));
    }
    Ok(SystemReport { results })
}

pub fn is_valid(inst: &SystemInstance) -> bool {
    check_system(inst).map(|r| r.is_valid()).unwrap_or(false)
}

fn require_valid(inst: &SystemInstance) -> Result<(), SystemError> {
    let rep = check_system(inst)?;
    if rep.is_valid() {
        Ok(())
    } else {
        let f = rep.first_failure().expect("invalid report has a failure");
        Err(SystemError::Invalid(format!("{:?}: {:?}", f.condition, f.counterexample)))
    }
}

/// Maximality of a valid system, with the first offending missing edge.
pub fn check_maximal(inst: &SystemInstance) -> Result<(bool, Option<(usize, usize)>), SystemError> {
    let base = SystemInstance { maximal: false, ..inst.clone() };
    require_valid(&base)?;
    let e = first_non_maximal_edge(&inst.host, &inst.family, inst.r);
    Ok((e.is_none(), e))
}

/// `G(H, F)`: host vertices first, then one vertex per family member in order.
pub fn assemble(host: &Graph, family: &VertexSetFamily) -> Graph {
    let m = host.n();
    let mut b = GraphBuilder::new(m + family.total());
    for (u, v) in host.edges() {
        b.edge(u, v);
    }
    let mut next = m;
    for (s, mult) in family.iter() {
        for _ in 0..mult {
            for &v in s {
                b.edge(v, next);
            }
            next += 1;
        }
    }
    b.build()
}

/// Splits `G` along a vertex cover into `G[C]` and the neighbourhoods of the
/// remaining vertices, merging equal neighbourhoods into multiplicities.
pub fn decompose(g: &Graph, cover: &[usize]) -> Result<(Graph, VertexSetFamily), SystemError> {
    let mut c = cover.to_vec();
    c.sort_unstable();
    c.dedup();
    for &v in &c {
        g.check_vertex(v)?;
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in c.iter().enumerate() {
        pos[v] = i;
    }
    let host = g.induced(&c)?;
    let mut family = VertexSetFamily::default();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for x in 0..g.n() {
        if pos[x] != usize::MAX {
            continue;
        }
        let mut set = Vec::new();
        for y in g.neighbors(x) {
            if pos[y] == usize::MAX {
                return Err(SystemError::NotCover(x.min(y), x.max(y)));
            }
            set.push(pos[y]);
        }
        match index.get(&set) {
            Some(&i) => family.mults[i] += 1,
            None => {
                index.insert(set.clone(), family.len());
                family.push(set, 1);
            }
        }
    }
    Ok((host, family))
}

fn require_triangle(inst: &SystemInstance) -> Result<usize, SystemError> {
    match inst.t {
        Some(t) if inst.r == 3 => Ok(t),
        _ => Err(SystemError::BadParams { r: inst.r, t: inst.t }),
    }
}

/// Restricts a `(3, t+1)'`-system to the non-neighbours of `v`, dropping `v`
/// from the sets through it.
pub fn restrict(inst: &SystemInstance, v: usize) -> Result<SystemInstance, SystemError> {
    let t = require_triangle(inst)?;
    inst.host.check_vertex(v)?;
    if t == 0 {
        return Err(SystemError::BadParams { r: 3, t: Some(0) });
    }
    require_valid(&SystemInstance { primed: true, maximal: false, ..inst.clone() })?;
    let keep: Vec<usize> = (0..inst.host.n()).filter(|&u| u != v && !inst.host.has_edge(u, v)).collect();
    let mut pos = vec![usize::MAX; inst.host.n()];
    for (i, &u) in keep.iter().enumerate() {
        pos[u] = i;
    }
    let host = inst.host.induced(&keep)?;
    let family = inst.family.remap(|s| {
        s.contains(&v).then(|| s.iter().filter(|&&u| u != v).map(|&u| pos[u]).collect())
    });
    Ok(SystemInstance { host, family, r: 3, t: Some(t - 1), primed: true, maximal: false })
}

/// Adds an isolated vertex (numbered last) to the host and to every set.
pub fn lift(inst: &SystemInstance) -> Result<SystemInstance, SystemError> {
    let t = require_triangle(inst)?;
    require_valid(&SystemInstance { primed: true, maximal: false, ..inst.clone() })?;
    Ok(lift_unchecked(inst, t))
}

pub(crate) fn lift_unchecked(inst: &SystemInstance, t: usize) -> SystemInstance {
    let n = inst.host.n();
    let host = inst.host.disjoint_union(&Graph::empty(1));
    let family = inst.family.remap(|s| {
        let mut s = s.to_vec();
        s.push(n);
        Some(s)
    });
    SystemInstance { host, family, r: 3, t: Some(t + 1), primed: false, maximal: false }
}

/// `(H^s, F^s)`: cone the host and add the conical vertices to every set.
pub fn cone_system(inst: &SystemInstance, s: usize) -> Result<SystemInstance, SystemError> {
    if inst.primed {
        return Err(SystemError::Invalid("primed systems cannot be coned".into()));
    }
    require_valid(&SystemInstance { maximal: false, ..inst.clone() })?;
    Ok(cone_unchecked(inst, s))
}

/// [`cone_system`] without validating the input.
pub fn cone_unchecked(inst: &SystemInstance, s: usize) -> SystemInstance {
    let n = inst.host.n();
    let family = inst.family.remap(|set| {
        let mut set = set.to_vec();
        set.extend(n..n + s);
        Some(set)
    });
    SystemInstance {
        host: inst.host.cone(s),
        family,
        r: inst.r + s,
        t: inst.t.map(|t| t + s),
        primed: false,
        maximal: inst.maximal,
    }
}

/// Adds `uv` iff `H + uv` stays `K_r`-free and no set `S ⊇ {u, v}` gains a `K_{r-1}`.
fn try_extend(host: &mut Graph, masks: &[Vec<u64>], sets_of: &[Vec<usize>], r: usize, u: usize, v: usize) -> bool {
    let common = bits::and(host.row(u), host.row(v));
    if host.has_clique_within(&common, r - 2) {
        return false;
    }
    for &i in &sets_of[u] {
        if bits::test(&masks[i], v) && host.has_clique_within(&bits::and(&common, &masks[i]), r - 3) {
            return false;
        }
    }
    host.insert_edge(u, v);
    true
}

/// Completes a valid system to a maximal one by lexicographic edge additions.
///
/// A single pass suffices since both rejection reasons persist as edges are added.
pub fn maximalize(inst: &SystemInstance) -> Result<SystemInstance, SystemError> {
    require_valid(&SystemInstance { maximal: false, ..inst.clone() })?;
    Ok(maximalize_unchecked(inst).0)
}

/// Returns the completed system and the number of edges added.
pub(crate) fn maximalize_unchecked(inst: &SystemInstance) -> (SystemInstance, usize) {
    let n = inst.host.n();
    let masks = inst.family.masks(n);
    let mut sets_of = vec![Vec::new(); n];
    for (i, s) in inst.family.sets.iter().enumerate() {
        for &v in s {
            sets_of[v].push(i);
        }
    }
    let mut host = inst.host.clone();
    let mut added = 0;
    for u in 0..n {
        for v in u + 1..n {
            if !host.has_edge(u, v) && try_extend(&mut host, &masks, &sets_of, inst.r, u, v) {
                added += 1;
            }
        }
    }
    let out = SystemInstance { host, maximal: true, ..inst.clone() };
    (out, added)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CleanupProperty {
    /// Vertex with `d(v) + s(v) <= t`; it and its sets were removed.
    LowWeight,
    /// Twins outside every set; one was removed.
    FreeTwins,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanupOutcome {
    pub system: SystemInstance,
    pub removed: usize,
    pub property: CleanupProperty,
    /// Edges added while re-maximalizing.
    pub added_edges: usize,
}

/// Vertex to drop by the clean-up step, preferring free twins.
pub fn cleanup_target(inst: &SystemInstance) -> Option<(usize, CleanupProperty)> {
    let t = inst.t?;
    let s = inst.membership();
    let part = inst.host.twin_partition();
    for class in &part.classes {
        let free: Vec<usize> = class.iter().copied().filter(|&v| s[v] == 0).collect();
        if free.len() >= 2 {
            return Some((free[1], CleanupProperty::FreeTwins));
        }
    }
    (0..inst.host.n())
        .find(|&v| inst.host.degree(v) + s[v] <= t)
        .map(|v| (v, CleanupProperty::LowWeight))
}

fn drop_vertex(inst: &SystemInstance, v: usize, drop_sets: bool) -> SystemInstance {
    let host = inst.host.without_vertex(v).expect("vertex in range");
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let family = inst.family.remap(|s| {
        if s.contains(&v) {
            if drop_sets {
                return None;
            }
            panic!("free twin lies in a set");
        }
        Some(s.iter().map(|&u| shift(u)).collect())
    });
    SystemInstance { host, family, ..inst.clone() }
}

/// One clean-up step on a maximal `(r, t)`-system.
pub fn cleanup_step(inst: &SystemInstance) -> Result<CleanupOutcome, SystemError> {
    if inst.t.is_none() || inst.primed {
        return Err(SystemError::BadParams { r: inst.r, t: inst.t });
    }
    let (ok, _) = check_maximal(inst)?;
    if !ok {
        return Err(SystemError::Invalid("clean-up needs a maximal system".into()));
    }
    let (v, property) = cleanup_target(inst).ok_or(SystemError::CleanupNotApplicable)?;
    Ok(apply_cleanup(inst, v, property))
}

pub(crate) fn apply_cleanup(inst: &SystemInstance, v: usize, property: CleanupProperty) -> CleanupOutcome {
    match property {
        CleanupProperty::FreeTwins => CleanupOutcome {
            system: SystemInstance { maximal: true, ..drop_vertex(inst, v, false) },
            removed: v,
            property,
            added_edges: 0,
        },
        CleanupProperty::LowWeight => {
            let reduced = drop_vertex(inst, v, true);
            let (system, added_edges) = maximalize_unchecked(&reduced);
            CleanupOutcome { system, removed: v, property, added_edges }
        }
    }
}

/// Applies clean-up steps until neither property holds.
pub fn cleanup_all(inst: &SystemInstance) -> Result<SystemInstance, SystemError> {
    let mut cur = cleanup_step_or_self(inst)?;
    while let Some((v, p)) = cleanup_target(&cur) {
        cur = apply_cleanup(&cur, v, p).system;
    }
    Ok(cur)
}

fn cleanup_step_or_self(inst: &SystemInstance) -> Result<SystemInstance, SystemError> {
    match cleanup_step(inst) {
        Ok(o) => Ok(o.system),
        Err(SystemError::CleanupNotApplicable) => Ok(inst.clone()),
        Err(e) => Err(e),
    }
}
