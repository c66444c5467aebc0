//! Exact minimum ground sets over a bounded universe.
//!
//! In a weak labeling every edge has a singleton end, so the singleton
//! vertices form a vertex cover. The search enumerates covers by size and
//! makes exactly the cover vertices singletons: first distinct values for the
//! cover (pruned by the sums they force), then distinct non-singleton sets
//! for the rest, chosen from the values their singleton neighbours allow.
//!
//! Sets are `u128` bit masks, so elements are limited to `0..=63` and every
//! sum of two elements fits.

use std::cmp::Ordering as CmpOrdering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::constructors::{claimed_value, construct, ConstructError};
use crate::family::{generate, FamilySpec};
use crate::graph::{Graph, GraphError};
use crate::intset::IntSet;
use crate::labeling::{LabelingClass, SetLabeling};

/// Largest element the solver can place in a ground set.
pub const MAX_ELEMENT: u32 = 63;
pub const DEFAULT_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has {n} vertices; the exact solver is limited to {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("universe bound {bound} exceeds the solver maximum {MAX_ELEMENT}")]
    BoundTooLarge { bound: u32 },
    #[error("candidate ground set is empty")]
    EmptyGroundSet,
    #[error("candidate ground set contains {value}, above the solver maximum {MAX_ELEMENT}")]
    ElementTooLarge { value: u32 },
    #[error("candidate ground set contains 0 but zero is not allowed")]
    ZeroNotAllowed,
    #[error("uniformity must be at least 1")]
    ZeroUniformity,
    #[error("no weak labeling exists within {ground}")]
    Infeasible { ground: IntSet },
    #[error("time budget exhausted")]
    Timeout,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Which labelings count as solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMode {
    Wiasl,
    /// Weak labelings whose edge labels are also distinct.
    Wiasi,
    /// Weak labelings whose edge labels all have `k` elements.
    Uniform(usize),
}

impl SolveMode {
    pub fn class(self) -> LabelingClass {
        match self {
            SolveMode::Wiasl => LabelingClass::Wiasl,
            SolveMode::Wiasi => LabelingClass::Wiasi,
            SolveMode::Uniform(k) => LabelingClass::Uniform(k),
        }
    }
}

impl fmt::Display for SolveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveMode::Wiasl => f.write_str("wiasl"),
            SolveMode::Wiasi => f.write_str("wiasi"),
            SolveMode::Uniform(k) => write!(f, "uniform:{k}"),
        }
    }
}

impl FromStr for SolveMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "wiasl" => Ok(SolveMode::Wiasl),
            "wiasi" => Ok(SolveMode::Wiasi),
            _ => match lower.strip_prefix("uniform:").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Ok(SolveMode::Uniform(k)),
                _ => Err(format!(
                    "unknown mode {s:?} (expected wiasl, wiasi or uniform:k with k >= 1)"
                )),
            },
        }
    }
}

impl Serialize for SolveMode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which candidate ground sets are tried at each size `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniverseMode {
    /// Only the segment `{lo, ..., lo + m - 1}`.
    Segment,
    /// Every `m`-subset of `{lo, ..., bound}`.
    AllSubsets,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: SolveMode,
    pub universe: UniverseMode,
    /// Largest admissible element. `None` picks a default from the graph.
    pub bound: Option<u32>,
    /// Lets 0 appear in labels; candidate ground sets then start at 0.
    pub allow_zero: bool,
    /// Rejects labelings in which every vertex label is a singleton.
    pub require_non_uniform: bool,
    /// Largest vertex label. `None` means no limit beyond the ground set.
    pub max_label_size: Option<usize>,
    pub time_budget: Option<Duration>,
    pub max_vertices: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: SolveMode::Wiasl,
            universe: UniverseMode::Segment,
            bound: None,
            allow_zero: false,
            require_non_uniform: true,
            max_label_size: None,
            time_budget: None,
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl SolveOptions {
    /// Smallest admissible element.
    pub fn lo(&self) -> u32 {
        if self.allow_zero {
            0
        } else {
            1
        }
    }

    fn non_uniform(&self) -> bool {
        self.require_non_uniform && self.mode != SolveMode::Uniform(1)
    }
}

/// Default bound for a graph without a published value.
pub fn default_bound(g: &Graph) -> u32 {
    (2 * g.vertex_count() as u32 + 2).min(MAX_ELEMENT)
}

/// Default bound for a family audit: twice the published value plus two.
pub fn audit_bound(claimed: usize) -> u32 {
    (2 * claimed as u32 + 2).min(MAX_ELEMENT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    OptimalWithinUniverse,
    Timeout,
    InfeasibleWithinUniverse,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::OptimalWithinUniverse => "optimal-within-universe",
            SolveStatus::Timeout => "timeout",
            SolveStatus::InfeasibleWithinUniverse => "infeasible-within-universe",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub mode: SolveMode,
    pub minimum: Option<usize>,
    pub witness: Option<SetLabeling>,
    /// Largest element any candidate ground set could use.
    pub universe_bound: u32,
    pub lower_bound: usize,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": self.status,
            "mode": self.mode,
            "minimum": self.minimum,
            "universe_bound": self.universe_bound,
            "lower_bound": self.lower_bound,
            "nodes_explored": self.nodes_explored,
            "elapsed_ms": self.elapsed.as_millis() as u64,
            "witness": self.witness.as_ref().map(|w| w.to_file(self.mode.class())),
        })
    }
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.status)?;
        writeln!(f, "mode: {}", self.mode)?;
        match self.minimum {
            Some(m) => writeln!(f, "minimum: {m}")?,
            None => writeln!(f, "minimum: -")?,
        }
        writeln!(f, "universe bound: {}", self.universe_bound)?;
        writeln!(f, "nodes explored: {}", self.nodes_explored)?;
        if let Some(w) = &self.witness {
            writeln!(f, "ground set: {}", w.ground_set())?;
            for (v, label) in w.labels().iter().enumerate() {
                writeln!(f, "  v{v}: {label}")?;
            }
        }
        Ok(())
    }
}

/// Smallest ground set size that could possibly work: `n` distinct
/// non-empty labels need `2^m - 1 >= n`.
pub fn lower_bound(g: &Graph, opts: &SolveOptions) -> usize {
    let n = g.vertex_count();
    let mut m = 1;
    while (1usize << m) - 1 < n {
        m += 1;
    }
    if opts.non_uniform() {
        m = m.max(2);
    }
    m
}

fn check_graph(g: &Graph, opts: &SolveOptions) -> Result<(), SolveError> {
    if g.vertex_count() > opts.max_vertices {
        return Err(SolveError::TooManyVertices {
            n: g.vertex_count(),
            limit: opts.max_vertices,
        });
    }
    if opts.mode == SolveMode::Uniform(0) {
        return Err(SolveError::ZeroUniformity);
    }
    Ok(())
}

fn to_mask(x: &IntSet, allow_zero: bool) -> Result<u128, SolveError> {
    if x.is_empty() {
        return Err(SolveError::EmptyGroundSet);
    }
    let mut mask = 0u128;
    for value in x.iter() {
        if value > MAX_ELEMENT {
            return Err(SolveError::ElementTooLarge { value });
        }
        if value == 0 && !allow_zero {
            return Err(SolveError::ZeroNotAllowed);
        }
        mask |= 1 << value;
    }
    Ok(mask)
}

fn from_mask(mask: u128) -> IntSet {
    bits(mask).collect()
}

fn bits(mut mask: u128) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let b = mask.trailing_zeros();
        mask &= mask - 1;
        Some(b)
    })
}

/// Subsets of `mask` with size in `sizes`, smallest first, then
/// lexicographically; at most `limit` of them.
fn subsets_of_mask(mask: u128, sizes: std::ops::RangeInclusive<usize>, limit: usize) -> Vec<u128> {
    let positions: Vec<u32> = bits(mask).collect();
    let mut out = Vec::new();
    for size in sizes {
        if size > positions.len() {
            break;
        }
        for combo in positions.iter().combinations(size) {
            if out.len() == limit {
                return out;
            }
            out.push(combo.into_iter().fold(0u128, |m, &b| m | 1 << b));
        }
    }
    out
}

/// Vertex covers of `g` as bit masks, smallest first, then
/// lexicographically by sorted vertex list.
fn vertex_covers(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut covers: Vec<u32> = (0..1u32 << n)
        .filter(|&c| {
            g.edges()
                .iter()
                .all(|&(u, v)| c >> u & 1 == 1 || c >> v & 1 == 1)
        })
        .collect();
    covers.sort_by_cached_key(|&c| {
        let list: Vec<usize> = (0..n).filter(|&v| c >> v & 1 == 1).collect();
        (list.len(), list)
    });
    covers
}

struct Stop;

struct Shared {
    stop: AtomicBool,
    nodes: AtomicU64,
    deadline: Option<Instant>,
}

impl Shared {
    fn new(budget: Option<Duration>) -> Self {
        Shared {
            stop: AtomicBool::new(false),
            nodes: AtomicU64::new(0),
            deadline: budget.map(|b| Instant::now() + b),
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    x: u128,
    mode: SolveMode,
    max_size: usize,
    shared: &'a Shared,
    local: u64,
}

// A singleton assignment for one cover, ready for the second phase.
struct CoverState {
    cover: Vec<usize>,
    rest: Vec<usize>,
    rest_index: Vec<Option<usize>>,
    value: Vec<u32>,
    allowed: Vec<u128>,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<(), Stop> {
        self.local += 1;
        if self.local.is_multiple_of(1024) {
            self.shared.nodes.fetch_add(1024, Ordering::Relaxed);
            if let Some(d) = self.shared.deadline {
                if Instant::now() >= d {
                    self.shared.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.shared.stop.load(Ordering::Relaxed) {
            return Err(Stop);
        }
        Ok(())
    }

    fn finish(&self) {
        self.shared
            .nodes
            .fetch_add(self.local % 1024, Ordering::Relaxed);
    }

    fn need(&self) -> usize {
        match self.mode {
            SolveMode::Uniform(k) => k,
            _ => 2,
        }
    }

    fn cover_admissible(&self, cover: u32, non_uniform: bool) -> bool {
        let n = self.g.vertex_count();
        let all = cover.count_ones() as usize == n;
        match self.mode {
            SolveMode::Uniform(1) => all,
            SolveMode::Uniform(_) => {
                !all && self
                    .g
                    .edges()
                    .iter()
                    .all(|&(u, v)| !(cover >> u & 1 == 1 && cover >> v & 1 == 1))
            }
            _ => !(all && non_uniform),
        }
    }

    /// Labels as masks, or `None` if no labeling uses exactly `cover` as
    /// its singleton vertices.
    fn with_cover(&mut self, cover: u32) -> Result<Option<Vec<u128>>, Stop> {
        let n = self.g.vertex_count();
        let cover_list: Vec<usize> = (0..n).filter(|&v| cover >> v & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|&v| cover >> v & 1 == 0).collect();
        let mut rest_index = vec![None; n];
        for (i, &w) in rest.iter().enumerate() {
            rest_index[w] = Some(i);
        }
        if self.x.count_ones() < self.need() as u32 && !rest.is_empty() {
            return Ok(None);
        }
        let mut state = CoverState {
            allowed: vec![self.x; rest.len()],
            value: vec![u32::MAX; n],
            cover: cover_list,
            rest,
            rest_index,
        };
        self.assign_singletons(&mut state, 0, 0, 0)
    }

    fn assign_singletons(
        &mut self,
        st: &mut CoverState,
        i: usize,
        used: u128,
        sums: u128,
    ) -> Result<Option<Vec<u128>>, Stop> {
        if i == st.cover.len() {
            return self.assign_sets(st);
        }
        let v = st.cover[i];
        let need = self.need() as u32;
        for a in bits(self.x & !used) {
            self.tick()?;
            let mut new_sums = 0u128;
            let mut ok = true;
            for &u in self.g.neighbors(v) {
                let b = st.value[u];
                if b == u32::MAX {
                    continue;
                }
                let bit = 1u128 << (a + b);
                let clash = self.mode == SolveMode::Wiasi && (sums | new_sums) & bit != 0;
                if self.x & bit == 0 || clash {
                    ok = false;
                    break;
                }
                new_sums |= bit;
            }
            if !ok {
                continue;
            }
            let saved = st.allowed.clone();
            for &w in self.g.neighbors(v) {
                if let Some(j) = st.rest_index[w] {
                    st.allowed[j] &= self.x >> a;
                    if st.allowed[j].count_ones() < need {
                        ok = false;
                    }
                }
            }
            if ok {
                st.value[v] = a;
                let found = self.assign_singletons(st, i + 1, used | 1 << a, sums | new_sums);
                st.value[v] = u32::MAX;
                if let Some(labels) = found? {
                    return Ok(Some(labels));
                }
            }
            st.allowed = saved;
        }
        Ok(None)
    }

    fn candidates(&self, allowed: u128, limit: usize) -> Vec<u128> {
        let sizes = match self.mode {
            SolveMode::Uniform(k) => k..=k,
            _ => 2..=self.max_size,
        };
        subsets_of_mask(allowed, sizes, limit)
    }

    fn assign_sets(&mut self, st: &CoverState) -> Result<Option<Vec<u128>>, Stop> {
        self.tick()?;
        let chosen = if self.mode == SolveMode::Wiasi {
            let lists: Vec<Vec<u128>> = st
                .allowed
                .iter()
                .map(|&a| self.candidates(a, usize::MAX))
                .collect();
            let mut chosen = vec![0u128; st.rest.len()];
            let mut edge_labels = HashSet::new();
            let mut used = HashSet::new();
            if self.indexing(st, &lists, 0, &mut chosen, &mut used, &mut edge_labels)? {
                Some(chosen)
            } else {
                None
            }
        } else {
            // Hall: a vertex with at least |rest| options never blocks a
            // matching, so longer lists can be cut.
            let lists: Vec<Vec<u128>> = st
                .allowed
                .iter()
                .map(|&a| self.candidates(a, st.rest.len()))
                .collect();
            distinct_representatives(&lists)
        };
        Ok(chosen.map(|sets| {
            let mut labels: Vec<u128> = st
                .value
                .iter()
                .map(|&a| if a == u32::MAX { 0 } else { 1u128 << a })
                .collect();
            for (&w, set) in st.rest.iter().zip(sets) {
                labels[w] = set;
            }
            labels
        }))
    }

    // Distinct sets with distinct edge labels, by backtracking.
    fn indexing(
        &mut self,
        st: &CoverState,
        lists: &[Vec<u128>],
        j: usize,
        chosen: &mut [u128],
        used: &mut HashSet<u128>,
        edge_labels: &mut HashSet<u128>,
    ) -> Result<bool, Stop> {
        if j == lists.len() {
            return Ok(true);
        }
        let w = st.rest[j];
        for &set in &lists[j] {
            self.tick()?;
            if used.contains(&set) {
                continue;
            }
            let shifted: Vec<u128> = self
                .g
                .neighbors(w)
                .iter()
                .map(|&u| set << st.value[u])
                .collect();
            if shifted.iter().any(|e| edge_labels.contains(e)) {
                continue;
            }
            used.insert(set);
            edge_labels.extend(shifted.iter().copied());
            chosen[j] = set;
            if self.indexing(st, lists, j + 1, chosen, used, edge_labels)? {
                return Ok(true);
            }
            used.remove(&set);
            for e in &shifted {
                edge_labels.remove(e);
            }
        }
        Ok(false)
    }

    fn run(&mut self, covers: &[u32], non_uniform: bool) -> Result<Option<(u32, Vec<u128>)>, Stop> {
        for &cover in covers {
            if !self.cover_admissible(cover, non_uniform) {
                continue;
            }
            if let Some(labels) = self.with_cover(cover)? {
                return Ok(Some((cover, labels)));
            }
        }
        Ok(None)
    }
}

// Kuhn's augmenting-path matching, trying candidates in list order.
fn distinct_representatives(lists: &[Vec<u128>]) -> Option<Vec<u128>> {
    fn augment(
        j: usize,
        lists: &[Vec<u128>],
        owner: &mut HashMap<u128, usize>,
        seen: &mut HashSet<u128>,
    ) -> bool {
        for &set in &lists[j] {
            if !seen.insert(set) {
                continue;
            }
            let free = match owner.get(&set) {
                None => true,
                Some(&k) => augment(k, lists, owner, seen),
            };
            if free {
                owner.insert(set, j);
                return true;
            }
        }
        false
    }

    let mut owner: HashMap<u128, usize> = HashMap::new();
    for j in 0..lists.len() {
        if !augment(j, lists, &mut owner, &mut HashSet::new()) {
            return None;
        }
    }
    let mut chosen = vec![0u128; lists.len()];
    for (set, j) in owner {
        chosen[j] = set;
    }
    Some(chosen)
}

fn build_witness(g: &Graph, x: u128, labels: &[u128]) -> SetLabeling {
    let labels = labels.iter().map(|&m| from_mask(m)).collect();
    SetLabeling::new(g.clone(), labels, from_mask(x)).expect("solver values fit the universe")
}

fn search_in(
    g: &Graph,
    x: u128,
    opts: &SolveOptions,
    covers: &[u32],
    shared: &Shared,
) -> Result<Option<(u32, Vec<u128>)>, Stop> {
    let mut search = Search {
        g,
        x,
        mode: opts.mode,
        max_size: opts
            .max_label_size
            .unwrap_or(usize::MAX)
            .min(x.count_ones() as usize),
        shared,
        local: 0,
    };
    let out = search.run(covers, opts.non_uniform());
    search.finish();
    out
}

/// A labeling valid for `opts.mode` whose ground set is `x`, if one exists.
///
/// The witness declares `x` as its ground set even when the labels use
/// only part of it.
pub fn exists_labeling(
    g: &Graph,
    x: &IntSet,
    opts: &SolveOptions,
) -> Result<Option<SetLabeling>, SolveError> {
    check_graph(g, opts)?;
    let mask = to_mask(x, opts.allow_zero)?;
    let shared = Shared::new(opts.time_budget);
    let covers = vertex_covers(g);
    match search_in(g, mask, opts, &covers, &shared) {
        Ok(found) => Ok(found.map(|(_, labels)| build_witness(g, mask, &labels))),
        Err(Stop) => Err(SolveError::Timeout),
    }
}

/// The smallest ground set admitting a labeling for `opts.mode`, searched
/// size by size up to the universe bound.
pub fn min_ground_set(g: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    check_graph(g, opts)?;
    let bound = opts.bound.unwrap_or_else(|| default_bound(g));
    if bound > MAX_ELEMENT {
        return Err(SolveError::BoundTooLarge { bound });
    }
    let start = Instant::now();
    let shared = Shared::new(opts.time_budget);
    let covers = vertex_covers(g);
    let lo = opts.lo();
    let lb = lower_bound(g, opts);
    let width = (bound + 1).saturating_sub(lo) as usize;

    let mut status = SolveStatus::InfeasibleWithinUniverse;
    let mut found = None;
    'levels: for m in lb..=width {
        let level: Vec<u128> = match opts.universe {
            UniverseMode::Segment => vec![((1u128 << m) - 1) << lo],
            UniverseMode::AllSubsets => {
                subsets_of_mask(((1u128 << width) - 1) << lo, m..=m, usize::MAX)
            }
        };
        let hit =
            level
                .par_iter()
                .find_map_first(|&x| match search_in(g, x, opts, &covers, &shared) {
                    Ok(None) => None,
                    Ok(Some((_, labels))) => Some(Ok((x, labels))),
                    Err(Stop) => Some(Err(Stop)),
                });
        match hit {
            None => {}
            Some(Ok((x, labels))) => {
                status = SolveStatus::OptimalWithinUniverse;
                found = Some((m, build_witness(g, x, &labels)));
                break 'levels;
            }
            Some(Err(Stop)) => {
                status = SolveStatus::Timeout;
                break 'levels;
            }
        }
    }
    let (minimum, witness) = match found {
        Some((m, w)) => (Some(m), Some(w)),
        None => (None, None),
    };
    Ok(SolveResult {
        status,
        mode: opts.mode,
        minimum,
        witness,
        universe_bound: bound,
        lower_bound: lb,
        nodes_explored: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}

/// The fewest singleton vertices in any weak labeling within `x`,
/// all-singleton labelings included.
pub fn min_singleton_count(g: &Graph, x: &IntSet) -> Result<usize, SolveError> {
    let opts = SolveOptions {
        require_non_uniform: false,
        max_vertices: g.vertex_count().max(DEFAULT_MAX_VERTICES),
        ..SolveOptions::default()
    };
    check_graph(g, &opts)?;
    let mask = to_mask(x, true)?;
    let shared = Shared::new(None);
    let covers = vertex_covers(g);
    match search_in(g, mask, &opts, &covers, &shared) {
        Ok(Some((cover, _))) => Ok(cover.count_ones() as usize),
        Ok(None) => Err(SolveError::Infeasible { ground: x.clone() }),
        Err(Stop) => Err(SolveError::Timeout),
    }
}

/// How the solver's minimum compares with the published value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Less,
    Equal,
    Greater,
}

impl From<CmpOrdering> for Relation {
    fn from(o: CmpOrdering) -> Self {
        match o {
            CmpOrdering::Less => Relation::Less,
            CmpOrdering::Equal => Relation::Equal,
            CmpOrdering::Greater => Relation::Greater,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Less => "<",
            Relation::Equal => "=",
            Relation::Greater => ">",
        })
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One line of the published-value audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub family: String,
    pub n: usize,
    pub claimed: usize,
    pub construction: usize,
    pub exception: bool,
    pub oracle: Option<usize>,
    /// Oracle minimum compared with the published value.
    pub relation: Option<Relation>,
    pub universe_bound: u32,
    pub status: SolveStatus,
    pub nodes_explored: u64,
}

/// Table columns. Node counts are left out: with parallel search they vary
/// from run to run.
pub const AUDIT_COLUMNS: [&str; 9] = [
    "family",
    "n",
    "claimed",
    "construction",
    "exception",
    "oracle",
    "relation",
    "universe_bound",
    "status",
];

impl AuditRow {
    pub fn fields(&self) -> [String; 9] {
        [
            self.family.clone(),
            self.n.to_string(),
            self.claimed.to_string(),
            self.construction.to_string(),
            self.exception.to_string(),
            self.oracle.map_or("-".into(), |m| m.to_string()),
            self.relation.map_or("-".into(), |r| r.to_string()),
            self.universe_bound.to_string(),
            self.status.to_string(),
        ]
    }
}

/// Compares published value, construction and solver minimum for one
/// family instance. Without an explicit bound the universe is
/// `{.., 2 * claimed + 2}`.
pub fn audit(spec: FamilySpec, opts: &SolveOptions) -> Result<AuditRow, SolveError> {
    let claimed = claimed_value(spec)?;
    let construction = construct(spec)?;
    let g = generate(spec)?;
    let opts = SolveOptions {
        bound: Some(opts.bound.unwrap_or_else(|| audit_bound(claimed))),
        ..opts.clone()
    };
    let result = min_ground_set(&g, &opts)?;
    Ok(AuditRow {
        family: spec.family.to_string(),
        n: spec.n,
        claimed,
        construction: construction.ground_set_size(),
        exception: construction.exception.is_some(),
        oracle: result.minimum,
        relation: result.minimum.map(|m| m.cmp(&claimed).into()),
        universe_bound: result.universe_bound,
        status: result.status,
        nodes_explored: result.nodes_explored,
    })
}
