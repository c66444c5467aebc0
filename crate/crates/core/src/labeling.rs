//! Set-labelings of graphs, their induced edge labels, and verification
//! against each labeling class.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, GraphJson};
use crate::intset::{IntSet, IntSetError, Universe};

/// Upper bound on the violations a single report carries.
pub const MAX_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("{labels} labels for {vertices} vertices")]
    LabelCount { labels: usize, vertices: usize },
    #[error("label of vertex {vertex}: {source}")]
    LabelOutOfUniverse { vertex: usize, source: IntSetError },
    #[error("edge ({u}, {v}): {source}")]
    EdgeOutOfUniverse {
        u: usize,
        v: usize,
        source: IntSetError,
    },
    #[error("ground set: {0}")]
    GroundSetOutOfUniverse(IntSetError),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("labeling is not a weak labeling: {0}")]
    NotWeak(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown labeling class {0:?}")]
    UnknownClass(String),
    #[error("malformed labeling JSON: {0}")]
    Json(String),
}

/// The labeling classes a labeling can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelingClass {
    /// Injective non-empty vertex labels, everything inside the ground set.
    Iasl,
    /// IASL with injective edge labels.
    Iasi,
    /// IASL where each edge label is as large as its larger endpoint label.
    Wiasl,
    /// WIASL with injective edge labels.
    Wiasi,
    /// WIASL where every edge label has exactly `k` elements.
    Uniform(usize),
}

impl fmt::Display for LabelingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelingClass::Iasl => f.write_str("IASL"),
            LabelingClass::Iasi => f.write_str("IASI"),
            LabelingClass::Wiasl => f.write_str("WIASL"),
            LabelingClass::Wiasi => f.write_str("WIASI"),
            LabelingClass::Uniform(k) => write!(f, "uniform:{k}"),
        }
    }
}

impl FromStr for LabelingClass {
    type Err = LabelingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "iasl" => Ok(LabelingClass::Iasl),
            "iasi" => Ok(LabelingClass::Iasi),
            "wiasl" => Ok(LabelingClass::Wiasl),
            "wiasi" => Ok(LabelingClass::Wiasi),
            _ => lower
                .strip_prefix("uniform:")
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 1)
                .map(LabelingClass::Uniform)
                .ok_or_else(|| LabelingError::UnknownClass(s.to_owned())),
        }
    }
}

impl Serialize for LabelingClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LabelingClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A graph with one set-label per vertex and a declared ground set.
///
/// Edge labels are always recomputed from vertex labels. Construction
/// checks that every vertex label, edge label and the ground set fit in
/// the universe, so later sumsets cannot overflow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetLabeling {
    graph: Graph,
    labels: Vec<IntSet>,
    ground_set: IntSet,
    universe: Universe,
}

impl SetLabeling {
    pub fn new(
        graph: Graph,
        labels: Vec<IntSet>,
        ground_set: IntSet,
    ) -> Result<Self, LabelingError> {
        Self::with_universe(graph, labels, ground_set, Universe::default())
    }

    pub fn with_universe(
        graph: Graph,
        labels: Vec<IntSet>,
        ground_set: IntSet,
        universe: Universe,
    ) -> Result<Self, LabelingError> {
        if labels.len() != graph.vertex_count() {
            return Err(LabelingError::LabelCount {
                labels: labels.len(),
                vertices: graph.vertex_count(),
            });
        }
        for (vertex, label) in labels.iter().enumerate() {
            universe
                .check(label)
                .map_err(|source| LabelingError::LabelOutOfUniverse { vertex, source })?;
        }
        universe
            .check(&ground_set)
            .map_err(LabelingError::GroundSetOutOfUniverse)?;
        for &(u, v) in graph.edges() {
            if labels[u].is_empty() || labels[v].is_empty() {
                continue;
            }
            labels[u]
                .sumset_in(&labels[v], universe)
                .map_err(|source| LabelingError::EdgeOutOfUniverse { u, v, source })?;
        }
        Ok(SetLabeling {
            graph,
            labels,
            ground_set,
            universe,
        })
    }

    /// A labeling whose ground set is exactly the union of its vertex and
    /// edge labels.
    pub fn with_minimal_ground_set(
        graph: Graph,
        labels: Vec<IntSet>,
    ) -> Result<Self, LabelingError> {
        let mut f = Self::new(graph, labels, IntSet::new())?;
        f.ground_set = f.minimal_ground_set();
        Ok(f)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[IntSet] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &IntSet {
        &self.labels[v]
    }

    pub fn ground_set(&self) -> &IntSet {
        &self.ground_set
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    /// The same labeling with a different declared ground set.
    pub fn replace_ground_set(&self, ground_set: IntSet) -> Result<Self, LabelingError> {
        self.universe
            .check(&ground_set)
            .map_err(LabelingError::GroundSetOutOfUniverse)?;
        Ok(SetLabeling {
            ground_set,
            ..self.clone()
        })
    }

    /// The induced label `f(u) + f(v)` of edge `uv`.
    pub fn edge_label(&self, u: usize, v: usize) -> Result<IntSet, LabelingError> {
        if !self.graph.has_edge(u, v) {
            return Err(LabelingError::NotAnEdge(u, v));
        }
        Ok(self.sum(u, v))
    }

    fn sum(&self, u: usize, v: usize) -> IntSet {
        if self.labels[u].is_empty() || self.labels[v].is_empty() {
            return IntSet::new();
        }
        self.labels[u]
            .sumset_in(&self.labels[v], self.universe)
            .expect("edge sums were checked against the universe at construction")
    }

    /// Every edge with its induced label, in edge order.
    pub fn edge_labels(&self) -> Vec<((usize, usize), IntSet)> {
        self.graph
            .edges()
            .iter()
            .map(|&(u, v)| ((u, v), self.sum(u, v)))
            .collect()
    }

    /// Union of all vertex labels and induced edge labels.
    pub fn minimal_ground_set(&self) -> IntSet {
        let mut out = IntSet::new();
        for label in &self.labels {
            out.union_with(label);
        }
        for (_, label) in self.edge_labels() {
            out.union_with(&label);
        }
        out
    }

    /// Vertices with singleton labels. On a weak labeling these always
    /// cover every edge.
    pub fn singleton_cover(&self) -> Result<Vec<usize>, LabelingError> {
        let report = verify(self, LabelingClass::Wiasl);
        if let Some(first) = report.violations.first() {
            return Err(LabelingError::NotWeak(first.to_string()));
        }
        let cover: Vec<usize> = (0..self.labels.len())
            .filter(|&v| self.labels[v].is_singleton())
            .collect();
        assert!(
            self.graph.is_vertex_cover(&cover),
            "singleton vertices of a weak labeling must cover every edge"
        );
        Ok(cover)
    }

    pub fn to_file(&self, class: LabelingClass) -> LabelingFile {
        LabelingFile {
            graph: self.graph.to_json(),
            labels: self.labels.iter().cloned().enumerate().collect(),
            ground_set: self.ground_set.clone(),
            class: Some(class),
        }
    }

    pub fn to_json(&self, class: LabelingClass) -> String {
        serde_json::to_string_pretty(&self.to_file(class)).expect("labeling serializes")
    }

    /// DOT with each vertex annotated by its label.
    pub fn to_dot(&self, name: &str) -> String {
        self.graph
            .to_dot_with_labels(name, |v| Some(self.labels[v].to_string()))
    }
}

/// On-disk labeling:
/// `{"graph": {...}, "labels": {"0": [1], ...}, "ground_set": [...], "class": "WIASL"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingFile {
    pub graph: GraphJson,
    pub labels: BTreeMap<usize, IntSet>,
    pub ground_set: IntSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<LabelingClass>,
}

impl LabelingFile {
    pub fn from_json(text: &str) -> Result<Self, LabelingError> {
        serde_json::from_str(text).map_err(|e| LabelingError::Json(e.to_string()))
    }

    /// The labeling, with the declared class (WIASL when absent).
    pub fn into_labeling(self) -> Result<(SetLabeling, LabelingClass), LabelingError> {
        let graph = Graph::try_from(self.graph)?;
        let n = graph.vertex_count();
        if self.labels.len() != n || self.labels.keys().any(|&v| v >= n) {
            return Err(LabelingError::LabelCount {
                labels: self.labels.len(),
                vertices: n,
            });
        }
        let labels = self.labels.into_values().collect();
        let f = SetLabeling::new(graph, labels, self.ground_set)?;
        Ok((f, self.class.unwrap_or(LabelingClass::Wiasl)))
    }
}

/// Which rule a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    EmptyLabel,
    DuplicateVertexLabel,
    VertexLabelOutsideGround,
    EdgeLabelOutsideGround,
    DuplicateEdgeLabel,
    WeakCardinality,
    UniformCardinality,
}

/// What a violation points at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Vertex(usize),
    VertexPair(usize, usize),
    Edge(usize, usize),
    EdgePair([usize; 2], [usize; 2]),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::VertexPair(u, v) => write!(f, "vertices {u} and {v}"),
            Witness::Edge(u, v) => write!(f, "edge ({u}, {v})"),
            Witness::EdgePair(a, b) => {
                write!(f, "edges ({}, {}) and ({}, {})", a[0], a[1], b[0], b[1])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub witness: Witness,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {}: {}", self.rule, self.witness, self.detail)
    }
}

/// Outcome of [`verify`]. `valid` holds exactly when `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub checked_class: LabelingClass,
    pub violations: Vec<Violation>,
    /// More than [`MAX_VIOLATIONS`] violations were found.
    pub truncated: bool,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return writeln!(f, "{}: valid", self.checked_class);
        }
        writeln!(
            f,
            "{}: invalid ({} violation{}{})",
            self.checked_class,
            self.violations.len(),
            if self.violations.len() == 1 { "" } else { "s" },
            if self.truncated { ", truncated" } else { "" }
        )?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

struct Collector {
    violations: Vec<Violation>,
    truncated: bool,
}

impl Collector {
    fn push(&mut self, rule: Rule, witness: Witness, detail: String) {
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(Violation {
                rule,
                witness,
                detail,
            });
        } else {
            self.truncated = true;
        }
    }
}

/// Checks `f` against `class`, collecting every violation (up to
/// [`MAX_VIOLATIONS`]).
pub fn verify(f: &SetLabeling, class: LabelingClass) -> VerifyReport {
    let mut out = Collector {
        violations: Vec::new(),
        truncated: false,
    };
    let ground = f.ground_set();

    let mut seen: HashMap<&IntSet, usize> = HashMap::new();
    for (v, label) in f.labels().iter().enumerate() {
        if label.is_empty() {
            out.push(
                Rule::EmptyLabel,
                Witness::Vertex(v),
                "label is empty".into(),
            );
            continue;
        }
        if let Some(&u) = seen.get(label) {
            out.push(
                Rule::DuplicateVertexLabel,
                Witness::VertexPair(u, v),
                format!("both labeled {label}"),
            );
        } else {
            seen.insert(label, v);
        }
        if !label.is_subset(ground) {
            out.push(
                Rule::VertexLabelOutsideGround,
                Witness::Vertex(v),
                format!("{label} is not a subset of {ground}"),
            );
        }
    }

    let edge_labels = f.edge_labels();
    let mut seen_edges: HashMap<&IntSet, (usize, usize)> = HashMap::new();
    for ((u, v), label) in &edge_labels {
        let (u, v) = (*u, *v);
        let (a, b) = (f.label(u), f.label(v));
        if a.is_empty() || b.is_empty() {
            continue;
        }
        if !label.is_subset(ground) {
            out.push(
                Rule::EdgeLabelOutsideGround,
                Witness::Edge(u, v),
                format!("{a} + {b} = {label} is not a subset of {ground}"),
            );
        }
        if matches!(class, LabelingClass::Iasi | LabelingClass::Wiasi) {
            if let Some(&(x, y)) = seen_edges.get(label) {
                out.push(
                    Rule::DuplicateEdgeLabel,
                    Witness::EdgePair([x, y], [u, v]),
                    format!("both induce {label}"),
                );
            } else {
                seen_edges.insert(label, (u, v));
            }
        }
        let weak = matches!(
            class,
            LabelingClass::Wiasl | LabelingClass::Wiasi | LabelingClass::Uniform(_)
        );
        let larger = a.len().max(b.len());
        if weak && label.len() != larger {
            out.push(
                Rule::WeakCardinality,
                Witness::Edge(u, v),
                format!(
                    "|{a} + {b}| = {} but max(|f(u)|, |f(v)|) = {larger}",
                    label.len()
                ),
            );
        }
        if let LabelingClass::Uniform(k) = class {
            if label.len() != k {
                out.push(
                    Rule::UniformCardinality,
                    Witness::Edge(u, v),
                    format!("|{label}| = {} but k = {k}", label.len()),
                );
            }
        }
    }

    VerifyReport {
        valid: out.violations.is_empty(),
        checked_class: class,
        violations: out.violations,
        truncated: out.truncated,
    }
}
