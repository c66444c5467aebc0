//! Simple undirected graphs and the structural parameters the labeling
//! results depend on: vertex covers, independent sets and bipartitions.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::Family;

/// Vertex cover search works on `u32` masks.
pub const MAX_EXACT_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("role list has {got} entries for {n} vertices")]
    RoleCount { got: usize, n: usize },
    #[error("{family} requires n >= {min}, got {n}")]
    InvalidParameter {
        family: Family,
        n: usize,
        min: usize,
    },
    #[error("graph has {n} vertices; exact search is limited to {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// What a vertex is within a generated family graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Path,
    Cycle,
    Clique,
    Pendant,
    Petal,
    Apex,
    Hub,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Path => "path",
            Role::Cycle => "cycle",
            Role::Clique => "clique",
            Role::Pendant => "pendant",
            Role::Petal => "petal",
            Role::Apex => "apex",
            Role::Hub => "hub",
        }
    }
}

impl FromStr for Role {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_owned()))
            .map_err(|_| GraphError::Json(format!("unknown role {s:?}")))
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    roles: Vec<Option<Role>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adjacency,
            roles: vec![None; n],
        })
    }

    pub fn with_roles(mut self, roles: Vec<Option<Role>>) -> Result<Self, GraphError> {
        if roles.len() != self.n {
            return Err(GraphError::RoleCount {
                got: roles.len(),
                n: self.n,
            });
        }
        self.roles = roles;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn role(&self, v: usize) -> Option<Role> {
        self.roles[v]
    }

    /// Vertices carrying `role`, ascending.
    pub fn vertices_with_role(&self, role: Role) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.roles[v] == Some(role))
            .collect()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.adjacency[v].is_empty())
            .collect()
    }

    /// Fails on the first isolated vertex; labeling operations require none.
    pub fn require_no_isolated(&self) -> Result<(), GraphError> {
        match self.isolated_vertices().first() {
            Some(&v) => Err(GraphError::IsolatedVertex(v)),
            None => Ok(()),
        }
    }

    pub fn is_vertex_cover(&self, cover: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in cover {
            inside[v] = true;
        }
        self.edges.iter().all(|&(u, v)| inside[u] || inside[v])
    }

    fn adjacency_masks(&self) -> Result<Vec<u32>, GraphError> {
        if self.n > MAX_EXACT_VERTICES {
            return Err(GraphError::SizeLimit {
                n: self.n,
                limit: MAX_EXACT_VERTICES,
            });
        }
        Ok(self
            .adjacency
            .iter()
            .map(|list| list.iter().fold(0u32, |m, &w| m | 1 << w))
            .collect())
    }

    /// A minimum vertex cover, ascending.
    pub fn min_vertex_cover(&self) -> Result<Vec<usize>, GraphError> {
        let adj = self.adjacency_masks()?;
        let alive = if self.n == 0 {
            0
        } else {
            u32::MAX >> (32 - self.n)
        };
        let mut best = alive;
        cover_search(&adj, alive, 0, &mut best);
        Ok((0..self.n).filter(|&v| best & 1 << v != 0).collect())
    }

    /// The vertex covering number: size of a minimum vertex cover.
    pub fn vertex_cover_number(&self) -> Result<usize, GraphError> {
        Ok(self.min_vertex_cover()?.len())
    }

    /// The independence number, as the complement of a minimum cover.
    pub fn independence_number(&self) -> Result<usize, GraphError> {
        Ok(self.n - self.vertex_cover_number()?)
    }

    /// Two-colours the graph by breadth-first search, component by component,
    /// putting the smallest vertex of each component in part A.
    pub fn bipartition(&self) -> Bipartition {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!colour[u].unwrap_or(false));
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        Some(c) if Some(c) == colour[u] => {
                            return Bipartition::OddCycle(odd_cycle(u, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let (a, b) = (0..self.n).partition(|&v| colour[v] == Some(false));
        Bipartition::Parts { a, b }
    }

    /// Graphviz DOT, one `u -- v;` line per edge.
    pub fn to_dot(&self, name: &str) -> String {
        self.to_dot_with_labels(name, |_| None)
    }

    pub(crate) fn to_dot_with_labels<F>(&self, name: &str, label: F) -> String
    where
        F: Fn(usize) -> Option<String>,
    {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        for v in 0..self.n {
            let mut attrs = Vec::new();
            if let Some(text) = label(v) {
                attrs.push(format!("label=\"{v}: {text}\""));
            }
            if let Some(role) = self.roles[v] {
                attrs.push(format!("role=\"{}\"", role.as_str()));
            }
            if attrs.is_empty() {
                let _ = writeln!(out, "  {v};");
            } else {
                let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
            }
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        let mut roles: BTreeMap<Role, Vec<usize>> = BTreeMap::new();
        for (v, role) in self.roles.iter().enumerate() {
            if let Some(role) = role {
                roles.entry(*role).or_default().push(v);
            }
        }
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            roles,
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices, {} edges", self.n, self.edges.len())
    }
}

/// Serialized graph: `{"n": 4, "edges": [[0,1],...], "roles": {"cycle": [0,1,2]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub roles: BTreeMap<Role, Vec<usize>>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(json: GraphJson) -> Result<Self, GraphError> {
        let graph = Graph::new(json.n, json.edges.iter().map(|e| (e[0], e[1])))?;
        if json.roles.is_empty() {
            return Ok(graph);
        }
        let mut roles = vec![None; json.n];
        for (role, vertices) in json.roles {
            for v in vertices {
                let slot = roles
                    .get_mut(v)
                    .ok_or_else(|| GraphError::Json(format!("role vertex {v} out of range")))?;
                *slot = Some(role);
            }
        }
        graph.with_roles(roles)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = GraphJson::deserialize(deserializer)?;
        Graph::try_from(json).map_err(serde::de::Error::custom)
    }
}

/// Result of two-colouring a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Parts {
        a: Vec<usize>,
        b: Vec<usize>,
    },
    /// Vertices of an odd cycle, in cycle order.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Parts { .. })
    }
}

// Branch on a maximum-degree vertex: either it joins the cover, or all of
// its live neighbours do.
fn cover_search(adj: &[u32], alive: u32, chosen: u32, best: &mut u32) {
    if chosen.count_ones() >= best.count_ones() {
        return;
    }
    let mut pick = None;
    let mut pick_degree = 0;
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & alive).count_ones();
        if d > pick_degree {
            pick_degree = d;
            pick = Some(v);
        }
    }
    let Some(v) = pick else {
        *best = chosen;
        return;
    };
    // Every remaining edge needs its own cover vertex unless they share one.
    let remaining_edges: u32 = {
        let mut total = 0;
        let mut rest = alive;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += (adj[u] & alive).count_ones();
        }
        total / 2
    };
    let lower = remaining_edges.div_ceil(pick_degree);
    if chosen.count_ones() + lower >= best.count_ones() {
        return;
    }
    cover_search(adj, alive & !(1 << v), chosen | 1 << v, best);
    let neighbours = adj[v] & alive;
    if neighbours.count_ones() > 1 {
        cover_search(
            adj,
            alive & !neighbours & !(1 << v),
            chosen | neighbours,
            best,
        );
    }
}

fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (u, w);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{generate, FamilySpec};
    use proptest::prelude::*;

    fn family(f: Family, n: usize) -> Graph {
        generate(FamilySpec::new(f, n)).unwrap()
    }

    // Exhaustive minimum vertex cover over all vertex subsets.
    fn brute_cover(g: &Graph) -> usize {
        (0u32..1 << g.vertex_count())
            .filter(|mask| {
                g.edges()
                    .iter()
                    .all(|&(u, v)| mask & (1 << u | 1 << v) != 0)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn rejects_non_simple_input() {
        assert_eq!(Graph::new(3, [(1, 1)]).unwrap_err(), GraphError::Loop(1));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(g.require_no_isolated(), Err(GraphError::IsolatedVertex(2)));
    }

    #[test]
    fn cover_and_independence_examples() {
        let k4 = family(Family::Complete, 4);
        let p4 = family(Family::Path, 4);
        let c5 = family(Family::Cycle, 5);
        assert_eq!(k4.vertex_cover_number().unwrap(), 3);
        assert_eq!(p4.vertex_cover_number().unwrap(), brute_cover(&p4));
        assert_eq!(p4.vertex_cover_number().unwrap(), 2);
        assert_eq!(c5.vertex_cover_number().unwrap(), brute_cover(&c5));
        assert_eq!(c5.vertex_cover_number().unwrap(), 3);
        assert_eq!(k4.independence_number().unwrap(), 1);
        assert_eq!(c5.independence_number().unwrap(), 2);
        assert_eq!(p4.independence_number().unwrap(), 2);
    }

    #[test]
    fn cover_size_limit() {
        let big = family(Family::Path, 25);
        assert_eq!(
            big.vertex_cover_number().unwrap_err(),
            GraphError::SizeLimit { n: 25, limit: 24 }
        );
        assert!(family(Family::Path, 24).vertex_cover_number().is_ok());
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(
            family(Family::Cycle, 4).bipartition(),
            Bipartition::Parts {
                a: vec![0, 2],
                b: vec![1, 3]
            }
        );
        assert_eq!(
            family(Family::Path, 3).bipartition(),
            Bipartition::Parts {
                a: vec![0, 2],
                b: vec![1]
            }
        );
        let c5 = family(Family::Cycle, 5);
        let Bipartition::OddCycle(cycle) = c5.bipartition() else {
            panic!("C5 is not bipartite");
        };
        assert_eq!(cycle.len(), 5);
        for i in 0..cycle.len() {
            assert!(c5.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
        }
    }

    #[test]
    fn family_covers_match_brute_force() {
        for f in Family::ALL {
            for n in f.min_n()..=8 {
                let g = family(f, n);
                if g.vertex_count() <= 16 {
                    assert_eq!(g.vertex_cover_number().unwrap(), brute_cover(&g), "{f} {n}");
                }
            }
        }
    }

    #[test]
    fn json_round_trip_keeps_roles() {
        let g = family(Family::Helm, 4);
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.contains("\"hub\":[8]"));
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = family(Family::Path, 3).to_dot("P3");
        assert!(dot.starts_with("graph P3 {"));
        assert!(dot.contains("0 -- 1;") && dot.contains("1 -- 2;"));
    }

    fn random_graph() -> impl Strategy<Value = Graph> {
        (2usize..=8).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
                let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn cover_matches_exhaustive_enumeration(g in random_graph()) {
            let cover = g.min_vertex_cover().unwrap();
            prop_assert!(g.is_vertex_cover(&cover));
            prop_assert_eq!(cover.len(), brute_cover(&g));
        }

        #[test]
        fn bipartition_is_proper_or_witnessed(g in random_graph()) {
            match g.bipartition() {
                Bipartition::Parts { a, .. } => {
                    for &(u, v) in g.edges() {
                        prop_assert_ne!(a.contains(&u), a.contains(&v));
                    }
                }
                Bipartition::OddCycle(c) => {
                    prop_assert_eq!(c.len() % 2, 1);
                    for i in 0..c.len() {
                        prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                    }
                }
            }
        }
    }
}
