//! Generators for the named graph families.
//!
//! Numbering is fixed so labelings can address vertices by position:
//! path/cycle/clique vertices come first as `0..n`, vertices attached to
//! them follow as `n..2n` aligned by index (vertex `n + i` hangs off `i`),
//! and a hub, if any, is last.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Wheel,
    Helm,
    Friendship,
    Sunlet,
    Sun,
    CompleteSun,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Wheel,
        Family::Helm,
        Family::Friendship,
        Family::Sunlet,
        Family::Sun,
        Family::CompleteSun,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Wheel => "wheel",
            Family::Helm => "helm",
            Family::Friendship => "friendship",
            Family::Sunlet => "sunlet",
            Family::Sun => "sun",
            Family::CompleteSun => "complete_sun",
        }
    }

    /// Smallest admissible parameter.
    pub fn min_n(self) -> usize {
        match self {
            Family::Path | Family::Complete => 2,
            Family::Friendship => 1,
            _ => 3,
        }
    }

    pub fn vertex_count(self, n: usize) -> usize {
        match self {
            Family::Path | Family::Cycle | Family::Complete => n,
            Family::Wheel => n + 1,
            Family::Helm | Family::Friendship => 2 * n + 1,
            Family::Sunlet | Family::Sun | Family::CompleteSun => 2 * n,
        }
    }

    pub fn edge_count(self, n: usize) -> usize {
        match self {
            Family::Path => n - 1,
            Family::Cycle => n,
            Family::Complete => n * (n - 1) / 2,
            Family::Wheel | Family::Sunlet => 2 * n,
            Family::Helm | Family::Friendship | Family::Sun => 3 * n,
            Family::CompleteSun => n * (n - 1) / 2 + 2 * n,
        }
    }

    /// What the parameter counts, for help text.
    pub fn parameter(self) -> &'static str {
        match self {
            Family::Path | Family::Cycle | Family::Complete => "vertices",
            Family::Friendship => "triangles",
            Family::CompleteSun => "clique vertices",
            _ => "cycle vertices",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                format!(
                    "unknown family {s:?} (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// A family together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n }
    }

    pub fn check(self) -> Result<(), GraphError> {
        let min = self.family.min_n();
        if self.n < min {
            return Err(GraphError::InvalidParameter {
                family: self.family,
                n: self.n,
                min,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}

fn ring(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).map(move |i| (i, (i + 1) % n))
}

fn clique(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Builds the family graph with role tags.
pub fn generate(spec: FamilySpec) -> Result<Graph, GraphError> {
    spec.check()?;
    let n = spec.n;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut roles = Vec::new();
    match spec.family {
        Family::Path => {
            edges.extend((1..n).map(|i| (i - 1, i)));
            roles.resize(n, Some(Role::Path));
        }
        Family::Cycle => {
            edges.extend(ring(n));
            roles.resize(n, Some(Role::Cycle));
        }
        Family::Complete => {
            edges.extend(clique(n));
            roles.resize(n, Some(Role::Clique));
        }
        Family::Wheel => {
            edges.extend(ring(n));
            edges.extend((0..n).map(|i| (i, n)));
            roles.resize(n, Some(Role::Cycle));
            roles.push(Some(Role::Hub));
        }
        Family::Helm => {
            edges.extend(ring(n));
            edges.extend((0..n).map(|i| (i, n + i)));
            edges.extend((0..n).map(|i| (i, 2 * n)));
            roles.resize(n, Some(Role::Cycle));
            roles.resize(2 * n, Some(Role::Pendant));
            roles.push(Some(Role::Hub));
        }
        Family::Friendship => {
            // Triangle i is {hub, i, n + i}.
            edges.extend((0..n).map(|i| (i, n + i)));
            edges.extend((0..2 * n).map(|i| (i, 2 * n)));
            roles.resize(n, Some(Role::Petal));
            roles.resize(2 * n, Some(Role::Apex));
            roles.push(Some(Role::Hub));
        }
        Family::Sunlet => {
            edges.extend(ring(n));
            edges.extend((0..n).map(|i| (i, n + i)));
            roles.resize(n, Some(Role::Cycle));
            roles.resize(2 * n, Some(Role::Pendant));
        }
        Family::Sun | Family::CompleteSun => {
            // Apex n + i sits astride cycle edge (i, i + 1 mod n).
            if spec.family == Family::Sun {
                edges.extend(ring(n));
                roles.resize(n, Some(Role::Cycle));
            } else {
                edges.extend(clique(n));
                roles.resize(n, Some(Role::Clique));
            }
            edges.extend((0..n).flat_map(|i| [(i, n + i), ((i + 1) % n, n + i)]));
            roles.resize(2 * n, Some(Role::Apex));
        }
    }
    let g = Graph::new(spec.family.vertex_count(n), edges)?;
    g.with_roles(roles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_counts() {
        let helm = generate(FamilySpec::new(Family::Helm, 4)).unwrap();
        assert_eq!((helm.vertex_count(), helm.edge_count()), (9, 12));
        let sunlet = generate(FamilySpec::new(Family::Sunlet, 5)).unwrap();
        assert_eq!((sunlet.vertex_count(), sunlet.edge_count()), (10, 10));
        let path = generate(FamilySpec::new(Family::Path, 4)).unwrap();
        assert_eq!(path.edges(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn counts_and_simplicity_up_to_twelve() {
        for f in Family::ALL {
            for n in f.min_n()..=12 {
                let g = generate(FamilySpec::new(f, n)).unwrap();
                assert_eq!(g.vertex_count(), f.vertex_count(n), "{f} {n}");
                assert_eq!(g.edge_count(), f.edge_count(n), "{f} {n}");
                assert!(g.require_no_isolated().is_ok(), "{f} {n}");
                assert!((0..g.vertex_count()).all(|v| g.role(v).is_some()));
            }
        }
    }

    #[test]
    fn helm_and_friendship_have_2n_plus_1_vertices_and_3n_edges() {
        for n in 3..=12 {
            for f in [Family::Helm, Family::Friendship] {
                let g = generate(FamilySpec::new(f, n)).unwrap();
                assert_eq!((g.vertex_count(), g.edge_count()), (2 * n + 1, 3 * n));
            }
            let g = generate(FamilySpec::new(Family::Sunlet, n)).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (2 * n, 2 * n));
        }
    }

    #[test]
    fn sun_apexes_straddle_consecutive_cycle_vertices() {
        let g = generate(FamilySpec::new(Family::Sun, 5)).unwrap();
        for i in 0..5 {
            assert_eq!(
                g.neighbors(5 + i),
                &{
                    let mut v = vec![i, (i + 1) % 5];
                    v.sort();
                    v
                }[..]
            );
        }
        // three consecutive sun vertices i, n+i, i+1 form a triangle
        assert!(g.has_edge(0, 1) && g.has_edge(0, 5) && g.has_edge(1, 5));
    }

    #[test]
    fn out_of_bounds_parameters() {
        let err = generate(FamilySpec::new(Family::Cycle, 2)).unwrap_err();
        assert_eq!(
            err,
            GraphError::InvalidParameter {
                family: Family::Cycle,
                n: 2,
                min: 3
            }
        );
        assert!(err.to_string().contains("n >= 3"));
        assert!(generate(FamilySpec::new(Family::Friendship, 0)).is_err());
        assert!(generate(FamilySpec::new(Family::Path, 1)).is_err());
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("complete-sun".parse::<Family>(), Ok(Family::CompleteSun));
        assert_eq!("Wheel".parse::<Family>(), Ok(Family::Wheel));
        assert!("gear".parse::<Family>().is_err());
    }
}
