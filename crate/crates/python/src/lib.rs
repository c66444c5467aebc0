//! Python bindings: `import wiasl`.

use std::time::Duration;

use pyo3::exceptions::{PyTimeoutError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wiasl_core as core;
use wiasl_core::{FamilySpec, LabelingClass, SolveError, SolveMode, SolveOptions, UniverseMode};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solve_err(e: SolveError) -> PyErr {
    match e {
        SolveError::Timeout => PyTimeoutError::new_err(e.to_string()),
        e => value_err(e),
    }
}

fn family_spec(family: &str, n: usize) -> PyResult<FamilySpec> {
    let f: core::Family = family.parse().map_err(value_err)?;
    Ok(FamilySpec::new(f, n))
}

fn int_set(values: Vec<u32>) -> PyResult<core::IntSet> {
    core::IntSet::try_from_values(values, core::Universe::default()).map_err(value_err)
}

/// A finite set of non-negative integers.
#[pyclass(name = "IntSet", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyIntSet(core::IntSet);

#[pymethods]
impl PyIntSet {
    #[new]
    fn new(values: Vec<u32>) -> PyResult<Self> {
        int_set(values).map(PyIntSet)
    }

    /// `{a + b : a in self, b in other}`.
    fn sumset(&self, other: &PyIntSet) -> PyResult<PyIntSet> {
        self.0.sumset(&other.0).map(PyIntSet).map_err(value_err)
    }

    fn to_list(&self) -> Vec<u32> {
        self.0.to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, value: u32) -> bool {
        self.0.contains(value)
    }

    fn __repr__(&self) -> String {
        format!("IntSet({})", self.0)
    }
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::new(n, edges).map(PyGraph).map_err(value_err)
    }

    /// A named family graph, e.g. `Graph.family("wheel", 6)`.
    #[staticmethod]
    fn family(name: &str, n: usize) -> PyResult<Self> {
        core::generate(family_spec(name, n)?)
            .map(PyGraph)
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(PyGraph).map_err(value_err)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.0.vertex_count() {
            return Err(value_err(format!("no vertex {v}")));
        }
        Ok(self.0.neighbors(v).to_vec())
    }

    fn vertex_cover_number(&self) -> PyResult<usize> {
        self.0.vertex_cover_number().map_err(value_err)
    }

    fn is_bipartite(&self) -> bool {
        self.0.bipartition().is_bipartite()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("graph serializes")
    }

    fn to_dot(&self, name: &str) -> String {
        self.0.to_dot(name)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={})",
            self.0.vertex_count(),
            self.0.edge_count()
        )
    }
}

/// Vertex set-labels together with a declared ground set.
#[pyclass(name = "Labeling", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLabeling(core::SetLabeling);

#[pymethods]
impl PyLabeling {
    /// Without `ground_set`, the union of all vertex and edge labels is used.
    #[new]
    #[pyo3(signature = (graph, labels, ground_set=None))]
    fn new(graph: &PyGraph, labels: Vec<Vec<u32>>, ground_set: Option<Vec<u32>>) -> PyResult<Self> {
        let labels = labels
            .into_iter()
            .map(int_set)
            .collect::<PyResult<Vec<_>>>()?;
        let f = match ground_set {
            Some(x) => core::SetLabeling::new(graph.0.clone(), labels, int_set(x)?),
            None => core::SetLabeling::with_minimal_ground_set(graph.0.clone(), labels),
        };
        f.map(PyLabeling).map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file = core::LabelingFile::from_json(text).map_err(value_err)?;
        let (f, _) = file.into_labeling().map_err(value_err)?;
        Ok(PyLabeling(f))
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph().clone())
    }

    #[getter]
    fn labels(&self) -> Vec<Vec<u32>> {
        self.0.labels().iter().map(|l| l.to_vec()).collect()
    }

    #[getter]
    fn ground_set(&self) -> Vec<u32> {
        self.0.ground_set().to_vec()
    }

    fn edge_labels(&self) -> Vec<((usize, usize), Vec<u32>)> {
        self.0
            .edge_labels()
            .into_iter()
            .map(|(e, l)| (e, l.to_vec()))
            .collect()
    }

    /// Checks the labeling against `mode` ("IASL", "IASI", "WIASL",
    /// "WIASI" or "uniform:k").
    #[pyo3(signature = (mode="WIASL"))]
    fn verify(&self, mode: &str) -> PyResult<Report> {
        let class: LabelingClass = mode.parse().map_err(value_err)?;
        Ok(Report(core::verify(&self.0, class)))
    }

    #[pyo3(signature = (mode="WIASL"))]
    fn to_json(&self, mode: &str) -> PyResult<String> {
        let class: LabelingClass = mode.parse().map_err(value_err)?;
        Ok(self.0.to_json(class))
    }

    fn __repr__(&self) -> String {
        format!(
            "Labeling(n={}, ground_set={})",
            self.0.graph().vertex_count(),
            self.0.ground_set()
        )
    }
}

/// Result of `Labeling.verify`.
#[pyclass(frozen)]
struct Report(core::VerifyReport);

#[pymethods]
impl Report {
    #[getter]
    fn valid(&self) -> bool {
        self.0.valid
    }

    #[getter]
    fn violations(&self) -> Vec<String> {
        self.0.violations.iter().map(|v| v.to_string()).collect()
    }

    fn __bool__(&self) -> bool {
        self.0.valid
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Result of `min_ground_set`.
#[pyclass(frozen)]
struct SolveResult(core::SolveResult);

#[pymethods]
impl SolveResult {
    #[getter]
    fn status(&self) -> String {
        self.0.status.to_string()
    }

    #[getter]
    fn minimum(&self) -> Option<usize> {
        self.0.minimum
    }

    #[getter]
    fn witness(&self) -> Option<PyLabeling> {
        self.0.witness.clone().map(PyLabeling)
    }

    #[getter]
    fn universe_bound(&self) -> u32 {
        self.0.universe_bound
    }

    #[getter]
    fn nodes_explored(&self) -> u64 {
        self.0.nodes_explored
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "SolveResult(status={}, minimum={:?}, universe_bound={})",
            self.0.status, self.0.minimum, self.0.universe_bound
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn options(
    mode: &str,
    universe: Option<u32>,
    allow_zero: bool,
    all_subsets: bool,
    require_non_uniform: bool,
    max_label_size: Option<usize>,
    time_budget: Option<f64>,
) -> PyResult<SolveOptions> {
    let time_budget = match time_budget {
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => return Err(value_err(format!("time_budget must be positive, got {t}"))),
        None => None,
    };
    Ok(SolveOptions {
        mode: mode.parse::<SolveMode>().map_err(value_err)?,
        universe: if all_subsets {
            UniverseMode::AllSubsets
        } else {
            UniverseMode::Segment
        },
        bound: universe,
        allow_zero,
        require_non_uniform,
        max_label_size,
        time_budget,
        ..SolveOptions::default()
    })
}

#[pyfunction]
fn sumset(a: Vec<u32>, b: Vec<u32>) -> PyResult<Vec<u32>> {
    Ok(int_set(a)?
        .sumset(&int_set(b)?)
        .map_err(value_err)?
        .to_vec())
}

#[pyfunction]
fn claimed_value(family: &str, n: usize) -> PyResult<usize> {
    core::claimed_value(family_spec(family, n)?).map_err(value_err)
}

/// The explicit labeling of a family instance.
#[pyfunction]
fn construct(family: &str, n: usize) -> PyResult<PyLabeling> {
    let c = core::construct(family_spec(family, n)?).map_err(value_err)?;
    Ok(PyLabeling(c.labeling))
}

/// Ground set size of the construction when it differs from the published
/// value, else `None`.
#[pyfunction]
fn documented_exception(family: &str, n: usize) -> PyResult<Option<usize>> {
    Ok(core::documented_exception(family_spec(family, n)?).map(|e| e.achieved))
}

#[pyfunction]
fn construct_k_uniform(graph: &PyGraph, k: usize) -> PyResult<PyLabeling> {
    core::construct_k_uniform(&graph.0, k)
        .map(PyLabeling)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (
    graph, mode="wiasl", universe=None, allow_zero=false, all_subsets=false,
    require_non_uniform=true, max_label_size=None, time_budget=None
))]
#[allow(clippy::too_many_arguments)]
fn min_ground_set(
    py: Python<'_>,
    graph: &PyGraph,
    mode: &str,
    universe: Option<u32>,
    allow_zero: bool,
    all_subsets: bool,
    require_non_uniform: bool,
    max_label_size: Option<usize>,
    time_budget: Option<f64>,
) -> PyResult<SolveResult> {
    let opts = options(
        mode,
        universe,
        allow_zero,
        all_subsets,
        require_non_uniform,
        max_label_size,
        time_budget,
    )?;
    let g = graph.0.clone();
    py.detach(move || core::min_ground_set(&g, &opts))
        .map(SolveResult)
        .map_err(solve_err)
}

#[pyfunction]
fn min_singleton_count(py: Python<'_>, graph: &PyGraph, ground_set: Vec<u32>) -> PyResult<usize> {
    let x = int_set(ground_set)?;
    let g = graph.0.clone();
    py.detach(move || core::min_singleton_count(&g, &x))
        .map_err(solve_err)
}

/// One audit row as a dict.
#[pyfunction]
#[pyo3(signature = (family, n, universe=None, allow_zero=false, all_subsets=false))]
fn audit<'py>(
    py: Python<'py>,
    family: &str,
    n: usize,
    universe: Option<u32>,
    allow_zero: bool,
    all_subsets: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let spec = family_spec(family, n)?;
    let opts = options("wiasl", universe, allow_zero, all_subsets, true, None, None)?;
    let row = py
        .detach(move || core::audit(spec, &opts))
        .map_err(solve_err)?;
    let d = PyDict::new(py);
    d.set_item("family", &row.family)?;
    d.set_item("n", row.n)?;
    d.set_item("claimed", row.claimed)?;
    d.set_item("construction", row.construction)?;
    d.set_item("exception", row.exception)?;
    d.set_item("oracle", row.oracle)?;
    d.set_item("relation", row.relation.map(|r| r.to_string()))?;
    d.set_item("universe_bound", row.universe_bound)?;
    d.set_item("status", row.status.to_string())?;
    Ok(d)
}

#[pymodule]
fn wiasl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIntSet>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyLabeling>()?;
    m.add_class::<Report>()?;
    m.add_class::<SolveResult>()?;
    m.add_function(wrap_pyfunction!(sumset, m)?)?;
    m.add_function(wrap_pyfunction!(claimed_value, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(documented_exception, m)?)?;
    m.add_function(wrap_pyfunction!(construct_k_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(min_ground_set, m)?)?;
    m.add_function(wrap_pyfunction!(min_singleton_count, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    Ok(())
}
