//! Python bindings. Ids are 0-based throughout, matching the Rust API.

use kdiverse_core::convex::{validate_table, ConvexSpec};
use kdiverse_core::cut_backend::solve_min_k_potential_cut;
use kdiverse_core::driver::{self, Input, Problem, RunConfig};
use kdiverse_core::framework::{Backend, DiverseSolution, KPotentialInstance, Measure, WeightedArc};
use kdiverse_core::lattice::{join_irreducibles, solve_diverse_lattice, ProductLattice};
use kdiverse_core::mcf_backend::solve_min_k_potential_mcf;
use kdiverse_core::mincut::{build_pq, solve_diverse_mincut, Digraph};
use kdiverse_core::oracle;
use kdiverse_core::stable_matching::{build_rotation_poset, gale_shapley, solve_diverse_sm, SmInstance, Side};
use kdiverse_core::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) | Error::NegativeCycle | Error::NotMaximum | Error::Overflow(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A measure name (`"sum"`, `"cov"`) or a table of `phi(0..=k)`.
#[derive(FromPyObject)]
enum MeasureArg {
    Name(String),
    Table(Vec<i64>),
}

fn to_measure(arg: MeasureArg) -> Result<Measure, Error> {
    match arg {
        MeasureArg::Name(name) => match name.as_str() {
            "sum" => Ok(Measure::Sum),
            "cov" => Ok(Measure::Cov),
            other => Err(Error::Input(format!("unknown measure `{other}`"))),
        },
        MeasureArg::Table(values) => Ok(Measure::Table(validate_table(&values)?)),
    }
}

fn to_penalty(arg: MeasureArg, k: usize) -> Result<ConvexSpec, Error> {
    match arg {
        MeasureArg::Name(name) => match name.as_str() {
            "square" => Ok(ConvexSpec::square(k)),
            "binom" => Ok(ConvexSpec::binom(k)),
            "cov" => Ok(ConvexSpec::cov(k)),
            other => Err(Error::Input(format!("unknown penalty `{other}`"))),
        },
        MeasureArg::Table(values) => validate_table(&values)?.with_bound(k),
    }
}

fn arguments(measure: MeasureArg, backend: &str) -> PyResult<(Measure, Backend)> {
    let measure = to_measure(measure).map_err(py_err)?;
    let backend = backend.parse().map_err(py_err)?;
    Ok((measure, backend))
}

/// Result of a diverse solve.
#[pyclass(name = "Solution", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySolution {
    #[pyo3(get)]
    diversity: i64,
    #[pyo3(get)]
    penalty: i64,
    #[pyo3(get)]
    backend: String,
    /// Each solution in the application's own encoding.
    #[pyo3(get)]
    solutions: Vec<Vec<usize>>,
    #[pyo3(get)]
    potential: Vec<i64>,
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!("Solution(diversity={}, backend='{}', k={})", self.diversity, self.backend, self.solutions.len())
    }
}

fn wrap(solution: &DiverseSolution, solutions: Vec<Vec<usize>>) -> PySolution {
    PySolution {
        diversity: solution.diversity,
        penalty: solution.penalty,
        backend: solution.backend.to_string(),
        solutions,
        potential: solution.potential.values.clone(),
    }
}

/// Unit-capacity digraph with a source and a sink.
#[pyclass(name = "MinCut", frozen)]
struct PyMinCut {
    graph: Digraph,
    s: usize,
    t: usize,
}

#[pymethods]
impl PyMinCut {
    #[new]
    fn new(n: usize, arcs: Vec<(usize, usize)>, s: usize, t: usize) -> PyResult<Self> {
        if s >= n || t >= n || s == t {
            return Err(PyValueError::new_err("s and t must be distinct vertices"));
        }
        Ok(Self {
            graph: Digraph::new(n, arcs).map_err(py_err)?,
            s,
            t,
        })
    }

    /// Size of a minimum cut.
    fn q(&self) -> PyResult<usize> {
        Ok(build_pq(&self.graph, self.s, self.t).map_err(py_err)?.q())
    }

    /// Every minimum cut as sorted arc ids (small graphs only).
    fn min_cuts(&self) -> PyResult<Vec<Vec<usize>>> {
        oracle::enum_min_cuts(&self.graph, self.s, self.t).map_err(py_err)
    }

    #[pyo3(signature = (k, measure = MeasureArg::Name("sum".into()), backend = "auto"))]
    fn diverse(&self, k: usize, measure: MeasureArg, backend: &str) -> PyResult<PySolution> {
        let (measure, backend) = arguments(measure, backend)?;
        let sol = solve_diverse_mincut(&self.graph, self.s, self.t, k, &measure, backend).map_err(py_err)?;
        Ok(wrap(&sol.solution, sol.cuts))
    }
}

/// Complete preference lists; `pref_u[u]` ranks `V` from best to worst.
#[pyclass(name = "StableMatching", frozen)]
struct PyStableMatching {
    inst: SmInstance,
}

#[pymethods]
impl PyStableMatching {
    #[new]
    fn new(pref_u: Vec<Vec<usize>>, pref_v: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(Self {
            inst: SmInstance::new(pref_u, pref_v).map_err(py_err)?,
        })
    }

    /// `partner[u]` for the proposing side `"u"` or `"v"`.
    #[pyo3(signature = (proposing = "u"))]
    fn gale_shapley(&self, proposing: &str) -> PyResult<Vec<usize>> {
        let side = match proposing {
            "u" => Side::U,
            "v" => Side::V,
            _ => return Err(PyValueError::new_err("proposing must be 'u' or 'v'")),
        };
        Ok(gale_shapley(&self.inst, side))
    }

    fn is_stable(&self, partner: Vec<usize>) -> bool {
        self.inst.is_stable(&partner)
    }

    /// Rotations in elimination order, each as `(u, v)` pairs.
    fn rotations(&self) -> PyResult<Vec<Vec<(usize, usize)>>> {
        let rp = build_rotation_poset(&self.inst).map_err(py_err)?;
        Ok(rp.rotations.into_iter().map(|r| r.pairs).collect())
    }

    /// Every stable matching (n <= 6).
    fn stable_matchings(&self) -> PyResult<Vec<Vec<usize>>> {
        oracle::enum_stable_matchings(&self.inst).map_err(py_err)
    }

    /// Solutions are reported as `partner[u]` lists.
    #[pyo3(signature = (k, measure = MeasureArg::Name("sum".into()), backend = "auto"))]
    fn diverse(&self, k: usize, measure: MeasureArg, backend: &str) -> PyResult<PySolution> {
        let (measure, backend) = arguments(measure, backend)?;
        let sol = solve_diverse_sm(&self.inst, k, &measure, backend).map_err(py_err)?;
        Ok(wrap(&sol.solution, sol.matchings))
    }
}

/// Sublattice of a product of total orders, given by its members.
#[pyclass(name = "Lattice", frozen)]
struct PyLattice {
    lat: ProductLattice,
}

#[pymethods]
impl PyLattice {
    #[new]
    fn new(orders: Vec<Vec<usize>>, members: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(Self {
            lat: ProductLattice::new(orders, members).map_err(py_err)?,
        })
    }

    fn members(&self) -> Vec<Vec<usize>> {
        self.lat.members().iter().map(|m| self.lat.labels(m)).collect()
    }

    fn join_irreducibles(&self) -> Vec<Vec<usize>> {
        join_irreducibles(&self.lat).members.iter().map(|m| self.lat.labels(m)).collect()
    }

    /// Solutions are reported as element labels, one per order.
    #[pyo3(signature = (k, measure = MeasureArg::Name("sum".into()), backend = "auto"))]
    fn diverse(&self, k: usize, measure: MeasureArg, backend: &str) -> PyResult<PySolution> {
        let (measure, backend) = arguments(measure, backend)?;
        let sol = solve_diverse_lattice(&self.lat, k, &measure, backend).map_err(py_err)?;
        Ok(wrap(&sol.solution, sol.members))
    }
}

/// Minimum k-potential of an explicit instance. `arcs` are
/// `(tail, head, weight)` with vertex 0 the bottom and 1 the top.
#[pyfunction]
#[pyo3(signature = (n, arcs, k, penalty, backend = "mcf"))]
fn min_k_potential(n: usize, arcs: Vec<(usize, usize, i64)>, k: usize, penalty: MeasureArg, backend: &str) -> PyResult<(Vec<i64>, i64)> {
    let convex = to_penalty(penalty, k).map_err(py_err)?;
    let arcs = arcs
        .into_iter()
        .map(|(tail, head, weight)| WeightedArc { tail, head, weight })
        .collect();
    let inst = KPotentialInstance::from_arcs(n, arcs, convex, k).map_err(py_err)?;
    let (p, h) = match backend {
        "mcf" => solve_min_k_potential_mcf(&inst),
        "cut" => solve_min_k_potential_cut(&inst),
        other => return Err(PyValueError::new_err(format!("unknown backend `{other}`"))),
    }
    .map_err(py_err)?;
    Ok((p.values, h))
}

/// Run a problem given in its file format and return the JSON report.
#[pyfunction]
#[pyo3(signature = (problem, text, k, measure = MeasureArg::Name("sum".into()), backend = "auto"))]
fn run(problem: &str, text: &str, k: usize, measure: MeasureArg, backend: &str) -> PyResult<String> {
    let (measure, backend) = arguments(measure, backend)?;
    let problem: Problem = problem.parse().map_err(py_err)?;
    let input = Input::parse(problem, text).map_err(py_err)?;
    let report = driver::run(&input, &RunConfig { k, measure, backend }).map_err(py_err)?;
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

#[pymodule]
fn kdiverse(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySolution>()?;
    m.add_class::<PyMinCut>()?;
    m.add_class::<PyStableMatching>()?;
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(min_k_potential, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
