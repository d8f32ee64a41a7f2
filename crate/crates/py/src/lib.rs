//! Python bindings for the `clsc` solvers.
//!
//! Instances and solutions cross the boundary as JSON text in the same format
//! the command line tool reads and writes. Objective vectors are returned as
//! `(total_cost, total_co2, expected_dispatch)` tuples.

use clsc::cli::solution_records;
use clsc::model::{self, NetworkInstance, ObjectiveVector, Solution};
use clsc::moga::{self, GaConfig, Genotype, GenotypeLayout};
use clsc::pareto::{self, Point};
use clsc::{instances, scalarize, Error, ParetoFront};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Intractable { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn triple(v: &ObjectiveVector) -> (f64, f64, f64) {
    (v.total_cost, v.total_co2, v.expected_dispatch)
}

/// A network design instance.
#[pyclass(name = "Instance", module = "clsc_py", frozen, skip_from_py_object)]
struct PyInstance {
    inner: NetworkInstance,
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: NetworkInstance::from_json(text).map_err(json_err)? })
    }

    /// Seeded random instance with two of each facility, one disposal site and
    /// three demand scenarios.
    #[staticmethod]
    #[pyo3(signature = (seed = 42))]
    fn tabletop(seed: u64) -> Self {
        Self { inner: instances::tabletop(seed) }
    }

    /// Hand-built instance whose Pareto front is known exactly.
    #[staticmethod]
    fn oracle_tiny() -> Self {
        Self { inner: instances::oracle_tiny() }
    }

    fn to_json(&self) -> String {
        self.inner.to_json_pretty()
    }

    /// Invariant violations as `(location, message)` pairs; empty when valid.
    fn validate(&self) -> Vec<(String, String)> {
        match model::validate_instance(&self.inner) {
            Ok(()) => Vec::new(),
            Err(issues) => issues.into_iter().map(|i| (i.location, i.message)).collect(),
        }
    }

    /// Plants, warehouses, customers, collection centers, disposal sites, scenarios.
    fn dimensions(&self) -> (usize, usize, usize, usize, usize, usize) {
        let i = &self.inner;
        (i.n_plants(), i.n_warehouses(), i.n_customers(), i.n_collection(), i.n_disposal(), i.n_scenarios())
    }

    fn genotype_length(&self) -> usize {
        GenotypeLayout::of(&self.inner).len()
    }

    /// Objectives of a solution given as JSON. Raises on infeasible solutions.
    fn evaluate(&self, solution_json: &str) -> PyResult<(f64, f64, f64)> {
        let sol: Solution = serde_json::from_str(solution_json).map_err(json_err)?;
        model::evaluate(&self.inner, &sol).map(|v| triple(&v)).map_err(to_py)
    }

    /// Decodes random keys in `[0, 1]` into a feasible solution, returned as JSON.
    fn decode(&self, genes: Vec<f64>) -> PyResult<String> {
        let sol = moga::decode(&Genotype(genes), &self.inner).map_err(to_py)?;
        serde_json::to_string(&sol).map_err(json_err)
    }

    fn __repr__(&self) -> String {
        let (p, w, k, l, m, s) = self.dimensions();
        format!("Instance(plants={p}, warehouses={w}, customers={k}, collection={l}, disposal={m}, scenarios={s})")
    }
}

/// A non-dominated set of solutions, sorted by cost.
#[pyclass(name = "Front", module = "clsc_py", frozen)]
struct PyFront {
    inner: ParetoFront,
}

#[pymethods]
impl PyFront {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn objectives(&self) -> Vec<(f64, f64, f64)> {
        self.inner.iter().map(|p| triple(&p.objectives)).collect()
    }

    /// Objectives in minimization form (dispatch negated).
    fn canonical(&self) -> Vec<Point> {
        self.inner.canonical_points()
    }

    /// Method tags per point, such as `nsga2` or `wsum`.
    fn methods(&self) -> Vec<Vec<String>> {
        self.inner
            .iter()
            .map(|p| {
                let mut m: Vec<String> = p.provenance.iter().map(|pr| pr.method().to_string()).collect();
                m.dedup();
                m
            })
            .collect()
    }

    /// Solution records in the `solutions.json` format.
    fn solutions_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&solution_records(&self.inner)).map_err(json_err)
    }

    /// Hypervolume of the canonical points; the default reference is the
    /// worst point pushed out by 10% of its magnitude.
    #[pyo3(signature = (reference = None))]
    fn hypervolume(&self, reference: Option<Point>) -> PyResult<f64> {
        let pts = self.inner.canonical_points();
        let r = reference.unwrap_or_else(|| pareto::reference_point(&pts));
        pareto::hypervolume(&pts, &r).map_err(to_py)
    }
}

/// Runs NSGA-II. Returns the archive front and the per-generation archive
/// hypervolume.
#[pyfunction]
#[pyo3(signature = (instance, population = 100, generations = 200, seed = 42, stall = 25, crossover_rate = 0.9, mutation_rate = None))]
fn run_nsga2(
    py: Python<'_>,
    instance: &PyInstance,
    population: usize,
    generations: usize,
    seed: u64,
    stall: usize,
    crossover_rate: f64,
    mutation_rate: Option<f64>,
) -> PyResult<(PyFront, Vec<f64>)> {
    let cfg = GaConfig {
        population_size: population,
        max_generations: generations,
        seed,
        stall_generations: stall,
        crossover_rate,
        mutation_rate,
        ..GaConfig::default()
    };
    let inst = instance.inner.clone();
    let run = py.detach(move || moga::run_nsga2(&inst, &cfg)).map_err(to_py)?;
    let hv = run.stats.iter().map(|s| s.hypervolume).collect();
    Ok((PyFront { inner: run.front }, hv))
}

/// Exact weighted-sum sweep over the simplex lattice with `grid` steps per axis.
#[pyfunction]
#[pyo3(signature = (instance, grid = 10))]
fn sweep_weights(py: Python<'_>, instance: &PyInstance, grid: usize) -> PyResult<PyFront> {
    let inst = instance.inner.clone();
    let front = py.detach(move || scalarize::sweep_weights(&inst, grid)).map_err(to_py)?;
    Ok(PyFront { inner: front })
}

/// Exact hypervolume of minimization points against `reference`.
#[pyfunction]
fn hypervolume(points: Vec<Point>, reference: Point) -> PyResult<f64> {
    pareto::hypervolume(&points, &reference).map_err(to_py)
}

/// Whether `a` Pareto-dominates `b`, both in minimization form.
#[pyfunction]
fn dominates(a: Point, b: Point) -> bool {
    pareto::dominates_canonical(&a, &b)
}

/// Indices of the non-dominated minimization points.
#[pyfunction]
fn nondominated_indices(points: Vec<Point>) -> Vec<usize> {
    pareto::nondominated_indices(&points)
}

#[pymodule]
fn clsc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyFront>()?;
    m.add_function(wrap_pyfunction!(run_nsga2, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_weights, m)?)?;
    m.add_function(wrap_pyfunction!(hypervolume, m)?)?;
    m.add_function(wrap_pyfunction!(dominates, m)?)?;
    m.add_function(wrap_pyfunction!(nondominated_indices, m)?)?;
    Ok(())
}
