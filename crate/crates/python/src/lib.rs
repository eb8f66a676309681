//! Python bindings: groups, radicals, graphs, S-connection checks and the
//! Zsigmondy / Lie-order arithmetic.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sconn::connection::{self, ConditionMode, FactorizedGroup};
use sconn::graphs::{self, ExportFormat};
use sconn::liearith::{self, Family, LieSpec};
use sconn::structure::{self, RadicalMethod};
use sconn::{groupio, Budget, Error};

create_exception!(sconn_py, SconnError, PyException);
create_exception!(sconn_py, BudgetExceeded, SconnError);
create_exception!(sconn_py, TheoremViolation, SconnError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::TheoremViolation(_) => TheoremViolation::new_err(e.to_string()),
        Error::Io(_)
        | Error::Parse { .. }
        | Error::UnknownGroup(_)
        | Error::InvalidParameters(_) => PyValueError::new_err(e.to_string()),
        _ => SconnError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

/// Budget knobs shared by every call; defaults match the CLI.
#[pyclass(name = "Budget", from_py_object)]
#[derive(Clone, Default)]
struct PyBudget {
    inner: Budget,
}

#[pymethods]
impl PyBudget {
    #[new]
    #[pyo3(signature = (max_enumeration_order=None, max_subgroup_order=None, max_pair_checks=None))]
    fn new(
        max_enumeration_order: Option<u64>,
        max_subgroup_order: Option<u64>,
        max_pair_checks: Option<u64>,
    ) -> Self {
        let mut inner = Budget::default();
        if let Some(v) = max_enumeration_order {
            inner.max_enumeration_order = v;
        }
        if let Some(v) = max_subgroup_order {
            inner.max_subgroup_order = v;
        }
        if let Some(v) = max_pair_checks {
            inner.max_pair_checks = v;
        }
        PyBudget { inner }
    }

    #[getter]
    fn max_enumeration_order(&self) -> u64 {
        self.inner.max_enumeration_order
    }

    #[getter]
    fn max_subgroup_order(&self) -> u64 {
        self.inner.max_subgroup_order
    }
}

fn budget_of(b: Option<PyRef<'_, PyBudget>>) -> Budget {
    b.map(|b| b.inner.clone()).unwrap_or_default()
}

#[pyclass(name = "Permutation", frozen, from_py_object)]
#[derive(Clone)]
struct PyPermutation {
    inner: sconn::Permutation,
}

#[pymethods]
impl PyPermutation {
    /// `Permutation("(1,2,3)(4,5)", 6)`, points numbered from 1.
    #[new]
    fn new(cycles: &str, degree: usize) -> PyResult<Self> {
        let inner = groupio::parse_cycles(cycles, degree, 1).map_err(py_err)?;
        Ok(PyPermutation { inner })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// Images of `1..=n`, 1-based.
    fn images(&self) -> Vec<usize> {
        self.inner
            .images()
            .iter()
            .map(|&x| x as usize + 1)
            .collect()
    }

    fn order(&self) -> u128 {
        self.inner.order()
    }

    fn inverse(&self) -> Self {
        PyPermutation {
            inner: self.inner.inverse(),
        }
    }

    /// `self * other` applies `self` first.
    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        if self.inner.degree() != other.inner.degree() {
            return Err(PyValueError::new_err("degree mismatch"));
        }
        Ok(PyPermutation {
            inner: self.inner.compose(&other.inner),
        })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.inner.to_cycle_string(1, ",")
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?}, {})", self.__str__(), self.inner.degree())
    }
}

#[pyclass(name = "PermGroup", frozen, from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: sconn::PermGroup,
}

#[pymethods]
impl PyGroup {
    /// Group generated by cycle strings on `degree` points.
    #[new]
    fn new(generators: Vec<String>, degree: usize) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|g| groupio::parse_cycles(g, degree, 1))
            .collect::<sconn::Result<Vec<_>>>()
            .map_err(py_err)?;
        let inner = sconn::PermGroup::with_degree(degree, gens).map_err(py_err)?;
        Ok(PyGroup { inner })
    }

    /// A library group such as `"A5"`, `"S4xC5"`, `"psl2_8"` or `"A4_in_A5"`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        groupio::builtin(name)
            .map(|inner| PyGroup { inner })
            .map_err(py_err)
    }

    /// `builtin:NAME` or a generator file path.
    #[staticmethod]
    #[pyo3(signature = (source, budget=None))]
    fn load(source: &str, budget: Option<PyRef<'_, PyBudget>>) -> PyResult<Self> {
        groupio::load(source, &budget_of(budget))
            .map(|inner| PyGroup { inner })
            .map_err(py_err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn order(&self) -> BigUint {
        self.inner.order().clone()
    }

    fn __len__(&self) -> PyResult<usize> {
        self.inner
            .order_u64()
            .and_then(|o| usize::try_from(o).ok())
            .ok_or_else(|| PyValueError::new_err("order does not fit in a machine word"))
    }

    fn generators(&self) -> Vec<PyPermutation> {
        self.inner
            .generators()
            .iter()
            .map(|g| PyPermutation { inner: g.clone() })
            .collect()
    }

    fn __contains__(&self, g: &PyPermutation) -> PyResult<bool> {
        self.inner.contains(&g.inner).map_err(py_err)
    }

    fn is_subgroup_of(&self, other: &PyGroup) -> bool {
        self.inner.is_subgroup_of(&other.inner)
    }

    fn is_soluble(&self) -> bool {
        structure::is_soluble(&self.inner)
    }

    fn derived_subgroup(&self) -> Self {
        PyGroup {
            inner: structure::derived_subgroup(&self.inner),
        }
    }

    /// Soluble radical; `method` is `"auto"`, `"gkps"` or `"bruteforce"`.
    #[pyo3(signature = (method="auto", budget=None))]
    fn radical(&self, method: &str, budget: Option<PyRef<'_, PyBudget>>) -> PyResult<Self> {
        let method: RadicalMethod = parse(method)?;
        structure::soluble_radical(&self.inner, method, &budget_of(budget))
            .map(|inner| PyGroup { inner })
            .map_err(py_err)
    }

    fn __eq__(&self, other: &PyGroup) -> bool {
        self.inner.same_group(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "PermGroup(degree={}, order={})",
            self.inner.degree(),
            self.inner.order()
        )
    }
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: graphs::PrimeGraph,
}

#[pymethods]
impl PyGraph {
    #[getter]
    fn kind(&self) -> String {
        self.inner.kind.to_string()
    }

    #[getter]
    fn vertices(&self) -> Vec<u64> {
        self.inner.vertices.clone()
    }

    #[getter]
    fn edges(&self) -> Vec<(u64, u64)> {
        self.inner.edges.clone()
    }

    fn has_edge(&self, p: u64, q: u64) -> bool {
        self.inner.has_edge(p, q)
    }

    fn to_dot(&self) -> String {
        graphs::export_graph(&self.inner, ExportFormat::Dot)
    }

    fn to_json(&self) -> String {
        graphs::export_graph(&self.inner, ExportFormat::Json)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} on {:?}, edges {:?})",
            self.inner.kind, self.inner.vertices, self.inner.edges
        )
    }
}

/// Prime graph (`kind="prime"`) or soluble graph (`kind="soluble"`).
#[pyfunction]
#[pyo3(signature = (group, kind="soluble", label="G", budget=None))]
fn graph(
    group: &PyGroup,
    kind: &str,
    label: &str,
    budget: Option<PyRef<'_, PyBudget>>,
) -> PyResult<PyGraph> {
    let b = budget_of(budget);
    let inner = match parse::<graphs::GraphKind>(kind)? {
        graphs::GraphKind::Prime => graphs::prime_graph(&group.inner, label, &b),
        graphs::GraphKind::Soluble => graphs::soluble_graph(&group.inner, label, &b),
    }
    .map_err(py_err)?;
    Ok(PyGraph { inner })
}

#[pyfunction]
#[pyo3(signature = (group, p, q, budget=None))]
fn are_independent(
    group: &PyGroup,
    p: u64,
    q: u64,
    budget: Option<PyRef<'_, PyBudget>>,
) -> PyResult<bool> {
    graphs::are_independent(&group.inner, p, q, &budget_of(budget)).map_err(py_err)
}

#[pyclass(name = "FactorizedGroup", frozen)]
struct PyFactorized {
    inner: FactorizedGroup,
}

#[pymethods]
impl PyFactorized {
    #[new]
    #[pyo3(signature = (g, a, b, budget=None))]
    fn new(
        g: &PyGroup,
        a: &PyGroup,
        b: &PyGroup,
        budget: Option<PyRef<'_, PyBudget>>,
    ) -> PyResult<Self> {
        let inner = connection::make_factorized(&g.inner, &a.inner, &b.inner, &budget_of(budget))
            .map_err(py_err)?;
        Ok(PyFactorized { inner })
    }

    #[getter]
    fn intersection_order(&self) -> u64 {
        self.inner.intersection_order
    }

    /// Condition (1) (`mode="full"`) or (2) (`mode="prime-pairs"`):
    /// `(holds, witness)`, the witness a pair of permutations `(a, b)`.
    #[pyo3(signature = (mode="full", budget=None))]
    fn check(
        &self,
        mode: &str,
        budget: Option<PyRef<'_, PyBudget>>,
    ) -> PyResult<(bool, Option<(PyPermutation, PyPermutation)>)> {
        let mode: ConditionMode = parse(mode)?;
        let out =
            connection::check_condition(&self.inner, mode, &budget_of(budget)).map_err(py_err)?;
        Ok((
            out.holds,
            out.witness
                .map(|w| (PyPermutation { inner: w.a }, PyPermutation { inner: w.b })),
        ))
    }

    /// All three conditions plus the radical order; raises `TheoremViolation`
    /// if they disagree.
    #[pyo3(signature = (budget=None))]
    fn main_theorem<'py>(
        &self,
        py: Python<'py>,
        budget: Option<PyRef<'_, PyBudget>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let r = connection::verify_main_theorem(&self.inner, &budget_of(budget)).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("condition1", r.condition1)?;
        d.set_item("condition2", r.condition2)?;
        d.set_item("condition3", r.condition3)?;
        d.set_item(
            "witness",
            r.witness
                .map(|w| (PyPermutation { inner: w.a }, PyPermutation { inner: w.b })),
        )?;
        d.set_item("radical_order", r.radical_order)?;
        Ok(d)
    }
}

/// Smallest primitive prime divisor of `p^k - 1`, or `None`.
#[pyfunction]
fn zsigmondy(p: u64, k: u64) -> PyResult<Option<BigUint>> {
    liearith::zsigmondy(p, k, &Budget::default()).map_err(py_err)
}

/// `(|S|, |Out S|)` for a classical simple group, e.g. `lie_order("linear", 2, 7)`.
#[pyfunction]
fn lie_order(family: &str, dim: u64, q: u64) -> PyResult<(BigUint, u64)> {
    let family: Family = parse(family)?;
    let spec = LieSpec::new(family, dim, q).map_err(py_err)?;
    Ok(liearith::simple_group_order(&spec))
}

#[pymodule]
fn sconn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBudget>()?;
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyFactorized>()?;
    m.add_function(wrap_pyfunction!(graph, m)?)?;
    m.add_function(wrap_pyfunction!(are_independent, m)?)?;
    m.add_function(wrap_pyfunction!(zsigmondy, m)?)?;
    m.add_function(wrap_pyfunction!(lie_order, m)?)?;
    m.add("SconnError", m.py().get_type::<SconnError>())?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("TheoremViolation", m.py().get_type::<TheoremViolation>())?;
    Ok(())
}
