//! Python bindings. Sets of variable indices cross the boundary as sorted
//! lists of ints on the way out and as any iterable of ints on the way in.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use me::{Coeff, VarSet};
use multieuler_core as me;

fn err(e: me::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_set(obj: &Bound<'_, PyAny>) -> PyResult<VarSet> {
    let mut set = VarSet::EMPTY;
    for item in obj.try_iter()? {
        set.insert(item?.extract::<usize>()?).map_err(err)?;
    }
    Ok(set)
}

/// A multiaffine polynomial with exact integer coefficients.
#[pyclass(name = "Poly", module = "multieuler", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(me::MultiaffinePoly);

#[pymethods]
impl PyPoly {
    /// `terms` is a list of `(indices, coefficient)` pairs over the window `[lo, hi]`.
    #[new]
    fn new(lo: usize, hi: usize, terms: Vec<(Bound<'_, PyAny>, Coeff)>) -> PyResult<Self> {
        let window = me::VarWindow::new(lo, hi).map_err(err)?;
        let terms = terms
            .iter()
            .map(|(vars, c)| Ok((to_set(vars)?, *c)))
            .collect::<PyResult<Vec<_>>>()?;
        me::MultiaffinePoly::new(window, terms)
            .map(PyPoly)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        me::json::poly_from_json(text).map(PyPoly).map_err(err)
    }

    fn to_json(&self) -> String {
        me::json::poly_to_json(&self.0)
    }

    #[getter]
    fn window(&self) -> (usize, usize) {
        (self.0.window().lo(), self.0.window().hi())
    }

    fn terms(&self) -> Vec<(Vec<usize>, Coeff)> {
        self.0.terms().map(|(s, c)| (s.to_vec(), c)).collect()
    }

    fn coeff(&self, vars: &Bound<'_, PyAny>) -> PyResult<Coeff> {
        Ok(self.0.coeff(to_set(vars)?))
    }

    fn strict_vars(&self) -> Vec<usize> {
        self.0.strict_vars().to_vec()
    }

    fn coefficient_sum(&self) -> PyResult<Coeff> {
        self.0.coefficient_sum().map_err(err)
    }

    fn reciprocal(&self) -> PyResult<Self> {
        self.0.reciprocal().map(PyPoly).map_err(err)
    }

    fn mirror(&self) -> Self {
        PyPoly(self.0.mirror())
    }

    fn is_monomialmaximal(&self) -> bool {
        self.0.is_monomialmaximal()
    }

    fn is_complete(&self) -> bool {
        self.0.is_complete()
    }

    fn is_degree_complete(&self) -> bool {
        self.0.is_degree_complete()
    }

    fn is_mirrorpalindromic(&self) -> PyResult<bool> {
        self.0.is_mirrorpalindromic().map_err(err)
    }

    /// A variable renaming under which the polynomial is palindromic, or `None`.
    fn palindromic_permutation(&self) -> PyResult<Option<Vec<(usize, usize)>>> {
        self.0.palindromic_permutation().map_err(err)
    }

    fn collapse_to_univariate(&self) -> PyResult<Vec<Coeff>> {
        self.0.collapse_to_univariate().map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.0)
    }
}

#[pyclass(
    name = "Perm",
    module = "multieuler",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPerm(me::Perm);

#[pymethods]
impl PyPerm {
    #[new]
    fn new(oneline: Vec<usize>) -> PyResult<Self> {
        me::Perm::from_oneline(oneline).map(PyPerm).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PyPerm).map_err(err)
    }

    fn oneline(&self) -> Vec<usize> {
        self.0.oneline().to_vec()
    }

    fn descent_tops(&self) -> Vec<usize> {
        self.0.descent_top_set().to_vec()
    }

    fn ascent_tops(&self) -> Vec<usize> {
        self.0.ascent_top_set().to_vec()
    }

    fn excedances(&self) -> Vec<usize> {
        self.0.excedance_set().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Perm({:?})", self.0.oneline())
    }
}

/// The stages of the bijection applied to one permutation.
#[pyclass(name = "BijectionTrace", module = "multieuler", frozen, get_all)]
struct PyTrace {
    k: usize,
    input: PyPerm,
    lifted: PyPerm,
    rearranged: PyPerm,
    tau_applied: PyPerm,
    output: PyPerm,
}

#[pymethods]
impl PyTrace {
    fn __repr__(&self) -> String {
        format!(
            "BijectionTrace(input={}, output={})",
            self.input.__repr__(),
            self.output.__repr__()
        )
    }
}

#[pyclass(name = "IdentityReport", module = "multieuler", frozen)]
struct PyReport(me::IdentityReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn identity(&self) -> &'static str {
        self.0.identity.name()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn subset(&self) -> Option<Vec<usize>> {
        self.0.subset.map(VarSet::to_vec)
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.pass
    }

    #[getter]
    fn witness(&self) -> Option<String> {
        self.0.witness.clone()
    }

    /// Common value of the main chain, when it holds.
    #[getter]
    fn value(&self) -> Option<Coeff> {
        self.0.value()
    }

    /// `[(chain name, [(label, value), ...]), ...]` in report order.
    fn chains(&self) -> Vec<(String, Vec<(String, Coeff)>)> {
        self.0
            .chains
            .iter()
            .map(|c| {
                let exprs = c
                    .expressions
                    .iter()
                    .map(|e| (e.label.clone(), e.value))
                    .collect();
                (c.name.clone(), exprs)
            })
            .collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json_line()
    }

    fn __repr__(&self) -> String {
        format!(
            "IdentityReport({}, n={}, subset={:?}, passed={})",
            self.0.identity,
            self.0.n,
            self.subset(),
            self.0.pass
        )
    }
}

#[pyfunction]
fn eulerian_descent_poly(n: usize) -> PyResult<PyPoly> {
    me::eulerian_descent_poly(n).map(PyPoly).map_err(err)
}

#[pyfunction]
fn eulerian_excedance_poly(n: usize) -> PyResult<PyPoly> {
    me::eulerian_excedance_poly(n).map(PyPoly).map_err(err)
}

#[pyfunction]
fn univariate_eulerian(n: usize) -> PyResult<Vec<Coeff>> {
    me::univariate_eulerian(n).map_err(err)
}

#[pyfunction]
fn alpha(x: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
    Ok(me::alpha(to_set(x)?).entries().to_vec())
}

#[pyfunction]
fn hat_factorial(beta: Vec<usize>) -> PyResult<Coeff> {
    me::hat_factorial(&me::GapTuple::new(beta)).map_err(err)
}

#[pyfunction]
fn count_descents_within(m: usize, x: &Bound<'_, PyAny>) -> PyResult<Coeff> {
    me::count_descents_within(m, to_set(x)?).map_err(err)
}

#[pyfunction]
fn count_exact_descents(x: &Bound<'_, PyAny>) -> PyResult<Coeff> {
    me::count_exact_descents(to_set(x)?).map_err(err)
}

#[pyfunction]
fn tau_set(s: usize, x: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
    me::tau_set(s, to_set(x)?).map(VarSet::to_vec).map_err(err)
}

/// Permutations of `[n+1]` whose descent-top set is exactly `s`.
#[pyfunction]
fn enumerate_r(n: usize, s: &Bound<'_, PyAny>) -> PyResult<Vec<PyPerm>> {
    let perms = me::enumerate_r(n, to_set(s)?).map_err(err)?;
    Ok(perms.into_iter().map(PyPerm).collect())
}

#[pyfunction]
fn psi_forward(sigma: &PyPerm) -> PyResult<PyTrace> {
    let t = me::psi_forward(&sigma.0).map_err(err)?;
    Ok(PyTrace {
        k: t.k,
        input: PyPerm(t.input),
        lifted: PyPerm(t.lifted),
        rearranged: PyPerm(t.rearranged),
        tau_applied: PyPerm(t.tau_applied),
        output: PyPerm(t.output),
    })
}

#[pyfunction]
fn psi_inverse(mu: &PyPerm) -> PyResult<PyPerm> {
    me::psi_inverse(&mu.0).map(PyPerm).map_err(err)
}

#[pyfunction]
fn verify_theorem(py: Python<'_>, n: usize) -> PyResult<PyReport> {
    py.detach(|| me::verify_theorem(n))
        .map(PyReport)
        .map_err(err)
}

#[pyfunction]
fn check_combinatorial_sums(n: usize, k: &Bound<'_, PyAny>) -> PyResult<PyReport> {
    me::check_combinatorial_sums(n, to_set(k)?)
        .map(PyReport)
        .map_err(err)
}

#[pyfunction]
fn check_sequential_sums(n: usize, k: &Bound<'_, PyAny>) -> PyResult<PyReport> {
    me::check_sequential_sums(n, to_set(k)?)
        .map(PyReport)
        .map_err(err)
}

#[pyfunction]
fn check_reordering_sums(n: usize, k: &Bound<'_, PyAny>) -> PyResult<PyReport> {
    me::check_reordering_sums(n, to_set(k)?)
        .map(PyReport)
        .map_err(err)
}

#[pyfunction]
fn check_excedance_equivalence(py: Python<'_>, n: usize) -> PyResult<PyReport> {
    py.detach(|| me::check_excedance_equivalence(n))
        .map(PyReport)
        .map_err(err)
}

/// `which` is one of theorem, combinatorial, sequential, reordering,
/// excedance, all.
#[pyfunction]
#[pyo3(signature = (n_lo, n_hi, which = "all"))]
fn sweep(py: Python<'_>, n_lo: usize, n_hi: usize, which: &str) -> PyResult<Vec<PyReport>> {
    let selector: me::Selector = which.parse().map_err(err)?;
    let reports = py.detach(|| me::sweep(n_lo, n_hi, selector)).map_err(err)?;
    Ok(reports.into_iter().map(PyReport).collect())
}

#[pymodule]
fn multieuler(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyPerm>()?;
    m.add_class::<PyTrace>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(eulerian_descent_poly, m)?)?;
    m.add_function(wrap_pyfunction!(eulerian_excedance_poly, m)?)?;
    m.add_function(wrap_pyfunction!(univariate_eulerian, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(hat_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(count_descents_within, m)?)?;
    m.add_function(wrap_pyfunction!(count_exact_descents, m)?)?;
    m.add_function(wrap_pyfunction!(tau_set, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_r, m)?)?;
    m.add_function(wrap_pyfunction!(psi_forward, m)?)?;
    m.add_function(wrap_pyfunction!(psi_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(check_combinatorial_sums, m)?)?;
    m.add_function(wrap_pyfunction!(check_sequential_sums, m)?)?;
    m.add_function(wrap_pyfunction!(check_reordering_sums, m)?)?;
    m.add_function(wrap_pyfunction!(check_excedance_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
