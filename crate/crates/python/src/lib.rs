//! Python bindings: algebra parsing, cohomology, the presymplectic form and
//! the orbit searches. Rationals cross the boundary as `"p/q"` strings.

use lieco_core::cohomology::h2_report;
use lieco_core::group::{catalog, realization};
use lieco_core::io::{parse_algebra_file, parse_cocycle_file, serialize_algebra};
use lieco_core::orbit::{
    pseudo_class_equivalent, same_orbit, CocycleChoice, OrbitVerdict, SearchParams,
};
use lieco_core::rational::{format_q, parse_q};
use lieco_core::symplectic::presymplectic_matrix;
use lieco_core::{AlgebraTwoCocycle, CoalgebraVector, LieAlgebra, LiecoError, Q};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(
    lieco,
    Error,
    PyValueError,
    "Raised for invalid input and failed checks."
);

fn wrap(e: LiecoError) -> PyErr {
    Error::new_err(format!("{}: {e}", e.kind()))
}

/// Accepts ints, floats, or strings like `"3/2"`.
fn rational(item: &Bound<'_, PyAny>) -> PyResult<Q> {
    let text = match item.extract::<i64>() {
        Ok(n) => n.to_string(),
        Err(_) => match item.extract::<String>() {
            Ok(s) => s,
            Err(_) => item.str()?.to_string(),
        },
    };
    parse_q(&text).ok_or_else(|| Error::new_err(format!("invalid number `{text}`")))
}

fn functional(items: &Bound<'_, PyAny>, dim: usize) -> PyResult<CoalgebraVector> {
    let values = items
        .try_iter()?
        .map(|x| rational(&x?))
        .collect::<PyResult<Vec<_>>>()?;
    if values.len() != dim {
        return Err(wrap(LiecoError::DimensionMismatch {
            expected: dim,
            found: values.len(),
        }));
    }
    Ok(CoalgebraVector(values))
}

#[pyclass(name = "Algebra", module = "lieco", frozen)]
struct PyAlgebra {
    inner: LieAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// Parses the `.alg` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_algebra_file(text)
            .map(|inner| Self { inner })
            .map_err(wrap)
    }

    /// The algebra of a catalog realization.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let r = realization(name).map_err(wrap)?;
        Ok(Self {
            inner: r.algebra.clone(),
        })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.basis_names().to_vec()
    }

    fn to_text(&self) -> String {
        serialize_algebra(&self.inner)
    }

    /// `(dim Z², dim B², dim H²)`.
    fn h2(&self) -> (usize, usize, usize) {
        let r = h2_report(&self.inner);
        (r.z2_dim, r.b2_dim, r.h2_dim)
    }

    /// The matrix of `ω` as `"p/q"` strings and its rank. `cocycle` is
    /// `.coc` text.
    #[pyo3(signature = (l0, cocycle=None))]
    fn omega(
        &self,
        l0: &Bound<'_, PyAny>,
        cocycle: Option<&str>,
    ) -> PyResult<(Vec<Vec<String>>, usize)> {
        let l0 = functional(l0, self.inner.dim())?;
        let gamma = cocycle.map(|t| self.cocycle(t)).transpose()?;
        let form = presymplectic_matrix(&self.inner, &l0, gamma.as_ref()).map_err(wrap)?;
        let n = self.inner.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| format_q(form.omega.get(i, j))).collect())
            .collect();
        Ok((rows, form.rank))
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, dim={})", self.inner.name(), self.inner.dim())
    }
}

impl PyAlgebra {
    fn cocycle(&self, text: &str) -> PyResult<AlgebraTwoCocycle> {
        parse_cocycle_file(text, &self.inner).map_err(wrap)
    }
}

/// Names of the catalog realizations.
#[pyfunction]
fn catalog_names() -> PyResult<Vec<String>> {
    Ok(catalog()
        .map_err(wrap)?
        .iter()
        .map(|r| r.name.to_string())
        .collect())
}

fn verdict<'py>(py: Python<'py>, v: &OrbitVerdict) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("status", v.status.as_str())?;
    d.set_item("witness", v.witness.clone())?;
    d.set_item("residual", v.residual)?;
    let sep = v
        .separating_invariant
        .as_ref()
        .map(|s| (s.name.clone(), s.first, s.second));
    d.set_item("separating_invariant", sep)?;
    d.set_item("evaluations", v.evaluations)?;
    Ok(d)
}

fn params(seed: u64, tol: f64, restarts: usize, budget: usize) -> SearchParams {
    SearchParams {
        tol,
        restarts,
        budget,
        seed,
    }
}

/// Whether `nu` lies on the (deformed) coadjoint orbit of `mu`.
#[pyfunction]
#[pyo3(signature = (group, mu, nu, cocycle=None, seed=42, tol=1e-8, restarts=32, budget=2000))]
#[allow(clippy::too_many_arguments)]
fn orbit<'py>(
    py: Python<'py>,
    group: &str,
    mu: &Bound<'py, PyAny>,
    nu: &Bound<'py, PyAny>,
    cocycle: Option<&str>,
    seed: u64,
    tol: f64,
    restarts: usize,
    budget: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = realization(group).map_err(wrap)?;
    let n = r.dim();
    let (mu, nu) = (functional(mu, n)?, functional(nu, n)?);
    let choice = cocycle.map_or(CocycleChoice::None, CocycleChoice::Named);
    let v = same_orbit(r, choice, &mu, &nu, &params(seed, tol, restarts, budget)).map_err(wrap)?;
    verdict(py, &v)
}

/// Whether two pseudo-extensions are equivalent.
#[pyfunction]
#[pyo3(signature = (group, l0, l0b, cocycle=None, seed=42, tol=1e-8, restarts=32, budget=2000))]
#[allow(clippy::too_many_arguments)]
fn pseudo_class<'py>(
    py: Python<'py>,
    group: &str,
    l0: &Bound<'py, PyAny>,
    l0b: &Bound<'py, PyAny>,
    cocycle: Option<&str>,
    seed: u64,
    tol: f64,
    restarts: usize,
    budget: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = realization(group).map_err(wrap)?;
    let n = r.dim();
    let (a, b) = (functional(l0, n)?, functional(l0b, n)?);
    let v = pseudo_class_equivalent(r, cocycle, &a, &b, &params(seed, tol, restarts, budget))
        .map_err(wrap)?;
    verdict(py, &v)
}

#[pymodule]
fn lieco(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("Error", m.py().get_type::<Error>())?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(pseudo_class, m)?)?;
    Ok(())
}
