//! Python bindings. Reports come back as plain dicts and lists.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::Serialize;

use delsarte::group::{self as grp, GroupFunction, Normalization, Subset};
use delsarte::lp::{LpProblem, RowSense};
use delsarte::suites::{FuzzConfig, Suite};
use delsarte::{density, extremal, lp, posdef, radial, suites, trinomial};

create_exception!(delsarte, DelsarteError, PyException);

fn err(e: delsarte::Error) -> PyErr {
    match e {
        delsarte::Error::InvalidInput(_) | delsarte::Error::Domain(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => DelsarteError::new_err(e.to_string()),
    }
}

// serde value -> Python object, through the json module
fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| DelsarteError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite abelian group `Z_n1 x ... x Z_nk` with a Haar measure.
#[pyclass(name = "Group", module = "delsarte", frozen, skip_from_py_object)]
pub struct PyGroup {
    inner: grp::Group,
}

#[pymethods]
impl PyGroup {
    /// `normalization` is "probability", "counting" or a positive weight per point.
    #[new]
    #[pyo3(signature = (orders, normalization = None))]
    fn new(orders: Vec<usize>, normalization: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let norm = match normalization {
            None => Normalization::Probability,
            Some(obj) => {
                if let Ok(s) = obj.cast::<PyString>() {
                    match s.to_str()? {
                        "probability" => Normalization::Probability,
                        "counting" => Normalization::Counting,
                        other => {
                            return Err(PyValueError::new_err(format!(
                                "unknown normalization `{other}`"
                            )))
                        }
                    }
                } else {
                    Normalization::Weight(obj.extract::<f64>()?)
                }
            }
        };
        Ok(PyGroup {
            inner: grp::Group::new(&orders, norm).map_err(err)?,
        })
    }

    #[getter]
    fn orders(&self) -> Vec<usize> {
        self.inner.orders().to_vec()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn weight(&self) -> f64 {
        self.inner.weight()
    }

    /// Lexicographic index of a coordinate tuple.
    fn index(&self, coords: Vec<i64>) -> PyResult<usize> {
        self.inner.index(&coords).map_err(err)
    }

    fn coords(&self, index: usize) -> PyResult<Vec<usize>> {
        if index >= self.inner.size() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.coords(index))
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        let spec = grp::GroupSpec::from(self.inner.clone());
        format!(
            "Group({:?}, {})",
            spec.orders,
            serde_json::to_string(&spec.normalization).unwrap_or_default()
        )
    }
}

// "empty", "all", residues [0, 1, -1] or coordinate tuples [(0, 1), (1, 0)]
fn subset(g: &grp::Group, obj: &Bound<'_, PyAny>) -> PyResult<Subset> {
    if let Ok(s) = obj.cast::<PyString>() {
        return match s.to_str()? {
            "empty" => Ok(Subset::empty(g)),
            "all" => Ok(Subset::full(g)),
            other => Err(PyValueError::new_err(format!("unknown set `{other}`"))),
        };
    }
    if let Ok(r) = obj.extract::<Vec<i64>>() {
        return Subset::from_residues(g, &r).map_err(err);
    }
    let coords: Vec<Vec<i64>> = obj.extract()?;
    Subset::from_coords(g, &coords).map_err(err)
}

fn function(g: &grp::Group, values: Vec<f64>) -> PyResult<GroupFunction> {
    GroupFunction::new(g, values).map_err(err)
}

/// `C(omega_plus, omega_minus)`.
#[pyfunction]
fn two_set_constant<'py>(
    py: Python<'py>,
    group: &PyGroup,
    omega_plus: &Bound<'py, PyAny>,
    omega_minus: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let g = &group.inner;
    let r = extremal::two_set_constant(g, &subset(g, omega_plus)?, &subset(g, omega_minus)?)
        .map_err(err)?;
    to_py(py, &r)
}

/// Turán constant `T(omega)`.
#[pyfunction]
fn turan<'py>(
    py: Python<'py>,
    group: &PyGroup,
    omega: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let g = &group.inner;
    to_py(py, &extremal::turan(g, &subset(g, omega)?).map_err(err)?)
}

/// Delsarte constant `D(omega_plus)`.
#[pyfunction]
fn delsarte_constant<'py>(
    py: Python<'py>,
    group: &PyGroup,
    omega_plus: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let g = &group.inner;
    to_py(
        py,
        &extremal::delsarte(g, &subset(g, omega_plus)?).map_err(err)?,
    )
}

#[pyfunction]
fn dft(group: &PyGroup, values: Vec<f64>) -> PyResult<Vec<Complex64>> {
    Ok(function(&group.inner, values)?.dft().values().to_vec())
}

#[pyfunction]
#[pyo3(signature = (group, values, tol = posdef::DEFAULT_TOL))]
fn is_posdef(group: &PyGroup, values: Vec<f64>, tol: f64) -> PyResult<bool> {
    Ok(posdef::is_posdef(&function(&group.inner, values)?, tol))
}

/// Maximize `objective . x` subject to rows with senses "<=", "=", ">=".
#[pyfunction]
#[pyo3(signature = (objective, rows, senses, rhs, lower = None, upper = None))]
fn solve_lp<'py>(
    py: Python<'py>,
    objective: Vec<f64>,
    rows: Vec<Vec<f64>>,
    senses: Vec<String>,
    rhs: Vec<f64>,
    lower: Option<Vec<f64>>,
    upper: Option<Vec<f64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut p = LpProblem::new(objective);
    if rows.len() != senses.len() || rows.len() != rhs.len() {
        return Err(PyValueError::new_err(
            "rows, senses and rhs differ in length",
        ));
    }
    for ((row, s), b) in rows.into_iter().zip(&senses).zip(rhs) {
        let sense = match s.as_str() {
            "<=" => RowSense::Le,
            "=" | "==" => RowSense::Eq,
            ">=" => RowSense::Ge,
            other => return Err(PyValueError::new_err(format!("unknown sense `{other}`"))),
        };
        p.add_row(row, sense, b);
    }
    if let Some(l) = lower {
        p.lower = l;
    }
    if let Some(u) = upper {
        p.upper = u;
    }
    to_py(py, &lp::solve(&p).map_err(err)?)
}

#[pyfunction]
fn bessel_j(alpha: f64, t: f64) -> PyResult<f64> {
    radial::bessel_j(alpha, t).map_err(err)
}

#[pyfunction]
fn bessel_first_zero(alpha: f64) -> PyResult<f64> {
    radial::bessel_first_zero(alpha).map_err(err)
}

#[pyfunction]
fn yudin(d: usize, t: f64) -> PyResult<f64> {
    radial::yudin_y(d, t).map_err(err)
}

#[pyfunction]
fn ball_char_transform(d: usize, x: f64) -> PyResult<f64> {
    radial::ball_char_transform(d, x).map_err(err)
}

#[pyfunction]
fn gorbachev_h(d: usize, t: f64) -> PyResult<f64> {
    Ok(radial::gorbachev_h(d, t, &radial::Quadrature::default())
        .map_err(err)?
        .value)
}

/// `(a, b)` of the critical trinomial `h_z`.
#[pyfunction]
fn critical_coeffs(z: f64) -> PyResult<(f64, f64)> {
    let t = trinomial::critical_coeffs(z).map_err(err)?;
    Ok((t.a, t.b))
}

#[pyfunction]
fn optimize_trinomial(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &trinomial::optimize_trinomial().map_err(err)?)
}

#[pyfunction]
fn example51_lower_bound(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &trinomial::example51_lower_bound().map_err(err)?)
}

#[pyfunction]
fn example51_comparison(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &trinomial::example51_comparison().map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (forbidden, max_period = density::MAX_SEARCH_PERIOD))]
fn max_density_search(
    py: Python<'_>,
    forbidden: Vec<u64>,
    max_period: u64,
) -> PyResult<Bound<'_, PyAny>> {
    to_py(
        py,
        &density::max_density_search(&forbidden, max_period).map_err(err)?,
    )
}

/// Run a named verification suite; returns the report dict.
#[pyfunction]
#[pyo3(signature = (suite, instances = 50, seed = 0, max_n = 40))]
fn run_suite<'py>(
    py: Python<'py>,
    suite: &str,
    instances: usize,
    seed: u64,
    max_n: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let cfg = FuzzConfig {
        instances,
        seed,
        max_n,
    };
    to_py(py, &suites::run_suite(suite, &cfg).map_err(err)?)
}

/// Registers everything on `m`; also used by the embedded tests.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DelsarteError", m.py().get_type::<DelsarteError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(two_set_constant, m)?)?;
    m.add_function(wrap_pyfunction!(turan, m)?)?;
    m.add_function(wrap_pyfunction!(delsarte_constant, m)?)?;
    m.add_function(wrap_pyfunction!(dft, m)?)?;
    m.add_function(wrap_pyfunction!(is_posdef, m)?)?;
    m.add_function(wrap_pyfunction!(solve_lp, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_first_zero, m)?)?;
    m.add_function(wrap_pyfunction!(yudin, m)?)?;
    m.add_function(wrap_pyfunction!(ball_char_transform, m)?)?;
    m.add_function(wrap_pyfunction!(gorbachev_h, m)?)?;
    m.add_function(wrap_pyfunction!(critical_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_trinomial, m)?)?;
    m.add_function(wrap_pyfunction!(example51_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(example51_comparison, m)?)?;
    m.add_function(wrap_pyfunction!(max_density_search, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

#[pymodule]
#[pyo3(name = "delsarte")]
fn delsarte_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
