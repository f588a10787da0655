//! Python bindings. Reports come back as plain dicts; weights and sequences
//! are small wrapper classes that also accept the JSON forms the CLI reads.

use hardy_core::continuous::{self, parts_identity_check};
use hardy_core::discrete::{self, WeightedSequence};
use hardy_core::muckenhoupt::{self, GridSpec};
use hardy_core::numerics::{PiecewiseConstantWeight, PowerWeight};
use hardy_core::{HardyError, QuadratureConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: HardyError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Round-trips through JSON so "inf" sentinels and nested maps match the CLI.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn quadrature(tol: Option<f64>) -> PyResult<QuadratureConfig> {
    let cfg = tol.map_or_else(QuadratureConfig::default, |t| QuadratureConfig::default().with_tol(t));
    cfg.validate().map_err(err)?;
    Ok(cfg)
}

/// A weight on an interval: a power `(x − origin)^a` or a step function.
#[pyclass(name = "Weight", module = "hardy_py", frozen)]
pub struct PyWeight {
    inner: hardy_core::Weight,
}

#[pymethods]
impl PyWeight {
    #[staticmethod]
    #[pyo3(signature = (a, origin = 0.0))]
    fn power(a: f64, origin: f64) -> PyResult<Self> {
        let w = PowerWeight::new(a, origin).map_err(err)?;
        Ok(Self { inner: hardy_core::Weight::Power(w) })
    }

    #[staticmethod]
    #[pyo3(signature = (breakpoints, values, monotone = false))]
    fn piecewise(breakpoints: Vec<f64>, values: Vec<f64>, monotone: bool) -> PyResult<Self> {
        let w = if monotone {
            PiecewiseConstantWeight::new_monotone(breakpoints, values)
        } else {
            PiecewiseConstantWeight::new(breakpoints, values)
        }
        .map_err(err)?;
        Ok(Self { inner: hardy_core::Weight::Piecewise(w) })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __call__(&self, x: f64) -> f64 {
        self.inner.eval(x)
    }

    fn is_nondecreasing(&self) -> bool {
        self.inner.is_nondecreasing()
    }

    fn __repr__(&self) -> String {
        format!("Weight({})", muckenhoupt::weight_id(&self.inner))
    }
}

/// Positive terms `a` with positive weights `lam` (all ones when omitted).
#[pyclass(name = "Sequence", module = "hardy_py", frozen)]
pub struct PySequence {
    inner: WeightedSequence,
}

#[pymethods]
impl PySequence {
    #[new]
    #[pyo3(signature = (a, lam = None))]
    fn new(a: Vec<f64>, lam: Option<Vec<f64>>) -> PyResult<Self> {
        let inner = match lam {
            Some(lam) => WeightedSequence::new(a, lam),
            None => WeightedSequence::unweighted(a),
        }
        .map_err(err)?;
        Ok(Self { inner })
    }

    fn means(&self) -> Vec<f64> {
        discrete::prefix_sums(&self.inner).means()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyfunction]
fn hardy_sides<'py>(py: Python<'py>, seq: PyRef<'py, PySequence>, p: f64, q: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &discrete::hardy_sides(&seq.inner, p, q).map_err(err)?)
}

#[pyfunction]
fn remainder_sides<'py>(py: Python<'py>, seq: PyRef<'py, PySequence>, p: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &discrete::remainder_sides(&seq.inner, p).map_err(err)?)
}

#[pyfunction]
fn interpolation_sides<'py>(
    py: Python<'py>,
    seq: PyRef<'py, PySequence>,
    p: f64,
    q1: f64,
    q2: f64,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &discrete::interpolation_sides(&seq.inner, p, q1, q2).map_err(err)?)
}

#[pyfunction]
fn elementary_gap(y: f64, p: f64) -> PyResult<f64> {
    discrete::elementary_gap(y, p).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (weight, p, q = None, a = 0.0, b = 1.0, tol = None))]
fn integral_sides<'py>(
    py: Python<'py>,
    weight: PyRef<'py, PyWeight>,
    p: f64,
    q: Option<f64>,
    a: f64,
    b: f64,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = quadrature(tol)?;
    let report = continuous::integral_sides(&weight.inner, (a, b), p, q.unwrap_or(p), &cfg).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (weight, alpha, u, tol = None))]
fn parts_identity<'py>(
    py: Python<'py>,
    weight: PyRef<'py, PyWeight>,
    alpha: f64,
    u: f64,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = quadrature(tol)?;
    to_py(py, &parts_identity_check(&weight.inner, alpha, u, &cfg).map_err(err)?)
}

#[pyfunction]
fn sharpness_sweep<'py>(py: Python<'py>, p: f64, q: f64, d: Vec<f64>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &continuous::sharpness_sweep(p, q, &d).map_err(err)?)
}

#[pyfunction]
fn ap_characteristic(weight: PyRef<'_, PyWeight>, p: f64, lo: f64, hi: f64) -> PyResult<f64> {
    muckenhoupt::ap_characteristic(&weight.inner, p, (lo, hi)).map_err(err)
}

/// `kind` is one of "prefix", "suffix", "interval" or "classes".
#[pyfunction]
#[pyo3(signature = (weight, p, kind = "prefix", grid = "geom:40"))]
fn ap_scan<'py>(
    py: Python<'py>,
    weight: PyRef<'py, PyWeight>,
    p: f64,
    kind: &str,
    grid: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let grid: GridSpec = grid.parse().map_err(err)?;
    let w = &weight.inner;
    match kind {
        "prefix" => to_py(py, &muckenhoupt::prefix_scan(w, p, &grid.prefix_points()).map_err(err)?),
        "suffix" => to_py(py, &muckenhoupt::suffix_scan(w, p, &grid.suffix_points()).map_err(err)?),
        "interval" => to_py(py, &muckenhoupt::interval_scan(w, p, &grid.interval_pairs()).map_err(err)?),
        "classes" => to_py(py, &muckenhoupt::compare_interval_classes(w, p, &grid).map_err(err)?),
        other => Err(PyValueError::new_err(format!("unknown scan kind {other:?}"))),
    }
}

#[pyfunction]
#[allow(non_snake_case)]
fn critical_exponent<'py>(py: Python<'py>, q: f64, M: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &muckenhoupt::critical_exponent(q, M).map_err(err)?)
}

#[pyfunction]
fn power_weight_constant(q: f64, a: f64) -> PyResult<f64> {
    muckenhoupt::power_weight_constant(q, a).map_err(err)
}

#[pyfunction]
#[allow(non_snake_case)]
fn self_improvement_bound(p: f64, q: f64, M: f64) -> PyResult<f64> {
    muckenhoupt::self_improvement_bound(p, q, M).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (weight, q, p, grid = "geom:40"))]
fn check_self_improvement<'py>(
    py: Python<'py>,
    weight: PyRef<'py, PyWeight>,
    q: f64,
    p: f64,
    grid: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let grid: GridSpec = grid.parse().map_err(err)?;
    to_py(py, &muckenhoupt::check_self_improvement(&weight.inner, q, p, &grid.prefix_points()).map_err(err)?)
}

#[pymodule]
fn hardy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeight>()?;
    m.add_class::<PySequence>()?;
    m.add_function(wrap_pyfunction!(hardy_sides, m)?)?;
    m.add_function(wrap_pyfunction!(remainder_sides, m)?)?;
    m.add_function(wrap_pyfunction!(interpolation_sides, m)?)?;
    m.add_function(wrap_pyfunction!(elementary_gap, m)?)?;
    m.add_function(wrap_pyfunction!(integral_sides, m)?)?;
    m.add_function(wrap_pyfunction!(parts_identity, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(ap_characteristic, m)?)?;
    m.add_function(wrap_pyfunction!(ap_scan, m)?)?;
    m.add_function(wrap_pyfunction!(critical_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(power_weight_constant, m)?)?;
    m.add_function(wrap_pyfunction!(self_improvement_bound, m)?)?;
    m.add_function(wrap_pyfunction!(check_self_improvement, m)?)?;
    Ok(())
}
