//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! structured results become dicts whose `{num, den}` pairs are converted
//! to fractions.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde::Serialize;
use serde_json::Value;

use lrc_core::billiards;
use lrc_core::fieldsearch;
use lrc_core::gap::{self, GapCertificate, Witness};
use lrc_core::render::{render_svg as render, Scene};
use lrc_core::viewobstruct::{self, Direction};
use lrc_core::{Error, QuadExt, Rational, SpeedSet};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((r.numer().clone(), r.denom().clone()))
}

fn json_int<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::String(s) => py.import("builtins")?.getattr("int")?.call1((s.as_str(),)),
        other => to_py(py, other),
    }
}

/// JSON value to Python, turning `{num, den}` objects into fractions.
fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_bound_py_any(py),
            (None, Some(u)) => u.into_bound_py_any(py),
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(a) => {
            let items = a
                .iter()
                .map(|x| to_py(py, x))
                .collect::<PyResult<Vec<_>>>()?;
            Ok(PyList::new(py, items)?.into_any())
        }
        Value::Object(o) => {
            if let (2, Some(n), Some(d)) = (o.len(), o.get("num"), o.get("den")) {
                let cls = py.import("fractions")?.getattr("Fraction")?;
                return cls.call1((json_int(py, n)?, json_int(py, d)?));
            }
            let dict = PyDict::new(py);
            for (k, x) in o {
                dict.set_item(k, to_py(py, x)?)?;
            }
            Ok(dict.into_any())
        }
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &value)
}

/// Accepts `Fraction`, `int` or a `"p/q"` string; floats are rejected.
fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if obj.is_instance_of::<pyo3::types::PyFloat>() {
        return Err(PyValueError::new_err(
            "floats are not exact; pass a Fraction or 'p/q'",
        ));
    }
    obj.str()?.to_str()?.parse().map_err(py_err)
}

fn slope_arg(obj: &Bound<'_, PyAny>) -> PyResult<QuadExt> {
    if let Ok(q) = obj.extract::<PyRef<'_, PyQuadExt>>() {
        return Ok(q.0.clone());
    }
    if obj.is_instance_of::<pyo3::types::PyFloat>() {
        return Err(PyValueError::new_err(
            "floats are not exact; pass a Fraction, QuadExt or 'sqrt3*p/q'",
        ));
    }
    billiards::parse_slope(obj.str()?.to_str()?).map_err(py_err)
}

fn speeds_arg(obj: &Bound<'_, PyAny>) -> PyResult<SpeedSet> {
    if let Ok(s) = obj.extract::<PyRef<'_, PySpeedSet>>() {
        return Ok(s.0.clone());
    }
    SpeedSet::new(obj.extract::<Vec<u64>>()?).map_err(py_err)
}

/// Nonempty set of distinct positive integer speeds, kept sorted.
#[pyclass(name = "SpeedSet", module = "lonely_runner", frozen)]
struct PySpeedSet(SpeedSet);

#[pymethods]
impl PySpeedSet {
    #[new]
    fn new(speeds: Vec<u64>) -> PyResult<Self> {
        SpeedSet::new(speeds).map(PySpeedSet).map_err(py_err)
    }

    #[getter]
    fn speeds(&self) -> Vec<u64> {
        self.0.as_slice().to_vec()
    }

    fn gcd(&self) -> u64 {
        self.0.gcd()
    }

    fn gap(&self) -> PyGapCertificate {
        PyGapCertificate(gap::exact_gap(&self.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("SpeedSet({:?})", self.0.as_slice())
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        speeds_arg(other).is_ok_and(|s| s == self.0)
    }
}

/// Exact gap with its maximizing time and per-speed distances.
#[pyclass(name = "GapCertificate", module = "lonely_runner", frozen)]
struct PyGapCertificate(GapCertificate);

#[pymethods]
impl PyGapCertificate {
    #[getter]
    fn speeds(&self) -> Vec<u64> {
        self.0.speeds.as_slice().to_vec()
    }

    #[getter]
    fn delta<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.delta)
    }

    #[getter]
    fn witness_time<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.witness_time)
    }

    #[getter]
    fn per_speed_norms<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0
            .per_speed_norms
            .iter()
            .map(|r| fraction(py, r))
            .collect()
    }

    /// `(i, j, a)` with `witness_time = a/(s_i + s_j)`, or `None` for a
    /// single speed.
    #[getter]
    fn witness(&self) -> Option<(usize, usize, u64)> {
        match self.0.witness {
            Witness::Pair { i, j, a } => Some((i, j, a)),
            Witness::SingleSpeed => None,
        }
    }

    /// Recomputes the gap and compares; raises on mismatch.
    fn check(&self) -> PyResult<()> {
        gap::check_certificate(&self.0).map_err(py_err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn __repr__(&self) -> String {
        format!(
            "GapCertificate(speeds={}, delta={}, witness_time={})",
            self.0.speeds, self.0.delta, self.0.witness_time
        )
    }
}

/// Element `a + b·√3` of Q(√3).
#[pyclass(name = "QuadExt", module = "lonely_runner", frozen)]
struct PyQuadExt(QuadExt);

#[pymethods]
impl PyQuadExt {
    #[new]
    #[pyo3(signature = (a, b = None))]
    fn new(a: &Bound<'_, PyAny>, b: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let b = b
            .map(rational_arg)
            .transpose()?
            .unwrap_or_else(Rational::zero);
        Ok(PyQuadExt(QuadExt::new(rational_arg(a)?, b)))
    }

    /// Parses `p/q`, `sqrt3*p/q` or `p/q*sqrt3`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        billiards::parse_slope(s).map(PyQuadExt).map_err(py_err)
    }

    #[getter]
    fn a<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.a)
    }

    #[getter]
    fn b<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.b)
    }

    fn sign(&self) -> i32 {
        self.0.sign()
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        slope_arg(other).is_ok_and(|q| q == self.0)
    }

    fn __repr__(&self) -> String {
        format!("QuadExt('{}')", self.0)
    }
}

/// Exact gap of a speed set.
#[pyfunction]
fn exact_gap(speeds: &Bound<'_, PyAny>) -> PyResult<PyGapCertificate> {
    Ok(PyGapCertificate(gap::exact_gap(&speeds_arg(speeds)?)))
}

/// `min_s ‖s·t‖` at a rational time.
#[pyfunction]
fn gap_at<'py>(
    py: Python<'py>,
    speeds: &Bound<'py, PyAny>,
    t: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &gap::gap_at(&speeds_arg(speeds)?, &rational_arg(t)?))
}

/// Grid maximum at resolution `n` (default `64·s_max·k`).
#[pyfunction]
#[pyo3(signature = (speeds, resolution = None))]
fn gap_grid_oracle<'py>(
    py: Python<'py>,
    speeds: &Bound<'py, PyAny>,
    resolution: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = speeds_arg(speeds)?;
    let n = resolution.unwrap_or_else(|| gap::default_resolution(&s));
    fraction(py, &gap::gap_grid_oracle(&s, n).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (speeds, focus = 0))]
fn lonely_time<'py>(
    py: Python<'py>,
    speeds: Vec<i64>,
    focus: usize,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &gap::lonely_time(&speeds, focus).map_err(py_err)?)
}

#[pyfunction]
fn verify_lrc<'py>(py: Python<'py>, k: usize, max_speed: u64) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| gap::verify_lrc(k, max_speed))
        .map_err(py_err)?;
    to_dict(py, &report)
}

#[pyfunction]
fn check_kappa_bounds<'py>(
    py: Python<'py>,
    speeds: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &gap::check_kappa_bounds(&speeds_arg(speeds)?))
}

#[pyfunction]
fn min_scale_for_direction<'py>(py: Python<'py>, coords: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
    let d = Direction::new(coords).map_err(py_err)?;
    fraction(py, &viewobstruct::min_scale_for_direction(&d))
}

#[pyfunction]
fn obstruction_witness<'py>(
    py: Python<'py>,
    coords: Vec<u64>,
    alpha: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let d = Direction::new(coords).map_err(py_err)?;
    to_dict(
        py,
        &viewobstruct::obstruction_witness(&d, &rational_arg(alpha)?).map_err(py_err)?,
    )
}

#[pyfunction]
fn kprime_scan<'py>(py: Python<'py>, k: usize, max_coord: u64) -> PyResult<Bound<'py, PyAny>> {
    let scan = py
        .detach(|| viewobstruct::kprime_scan(k, max_coord))
        .map_err(py_err)?;
    to_dict(py, &scan)
}

#[pyfunction]
fn square_min_obstacle<'py>(
    py: Python<'py>,
    slope: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        &billiards::square_min_obstacle(&rational_arg(slope)?).map_err(py_err)?,
    )
}

#[pyfunction]
fn square_path_segments<'py>(
    py: Python<'py>,
    slope: &Bound<'py, PyAny>,
    n_segments: usize,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(
        py,
        &billiards::square_path_segments(&rational_arg(slope)?, n_segments).map_err(py_err)?,
    )
}

/// First contact of the unfolded ray with `H(alpha)` within `horizon` cells.
#[pyfunction]
#[pyo3(signature = (slope, alpha, horizon = billiards::DEFAULT_HORIZON))]
fn triangle_obstruction_check<'py>(
    py: Python<'py>,
    slope: &Bound<'py, PyAny>,
    alpha: &Bound<'py, PyAny>,
    horizon: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let (s, a) = (slope_arg(slope)?, rational_arg(alpha)?);
    let hit = py
        .detach(|| billiards::triangle_obstruction_check(&s, &a, horizon))
        .map_err(py_err)?;
    to_dict(py, &hit)
}

/// `(lower, upper)` bracket of the least obstacle met within `horizon` cells.
#[pyfunction]
#[pyo3(signature = (slope, horizon = billiards::DEFAULT_HORIZON, tolerance = None))]
fn triangle_min_obstacle<'py>(
    py: Python<'py>,
    slope: &Bound<'py, PyAny>,
    horizon: usize,
    tolerance: Option<&Bound<'py, PyAny>>,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let s = slope_arg(slope)?;
    let tol = tolerance
        .map(rational_arg)
        .transpose()?
        .unwrap_or_else(billiards::default_tolerance);
    let b = py
        .detach(|| billiards::triangle_min_obstacle(&s, horizon, &tol))
        .map_err(py_err)?;
    Ok((fraction(py, &b.lower)?, fraction(py, &b.upper)?))
}

#[pyfunction]
fn triangle_path_segments<'py>(
    py: Python<'py>,
    slope: &Bound<'py, PyAny>,
    n_strikes: usize,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(
        py,
        &billiards::triangle_path_segments(&slope_arg(slope)?, n_strikes).map_err(py_err)?,
    )
}

#[pyfunction]
fn band_avoidance_search<'py>(
    py: Python<'py>,
    speeds: &Bound<'py, PyAny>,
    p: u64,
    m: u64,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(
        py,
        &fieldsearch::band_avoidance_search(&speeds_arg(speeds)?, p, m).map_err(py_err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (speeds, d, prime_budget = 1 << 20))]
fn invisible_subset<'py>(
    py: Python<'py>,
    speeds: &Bound<'py, PyAny>,
    d: usize,
    prime_budget: u64,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(
        py,
        &fieldsearch::invisible_subset(&speeds_arg(speeds)?, d, prime_budget).map_err(py_err)?,
    )
}

#[pyfunction]
fn conj34_witness<'py>(py: Python<'py>, speeds: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_dict(
        py,
        &fieldsearch::conj34_witness(&speeds_arg(speeds)?).map_err(py_err)?,
    )
}

/// SVG text for one of `obstruction2d`, `square_billiard`,
/// `triangle_billiard`, `triangle_tiling`.
#[pyfunction]
#[pyo3(signature = (scene, alpha = None, slopes = None, count = None))]
fn render_svg(
    scene: &str,
    alpha: Option<&Bound<'_, PyAny>>,
    slopes: Option<Vec<Bound<'_, PyAny>>>,
    count: Option<usize>,
) -> PyResult<String> {
    let alpha = alpha.map(rational_arg).transpose()?;
    let slopes = slopes.unwrap_or_default();
    let alpha_or = |n, d| alpha.clone().unwrap_or_else(|| Rational::new(n, d));
    let rationals = || {
        slopes
            .iter()
            .map(rational_arg)
            .collect::<PyResult<Vec<_>>>()
    };
    let quads = || slopes.iter().map(slope_arg).collect::<PyResult<Vec<_>>>();
    let single = |v: Vec<QuadExt>| match v.as_slice() {
        [s] => Ok(s.clone()),
        _ => Err(PyValueError::new_err("scene takes exactly one slope")),
    };
    let scene = match scene {
        "obstruction2d" => Scene::Obstruction2d {
            alpha: alpha_or(1, 3),
            slopes: rationals()?,
            extent: count.unwrap_or(6) as u64,
        },
        "square_billiard" => {
            let s = rationals()?;
            let [slope] = s.as_slice() else {
                return Err(PyValueError::new_err("scene takes exactly one slope"));
            };
            Scene::SquareBilliard {
                slope: slope.clone(),
                alpha: alpha_or(1, 3),
                segments: count.unwrap_or(8),
            }
        }
        "triangle_billiard" => Scene::TriangleBilliard {
            slope: single(quads()?)?,
            alpha,
            strikes: count.unwrap_or(10),
        },
        "triangle_tiling" => Scene::TriangleTiling {
            alpha: alpha_or(1, 4),
            slopes: quads()?,
            levels: count.unwrap_or(8) as i64,
        },
        other => return Err(PyValueError::new_err(format!("unknown scene `{other}`"))),
    };
    render(&scene).map_err(py_err)
}

#[pymodule]
fn lonely_runner(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpeedSet>()?;
    m.add_class::<PyGapCertificate>()?;
    m.add_class::<PyQuadExt>()?;
    m.add_function(wrap_pyfunction!(exact_gap, m)?)?;
    m.add_function(wrap_pyfunction!(gap_at, m)?)?;
    m.add_function(wrap_pyfunction!(gap_grid_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(lonely_time, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lrc, m)?)?;
    m.add_function(wrap_pyfunction!(check_kappa_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(min_scale_for_direction, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction_witness, m)?)?;
    m.add_function(wrap_pyfunction!(kprime_scan, m)?)?;
    m.add_function(wrap_pyfunction!(square_min_obstacle, m)?)?;
    m.add_function(wrap_pyfunction!(square_path_segments, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_obstruction_check, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_min_obstacle, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_path_segments, m)?)?;
    m.add_function(wrap_pyfunction!(band_avoidance_search, m)?)?;
    m.add_function(wrap_pyfunction!(invisible_subset, m)?)?;
    m.add_function(wrap_pyfunction!(conj34_witness, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    Ok(())
}
