//! Python bindings.
//!
//! Exact values cross the boundary as strings (`"3/2"`) or Python ints;
//! arguments accept `int`, `str` and `fractions.Fraction` but reject `float`.
//! Structured results are returned as plain dicts and lists in the same
//! shape as the command-line `--json` output.

use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyFloat;
use serde_json::Value;

use tropicaust_core::caustic::{caustic_of, eval_series, final_star_type, noether_audit, twelve_sum};
use tropicaust_core::contfrac::{hj_cf, regular_cf};
use tropicaust_core::json::{
    curve_to_json, direction_to_json, domain_to_json, extended_to_json, front_to_json, int_to_json, noether_to_json,
    parse_domain, star_to_json, suite_report_to_json, trace_to_json,
};
use tropicaust_core::lattice::{parse_rat, primitive};
use tropicaust_core::svg::{evolution_scene, render_svg, RenderSpec};
use tropicaust_core::trig::{angle_invariants, cone_caustic, cotangent, reversed_cotangent};
use tropicaust_core::wavefront::{age, propagate};
use tropicaust_core::{simulate, Angle, ConvexDomain, Direction, EvolutionTrace, LatticeVec, Rat, RatPoint};

create_exception!(tropicaust, TropicaustError, PyValueError, "Raised when the engine rejects an input.");

fn err(e: tropicaust_core::Error) -> PyErr {
    TropicaustError::new_err(format!("{}: {e}", e.kind()))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn rat_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err("floats are not exact; pass an int, str or Fraction"));
    }
    parse_rat(&obj.str()?.to_string()).map_err(err)
}

fn point_arg(obj: &Bound<'_, PyAny>) -> PyResult<RatPoint> {
    let items: Vec<Bound<'_, PyAny>> = obj.try_iter()?.collect::<PyResult<_>>()?;
    match items.as_slice() {
        [x, y] => Ok(RatPoint::new(rat_arg(x)?, rat_arg(y)?)),
        _ => Err(PyValueError::new_err("a point has two coordinates")),
    }
}

fn direction_arg(obj: &Bound<'_, PyAny>) -> PyResult<Direction> {
    let p = point_arg(obj)?;
    let v: LatticeVec = p.to_lattice().ok_or_else(|| PyValueError::new_err("directions have integer coordinates"))?;
    Ok(primitive(&v).map_err(err)?.0)
}

/// A convex domain: a polygon, a domain bounded by two rays, a half-plane
/// or a strip.
#[pyclass(module = "tropicaust", frozen)]
struct Domain {
    inner: ConvexDomain,
}

#[pymethods]
impl Domain {
    /// A bounded polygon from its vertices (any order is accepted if convex).
    #[staticmethod]
    fn bounded(vertices: Vec<Bound<'_, PyAny>>) -> PyResult<Domain> {
        let pts = vertices.iter().map(point_arg).collect::<PyResult<Vec<_>>>()?;
        Ok(Domain { inner: ConvexDomain::bounded(pts).map_err(err)? })
    }

    /// Parses the JSON domain schema, given as a string or a dict.
    #[staticmethod]
    fn from_json(py: Python<'_>, data: &Bound<'_, PyAny>) -> PyResult<Domain> {
        let text: String = match data.extract::<String>() {
            Ok(s) => s,
            Err(_) => py.import("json")?.call_method1("dumps", (data,))?.extract()?,
        };
        Ok(Domain { inner: parse_domain(&text).map_err(err)? })
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &domain_to_json(&self.inner))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn vertices(&self) -> Vec<(String, String)> {
        self.inner.vertices().iter().map(|p| (p.x.to_string(), p.y.to_string())).collect()
    }

    fn is_canonical(&self) -> bool {
        self.inner.is_canonical()
    }

    fn tropical_perimeter(&self) -> PyResult<String> {
        Ok(self.inner.tropical_perimeter().map_err(err)?.to_string())
    }

    /// How far the domain can be evolved backwards: `"inf"` or a rational.
    fn age(&self) -> PyResult<String> {
        Ok(age(&self.inner).map_err(err)?.to_string())
    }

    /// The front at time `t`, as a dict.
    fn propagate<'py>(&self, py: Python<'py>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &front_to_json(&propagate(&self.inner, &rat_arg(t)?).map_err(err)?))
    }

    fn simulate(&self) -> PyResult<Trace> {
        Ok(Trace { inner: simulate(&self.inner).map_err(err)? })
    }

    /// Arrival time of the front at a point.
    fn eval_series(&self, point: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(eval_series(&self.inner, &point_arg(point)?).map_err(err)?.to_string())
    }

    /// `Σ d_v + Σ d_E` of a bounded canonical polygon.
    fn twelve_sum(&self) -> PyResult<i64> {
        let total = twelve_sum(&self.inner).map_err(err)?.total;
        i64::try_from(total).map_err(|_| PyValueError::new_err("sum does not fit in 64 bits"))
    }

    /// An SVG picture of the domain, its caustic and the fronts at `times`.
    #[pyo3(signature = (times = Vec::new()))]
    fn render_svg(&self, times: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        let ts = times.iter().map(rat_arg).collect::<PyResult<Vec<_>>>()?;
        let scene = evolution_scene(&self.inner, &ts).map_err(err)?;
        render_svg(&scene, &RenderSpec::from_env()).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Domain({})", domain_to_json(&self.inner))
    }

    fn __eq__(&self, other: &Domain) -> bool {
        self.inner == other.inner
    }
}

/// The complete evolution of a domain: particles, collisions, final locus.
#[pyclass(module = "tropicaust", frozen)]
struct Trace {
    inner: EvolutionTrace,
}

#[pymethods]
impl Trace {
    /// `"inf"` or a rational.
    #[getter]
    fn final_time(&self) -> String {
        self.inner.final_time.to_string()
    }

    #[getter]
    fn final_locus<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &trace_to_json(&self.inner)["finalLocus"])
    }

    fn front_at<'py>(&self, py: Python<'py>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &front_to_json(&self.inner.front_at(&rat_arg(t)?).map_err(err)?))
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &trace_to_json(&self.inner))
    }

    /// The caustic as a weighted graph.
    fn caustic<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &curve_to_json(&caustic_of(&self.inner).map_err(err)?))
    }

    /// `l(K) + l(∂Φ)` against `12 t_Φ + 4 l(Φ(t_Φ))`.
    fn noether<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &noether_to_json(&noether_audit(&self.inner).map_err(err)?))
    }

    /// The star of a point-type final collision.
    fn final_star<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &star_to_json(&final_star_type(&self.inner).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Trace(particles={}, events={}, final_time={})",
            self.inner.particles.len(),
            self.inner.events.len(),
            extended_to_json(&self.inner.final_time)
        )
    }
}

/// Determinant, type, cotangent and caustic of the angle between two legs.
#[pyfunction]
fn angle<'py>(py: Python<'py>, leg1: &Bound<'py, PyAny>, leg2: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let a = Angle::new(direction_arg(leg1)?, direction_arg(leg2)?).map_err(err)?;
    let class = angle_invariants(&a);
    let ta = cotangent(&a);
    let v = serde_json::json!({
        "determinant": int_to_json(&class.determinant),
        "width": int_to_json(&class.width),
        "height": int_to_json(&class.height),
        "kind": class.kind.to_string(),
        "cotangent": ta.to_string(),
        "reversedCotangent": reversed_cotangent(&ta).to_string(),
        "caustic": cone_caustic(&a)
            .iter()
            .map(|r| serde_json::json!({"direction": direction_to_json(&r.direction), "weight": int_to_json(&r.weight)}))
            .collect::<Vec<_>>(),
    });
    to_py(py, &v)
}

fn entries(v: &[tropicaust_core::Int]) -> PyResult<Vec<i64>> {
    v.iter().map(|x| i64::try_from(x).map_err(|_| PyValueError::new_err("entry does not fit in 64 bits"))).collect()
}

/// Regular continued fraction `[a1, …, a_{2k+1}]` of a rational in (0, 1).
#[pyfunction]
fn regular_continued_fraction(q: &Bound<'_, PyAny>) -> PyResult<Vec<i64>> {
    entries(regular_cf(&rat_arg(q)?).map_err(err)?.entries())
}

/// Hirzebruch–Jung (minus) continued fraction of a rational in (0, 1).
#[pyfunction]
fn hj_continued_fraction(q: &Bound<'_, PyAny>) -> PyResult<Vec<i64>> {
    entries(hj_cf(&rat_arg(q)?).map_err(err)?.entries())
}

/// Runs the invariant checks on `count` random domains.
#[pyfunction]
#[pyo3(signature = (count = 100, seed = 0))]
fn verify_suite<'py>(py: Python<'py>, count: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| tropicaust_core::verify::verify_suite(count, seed));
    to_py(py, &suite_report_to_json(&report))
}

#[pymodule]
fn tropicaust(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TropicaustError", m.py().get_type::<TropicaustError>())?;
    m.add_class::<Domain>()?;
    m.add_class::<Trace>()?;
    m.add_function(wrap_pyfunction!(angle, m)?)?;
    m.add_function(wrap_pyfunction!(regular_continued_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(hj_continued_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
