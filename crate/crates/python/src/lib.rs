use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

use cosupp_core::dsl::{parse_program, specset_json, step_json, Decl, Item, RunOptions, Session, Symbol};
use cosupp_core::engine::{Engine, EngineOptions};
use cosupp_core::kernel::{Field, Ideal, MonomialOrder, PolyRing};
use cosupp_core::ring::{PrimeId, Ring, Tri};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn word(t: &Tri) -> &'static str {
    match t.value() {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

fn order(name: &str) -> PyResult<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        o => Err(PyValueError::new_err(format!("unknown order '{o}' (lex or grevlex)"))),
    }
}

/// A described ring, written as in the input language, e.g. `Q[x][[t]]`.
#[pyclass(name = "Ring", module = "cosupp", frozen)]
#[derive(Clone)]
struct PyRing {
    inner: Ring,
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        let program = parse_program(&format!("ring R = {expr};")).map_err(value_err)?;
        let Some((Item::Decl(d @ Decl::Ring { .. }), _)) = program.items.first() else {
            return Err(PyValueError::new_err("expected a ring expression"));
        };
        let mut session = Session::new(RunOptions::default());
        session.declare(d).map_err(value_err)?;
        match session.symbol("R") {
            Some(Symbol::Ring(r)) => Ok(PyRing { inner: r.clone() }),
            _ => Err(PyValueError::new_err("ring could not be built")),
        }
    }

    /// A prime of this ring. `witness=(a, b)` with `a*b` in the ideal and
    /// neither factor in it refutes primality and raises `ValueError`.
    #[pyo3(signature = (gens, witness = None, irreducible = false))]
    fn prime(&self, gens: Vec<String>, witness: Option<(String, String)>, irreducible: bool) -> PyResult<PyPrime> {
        let polys = gens.iter().map(|g| self.inner.parse(g)).collect::<Result<Vec<_>, _>>().map_err(value_err)?;
        let witness = match witness {
            Some((a, b)) => Some((self.inner.parse(&a).map_err(value_err)?, self.inner.parse(&b).map_err(value_err)?)),
            None => None,
        };
        let mut p = PrimeId::new(&self.inner, polys).map_err(value_err)?;
        if self.inner.is_computable() {
            p.apply_check(witness, irreducible).map_err(value_err)?;
            p.ensure_usable().map_err(value_err)?;
        }
        Ok(PyPrime { inner: p })
    }

    /// Krull dimension bounds `(lo, hi)`; `hi` is None when unbounded.
    fn dim(&self) -> PyResult<(usize, Option<usize>)> {
        let d = self.inner.attrs().map_err(value_err)?.krull_dim;
        Ok((d.lo, d.hi))
    }

    fn attrs(&self, py: Python<'_>) -> PyResult<PyObject> {
        let a = self.inner.attrs().map_err(value_err)?;
        let v = json!({
            "countable": word(&a.countable),
            "domain": word(&a.is_domain),
            "field": word(&a.is_field),
            "local": word(&a.is_local),
            "c_known": a.c_known.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "c_exact": word(&a.c_exact),
            "krull_dim": [a.krull_dim.lo, a.krull_dim.hi],
            "notes": a.notes,
        });
        to_py(py, &v)
    }

    fn is_computable(&self) -> bool {
        self.inner.is_computable()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring('{}')", self.inner)
    }
}

#[pyclass(name = "Prime", module = "cosupp", frozen)]
#[derive(Clone)]
struct PyPrime {
    inner: PrimeId,
}

#[pymethods]
impl PyPrime {
    #[getter]
    fn ring(&self) -> PyRing {
        PyRing { inner: self.inner.ring.clone() }
    }

    #[getter]
    fn gens(&self) -> Vec<String> {
        self.inner.gens.iter().map(|g| g.to_string()).collect()
    }

    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status.name()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Prime({} in {})", self.inner, self.inner.ring)
    }
}

/// The rule engine. Results are dictionaries in the same shape as the
/// command-line JSON report.
#[pyclass(name = "Engine", module = "cosupp")]
struct PyEngine {
    inner: Engine,
}

#[pymethods]
impl PyEngine {
    #[new]
    #[pyo3(signature = (assume_gruson_jensen = false, max_steps = None))]
    fn new(assume_gruson_jensen: bool, max_steps: Option<u64>) -> Self {
        PyEngine { inner: Engine::new(EngineOptions { assume_gruson_jensen, max_steps, ..EngineOptions::default() }) }
    }

    fn member(&self, py: Python<'_>, prime: &PyPrime) -> PyResult<PyObject> {
        let m = self.inner.member(&prime.inner).map_err(value_err)?;
        let v = json!({
            "verdict": word(&m.verdict),
            "reason": m.verdict.reason(),
            "assumptions": m.assumptions,
            "conjecture": m.uses_conjecture(),
            "frontier": m.frontier.iter().map(|f| json!({"rule_id": f.rule_id, "reason": f.reason})).collect::<Vec<_>>(),
            "trace": m.trace.iter().map(step_json).collect::<Vec<_>>(),
        });
        to_py(py, &v)
    }

    fn describe(&self, py: Python<'_>, ring: &PyRing) -> PyResult<PyObject> {
        let d = self.inner.describe(&ring.inner).map_err(value_err)?;
        let (closed, _) = d.set.is_closed(&ring.inner).map_err(value_err)?;
        let v = json!({
            "set": specset_json(&d.set),
            "exact": word(&d.exact),
            "closed": word(&closed),
            "frontier": d.frontier.iter().map(|f| json!({"rule_id": f.rule_id, "reason": f.reason})).collect::<Vec<_>>(),
            "trace": d.trace.iter().map(step_json).collect::<Vec<_>>(),
        });
        to_py(py, &v)
    }

    /// Replays a derivation returned by `member`; raises on the first
    /// premise that no longer holds.
    fn replay(&self, prime: &PyPrime) -> PyResult<bool> {
        let m = self.inner.member(&prime.inner).map_err(value_err)?;
        self.inner.replay(&m.trace).map_err(PyValueError::new_err)?;
        Ok(true)
    }
}

/// Runs a program and returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (text, trace = false, assume_gruson_jensen = false, order = "grevlex"))]
fn run(text: &str, trace: bool, assume_gruson_jensen: bool, order: &str) -> PyResult<String> {
    let program = parse_program(text).map_err(value_err)?;
    let mut opts = RunOptions { trace, order: self::order(order)?, ..RunOptions::default() };
    opts.engine.assume_gruson_jensen = assume_gruson_jensen;
    Ok(Session::new(opts).run(&program).to_json_string())
}

/// Reduced Gröbner basis over `Q` (characteristic 0) or `F_p`.
#[pyfunction]
#[pyo3(signature = (vars, gens, characteristic = 0, order = "grevlex"))]
fn groebner(vars: Vec<String>, gens: Vec<String>, characteristic: u64, order: &str) -> PyResult<Vec<String>> {
    let field = if characteristic == 0 { Field::Rationals } else { Field::prime(characteristic).map_err(value_err)? };
    let amb = PolyRing::new(field, vars).map_err(value_err)?;
    let polys = gens.iter().map(|g| amb.parse(g)).collect::<Result<Vec<_>, _>>().map_err(value_err)?;
    let ord = self::order(order)?;
    let ideal = Ideal::buchberger(&amb, polys, &ord).map_err(value_err)?;
    Ok(ideal.groebner(&ord).map_err(value_err)?.iter().map(|p| p.to_string()).collect())
}

#[pyfunction]
#[pyo3(signature = (vars, f, gens, characteristic = 0))]
fn ideal_member(vars: Vec<String>, f: &str, gens: Vec<String>, characteristic: u64) -> PyResult<bool> {
    let field = if characteristic == 0 { Field::Rationals } else { Field::prime(characteristic).map_err(value_err)? };
    let amb = PolyRing::new(field, vars).map_err(value_err)?;
    let polys = gens.iter().map(|g| amb.parse(g)).collect::<Result<Vec<_>, _>>().map_err(value_err)?;
    let ideal = Ideal::new(&amb, polys).map_err(value_err)?;
    ideal.contains(&amb.parse(f).map_err(value_err)?).map_err(value_err)
}

#[pymodule]
fn cosupp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyPrime>()?;
    m.add_class::<PyEngine>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(groebner, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_member, m)?)?;
    Ok(())
}
