//! Python bindings. Structured results (reports, solutions) come back as
//! plain dicts/lists built from their JSON form.

use std::collections::BTreeMap;
use std::path::PathBuf;

use likert_efa::cli::{self, PipelineConfig};
use likert_efa::efa::{self, RefineConfig};
use likert_efa::ib::{self, JointDistribution, Partition};
use likert_efa::numerics::{self, Matrix};
use likert_efa::synth::{self as synth_mod, PlantedModel};
use likert_efa::{agreement, reliability, Error, LikertScale};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyInt, PyList, PyString};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

fn err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_py_any(py),
            (None, Some(u)) => u.into_py_any(py),
            _ => n.as_f64().unwrap_or(f64::NAN).into_py_any(py),
        },
        Value::String(s) => s.into_py_any(py),
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_py_any(py)
        }
    }
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    if obj.is_none() {
        return Ok(Value::Null);
    }
    if obj.is_instance_of::<PyBool>() {
        return Ok(Value::Bool(obj.extract()?));
    }
    if obj.is_instance_of::<PyInt>() {
        return Ok(Value::from(obj.extract::<i64>()?));
    }
    if obj.is_instance_of::<PyFloat>() {
        return Ok(Value::from(obj.extract::<f64>()?));
    }
    if obj.is_instance_of::<PyString>() {
        return Ok(Value::String(obj.extract()?));
    }
    if let Ok(d) = obj.cast::<PyDict>() {
        let mut map = serde_json::Map::new();
        for (k, v) in d.iter() {
            map.insert(k.extract::<String>()?, from_py(&v)?);
        }
        return Ok(Value::Object(map));
    }
    if let Ok(items) = obj.extract::<Vec<Bound<'_, PyAny>>>() {
        return Ok(Value::Array(items.iter().map(from_py).collect::<PyResult<_>>()?));
    }
    Err(PyValueError::new_err(format!("unsupported value {obj}")))
}

fn serialize<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn matrix(rows: Vec<Vec<f64>>) -> PyResult<Matrix> {
    Matrix::from_rows(&rows).map_err(err)
}

/// Survey responses: respondents × items, integer Likert values.
#[pyclass(name = "ResponseMatrix", module = "likert_efa_py", from_py_object)]
#[derive(Clone)]
struct PyResponses {
    inner: likert_efa::ResponseMatrix,
}

#[pymethods]
impl PyResponses {
    #[new]
    #[pyo3(signature = (items, rows, likert_min = 1, likert_max = 5))]
    fn new(items: Vec<String>, rows: Vec<Vec<i64>>, likert_min: i64, likert_max: i64) -> PyResult<Self> {
        let scale = LikertScale::new(likert_min, likert_max).map_err(err)?;
        Ok(Self {
            inner: likert_efa::ResponseMatrix::new(items, rows, scale).map_err(err)?,
        })
    }

    #[getter]
    fn items(&self) -> Vec<String> {
        self.inner.items().to_vec()
    }

    #[getter]
    fn n_respondents(&self) -> usize {
        self.inner.n_respondents()
    }

    #[getter]
    fn n_items(&self) -> usize {
        self.inner.n_items()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.inner.n_respondents()).map(|r| self.inner.row(r).to_vec()).collect()
    }

    fn without_item(&self, item: &str) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.without_item(item).map_err(err)?,
        })
    }

    fn to_csv(&self, path: PathBuf) -> PyResult<()> {
        cli::save_csv(&self.inner, &path).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.n_respondents()
    }

    fn __repr__(&self) -> String {
        format!(
            "ResponseMatrix({} respondents x {} items)",
            self.inner.n_respondents(),
            self.inner.n_items()
        )
    }
}

/// Returns (responses, rows_dropped).
#[pyfunction]
#[pyo3(signature = (path, likert_min = 1, likert_max = 5))]
fn load_csv(path: PathBuf, likert_min: i64, likert_max: i64) -> PyResult<(PyResponses, usize)> {
    let scale = LikertScale::new(likert_min, likert_max).map_err(err)?;
    let s = cli::load_csv(&path, scale).map_err(err)?;
    Ok((PyResponses { inner: s.responses }, s.rows_dropped))
}

#[pyfunction]
fn correlation_matrix(responses: &PyResponses) -> PyResult<Vec<Vec<f64>>> {
    Ok(numerics::correlation_matrix(&responses.inner).map_err(err)?.to_rows())
}

/// Returns (eigenvalues descending, eigenvectors as columns).
#[pyfunction]
fn eig_sym(m: Vec<Vec<f64>>) -> PyResult<(Vec<f64>, Vec<Vec<f64>>)> {
    let e = numerics::eig_sym(&matrix(m)?).map_err(err)?;
    Ok((e.eigenvalues, e.eigenvectors.to_rows()))
}

#[pyfunction]
#[pyo3(signature = (responses, items = None))]
fn cronbach_alpha(responses: &PyResponses, items: Option<Vec<String>>) -> PyResult<f64> {
    let r = &responses.inner;
    let idx: Vec<usize> = match items {
        None => (0..r.n_items()).collect(),
        Some(ids) => ids
            .iter()
            .map(|id| r.item_index(id).ok_or_else(|| err(Error::UnknownItem(id.clone()))))
            .collect::<PyResult<_>>()?,
    };
    reliability::cronbach_alpha(r, &idx).map_err(err)
}

#[pyfunction]
fn kmo(corr: Vec<Vec<f64>>) -> PyResult<f64> {
    reliability::kmo(&matrix(corr)?).map_err(err)
}

/// Returns (chi2, df).
#[pyfunction]
fn bartlett(corr: Vec<Vec<f64>>, n: usize) -> PyResult<(f64, usize)> {
    let b = reliability::bartlett_sphericity(&matrix(corr)?, n).map_err(err)?;
    Ok((b.chi2, b.df))
}

#[pyfunction]
#[pyo3(signature = (responses, alpha_threshold = 0.7, kmo_threshold = 0.8))]
fn assess(py: Python<'_>, responses: &PyResponses, alpha_threshold: f64, kmo_threshold: f64) -> PyResult<Py<PyAny>> {
    let r = reliability::assess(&responses.inner, alpha_threshold, kmo_threshold).map_err(err)?;
    serialize(py, &r)
}

/// Iterative EFA refinement with default thresholds; `config` may override
/// any pipeline setting (retention, rotation, thresholds, item_floor).
#[pyfunction]
#[pyo3(signature = (responses, config = None))]
fn refine(py: Python<'_>, responses: &PyResponses, config: Option<&Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
    let rc: RefineConfig = pipeline_config(config)?.refine_config();
    let out = efa::refine(&responses.inner, &rc).map_err(err)?;
    serialize(py, &out)
}

fn joint_from(weights: Vec<Vec<f64>>) -> PyResult<JointDistribution> {
    let m = matrix(weights)?;
    let xs = (0..m.rows()).map(|i| format!("x{i}")).collect();
    let ys = (0..m.cols()).map(|j| format!("y{j}")).collect();
    JointDistribution::from_weights(xs, ys, m).map_err(err)
}

/// IB on a non-negative weight table (rows = X, columns = Y).
#[pyfunction]
#[pyo3(signature = (weights, t_count, beta, seed = 0, restarts = 10))]
fn ib_solve(
    py: Python<'_>,
    weights: Vec<Vec<f64>>,
    t_count: usize,
    beta: f64,
    seed: u64,
    restarts: usize,
) -> PyResult<Py<PyAny>> {
    let j = joint_from(weights)?;
    let s = ib::ib_solve(&j, t_count, beta, seed, restarts).map_err(err)?;
    serialize(py, &s)
}

#[pyfunction]
fn mutual_information(joint: Vec<Vec<f64>>) -> PyResult<f64> {
    Ok(ib::mutual_information(&matrix(joint)?))
}

/// IB clustering of survey items over a β schedule; returns the selected
/// β and the item → cluster map.
#[pyfunction]
#[pyo3(signature = (responses, t_count, betas = None, seed = 0, restarts = 10))]
fn cluster_items(
    responses: &PyResponses,
    t_count: usize,
    betas: Option<Vec<f64>>,
    seed: u64,
    restarts: usize,
) -> PyResult<(f64, BTreeMap<String, usize>)> {
    let j = ib::build_joint(&responses.inner).map_err(err)?;
    let betas = betas.unwrap_or_else(|| cli::DEFAULT_BETAS.to_vec());
    let sweep = ib::beta_sweep(&j, t_count, &betas, seed, restarts).map_err(err)?;
    let i = ib::select_beta(&sweep);
    Ok((sweep[i].0, ib::hard_partition(&sweep[i].1).groups))
}

fn partition(groups: BTreeMap<String, usize>) -> PyResult<Partition> {
    let count = groups.values().max().map_or(0, |m| m + 1);
    Partition::new(groups, count).map_err(err)
}

/// Compare two item → group maps.
#[pyfunction]
fn compare(py: Python<'_>, factors: BTreeMap<String, usize>, clusters: BTreeMap<String, usize>) -> PyResult<Py<PyAny>> {
    let r = agreement::compare(&partition(factors)?, &partition(clusters)?).map_err(err)?;
    serialize(py, &r)
}

/// Planted-factor synthetic responses; `fixture` is "balanced",
/// "refinement" or "nested".
#[pyfunction]
#[pyo3(signature = (respondents = 202, items = 17, factors = 3, loading = 0.7, seed = 0, noise_sd = 0.0, fixture = "balanced"))]
fn synth(
    respondents: usize,
    items: usize,
    factors: usize,
    loading: f64,
    seed: u64,
    noise_sd: f64,
    fixture: &str,
) -> PyResult<PyResponses> {
    let model = match fixture {
        "balanced" => PlantedModel::balanced(items, factors, loading, seed),
        "refinement" => synth_mod::refinement_fixture(seed),
        "nested" => synth_mod::nested_groups_fixture(seed),
        other => return Err(PyValueError::new_err(format!("unknown fixture '{other}'"))),
    };
    let inner = model.with_noise(noise_sd).generate(respondents).map_err(err)?;
    Ok(PyResponses { inner })
}

fn pipeline_config(config: Option<&Bound<'_, PyAny>>) -> PyResult<PipelineConfig> {
    let c: PipelineConfig = match config {
        None => PipelineConfig::default(),
        Some(obj) => serde_json::from_value(from_py(obj)?).map_err(|e| PyValueError::new_err(e.to_string()))?,
    };
    c.validate().map_err(err)?;
    Ok(c)
}

/// Result of the full analysis pipeline.
#[pyclass(name = "PipelineReport", module = "likert_efa_py")]
struct PyReport {
    inner: cli::PipelineReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn retained(&self) -> usize {
        self.inner.retained()
    }

    #[getter]
    fn final_items(&self) -> Vec<String> {
        self.inner.final_items.clone()
    }

    #[getter]
    fn removed_items(&self) -> Vec<String> {
        let refine = self.inner.refinement.removals.iter().map(|r| r.item.clone());
        let reconcile = self.inner.reconciliation.steps.iter().flat_map(|s| {
            std::iter::once(s.removed.clone()).chain(s.refine_removals.iter().map(|r| r.item.clone()))
        });
        refine.chain(reconcile).collect()
    }

    #[getter]
    fn exact_match(&self) -> Option<bool> {
        self.inner.agreement.as_ref().map(|a| a.exact_match)
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings.clone()
    }

    fn text(&self) -> String {
        cli::render_text(&self.inner)
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        serialize(py, &self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (responses, config = None))]
fn run_pipeline(responses: &PyResponses, config: Option<&Bound<'_, PyAny>>) -> PyResult<PyReport> {
    let c = pipeline_config(config)?;
    Ok(PyReport {
        inner: cli::run_pipeline(&responses.inner, &c).map_err(err)?,
    })
}

#[pymodule]
fn likert_efa_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyResponses>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(load_csv, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(eig_sym, m)?)?;
    m.add_function(wrap_pyfunction!(cronbach_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(kmo, m)?)?;
    m.add_function(wrap_pyfunction!(bartlett, m)?)?;
    m.add_function(wrap_pyfunction!(assess, m)?)?;
    m.add_function(wrap_pyfunction!(refine, m)?)?;
    m.add_function(wrap_pyfunction!(ib_solve, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(cluster_items, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(synth, m)?)?;
    m.add_function(wrap_pyfunction!(run_pipeline, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
