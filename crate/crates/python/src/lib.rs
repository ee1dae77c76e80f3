//! Python bindings. Vertices are 0-indexed throughout.

use std::sync::Arc;

use engine::generators;
use engine::oracle;
use engine::recognition::DEFAULT_PATH_BUDGET;
use engine::sat::{self, Cnf3, Lit};
use engine::{Error, Mode, VertexSet};
use pyo3::create_exception;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

create_exception!(domdelay, DomDelayError, PyValueError, "Base class for errors raised by domdelay.");
create_exception!(domdelay, NotInClassError, DomDelayError, "Input is outside the required graph class.");
create_exception!(domdelay, DisconnectedError, DomDelayError, "Enumeration needs a connected graph.");
create_exception!(domdelay, SizeLimitError, DomDelayError, "Exhaustive search refused a large input.");

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::NotInClass(_) => NotInClassError::new_err(msg),
        Error::Disconnected { .. } => DisconnectedError::new_err(msg),
        Error::SizeLimit(_) | Error::BudgetExceeded { .. } => SizeLimitError::new_err(msg),
        Error::Io(_) => PyIOError::new_err(msg),
        _ => DomDelayError::new_err(msg),
    }
}

fn mode(s: &str) -> PyResult<Mode> {
    s.parse().map_err(to_py)
}

fn vset(g: &engine::Graph, vs: Vec<usize>) -> PyResult<VertexSet> {
    if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
        return Err(DomDelayError::new_err(format!("vertex {v} out of range (n = {})", g.n())));
    }
    Ok(vs.into_iter().collect())
}

/// Simple undirected graph.
#[pyclass(frozen, module = "domdelay", skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: engine::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Graph { inner: engine::Graph::from_edges(n, edges).map_err(to_py)? })
    }

    /// Reads DIMACS `p edge` text or a plain edge list.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Graph { inner: engine::parse_graph(text).map_err(to_py)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(DomDelayError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn to_dimacs(&self) -> String {
        self.inner.to_dimacs()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Irredundant and redundant vertices with the irredundant components.
#[pyclass(frozen, module = "domdelay", get_all)]
struct Classification {
    ir: Vec<usize>,
    rn: Vec<usize>,
    components: Vec<Vec<usize>>,
}

#[pymethods]
impl Classification {
    fn __repr__(&self) -> String {
        format!("Classification(ir={:?}, rn={:?}, components={:?})", self.ir, self.rn, self.components)
    }
}

#[pyfunction]
fn classify(g: &Graph) -> Classification {
    let c = engine::classify(&g.inner);
    Classification {
        ir: c.ir.into_vec(),
        rn: c.rn.into_vec(),
        components: c.components.into_iter().map(VertexSet::into_vec).collect(),
    }
}

/// Lazily enumerated sets; each item is a sorted list of vertices.
#[pyclass(module = "domdelay")]
struct SetIterator {
    inner: Box<dyn Iterator<Item = VertexSet> + Send + Sync>,
}

#[pymethods]
impl SetIterator {
    fn __iter__(slf: PyRef<'_, Self>) -> PyRef<'_, Self> {
        slf
    }

    fn __next__(&mut self) -> Option<Vec<usize>> {
        self.inner.next().map(VertexSet::into_vec)
    }
}

fn prepare(g: &Graph, mode_name: &str, verify: bool) -> PyResult<Arc<engine::Prepared>> {
    let m = mode(mode_name)?;
    if verify {
        engine::verify_class(&g.inner, m, DEFAULT_PATH_BUDGET).map_err(to_py)?;
    }
    engine::Prepared::new(g.inner.clone(), m).map_err(to_py)
}

/// Minimal dominating sets of a connected P7-free (mode "p7") or
/// P8-free (mode "p8") chordal graph.
#[pyfunction]
#[pyo3(signature = (g, mode = "p8", verify_class = false))]
fn enumerate_dom(g: &Graph, mode: &str, verify_class: bool) -> PyResult<SetIterator> {
    let prep = prepare(g, mode, verify_class)?;
    Ok(SetIterator { inner: Box::new(engine::DomStream::new(prep)) })
}

/// Redundant parts of minimal dominating sets.
#[pyfunction]
#[pyo3(signature = (g, mode = "p8", verify_class = false))]
fn enumerate_rn(g: &Graph, mode: &str, verify_class: bool) -> PyResult<SetIterator> {
    let prep = prepare(g, mode, verify_class)?;
    Ok(SetIterator { inner: Box::new(engine::enumerate_rn(&prep)) })
}

/// Irredundant extensions of a redundant part `a`.
#[pyfunction]
#[pyo3(signature = (g, a, mode = "p8"))]
fn enumerate_dir(g: &Graph, a: Vec<usize>, mode: &str) -> PyResult<SetIterator> {
    let prep = prepare(g, mode, false)?;
    let a = vset(&g.inner, a)?;
    Ok(SetIterator { inner: Box::new(engine::enumerate_dir(&prep, &a).map_err(to_py)?) })
}

#[pyfunction]
fn is_minimal_dominating(g: &Graph, d: Vec<usize>) -> PyResult<bool> {
    let d = vset(&g.inner, d)?;
    Ok(engine::is_minimal_dominating(&g.inner, &engine::classify(&g.inner), &d))
}

/// Raises NotInClassError with a witness when the class check fails.
#[pyfunction]
#[pyo3(signature = (g, mode = "p8"))]
fn verify_class(g: &Graph, mode: &str) -> PyResult<()> {
    engine::verify_class(&g.inner, self::mode(mode)?, DEFAULT_PATH_BUDGET).map_err(to_py)
}

/// Every minimal dominating set by exhaustive search.
#[pyfunction]
fn brute_dom(g: &Graph) -> PyResult<Vec<Vec<usize>>> {
    Ok(oracle::brute_dom(&g.inner).map_err(to_py)?.into_iter().map(VertexSet::into_vec).collect())
}

#[pyfunction]
#[pyo3(signature = (n, k, seed = 1))]
fn gen_pk_free_chordal(n: usize, k: usize, seed: u64) -> PyResult<Graph> {
    Ok(Graph { inner: generators::gen_pk_free_chordal(n, k, seed).map_err(to_py)? })
}

#[pyfunction]
#[pyo3(signature = (n, density = 0.5, seed = 1))]
fn gen_chordal(n: usize, density: f64, seed: u64) -> PyResult<Graph> {
    Ok(Graph { inner: generators::gen_chordal(n, density, seed).map_err(to_py)? })
}

/// Connected graphs up to isomorphism with at most `n_max` vertices.
#[pyfunction]
fn exhaustive_corpus(n_max: usize) -> PyResult<Vec<Graph>> {
    Ok(generators::exhaustive_corpus(n_max).map_err(to_py)?.into_iter().map(|inner| Graph { inner }).collect())
}

/// 3-CNF given as DIMACS-style literal triples. Returns the gadget graph,
/// its redundant vertices and the role map as JSON lines.
#[pyfunction]
fn build_reduction(var_count: usize, clauses: Vec<[i64; 3]>) -> PyResult<(Graph, Vec<usize>, String)> {
    let mut lits = Vec::with_capacity(clauses.len());
    for c in clauses {
        let mut out = [Lit::pos(0); 3];
        for (slot, &x) in out.iter_mut().zip(&c) {
            if x == 0 || x.unsigned_abs() as usize > var_count {
                return Err(DomDelayError::new_err(format!("literal {x} out of range")));
            }
            let var = x.unsigned_abs() as usize - 1;
            *slot = if x < 0 { Lit::neg(var) } else { Lit::pos(var) };
        }
        lits.push(out);
    }
    let phi = Cnf3::new(var_count, lits).map_err(to_py)?;
    let (g, a, map) = sat::build_reduction(&phi);
    Ok((Graph { inner: g }, a.into_vec(), map.to_json_lines()))
}

/// Whether the redundant set `a` extends to a minimal dominating set.
#[pyfunction]
#[pyo3(signature = (g, a, budget = 1 << 32))]
fn drn_member(g: &Graph, a: Vec<usize>, budget: u64) -> PyResult<Option<Vec<usize>>> {
    let a = vset(&g.inner, a)?;
    Ok(oracle::brute_drn_member(&g.inner, &a, budget).map_err(to_py)?.map(VertexSet::into_vec))
}

/// Timing of the first `limit` outputs, in nanoseconds.
#[pyfunction(name = "bench")]
#[pyo3(signature = (g, mode = "p7", limit = Some(10_000)))]
fn bench_delays(g: &Graph, mode: &str, limit: Option<usize>) -> PyResult<(u128, Vec<(usize, u128)>)> {
    let r = engine::bench::bench(g.inner.clone(), self::mode(mode)?, limit).map_err(to_py)?;
    Ok((r.preprocessing.as_nanos(), r.samples.iter().map(|s| (s.size, s.delay.as_nanos())).collect()))
}

#[pymodule]
fn domdelay(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DomDelayError", py.get_type::<DomDelayError>())?;
    m.add("NotInClassError", py.get_type::<NotInClassError>())?;
    m.add("DisconnectedError", py.get_type::<DisconnectedError>())?;
    m.add("SizeLimitError", py.get_type::<SizeLimitError>())?;
    m.add_class::<Graph>()?;
    m.add_class::<Classification>()?;
    m.add_class::<SetIterator>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_dom, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_rn, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_dir, m)?)?;
    m.add_function(wrap_pyfunction!(is_minimal_dominating, m)?)?;
    m.add_function(wrap_pyfunction!(verify_class, m)?)?;
    m.add_function(wrap_pyfunction!(brute_dom, m)?)?;
    m.add_function(wrap_pyfunction!(gen_pk_free_chordal, m)?)?;
    m.add_function(wrap_pyfunction!(gen_chordal, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(build_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(drn_member, m)?)?;
    m.add_function(wrap_pyfunction!(bench_delays, m)?)?;
    Ok(())
}
