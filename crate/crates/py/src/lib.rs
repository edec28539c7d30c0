//! Python bindings for the `hyperspec` crate.

use hyperspec::macaulay::leading_coefficients;
use hyperspec::poly::numeric_roots;
use hyperspec::repro::{run_repro, ReproOptions};
use hyperspec::spectral::{self, FamilySpectrum, LambdaMaxOptions};
use hyperspec::traces;
use hyperspec::{CharPolyOptions, DetMethod, Family, UniPoly};
use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn err(e: hyperspec::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Hypergraph", module = "hyperspec_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHypergraph {
    inner: hyperspec::Hypergraph,
}

fn wrap(r: hyperspec::Result<hyperspec::Hypergraph>) -> PyResult<PyHypergraph> {
    r.map(|inner| PyHypergraph { inner }).map_err(err)
}

#[pymethods]
impl PyHypergraph {
    /// Builds a k-uniform hypergraph on vertices 1..=n.
    #[new]
    fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        wrap(hyperspec::Hypergraph::from_edge_list(n, k, edges))
    }

    /// Named family such as `complete:n=4,k=3`.
    #[staticmethod]
    #[pyo3(signature = (spec, k = None))]
    fn family(spec: &str, k: Option<usize>) -> PyResult<Self> {
        wrap(hyperspec::parse_family_with_k(spec, k))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        wrap(hyperspec::Hypergraph::parse_edge_list(text))
    }

    #[staticmethod]
    #[pyo3(signature = (n, k, p = 0.5, seed = 2012))]
    fn random(n: usize, k: usize, p: f64, seed: u64) -> PyResult<Self> {
        wrap(hyperspec::Hypergraph::random(n, k, p, &mut ChaCha8Rng::seed_from_u64(seed)))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v == 0 || v > self.inner.n() {
            return Err(err(hyperspec::Error::VertexOutOfRange { vertex: v, n: self.inner.n() }));
        }
        Ok(self.inner.degree(v))
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        self.inner.components()
    }

    fn canonical_form(&self) -> PyResult<Self> {
        wrap(self.inner.canonical_form())
    }

    fn disjoint_union(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        wrap(hyperspec::Hypergraph::disjoint_union(&self.inner, &other.inner))
    }

    fn cartesian_product(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        wrap(hyperspec::Hypergraph::cartesian_product(&self.inner, &other.inner))
    }

    fn edge_list(&self) -> String {
        self.inner.to_edge_list_string()
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(n={}, k={}, edges={:?})",
            self.inner.n(),
            self.inner.k(),
            self.inner.edges()
        )
    }
}

/// Integer polynomial in `L`.
#[pyclass(name = "Polynomial", module = "hyperspec_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial {
    inner: UniPoly,
}

#[pymethods]
impl PyPolynomial {
    /// From ascending coefficients or from text like `L^3 - 1`.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = value.extract::<String>() {
            return text
                .parse::<UniPoly>()
                .map(|inner| PyPolynomial { inner })
                .map_err(err);
        }
        let coeffs: Vec<BigInt> = value.extract()?;
        Ok(PyPolynomial {
            inner: UniPoly::new(coeffs),
        })
    }

    /// Ascending coefficients.
    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn codegree_coeff(&self, d: usize) -> BigInt {
        self.inner.codegree_coeff(d)
    }

    fn __call__(&self, x: BigInt) -> BigInt {
        self.inner.eval(&x)
    }

    /// Numeric roots as `(value, multiplicity, residual)` triples.
    #[pyo3(signature = (tol = 1e-10))]
    fn roots(&self, tol: f64) -> PyResult<Vec<(Complex64, usize, f64)>> {
        let set = numeric_roots(&self.inner, tol).map_err(err)?;
        Ok(set.roots.into_iter().map(|r| (r.value, r.multiplicity, r.residual)).collect())
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }
}

/// Exact characteristic polynomial.
#[pyfunction]
#[pyo3(signature = (h, method = "auto"))]
fn charpoly(h: PyRef<'_, PyHypergraph>, method: &str) -> PyResult<PyPolynomial> {
    let method: DetMethod = method.parse().map_err(err)?;
    let opts = CharPolyOptions {
        method,
        with_minor: false,
        ..CharPolyOptions::default()
    };
    let res = hyperspec::charpoly_with(&h.inner, &opts).map_err(err)?;
    Ok(PyPolynomial { inner: res.phi })
}

/// Coefficients of codegree 0..=max_codegree by the chosen route:
/// `traces`, `resultant` or `walks`.
#[pyfunction]
#[pyo3(signature = (h, max_codegree = 4, route = "traces"))]
fn coefficients(h: PyRef<'_, PyHypergraph>, max_codegree: usize, route: &str) -> PyResult<Vec<BigInt>> {
    match route {
        "traces" => traces::coefficients_via_traces(&h.inner, max_codegree, None).map_err(err),
        "resultant" => {
            let phi = hyperspec::charpoly(&h.inner).map_err(err)?;
            Ok((0..=max_codegree).map(|d| phi.codegree_coeff(d)).collect())
        }
        "walks" => leading_coefficients(&h.inner, max_codegree).map_err(err),
        other => Err(PyValueError::new_err(format!("unknown route `{other}`"))),
    }
}

#[pyfunction]
fn generalized_trace(h: PyRef<'_, PyHypergraph>, d: usize) -> PyResult<BigInt> {
    traces::generalized_trace(&h.inner, d).map_err(err)
}

/// Largest eigenvalue with its certified enclosure.
#[pyfunction]
#[pyo3(signature = (h, tol = 1e-8, max_iter = 100_000))]
fn lambda_max<'py>(py: Python<'py>, h: PyRef<'_, PyHypergraph>, tol: f64, max_iter: usize) -> PyResult<Bound<'py, PyDict>> {
    let r = spectral::lambda_max(&h.inner, &LambdaMaxOptions { tol, max_iter }).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("lambda", r.lambda)?;
    d.set_item("lower", r.lower)?;
    d.set_item("upper", r.upper)?;
    d.set_item("x", r.x)?;
    d.set_item("iterations", r.iterations)?;
    d.set_item("converged", r.converged)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (h, tol = 1e-8, max_iter = 100_000))]
fn degree_bounds<'py>(py: Python<'py>, h: PyRef<'_, PyHypergraph>, tol: f64, max_iter: usize) -> PyResult<Bound<'py, PyDict>> {
    let b = spectral::degree_bounds_check(&h.inner, &LambdaMaxOptions { tol, max_iter }).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("d", b.average_degree)?;
    d.set_item("lambda_max", b.lambda_max)?;
    d.set_item("Delta", b.max_degree)?;
    d.set_item("pass", b.pass)?;
    Ok(d)
}

#[pyfunction]
fn greedy_color<'py>(py: Python<'py>, h: PyRef<'_, PyHypergraph>) -> PyResult<Bound<'py, PyDict>> {
    let c = spectral::greedy_color(&h.inner);
    let d = PyDict::new(py);
    d.set_item("proper", c.is_proper(&h.inner))?;
    d.set_item("colors", c.colors)?;
    d.set_item("count", c.count)?;
    d.set_item("degeneracy", c.degeneracy)?;
    Ok(d)
}

#[pyfunction]
fn eigenpair_residual(h: PyRef<'_, PyHypergraph>, lam: Complex64, x: Vec<Complex64>) -> PyResult<f64> {
    spectral::eigenpair_residual(&h.inner, lam, &x).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (h, lam, x, tol = 1e-10))]
fn verify_eigenpair(h: PyRef<'_, PyHypergraph>, lam: Complex64, x: Vec<Complex64>, tol: f64) -> PyResult<bool> {
    Ok(spectral::eigenpair_residual(&h.inner, lam, &x).map_err(err)? <= tol)
}

type Pair = (Complex64, Vec<Complex64>, f64);

fn pairs(s: FamilySpectrum) -> Vec<Pair> {
    s.values.into_iter().map(|v| (v.value, v.vector, v.residual)).collect()
}

/// Explicit eigenpairs `(value, vector, residual)` of a named family.
#[pyfunction]
#[pyo3(signature = (spec, k = None))]
fn family_spectrum(spec: &str, k: Option<usize>) -> PyResult<Vec<Pair>> {
    let family = Family::parse(spec, k).map_err(err)?;
    match &family {
        Family::SingleEdge { k } => spectral::cylinder_spectrum(&vec![1; *k]).map(pairs).map_err(err),
        Family::Cylinder { parts } => spectral::cylinder_spectrum(parts).map(pairs).map_err(err),
        Family::Complete { n, k: 3 } => spectral::complete3_spectrum(*n).map(pairs).map_err(err),
        Family::Ultracube { k, d } => {
            let h = family.build().map_err(err)?;
            let p = spectral::ultracube_sporadic(*k, *d).map_err(err)?;
            let r = spectral::eigenpair_residual(&h, p.lambda, &p.x).map_err(err)?;
            Ok(vec![(p.lambda, p.x, r)])
        }
        _ => Err(PyValueError::new_err(format!("no explicit eigenpairs for `{spec}`"))),
    }
}

/// Runs the reproduction table and returns one dict per claim.
#[pyfunction]
#[pyo3(signature = (quick = true, stretch = false, seed = 2012, only = None))]
fn repro<'py>(
    py: Python<'py>,
    quick: bool,
    stretch: bool,
    seed: u64,
    only: Option<String>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let report = py.detach(|| {
        run_repro(&ReproOptions {
            seed,
            quick,
            stretch,
            only,
        })
    });
    report
        .claims
        .into_iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("id", c.id)?;
            d.set_item("expected", c.expected)?;
            d.set_item("computed", c.computed)?;
            d.set_item("matched", c.matched)?;
            d.set_item("gating", c.gating)?;
            d.set_item("runtime_ms", c.runtime_ms)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn hyperspec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_trace, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_max, m)?)?;
    m.add_function(wrap_pyfunction!(degree_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_color, m)?)?;
    m.add_function(wrap_pyfunction!(eigenpair_residual, m)?)?;
    m.add_function(wrap_pyfunction!(verify_eigenpair, m)?)?;
    m.add_function(wrap_pyfunction!(family_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(repro, m)?)?;
    Ok(())
}
