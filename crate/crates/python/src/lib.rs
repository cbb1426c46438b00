//! Python bindings: kernels, spaces, expressions, operators and experiments.

use std::cell::RefCell;

use hausdorff::analysis::{self, NormEstimate};
use hausdorff::kernels::{self, Space};
use hausdorff::operators::{self, LatticeHilbert};
use hausdorff::spaces;
use hausdorff::{Error, HausdorffImage, HoloExpr, IntegralResult, Kernel, QuadSpec, SpaceParams};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

create_exception!(hausdorff_py, PreconditionError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Precondition(_) => PreconditionError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for hausdorff::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// A Hausdorff kernel φ on (0, ∞).
#[pyclass(name = "Kernel", module = "hausdorff_py", frozen)]
struct PyKernel(Kernel);

#[pymethods]
impl PyKernel {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Kernel::from_json(text).py().map(PyKernel)
    }

    #[staticmethod]
    fn cesaro_like(nu: f64) -> PyResult<Self> {
        Kernel::cesaro_like(nu).py().map(PyKernel)
    }

    #[staticmethod]
    fn generalized_cesaro(beta: f64) -> PyResult<Self> {
        Kernel::generalized_cesaro(beta).py().map(PyKernel)
    }

    #[staticmethod]
    fn stieltjes(beta: f64, mu: f64) -> PyResult<Self> {
        Kernel::stieltjes(beta, mu).py().map(PyKernel)
    }

    #[staticmethod]
    fn hardy() -> Self {
        PyKernel(Kernel::Hardy)
    }

    fn truncate(&self, delta: f64) -> PyResult<Self> {
        self.0.truncate(delta).py().map(PyKernel)
    }

    fn tilde(&self) -> Self {
        PyKernel(self.0.tilde())
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn is_nonnegative(&self) -> bool {
        kernels::is_nonnegative(&self.0)
    }

    fn __call__(&self, t: f64) -> PyResult<f64> {
        self.0.eval(t).py()
    }

    fn __repr__(&self) -> String {
        format!("Kernel({})", self.0.to_json())
    }
}

/// A function space with exponent `p` and weight exponent `alpha`.
#[pyclass(name = "Space", module = "hausdorff_py", frozen)]
struct PySpace(SpaceParams);

#[pymethods]
impl PySpace {
    #[new]
    #[pyo3(signature = (name, p = 2.0, alpha = 1.0))]
    fn new(name: &str, p: f64, alpha: f64) -> PyResult<Self> {
        let space: Space = name.parse().py()?;
        SpaceParams::new(space, p, alpha).py().map(PySpace)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.space().to_string()
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.p()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    fn __repr__(&self) -> String {
        format!("Space('{}', p={}, alpha={})", self.0.space(), self.0.p(), self.0.alpha())
    }
}

/// Quadrature tolerances.
#[pyclass(name = "QuadSpec", module = "hausdorff_py", frozen)]
struct PyQuadSpec(QuadSpec);

#[pymethods]
impl PyQuadSpec {
    #[new]
    #[pyo3(signature = (rel_tol = 1e-9, abs_tol = 1e-12, max_subdivisions = 2000))]
    fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> PyResult<Self> {
        let q = QuadSpec {
            max_subdivisions,
            ..QuadSpec::with_tolerances(rel_tol, abs_tol)
        };
        q.validate().py()?;
        Ok(PyQuadSpec(q))
    }

    #[getter]
    fn rel_tol(&self) -> f64 {
        self.0.rel_tol
    }

    #[getter]
    fn abs_tol(&self) -> f64 {
        self.0.abs_tol
    }

    #[getter]
    fn max_subdivisions(&self) -> usize {
        self.0.max_subdivisions
    }
}

/// A holomorphic function on the upper half-plane in expression form.
#[pyclass(name = "HoloExpr", module = "hausdorff_py", frozen)]
struct PyHoloExpr(HoloExpr);

#[pymethods]
impl PyHoloExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        HoloExpr::parse(text).py().map(PyHoloExpr)
    }

    fn __call__(&self, z: Complex64) -> PyResult<Complex64> {
        self.0.eval(z).py()
    }

    /// `ln f(e^w)`.
    fn log_eval(&self, w: Complex64) -> Complex64 {
        self.0.log_eval(w)
    }

    fn derivative(&self) -> Self {
        PyHoloExpr(self.0.differentiate())
    }

    fn dilate(&self, factor: f64) -> PyResult<Self> {
        self.0.dilate(factor).py().map(PyHoloExpr)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HoloExpr('{}')", self.0)
    }
}

fn spec_or_default(spec: Option<PyRef<'_, PyQuadSpec>>) -> QuadSpec {
    spec.map(|s| s.0).unwrap_or_default()
}

fn result_dict<'py>(py: Python<'py>, r: &IntegralResult<f64>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("error_estimate", r.error_estimate)?;
    d.set_item("diverged", r.diverged)?;
    d.set_item("converged", r.converged)?;
    Ok(d)
}

/// Wraps a Python callable as `f64 -> f64`, keeping the first error.
struct RealCallback<'a, 'py> {
    f: &'a Bound<'py, PyAny>,
    error: RefCell<Option<PyErr>>,
}

impl<'a, 'py> RealCallback<'a, 'py> {
    fn new(f: &'a Bound<'py, PyAny>) -> Self {
        RealCallback { f, error: RefCell::new(None) }
    }

    fn call(&self, x: f64) -> f64 {
        if self.error.borrow().is_some() {
            return f64::NAN;
        }
        match self.f.call1((x,)).and_then(|v| v.extract::<f64>()) {
            Ok(v) => v,
            Err(e) => {
                *self.error.borrow_mut() = Some(e);
                f64::NAN
            }
        }
    }

    fn finish<T>(self, value: T) -> PyResult<T> {
        match self.error.into_inner() {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }
}

/// Kernel types accepted in JSON descriptors.
#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    let list = PyList::empty(py);
    for e in kernels::catalog() {
        let d = PyDict::new(py);
        d.set_item("type", e.type_tag)?;
        d.set_item("parameters", e.parameters)?;
        d.set_item("formula", e.formula)?;
        list.append(d)?;
    }
    Ok(list)
}

/// `∫ t^{(1+α)/p-1} |φ(t)| dt`, or `∫ |φ(t)|/t dt` for the Dirichlet space.
#[pyfunction]
#[pyo3(signature = (kernel, space, spec = None))]
fn moment<'py>(
    py: Python<'py>,
    kernel: PyRef<'_, PyKernel>,
    space: PyRef<'_, PySpace>,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<Bound<'py, PyDict>> {
    result_dict(py, &kernels::moment(&kernel.0, &space.0, &spec_or_default(spec)))
}

/// Norm of `f` in `space`; with `kernel`, the norm of its image under ℋ_φ.
#[pyfunction]
#[pyo3(signature = (f, space, kernel = None, spec = None))]
fn norm<'py>(
    py: Python<'py>,
    f: PyRef<'_, PyHoloExpr>,
    space: PyRef<'_, PySpace>,
    kernel: Option<PyRef<'_, PyKernel>>,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<Bound<'py, PyDict>> {
    let q = spec_or_default(spec);
    let r = match kernel {
        Some(k) => {
            let image = HausdorffImage::new(k.0.clone(), f.0.clone(), q);
            spaces::half_plane_norm(&image, &space.0, &spaces::default_y_grid(), &q).py()?
        }
        None => spaces::norm_in(&f.0, &space.0, &q).py()?,
    };
    result_dict(py, &r)
}

/// `(ℋ_φ f)(z)` for `Im z > 0`.
#[pyfunction]
#[pyo3(signature = (kernel, f, z, spec = None))]
fn apply(
    kernel: PyRef<'_, PyKernel>,
    f: PyRef<'_, PyHoloExpr>,
    z: Complex64,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<Complex64> {
    let r = hausdorff::apply_complex(&kernel.0, &f.0, z, &spec_or_default(spec)).py()?;
    if r.diverged {
        return Err(PyValueError::new_err("the operator integral diverges"));
    }
    Ok(r.value)
}

/// `(𝓗_φ g)(x)` for a real function `g` given as a Python callable.
#[pyfunction]
#[pyo3(signature = (kernel, g, xs, spec = None))]
fn apply_real(
    kernel: PyRef<'_, PyKernel>,
    g: &Bound<'_, PyAny>,
    xs: Vec<f64>,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<Vec<f64>> {
    let q = spec_or_default(spec);
    let cb = RealCallback::new(g);
    let out = xs.iter().map(|&x| hausdorff::apply_real(&kernel.0, |t| cb.call(t), x, &[], &q).value).collect();
    cb.finish(out)
}

/// Hilbert transform of a real callable, by principal-value quadrature or,
/// with `lattice=True`, by the odd-lattice sum.
#[pyfunction]
#[pyo3(signature = (g, xs, lattice = false, spec = None))]
fn hilbert_transform(
    g: &Bound<'_, PyAny>,
    xs: Vec<f64>,
    lattice: bool,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<Vec<f64>> {
    let cb = RealCallback::new(g);
    let out = if lattice {
        LatticeHilbert::default().transform(|t| cb.call(t), &xs)
    } else {
        operators::hilbert_transform(|t| cb.call(t), &xs, &spec_or_default(spec))
            .into_iter()
            .map(|r| r.value)
            .collect()
    };
    cb.finish(out)
}

fn estimate_dict<'py>(py: Python<'py>, est: NormEstimate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match est {
        NormEstimate::Bounded(b) => {
            d.set_item("bounded", true)?;
            d.set_item("lower", b.lower)?;
            d.set_item("upper", b.upper)?;
            d.set_item("signed", b.signed)?;
            d.set_item("gap", b.gap)?;
            d.set_item("relative_gap", b.relative_gap())?;
            let rows: Vec<(f64, Option<f64>, f64, f64, f64)> =
                b.rows.iter().map(|r| (r.eps, r.delta, r.quotient, r.tail, r.lower)).collect();
            d.set_item("rows", rows)?;
        }
        NormEstimate::Unbounded(u) => {
            d.set_item("bounded", false)?;
            d.set_item("moment", u.moment.value)?;
            d.set_item("eps", u.eps)?;
            d.set_item("quotients", u.quotients)?;
            d.set_item("growing", u.growing)?;
        }
    }
    Ok(d)
}

/// Two-sided estimate of `‖ℋ_φ‖`. Rows are `(eps, delta, quotient, tail, lower)`.
#[pyfunction]
#[pyo3(signature = (kernel, space, eps_grid = None, delta_grid = None, spec = None))]
fn operator_norm<'py>(
    py: Python<'py>,
    kernel: PyRef<'_, PyKernel>,
    space: PyRef<'_, PySpace>,
    eps_grid: Option<Vec<f64>>,
    delta_grid: Option<Vec<f64>>,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<Bound<'py, PyDict>> {
    let eps = eps_grid.unwrap_or_else(analysis::default_eps_grid);
    let delta = delta_grid.unwrap_or_else(analysis::default_delta_grid);
    let est = analysis::estimate_operator_norm(&kernel.0, &space.0, &eps, &delta, &spec_or_default(spec)).py()?;
    estimate_dict(py, est)
}

/// As `operator_norm`, for nonnegative kernels only.
#[pyfunction]
#[pyo3(signature = (kernel, space, eps_grid = None, delta_grid = None, spec = None))]
fn sharpness_gap<'py>(
    py: Python<'py>,
    kernel: PyRef<'_, PyKernel>,
    space: PyRef<'_, PySpace>,
    eps_grid: Option<Vec<f64>>,
    delta_grid: Option<Vec<f64>>,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<Bound<'py, PyDict>> {
    let eps = eps_grid.unwrap_or_else(analysis::default_eps_grid);
    let delta = delta_grid.unwrap_or_else(analysis::default_delta_grid);
    let est = analysis::sharpness_gap(&kernel.0, &space.0, &eps, &delta, &spec_or_default(spec)).py()?;
    estimate_dict(py, est)
}

/// Sector constants for `Φ_ε(z) = (z + εi)^{-(1+α)/p-ε}`.
#[pyfunction]
fn sign_lemma_constants(py: Python<'_>, p: f64, alpha: f64) -> PyResult<Bound<'_, PyDict>> {
    let c = analysis::sign_lemma_constants(p, alpha).py()?;
    let d = PyDict::new(py);
    d.set_item("part", format!("{:?}", c.part))?;
    d.set_item("sign", c.sign.as_f64())?;
    d.set_item("eps0", c.eps_pa)?;
    d.set_item("c", c.c_pa)?;
    d.set_item("case", c.case.to_string())?;
    Ok(d)
}

/// Number of sampled sector points violating the sign bound.
#[pyfunction]
#[pyo3(signature = (p, alpha, eps_list, samples = 10_000))]
fn verify_sign_lemma(p: f64, alpha: f64, eps_list: Vec<f64>, samples: usize) -> PyResult<usize> {
    Ok(analysis::verify_sign_lemma(p, alpha, &eps_list, samples).py()?.violation_count())
}

/// `A_q` quotient of `|x|^α` on `[a, b]`; infinite when it diverges.
#[pyfunction]
fn muckenhoupt_quotient(alpha: f64, q: f64, a: f64, b: f64) -> PyResult<f64> {
    let w = analysis::muckenhoupt_quotient(alpha, q, a, b).py()?;
    Ok(if w.diverged { f64::INFINITY } else { w.value })
}

/// `‖H(𝓗_φ g) - 𝓗_φ(Hg)‖ / ‖g‖` on `L^p_{|x|^α}`.
#[pyfunction]
#[pyo3(signature = (kernel, g, p = 2.0, alpha = 0.0, spec = None))]
fn commutation_residual(
    kernel: PyRef<'_, PyKernel>,
    g: &Bound<'_, PyAny>,
    p: f64,
    alpha: f64,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<f64> {
    let cb = RealCallback::new(g);
    let r = analysis::commutation_residual(&kernel.0, |x| cb.call(x), p, alpha, &spec_or_default(spec));
    let r = cb.finish(r)?.py()?;
    Ok(r.relative)
}

/// Residuals `(y, ‖(ℋ_φ f)(·+iy) - 𝓗_φ(f*)‖)` along `y_grid`.
#[pyfunction]
#[pyo3(signature = (kernel, f, y_grid, p = 2.0, alpha = 0.0, spec = None))]
fn boundary_residuals(
    kernel: PyRef<'_, PyKernel>,
    f: PyRef<'_, PyHoloExpr>,
    y_grid: Vec<f64>,
    p: f64,
    alpha: f64,
    spec: Option<PyRef<'_, PyQuadSpec>>,
) -> PyResult<Vec<(f64, f64)>> {
    let r = analysis::boundary_compat_residual(&kernel.0, &f.0, p, alpha, &y_grid, &spec_or_default(spec)).py()?;
    Ok(r.residuals)
}

#[pymodule]
fn hausdorff_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyKernel>()?;
    m.add_class::<PySpace>()?;
    m.add_class::<PyQuadSpec>()?;
    m.add_class::<PyHoloExpr>()?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(moment, m)?)?;
    m.add_function(wrap_pyfunction!(norm, m)?)?;
    m.add_function(wrap_pyfunction!(apply, m)?)?;
    m.add_function(wrap_pyfunction!(apply_real, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_transform, m)?)?;
    m.add_function(wrap_pyfunction!(operator_norm, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_gap, m)?)?;
    m.add_function(wrap_pyfunction!(sign_lemma_constants, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sign_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(muckenhoupt_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(commutation_residual, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_residuals, m)?)?;
    Ok(())
}
