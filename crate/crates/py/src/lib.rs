//! Python bindings for the quantum SU(2) verification kernel.
//!
//! Exposes exact elements and their coproducts, the Haar state, the q = -1
//! matrix-function model, fiber norm bounds, and the degree pairings, so
//! the headline computations can be driven from Python:
//!
//! ```python
//! import suq2py
//! a = suq2py.Element.alpha("-1")
//! g = suq2py.Element.gamma("-1")
//! assert (a.star() * a + g.star() * g - suq2py.Element.unit("-1")).term_count() == 0
//! assert suq2py.haar("-1", 0, 2, 2) == "1/3"
//! ```

// the #[pymethods] expansion inserts identity error conversions
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use suq2_core::algebra::{Element, Monomial};
use suq2_core::bundle::{self, QGrid};
use suq2_core::geom::{phi_eval, SpherePoint};
use suq2_core::haar::{haar_monomial, invariance_residuals, HaarState};
use suq2_core::hopf::{self, TensorElement};
use suq2_core::ktheory::{degree3, phi_u_degree, SphereUnitary};
use suq2_core::scalar::{parse_rat, GaussianRational, QParam};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An exact element in the canonical ordered basis.
#[pyclass(name = "Element")]
#[derive(Clone)]
struct PyElement {
    inner: Element,
}

fn wrap(inner: Element) -> PyElement {
    PyElement { inner }
}

#[pymethods]
impl PyElement {
    /// The zero element at the given exact rational parameter.
    #[new]
    #[pyo3(signature = (q = "-1"))]
    fn new(q: &str) -> PyResult<Self> {
        Ok(wrap(Element::zero(&QParam::parse(q).map_err(err)?)))
    }

    #[staticmethod]
    fn unit(q: &str) -> PyResult<Self> {
        Ok(wrap(Element::unit(&QParam::parse(q).map_err(err)?)))
    }

    #[staticmethod]
    fn alpha(q: &str) -> PyResult<Self> {
        Ok(wrap(Element::alpha(&QParam::parse(q).map_err(err)?)))
    }

    #[staticmethod]
    fn alpha_star(q: &str) -> PyResult<Self> {
        Ok(wrap(Element::alpha_star(&QParam::parse(q).map_err(err)?)))
    }

    #[staticmethod]
    fn gamma(q: &str) -> PyResult<Self> {
        Ok(wrap(Element::gamma(&QParam::parse(q).map_err(err)?)))
    }

    #[staticmethod]
    fn gamma_star(q: &str) -> PyResult<Self> {
        Ok(wrap(Element::gamma_star(&QParam::parse(q).map_err(err)?)))
    }

    /// The basis word eta(k, l, m) with coefficient 1.
    #[staticmethod]
    fn monomial(q: &str, k: i64, l: u32, m: u32) -> PyResult<Self> {
        Ok(wrap(Element::monomial(&QParam::parse(q).map_err(err)?, k, l, m)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(wrap(Element::from_json(text).map_err(err)?))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Add `(re + im i) * eta(k, l, m)`; exact rational strings.
    #[pyo3(signature = (k, l, m, re = "1", im = "0"))]
    fn add_term(&mut self, k: i64, l: u32, m: u32, re: &str, im: &str) -> PyResult<()> {
        let c = GaussianRational::new(parse_rat(re).map_err(err)?, parse_rat(im).map_err(err)?);
        self.inner.add_term(Monomial::new(k, l, m), c);
        Ok(())
    }

    #[getter]
    fn q(&self) -> String {
        self.inner.q().to_string()
    }

    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Adjoint.
    fn star(&self) -> PyElement {
        wrap(self.inner.star())
    }

    /// Exact Haar value as a Gaussian-rational string.
    fn haar(&self) -> PyResult<String> {
        let h = HaarState::new(self.inner.q());
        Ok(h.eval(&self.inner).map_err(err)?.to_string())
    }

    /// Term counts of the right and left invariance residuals (0, 0) when
    /// the Haar state is bi-invariant on this element.
    fn invariance_residual_terms(&self) -> PyResult<(usize, usize)> {
        let (right, left) = invariance_residuals(&self.inner).map_err(err)?;
        Ok((right.term_count(), left.term_count()))
    }

    /// Coproduct as a two-leg tensor.
    fn coproduct(&self) -> PyTensorElement {
        PyTensorElement { inner: hopf::coproduct(&self.inner) }
    }

    /// The 2x2 matrix model at q = -1, evaluated at the point
    /// `(cos theta e^{i phi1}, sin theta e^{i phi2})`.
    fn eval(&self, theta: f64, phi1: f64, phi2: f64) -> PyResult<Vec<Vec<Complex64>>> {
        let p = SpherePoint::euler(theta, phi1, phi2);
        let m = phi_eval(&self.inner, &p).map_err(err)?;
        Ok((0..m.rows()).map(|i| (0..m.cols()).map(|j| m.at(i, j)).collect()).collect())
    }

    /// Certified fiber norm lower bound from the truncated weighted-shift
    /// representation (0 < |q| < 1).
    #[pyo3(signature = (n = 20, phases = 16))]
    fn norm_lower_bound(&self, n: usize, phases: usize) -> PyResult<f64> {
        bundle::norm_lower_bound(&self.inner, n, phases).map_err(err)
    }

    /// Norm lower bound from the matrix model at q = -1.
    #[pyo3(signature = (order = 8))]
    fn model_norm_bound(&self, order: usize) -> PyResult<f64> {
        bundle::model_norm_bound_neg1(&self.inner, order).map_err(err)
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(wrap(self.inner.add(&other.inner).map_err(err)?))
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(wrap(self.inner.sub(&other.inner).map_err(err)?))
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(wrap(self.inner.normal_mul(&other.inner).map_err(err)?))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.inner)
    }
}

/// A two-leg tensor over the canonical basis.
#[pyclass(name = "TensorElement")]
#[derive(Clone)]
struct PyTensorElement {
    inner: TensorElement,
}

#[pymethods]
impl PyTensorElement {
    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyTensorElement { inner: TensorElement::from_json(text).map_err(err)? })
    }

    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Leg-wise adjoint.
    fn star_each_leg(&self) -> PyTensorElement {
        PyTensorElement { inner: self.inner.star_each_leg() }
    }

    fn __mul__(&self, other: &PyTensorElement) -> PyResult<PyTensorElement> {
        Ok(PyTensorElement { inner: self.inner.tensor_mul(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &PyTensorElement) -> PyResult<PyTensorElement> {
        Ok(PyTensorElement { inner: self.inner.sub(&other.inner).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TensorElement({})", self.inner)
    }
}

/// Exact Haar value of the basis word eta(k, l, m) at exact rational q.
#[pyfunction]
fn haar(q: &str, k: i64, l: u32, m: u32) -> PyResult<String> {
    Ok(haar_monomial(&QParam::parse(q).map_err(err)?, k, l, m).to_string())
}

/// Exact Haar values of one word along a grid of exact rationals in [-1, 0).
#[pyfunction]
fn haar_profile(k: i64, l: u32, m: u32, grid: Vec<String>) -> PyResult<Vec<String>> {
    let labels: Vec<&str> = grid.iter().map(String::as_str).collect();
    let grid = QGrid::parse(&labels).map_err(err)?;
    Ok(bundle::haar_profile(k, l, m, &grid).iter().map(|r| r.to_string()).collect())
}

/// Degree of the embedded fundamental unitary (expected: 2).
#[pyfunction]
#[pyo3(name = "phi_u_degree", signature = (resolution = 24))]
fn phi_u_degree_py(resolution: usize) -> PyResult<i64> {
    phi_u_degree(resolution).map_err(err)
}

/// Degree of a named 2x2 sphere unitary: "fundamental", "x", or "y"
/// (expected: 1 each).
#[pyfunction]
#[pyo3(signature = (name, resolution = 24))]
fn witness_degree(name: &str, resolution: usize) -> PyResult<i64> {
    let u = match name {
        "fundamental" => SphereUnitary::fundamental(),
        "x" => SphereUnitary::witness_x(),
        "y" => SphereUnitary::witness_y(),
        other => return Err(err(format!("unknown witness {other:?}"))),
    };
    degree3(&u, resolution).map_err(err)
}

#[pymodule]
fn suq2py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyTensorElement>()?;
    m.add_function(wrap_pyfunction!(haar, m)?)?;
    m.add_function(wrap_pyfunction!(haar_profile, m)?)?;
    m.add_function(wrap_pyfunction!(phi_u_degree_py, m)?)?;
    m.add_function(wrap_pyfunction!(witness_degree, m)?)?;
    Ok(())
}
