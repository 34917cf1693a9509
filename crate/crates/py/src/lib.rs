//! Python bindings for `tqu-core`.
//!
//! Vectors cross the boundary as 3-tuples of floats. Unphysical input raises
//! `ValueError`, file problems raise `OSError`.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use tqu_core::boundary::{self, FamilyKind};
use tqu_core::polsim;
use tqu_core::qmath::{self, Vec3};
use tqu_core::relations;

fn py_err(e: tqu_core::Error) -> PyErr {
    if e.is_io() {
        PyOSError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

#[pyclass(name = "BlochVector", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyBlochVector(qmath::BlochVector);

#[pymethods]
impl PyBlochVector {
    #[new]
    fn new(x: f64, y: f64, z: f64) -> PyResult<Self> {
        qmath::BlochVector::new(x, y, z).map(Self).map_err(py_err)
    }

    #[getter]
    fn components(&self) -> Vec3 {
        self.0.components()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn is_pure(&self) -> bool {
        self.0.is_pure()
    }

    fn eigenvalues(&self) -> [f64; 2] {
        self.0.eigenvalues()
    }

    /// Density matrix as nested lists of complex numbers.
    fn density_matrix(&self) -> [[(f64, f64); 2]; 2] {
        self.0.density_matrix().map(|row| row.map(|z| (z.re, z.im)))
    }

    fn __repr__(&self) -> String {
        let [x, y, z] = self.0.components();
        format!("BlochVector({x}, {y}, {z})")
    }
}

#[pyclass(name = "PauliAxis", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyPauliAxis(qmath::PauliAxis);

#[pymethods]
impl PyPauliAxis {
    #[new]
    fn new(x: f64, y: f64, z: f64) -> PyResult<Self> {
        qmath::PauliAxis::new(x, y, z).map(Self).map_err(py_err)
    }

    /// Axis in the y–z plane with the given overlap with +z.
    #[staticmethod]
    fn tilted_from_z(overlap: f64) -> PyResult<Self> {
        qmath::PauliAxis::tilted_from_z(overlap).map(Self).map_err(py_err)
    }

    #[getter]
    fn components(&self) -> Vec3 {
        self.0.components()
    }

    fn __repr__(&self) -> String {
        let [x, y, z] = self.0.components();
        format!("PauliAxis({x}, {y}, {z})")
    }
}

#[pyclass(name = "ObservablePair", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyObservablePair(relations::ObservablePair);

#[pymethods]
impl PyObservablePair {
    #[new]
    fn new(a: &PyPauliAxis, b: &PyPauliAxis) -> Self {
        Self(relations::ObservablePair::new(a.0, b.0))
    }

    /// `a = +z`, `b` in the y–z plane with `a·b = overlap`.
    #[staticmethod]
    fn with_overlap(overlap: f64) -> PyResult<Self> {
        relations::ObservablePair::with_overlap(overlap).map(Self).map_err(py_err)
    }

    #[getter]
    fn a(&self) -> PyPauliAxis {
        PyPauliAxis(*self.0.a())
    }

    #[getter]
    fn b(&self) -> PyPauliAxis {
        PyPauliAxis(*self.0.b())
    }

    fn dot(&self) -> f64 {
        self.0.dot()
    }

    fn __repr__(&self) -> String {
        format!("ObservablePair(a={:?}, b={:?})", self.0.a().components(), self.0.b().components())
    }
}

#[pyclass(name = "PreparationSetting", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyPreparationSetting(qmath::PreparationSetting);

#[pymethods]
impl PyPreparationSetting {
    #[new]
    fn new(r: f64, theta: f64, phi: f64) -> PyResult<Self> {
        qmath::PreparationSetting::new(r, theta, phi).map(Self).map_err(py_err)
    }

    #[getter]
    fn r(&self) -> f64 {
        self.0.r()
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta()
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.0.phi()
    }

    fn state(&self) -> PyBlochVector {
        PyBlochVector(qmath::state_from_setting(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("PreparationSetting(r={}, theta={}, phi={})", self.0.r(), self.0.theta(), self.0.phi())
    }
}

#[pyclass(name = "RelationReport", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyRelationReport {
    form: String,
    lhs: f64,
    mid_bound: f64,
    outer_bound: f64,
    satisfied: bool,
    saturates_mid: bool,
    saturates_outer: bool,
    slack: f64,
}

impl From<relations::RelationReport> for PyRelationReport {
    fn from(r: relations::RelationReport) -> Self {
        Self {
            form: r.form.to_string(),
            lhs: r.lhs,
            mid_bound: r.mid_bound,
            outer_bound: r.outer_bound,
            satisfied: r.satisfied,
            saturates_mid: r.saturates_mid,
            saturates_outer: r.saturates_outer,
            slack: r.slack,
        }
    }
}

#[pymethods]
impl PyRelationReport {
    fn __repr__(&self) -> String {
        format!(
            "RelationReport(form={:?}, lhs={}, mid_bound={}, outer_bound={}, satisfied={})",
            self.form, self.lhs, self.mid_bound, self.outer_bound, self.satisfied
        )
    }
}

#[pyclass(name = "UncertaintyPoint", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyUncertaintyPoint {
    family: Option<String>,
    r: f64,
    theta: f64,
    phi: f64,
    exp_a: f64,
    exp_b: f64,
    sd_a: f64,
    sd_b: f64,
    h_a: f64,
    h_b: f64,
}

impl PyUncertaintyPoint {
    fn new(p: &relations::UncertaintyPoint, family: Option<FamilyKind>) -> Self {
        Self {
            family: family.map(|f| f.slug().to_string()),
            r: p.r,
            theta: p.theta,
            phi: p.phi,
            exp_a: p.exp_a,
            exp_b: p.exp_b,
            sd_a: p.sd_a,
            sd_b: p.sd_b,
            h_a: p.h_a,
            h_b: p.h_b,
        }
    }
}

#[pymethods]
impl PyUncertaintyPoint {
    fn __repr__(&self) -> String {
        format!(
            "UncertaintyPoint(r={}, theta={}, phi={}, exp_a={}, exp_b={})",
            self.r, self.theta, self.phi, self.exp_a, self.exp_b
        )
    }
}

#[pyclass(name = "EstimatedPoint", frozen, get_all)]
struct PyEstimatedPoint {
    point: Py<PyUncertaintyPoint>,
    err_exp_a: f64,
    err_exp_b: f64,
    err_sd_a: f64,
    err_sd_b: f64,
    err_h_a: f64,
    err_h_b: f64,
    boundary_a: bool,
    boundary_b: bool,
}

#[pyfunction]
fn expectation(state: &PyBlochVector, axis: &PyPauliAxis) -> f64 {
    qmath::expectation(&state.0, &axis.0)
}

#[pyfunction]
fn std_dev(exp_val: f64) -> PyResult<f64> {
    qmath::std_dev(exp_val).map_err(py_err)
}

#[pyfunction]
fn binary_entropy(p: f64) -> PyResult<f64> {
    qmath::binary_entropy(p).map_err(py_err)
}

#[pyfunction]
fn shannon_entropy(exp_val: f64) -> PyResult<f64> {
    qmath::shannon_entropy(exp_val).map_err(py_err)
}

#[pyfunction]
fn binary_entropy_inverse(h: f64) -> PyResult<f64> {
    qmath::binary_entropy_inverse(h).map_err(py_err)
}

#[pyfunction]
fn f_of_entropy(h: f64) -> PyResult<f64> {
    qmath::f_of_entropy(h).map_err(py_err)
}

/// `[expectation, std_dev, entropy]` reports for one state.
#[pyfunction]
fn check_all(state: &PyBlochVector, pair: &PyObservablePair) -> Vec<PyRelationReport> {
    relations::check_all(&state.0, &pair.0).map(Into::into).to_vec()
}

/// `(b_EV, b_SD, b_H)`, state-independent or at polarization `r`.
#[pyfunction]
#[pyo3(signature = (pair, r=None))]
fn bounds(pair: &PyObservablePair, r: Option<f64>) -> PyResult<(f64, f64, f64)> {
    let b = match r {
        Some(r) => relations::polarization_bounds(&pair.0, r).map_err(py_err)?,
        None => relations::state_independent_bounds(&pair.0),
    };
    Ok((b.expectation, b.std_dev, b.entropy))
}

#[pyfunction]
fn robertson_bound(state: &PyBlochVector, pair: &PyObservablePair) -> f64 {
    relations::robertson_bound(&state.0, &pair.0)
}

#[pyfunction]
fn schroedinger_bound(state: &PyBlochVector, pair: &PyObservablePair) -> f64 {
    relations::schroedinger_bound(&state.0, &pair.0)
}

#[pyfunction]
fn maassen_uffink_bound(pair: &PyObservablePair) -> f64 {
    relations::maassen_uffink_bound(&pair.0)
}

#[pyfunction]
fn uncertainty_point(state: &PyBlochVector, pair: &PyObservablePair) -> PyUncertaintyPoint {
    PyUncertaintyPoint::new(&relations::UncertaintyPoint::from_state(&state.0, &pair.0), None)
}

/// Settings of one boundary family, by name (`great_circle`, `equatorial`,
/// `closing`, `perpendicular`).
#[pyfunction]
fn boundary_family(
    kind: &str,
    pair: &PyObservablePair,
    r: f64,
    num_points: usize,
) -> PyResult<Vec<PyPreparationSetting>> {
    let kind: FamilyKind = kind.parse().map_err(py_err)?;
    let fam = boundary::family(kind, &pair.0, r, num_points).map_err(py_err)?;
    Ok(fam.settings.into_iter().map(PyPreparationSetting).collect())
}

/// Theory points of the closed standard-deviation outline, segment by segment.
#[pyfunction]
fn stddev_outline(pair: &PyObservablePair, r: f64, num_points: usize) -> PyResult<Vec<PyUncertaintyPoint>> {
    let segments = boundary::stddev_outline(&pair.0, r, num_points).map_err(py_err)?;
    Ok(segments
        .iter()
        .flat_map(|fam| fam.points().into_iter().map(|p| PyUncertaintyPoint::new(&p, Some(fam.kind))))
        .collect())
}

/// Simulated counting and estimation for each setting.
#[pyfunction]
#[pyo3(signature = (pair, settings, counts_per_projector, seed=0, background=0.0))]
fn run_experiment(
    py: Python<'_>,
    pair: &PyObservablePair,
    settings: Vec<PyRef<'_, PyPreparationSetting>>,
    counts_per_projector: u64,
    seed: u64,
    background: f64,
) -> PyResult<Vec<PyEstimatedPoint>> {
    let settings = settings.iter().map(|s| s.0).collect();
    let config = polsim::ExperimentConfig::new(pair.0, settings, counts_per_projector, seed)
        .and_then(|c| c.with_background(background))
        .map_err(py_err)?;
    let estimates = polsim::run_experiment(&config).map_err(py_err)?;
    estimates
        .iter()
        .map(|e| {
            Ok(PyEstimatedPoint {
                point: Py::new(py, PyUncertaintyPoint::new(&e.point, None))?,
                err_exp_a: e.err_exp_a,
                err_exp_b: e.err_exp_b,
                err_sd_a: e.err_sd_a,
                err_sd_b: e.err_sd_b,
                err_h_a: e.err_h_a,
                err_h_b: e.err_h_b,
                boundary_a: e.boundary_a,
                boundary_b: e.boundary_b,
            })
        })
        .collect()
}

#[pymodule]
mod tqu {
    #[pymodule_export]
    use super::{
        binary_entropy, binary_entropy_inverse, bounds, boundary_family, check_all, expectation,
        f_of_entropy, maassen_uffink_bound, robertson_bound, run_experiment, schroedinger_bound,
        shannon_entropy, std_dev, stddev_outline, uncertainty_point, PyBlochVector,
        PyEstimatedPoint, PyObservablePair, PyPauliAxis, PyPreparationSetting, PyRelationReport,
        PyUncertaintyPoint,
    };
}
