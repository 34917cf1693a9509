//! Tight preparation uncertainty relations for pairs of qubit Pauli
//! observables, in expectation-value, standard-deviation and entropic form,
//! and a Monte Carlo model of the polarimetric experiment that probes them.
//!
//! * [`qmath`]: Bloch vectors, Pauli axes, the preparation chain, `h₂` and its inverse
//! * [`relations`]: the three tight relations and the classical bounds
//! * [`boundary`]: state families on the edges of the allowed regions
//! * [`polsim`]: counting simulation and estimators
//! * [`figure`]: CSV datasets for the figure panels

pub mod boundary;
pub mod config;
pub mod error;
pub mod figure;
pub mod polsim;
pub mod qmath;
pub mod relations;
pub mod sampling;

pub use boundary::{BoundaryFamily, FamilyKind};
pub use error::{Error, Result};
pub use polsim::{CountRecord, EstimatedPoint, ExperimentConfig};
pub use qmath::{BlochVector, PauliAxis, PreparationSetting};
pub use relations::{ObservablePair, RelationForm, RelationReport, UncertaintyPoint};
