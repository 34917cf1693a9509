//! The tight expectation-value, standard-deviation and entropic relations for a
//! pair of Pauli observables, plus the classical bounds they are compared with.
//!
//! For `A = a·σ`, `B = b·σ` and a state of polarization `r = |n|`:
//!
//! ```text
//! EV:  |⟨A⟩a − ⟨B⟩b|²                              ≤ (1 − (a·b)²) r² ≤ 1 − (a·b)²
//! SD:  ΔA² + ΔB² + 2|a·b| √(1−ΔA²) √(1−ΔB²)        ≥ 2 − (1 − (a·b)²) r² ≥ 1 + (a·b)²
//! H:   f(H(A))² + f(H(B))² − 2|a·b| f(H(A)) f(H(B)) ≤ (1 − (a·b)²) r² ≤ 1 − (a·b)²
//! ```
//!
//! The SD and entropy forms only see `|⟨A⟩|`, `|⟨B⟩|` and `|a·b|`, so they are
//! exact transforms of each other. The EV form keeps the signs and is
//! saturated by every state in `span(a, b)` with polarization `r`. The other
//! two are saturated only by those states where `(a·b)⟨A⟩⟨B⟩ ≥ 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::qmath::{
    self, cross, dot, expectation, f_of_entropy, shannon_entropy, std_dev, BlochVector, PauliAxis,
    PreparationSetting,
};

/// Absolute tolerance on slack for the `satisfied` and saturation flags.
pub const SATURATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservablePair {
    a: PauliAxis,
    b: PauliAxis,
    dot_ab: f64,
    cross_norm_sq: f64,
}

impl ObservablePair {
    pub fn new(a: PauliAxis, b: PauliAxis) -> Self {
        let (av, bv) = (a.components(), b.components());
        let dot_ab = dot(&av, &bv).clamp(-1.0, 1.0);
        let axb = cross(&av, &bv);
        Self {
            a,
            b,
            dot_ab,
            cross_norm_sq: dot(&axb, &axb),
        }
    }

    /// `a = +z` and `b = (0, √(1 − c²), c)`; `c = 0` and `c = ½` are the two
    /// measured configurations.
    pub fn with_overlap(overlap: f64) -> Result<Self> {
        Ok(Self::new(PauliAxis::Z, PauliAxis::tilted_from_z(overlap)?))
    }

    pub fn a(&self) -> &PauliAxis {
        &self.a
    }

    pub fn b(&self) -> &PauliAxis {
        &self.b
    }

    /// `a·b`.
    pub fn dot(&self) -> f64 {
        self.dot_ab
    }

    /// `|a × b|²`.
    pub fn cross_norm_sq(&self) -> f64 {
        self.cross_norm_sq
    }

    /// The same pair with `b` replaced by `−b`.
    pub fn flipped_b(&self) -> Self {
        let b = self.b.components();
        Self::new(self.a, PauliAxis::normalized([-b[0], -b[1], -b[2]]).expect("unit axis"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationForm {
    ExpectationValue,
    StandardDeviation,
    Entropy,
}

impl fmt::Display for RelationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationForm::ExpectationValue => "expectation-value",
            RelationForm::StandardDeviation => "standard-deviation",
            RelationForm::Entropy => "entropy",
        })
    }
}

/// One evaluated relation.
///
/// `slack` is the signed distance from `lhs` to the `r`-dependent bound,
/// oriented so that it is non-negative when the relation holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationReport {
    pub form: RelationForm,
    pub lhs: f64,
    pub mid_bound: f64,
    pub outer_bound: f64,
    pub satisfied: bool,
    pub saturates_mid: bool,
    pub saturates_outer: bool,
    pub slack: f64,
}

impl RelationReport {
    fn upper(form: RelationForm, lhs: f64, mid_bound: f64, outer_bound: f64) -> Self {
        let slack = mid_bound - lhs;
        Self {
            form,
            lhs,
            mid_bound,
            outer_bound,
            satisfied: slack >= -SATURATION_TOL && mid_bound <= outer_bound + SATURATION_TOL,
            saturates_mid: slack.abs() <= SATURATION_TOL,
            saturates_outer: (outer_bound - lhs).abs() <= SATURATION_TOL,
            slack,
        }
    }

    fn lower(form: RelationForm, lhs: f64, mid_bound: f64, outer_bound: f64) -> Self {
        let slack = lhs - mid_bound;
        Self {
            form,
            lhs,
            mid_bound,
            outer_bound,
            satisfied: slack >= -SATURATION_TOL && mid_bound >= outer_bound - SATURATION_TOL,
            saturates_mid: slack.abs() <= SATURATION_TOL,
            saturates_outer: (lhs - outer_bound).abs() <= SATURATION_TOL,
            slack,
        }
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: lhs={} mid={} outer={} slack={} satisfied={} saturates_mid={} saturates_outer={}",
            self.form,
            self.lhs,
            self.mid_bound,
            self.outer_bound,
            self.slack,
            self.satisfied,
            self.saturates_mid,
            self.saturates_outer
        )
    }
}

/// The bound triple `(b_EV, b_SD, b_H)`, either state-independent or at fixed `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub expectation: f64,
    pub std_dev: f64,
    pub entropy: f64,
}

/// `b_EV = |a×b|²`, `b_SD = 1 + (a·b)²`, `b_H = 1 − (a·b)²`.
pub fn state_independent_bounds(pair: &ObservablePair) -> Bounds {
    let ab2 = pair.dot_ab * pair.dot_ab;
    Bounds {
        expectation: pair.cross_norm_sq,
        std_dev: 1.0 + ab2,
        entropy: 1.0 - ab2,
    }
}

/// The partially state-dependent bounds `b′(r)`.
pub fn polarization_bounds(pair: &ObservablePair, r: f64) -> Result<Bounds> {
    if !(0.0..=1.0 + qmath::NORM_TOL).contains(&r) {
        return Err(Error::Domain {
            quantity: "r",
            value: r,
            domain: "[0, 1]",
        });
    }
    let ev = (1.0 - pair.dot_ab * pair.dot_ab) * r * r;
    Ok(Bounds {
        expectation: ev,
        std_dev: 2.0 - ev,
        entropy: ev,
    })
}

fn mid_ev(state: &BlochVector, pair: &ObservablePair) -> f64 {
    let n = state.components();
    (1.0 - pair.dot_ab * pair.dot_ab) * dot(&n, &n)
}

/// Expectations clamped to `[-1, 1]`; physical states can overshoot by `NORM_TOL`.
fn expectations(state: &BlochVector, pair: &ObservablePair) -> (f64, f64) {
    (
        expectation(state, &pair.a).clamp(-1.0, 1.0),
        expectation(state, &pair.b).clamp(-1.0, 1.0),
    )
}

pub fn check_expectation_relation(state: &BlochVector, pair: &ObservablePair) -> RelationReport {
    let (ea, eb) = expectations(state, pair);
    let (a, b) = (pair.a.components(), pair.b.components());
    let diff = [
        ea * a[0] - eb * b[0],
        ea * a[1] - eb * b[1],
        ea * a[2] - eb * b[2],
    ];
    RelationReport::upper(
        RelationForm::ExpectationValue,
        dot(&diff, &diff),
        mid_ev(state, pair),
        1.0 - pair.dot_ab * pair.dot_ab,
    )
}

pub fn check_stddev_relation(state: &BlochVector, pair: &ObservablePair) -> RelationReport {
    let (ea, eb) = expectations(state, pair);
    let sa = std_dev(ea).expect("clamped expectation");
    let sb = std_dev(eb).expect("clamped expectation");
    let lhs = sa * sa
        + sb * sb
        + 2.0 * pair.dot_ab.abs() * (1.0 - sa * sa).max(0.0).sqrt() * (1.0 - sb * sb).max(0.0).sqrt();
    RelationReport::lower(
        RelationForm::StandardDeviation,
        lhs,
        2.0 - mid_ev(state, pair),
        1.0 + pair.dot_ab * pair.dot_ab,
    )
}

pub fn check_entropy_relation(state: &BlochVector, pair: &ObservablePair) -> RelationReport {
    let (ea, eb) = expectations(state, pair);
    let fa = f_of_entropy(shannon_entropy(ea).expect("clamped expectation")).expect("entropy in [0, 1]");
    let fb = f_of_entropy(shannon_entropy(eb).expect("clamped expectation")).expect("entropy in [0, 1]");
    let lhs = fa * fa + fb * fb - 2.0 * pair.dot_ab.abs() * fa * fb;
    RelationReport::upper(
        RelationForm::Entropy,
        lhs,
        mid_ev(state, pair),
        1.0 - pair.dot_ab * pair.dot_ab,
    )
}

/// All three tight relations, in EV, SD, entropy order.
pub fn check_all(state: &BlochVector, pair: &ObservablePair) -> [RelationReport; 3] {
    [
        check_expectation_relation(state, pair),
        check_stddev_relation(state, pair),
        check_entropy_relation(state, pair),
    ]
}

/// `|⟨[A, B]⟩ / 2i| = |(a×b)·n|` for Pauli observables.
pub fn robertson_bound(state: &BlochVector, pair: &ObservablePair) -> f64 {
    let axb = cross(&pair.a.components(), &pair.b.components());
    dot(&axb, &state.components()).abs()
}

/// Schrödinger's bound with the covariance `½⟨{A, B}⟩ − ⟨A⟩⟨B⟩ = a·b − ⟨A⟩⟨B⟩`.
pub fn schroedinger_bound(state: &BlochVector, pair: &ObservablePair) -> f64 {
    let (ea, eb) = (expectation(state, &pair.a), expectation(state, &pair.b));
    let cov = pair.dot_ab - ea * eb;
    let rob = robertson_bound(state, pair);
    cov * cov + rob * rob
}

/// Maassen–Uffink `−2 log₂ c`, with maximal eigenvector overlap `c² = (1 + |a·b|)/2`.
pub fn maassen_uffink_bound(pair: &ObservablePair) -> f64 {
    -(0.5 * (1.0 + pair.dot_ab.abs())).log2()
}

/// The three uncertainty views of one state for one observable pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyPoint {
    pub exp_a: f64,
    pub exp_b: f64,
    pub sd_a: f64,
    pub sd_b: f64,
    pub h_a: f64,
    pub h_b: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl UncertaintyPoint {
    /// Builds the point from two expectation values, recording `setting` as its origin.
    pub fn from_expectations(exp_a: f64, exp_b: f64, setting: &PreparationSetting) -> Result<Self> {
        Ok(Self {
            exp_a,
            exp_b,
            sd_a: std_dev(exp_a)?,
            sd_b: std_dev(exp_b)?,
            h_a: shannon_entropy(exp_a)?,
            h_b: shannon_entropy(exp_b)?,
            r: setting.r(),
            theta: setting.theta(),
            phi: setting.phi(),
        })
    }

    pub fn from_setting(setting: &PreparationSetting, pair: &ObservablePair) -> Self {
        let state = qmath::state_from_setting(setting);
        let (ea, eb) = expectations(&state, pair);
        Self::from_expectations(ea, eb, setting).expect("clamped expectations")
    }

    /// Builds the point for an arbitrary state; angles are the state's polar
    /// coordinates.
    pub fn from_state(state: &BlochVector, pair: &ObservablePair) -> Self {
        let [x, y, z] = state.components();
        let r = state.norm().min(1.0);
        let theta = if r > 0.0 { (z / state.norm()).clamp(-1.0, 1.0).acos() } else { 0.0 };
        let setting = PreparationSetting::new(r, theta, y.atan2(x)).expect("physical state");
        let (ea, eb) = expectations(state, pair);
        Self::from_expectations(ea, eb, &setting).expect("clamped expectations")
    }
}
