//! Random states and observables for property sweeps.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::qmath::{norm, scale, BlochVector, PauliAxis, Vec3};
use crate::relations::ObservablePair;

fn gaussian_direction<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let v: Vec3 = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let len = norm(&v);
        if len > 1e-12 {
            return scale(&v, 1.0 / len);
        }
    }
}

/// Axis uniform on the unit sphere.
pub fn uniform_axis<R: Rng + ?Sized>(rng: &mut R) -> PauliAxis {
    PauliAxis::normalized(gaussian_direction(rng)).expect("unit direction")
}

pub fn uniform_pair<R: Rng + ?Sized>(rng: &mut R) -> ObservablePair {
    let a = uniform_axis(rng);
    ObservablePair::new(a, uniform_axis(rng))
}

/// State uniform in the Bloch ball (radius `u^{1/3}`).
pub fn uniform_ball_state<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let r = rng.random::<f64>().cbrt();
    BlochVector::from_array(scale(&gaussian_direction(rng), r)).expect("inside the ball")
}

/// Uniform direction with uniformly distributed polarization `r ∈ [0, 1)`.
pub fn radial_uniform_state<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let r = rng.random::<f64>();
    BlochVector::from_array(scale(&gaussian_direction(rng), r)).expect("inside the ball")
}

/// Pure state uniform on the sphere.
pub fn pure_state<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    BlochVector::from_array(gaussian_direction(rng)).expect("unit vector")
}
