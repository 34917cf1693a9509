//! Qubit states, Pauli observables and the scalar uncertainty measures.
//!
//! A qubit state is carried as its Bloch vector `n`, i.e. `ρ = (𝟙 + n·σ)/2`,
//! and a Pauli observable as its unit axis `a`, i.e. `A = a·σ`. Everything the
//! uncertainty relations need follows from `⟨A⟩ = a·n`:
//!
//! * `ΔA = √(1 − ⟨A⟩²)`
//! * `H(A) = h₂((1 + ⟨A⟩)/2)` with base-2 logarithms
//! * `|⟨A⟩| = f(H(A))` with `f(x) = 1 − 2 h₂⁻¹(x)`

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Slack on unit-norm and physicality checks.
pub const NORM_TOL: f64 = 1e-9;

/// Bracket width at which the inverse binary entropy stops bisecting.
const INVERSE_TOL: f64 = 1e-15;

pub type Vec3 = [f64; 3];

pub(crate) fn dot(u: &Vec3, v: &Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub(crate) fn norm(v: &Vec3) -> f64 {
    dot(v, v).sqrt()
}

pub(crate) fn scale(v: &Vec3, s: f64) -> Vec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

/// Bloch vector of a qubit state; `|n| ≤ 1`, pure iff `|n| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(Vec3);

impl BlochVector {
    /// The maximally mixed state.
    pub const ORIGIN: BlochVector = BlochVector([0.0; 3]);

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_array([x, y, z])
    }

    pub fn from_array(n: Vec3) -> Result<Self> {
        let len = norm(&n);
        if !len.is_finite() || len > 1.0 + NORM_TOL {
            return Err(Error::UnphysicalState { norm: len });
        }
        Ok(Self(n))
    }

    pub fn components(&self) -> Vec3 {
        self.0
    }

    /// Degree of polarization `r = |n|`.
    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    /// `½(𝟙 + n·σ)` in the computational basis.
    pub fn density_matrix(&self) -> Mat2 {
        let [x, y, z] = self.0;
        [
            [c(0.5 * (1.0 + z), 0.0), c(0.5 * x, -0.5 * y)],
            [c(0.5 * x, 0.5 * y), c(0.5 * (1.0 - z), 0.0)],
        ]
    }

    /// Eigenvalues `(1 − |n|)/2 ≤ (1 + |n|)/2` of the density matrix.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let r = self.norm();
        [0.5 * (1.0 - r), 0.5 * (1.0 + r)]
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.0;
        write!(f, "({x}, {y}, {z})")
    }
}

/// Unit Bloch axis of a Pauli observable `A = a·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliAxis(Vec3);

impl PauliAxis {
    pub const X: PauliAxis = PauliAxis([1.0, 0.0, 0.0]);
    pub const Y: PauliAxis = PauliAxis([0.0, 1.0, 0.0]);
    pub const Z: PauliAxis = PauliAxis([0.0, 0.0, 1.0]);

    /// Accepts axes within `NORM_TOL` of unit length and stores them normalized.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_array([x, y, z])
    }

    pub fn from_array(a: Vec3) -> Result<Self> {
        let len = norm(&a);
        if !len.is_finite() || (len - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidObservable { norm: len });
        }
        Ok(Self(scale(&a, 1.0 / len)))
    }

    /// Rescales any nonzero vector onto the unit sphere.
    pub fn normalized(v: Vec3) -> Result<Self> {
        let len = norm(&v);
        if !len.is_finite() || len == 0.0 {
            return Err(Error::InvalidObservable { norm: len });
        }
        Ok(Self(scale(&v, 1.0 / len)))
    }

    /// Axis in the y–z plane whose overlap with `+z` is `overlap`:
    /// `(0, √(1 − overlap²), overlap)`.
    pub fn tilted_from_z(overlap: f64) -> Result<Self> {
        let overlap = clamp_to_domain("a·b", overlap, -1.0, 1.0, "[-1, 1]")?;
        Ok(Self([0.0, (1.0 - overlap * overlap).sqrt(), overlap]))
    }

    pub fn components(&self) -> Vec3 {
        self.0
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.0;
        write!(f, "({x}, {y}, {z})")
    }
}

/// Polarization `r`, coil precession angle `theta` and guide-field angle `phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreparationSetting {
    r: f64,
    theta: f64,
    phi: f64,
}

impl PreparationSetting {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain {
                quantity: "r",
                value: r,
                domain: "[0, 1]",
            });
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::Domain {
                quantity: "angle",
                value: if theta.is_finite() { phi } else { theta },
                domain: "finite radians",
            });
        }
        Ok(Self { r, theta, phi })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// `⟨A⟩ = a·n`.
pub fn expectation(state: &BlochVector, obs: &PauliAxis) -> f64 {
    dot(&state.0, &obs.0)
}

fn clamp_to_domain(
    quantity: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    domain: &'static str,
) -> Result<f64> {
    if value.is_nan() || value < lo - NORM_TOL || value > hi + NORM_TOL {
        return Err(Error::Domain {
            quantity,
            value,
            domain,
        });
    }
    Ok(value.clamp(lo, hi))
}

/// `ΔA = √(1 − ⟨A⟩²)`.
pub fn std_dev(exp_val: f64) -> Result<f64> {
    let e = clamp_to_domain("expectation value", exp_val, -1.0, 1.0, "[-1, 1]")?;
    Ok((1.0 - e * e).sqrt())
}

fn h2(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Binary entropy `h₂(p)` in bits, with `0·log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    let p = clamp_to_domain("probability", p, 0.0, 1.0, "[0, 1]")?;
    Ok(h2(p))
}

/// Shannon entropy of a Pauli measurement with expectation value `exp_val`.
/// Evaluated on `|e|` so that it is exactly even.
pub fn shannon_entropy(exp_val: f64) -> Result<f64> {
    let e = clamp_to_domain("expectation value", exp_val, -1.0, 1.0, "[-1, 1]")?;
    Ok(h2(0.5 * (1.0 + e.abs())))
}

/// The branch of `h₂⁻¹` on `[0, ½]`.
///
/// `h₂'` diverges at 0, so this bisects rather than running Newton. The
/// iteration sequence is fixed, which makes the result monotone in `h`.
pub fn binary_entropy_inverse(h: f64) -> Result<f64> {
    let h = clamp_to_domain("entropy", h, 0.0, 1.0, "[0, 1]")?;
    if h == 0.0 {
        return Ok(0.0);
    }
    if h == 1.0 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    while hi - lo > INVERSE_TOL {
        let mid = 0.5 * (lo + hi);
        if h2(mid) < h {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `f(x) = 1 − 2 h₂⁻¹(x)`, mapping an entropy back to `|⟨A⟩|`.
pub fn f_of_entropy(h: f64) -> Result<f64> {
    Ok(1.0 - 2.0 * binary_entropy_inverse(h)?)
}

/// `n = r (sinθ cosφ, sinθ sinφ, cosθ)`.
pub fn state_from_setting(s: &PreparationSetting) -> BlochVector {
    let (st, ct) = s.theta.sin_cos();
    let (sp, cp) = s.phi.sin_cos();
    BlochVector([s.r * st * cp, s.r * st * sp, s.r * ct])
}

pub type Mat2 = [[Complex64; 2]; 2];

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

pub fn adjoint(m: &Mat2) -> Mat2 {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

/// `exp(−i α k·σ / 2)`: rotates Bloch vectors by `α` about `k` under `ρ ↦ UρU†`.
pub fn spin_rotation(axis: &PauliAxis, angle: f64) -> Mat2 {
    let (s, co) = (0.5 * angle).sin_cos();
    let [kx, ky, kz] = axis.0;
    // cos(α/2)𝟙 − i sin(α/2)(kx σx + ky σy + kz σz)
    [
        [c(co, -s * kz), c(-s * ky, -s * kx)],
        [c(s * ky, -s * kx), c(co, s * kz)],
    ]
}

/// Reads `n_i = Tr(ρ σ_i)` off a density matrix.
pub fn bloch_of(rho: &Mat2) -> Vec3 {
    [
        2.0 * rho[0][1].re,
        -2.0 * rho[0][1].im,
        (rho[0][0] - rho[1][1]).re,
    ]
}

/// The preparation chain as explicit SU(2) conjugations,
/// `ρ = U_GF† U_DC† ρ_z U_DC U_GF`, with `ρ_z = ½(𝟙 + r σz)`.
///
/// `U_DC = exp(−iθσx/2)` turns `+z` toward `+y`; `U_GF = exp(−i(π/2 − φ)σz/2)`
/// then precesses about `z`, with `φ = π/2` leaving the y–z plane in place.
pub fn precession_chain(s: &PreparationSetting) -> Mat2 {
    let rho_z = BlochVector([0.0, 0.0, s.r]).density_matrix();
    let u_dc = spin_rotation(&PauliAxis::X, s.theta);
    let u_gf = spin_rotation(&PauliAxis::Z, FRAC_PI_2 - s.phi);
    let left = mat_mul(&adjoint(&u_gf), &adjoint(&u_dc));
    let right = mat_mul(&u_dc, &u_gf);
    mat_mul(&mat_mul(&left, &rho_z), &right)
}
