//! State families tracing the edges of the allowed-value regions.
//!
//! Each family is a one-parameter path of Bloch directions, scaled by `r`.
//! The directions come from the pair's frame:
//!
//! * `a`
//! * `e = (b − (a·b)a)/|…|`, the in-plane direction perpendicular to `a`
//! * `u = a×b/|a×b|`, the normal of `span(a, b)`
//! * `c = (a − (a·b)b)/|…|`, the in-plane direction perpendicular to `b`
//!
//! For `a = +z` with `b` in the y–z plane, `e = +y` and `u = −x`. The families
//! then reduce to the literal sweeps used in the experiment:
//!
//! | family            | path                | sweep                          |
//! |-------------------|---------------------|--------------------------------|
//! | `GreatCircleAB`   | `cos t·a + sin t·e` | `θ ∈ [0, 2π)`, `φ = π/2`       |
//! | `EquatorialArc`   | `cos s·e + sin s·u` | `θ = π/2`, `φ ∈ [π/2, π]`      |
//! | `ClosingArc`      | `cos s·a + sin s·u` | `θ ∈ [0, π/2]`, `φ = π`        |
//! | `PerpendicularToB`| `cos s·u + sin s·c` | from `−x` to `c` (⊥ b)         |

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qmath::{cross, norm, scale, state_from_setting, BlochVector, PreparationSetting, Vec3};
use crate::relations::{ObservablePair, UncertaintyPoint};

/// Tolerance for deciding that a direction lies in a meridian plane.
const MERIDIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    GreatCircleAB,
    EquatorialArc,
    ClosingArc,
    PerpendicularToB,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::GreatCircleAB,
        FamilyKind::EquatorialArc,
        FamilyKind::ClosingArc,
        FamilyKind::PerpendicularToB,
    ];

    pub fn slug(&self) -> &'static str {
        match self {
            FamilyKind::GreatCircleAB => "great_circle_ab",
            FamilyKind::EquatorialArc => "equatorial_arc",
            FamilyKind::ClosingArc => "closing_arc",
            FamilyKind::PerpendicularToB => "perpendicular_to_b",
        }
    }

    /// Full parameter range; the great circle is half-open.
    fn range(&self) -> (f64, f64) {
        match self {
            FamilyKind::GreatCircleAB => (0.0, TAU),
            _ => (0.0, FRAC_PI_2),
        }
    }

    /// Meridian whose signed polar angle labels the family, if it has one.
    fn meridian(&self) -> Option<f64> {
        match self {
            FamilyKind::GreatCircleAB => Some(FRAC_PI_2),
            FamilyKind::ClosingArc => Some(PI),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "great_circle_ab" | "great_circle" => Ok(FamilyKind::GreatCircleAB),
            "equatorial_arc" | "equatorial" => Ok(FamilyKind::EquatorialArc),
            "closing_arc" | "closing" => Ok(FamilyKind::ClosingArc),
            "perpendicular_to_b" | "perpendicular" => Ok(FamilyKind::PerpendicularToB),
            other => Err(Error::Config(format!("unknown boundary family '{other}'"))),
        }
    }
}

/// Orthonormal directions adapted to an observable pair.
#[derive(Debug, Clone, Copy)]
struct Frame {
    a: Vec3,
    e: Vec3,
    u: Vec3,
    c: Vec3,
}

impl Frame {
    fn new(pair: &ObservablePair) -> Result<Self> {
        if pair.cross_norm_sq() < 1e-24 {
            return Err(Error::Config(
                "boundary families need non-parallel observables (|a·b| < 1)".into(),
            ));
        }
        let (a, b, ab) = (pair.a().components(), pair.b().components(), pair.dot());
        let unit = |v: Vec3| scale(&v, 1.0 / norm(&v));
        Ok(Self {
            a,
            e: unit([b[0] - ab * a[0], b[1] - ab * a[1], b[2] - ab * a[2]]),
            u: unit(cross(&a, &b)),
            c: unit([a[0] - ab * b[0], a[1] - ab * b[1], a[2] - ab * b[2]]),
        })
    }

    fn direction(&self, kind: FamilyKind, t: f64) -> Vec3 {
        let (from, to) = match kind {
            FamilyKind::GreatCircleAB => (self.a, self.e),
            FamilyKind::EquatorialArc => (self.e, self.u),
            FamilyKind::ClosingArc => (self.a, self.u),
            FamilyKind::PerpendicularToB => (self.u, self.c),
        };
        let (s, co) = t.sin_cos();
        [
            co * from[0] + s * to[0],
            co * from[1] + s * to[1],
            co * from[2] + s * to[2],
        ]
    }
}

/// Polar angles of a unit direction.
///
/// If the direction lies in the half-plane pair of meridian `phi_m`, the polar
/// angle is signed within that meridian and `φ = phi_m`, so a great-circle
/// sweep keeps a single `φ` the way the coil scan does. Otherwise the angles
/// are canonical: `θ ∈ [0, π]`, `φ ∈ (−π, π]`.
fn angles(d: &Vec3, meridian: Option<f64>) -> (f64, f64) {
    if let Some(phi_m) = meridian {
        let (sp, cp) = phi_m.sin_cos();
        if (-d[0] * sp + d[1] * cp).abs() <= MERIDIAN_TOL {
            let theta = (d[0] * cp + d[1] * sp).atan2(d[2]);
            return (theta, phi_m);
        }
    }
    (d[2].clamp(-1.0, 1.0).acos(), d[1].atan2(d[0]))
}

/// `theta + 2πk` closest to the sweep parameter `t`.
fn nearest_branch(theta: f64, t: f64) -> f64 {
    let k = ((t - theta) / TAU).round();
    theta + TAU * k
}

/// A named path of preparation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFamily {
    pub kind: FamilyKind,
    pub pair: ObservablePair,
    pub r: f64,
    pub settings: Vec<PreparationSetting>,
}

impl BoundaryFamily {
    pub fn states(&self) -> Vec<BlochVector> {
        self.settings.iter().map(state_from_setting).collect()
    }

    pub fn points(&self) -> Vec<UncertaintyPoint> {
        self.settings
            .iter()
            .map(|s| UncertaintyPoint::from_setting(s, &self.pair))
            .collect()
    }

    pub fn reversed(mut self) -> Self {
        self.settings.reverse();
        self
    }

    /// `num_points` settings drawn uniformly along the family's full range, in
    /// draw order. Stands in for the randomness generator of the coil scan.
    pub fn randomized(
        kind: FamilyKind,
        pair: &ObservablePair,
        r: f64,
        num_points: usize,
        seed: u64,
    ) -> Result<Self> {
        let (frame, r) = validate(pair, r, num_points)?;
        let (lo, hi) = kind.range();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params: Vec<f64> = (0..num_points).map(|_| rng.random_range(lo..hi)).collect();
        build(kind, pair, &frame, r, &params)
    }
}

fn validate(pair: &ObservablePair, r: f64, num_points: usize) -> Result<(Frame, f64)> {
    if num_points < 2 {
        return Err(Error::Config(format!(
            "a boundary family needs at least 2 points, got {num_points}"
        )));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain {
            quantity: "r",
            value: r,
            domain: "[0, 1]",
        });
    }
    Ok((Frame::new(pair)?, r))
}

fn build(
    kind: FamilyKind,
    pair: &ObservablePair,
    frame: &Frame,
    r: f64,
    params: &[f64],
) -> Result<BoundaryFamily> {
    let settings = params
        .iter()
        .map(|&t| {
            let (theta, phi) = angles(&frame.direction(kind, t), kind.meridian());
            PreparationSetting::new(r, nearest_branch(theta, t), phi)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryFamily {
        kind,
        pair: *pair,
        r,
        settings,
    })
}

fn inclusive(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|k| if k + 1 == n { hi } else { lo + step * k as f64 })
        .collect()
}

fn sweep(kind: FamilyKind, pair: &ObservablePair, r: f64, num_points: usize) -> Result<BoundaryFamily> {
    let (frame, r) = validate(pair, r, num_points)?;
    let (lo, hi) = kind.range();
    build(kind, pair, &frame, r, &inclusive(lo, hi, num_points))
}

/// Pure or mixed states in `span(a, b)`, swept uniformly over `θ ∈ [0, 2π)`.
/// Every point saturates the `r`-dependent expectation-value bound.
pub fn great_circle_family(pair: &ObservablePair, r: f64, num_points: usize) -> Result<BoundaryFamily> {
    let (frame, r) = validate(pair, r, num_points)?;
    let step = TAU / num_points as f64;
    let params: Vec<f64> = (0..num_points).map(|k| step * k as f64).collect();
    build(FamilyKind::GreatCircleAB, pair, &frame, r, &params)
}

/// Part of the great circle between angles `from` and `to` (inclusive),
/// measured from `a` toward `b`.
pub fn great_circle_arc(
    pair: &ObservablePair,
    r: f64,
    from: f64,
    to: f64,
    num_points: usize,
) -> Result<BoundaryFamily> {
    let (frame, r) = validate(pair, r, num_points)?;
    build(FamilyKind::GreatCircleAB, pair, &frame, r, &inclusive(from, to, num_points))
}

/// States perpendicular to `a` between the great circle and `u`; `ΔA = 1` throughout.
pub fn equatorial_arc_family(pair: &ObservablePair, r: f64, num_points: usize) -> Result<BoundaryFamily> {
    sweep(FamilyKind::EquatorialArc, pair, r, num_points)
}

/// States from `a` to `u`, perpendicular to the in-plane direction `e`.
/// For `a·b = 0` this is the `ΔB = 1` segment.
pub fn closing_arc_family(pair: &ObservablePair, r: f64, num_points: usize) -> Result<BoundaryFamily> {
    sweep(FamilyKind::ClosingArc, pair, r, num_points)
}

/// States perpendicular to `b`, from `u` to `c`; `⟨B⟩ = 0` throughout.
pub fn perpendicular_circle_family(
    pair: &ObservablePair,
    r: f64,
    num_points: usize,
) -> Result<BoundaryFamily> {
    sweep(FamilyKind::PerpendicularToB, pair, r, num_points)
}

pub fn family(kind: FamilyKind, pair: &ObservablePair, r: f64, num_points: usize) -> Result<BoundaryFamily> {
    match kind {
        FamilyKind::GreatCircleAB => great_circle_family(pair, r, num_points),
        FamilyKind::EquatorialArc => equatorial_arc_family(pair, r, num_points),
        FamilyKind::ClosingArc => closing_arc_family(pair, r, num_points),
        FamilyKind::PerpendicularToB => perpendicular_circle_family(pair, r, num_points),
    }
}

/// Closed outline of the standard-deviation (and entropy) region, as
/// consecutive segments whose endpoints meet:
///
/// 1. the great-circle arc saturating the tight bound, from the state `c`
///    (where `⟨B⟩ = 0`) to `e` (where `⟨A⟩ = 0`);
/// 2. the equatorial arc, `ΔA = 1`;
/// 3. the closing arc traversed back to `a` when `a·b = 0`, otherwise the
///    perpendicular family from `u` back to `c`; `ΔB = 1`.
///
/// Both measures depend on `|a·b|` and `|⟨B⟩|` only, so a pair with
/// `a·b < 0` is traced with `b` flipped.
pub fn stddev_outline(pair: &ObservablePair, r: f64, num_points: usize) -> Result<Vec<BoundaryFamily>> {
    let traced = if pair.dot() < 0.0 { pair.flipped_b() } else { *pair };
    let start = traced.dot().acos() - FRAC_PI_2;
    let mut segments = vec![
        great_circle_arc(&traced, r, start, FRAC_PI_2, num_points)?,
        equatorial_arc_family(&traced, r, num_points)?,
    ];
    if traced.dot().abs() <= 1e-12 {
        segments.push(closing_arc_family(&traced, r, num_points)?.reversed());
    } else {
        segments.push(perpendicular_circle_family(&traced, r, num_points)?);
    }
    for seg in &mut segments {
        seg.pair = *pair;
    }
    Ok(segments)
}
