//! Monte Carlo model of the polarimeter measurement.
//!
//! Each preparation setting is analyzed with the four projectors `P_A^±` and
//! `P_B^±`. A projector's count is Poisson distributed with mean
//! `N₀ · Tr(ρ P) + background`. Expectation values are estimated from count
//! asymmetries. Standard deviations and entropies are plug-in estimates with
//! first-order error propagation.
//!
//! Randomness: a ChaCha8 generator seeded from the config seed, on stream
//! `setting index`, draws `A+, A−, B+, B−` in that order. Each setting is
//! therefore independent of every other, and runs are reproducible bit for bit.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::qmath::{expectation, shannon_entropy, state_from_setting, BlochVector, PauliAxis, PreparationSetting};
use crate::relations::{ObservablePair, UncertaintyPoint};

/// Expectations closer than this to ±1 are clamped before differentiating.
pub const DERIVATIVE_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    A,
    B,
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observable::A => "A",
            Observable::B => "B",
        })
    }
}

/// Projective analysis along `sign · axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzerSetting {
    pub axis: PauliAxis,
    pub sign: Sign,
}

/// `Tr(ρ P^±) = (1 ± n·a)/2`.
pub fn intensity(state: &BlochVector, analyzer: &AnalyzerSetting) -> f64 {
    let e = expectation(state, &analyzer.axis).clamp(-1.0, 1.0);
    0.5 * (1.0 + analyzer.sign.factor() * e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProjectorCounts {
    pub a_plus: u64,
    pub a_minus: u64,
    pub b_plus: u64,
    pub b_minus: u64,
}

impl ProjectorCounts {
    pub fn get(&self, obs: Observable, sign: Sign) -> u64 {
        match (obs, sign) {
            (Observable::A, Sign::Plus) => self.a_plus,
            (Observable::A, Sign::Minus) => self.a_minus,
            (Observable::B, Sign::Plus) => self.b_plus,
            (Observable::B, Sign::Minus) => self.b_minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountRecord {
    pub setting: PreparationSetting,
    pub counts: ProjectorCounts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub pair: ObservablePair,
    pub settings: Vec<PreparationSetting>,
    /// Expected counts per projector at unit intensity (`N₀`).
    pub counts_per_projector: u64,
    pub seed: u64,
    /// Mean background counts added to every projector.
    pub background: f64,
}

impl ExperimentConfig {
    pub fn new(
        pair: ObservablePair,
        settings: Vec<PreparationSetting>,
        counts_per_projector: u64,
        seed: u64,
    ) -> Result<Self> {
        if counts_per_projector == 0 {
            return Err(Error::Config("counts per projector must be at least 1".into()));
        }
        Ok(Self {
            pair,
            settings,
            counts_per_projector,
            seed,
            background: 0.0,
        })
    }

    pub fn with_background(mut self, background: f64) -> Result<Self> {
        if !(background.is_finite() && background >= 0.0) {
            return Err(Error::Config(format!("background must be >= 0, got {background}")));
        }
        self.background = background;
        Ok(self)
    }

    pub fn analyzers(&self) -> [AnalyzerSetting; 4] {
        let (a, b) = (*self.pair.a(), *self.pair.b());
        [
            AnalyzerSetting { axis: a, sign: Sign::Plus },
            AnalyzerSetting { axis: a, sign: Sign::Minus },
            AnalyzerSetting { axis: b, sign: Sign::Plus },
            AnalyzerSetting { axis: b, sign: Sign::Minus },
        ]
    }
}

fn poisson(mean: f64, rng: &mut ChaCha8Rng) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("finite positive mean");
    dist.sample(rng) as u64
}

/// Counts for one setting, drawn from its own generator stream.
pub fn simulate_setting(config: &ExperimentConfig, index: usize) -> CountRecord {
    let setting = config.settings[index];
    let state = state_from_setting(&setting);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let n0 = config.counts_per_projector as f64;
    let mut draw = |an: &AnalyzerSetting| poisson(n0 * intensity(&state, an) + config.background, &mut rng);
    let [ap, am, bp, bm] = config.analyzers();
    let counts = ProjectorCounts {
        a_plus: draw(&ap),
        a_minus: draw(&am),
        b_plus: draw(&bp),
        b_minus: draw(&bm),
    };
    CountRecord { setting, counts }
}

pub fn simulate_counts(config: &ExperimentConfig) -> Vec<CountRecord> {
    (0..config.settings.len())
        .map(|i| simulate_setting(config, i))
        .collect()
}

/// Estimates for one observable from its `(N₊, N₋)` counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableEstimate {
    pub exp: f64,
    pub err_exp: f64,
    pub sd: f64,
    pub err_sd: f64,
    pub h: f64,
    pub err_h: f64,
    /// The estimate sits within `DERIVATIVE_CLAMP` of ±1, where the
    /// propagated errors are no longer meaningful.
    pub boundary: bool,
}

/// `⟨A⟩ = (N₊ − N₋)/(N₊ + N₋)` with Poisson error `2√(N₊N₋/(N₊ + N₋)³)`.
pub fn estimate_observable(n_plus: u64, n_minus: u64, label: &'static str) -> Result<ObservableEstimate> {
    let total = n_plus + n_minus;
    if total == 0 {
        return Err(Error::ZeroCounts(label));
    }
    let (np, nm, nt) = (n_plus as f64, n_minus as f64, total as f64);
    let exp = (np - nm) / nt;
    let err_exp = 2.0 * (np * nm / (nt * nt * nt)).sqrt();

    let boundary = exp.abs() > 1.0 - DERIVATIVE_CLAMP;
    let ec = exp.clamp(-1.0 + DERIVATIVE_CLAMP, 1.0 - DERIVATIVE_CLAMP);
    // dΔ/de = −e/√(1 − e²), dH/de = ½ log₂((1 − e)/(1 + e))
    let dsd = -ec / (1.0 - ec * ec).sqrt();
    let dh = 0.5 * ((1.0 - ec) / (1.0 + ec)).log2();

    Ok(ObservableEstimate {
        exp,
        err_exp,
        sd: (1.0 - exp * exp).max(0.0).sqrt(),
        err_sd: dsd.abs() * err_exp,
        h: shannon_entropy(exp)?,
        err_h: dh.abs() * err_exp,
        boundary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatedPoint {
    /// Estimated values; `r`, `theta`, `phi` are the nominal setting.
    pub point: UncertaintyPoint,
    pub err_exp_a: f64,
    pub err_exp_b: f64,
    pub err_sd_a: f64,
    pub err_sd_b: f64,
    pub err_h_a: f64,
    pub err_h_b: f64,
    pub boundary_a: bool,
    pub boundary_b: bool,
}

pub fn estimate_point(rec: &CountRecord) -> Result<EstimatedPoint> {
    let c = rec.counts;
    let a = estimate_observable(c.a_plus, c.a_minus, "A")?;
    let b = estimate_observable(c.b_plus, c.b_minus, "B")?;
    Ok(EstimatedPoint {
        point: UncertaintyPoint {
            exp_a: a.exp,
            exp_b: b.exp,
            sd_a: a.sd,
            sd_b: b.sd,
            h_a: a.h,
            h_b: b.h,
            r: rec.setting.r(),
            theta: rec.setting.theta(),
            phi: rec.setting.phi(),
        },
        err_exp_a: a.err_exp,
        err_exp_b: b.err_exp,
        err_sd_a: a.err_sd,
        err_sd_b: b.err_sd,
        err_h_a: a.err_h,
        err_h_b: b.err_h,
        boundary_a: a.boundary,
        boundary_b: b.boundary,
    })
}

/// Preparation, counting and estimation for every setting, in settings order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<EstimatedPoint>> {
    simulate_counts(config).iter().map(estimate_point).collect()
}
