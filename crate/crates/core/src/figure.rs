//! Datasets behind the figure panels, written as CSV.
//!
//! Column order is fixed:
//!
//! ```text
//! family,r,theta_rad,phi_rad,exp_a,exp_b,sd_a,sd_b,h_a,h_b
//! ```
//!
//! With simulation enabled, these columns are appended:
//! `est_exp_a,err_exp_a,est_exp_b,err_exp_b,est_sd_a,err_sd_a,est_sd_b,err_sd_b,est_h_a,err_h_a,est_h_b,err_h_b`.
//! Numbers carry 12 significant digits and lines end in `\n`.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::{self, BoundaryFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::polsim::{run_experiment, EstimatedPoint, ExperimentConfig};
use crate::relations::{ObservablePair, UncertaintyPoint};

pub const THEORY_COLUMNS: [&str; 10] = [
    "family", "r", "theta_rad", "phi_rad", "exp_a", "exp_b", "sd_a", "sd_b", "h_a", "h_b",
];

pub const ESTIMATE_COLUMNS: [&str; 12] = [
    "est_exp_a", "err_exp_a", "est_exp_b", "err_exp_b", "est_sd_a", "err_sd_a", "est_sd_b",
    "err_sd_b", "est_h_a", "err_h_a", "est_h_b", "err_h_b",
];

/// Polarizations of the mixed-state panels.
pub const MEASURED_POLARIZATIONS: [f64; 3] = [0.83, 0.94, 0.99];

pub const DEFAULT_POINTS: usize = 360;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    ExpectationValue,
    StandardDeviation,
    Entropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig6a,
    Fig6b,
    Fig7a,
    Fig7b,
    Fig8a,
    Fig8b,
}

impl FigureId {
    pub const ALL: [FigureId; 12] = [
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig3c,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig4c,
        FigureId::Fig6a,
        FigureId::Fig6b,
        FigureId::Fig7a,
        FigureId::Fig7b,
        FigureId::Fig8a,
        FigureId::Fig8b,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig3c => "fig3c",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig4c => "fig4c",
            FigureId::Fig6a => "fig6a",
            FigureId::Fig6b => "fig6b",
            FigureId::Fig7a => "fig7a",
            FigureId::Fig7b => "fig7b",
            FigureId::Fig8a => "fig8a",
            FigureId::Fig8b => "fig8b",
        }
    }

    /// `a·b` of the panel: 0 for figure 3 and the (a) panels, ½ otherwise.
    pub fn overlap(&self) -> f64 {
        use FigureId::*;
        match self {
            Fig3a | Fig3b | Fig3c | Fig6a | Fig7a | Fig8a => 0.0,
            Fig4a | Fig4b | Fig4c | Fig6b | Fig7b | Fig8b => 0.5,
        }
    }

    pub fn measure(&self) -> Measure {
        use FigureId::*;
        match self {
            Fig3a | Fig4a | Fig6a | Fig6b => Measure::ExpectationValue,
            Fig3b | Fig4b | Fig7a | Fig7b => Measure::StandardDeviation,
            Fig3c | Fig4c | Fig8a | Fig8b => Measure::Entropy,
        }
    }

    /// Pure states for figures 3 and 4, the three measured polarizations otherwise.
    pub fn default_r_list(&self) -> Vec<f64> {
        use FigureId::*;
        match self {
            Fig3a | Fig3b | Fig3c | Fig4a | Fig4b | Fig4c => vec![1.0],
            _ => MEASURED_POLARIZATIONS.to_vec(),
        }
    }

    fn ordinal(&self) -> u64 {
        Self::ALL.iter().position(|f| f == self).expect("listed") as u64
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.strip_prefix("fig").unwrap_or(&key);
        FigureId::ALL
            .into_iter()
            .find(|f| &f.name()[3..] == key)
            .ok_or_else(|| Error::Config(format!("unknown figure '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub figure_id: FigureId,
    pub config: ObservablePair,
    pub r_list: Vec<f64>,
    pub num_points: usize,
}

impl FigureSpec {
    pub fn new(figure_id: FigureId) -> Self {
        Self {
            figure_id,
            config: ObservablePair::with_overlap(figure_id.overlap()).expect("valid overlap"),
            r_list: figure_id.default_r_list(),
            num_points: DEFAULT_POINTS,
        }
    }

    /// Theory families per polarization: the full great circle for expectation
    /// values, the closed outline for standard deviations and entropies.
    pub fn families(&self, r: f64) -> Result<Vec<BoundaryFamily>> {
        match self.figure_id.measure() {
            Measure::ExpectationValue => Ok(vec![boundary::great_circle_family(
                &self.config,
                r,
                self.num_points,
            )?]),
            _ => boundary::stddev_outline(&self.config, r, self.num_points),
        }
    }
}

/// Simulated counting on top of the theory curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simulation {
    pub counts_per_projector: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub family: FamilyKind,
    pub theory: UncertaintyPoint,
    pub estimate: Option<EstimatedPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub figure: FigureId,
    pub r: f64,
    pub family: FamilyKind,
    pub rows: Vec<Row>,
}

impl Dataset {
    pub fn file_name(&self) -> String {
        format!("{}_r{}_{}.csv", self.figure, format_value(self.r), self.family.slug())
    }

    pub fn has_estimates(&self) -> bool {
        self.rows.iter().any(|r| r.estimate.is_some())
    }

    pub fn write_csv<W: io::Write>(&self, w: W) -> Result<()> {
        write_rows(&self.rows, w)
    }
}

/// Rows for one family, with simulated estimates when `sim` is given.
pub fn family_rows(fam: &BoundaryFamily, sim: Option<Simulation>) -> Result<Vec<Row>> {
    let estimates = match sim {
        Some(sim) => {
            let config = ExperimentConfig::new(fam.pair, fam.settings.clone(), sim.counts_per_projector, sim.seed)?;
            run_experiment(&config)?.into_iter().map(Some).collect()
        }
        None => vec![None; fam.settings.len()],
    };
    Ok(fam
        .points()
        .into_iter()
        .zip(estimates)
        .map(|(theory, estimate)| Row {
            family: fam.kind,
            theory,
            estimate,
        })
        .collect())
}

/// Independent sub-seed for block `stream` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.next_u64()
}

/// Seed for one dataset, so a panel's counts do not depend on which other
/// panels are generated in the same run.
fn dataset_seed(seed: u64, figure: FigureId, r: f64, segment: usize) -> u64 {
    derive_seed(seed ^ r.to_bits(), figure.ordinal() << 8 | segment as u64)
}

pub fn figure_datasets(spec: &FigureSpec, sim: Option<Simulation>) -> Result<Vec<Dataset>> {
    let mut out = Vec::new();
    for &r in &spec.r_list {
        for (segment, fam) in spec.families(r)?.into_iter().enumerate() {
            let sim = sim.map(|s| Simulation {
                seed: dataset_seed(s.seed, spec.figure_id, r, segment),
                ..s
            });
            out.push(Dataset {
                figure: spec.figure_id,
                r,
                family: fam.kind,
                rows: family_rows(&fam, sim)?,
            });
        }
    }
    Ok(out)
}

/// Writes one CSV per `(figure, r, family)` into `dir` and returns the paths.
pub fn write_figure(spec: &FigureSpec, sim: Option<Simulation>, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for ds in figure_datasets(spec, sim)? {
        let path = dir.join(ds.file_name());
        ds.write_csv(io::BufWriter::new(fs::File::create(&path)?))?;
        paths.push(path);
    }
    Ok(paths)
}

pub fn write_rows<W: io::Write>(rows: &[Row], w: W) -> Result<()> {
    let with_estimates = rows.iter().any(|r| r.estimate.is_some());
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    let mut header: Vec<&str> = THEORY_COLUMNS.to_vec();
    if with_estimates {
        header.extend(ESTIMATE_COLUMNS);
    }
    out.write_record(&header)?;
    for row in rows {
        let p = &row.theory;
        let mut rec = vec![row.family.slug().to_string()];
        rec.extend(
            [p.r, p.theta, p.phi, p.exp_a, p.exp_b, p.sd_a, p.sd_b, p.h_a, p.h_b]
                .iter()
                .map(|&x| format_value(x)),
        );
        if with_estimates {
            match &row.estimate {
                Some(e) => {
                    let q = &e.point;
                    rec.extend(
                        [
                            q.exp_a, e.err_exp_a, q.exp_b, e.err_exp_b, q.sd_a, e.err_sd_a, q.sd_b,
                            e.err_sd_b, q.h_a, e.err_h_a, q.h_b, e.err_h_b,
                        ]
                        .iter()
                        .map(|&x| format_value(x)),
                    );
                }
                None => rec.extend(std::iter::repeat_n(String::new(), ESTIMATE_COLUMNS.len())),
            }
        }
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

/// Shortest rendering with 12 significant digits, `%.12g` style.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
