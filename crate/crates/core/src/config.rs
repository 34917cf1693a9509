//! TOML run configuration for the command-line tool.
//!
//! ```toml
//! [pair]
//! ab = 0.5              # or: a = [0, 0, 1] and b = [0, 0.866, 0.5]
//!
//! [scan]
//! r = [0.83, 0.94, 0.99]
//! points = 360
//! families = ["great_circle", "equatorial"]
//! figures = ["fig6a", "fig7b"]
//!
//! [simulation]
//! n0 = 1e5
//! seed = 7
//! background = 0.0
//!
//! [output]
//! dir = "figures"
//! ```
//!
//! Every key is optional; command-line flags take precedence.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::qmath::{PauliAxis, Vec3};
use crate::relations::ObservablePair;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub pair: PairSection,
    #[serde(default)]
    pub scan: ScanSection,
    #[serde(default)]
    pub simulation: SimulationSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSection {
    pub ab: Option<f64>,
    pub a: Option<Vec3>,
    pub b: Option<Vec3>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub r: Option<Vec<f64>>,
    pub points: Option<usize>,
    pub families: Option<Vec<String>>,
    pub figures: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    /// Accepts integers or floats such as `1e5`.
    pub n0: Option<f64>,
    pub seed: Option<u64>,
    pub background: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

/// Observable pair from explicit axes or an overlap; axes win over overlap.
/// With nothing given, `a = +z`, `b = +y`.
pub fn resolve_pair(ab: Option<f64>, a: Option<Vec3>, b: Option<Vec3>) -> Result<ObservablePair> {
    if a.is_some() || b.is_some() {
        let a = a.map(PauliAxis::from_array).transpose()?.unwrap_or(PauliAxis::Z);
        let b = b.map(PauliAxis::from_array).transpose()?.unwrap_or(PauliAxis::Y);
        return Ok(ObservablePair::new(a, b));
    }
    ObservablePair::with_overlap(ab.unwrap_or(0.0))
}

/// Parses a counting level such as `100000` or `1e5`.
pub fn parse_count(text: &str) -> Result<u64> {
    let value: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("'{text}' is not a number")))?;
    count_from_f64(value)
}

pub fn count_from_f64(value: f64) -> Result<u64> {
    if !(value.is_finite() && value >= 1.0 && value.fract() == 0.0 && value <= u64::MAX as f64) {
        return Err(Error::Config(format!("count must be a positive integer, got {value}")));
    }
    Ok(value as u64)
}

/// Parses `x,y,z`.
pub fn parse_vec3(text: &str) -> Result<Vec3> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Config(format!("'{text}' is not a vector x,y,z")))?;
    <Vec3>::try_from(parts).map_err(|_| Error::Config(format!("'{text}' needs exactly three components")))
}
