//! `tqu`: evaluate qubit uncertainty relations, trace boundary families,
//! simulate polarimeter counts and write figure datasets.
//!
//! Exit codes: 0 success, 1 usage, 2 unphysical input, 3 I/O,
//! 4 a relation was violated.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tqu_core::boundary::{self, BoundaryFamily, FamilyKind};
use tqu_core::config::{self, FileConfig};
use tqu_core::figure::{self, format_value, FigureId, FigureSpec, Simulation};
use tqu_core::qmath::Vec3;
use tqu_core::relations::{self, ObservablePair};
use tqu_core::{BlochVector, Error, Result};

const EXIT_USAGE: u8 = 1;
const EXIT_UNPHYSICAL: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_VIOLATED: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "tqu", version, about = "Tight uncertainty relations for qubit Pauli observables")]
struct Cli {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Default, Args)]
struct PairArgs {
    /// Overlap a·b, with a = +z and b in the y–z plane.
    #[arg(long, allow_hyphen_values = true)]
    ab: Option<f64>,
    /// Axis of A as x,y,z.
    #[arg(long, value_parser = vec3_arg, allow_hyphen_values = true)]
    a: Option<Vec3>,
    /// Axis of B as x,y,z.
    #[arg(long, value_parser = vec3_arg, allow_hyphen_values = true)]
    b: Option<Vec3>,
}

#[derive(Debug, Clone, Args)]
struct ScanArgs {
    /// Boundary families (great-circle, equatorial, closing, perpendicular).
    #[arg(long = "family", value_delimiter = ',')]
    families: Vec<String>,
    /// Polarizations r.
    #[arg(long, value_delimiter = ',')]
    r: Vec<f64>,
    /// Points per family.
    #[arg(long)]
    points: Option<usize>,
    /// Draw family parameters at random instead of sweeping uniformly.
    #[arg(long)]
    randomize: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the state-independent bounds and, with --r, the r-dependent ones.
    Bounds {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        r: Option<f64>,
    },
    /// Evaluate all relations for one state.
    Check {
        /// Bloch vector as x,y,z.
        #[arg(long, value_parser = vec3_arg, allow_hyphen_values = true)]
        state: Vec3,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Write the theoretical points of boundary families as CSV.
    Boundary {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Simulate counting along boundary families and write estimates as CSV.
    Simulate {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        scan: ScanArgs,
        /// Expected counts per projector at unit intensity, e.g. 1e5.
        #[arg(long = "n0", alias = "simulate", value_name = "N0")]
        n0: Option<String>,
        /// Mean background counts per projector.
        #[arg(long)]
        background: Option<f64>,
    },
    /// Write the datasets behind figure panels, one CSV per (figure, r, family).
    Figure {
        /// Figure panels (fig3a … fig8b) or `all`.
        #[arg(long = "fig", value_delimiter = ',')]
        figures: Vec<String>,
        /// Polarizations; defaults per figure.
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Add simulated estimates with this counting level, e.g. 1e5.
        #[arg(long, value_name = "N0")]
        simulate: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

fn vec3_arg(s: &str) -> std::result::Result<Vec3, String> {
    config::parse_vec3(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_unphysical_input() {
                EXIT_UNPHYSICAL
            } else if e.is_io() {
                EXIT_IO
            } else {
                EXIT_USAGE
            })
        }
    }
}

/// Fallback order: flag, config file, `TQU_SEED`, 0.
fn resolve_seed(flag: Option<u64>, file: &FileConfig) -> Result<u64> {
    if let Some(seed) = flag.or(file.simulation.seed) {
        return Ok(seed);
    }
    match std::env::var("TQU_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("TQU_SEED='{v}' is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn resolve_pair(args: &PairArgs, file: &FileConfig) -> Result<ObservablePair> {
    if args.ab.is_some() || args.a.is_some() || args.b.is_some() {
        config::resolve_pair(args.ab, args.a, args.b)
    } else {
        config::resolve_pair(file.pair.ab, file.pair.a, file.pair.b)
    }
}

fn resolve_count(flag: Option<&str>, file: &FileConfig) -> Result<Option<u64>> {
    match (flag, file.simulation.n0) {
        (Some(text), _) => config::parse_count(text).map(Some),
        (None, Some(n0)) => config::count_from_f64(n0).map(Some),
        (None, None) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<u8> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Bounds { pair, r } => {
            let pair = resolve_pair(&pair, &file)?;
            let r = r.or_else(|| file.scan.r.as_ref().and_then(|rs| rs.first().copied()));
            print_bounds(&mut out, &pair, r)?;
            Ok(0)
        }
        Command::Check { state, pair } => {
            let pair = resolve_pair(&pair, &file)?;
            let state = BlochVector::from_array(state)?;
            check(&mut out, &state, &pair)
        }
        Command::Boundary { pair, scan } => {
            let pair = resolve_pair(&pair, &file)?;
            write_scan(&pair, &scan, &file, None)?;
            Ok(0)
        }
        Command::Simulate {
            pair,
            scan,
            n0,
            background,
        } => {
            let pair = resolve_pair(&pair, &file)?;
            let n0 = resolve_count(n0.as_deref(), &file)?
                .ok_or_else(|| Error::Config("simulate needs --n0 N0".into()))?;
            let background = background.or(file.simulation.background).unwrap_or(0.0);
            write_scan(&pair, &scan, &file, Some((n0, background)))?;
            Ok(0)
        }
        Command::Figure {
            figures,
            r,
            points,
            simulate,
            seed,
            out: dir,
        } => {
            let names = if figures.is_empty() {
                file.scan.figures.clone().unwrap_or_else(|| vec!["all".into()])
            } else {
                figures
            };
            let ids = parse_figures(&names)?;
            let r_list = if r.is_empty() { file.scan.r.clone() } else { Some(r) };
            let num_points = points.or(file.scan.points).unwrap_or(figure::DEFAULT_POINTS);
            let sim = match resolve_count(simulate.as_deref(), &file)? {
                Some(n0) => Some(Simulation {
                    counts_per_projector: n0,
                    seed: resolve_seed(seed, &file)?,
                }),
                None => None,
            };
            let dir = dir
                .or(file.output.dir.clone())
                .unwrap_or_else(|| PathBuf::from("figures"));
            for id in ids {
                let mut spec = FigureSpec::new(id);
                spec.num_points = num_points;
                if let Some(rs) = &r_list {
                    spec.r_list = rs.clone();
                }
                for path in figure::write_figure(&spec, sim, &dir)? {
                    writeln!(out, "{}", path.display())?;
                }
            }
            Ok(0)
        }
    }
}

fn parse_figures(names: &[String]) -> Result<Vec<FigureId>> {
    if names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok(FigureId::ALL.to_vec());
    }
    names.iter().map(|n| n.parse()).collect()
}

fn print_bounds<W: Write>(out: &mut W, pair: &ObservablePair, r: Option<f64>) -> Result<()> {
    let b = relations::state_independent_bounds(pair);
    writeln!(out, "a.b = {}", format_value(pair.dot()))?;
    writeln!(out, "b_EV = {}", format_value(b.expectation))?;
    writeln!(out, "b_SD = {}", format_value(b.std_dev))?;
    writeln!(out, "b_H = {}", format_value(b.entropy))?;
    writeln!(out, "maassen_uffink = {}", format_value(relations::maassen_uffink_bound(pair)))?;
    if let Some(r) = r {
        let m = relations::polarization_bounds(pair, r)?;
        writeln!(out, "r = {}", format_value(r))?;
        writeln!(out, "b_EV(r) = {}", format_value(m.expectation))?;
        writeln!(out, "b_SD(r) = {}", format_value(m.std_dev))?;
        writeln!(out, "b_H(r) = {}", format_value(m.entropy))?;
    }
    Ok(())
}

fn check<W: Write>(out: &mut W, state: &BlochVector, pair: &ObservablePair) -> Result<u8> {
    let reports = relations::check_all(state, pair);
    for rep in &reports {
        writeln!(out, "{rep}")?;
    }
    let ea = tqu_core::qmath::expectation(state, pair.a()).clamp(-1.0, 1.0);
    let eb = tqu_core::qmath::expectation(state, pair.b()).clamp(-1.0, 1.0);
    let var_product = (1.0 - ea * ea) * (1.0 - eb * eb);
    writeln!(
        out,
        "robertson: {} <= dA*dB = {}",
        format_value(relations::robertson_bound(state, pair)),
        format_value(var_product.sqrt())
    )?;
    writeln!(
        out,
        "schroedinger: {} <= dA^2*dB^2 = {}",
        format_value(relations::schroedinger_bound(state, pair)),
        format_value(var_product)
    )?;
    Ok(if reports.iter().all(|r| r.satisfied) { 0 } else { EXIT_VIOLATED })
}

fn scan_families(pair: &ObservablePair, scan: &ScanArgs, file: &FileConfig, seed: u64) -> Result<Vec<BoundaryFamily>> {
    let kinds: Vec<FamilyKind> = if !scan.families.is_empty() {
        scan.families.iter().map(|f| f.parse()).collect::<Result<_>>()?
    } else if let Some(fs) = &file.scan.families {
        fs.iter().map(|f| f.parse()).collect::<Result<_>>()?
    } else {
        vec![FamilyKind::GreatCircleAB]
    };
    let rs = if !scan.r.is_empty() {
        scan.r.clone()
    } else {
        file.scan.r.clone().unwrap_or_else(|| vec![1.0])
    };
    let points = scan.points.or(file.scan.points).unwrap_or(figure::DEFAULT_POINTS);
    let mut families = Vec::new();
    for (i, &r) in rs.iter().enumerate() {
        for (j, &kind) in kinds.iter().enumerate() {
            families.push(if scan.randomize {
                let stream = (i * kinds.len() + j) as u64;
                BoundaryFamily::randomized(kind, pair, r, points, figure::derive_seed(seed, stream))?
            } else {
                boundary::family(kind, pair, r, points)?
            });
        }
    }
    Ok(families)
}

fn write_scan(pair: &ObservablePair, scan: &ScanArgs, file: &FileConfig, sim: Option<(u64, f64)>) -> Result<()> {
    let seed = resolve_seed(scan.seed, file)?;
    let families = scan_families(pair, scan, file, seed)?;
    let mut rows = Vec::new();
    for (k, fam) in families.iter().enumerate() {
        match sim {
            Some((n0, background)) => {
                let config = tqu_core::ExperimentConfig::new(
                    fam.pair,
                    fam.settings.clone(),
                    n0,
                    figure::derive_seed(seed, 1 << 32 | k as u64),
                )?
                .with_background(background)?;
                let estimates = tqu_core::polsim::run_experiment(&config)?;
                rows.extend(fam.points().into_iter().zip(estimates).map(|(theory, e)| figure::Row {
                    family: fam.kind,
                    theory,
                    estimate: Some(e),
                }));
            }
            None => rows.extend(figure::family_rows(fam, None)?),
        }
    }
    match &scan.out {
        Some(path) => figure::write_rows(&rows, io::BufWriter::new(std::fs::File::create(path)?)),
        None => figure::write_rows(&rows, io::stdout().lock()),
    }
}
