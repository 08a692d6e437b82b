//! Command-line front end: configuration files in, canonical series and reports out.
//!
//! [`run`] does all the work and returns the text and exit status, so the
//! binary is a thin wrapper and every command is testable in-process.

mod config;
mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coeff::{parse_rational, render_rational};
use crate::genus::{chi_y, ell, hirzebruch_chi_y, singular_coeffs, veys_chi_y, AmbientE, GenusError};
use crate::graph::{Connectivity, CorrectionMode, Interpretation, PathCondition, ResolutionGraph};
use crate::surface::{blowup, solve_discrepancies, Coeffs, PointSpec, SurfaceError, SurfaceModel};

pub use config::ConfigFile;
pub use suites::{Check, SuiteReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("mathematical error: {0}")]
    Math(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Math(_) => 3,
            CliError::Parse { .. } | CliError::Io(_) => 4,
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<GenusError> for CliError {
    fn from(e: GenusError) -> Self {
        match e {
            GenusError::Surface(e) => e.into(),
            other => CliError::Math(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ellgenus", version, about = "Singular elliptic genus of normal surfaces from resolution data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct InterpretationArgs {
    /// How bridges enter the first correction sum.
    #[arg(long, value_enum, default_value_t = CorrectionMode::Default)]
    pub correction: CorrectionMode,
    /// Which path vertices must satisfy the genus and monotonicity conditions.
    #[arg(long, value_enum, default_value_t = PathCondition::Literal)]
    pub path_condition: PathCondition,
    /// Meaning of "connected to a bridge" for R_a.
    #[arg(long, value_enum, default_value_t = Connectivity::Path)]
    pub r_connectivity: Connectivity,
    /// Meaning of "connected to a vertex in R_a" for B'_a.
    #[arg(long, value_enum, default_value_t = Connectivity::Adjacent)]
    pub bp_connectivity: Connectivity,
}

impl InterpretationArgs {
    pub fn flags(&self) -> Interpretation {
        Interpretation {
            path: self.path_condition,
            r_connectivity: self.r_connectivity,
            bp_connectivity: self.bp_connectivity,
            correction: self.correction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Invariance,
    Residues,
    Theta,
    Holomorphy,
    Perturbation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the model, including negative definiteness of the exceptional lattice.
    Validate { file: PathBuf },
    /// Solve the discrepancies of the exceptional curves.
    Discrepancies { file: PathBuf },
    /// Print the elliptic genus as a q-series.
    Ell {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        q_order: usize,
        #[command(flatten)]
        interpretation: InterpretationArgs,
    },
    /// Print y times the q^0 coefficient.
    ChiY {
        file: PathBuf,
        #[command(flatten)]
        interpretation: InterpretationArgs,
    },
    /// Print the stringy chi_y from the bridge formula.
    Veys {
        file: PathBuf,
        /// E(X; y, 1) coefficients "c0,c1,c2"; defaults to the Hirzebruch values.
        #[arg(long)]
        ambient_e: Option<String>,
    },
    /// Blow up a point and print the new configuration with explicit coefficients.
    Blowup {
        file: PathBuf,
        /// generic, curve:LABEL or node:LABEL,LABEL
        #[arg(long)]
        at: String,
    },
    /// Run a verification suite on a file or on a seeded random corpus.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Defaults to 5 for invariance and 3 for perturbation.
        #[arg(long)]
        q_order: Option<usize>,
        #[command(flatten)]
        interpretation: InterpretationArgs,
    },
}

/// Text printed by a command and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn read(file: &PathBuf) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
    ConfigFile::parse(&text)
}

/// Coefficients for a file: taken as given when every curve has one,
/// otherwise solved on exceptional curves with supplied values checked.
pub fn effective_coeffs(cfg: &ConfigFile) -> Result<Coeffs, CliError> {
    let model = &cfg.model;
    if model.curves().iter().all(|c| cfg.coeffs.contains_key(&c.label)) {
        return Ok(cfg.coeffs.clone());
    }
    let solved = singular_coeffs(model, &cfg.coeffs)?;
    for (label, a) in &cfg.coeffs {
        if solved.get(label) != Some(a) {
            return Err(CliError::Validation(format!(
                "coefficient {} on {label} conflicts with the discrepancy {}",
                render_rational(a),
                solved.get(label).map_or_else(|| "?".to_string(), render_rational)
            )));
        }
    }
    Ok(solved)
}

fn render_coeffs(model: &SurfaceModel, coeffs: &Coeffs, sep: &str) -> String {
    model
        .curves()
        .iter()
        .filter_map(|c| coeffs.get(&c.label).map(|a| format!("{}{sep}{}", c.label, render_rational(a))))
        .collect::<Vec<_>>()
        .join(", ")
}

fn parse_ambient(text: &str) -> Result<AmbientE, CliError> {
    let parts: Vec<_> = text.split(',').map(|p| parse_rational(p.trim())).collect();
    match parts[..] {
        [Some(ref a), Some(ref b), Some(ref c)] => Ok([a.clone(), b.clone(), c.clone()]),
        _ => Err(CliError::Parse { line: 1, message: format!("--ambient-e expects three rationals \"c0,c1,c2\", got {text:?}") }),
    }
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    let ok = |output: String| Ok(Outcome { output, code: 0 });
    match command {
        Command::Validate { file } => {
            let cfg = read(file)?;
            cfg.model.validate()?;
            ok(format!("OK {} curves, exceptional lattice negative definite\n", cfg.model.len()))
        }
        Command::Discrepancies { file } => {
            let cfg = read(file)?;
            let c = solve_discrepancies(&cfg.model)?;
            ok(format!("{}\n", render_coeffs(&cfg.model, &c, ": ")))
        }
        Command::Ell { file, q_order, interpretation } => {
            let cfg = read(file)?;
            let coeffs = effective_coeffs(&cfg)?;
            let res = ell(&cfg.model, &coeffs, *q_order, &interpretation.flags())?;
            ok(format!(
                "# {}\n# coefficients: {}\n# q-order: {}, root-order: {}\n{}\n",
                res.flags,
                render_coeffs(&cfg.model, &coeffs, "="),
                res.order,
                res.root_order(),
                res.series.render()
            ))
        }
        Command::ChiY { file, interpretation } => {
            let cfg = read(file)?;
            let coeffs = effective_coeffs(&cfg)?;
            let res = ell(&cfg.model, &coeffs, 0, &interpretation.flags())?;
            ok(format!("{}\n", chi_y(&res)))
        }
        Command::Veys { file, ambient_e } => {
            let cfg = read(file)?;
            let coeffs = effective_coeffs(&cfg)?;
            let ambient = match ambient_e {
                Some(t) => parse_ambient(t)?,
                None => hirzebruch_chi_y(cfg.model.c1sq(), cfg.model.c2()),
            };
            let g = ResolutionGraph::from_model(&cfg.model, &coeffs)?;
            ok(format!("{}\n", veys_chi_y(&g, &ambient)?))
        }
        Command::Blowup { file, at } => {
            let cfg = read(file)?;
            let p: PointSpec = at.parse().map_err(|m| CliError::Parse { line: 1, message: m })?;
            let coeffs = effective_coeffs(&cfg)?;
            let (model, coeffs) = blowup(&cfg.model, &coeffs, &p)?;
            ok(ConfigFile::new(model, coeffs).render())
        }
        Command::Verify { file, suite, seed, count, q_order, interpretation } => {
            let cfg = file.as_ref().map(read).transpose()?;
            let flags = interpretation.flags();
            let report = match suite {
                Suite::Invariance => suites::invariance(cfg.as_ref(), *seed, *count, q_order.unwrap_or(5), &flags)?,
                Suite::Residues => suites::residues(*seed, *count)?,
                Suite::Theta => suites::theta(*seed, *count)?,
                Suite::Holomorphy => suites::holomorphy(cfg.as_ref(), &flags)?,
                Suite::Perturbation => suites::perturbation(cfg.as_ref(), *seed, *count, q_order.unwrap_or(3), &flags)?,
            };
            Ok(Outcome { code: if report.all_pass() { 0 } else { 1 }, output: report.render() })
        }
    }
}

/// Runs a parsed command; errors become their message and exit code.
pub fn run(cli: &Cli) -> Outcome {
    execute(&cli.command).unwrap_or_else(|e| Outcome { output: format!("error: {e}\n"), code: e.exit_code() })
}
