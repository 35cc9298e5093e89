//! Command-line front end: manifold files, command dispatch and report
//! emission. [`run`] is the whole program; the binary only forwards
//! `std::env::args` and the exit code.

pub mod manifold;
pub mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::acbm::Analysis;
use crate::error::{Error, Result};
use crate::paperlab::{verify_family, Mode};
use crate::scalar::{parse_rational, Rational, Scalar};

pub use manifold::{parse_manifold, parse_manifold_str, BracketEntry, Manifold, ManifoldFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_THEOREM_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bmetric", version, about = "Exact tensor calculus for almost contact B-metric Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Sampled,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::Sampled => Mode::Sampled,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the claim suite on the five-dimensional family; exits 1 if a
    /// theorem claim fails.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Use the brackets and structure of this manifold file in place of
        /// the built-in family.
        #[arg(long, value_name = "FILE")]
        family: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Class membership of a manifold file.
    Classify {
        file: PathBuf,
        /// Substitute a rational value for a declared parameter.
        #[arg(long = "set", value_name = "NAME=P/Q", value_parser = parse_set)]
        set: Vec<(String, Rational)>,
        #[arg(long)]
        json: bool,
    },
    /// Full dump of every derived tensor.
    Report {
        file: PathBuf,
        #[arg(long = "set", value_name = "NAME=P/Q", value_parser = parse_set)]
        set: Vec<(String, Rational)>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print one scalar: tau, tau_star, sq_nabla_phi, sq_nabla_eta,
    /// sq_nabla_xi, or a component such as rho(e1,e1), R(xi,e1,e1,xi),
    /// F(1,3,5), rho_star(..), h(..), theta(..), theta_star(..), omega(..),
    /// N(..), d_eta(..).
    Eval {
        file: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long = "set", value_name = "NAME=P/Q", value_parser = parse_set)]
        set: Vec<(String, Rational)>,
    },
}

fn parse_set(s: &str) -> std::result::Result<(String, Rational), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=P/Q, found `{s}`"))?;
    let v = parse_rational(value.trim()).map_err(|e| format!("bad value in `{s}`: {e}"))?;
    Ok((name.trim().to_string(), v))
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::Io {
            path: "<stdout>".into(),
            message: e.to_string(),
        }),
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serialises");
    s.push('\n');
    s
}

/// Parses the file, substitutes `--set` values and runs the analysis.
pub fn analyse_file(path: &Path, sets: &[(String, Rational)]) -> Result<(Manifold, BTreeMap<String, Rational>, Analysis)> {
    let m = parse_manifold(path)?;
    let algebra = m.algebra_with(sets)?;
    let assignment: BTreeMap<String, Rational> = sets.iter().cloned().collect();
    let a = Analysis::run(algebra, m.structure.clone())?;
    Ok((m, assignment, a))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::VerifyPaper {
            json,
            mode,
            seed,
            samples,
            family,
            out: path,
        } => {
            let fam = match family {
                Some(p) => {
                    let m = parse_manifold(&p)?;
                    Some((m.algebra, m.structure))
                }
                None => None,
            };
            let report = verify_family(fam, mode.into(), seed, samples)?;
            let text = if json { report.to_json() } else { report.render_text() };
            emit(out, path.as_deref(), &text)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_THEOREM_FAILED })
        }
        Command::Classify { file, set, json } => {
            let (_, asg, a) = analyse_file(&file, &set)?;
            let name = file.display().to_string();
            let text = if json {
                json_text(&render::classification_json(&name, &asg, &a))
            } else {
                render::classification_text(&name, &asg, &a)
            };
            emit(out, None, &text)?;
            Ok(EXIT_OK)
        }
        Command::Report { file, set, out: path, json } => {
            let (_, asg, a) = analyse_file(&file, &set)?;
            let name = file.display().to_string();
            let text = if json {
                json_text(&render::analysis_json(&name, &asg, &a))
            } else {
                render::analysis_text(&name, &asg, &a)
            };
            emit(out, path.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Eval { file, expr, set } => {
            let (m, _, a) = analyse_file(&file, &set)?;
            let v = eval_expr(&m, &a, &expr)?;
            emit(out, None, &format!("{v}\n"))?;
            Ok(EXIT_OK)
        }
    }
}

/// Resolves a basis reference: a frame label such as `e2` or `xi`, or a
/// 1-based file index.
fn resolve_index(m: &Manifold, a: &Analysis, tok: &str) -> Result<usize> {
    let tok = tok.trim();
    if let Some(i) = a.structure.frame().labels().iter().position(|l| l == tok) {
        return Ok(i);
    }
    tok.parse::<usize>()
        .ok()
        .and_then(|k| m.internal_index(k))
        .ok_or_else(|| Error::Validation(format!("unknown basis vector `{tok}`")))
}

/// Evaluates a named scalar or tensor component.
pub fn eval_expr(m: &Manifold, a: &Analysis, expr: &str) -> Result<Scalar> {
    let expr = expr.trim();
    match expr {
        "tau" => return Ok(a.curvature.scalar.clone()),
        "tau_star" => return Ok(a.tau_star.clone()),
        "sq_nabla_phi" => return Ok(a.norms.sq_nabla_phi.clone()),
        "sq_nabla_eta" => return Ok(a.norms.sq_nabla_eta.clone()),
        "sq_nabla_xi" => return Ok(a.norms.sq_nabla_xi.clone()),
        _ => {}
    }
    let unknown = || Error::Validation(format!("unknown expression `{expr}`"));
    let (name, rest) = expr.split_once('(').ok_or_else(unknown)?;
    let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
    let ix: Vec<usize> = inner
        .split(',')
        .map(|t| resolve_index(m, a, t))
        .collect::<Result<_>>()?;
    let tensor = match name.trim() {
        "rho" => &a.curvature.ricci,
        "rho_star" => &a.rho_star,
        "R" => &a.curvature.riemann,
        "F" => a.fundamental.tensor(),
        "h" => &a.h,
        "theta" => &a.lee.theta,
        "theta_star" => &a.lee.theta_star,
        "omega" => &a.lee.omega,
        "N" => &a.normality.nijenhuis,
        "d_eta" => &a.normality.d_eta,
        _ => return Err(unknown()),
    };
    if ix.len() != tensor.rank() {
        return Err(Error::Validation(format!(
            "`{}` takes {} indices, got {}",
            name.trim(),
            tensor.rank(),
            ix.len()
        )));
    }
    Ok(tensor.get(&ix).clone())
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}
