//! Command-line front end for `qheis`.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! everything written to stdout and stderr, so the binary is a thin wrapper
//! and tests can drive the commands in-process.

pub mod expr;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use qheis::graded::{power_series, qdim_ext_power, qdim_sym_power};
use qheis::pairing::{pair, pair_recursive};
use qheis::partitions::multipartitions_of;
use qheis::symfunc::{series_check_eh, series_check_h};
use qheis::{
    Basis, DoubleElement, GradedVS, LatticeDouble, LatticeSpec, LaurentPoly, PairingSpec,
    PowerKind, Theorem, DEFAULT_DEGREE_BOUND,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] qheis::Error),
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "qheis",
    version,
    about = "Exact computation in quantum lattice Heisenberg algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LatticeArg {
    /// Gram matrix file: the rank on the first line, then one row per line.
    /// Defaults to rank one with <1,1> = 1.
    #[arg(long)]
    lattice: Option<PathBuf>,
}

impl LatticeArg {
    fn load(&self) -> Result<LatticeSpec, CliError> {
        match &self.lattice {
            Some(path) => load_lattice(path),
            None => Ok(LatticeSpec::rank_one(1)),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    P,
    H,
    E,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::P => Basis::P,
            BasisArg::H => Basis::H,
            BasisArg::E => Basis::E,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Sym,
    Ext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    Hh,
    Eh,
    Ee,
    He,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RelationArg {
    Hh,
    Eh,
    Ee,
    He,
}

impl From<RelationArg> for Theorem {
    fn from(r: RelationArg) -> Theorem {
        match r {
            RelationArg::Hh => Theorem::Hh,
            RelationArg::Eh => Theorem::Eh,
            RelationArg::Ee => Theorem::Ee,
            RelationArg::He => Theorem::He,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal-order an expression in the Heisenberg double.
    Mul {
        expr: String,
        #[command(flatten)]
        lattice: LatticeArg,
        /// Readout basis for the plus side (and the minus side unless
        /// --minus-basis is given).
        #[arg(long, value_enum, default_value = "p")]
        basis: BasisArg,
        #[arg(long, value_enum)]
        minus_basis: Option<BasisArg>,
        /// Evaluate every coefficient at q = 1.
        #[arg(long)]
        q1: bool,
    },
    /// Commutator [X, Y] of two double expressions.
    Commutator {
        x: String,
        y: String,
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long, value_enum, default_value = "p")]
        basis: BasisArg,
        #[arg(long, value_enum)]
        minus_basis: Option<BasisArg>,
        #[arg(long)]
        q1: bool,
    },
    /// Apply the involution that swaps h and e on both sides of the double.
    Omega {
        expr: String,
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long, value_enum, default_value = "p")]
        basis: BasisArg,
        #[arg(long, value_enum)]
        minus_basis: Option<BasisArg>,
        /// Treat the expression as a plain symmetric function in this many
        /// colors instead of an element of the double.
        #[arg(long)]
        colors: Option<usize>,
    },
    /// Coproduct of a symmetric-function expression, in the power-sum basis.
    Coproduct {
        expr: String,
        #[arg(long, default_value_t = 1)]
        colors: usize,
    },
    /// Evaluate the Hopf pairing <X, Y> of two symmetric-function expressions.
    Pair {
        x: String,
        y: String,
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        q1: bool,
        /// Use the recursive evaluator instead of the closed form.
        #[arg(long)]
        recursive: bool,
    },
    /// Graded dimension of a symmetric or exterior power of the space with
    /// graded dimension [chi].
    Qdim {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, value_enum, default_value = "sym")]
        kind: KindArg,
        /// Compute from the generating-function product instead of the
        /// multiset sum.
        #[arg(long)]
        series: bool,
    },
    /// Re-express a symmetric-function expression in another basis.
    Convert {
        expr: String,
        #[arg(long, value_enum)]
        to: BasisArg,
        #[arg(long, default_value_t = 1)]
        colors: usize,
    },
    /// Check the h/e product relations for all m, n up to --max.
    Verify {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long, default_value_t = 5)]
        max: u32,
        #[arg(long, value_enum, default_value = "all")]
        which: WhichArg,
        /// Compare after setting q = 1.
        #[arg(long)]
        q1: bool,
    },
    /// Closed-form right-hand side of one relation.
    Rhs {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long, value_enum)]
        which: RelationArg,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Color of the plus-side generator.
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Color of the minus-side generator.
        #[arg(long, default_value_t = 1)]
        j: usize,
    },
    /// Check that mixed h/e readouts of h-h+ and e-h+ products are integral.
    Integrality {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long, default_value_t = 4)]
        max: u32,
    },
    /// Check the generating-function identities for h and e.
    SeriesCheck {
        #[arg(long, default_value_t = 8)]
        bound: u32,
    },
    /// List the multipartitions of n.
    Partitions {
        n: u32,
        #[arg(long, default_value_t = 1)]
        colors: usize,
    },
}

pub fn load_lattice(path: &Path) -> Result<LatticeSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    text.parse().map_err(|e: qheis::Error| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn double_spec(lattice: &LatticeSpec) -> Result<Arc<PairingSpec>, CliError> {
    Ok(Arc::new(PairingSpec::from_lattice(
        lattice,
        DEFAULT_DEGREE_BOUND,
    )?))
}

fn render_double(
    x: &DoubleElement,
    plus: BasisArg,
    minus: Option<BasisArg>,
    q1: bool,
) -> Result<String, CliError> {
    let x = if q1 { x.eval_at_one() } else { x.clone() };
    let readout = x.readout(plus.into(), minus.unwrap_or(plus).into())?;
    Ok(readout.to_string())
}

fn positive_colors(colors: usize) -> Result<usize, CliError> {
    if colors == 0 {
        return Err(CliError::Usage("--colors must be at least 1".into()));
    }
    Ok(colors)
}

fn render_scalar(c: &LaurentPoly, q1: bool) -> String {
    if q1 {
        c.eval_at_one().to_string()
    } else {
        c.to_string()
    }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((code, stdout)) => Output {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(command: Command) -> Result<(i32, String), CliError> {
    let line = |s: String| Ok((0, s + "\n"));
    match command {
        Command::Mul {
            expr,
            lattice,
            basis,
            minus_basis,
            q1,
        } => {
            let lattice = lattice.load()?;
            let spec = double_spec(&lattice)?;
            let x = expr::parse(&expr, lattice.rank())?.to_double(&spec)?;
            line(render_double(&x, basis, minus_basis, q1)?)
        }
        Command::Commutator {
            x,
            y,
            lattice,
            basis,
            minus_basis,
            q1,
        } => {
            let lattice = lattice.load()?;
            let spec = double_spec(&lattice)?;
            let x = expr::parse(&x, lattice.rank())?.to_double(&spec)?;
            let y = expr::parse(&y, lattice.rank())?.to_double(&spec)?;
            line(render_double(&x.commutator(&y)?, basis, minus_basis, q1)?)
        }
        Command::Omega {
            expr,
            lattice: _,
            basis,
            minus_basis: _,
            colors: Some(colors),
        } => {
            let colors = positive_colors(colors)?;
            let x = expr::parse(&expr, colors)?.to_sym(colors)?;
            line(x.omega()?.convert(basis.into())?.to_string())
        }
        Command::Omega {
            expr,
            lattice,
            basis,
            minus_basis,
            colors: None,
        } => {
            let lattice = lattice.load()?;
            let spec = double_spec(&lattice)?;
            let x = expr::parse(&expr, lattice.rank())?.to_double(&spec)?;
            line(render_double(&x.omega(), basis, minus_basis, false)?)
        }
        Command::Coproduct { expr, colors } => {
            let colors = positive_colors(colors)?;
            let x = expr::parse(&expr, colors)?.to_sym(colors)?;
            line(x.coproduct()?.to_string())
        }
        Command::Pair {
            x,
            y,
            lattice,
            q1,
            recursive,
        } => {
            let lattice = lattice.load()?;
            let spec = PairingSpec::from_lattice(&lattice, DEFAULT_DEGREE_BOUND)?;
            let colors = lattice.rank();
            let x = expr::parse(&x, colors)?.to_sym(colors)?;
            let y = expr::parse(&y, colors)?.to_sym(colors)?;
            let value = if recursive {
                pair_recursive(&x, &y, &spec)?
            } else {
                pair(&x, &y, &spec)?
            };
            line(render_scalar(&value, q1))
        }
        Command::Qdim {
            chi,
            power,
            kind,
            series,
        } => {
            let v = GradedVS::from_quantum_int(chi);
            let kind = match kind {
                KindArg::Sym => PowerKind::Sym,
                KindArg::Ext => PowerKind::Ext,
            };
            let value = if series {
                power_series(&v, power, kind).swap_remove(power as usize)
            } else if kind == PowerKind::Sym {
                qdim_sym_power(&v, power)
            } else {
                qdim_ext_power(&v, power)
            };
            line(value.to_string())
        }
        Command::Convert { expr, to, colors } => {
            let colors = positive_colors(colors)?;
            let x = expr::parse(&expr, colors)?.to_sym(colors)?;
            line(x.convert(to.into())?.to_string())
        }
        Command::Verify {
            lattice,
            max,
            which,
            q1,
        } => {
            let double = LatticeDouble::new(lattice.load()?)?;
            let theorems: Vec<Theorem> = match which {
                WhichArg::Hh => vec![Theorem::Hh],
                WhichArg::Eh => vec![Theorem::Eh],
                WhichArg::Ee => vec![Theorem::Ee],
                WhichArg::He => vec![Theorem::He],
                WhichArg::All => Theorem::ALL.to_vec(),
            };
            let report = if q1 {
                double.verify_at_one(max, &theorems)?
            } else {
                double.verify(max, &theorems)?
            };
            Ok((if report.passed() { 0 } else { 1 }, format!("{report}\n")))
        }
        Command::Rhs {
            lattice,
            which,
            m,
            n,
            i,
            j,
        } => {
            let theorem = Theorem::from(which);
            let rhs = LatticeDouble::new(lattice.load()?)?.rhs(theorem, m, n, i, j)?;
            let (minus, plus) = theorem.families();
            line(rhs.readout(plus, minus)?.to_string())
        }
        Command::Integrality { lattice, max } => {
            let report = LatticeDouble::new(lattice.load()?)?.integrality_scan(max)?;
            Ok((if report.passed() { 0 } else { 1 }, format!("{report}\n")))
        }
        Command::SeriesCheck { bound } => {
            let mut out = String::new();
            let mut ok = true;
            for check in [series_check_h(bound)?, series_check_eh(bound)?] {
                ok &= check.passed();
                match check.first_failure {
                    None => out.push_str(&format!(
                        "{}: ok through degree {}\n",
                        check.identity, check.bound
                    )),
                    Some(d) => out.push_str(&format!("{}: FAIL at degree {d}\n", check.identity)),
                }
            }
            Ok((if ok { 0 } else { 1 }, out))
        }
        Command::Partitions { n, colors } => {
            let colors = positive_colors(colors)?;
            let mut out = String::new();
            for label in multipartitions_of(n, colors)? {
                out.push_str(&label.to_string());
                out.push('\n');
            }
            Ok((0, out))
        }
    }
}
