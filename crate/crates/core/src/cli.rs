//! The `algint` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{Algebra, AlgebraElement};
use crate::catalog::{standard_entries, CatalogName};
use crate::conjugation::{CMatrix, PickPolicy};
use crate::error::AlgebraError;
use crate::io::{read_algebra, read_matrix, InputError};
use crate::matrix::SquareMatrix;
use crate::pipeline::{self, CSource, Report};
use crate::scalar::{Field, Scalar};

const AFTER_HELP: &str = "\
Catalog entries: matrix:N, grassmann:1, paragrassmann:P, quaternions, cyclic:N, torus:N.
The algebra over the circle is represented by its finite quotients cyclic:N.

Exit status: 0 when every check passes, 1 when a check fails, 2 on input errors.";

#[derive(Parser, Debug)]
#[command(name = "algint", version, about = "Exact integration on finite-dimensional associative algebras")]
#[command(after_help = AFTER_HELP)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the invertible-C search.
    #[arg(long, global = true, default_value_t = PickPolicy::default().seed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Source {
    /// Builtin algebra, e.g. `matrix:2`.
    #[arg(long, conflicts_with_all = ["algebra", "file"])]
    catalog: Option<String>,
    /// Algebra JSON file.
    #[arg(long, conflicts_with = "file")]
    algebra: Option<PathBuf>,
    /// Algebra JSON file (same as --algebra).
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
    /// C matrix JSON file; defaults to the catalog's C or the solver's pick.
    #[arg(long)]
    c: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Associativity, identity, self-conjugacy, completeness and involution checks.
    Check(Source),
    /// The space of C matrices and the chosen member.
    Cmatrix(Source),
    /// Integrate an element given by its coefficients.
    Integrate {
        #[command(flatten)]
        source: Source,
        /// Comma-separated coefficients over the algebra's basis.
        #[arg(long)]
        coeffs: String,
    },
    /// Basis of the derivation space and the inner-derivation rank.
    Derivations(Source),
    /// Integration by parts for a derivation.
    Ibp {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        derivation: DerivationArgs,
    },
    /// The three equivalent invariance conditions for a derivation.
    Theorem {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        derivation: DerivationArgs,
    },
    /// Trace-path and direct-path integrals on the paragrassmann algebra G_p.
    Paragrassmann {
        #[arg(long)]
        p: usize,
        /// Coefficients of 1, θ, …, θ^p.
        #[arg(long)]
        coeffs: String,
        /// Projector column k: integrates θ^(k-1)·f.
        #[arg(long, default_value_t = 1)]
        shift: usize,
    },
    /// Golden checks of the builtin algebras against their expected properties.
    Catalog {
        /// Single entry; all standard entries when omitted.
        #[arg(long)]
        catalog: Option<String>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct DerivationArgs {
    /// Inner derivation of the basis element with this index.
    #[arg(long)]
    generator: Option<usize>,
    /// Inner derivation of an element given by comma-separated coefficients.
    #[arg(long)]
    element: Option<String>,
    /// Derivation matrix JSON file, rows are images of basis elements.
    #[arg(long)]
    d: Option<PathBuf>,
}

/// Splits on commas outside brackets, so cyclotomic scalars `[a,b]` survive.
fn split_list(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

pub fn parse_coeffs(s: &str, field: &Field) -> Result<Vec<Scalar>, AlgebraError> {
    split_list(s)
        .into_iter()
        .map(|p| Scalar::parse(p, field).map_err(AlgebraError::from))
        .collect()
}

fn parse_element(s: &str, algebra: &Algebra) -> Result<AlgebraElement, AlgebraError> {
    let a = AlgebraElement::new(parse_coeffs(s, algebra.field())?);
    algebra.check_element(&a)?;
    Ok(a)
}

struct Loaded {
    algebra: Algebra,
    c: Option<(CMatrix, CSource)>,
}

fn load(source: &Source) -> Result<Loaded, InputError> {
    let (algebra, pinned) = match (&source.catalog, source.algebra.as_ref().or(source.file.as_ref())) {
        (Some(name), _) => {
            let entry = name.parse::<CatalogName>()?.build()?;
            (entry.algebra, entry.pinned_c)
        }
        (None, Some(path)) => (read_algebra(path)?, None),
        (None, None) => {
            return Err(AlgebraError::InvalidParameter("give --catalog, --algebra or a file".into()).into())
        }
    };
    let c = match &source.c {
        Some(path) => {
            let m = read_matrix(path, algebra.field())?;
            if m.dim() != algebra.dim() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: algebra.dim(),
                    got: m.dim(),
                }
                .into());
            }
            Some((CMatrix::new(m)?, CSource::Supplied))
        }
        None => pinned.map(|c| (c, CSource::Pinned)),
    };
    Ok(Loaded { algebra, c })
}

fn derivation_matrix(args: &DerivationArgs, algebra: &Algebra) -> Result<SquareMatrix, InputError> {
    if let Some(path) = &args.d {
        let d = read_matrix(path, algebra.field())?;
        if d.dim() != algebra.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: algebra.dim(),
                got: d.dim(),
            }
            .into());
        }
        return Ok(d);
    }
    let a = match (&args.generator, &args.element) {
        (Some(i), _) => {
            if *i >= algebra.dim() {
                return Err(AlgebraError::IndexOutOfRange {
                    index: *i,
                    dim: algebra.dim(),
                }
                .into());
            }
            AlgebraElement::basis(algebra.dim(), algebra.field(), *i)
        }
        (None, Some(s)) => parse_element(s, algebra)?,
        (None, None) => unreachable!("clap requires one derivation source"),
    };
    Ok(pipeline::inner_matrix(algebra, &a)?)
}

/// Output of one invocation: the report and whether to print only the result value.
fn execute(cli: &Cli) -> Result<(Report, bool), InputError> {
    let policy = PickPolicy {
        seed: cli.seed,
        ..PickPolicy::default()
    };
    Ok(match &cli.command {
        Command::Check(source) => {
            let l = load(source)?;
            (pipeline::check(&l.algebra, l.c, &policy), false)
        }
        Command::Cmatrix(source) => {
            let l = load(source)?;
            (pipeline::cmatrix(&l.algebra, l.c, &policy), false)
        }
        Command::Integrate { source, coeffs } => {
            let l = load(source)?;
            let f = parse_element(coeffs, &l.algebra)?;
            (pipeline::integrate(&l.algebra, l.c, &policy, &f)?, true)
        }
        Command::Derivations(source) => {
            let l = load(source)?;
            (pipeline::derivations(&l.algebra), false)
        }
        Command::Ibp { source, derivation } => {
            let l = load(source)?;
            let d = derivation_matrix(derivation, &l.algebra)?;
            (pipeline::ibp(&l.algebra, l.c, &policy, &d)?, false)
        }
        Command::Theorem { source, derivation } => {
            let l = load(source)?;
            let d = derivation_matrix(derivation, &l.algebra)?;
            (pipeline::theorem(&l.algebra, l.c, &policy, &d)?, false)
        }
        Command::Paragrassmann { p, coeffs, shift } => {
            let coeffs = parse_coeffs(coeffs, &Field::Rational)?;
            (pipeline::paragrassmann_integral(*p, &coeffs, *shift)?, false)
        }
        Command::Catalog { catalog } => {
            let names = match catalog {
                Some(name) => vec![name.parse::<CatalogName>()?],
                None => standard_entries(),
            };
            (pipeline::check_catalog(&names, &policy)?, false)
        }
    })
}

/// Runs the command line with explicit output streams and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let (report, value_only) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let written = if cli.json {
        writeln!(out, "{}", report.to_json())
    } else if value_only && report.passes() {
        let value = report.result.as_ref().and_then(|v| v.as_str()).unwrap_or_default();
        writeln!(out, "{value}")
    } else {
        write!(out, "{}", report.to_text())
    };
    if written.is_err() {
        return 2;
    }
    if report.passes() {
        0
    } else {
        1
    }
}

/// Entry point used by the `algint` binary.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}
