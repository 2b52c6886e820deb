//! `slicereg`: JSON front end for the slicereg library.
//!
//! Every subcommand reads one JSON document from `--in FILE` or standard
//! input and writes one JSON document to standard output. Failures are
//! reported as `{"error": {"code", "message"}}` with exit code 2 for bad
//! input and domain errors, 3 for internal consistency failures.

mod input;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use slicereg::zeros::{zero_report_with_tol, ZERO_TOL};
use slicereg::{
    check_theorems_with, classify_singularity, corrupted_star_mul, default_radius, eval_via_transform,
    factor_at_sphere, from_pair, laurent_extract, pole_order_at, pole_report, reciprocal, regularity_residual,
    QLaurentPoly, QPoly, SemiRegular,
};

use input::{slice_unit, Around, AtPoint, Function, Pair, PolyAt, Probe, QuotientAt};

const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;
const DEFAULT_REGULAR_TOL: f64 = 1e-7;
const DEFAULT_STEP: f64 = 1e-5;

#[derive(Parser)]
#[command(
    name = "slicereg",
    version,
    about = "Slice regular quaternionic functions from the command line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Read the input document from FILE instead of standard input.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Tolerance; the default depends on the subcommand.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Truncation order of Laurent windows.
    #[arg(long, global = true, default_value_t = 10)]
    n: usize,
    /// Sampling radius for Laurent extraction.
    #[arg(long, global = true)]
    radius: Option<f64>,
    /// Trials per suite for check-theorems.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Runs the product formula suite against a corrupted star product.
    #[arg(long, global = true, hide = true)]
    corrupt_star: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Evaluate a function at a point: {"f", "q"}.
    Eval,
    /// Star product of two functions: {"f", "g"}.
    StarMul,
    /// Regular conjugate of a function.
    Conj,
    /// Symmetrization f * f^c of a polynomial.
    Symm,
    /// Regular reciprocal of a polynomial or quotient.
    Recip,
    /// Evaluate f^{-*} * g at q directly and through the transform: {"f", "g", "q"}.
    QuotEval,
    /// Zero report of a polynomial.
    Zeros,
    /// Multiplicities of a polynomial at a point: {"f", "p"}.
    Mult,
    /// Pole report of a quotient.
    Poles,
    /// Slice Laurent coefficients around a point: {"h", "center", "unit"?}.
    Laurent,
    /// Classify the singularity at a point: {"h", "center", "unit"?}.
    Classify,
    /// Cauchy-Riemann residual on a slice: {"h", "q", "unit"?, "step"?}.
    CheckRegular,
    /// Randomized structural checks; no input.
    CheckTheorems,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid input: {0}")]
    Input(#[from] serde_json::Error),
    #[error(transparent)]
    Domain(#[from] slicereg::Error),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Input(_) => "invalid_input",
            CliError::Domain(e) => e.code(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(e) if e.is_internal() => 3,
            _ => 2,
        }
    }
}

/// A finished run: the document to print and the exit code.
struct Outcome {
    doc: Value,
    code: u8,
}

impl Outcome {
    fn ok(v: impl Serialize) -> Result<Self, CliError> {
        Ok(Self {
            doc: serde_json::to_value(v)?,
            code: 0,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            return emit(
                &error_doc(&CliError::Usage(e.kind().to_string()), Some(e.to_string())),
                2,
            )
        }
    };
    match run(&cli) {
        Ok(out) => emit(&out.doc, out.code),
        Err(e) => emit(&error_doc(&e, None), e.exit_code()),
    }
}

fn error_doc(e: &CliError, detail: Option<String>) -> Value {
    let message = detail.map_or_else(|| e.to_string(), |d| d.trim_end().to_string());
    json!({ "error": { "code": e.code(), "message": message } })
}

fn emit(doc: &Value, code: u8) -> ExitCode {
    // serde_json prints floats as shortest round-trip decimals; a closed
    // reader is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{doc}");
    ExitCode::from(code)
}

fn read_input<T: DeserializeOwned>(cli: &Cli) -> Result<T, CliError> {
    let mut text = String::new();
    match &cli.input {
        Some(path) => text = std::fs::read_to_string(path)?,
        None => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(serde_json::from_str(&text)?)
}

fn need_poly(f: &Function, what: &str) -> Result<QPoly, CliError> {
    f.poly()
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("{what} expects a polynomial {{\"coeffs\": [...]}}")))
}

fn need_quotient(f: &Function, what: &str) -> Result<SemiRegular, CliError> {
    match f.to_quotient() {
        Some(h) => Ok(h?),
        None => Err(CliError::Usage(format!("{what} does not accept pointwise products"))),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Eval => {
            let AtPoint { f, q } = read_input(cli)?;
            Outcome::ok(json!({ "value": slicereg::QFunction::evaluate(&f, q)? }))
        }
        Command::StarMul => {
            let Pair { f, g } = read_input(cli)?;
            star_mul(&f, &g)
        }
        Command::Conj => match read_input::<Function>(cli)? {
            Function::Poly(f) => Outcome::ok(f.conj()),
            Function::Laurent(f) => Outcome::ok(f.conj()),
            // the denominator is real, so only the numerator changes
            Function::Quotient(h) => Outcome::ok(SemiRegular::new(h.den().clone(), h.num().conj())?),
            Function::Pointwise(_) => Err(CliError::Usage("conj does not accept pointwise products".into())),
        },
        Command::Symm => {
            let f = need_poly(&read_input(cli)?, "symm")?;
            Outcome::ok(f.symmetrize()?.to_qpoly())
        }
        Command::Recip => match read_input::<Function>(cli)? {
            Function::Poly(f) => Outcome::ok(reciprocal(&f)?),
            other => Outcome::ok(need_quotient(&other, "recip")?.inverse()?),
        },
        Command::QuotEval => {
            let QuotientAt { f, g, q } = read_input(cli)?;
            let h = from_pair(&f, &g)?;
            Outcome::ok(json!({
                "value": h.eval(q)?,
                "via_transform": eval_via_transform(&f, &g, q)?,
            }))
        }
        Command::Zeros => {
            let f = need_poly(&read_input(cli)?, "zeros")?;
            Outcome::ok(zero_report_with_tol(&f, cli.tol.unwrap_or(ZERO_TOL))?)
        }
        Command::Mult => {
            let PolyAt { f, p } = read_input(cli)?;
            let tol = cli.tol.unwrap_or(ZERO_TOL);
            let fac = factor_at_sphere(&f, p.sphere(), tol)?;
            let isolated = match fac.chain.first() {
                Some(first) if first.approx_eq(&p, tol.sqrt()) => fac.chain.len(),
                _ => 0,
            };
            Outcome::ok(json!({
                "point": p,
                "sphere": fac.sphere,
                "classical": f.classical_multiplicity(p, tol)?,
                "spherical": 2 * fac.central_power,
                "isolated": isolated,
                "chain": fac.chain,
            }))
        }
        Command::Poles => {
            let h = need_quotient(&read_input(cli)?, "poles")?;
            Outcome::ok(pole_report(&h)?)
        }
        Command::Laurent => {
            let Around { h, center, unit } = read_input(cli)?;
            let unit = slice_unit(center, unit);
            let radius = sampling_radius(cli, &h, center, unit)?;
            Outcome::ok(laurent_extract(&h, center, unit, radius, cli.n)?)
        }
        Command::Classify => {
            let Around { h, center, unit } = read_input(cli)?;
            let unit = slice_unit(center, unit);
            let radius = sampling_radius(cli, &h, center, unit)?;
            let e = laurent_extract(&h, center, unit, radius, cli.n)?;
            let class = classify_singularity(&e, cli.tol.unwrap_or(DEFAULT_CLASSIFY_TOL));
            let mut doc = serde_json::to_value(class)?;
            doc["radius"] = json!(radius);
            doc["n"] = json!(cli.n);
            if let Some(q) = h.to_quotient() {
                doc["pole_order"] = json!(pole_order_at(&q?, center)?);
            }
            Outcome::ok(doc)
        }
        Command::CheckRegular => {
            let Probe { h, q, unit, step } = read_input(cli)?;
            let tol = cli.tol.unwrap_or(DEFAULT_REGULAR_TOL);
            let r = regularity_residual(&h, q, slice_unit(q, unit), step.unwrap_or(DEFAULT_STEP))?;
            Outcome::ok(json!({ "residual": r, "regular": r <= tol }))
        }
        Command::CheckTheorems => {
            if cli.trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let star = if cli.corrupt_star {
                corrupted_star_mul
            } else {
                slicereg::star::star_mul
            };
            let rows = check_theorems_with(cli.seed, cli.trials, star)?;
            let pass = rows.iter().all(|r| r.pass);
            Ok(Outcome {
                doc: json!({ "seed": cli.seed, "trials": cli.trials, "pass": pass, "rows": rows }),
                code: if pass { 0 } else { 3 },
            })
        }
    }
}

fn sampling_radius(
    cli: &Cli,
    h: &Function,
    center: slicereg::Quaternion,
    unit: slicereg::ImaginaryUnit,
) -> Result<f64, CliError> {
    if let Some(r) = cli.radius {
        return Ok(r);
    }
    match h {
        Function::Quotient(q) => Ok(default_radius(q, center, unit)?),
        _ => Ok(1.0),
    }
}

fn star_mul(f: &Function, g: &Function) -> Result<Outcome, CliError> {
    let laurent = |f: &Function| match f {
        Function::Poly(p) => Some(QLaurentPoly::new(0, p.coeffs().to_vec())),
        Function::Laurent(l) => Some(l.clone()),
        _ => None,
    };
    match (f, g) {
        (Function::Poly(a), Function::Poly(b)) => Outcome::ok(a.star_mul(b)),
        (Function::Poly(_) | Function::Laurent(_), Function::Poly(_) | Function::Laurent(_)) => {
            let (a, b) = (laurent(f).expect("checked"), laurent(g).expect("checked"));
            Outcome::ok(a.star_mul(&b))
        }
        _ => {
            let (a, b) = (need_quotient(f, "star-mul")?, need_quotient(g, "star-mul")?);
            Outcome::ok(a.star_mul(&b)?)
        }
    }
}
