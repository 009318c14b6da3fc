//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or input error,
//! 3 numerical failure.

mod json;

pub use json::{
    decomposition_from_json, decomposition_to_json, measure_from_json, measure_to_json,
    samples_from_json, series_from_json, series_to_json, shift_fit_to_json, FormatError,
};

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::dirichlet::{
    eval_truncated, recover_shift_coefficients, zeta_shift_g, GeneralizedDirichletSeries,
};
use crate::measures::{decompose_prony, fourier_measure};
use crate::specfun::{chi, hurwitz_zeta, lerch_sum, periodic_zeta, riemann_zeta};
use crate::tde::{tde_f, tde_g};
use crate::verify::{run_suite, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dirichlet-fe",
    version,
    about = "Functional-equation toolkit for Dirichlet series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    Chi,
    Zeta,
    Hurwitz,
    Periodic,
    Lerch,
    TdeF,
    TdeG,
    Gk,
    /// Finite generalized Dirichlet series read from `--series`
    Series,
}

#[derive(Debug, clap::Args)]
struct FunctionArgs {
    #[arg(long = "fn", value_enum)]
    function: Function,
    /// Hurwitz offset
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    e: Option<f64>,
    /// Shift index for `gk`
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i32>,
    /// Series JSON for `series`
    #[arg(long)]
    series: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function at one point
    Eval {
        #[command(flatten)]
        function: FunctionArgs,
        /// Argument as RE,IM (or RE)
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
    },
    /// Run a verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Decompose a measure into T(d,e) terms
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier transform of a decomposition
    Fourier {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit samples of g by a combination of the g_k, k_min <= k <= k_max
    FitShifts {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "k-min", allow_hyphen_values = true)]
        k_min: i32,
        #[arg(long = "k-max", allow_hyphen_values = true)]
        k_max: i32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a function on the real axis as CSV
    Table {
        #[command(flatten)]
        function: FunctionArgs,
        /// A:B:STEP
        #[arg(long = "sigma-range", allow_hyphen_values = true, value_parser = parse_range)]
        sigma_range: (f64, f64, f64),
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected RE,IM, got `{text}`")),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err("components must be finite".into())
    }
}

fn parse_range(text: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match *parts.as_slice() {
        [a, b, step] if step > 0.0 && b >= a && [a, b, step].iter().all(|v| v.is_finite()) => {
            Ok((a, b, step))
        }
        [_, _, _] => Err("need A <= B and STEP > 0".into()),
        _ => Err(format!("expected A:B:STEP, got `{text}`")),
    }
}

fn unsigned_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// `1+0i`, `-0.5-2i`, ...
pub fn format_complex(z: Complex64) -> String {
    let (re, im) = (unsigned_zero(z.re), unsigned_zero(z.im));
    if im.is_sign_negative() {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

enum Failure {
    Usage(String),
    Numeric(crate::Error),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn require<T>(value: Option<T>, flag: &str, function: Function) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--fn {function:?} needs --{flag}").to_lowercase()))
}

fn load_series(args: &FunctionArgs) -> Result<Option<GeneralizedDirichletSeries>, Failure> {
    match (args.function, &args.series) {
        (Function::Series, Some(path)) => Ok(Some(series_from_json(&read(path)?)?)),
        (Function::Series, None) => Err(Failure::Usage("--fn series needs --series".into())),
        _ => Ok(None),
    }
}

fn evaluate(
    args: &FunctionArgs,
    series: Option<&GeneralizedDirichletSeries>,
    s: Complex64,
) -> Result<Complex64, Failure> {
    let f = args.function;
    Ok(match f {
        Function::Chi => chi(s)?,
        Function::Zeta => riemann_zeta(s)?,
        Function::Hurwitz => hurwitz_zeta(s, require(args.a, "a", f)?)?,
        Function::Periodic => periodic_zeta(require(args.e, "e", f)?, s)?,
        Function::Lerch => lerch_sum(require(args.d, "d", f)?, require(args.e, "e", f)?, s)?,
        Function::TdeF => tde_f(require(args.d, "d", f)?, require(args.e, "e", f)?, s)?,
        Function::TdeG => tde_g(require(args.d, "d", f)?, require(args.e, "e", f)?, s)?,
        Function::Gk => zeta_shift_g(require(args.k, "k", f)?, s)?,
        Function::Series => eval_truncated(require(series, "series", f)?, s),
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{}", text.trim_end()).map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Eval { function, s } => {
            let series = load_series(&function)?;
            println!(
                "{}",
                format_complex(evaluate(&function, series.as_ref(), s)?)
            );
            Ok(EXIT_OK)
        }
        Command::Verify { suite, seed, json } => {
            if !SUITES.iter().any(|&(name, _)| name == suite) {
                let names: Vec<&str> = SUITES.iter().map(|p| p.0).collect();
                return Err(Failure::Usage(format!(
                    "unknown suite `{suite}` (expected one of: {})",
                    names.join(", ")
                )));
            }
            let report = run_suite(&suite, seed)?;
            println!("{report}");
            if let Some(path) = json {
                emit(Some(&path), &report.to_json())?;
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Decompose { input, window, out } => {
            let measure = measure_from_json(&read(&input)?)?;
            let dec = decompose_prony(&measure, window)?;
            emit(out.as_deref(), &decomposition_to_json(&dec))?;
            Ok(EXIT_OK)
        }
        Command::Fourier { input, out } => {
            let dec = decomposition_from_json(&read(&input)?)?;
            emit(
                out.as_deref(),
                &decomposition_to_json(&fourier_measure(&dec)),
            )?;
            Ok(EXIT_OK)
        }
        Command::FitShifts {
            input,
            k_min,
            k_max,
            out,
        } => {
            let samples = samples_from_json(&read(&input)?)?;
            let fit = recover_shift_coefficients(&samples, k_min, k_max)?;
            emit(out.as_deref(), &shift_fit_to_json(&fit))?;
            Ok(EXIT_OK)
        }
        Command::Table {
            function,
            sigma_range: (a, b, step),
            csv,
        } => {
            let series = load_series(&function)?;
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            let mut text = String::from("sigma,re,im\n");
            for i in 0..count {
                let sigma = a + step * i as f64;
                let v = evaluate(&function, series.as_ref(), Complex64::new(sigma, 0.0))?;
                text.push_str(&format!(
                    "{},{},{}\n",
                    unsigned_zero(sigma),
                    unsigned_zero(v.re),
                    unsigned_zero(v.im)
                ));
            }
            emit(csv.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e}");
            EXIT_NUMERIC
        }
    }
}
