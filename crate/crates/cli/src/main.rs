use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use s3c_core::basis::normalization_square;
use s3c_core::cocycle::{cocycle, cocycle_matrix};
use s3c_core::current::{make_sl, weight_of};
use s3c_core::frontend::{self, eval, expand_value, parse, render, Context, Expr, Format, FrontendError, Value};
use s3c_core::verify::{run_suite, Config, SUITES};

#[derive(Parser)]
#[command(name = "s3c", version, about = "Exact spinor and current algebra calculator on the 3-sphere")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutFormat::Text)]
    format: OutFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Matrix size for tensor, ak and nder.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Expand a spinor in the unnormalized harmonic basis.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Also print squared coefficients against the orthonormal basis.
        #[arg(long)]
        normalized: bool,
    },
    /// Evaluate the cocycle c_k on two spinors or two matrices.
    Cocycle {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        k: u8,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Bracket of two expressions.
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Weight of a matrix-valued expression under the extended Cartan.
    Weight {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        n: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Seed for the randomized checks; S3C_SEED takes precedence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FrontendError> for Failure {
    fn from(e: FrontendError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<s3c_core::Error> for Failure {
    fn from(e: s3c_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// `S3C_SEED`, when set, wins over `--seed`.
fn resolve_seed(env: Option<String>, flag: u64) -> Result<u64, Failure> {
    match env {
        Some(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| Failure::Usage(format!("S3C_SEED must be an unsigned integer, got '{s}'"))),
        None => Ok(flag),
    }
}

fn evaluate(text: &str, n: usize) -> Result<Value, Failure> {
    Ok(frontend::eval_str(text, n)?)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let format: Format = cli.format.into();
    match cli.command {
        Command::Eval { expr, n } => {
            writeln!(out, "{}", render(&evaluate(&expr, n)?, format))?;
        }
        Command::Expand { expr, normalized } => {
            let exp = expand_value(&evaluate(&expr, 2)?)?;
            let squares = exp.normalized_squares();
            match format {
                Format::Json if !normalized => writeln!(out, "{}", exp.to_json())?,
                Format::Json => {
                    let rows: Vec<_> = exp
                        .coeffs
                        .iter()
                        .map(|(idx, c)| {
                            json!({
                                "index": idx.to_json(),
                                "coefficient": c.to_string(),
                                "c": normalization_square(*idx).to_string(),
                                "normalized_square": squares[idx].to_string(),
                            })
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::Value::Array(rows))?;
                }
                Format::Text => {
                    if exp.coeffs.is_empty() {
                        writeln!(out, "0")?;
                    }
                    for (idx, c) in &exp.coeffs {
                        if normalized {
                            writeln!(out, 
                                "{idx}: {c}    c = {}    |coefficient|^2 / c = {}",
                                normalization_square(*idx),
                                squares[idx]
                            )?;
                        } else {
                            writeln!(out, "{idx}: {c}")?;
                        }
                    }
                }
            }
        }
        Command::Cocycle { k, lhs, rhs, n } => {
            let value = match (evaluate(&lhs, n)?, evaluate(&rhs, n)?) {
                (Value::Spinor(a), Value::Spinor(b)) => cocycle(k, &a, &b)?,
                (Value::Current(a), Value::Current(b)) => cocycle_matrix(k, &a, &b)?,
                (a, b) => {
                    return Err(Failure::Usage(format!(
                        "cocycle needs two spinors or two current elements, got {} and {}",
                        a.kind(),
                        b.kind()
                    )))
                }
            };
            writeln!(out, "{}", render(&Value::Scalar(value), format))?;
        }
        Command::Bracket { lhs, rhs, n } => {
            let e = Expr::Bracket(Box::new(parse(&lhs)?), Box::new(parse(&rhs)?));
            writeln!(out, "{}", render(&eval(&e, &Context::new(n))?, format))?;
        }
        Command::Weight { expr, n } => {
            let alg = make_sl(n)?;
            let x = match evaluate(&expr, n)? {
                Value::Current(c) => s3c_core::ExtendedElement::from_current(c),
                Value::Extended(x) => x,
                other => {
                    return Err(Failure::Usage(format!("weight needs a matrix-valued expression, got {}", other.kind())))
                }
            };
            let w = weight_of(&x, &alg)?;
            match (format, w) {
                (Format::Json, Some(w)) => writeln!(out, "{}", w.to_json())?,
                (Format::Json, None) => writeln!(out, "{}", json!(null))?,
                (Format::Text, Some(w)) => writeln!(out, "{w}")?,
                (Format::Text, None) => writeln!(out, "not a weight vector")?,
            }
        }
        Command::Verify {
            suite,
            seed,
            max_degree,
            report,
        } => {
            let seed = resolve_seed(std::env::var("S3C_SEED").ok(), seed)?;
            let rep = run_suite(&suite, &Config { seed, max_degree })?;
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&rep.to_json()).expect("report serializes");
                std::fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            match format {
                Format::Json => writeln!(out, "{}", rep.to_json())?,
                Format::Text => {
                    for c in &rep.cases {
                        writeln!(out, "{:<18} {}", c.status.as_str(), c.name)?;
                        if c.status != s3c_core::Status::Pass {
                            writeln!(out, "    computed: {}", c.computed)?;
                            writeln!(out, "    claimed:  {}", c.claimed)?;
                        }
                    }
                    writeln!(out, 
                        "suite {}: {} passed, {} failed, {} report-only mismatches",
                        rep.suite,
                        rep.passed(),
                        rep.failed(),
                        rep.mismatches()
                    )?;
                }
            }
            if !rep.ok() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

/// Runs one invocation and returns the process exit code.
fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn main() -> ExitCode {
    let code = execute(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
