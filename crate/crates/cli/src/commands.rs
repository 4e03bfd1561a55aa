use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use thiserror::Error;

use intdiff::action::{apply, fredholm, TruncationConfig, DEFAULT_CAP_MULTIPLIER};
use intdiff::b1::{sigma_n_apply, sigma_n_preimage_search};
use intdiff::endo::{compose, decompose_with, inner, torus, validate};
use intdiff::fmatrix::{det_one_plus, one_plus_mul};
use intdiff::iop::{centralizer_f_dim, pi, unit_inverse};
use intdiff::polyx::{polyx_divided_to_monomial, polyx_monomial_to_divided};
use intdiff::{sample, B1Elem, HPoly, IOp, Scalar};

use crate::expr::{eval, parse, Dialect, EvalError, MonomialPoly, ParseError, Target};
use crate::json::{self, FormatError};

/// Environment variable overriding the truncation cap multiplier.
pub const CAP_ENV: &str = "INTDIFF_TRUNCATION_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "intdiff",
    version,
    about = "Exact computations with polynomial integro-differential operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Canonical form of an expression.
    Normalize { expr: String },
    /// Image in the quotient by F.
    Pi { expr: String },
    /// F-degree of the F-part.
    Degf { expr: String },
    /// Determinant of an element 1 + f.
    Det { expr: String },
    /// Whether an element is a unit, with its inverse.
    IsUnit { expr: String },
    /// Index on K[x], with kernel and cokernel dimensions.
    Index { expr: String },
    /// Kernel on K[x] in the divided-power basis.
    Kernel { expr: String },
    /// Apply an operator to a polynomial written in x, e.g. "1 + x^2/2".
    Apply { expr: String, poly: String },
    /// Dimension of the centralizer inside span{e(i,j) : i, j <= N}.
    CentralizerDim { expr: String, n: usize },
    /// Check the defining relations for an endomorphism file.
    CheckEndo { file: PathBuf },
    /// Split an automorphism into a torus part and an inner part.
    Decompose { file: PathBuf },
    /// Apply sigma_n (H -> H/n, D -> D^n) to a quotient-algebra expression.
    SigmaN { n: u32, expr: String },
    /// Search for a preimage under sigma_n with exponents and degrees <= D.
    SigmaNPreimage { n: u32, expr: String, d: u32 },
    /// Seeded random self-checks.
    Fuzz {
        target: FuzzTarget,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FuzzTarget {
    Assoc,
    Det,
    Index,
    Sigma,
    Decompose,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Domain(#[from] intdiff::Error),
    #[error("{0}")]
    FuzzFailure(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(ParseError::Syntax { .. }) => "SyntaxError",
            CliError::Parse(ParseError::Dialect { .. }) => "DialectError",
            CliError::Eval(_) => "UnsupportedSymbol",
            CliError::Format(_) => "FormatError",
            CliError::Io { .. } => "IoError",
            CliError::InvalidArgument(_) => "InvalidArgument",
            CliError::Domain(e) => e.kind(),
            CliError::FuzzFailure(_) => "FuzzFailure",
        }
    }

    /// 1 for mathematical failures, 2 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::FuzzFailure(_) => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("error".into(), json!(self.kind()));
        m.insert("detail".into(), json!(self.to_string()));
        Value::Object(m)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Truncation policy from [`CAP_ENV`], if set.
pub fn truncation_config(var: Option<&str>) -> CliResult<TruncationConfig> {
    let Some(raw) = var else {
        return Ok(TruncationConfig::default());
    };
    match raw.trim().parse::<usize>() {
        Ok(m) if m >= 1 => Ok(TruncationConfig { cap_multiplier: m }),
        _ => Err(CliError::InvalidArgument(format!(
            "{CAP_ENV} must be a positive integer (default {DEFAULT_CAP_MULTIPLIER}), got {raw:?}"
        ))),
    }
}

fn expr<T: Target>(src: &str, dialect: Dialect) -> CliResult<T> {
    Ok(eval(&parse(src, dialect)?)?)
}

fn op(src: &str) -> CliResult<IOp> {
    expr(src, Dialect::I1)
}

fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn read_json(path: &Path) -> CliResult<Value> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    };
    let text = std::fs::read_to_string(path).map_err(io)?;
    serde_json::from_str(&text).map_err(|e| FormatError(format!("{}: {e}", path.display())).into())
}

fn read_endo_file(path: &Path) -> CliResult<intdiff::Endo> {
    let (h, int, der) = json::read_endo(&read_json(path)?)?;
    Ok(validate(h, int, der)?)
}

fn one_plus_f(a: &IOp) -> CliResult<&intdiff::FMatrix> {
    let ok = a.towers().len() == 1 && a.tower_at(0) == Some(&HPoly::one());
    if ok {
        Ok(a.fpart())
    } else {
        Err(intdiff::Error::NotOnePlusF.into())
    }
}

/// Runs one command, producing the JSON printed on success.
pub fn run(cmd: &Command, cfg: &TruncationConfig) -> CliResult<Value> {
    Ok(match cmd {
        Command::Normalize { expr } => json::iop(&op(expr)?),
        Command::Pi { expr } => json::b1(&pi(&op(expr)?)),
        Command::Degf { expr } => object([("deg_f", json!(op(expr)?.fpart().deg_f()))]),
        Command::Det { expr } => {
            let a = op(expr)?;
            object([("det", json::scalar(&det_one_plus(one_plus_f(&a)?)))])
        }
        Command::IsUnit { expr } => {
            let inv = unit_inverse(&op(expr)?)?;
            object([("is_unit", json!(true)), ("inverse", json::iop(&inv))])
        }
        Command::Index { expr } => {
            let d = fredholm(&op(expr)?, cfg)?;
            object([
                ("index", json!(d.index)),
                ("kernel_dim", json!(d.kernel.len())),
                ("cokernel_dim", json!(d.cokernel_dim)),
            ])
        }
        Command::Kernel { expr } => {
            let d = fredholm(&op(expr)?, cfg)?;
            object([
                ("index", json!(d.index)),
                (
                    "kernel",
                    Value::Array(d.kernel.iter().map(json::polyx).collect()),
                ),
            ])
        }
        Command::Apply { expr, poly } => {
            let a = op(expr)?;
            let p: MonomialPoly = self::expr(poly, Dialect::I1)?;
            let out = apply(&a, &polyx_monomial_to_divided(p.0.coeffs()));
            let mono = HPoly::from_coeffs(polyx_divided_to_monomial(&out));
            object([
                ("result", json::polyx(&out)),
                ("monomial", json::hpoly(&mono)),
            ])
        }
        Command::CentralizerDim { expr, n } => {
            object([("dim", json!(centralizer_f_dim(&op(expr)?, *n)))])
        }
        Command::CheckEndo { file } => {
            read_endo_file(file)?;
            object([("valid", json!(true))])
        }
        Command::Decompose { file } => {
            let s = read_endo_file(file)?;
            json::decomposition(&decompose_with(&s, cfg)?)
        }
        Command::SigmaN { n, expr } => {
            if *n == 0 {
                return Err(CliError::InvalidArgument("n must be at least 1".into()));
            }
            let b: B1Elem = self::expr(expr, Dialect::B1)?;
            json::b1(&sigma_n_apply(*n, &b))
        }
        Command::SigmaNPreimage { n, expr, d } => {
            if *n < 2 {
                return Err(CliError::InvalidArgument("n must be at least 2".into()));
            }
            let b: B1Elem = self::expr(expr, Dialect::B1)?;
            let pre = sigma_n_preimage_search(*n, &b, *d);
            object([("preimage", pre.as_ref().map_or(Value::Null, json::b1))])
        }
        Command::Fuzz {
            target,
            seed,
            count,
        } => fuzz(*target, *seed, *count, cfg)?,
    })
}

/// Exit code and JSON for one command.
pub fn execute(cmd: &Command, cfg: &TruncationConfig) -> (i32, Value) {
    match run(cmd, cfg) {
        Ok(v) => (0, v),
        Err(e) => (e.exit_code(), e.to_json()),
    }
}

fn fuzz(target: FuzzTarget, seed: u64, count: usize, cfg: &TruncationConfig) -> CliResult<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fail = |case: usize, what: String| CliError::FuzzFailure(format!("case {case}: {what}"));
    for case in 0..count {
        match target {
            FuzzTarget::Assoc => {
                let [a, b, c] = [(); 3].map(|_| sample::iop(&mut rng, 3, 3, 3));
                if &(&a * &b) * &c != &a * &(&b * &c) {
                    return Err(fail(case, format!("({a}) ({b}) ({c}) is not associative")));
                }
            }
            FuzzTarget::Det => {
                let a = sample::fmatrix(&mut rng, 6, 10);
                let b = sample::fmatrix(&mut rng, 6, 10);
                if det_one_plus(&one_plus_mul(&a, &b)) != det_one_plus(&a) * det_one_plus(&b) {
                    return Err(fail(
                        case,
                        format!("det not multiplicative on {a:?}, {b:?}"),
                    ));
                }
            }
            FuzzTarget::Index => {
                let n = rng.gen_range(1..=4u32);
                let (a, want) = if rng.gen_bool(0.5) {
                    (IOp::der().pow(n), n as i64)
                } else {
                    (IOp::int().pow(n), -(n as i64))
                };
                let perturbed = &a + &IOp::from_f(sample::fmatrix(&mut rng, 4, 6));
                let got = fredholm(&perturbed, cfg)?.index;
                if got != want {
                    return Err(fail(
                        case,
                        format!("index({perturbed}) = {got}, expected {want}"),
                    ));
                }
            }
            FuzzTarget::Sigma => {
                let n = rng.gen_range(2..=3);
                let [a, b] = [(); 2].map(|_| {
                    B1Elem::from_components(
                        (0..3).map(|_| (rng.gen_range(-3..=3), sample::hpoly(&mut rng, 3))),
                    )
                });
                if sigma_n_apply(n, &(&a * &b)) != &sigma_n_apply(n, &a) * &sigma_n_apply(n, &b) {
                    return Err(fail(
                        case,
                        format!("sigma_{n} not multiplicative on {a}, {b}"),
                    ));
                }
            }
            FuzzTarget::Decompose => {
                let lam: Scalar = sample::nonzero_scalar(&mut rng);
                let block = rng.gen_range(1..=4);
                let u = sample::unit(&mut rng, block);
                let s = compose(&torus(&lam)?, &inner(&u)?)?;
                let d = decompose_with(&s, cfg)?;
                if d.nu != lam || d.u != u {
                    return Err(fail(
                        case,
                        format!("recovered ({}, {:?}) from ({lam}, {u:?})", d.nu, d.u),
                    ));
                }
            }
        }
    }
    Ok(object([
        ("target", json!(format!("{target:?}").to_lowercase())),
        ("seed", json!(seed)),
        ("cases", json!(count)),
    ]))
}
