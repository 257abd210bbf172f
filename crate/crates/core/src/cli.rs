//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or configuration error, 2 engine invariant
//! violation, 3 oracle mismatch.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::engine::{self, InitVariant, Options, Sequence};
use crate::field::{Field, Scalar};
use crate::lfsr::Recurrence;
use crate::oracle::{Oracle, DEFAULT_BUDGET};
use crate::poly::{parse_scalar, Poly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    EmptyInput,
    #[error("token {position} (`{token}`): {reason}")]
    BadToken {
        position: usize,
        token: String,
        reason: String,
    },
}

/// Parses a sequence: integers separated by commas and/or whitespace, `a/b`
/// fractions over the rationals, or a bare bitstring such as `0110` over GF(2).
/// A lone token of two or more binary digits over GF(2) is read as a bitstring.
pub fn parse_sequence(text: &str, field: Field) -> Result<Sequence, ParseError> {
    let tokens: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    if field == Field::gf2()
        && tokens.len() == 1
        && tokens[0].len() > 1
        && tokens[0].bytes().all(|b| b == b'0' || b == b'1')
    {
        let terms = tokens[0]
            .bytes()
            .map(|b| Scalar::from_integer((b - b'0') as i64, field))
            .collect();
        return Ok(Sequence::new(field, terms).expect("terms built in the field"));
    }
    let terms = tokens
        .iter()
        .enumerate()
        .map(|(k, t)| {
            parse_scalar(t, field).map_err(|reason| ParseError::BadToken {
                position: k + 1,
                token: t.to_string(),
                reason,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sequence::new(field, terms).expect("terms built in the field"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Minpoly,
    Profile,
    Trace,
    Massey,
    OracleCheck,
    Extend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    B0,
    B1,
}

impl From<VariantArg> for InitVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::B0 => InitVariant::BZero,
            VariantArg::B1 => InitVariant::BOne,
        }
    }
}

/// Minimal polynomials, linear-complexity profiles and LFSR extension of
/// finite sequences over GF(2), GF(p) or the rationals.
#[derive(Debug, Parser)]
#[command(name = "minpoly", version)]
pub struct Args {
    /// Coefficient field: `gf2`, `gf:<p>` or `q`.
    #[arg(long)]
    pub field: String,
    /// Initial value of B: `b0` (B = 0) or `b1` (B = 1).
    #[arg(long, value_enum, default_value = "b0")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "minpoly")]
    pub mode: Mode,
    /// Read the sequence from this file instead of standard input.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Monic characteristic polynomial for `extend`, e.g. `x^2 + x + 1`.
    #[arg(long)]
    pub poly: Option<String>,
    /// Number of terms `extend` appends to the seed.
    #[arg(long)]
    pub count: Option<usize>,
    /// With `oracle-check`: check every sequence of length 1..=N instead of
    /// reading one.
    #[arg(long, value_name = "N")]
    pub exhaustive: Option<usize>,
    /// Candidate budget for the brute-force oracle.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Stdin,
    Path(PathBuf),
    Text(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub field: Field,
    pub variant: InitVariant,
    pub mode: Mode,
    pub input: Input,
    pub format: Format,
    /// `extend` only
    pub poly: Option<Poly>,
    /// `extend` only
    pub count: Option<usize>,
    /// `oracle-check` only
    pub exhaustive: Option<usize>,
    pub budget: u64,
}

impl RunConfig {
    pub fn new(field: Field, mode: Mode, input: Input) -> RunConfig {
        RunConfig {
            field,
            variant: InitVariant::BZero,
            mode,
            input,
            format: Format::Text,
            poly: None,
            count: None,
            exhaustive: None,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Validates flag combinations.
    pub fn from_args(args: Args) -> Result<RunConfig, String> {
        let field: Field = args.field.parse().map_err(|e| format!("--field: {e}"))?;
        let poly = match &args.poly {
            Some(text) => Some(Poly::parse(text, field).map_err(|e| format!("--poly: {e}"))?),
            None => None,
        };
        if args.mode == Mode::Extend && (poly.is_none() || args.count.is_none()) {
            return Err("extend requires --poly and --count".into());
        }
        if args.mode == Mode::OracleCheck && !field.is_finite() {
            return Err("oracle-check requires a finite field".into());
        }
        if args.exhaustive.is_some() && args.mode != Mode::OracleCheck {
            return Err("--exhaustive only applies to oracle-check".into());
        }
        Ok(RunConfig {
            field,
            variant: args.variant.into(),
            mode: args.mode,
            input: args.input.map_or(Input::Stdin, Input::Path),
            format: if args.json { Format::Json } else { Format::Text },
            poly,
            count: args.count,
            exhaustive: args.exhaustive,
            budget: args.budget,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Outcome {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn read_input(input: &Input) -> Result<String, String> {
    match input {
        Input::Text(t) => Ok(t.clone()),
        Input::Path(p) => {
            std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))
        }
        Input::Stdin => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(buf)
        }
    }
}

fn poly_json(field: Field, n: usize, p: &Poly) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("field".into(), json!(field.to_string()));
    m.insert("n".into(), json!(n));
    m.insert(
        "degree".into(),
        p.degree().finite().map_or(Value::Null, |d| json!(d)),
    );
    m.insert("coeffs".into(), p.coeffs_json());
    m
}

fn render_json(m: serde_json::Map<String, Value>) -> String {
    let mut s = Value::Object(m).to_string();
    s.push('\n');
    s
}

pub fn run(config: &RunConfig) -> Outcome {
    if config.mode == Mode::OracleCheck {
        if let Some(max_len) = config.exhaustive {
            return exhaustive_check(config, max_len);
        }
    }
    let text = match read_input(&config.input) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_CONFIG, e),
    };
    let s = match parse_sequence(&text, config.field) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_CONFIG, format!("cannot parse sequence: {e}")),
    };
    match config.mode {
        Mode::Extend => extend(config, &s),
        Mode::OracleCheck => oracle_check(config, &s),
        _ => analyze(config, &s),
    }
}

fn analyze(config: &RunConfig, s: &Sequence) -> Outcome {
    let run = match engine::run(s, Options::for_field(s.field(), config.variant)) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_INTERNAL, format!("internal error: {e}")),
    };
    let c = run.minimal_polynomial();
    let json = config.format == Format::Json;
    let mut out = String::new();
    match config.mode {
        Mode::Minpoly => {
            if json {
                out = render_json(poly_json(config.field, s.len(), &c));
            } else {
                writeln!(out, "{c}").unwrap();
            }
        }
        Mode::Profile => {
            let profile = run.profile();
            if json {
                let mut m = poly_json(config.field, s.len(), &c);
                let entries = profile
                    .iter()
                    .map(|p| json!({"i": p.i, "L": p.linear_complexity, "c": p.discrepancy.to_json()}))
                    .collect();
                m.insert("profile".into(), Value::Array(entries));
                out = render_json(m);
            } else {
                for p in &profile {
                    writeln!(out, "i={} L={} c={}", p.i, p.linear_complexity, p.discrepancy)
                        .unwrap();
                }
            }
        }
        Mode::Trace => {
            let trace = run.trace();
            if json {
                let mut m = poly_json(config.field, s.len(), &c);
                let entries = trace
                    .iter()
                    .map(|t| {
                        json!({
                            "i": t.i,
                            "c": t.discrepancy.to_json(),
                            "e_before": t.e_before,
                            "e": t.e_after,
                            "L": t.degree,
                            "C": t.poly.to_string(),
                            "B": t.prev_poly.to_string(),
                            "b": t.prev_disc.to_json(),
                        })
                    })
                    .collect();
                m.insert("trace".into(), Value::Array(entries));
                out = render_json(m);
            } else {
                for t in &trace {
                    writeln!(out, "{t}").unwrap();
                }
            }
        }
        Mode::Massey => {
            let feedback = match c.reciprocal() {
                Ok(f) => f,
                Err(e) => return Outcome::fail(EXIT_INTERNAL, format!("internal error: {e}")),
            };
            let l = run.linear_complexity();
            if json {
                let mut m = poly_json(config.field, s.len(), &feedback);
                m.insert("L".into(), json!(l));
                out = render_json(m);
            } else {
                writeln!(out, "F={feedback}\nL={l}").unwrap();
            }
        }
        Mode::OracleCheck | Mode::Extend => unreachable!(),
    }
    Outcome::ok(out)
}

fn extend(config: &RunConfig, seed: &Sequence) -> Outcome {
    let poly = config.poly.clone().expect("validated by RunConfig");
    let count = config.count.expect("validated by RunConfig");
    let rec = match Recurrence::new(poly, seed.terms().to_vec()) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_CONFIG, format!("extend: {e}")),
    };
    let out = rec.extend(count);
    if config.format == Format::Json {
        let mut m = poly_json(config.field, out.len(), rec.poly());
        m.insert(
            "sequence".into(),
            Value::Array(out.terms().iter().map(Scalar::to_json).collect()),
        );
        Outcome::ok(render_json(m))
    } else {
        Outcome::ok(format!("{out}\n"))
    }
}

enum Check {
    Member { poly: Poly, degree: usize, count: usize },
    Mismatch(String),
}

fn check_one(config: &RunConfig, oracle: &Oracle, s: &Sequence) -> Result<Check, Outcome> {
    let run = engine::run(s, Options::for_field(s.field(), config.variant))
        .map_err(|e| Outcome::fail(EXIT_INTERNAL, format!("internal error: {e}")))?;
    let c = run.minimal_polynomial();
    let truth = oracle
        .enumerate_minimal_polys(s)
        .map_err(|e| Outcome::fail(EXIT_CONFIG, format!("oracle: {e}")))?;
    let degree = truth.min_degree.finite().expect("oracle degrees are finite");
    if truth.contains(&c) && engine::is_characteristic(&c, s).unwrap_or(false) {
        Ok(Check::Member {
            poly: c,
            degree,
            count: truth.polys.len(),
        })
    } else {
        Ok(Check::Mismatch(format!(
            "mismatch on ({s}): engine gave {c} (degree {}), oracle minimal degree {degree}",
            c.degree()
        )))
    }
}

fn oracle_check(config: &RunConfig, s: &Sequence) -> Outcome {
    let oracle = Oracle::with_budget(config.budget);
    match check_one(config, &oracle, s) {
        Err(o) => o,
        Ok(Check::Mismatch(msg)) => Outcome {
            code: EXIT_MISMATCH,
            stdout: String::new(),
            stderr: format!("{msg}\n"),
        },
        Ok(Check::Member { poly, degree, count }) => {
            if config.format == Format::Json {
                let mut m = poly_json(config.field, s.len(), &poly);
                m.insert(
                    "oracle".into(),
                    json!({"min_degree": degree, "count": count, "member": true}),
                );
                Outcome::ok(render_json(m))
            } else {
                Outcome::ok(format!(
                    "ok: {poly} is one of {count} monic minimal polynomials of degree {degree}\n"
                ))
            }
        }
    }
}

fn exhaustive_check(config: &RunConfig, max_len: usize) -> Outcome {
    let oracle = Oracle::with_budget(config.budget);
    let q = config.field.order().expect("validated finite") as usize;
    let elements: Vec<Scalar> = config.field.elements().collect();
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for n in 1..=max_len {
        let total = match q.checked_pow(n as u32) {
            Some(t) => t,
            None => return Outcome::fail(EXIT_CONFIG, "--exhaustive: too many sequences"),
        };
        for index in 0..total {
            let mut rest = index;
            let mut terms = vec![config.field.zero(); n];
            for t in terms.iter_mut().rev() {
                *t = elements[rest % q].clone();
                rest /= q;
            }
            let s = Sequence::new(config.field, terms).expect("terms built in the field");
            match check_one(config, &oracle, &s) {
                Err(o) => return o,
                Ok(Check::Mismatch(msg)) => mismatches.push(msg),
                Ok(Check::Member { .. }) => {}
            }
            checked += 1;
        }
    }
    let code = if mismatches.is_empty() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let stdout = if config.format == Format::Json {
        let m = json!({
            "field": config.field.to_string(),
            "max_len": max_len,
            "checked": checked,
            "mismatches": mismatches.len(),
        });
        format!("{m}\n")
    } else {
        format!(
            "checked {checked} sequences over {} of length 1..={max_len}: {} mismatches\n",
            config.field,
            mismatches.len()
        )
    };
    let mut stderr = String::new();
    for m in &mismatches {
        writeln!(stderr, "{m}").unwrap();
    }
    Outcome {
        code,
        stdout,
        stderr,
    }
}

/// Entry point used by the binary: parses `argv`, runs, and returns the
/// outcome to print.
pub fn main_with_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    match RunConfig::from_args(args) {
        Ok(config) => run(&config),
        Err(e) => Outcome::fail(EXIT_CONFIG, e),
    }
}
