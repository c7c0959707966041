//! The `fdsum` command line: `compute`, `batch`, `bench` and `selftest`.
//!
//! Every command writes to caller-supplied sinks and returns its exit code, so the whole
//! front end runs in-process under test. Exit codes: 0 success, 1 I/O, 2 invalid input,
//! 3 internal consistency failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::api::{compute_with, validate, FDResult, Method, PipelineOptions, Value};
use crate::error::Error;
use crate::numeric::{Integer, Rational};
use crate::oracle::float_eval;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fdsum", version, about = "Exact Fourier-Dedekind sums")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a single sum.
    Compute(ComputeArgs),
    /// Evaluate one sum per input line (`n; a1,a2,...; b`).
    Batch(BatchArgs),
    /// Time a fixed `(n, a)` over a list of moduli, CSV on stdout.
    Bench(BenchArgs),
    /// Run the built-in golden and oracle-agreement suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Barvinok,
    Cyclotomic,
    Float,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Barvinok => Method::Barvinok,
            MethodArg::Cyclotomic => Method::Cyclotomic,
            MethodArg::Float => Method::Float,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlainOrJson {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RecordFormat {
    Jsonl,
    Csv,
}

fn parse_integer(s: &str) -> Result<Integer, String> {
    Integer::from_str(s.trim()).map_err(|_| format!("'{s}' is not an integer"))
}

#[derive(Args, Debug, Clone)]
pub struct ComputeArgs {
    #[arg(long, value_parser = parse_integer, allow_hyphen_values = true)]
    pub n: Integer,
    #[arg(long, value_parser = parse_integer, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub a: Vec<Integer>,
    #[arg(long, value_parser = parse_integer, allow_hyphen_values = true)]
    pub b: Integer,
    #[arg(long, value_enum, default_value = "barvinok")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: PlainOrJson,
    /// Also print the short rational function, one term per line.
    #[arg(long)]
    pub dump_decomposition: bool,
}

#[derive(Args, Debug, Clone)]
pub struct BatchArgs {
    /// Input file, or `-` for standard input.
    #[arg(long)]
    pub input: String,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: RecordFormat,
    #[arg(long, value_enum, default_value = "barvinok")]
    pub method: MethodArg,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    #[arg(long, value_parser = parse_integer, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub a: Vec<Integer>,
    #[arg(long, value_parser = parse_integer, allow_hyphen_values = true)]
    pub n: Integer,
    #[arg(long, value_parser = parse_integer, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub b_list: Vec<Integer>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeat: u32,
    #[arg(long, value_enum, default_value = "barvinok")]
    pub method: MethodArg,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SelftestArgs {
    /// Flip the sign of one unimodular cone; the suite must then fail.
    #[arg(long, hide = true)]
    pub mutate_flip_sign: bool,
}

/// Parses `args` (including the program name) and runs the chosen command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Compute(a) => cmd_compute(&a, out, err),
        Command::Batch(a) => cmd_batch(&a, out, err),
        Command::Bench(a) => cmd_bench(&a, out, err),
        Command::Selftest(a) => cmd_selftest(&a, out),
    }
}

fn exit_code_for(e: &Error) -> i32 {
    if e.is_user_error() {
        EXIT_INVALID
    } else {
        EXIT_INTERNAL
    }
}

/// `num/den`, with `/1` kept for integers.
pub fn fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn value_string(v: &Value) -> String {
    match v {
        Value::Exact(q) => fraction(q),
        Value::Approx(x) => format!("{x}"),
    }
}

fn json_int(x: &Integer) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// One serialized result. Field order is the output order.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub n: serde_json::Number,
    pub a: Vec<serde_json::Number>,
    pub b: serde_json::Number,
    pub method: String,
    pub value: String,
    pub unimodular_cones: Option<usize>,
    pub time_ms: f64,
}

impl From<&FDResult> for OutputRecord {
    fn from(r: &FDResult) -> Self {
        OutputRecord {
            n: json_int(r.instance.n()),
            a: r.instance.a().iter().map(json_int).collect(),
            b: json_int(r.instance.b()),
            method: r.method.name().to_string(),
            value: value_string(&r.value),
            unimodular_cones: r.unimodular_cone_count,
            time_ms: millis(r.elapsed),
        }
    }
}

pub fn cmd_compute(args: &ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let inst = match validate(args.n.clone(), &args.a, args.b.clone()) {
        Ok(i) => i,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let opts = PipelineOptions {
        keep_decomposition: args.dump_decomposition,
        ..Default::default()
    };
    let res = match compute_with(&inst, args.method.into(), &opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code_for(&e);
        }
    };
    let written = match args.format {
        PlainOrJson::Plain => writeln!(out, "{} = {}", res.instance, res.value),
        PlainOrJson::Json => {
            let rec = OutputRecord::from(&res);
            writeln!(
                out,
                "{}",
                serde_json::to_string(&rec).expect("record serializes")
            )
        }
    };
    if written.is_err() {
        return EXIT_IO;
    }
    if args.dump_decomposition {
        match &res.decomposition {
            Some(srf) => {
                if write!(out, "{}", srf.dump()).is_err() {
                    return EXIT_IO;
                }
            }
            None => {
                let _ = writeln!(err, "note: no decomposition for method {}", res.method);
            }
        }
    }
    EXIT_OK
}

/// A batch input line: `n; a1,a2,...,ad; b`.
pub fn parse_batch_line(line: &str) -> Result<(Integer, Vec<Integer>, Integer), String> {
    let parts: Vec<&str> = line.split(';').collect();
    if parts.len() != 3 {
        return Err(format!("expected 'n; a1,...,ad; b', got '{}'", line.trim()));
    }
    let n = parse_integer(parts[0])?;
    let a = if parts[1].trim().is_empty() {
        Vec::new()
    } else {
        parts[1]
            .split(',')
            .map(parse_integer)
            .collect::<Result<Vec<_>, _>>()?
    };
    let b = parse_integer(parts[2])?;
    Ok((n, a, b))
}

enum LineOutcome {
    Ok(Box<FDResult>),
    Invalid(String),
    Internal(String),
}

fn process_line(line: &str, method: Method) -> LineOutcome {
    let (n, a, b) = match parse_batch_line(line) {
        Ok(t) => t,
        Err(e) => return LineOutcome::Invalid(e),
    };
    let inst = match validate(n, &a, b) {
        Ok(i) => i,
        Err(e) => return LineOutcome::Invalid(e.to_string()),
    };
    match compute_with(&inst, method, &PipelineOptions::default()) {
        Ok(r) => LineOutcome::Ok(Box::new(r)),
        Err(e) if e.is_user_error() => LineOutcome::Invalid(e.to_string()),
        Err(e) => LineOutcome::Internal(e.to_string()),
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    line: usize,
    error: &'a str,
}

pub fn cmd_batch(args: &BatchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = if args.input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(&args.input)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", args.input);
            return EXIT_IO;
        }
    };
    run_batch(&text, args.format, args.method.into(), out, err)
}

/// Batch evaluation of already-loaded input text.
pub fn run_batch(
    text: &str,
    format: RecordFormat,
    method: Method,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect();
    let outcomes: Vec<(usize, LineOutcome)> = lines
        .par_iter()
        .map(|&(no, l)| (no, process_line(l, method)))
        .collect();

    let mut code = EXIT_OK;
    let mut csv_writer = match format {
        RecordFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "n",
                "a",
                "b",
                "method",
                "value",
                "unimodular_cones",
                "time_ms",
                "error",
            ])
            .expect("in-memory write");
            Some(w)
        }
        RecordFormat::Jsonl => None,
    };
    for (no, outcome) in &outcomes {
        let failure = match outcome {
            LineOutcome::Ok(_) => None,
            LineOutcome::Invalid(m) => {
                code = code.max(EXIT_INVALID);
                Some(m)
            }
            LineOutcome::Internal(m) => {
                code = code.max(EXIT_INTERNAL);
                Some(m)
            }
        };
        if let Some(m) = failure {
            let _ = writeln!(err, "line {no}: {m}");
        }
        match (&mut csv_writer, outcome) {
            (None, LineOutcome::Ok(r)) => {
                let rec = OutputRecord::from(&**r);
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&rec).expect("record serializes")
                );
            }
            (None, _) => {
                let rec = ErrorRecord {
                    line: *no,
                    error: failure.expect("non-ok outcome has a message"),
                };
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&rec).expect("record serializes")
                );
            }
            (Some(w), LineOutcome::Ok(r)) => {
                let a: Vec<String> = r.instance.a().iter().map(ToString::to_string).collect();
                let cones = r
                    .unimodular_cone_count
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                w.write_record([
                    r.instance.n().to_string(),
                    a.join(","),
                    r.instance.b().to_string(),
                    r.method.name().to_string(),
                    value_string(&r.value),
                    cones,
                    format!("{}", millis(r.elapsed)),
                    String::new(),
                ])
                .expect("in-memory write");
            }
            (Some(w), _) => {
                let mut row = vec![String::new(); 7];
                row.push(format!(
                    "line {no}: {}",
                    failure.expect("non-ok outcome has a message")
                ));
                w.write_record(&row).expect("in-memory write");
            }
        }
    }
    if let Some(w) = csv_writer {
        let bytes = w.into_inner().expect("in-memory flush");
        if out.write_all(&bytes).is_err() {
            return EXIT_IO;
        }
    }
    code
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut instances = Vec::with_capacity(args.b_list.len());
    for b in &args.b_list {
        match validate(args.n.clone(), &args.a, b.clone()) {
            Ok(i) => instances.push(i),
            Err(e) => {
                let _ = writeln!(err, "error: b = {b}: {e}");
                return EXIT_INVALID;
            }
        }
    }
    let method: Method = args.method.into();
    if writeln!(out, "b,method,time_ms_median,value").is_err() {
        return EXIT_IO;
    }
    for inst in &instances {
        let mut times = Vec::with_capacity(args.repeat as usize);
        let mut value = None;
        for _ in 0..args.repeat {
            match compute_with(inst, method, &PipelineOptions::default()) {
                Ok(r) => {
                    times.push(millis(r.elapsed));
                    value = Some(value_string(&r.value));
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {inst}: {e}");
                    return exit_code_for(&e);
                }
            }
        }
        let row = format!(
            "{},{},{:.3},{}",
            inst.b(),
            method.name(),
            median(times),
            value.expect("repeat >= 1")
        );
        if writeln!(out, "{row}").is_err() {
            return EXIT_IO;
        }
        let _ = out.flush();
    }
    EXIT_OK
}

/// Number of random oracle-agreement cases in the self-test.
pub const SELFTEST_RANDOM_CASES: usize = 25;
const SELFTEST_SEED: u64 = 0x5eed_fd50;

struct Check {
    name: String,
    outcome: Result<(), String>,
}

fn expect_value(
    label: &str,
    n: i64,
    a: &[i64],
    b: i64,
    expected: Rational,
    opts: &PipelineOptions,
) -> Check {
    let outcome = (|| {
        let inst = validate(n, a, b).map_err(|e| e.to_string())?;
        for method in [Method::Barvinok, Method::Cyclotomic] {
            let r = compute_with(&inst, method, opts).map_err(|e| format!("{method}: {e}"))?;
            if r.value != Value::Exact(expected.clone()) {
                return Err(format!(
                    "{method} gave {}, expected {}",
                    r.value,
                    fraction(&expected)
                ));
            }
        }
        Ok(())
    })();
    Check {
        name: format!(
            "{label} {}",
            validate(n, a, b).map(|i| i.to_string()).unwrap_or_default()
        ),
        outcome,
    }
}

fn random_instance(rng: &mut ChaCha8Rng) -> (i64, Vec<i64>, i64) {
    let b = rng.gen_range(2..=60i64);
    let d = rng.gen_range(1..=3usize);
    let a = (0..d)
        .map(|_| loop {
            let x = rng.gen_range(1..=200i64);
            if num_integer::gcd(x, b) == 1 {
                break x;
            }
        })
        .collect();
    let n = rng.gen_range(-b..=2 * b);
    (n, a, b)
}

fn agreement(n: i64, a: &[i64], b: i64, opts: &PipelineOptions) -> Check {
    let outcome = (|| {
        let inst = validate(n, a, b).map_err(|e| e.to_string())?;
        let r = compute_with(&inst, Method::Both, opts).map_err(|e| e.to_string())?;
        let exact = r.value.exact().expect("both is exact").clone();
        let approx = float_eval(&inst).map_err(|e| e.to_string())?;
        let x = exact.to_f64().unwrap_or(f64::NAN);
        if (x - approx).abs() > 1e-6 * (1.0 + x.abs()) {
            return Err(format!("float {approx} far from {}", fraction(&exact)));
        }
        Ok(())
    })();
    let name = validate(n, a, b)
        .map(|i| format!("agree {i}"))
        .unwrap_or_default();
    Check { name, outcome }
}

pub fn cmd_selftest(args: &SelftestArgs, out: &mut dyn Write) -> i32 {
    let opts = PipelineOptions {
        flip_first_sign: args.mutate_flip_sign,
        ..Default::default()
    };
    let r = |p: i64, q: i64| Rational::new(Integer::from(p), Integer::from(q));
    let mut checks = vec![
        expect_value("golden", 4, &[4, 3, 5], 7, r(1, 7), &opts),
        expect_value("golden", 11, &[4, 3, 5], 7, r(1, 7), &opts),
        expect_value("closed-form", 0, &[1], 2, r(1, 4), &opts),
        expect_value("closed-form", 1, &[1], 2, r(-1, 4), &opts),
        expect_value("closed-form", 0, &[1], 3, r(1, 3), &opts),
    ];
    // s_n(1; b) = (b - 1 - 2 m) / (2b) with m = (-n) mod b
    for (n, b) in [(0i64, 5i64), (3, 11), (6, 13), (-4, 9)] {
        let m = (-n).rem_euclid(b);
        checks.push(expect_value(
            "closed-form",
            n,
            &[1],
            b,
            r(b - 1 - 2 * m, 2 * b),
            &opts,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SELFTEST_SEED);
    for _ in 0..SELFTEST_RANDOM_CASES {
        let (n, a, b) = random_instance(&mut rng);
        checks.push(agreement(n, &a, b, &opts));
    }

    let mut failed = 0usize;
    for c in &checks {
        let _ = match &c.outcome {
            Ok(()) => writeln!(out, "PASS {}", c.name),
            Err(m) => {
                failed += 1;
                writeln!(out, "FAIL {}: {m}", c.name)
            }
        };
    }
    let _ = writeln!(
        out,
        "selftest: {}/{} passed",
        checks.len() - failed,
        checks.len()
    );
    if failed.is_zero() {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    }
}
