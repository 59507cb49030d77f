//! Command-line front end. [`run`] takes argv and the two output streams so
//! the whole contract can be exercised in-process.
//!
//! Exit status: 0 success, 1 oracle disagreement, 2 usage, 3 precondition
//! (closed form asked outside its hypothesis), 4 resource cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::congruence::{self, ConditionReport, CongruenceInstance, Method};
use crate::error::{Error, Result};
use crate::graph_enum::{self, GraphCountTable, Rational};
use crate::oracle;
use crate::ExactInt;

#[derive(Debug, Parser)]
#[command(
    name = "lincong",
    version,
    about = "Count solutions of a_1 x_1 + ... + a_k x_k = b (mod n) with pairwise distinct x_i"
)]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Leave `elapsed_ms` out of JSON output.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Worker threads for the brute-force oracle.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count distinct-coordinate solutions.
    Count {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Comma-separated coefficients a_1,...,a_k.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// formula, iep-edges, iep-partitions or brute. Defaults to formula when
        /// its hypothesis holds and iep-partitions otherwise.
        #[arg(long)]
        method: Option<String>,
    },
    /// Check that every nonempty proper subset of coefficients sums to a unit mod n.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Run every applicable method and compare the results.
    OracleCompare {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Labeled graph counts g(c,e,k), or g'(e,k) with --connected, as JSON lines.
    GraphTable {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        connected: bool,
    },
    /// Coefficients of sum_m alpha^m beta^C(m,2) / m! up to alpha^order.
    Series {
        /// Exact rational, e.g. 2 or -3/4.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        order: usize,
    },
}

/// Failure of a CLI invocation, carrying its exit status.
enum Failure {
    Error(Error),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Error(e) => e.exit_code(),
            Failure::Disagreement(_) => 1,
        }
    }

    fn line(&self) -> String {
        let (category, message) = match self {
            Failure::Error(e) => {
                let category = match e.exit_code() {
                    3 => "precondition",
                    4 => "resource",
                    _ => "usage",
                };
                (category, e.message().to_string())
            }
            Failure::Disagreement(m) => ("disagreement", m.clone()),
        };
        format!("error: {category}: {}", message.replace('\n', " "))
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(err, "error: usage: {first}");
            return 2;
        }
    };
    let started = Instant::now();
    let result = dispatch(&cli, out, err, started);
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", f.line());
            f.exit_code()
        }
    }
}

fn parse_int(name: &str, s: &str) -> Result<ExactInt> {
    BigInt::from_str(s.trim())
        .map_err(|_| Error::usage(format!("--{name}: `{s}` is not an integer")))
}

fn parse_coeffs(s: &str) -> Result<Vec<ExactInt>> {
    if s.trim().is_empty() {
        return Err(Error::usage(
            "--coeffs: expected a comma-separated list of integers",
        ));
    }
    s.split(',').map(|part| parse_int("coeffs", part)).collect()
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::usage(format!("--beta: `{s}` is not a rational p or p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
    let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(Error::usage("--beta: zero denominator"));
    }
    Ok(Rational::new(p, q))
}

fn instance(n: &str, b: &str, coeffs: &str) -> Result<CongruenceInstance> {
    CongruenceInstance::new(
        parse_coeffs(coeffs)?,
        parse_int("b", b)?,
        parse_int("n", n)?,
    )
}

fn fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn instance_json(inst: &CongruenceInstance, with_b: bool) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(inst.n().to_string()));
    if with_b {
        m.insert("b".into(), json!(inst.b().to_string()));
    }
    m.insert(
        "coeffs".into(),
        inst.coeffs().iter().map(|a| json!(a.to_string())).collect(),
    );
    Value::Object(m)
}

fn subset_text(subset: &[usize]) -> String {
    let items: Vec<String> = subset.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

struct Doc {
    inputs: Value,
    method: String,
    count: Option<String>,
    extra: Vec<(&'static str, Value)>,
}

fn emit_json(cli: &Cli, out: &mut dyn Write, started: Instant, doc: Doc) -> Result<()> {
    let mut m = Map::new();
    m.insert("inputs".into(), doc.inputs);
    m.insert("method".into(), json!(doc.method));
    m.insert("count".into(), json!(doc.count));
    for (k, v) in doc.extra {
        m.insert(k.into(), v);
    }
    if !cli.no_timing {
        m.insert(
            "elapsed_ms".into(),
            json!(started.elapsed().as_millis() as u64),
        );
    }
    writeln!(out, "{}", Value::Object(m)).map_err(io_error)
}

fn io_error(e: std::io::Error) -> Error {
    Error::resource(format!("write failed: {e}"))
}

fn count_with(
    inst: &CongruenceInstance,
    method: Method,
    threads: usize,
) -> Result<crate::ExactCount> {
    match method {
        Method::Brute => {
            Ok(
                oracle::brute_force_distinct_with(inst, oracle::DEFAULT_TUPLE_BUDGET, threads)?
                    .count,
            )
        }
        other => congruence::distinct_count(inst, other),
    }
}

fn dispatch(
    cli: &Cli,
    out: &mut dyn Write,
    err: &mut dyn Write,
    started: Instant,
) -> std::result::Result<(), Failure> {
    let threads = cli.threads as usize;
    match &cli.command {
        Command::Count {
            n,
            b,
            coeffs,
            method,
        } => {
            let inst = instance(n, b, coeffs)?;
            let method = match method {
                Some(m) => m.parse::<Method>()?,
                None => congruence::default_method(&inst)?,
            };
            let count = count_with(&inst, method, threads)?;
            if cli.json {
                emit_json(
                    cli,
                    out,
                    started,
                    Doc {
                        inputs: instance_json(&inst, true),
                        method: method.to_string(),
                        count: Some(count.to_string()),
                        extra: vec![],
                    },
                )?;
            } else {
                writeln!(out, "{count}").map_err(io_error)?;
                writeln!(err, "method: {method}").map_err(io_error)?;
            }
        }
        Command::Check { n, coeffs, b } => {
            let b_value = match b {
                Some(b) => parse_int("b", b)?,
                None => ExactInt::from(0),
            };
            let inst = CongruenceInstance::new(parse_coeffs(coeffs)?, b_value, parse_int("n", n)?)?;
            let report = congruence::check_condition(&inst)?;
            if cli.json {
                emit_json(
                    cli,
                    out,
                    started,
                    Doc {
                        inputs: instance_json(&inst, b.is_some()),
                        method: "check".into(),
                        count: None,
                        extra: vec![("report", report_json(&report, b.is_some()))],
                    },
                )?;
            } else {
                write_report(out, &report, b.is_some()).map_err(io_error)?;
            }
        }
        Command::OracleCompare { n, b, coeffs } => {
            let inst = instance(n, b, coeffs)?;
            return oracle_compare(cli, &inst, threads, out, started);
        }
        Command::GraphTable { kmax, connected } => {
            let table = GraphCountTable::build(*kmax, !connected, graph_enum::DEFAULT_K_MAX_CAP)?;
            let rows: Vec<Value> = if *connected {
                table
                    .connected_rows()
                    .map(|(e, k, v)| json!({"e": e, "k": k, "count": v.to_string()}))
                    .collect()
            } else {
                table
                    .component_rows()?
                    .into_iter()
                    .map(|(c, e, k, v)| json!({"c": c, "e": e, "k": k, "count": v.to_string()}))
                    .collect()
            };
            if cli.json {
                emit_json(
                    cli,
                    out,
                    started,
                    Doc {
                        inputs: json!({"kmax": kmax, "connected": connected}),
                        method: "recurrence".into(),
                        count: None,
                        extra: vec![("rows", Value::Array(rows))],
                    },
                )?;
            } else {
                for row in rows {
                    writeln!(out, "{row}").map_err(io_error)?;
                }
            }
        }
        Command::Series { beta, order } => {
            let beta_value = parse_rational(beta)?;
            let series = graph_enum::deformed_exp_truncated(&beta_value, *order);
            let coeffs: Vec<String> = series.coeffs().iter().map(fraction).collect();
            if cli.json {
                emit_json(
                    cli,
                    out,
                    started,
                    Doc {
                        inputs: json!({"beta": fraction(&beta_value), "order": order}),
                        method: "deformed-exp".into(),
                        count: None,
                        extra: vec![("coeffs", json!(coeffs))],
                    },
                )?;
            } else {
                for c in coeffs {
                    writeln!(out, "{c}").map_err(io_error)?;
                }
            }
        }
    }
    Ok(())
}

fn report_json(report: &ConditionReport, with_b: bool) -> Value {
    json!({
        "holds": report.holds,
        "failing_subset": report.failing_subset_one_based(),
        "full_sum_gcd": report.full_sum_gcd.to_string(),
        "divides_b": if with_b { json!(report.divides_b) } else { Value::Null },
    })
}

fn write_report(
    out: &mut dyn Write,
    report: &ConditionReport,
    with_b: bool,
) -> std::io::Result<()> {
    writeln!(out, "holds: {}", report.holds)?;
    if let Some(subset) = report.failing_subset_one_based() {
        writeln!(out, "failing subset: {}", subset_text(&subset))?;
    }
    writeln!(out, "gcd(sum a_i, n): {}", report.full_sum_gcd)?;
    if with_b {
        writeln!(out, "divides b: {}", report.divides_b)?;
    }
    Ok(())
}

fn oracle_compare(
    cli: &Cli,
    inst: &CongruenceInstance,
    threads: usize,
    out: &mut dyn Write,
    started: Instant,
) -> std::result::Result<(), Failure> {
    let outcomes: Vec<(Method, Result<crate::ExactCount>)> = Method::ALL
        .into_iter()
        .map(|m| (m, count_with(inst, m, threads)))
        .collect();
    let values: Vec<&crate::ExactCount> = outcomes
        .iter()
        .filter_map(|(_, r)| r.as_ref().ok())
        .collect();
    if values.is_empty() {
        return Err(Error::resource("no counting method applies to this instance").into());
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);

    if cli.json {
        let results: Vec<Value> = outcomes
            .iter()
            .map(|(m, r)| match r {
                Ok(v) => json!({"method": m.as_str(), "count": v.to_string()}),
                Err(e) => json!({"method": m.as_str(), "skipped": e.category()}),
            })
            .collect();
        emit_json(
            cli,
            out,
            started,
            Doc {
                inputs: instance_json(inst, true),
                method: "oracle-compare".into(),
                count: agree.then(|| values[0].to_string()),
                extra: vec![("results", Value::Array(results)), ("agree", json!(agree))],
            },
        )?;
    } else {
        for (m, r) in &outcomes {
            let shown = match r {
                Ok(v) => v.to_string(),
                Err(e) => format!("skipped ({})", e.category()),
            };
            writeln!(out, "{:<16}{shown}", m.as_str()).map_err(io_error)?;
        }
        if agree {
            writeln!(out, "all methods agree").map_err(io_error)?;
        }
    }
    if agree {
        Ok(())
    } else {
        let listed: Vec<String> = outcomes
            .iter()
            .filter_map(|(m, r)| r.as_ref().ok().map(|v| format!("{m}={v}")))
            .collect();
        Err(Failure::Disagreement(format!(
            "methods disagree on {inst}: {}",
            listed.join(", ")
        )))
    }
}
