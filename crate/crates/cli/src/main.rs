//! `schwarzian`: classify and reduce equations `S(f)^m = P(z, f)/Q(z, f)`.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use schwarzian_core::algebra::{parse_rat, Rat};
use schwarzian_core::classifier::classify_q;
use schwarzian_core::corpus::selftest;
use schwarzian_core::equation::{schwarzian_rational, MobiusMap};
use schwarzian_core::parse::{parse_equation, parse_rational};
use schwarzian_core::reducer::{reduce, verify_candidate, Candidate, Certificate};
use schwarzian_core::{report, Error};

#[derive(Parser, Debug)]
#[command(name = "schwarzian", version, about = "Reduce Schwarzian differential equations to known forms")]
struct Cli {
    /// Emit JSON (JSON Lines for `batch`).
    #[arg(long, global = true)]
    json: bool,

    /// Series truncation for `verify`.
    #[arg(long, global = true, env = "SCHWARZIAN_TRUNC", default_value_t = 16,
          value_parser = clap::value_parser!(u32).range(1..=4096))]
    trunc: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schwarzian derivative of a rational function of z.
    Schwarzian { expr: String },
    /// Classify the denominator Q.
    Classify { equation: String },
    /// Full reduction verdict.
    Reduce { equation: String },
    /// Substitute a candidate solution and print the residual series.
    Verify {
        equation: String,
        /// exp:k, tan:k, mobius-exp:k:a:b:c:d, mobius-tan:k:a:b:c:d or rational:EXPR
        #[arg(long)]
        candidate: String,
        /// Expansion point.
        #[arg(long, default_value = "0", value_parser = parse_point)]
        at: Rat,
    },
    /// Reduce every equation in a corpus file (`-` reads stdin).
    Batch { file: String },
    /// Run the embedded golden corpus.
    Selftest,
}

fn parse_point(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("expected an integer or p/q, got {s:?}"))
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::NonPositiveExponent(_) | Error::ZeroDenominator | Error::InvalidInput(_) => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn parse_candidate(s: &str) -> Result<Candidate, Failure> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| usage(format!("candidate {s:?} has no parameters")))?;
    if kind == "rational" {
        return Ok(Candidate::Rational(parse_rational(rest)?));
    }
    let nums = rest
        .split(':')
        .map(|p| parse_rat(p).ok_or_else(|| usage(format!("bad number {p:?} in candidate"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mobius = |v: &[Rat]| MobiusMap::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
    match (kind, nums.as_slice()) {
        ("exp", [k]) => Ok(Candidate::Exp(k.clone())),
        ("tan", [k]) => Ok(Candidate::Tan(k.clone())),
        ("mobius-exp", [k, m @ ..]) if m.len() == 4 => Ok(Candidate::MobiusExp(k.clone(), mobius(m)?)),
        ("mobius-tan", [k, m @ ..]) if m.len() == 4 => Ok(Candidate::MobiusTan(k.clone(), mobius(m)?)),
        _ => Err(usage(format!("unknown candidate {s:?}"))),
    }
}

/// What a command produced: text lines, a JSON value, and the exit code.
struct Output {
    text: Vec<String>,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: vec![text.into()], json, code: 0 }
    }
}

fn run_reduce(input: &str) -> Result<Output, Failure> {
    let eq = parse_equation(input)?;
    let v = reduce(&eq);
    let mut text = vec![v.to_string()];
    text.push(format!("  class: {}", v.class));
    if !v.mobius.is_identity() {
        text.push(format!("  u = {}", v.mobius.render("f")));
    }
    for c in &v.certificates {
        match c {
            Certificate::Auxiliary(a) => text.push(format!("  auxiliary: {} = {}", a.kind.name(), a.kind.formula())),
            Certificate::Branch { outcome, kept, reason } => {
                let mark = if *kept { "kept" } else { "dropped" };
                text.push(format!("  branch {}: {mark} ({reason})", outcome.name()));
            }
            Certificate::Feasibility(_) => {}
        }
    }
    text.extend(v.diagnostics.iter().map(|d| format!("  note: {d}")));
    Ok(Output { text, json: report::reduce_report(input, &eq, &v), code: 0 })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Schwarzian { expr } => {
            let f = parse_rational(expr)?;
            let s = schwarzian_rational(&f)?;
            Ok(Output::ok(s.render("z"), report::schwarzian_report(expr, &s)))
        }
        Command::Classify { equation } => {
            let eq = parse_equation(equation)?;
            let class = classify_q(&eq);
            let mut text = vec![class.render()];
            text.extend(class.note.iter().map(|n| format!("  note: {n}")));
            Ok(Output { text, json: report::classify_report(equation, &eq, &class), code: 0 })
        }
        Command::Reduce { equation } => run_reduce(equation),
        Command::Verify { equation, candidate, at } => {
            let eq = parse_equation(equation)?;
            let cand = parse_candidate(candidate)?;
            let r = verify_candidate(&eq, &cand, at, cli.trunc as usize)?;
            let code = if r.verified { 0 } else { 1 };
            Ok(Output { text: vec![r.render()], json: report::verify_report(equation, &eq, &r), code })
        }
        Command::Batch { file } => run_batch(file, cli.json),
        Command::Selftest => {
            let lines = selftest();
            let failed = lines.iter().filter(|l| !l.passed).count();
            let mut text: Vec<String> = lines
                .iter()
                .map(|l| format!("{} {}: {}", if l.passed { "PASS" } else { "FAIL" }, l.text, l.detail))
                .collect();
            text.push(format!("{} passed, {failed} failed", lines.len() - failed));
            let json = json!({
                "passed": format!("{}/1", lines.len() - failed),
                "failed": format!("{failed}/1"),
                "lines": lines.iter().map(|l| json!({"text": l.text, "passed": l.passed, "detail": l.detail})).collect::<Vec<_>>(),
            });
            Ok(Output { text, json, code: if failed == 0 { 0 } else { 1 } })
        }
    }
}

/// Every line must parse before anything is reduced; analysis then fans
/// out and the results are written back in input order.
fn run_batch(file: &str, as_json: bool) -> Result<Output, Failure> {
    let content = if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(file).map_err(|e| usage(format!("{file}: {e}")))?
    };
    let lines: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let errors: Vec<String> =
        lines.iter().filter_map(|(n, l)| parse_equation(l).err().map(|e| format!("{file}:{n}: {e}"))).collect();
    if !errors.is_empty() {
        return Err(usage(errors.join("\n")));
    }
    let results: Vec<Output> = lines
        .par_iter()
        .map(|(_, l)| run_reduce(l).unwrap_or_else(|f| Output::ok(f.msg.clone(), report::error_report(l, &f.msg))))
        .collect();
    let text = results
        .iter()
        .zip(&lines)
        .map(|(r, (_, l))| if as_json { r.json.to_string() } else { format!("{}\t{l}", r.text[0]) })
        .collect();
    Ok(Output { text, json: Value::Null, code: 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = io::stdout();
    let mut out = BufWriter::new(out.lock());
    let batch = matches!(cli.command, Command::Batch { .. });
    let code = match run(&cli) {
        Ok(o) => {
            if cli.json && !batch {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"));
            } else {
                for line in &o.text {
                    let _ = writeln!(out, "{line}");
                }
            }
            o.code
        }
        Err(f) => {
            if cli.json {
                let input = match &cli.command {
                    Command::Schwarzian { expr: s }
                    | Command::Classify { equation: s }
                    | Command::Reduce { equation: s } => s,
                    Command::Verify { equation, .. } => equation,
                    Command::Batch { file } => file,
                    Command::Selftest => "",
                };
                let _ = writeln!(out, "{}", report::error_report(input, &f.msg));
            }
            eprintln!("error: {}", f.msg);
            f.code
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
