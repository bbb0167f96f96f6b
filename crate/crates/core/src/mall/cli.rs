//! The `agames` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::formula::parse_formula;
use super::interp::{interpret_formula, interpret_proof, AtomEnvironment};
use super::laws::{comonoid_suite, template_suite, twocat_suite};
use super::proof::parse_proof;
use crate::asynch_graph::{graph_from_value, graph_to_dot, graph_to_value, shuffle, validate};
use crate::error::{Error, Result};
use crate::template::{compose_strategies, interaction_intersection, render_set, LawResult, Strategy, Style};

#[derive(Parser, Debug)]
#[command(name = "agames", version, about = "Asynchronous template games toolkit")]
struct Cli {
    /// Output format for reports and diagnostics.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StyleArg {
    Gray,
    Cartesian,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Template,
    Comonoid,
    Twocat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the three axioms of an asynchronous graph.
    Validate { graph: PathBuf },
    /// Shuffle two graphs.
    Tensor { g1: PathBuf, g2: PathBuf },
    /// Compose two strategies `σ : A ↛ B` and `τ : B ↛ C`.
    Compose { s1: PathBuf, s2: PathBuf },
    /// Intersect what two strategies do on their shared game.
    Interact {
        s1: PathBuf,
        s2: PathBuf,
        #[arg(long, value_enum)]
        style: StyleArg,
    },
    /// Interpret a formula as a game or a proof as a strategy.
    Interpret {
        #[arg(long, conflicts_with = "proof", required_unless_present = "proof")]
        formula: Option<String>,
        #[arg(long)]
        proof: Option<PathBuf>,
        #[arg(long)]
        env: Option<PathBuf>,
    },
    /// Run a suite of law checks.
    Lawcheck {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Re-emit a graph or strategy document as DOT or normalized JSON.
    Export {
        #[arg(long, conflicts_with = "json", required_unless_present = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        input: PathBuf,
    },
}

/// What a command produced: text to print and the exit status.
struct Outcome {
    text: String,
    status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }

    fn document(v: &Value) -> Self {
        Outcome::ok(pretty(v))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn read_strategy(path: &Path) -> Result<Strategy> {
    Strategy::from_value(&read_json(path)?)
}

/// 2 for malformed input, 1 for everything the input fails to satisfy.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::Document(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::UnknownVertex(_)
        | Error::UnknownEdge(_)
        | Error::DuplicateVertex(_)
        | Error::DuplicateEdge(_)
        | Error::UnboundAtom(_) => 2,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::Document(_) | Error::Json(_) => "document",
        Error::Io(_) => "io",
        Error::UnknownVertex(_) | Error::UnknownEdge(_) | Error::DuplicateVertex(_) | Error::DuplicateEdge(_) => {
            "reference"
        }
        Error::UnboundAtom(_) => "unbound-atom",
        Error::IllFormedProof(_) => "ill-formed-proof",
        Error::LawViolation(_) => "law",
        Error::InvalidSupport(_) => "invalid-support",
        Error::InvalidStrategy(_) => "invalid-strategy",
        _ => "invalid",
    }
}

fn diagnostic(e: &Error, format: Format) -> String {
    match format {
        Format::Text => format!("error: {e}\n"),
        Format::Json => {
            let mut d = json!({ "kind": error_kind(e), "message": e.to_string() });
            if let Error::Syntax { line, column, .. } = e {
                d["line"] = json!(line);
                d["column"] = json!(column);
            }
            pretty(&json!({ "error": d }))
        }
    }
}

fn laws_report(suite: &str, results: &[LawResult], format: Format) -> Outcome {
    let failed = results.iter().filter(|l| !l.passed()).count();
    let text = match format {
        Format::Text => {
            let mut s = String::new();
            for l in results {
                match &l.outcome {
                    Ok(()) => s.push_str(&format!("pass  {}\n", l.name)),
                    Err(why) => s.push_str(&format!("FAIL  {}: {why}\n", l.name)),
                }
            }
            s.push_str(&format!("{suite}: {} of {} laws hold\n", results.len() - failed, results.len()));
            s
        }
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|l| match &l.outcome {
                    Ok(()) => json!({ "name": l.name, "ok": true }),
                    Err(why) => json!({ "name": l.name, "ok": false, "reason": why }),
                })
                .collect();
            pretty(&json!({ "passed": failed == 0, "results": rows, "suite": suite }))
        }
    };
    Outcome {
        text,
        status: i32::from(failed > 0),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Validate { graph } => {
            let g = graph_from_value(&read_json(graph)?)?;
            let report = validate(&g);
            let status = i32::from(!report.is_ok());
            let text = match format {
                Format::Text => {
                    let mut s = format!("{report}\n");
                    for v in &report.violations {
                        s.push_str(&format!("  {}\n", v.describe(&g)));
                    }
                    s
                }
                Format::Json => {
                    let vs: Vec<Value> = report
                        .violations
                        .iter()
                        .map(|v| json!({ "detail": v.describe(&g), "kind": v.kind() }))
                        .collect();
                    pretty(&json!({ "ok": report.is_ok(), "violations": vs }))
                }
            };
            Ok(Outcome { text, status })
        }
        Command::Tensor { g1, g2 } => {
            let a = graph_from_value(&read_json(g1)?)?;
            let b = graph_from_value(&read_json(g2)?)?;
            Ok(Outcome::document(&graph_to_value(&shuffle(&[Arc::new(a), Arc::new(b)]))))
        }
        Command::Compose { s1, s2 } => {
            let s = compose_strategies(&read_strategy(s1)?, &read_strategy(s2)?)?;
            Ok(Outcome::document(&s.to_value()))
        }
        Command::Interact { s1, s2, style } => {
            let style = match style {
                StyleArg::Gray => Style::Gray,
                StyleArg::Cartesian => Style::Cartesian,
            };
            let set = interaction_intersection(&read_strategy(s1)?, &read_strategy(s2)?, style)?;
            Ok(Outcome::ok(match format {
                Format::Text => format!("intersection: {}\n", render_set(&set)),
                Format::Json => {
                    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
                    let name = if style == Style::Gray { "gray" } else { "cartesian" };
                    pretty(&json!({ "intersection": items, "style": name }))
                }
            }))
        }
        Command::Interpret { formula, proof, env } => {
            let env = match env {
                Some(p) => AtomEnvironment::load(p)?,
                None => AtomEnvironment::new(),
            };
            if let Some(f) = formula {
                let game = interpret_formula(&parse_formula(f)?, &env)?;
                return Ok(Outcome::document(&game.to_value()));
            }
            let path = proof.as_ref().expect("clap requires --formula or --proof");
            let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
            let p = parse_proof(&text)?;
            let sequent = p.conclusion()?;
            let s = interpret_proof(&p, &env)?;
            let rendered: Vec<String> = sequent.iter().map(ToString::to_string).collect();
            Ok(Outcome::document(&json!({
                "sequent": rendered,
                "strategy": s.to_value(),
            })))
        }
        Command::Lawcheck { suite } => {
            let (name, results) = match suite {
                Suite::Template => ("template", template_suite()),
                Suite::Comonoid => ("comonoid", comonoid_suite()),
                Suite::Twocat => ("twocat", twocat_suite()),
            };
            Ok(laws_report(name, &results, format))
        }
        Command::Export { dot, input, .. } => {
            let v = read_json(input)?;
            let title = input.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
            let is_strategy = v.get("support").is_some();
            Ok(Outcome::ok(match (is_strategy, dot) {
                (true, true) => Strategy::from_value(&v)?.to_dot(title),
                (true, false) => pretty(&Strategy::from_value(&v)?.to_value()),
                (false, true) => graph_to_dot(&graph_from_value(&v)?, title),
                (false, false) => pretty(&graph_to_value(&graph_from_value(&v)?)),
            }))
        }
    }
}

/// Runs `agames` on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return status;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.status
        }
        Err(e) => {
            let _ = err.write_all(diagnostic(&e, cli.format).as_bytes());
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("agames").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["interpret"]).0, 2);
        assert_eq!(call(&["export", "--dot", "--json", "x.json"]).0, 2);
    }

    #[test]
    fn formula_syntax_errors_are_positioned_in_json() {
        let (code, _, err) = call(&["--format", "json", "interpret", "--formula", "a * )"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_eq!(v["error"]["kind"], "syntax");
        assert_eq!(v["error"]["column"], 5);
    }

    #[test]
    fn unit_formulas_need_no_environment() {
        let (code, out, _) = call(&["interpret", "--formula", "1 * bot"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn unbound_atoms_exit_with_two() {
        assert_eq!(call(&["interpret", "--formula", "a"]).0, 2);
    }

    #[test]
    fn missing_files_exit_with_two() {
        assert_eq!(call(&["validate", "/nonexistent/graph.json"]).0, 2);
    }
}
