//! `combman`: batch checks over JSON precubical sets, automata and regular
//! expressions.
//!
//! Exit status is 0 when every check passes, 1 when a check fails (the
//! report still goes to stdout), and 2 when the input cannot be read.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use combman::automata::{
    check_conditions, cofibrant_replacement, normalize, verify_replacement, RelAutomaton,
};
use combman::blowup::{blowup, verify_blowup};
use combman::pcs::{brick, euclidean_check, export, RelPcs};
use combman::regex::{compile, kleene_fuzz, parse_with, ParseOptions};
use combman::samples::{automata_sample, pcs_sample, SampleSizes};
use combman::toolkit::{appendix_identity_suite, AppendixReport, Carrier, Morphism};
use combman::words::BrickIndex;

#[derive(Parser)]
#[command(name = "combman", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relational precubical sets.
    #[command(subcommand)]
    Pcs(PcsCommand),
    /// Relational automata.
    #[command(subcommand)]
    Aut(AutCommand),
    /// Regular expressions.
    #[command(subcommand)]
    Rx(RxCommand),
    /// Generic colimit and lifting identities.
    #[command(subcommand)]
    Toolkit(ToolkitCommand),
}

#[derive(Args)]
struct Input {
    /// JSON file, or `-` for stdin.
    file: PathBuf,
}

#[derive(Subcommand)]
enum PcsCommand {
    /// Check grading and closure of the relations.
    Validate(Input),
    /// The n-blowup with its projection and per-cube provenance.
    Blowup {
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Look for a chart at every cube.
    Euclid {
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Blowup checks: euclidean, trivial fibration, codiagonal lifts, and
    /// β iso exactly for euclidean inputs.
    Verify {
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        input: Input,
    },
    /// The brick B_ε.
    Brick {
        #[arg(short = 'e')]
        eps: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Export in another format.
    Export {
        #[arg(long, value_enum)]
        format: Format,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Tikz,
}

#[derive(Subcommand)]
enum AutCommand {
    /// Accepted words up to a length.
    Lang {
        #[arg(short = 'L', default_value_t = 4)]
        max_len: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Cofibrant replacement, its projection, certificate and checks.
    Cofrep {
        #[arg(short = 'L', default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Non-relational automaton with one initial state and the same language.
    Normalize(Input),
    /// Initial states without in-edges, accepting non-initial states without
    /// out-edges.
    Conditions(Input),
    /// Replacement and normalization suites.
    Verify {
        #[arg(short = 'L', default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum RxCommand {
    /// Compile an expression into an automaton.
    Compile {
        regex: String,
        /// Read `0` as ∅ and `()` as ε.
        #[arg(long)]
        ascii: bool,
        /// Also list the accepted words up to this length.
        #[arg(short = 'L')]
        max_len: Option<usize>,
    },
    /// Compare compiled languages with the set semantics on random expressions.
    Fuzz {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(short = 'L', default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
}

#[derive(Subcommand)]
enum ToolkitCommand {
    /// Codiagonal identities, unique-lift equivalence and 2-out-of-3 on
    /// seeded samples of both carriers.
    Appendix {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

/// Input errors exit with 2; any other error is a failed check.
enum Failure {
    Input(anyhow::Error),
    Check(anyhow::Error),
}

type Outcome = Result<(Output, bool), Failure>;

fn input_err<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

fn check_err<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Check(e.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(input_err)
    } else {
        fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(input_err)
    }
}

fn load_pcs(input: &Input) -> Result<RelPcs, Failure> {
    RelPcs::from_json_str(&read(&input.file)?)
        .with_context(|| format!("parsing {}", input.file.display()))
        .map_err(input_err)
}

fn load_aut(input: &Input) -> Result<Arc<RelAutomaton>, Failure> {
    RelAutomaton::from_json_str(&read(&input.file)?)
        .map(Arc::new)
        .with_context(|| format!("parsing {}", input.file.display()))
        .map_err(input_err)
}

/// A closed, validated precubical set, or the violation as a failed report.
fn load_valid_pcs(input: &Input) -> Result<Result<Arc<RelPcs>, Value>, Failure> {
    let p = load_pcs(input)?;
    Ok(match p.validate() {
        Ok(()) => Ok(Arc::new(p)),
        Err(v) => Err(json!({ "valid": false, "violation": v })),
    })
}

fn named_map<C: Carrier>(m: &Morphism<C>) -> BTreeMap<String, String> {
    m.named_pairs().into_iter().collect()
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn run_pcs(cmd: PcsCommand) -> Outcome {
    match cmd {
        PcsCommand::Validate(input) => {
            let p = load_pcs(&input)?;
            Ok(match p.validate() {
                Ok(()) => (
                    Output::Json(json!({ "valid": true, "counts": p.counts() })),
                    true,
                ),
                Err(v) => (
                    Output::Json(json!({ "valid": false, "violation": v })),
                    false,
                ),
            })
        }
        PcsCommand::Blowup { n, input } => {
            let p = match load_valid_pcs(&input)? {
                Ok(p) => p,
                Err(report) => return Ok((Output::Json(report), false)),
            };
            let res = blowup(&p, n).map_err(check_err)?;
            Ok((
                Output::Json(json!({
                    "counts": res.blowup.counts(),
                    "blowup": res.blowup.to_json(),
                    "beta": named_map(&res.beta),
                    "provenance": res.provenance,
                })),
                true,
            ))
        }
        PcsCommand::Euclid { n, input } => {
            let p = match load_valid_pcs(&input)? {
                Ok(p) => p,
                Err(report) => return Ok((Output::Json(report), false)),
            };
            let report = euclidean_check(&p, n);
            let pass = report.euclidean;
            Ok((Output::Json(to_value(&report)), pass))
        }
        PcsCommand::Verify { n, input } => {
            let p = match load_valid_pcs(&input)? {
                Ok(p) => p,
                Err(report) => return Ok((Output::Json(report), false)),
            };
            let report = verify_blowup(&p, n).map_err(check_err)?;
            let pass = report.passes();
            Ok((Output::Json(to_value(&report)), pass))
        }
        PcsCommand::Brick { eps, format } => {
            let eps: BrickIndex = eps.parse().map_err(input_err)?;
            render_pcs(&brick(&eps).object, format)
        }
        PcsCommand::Export { format, input } => {
            let p = match load_valid_pcs(&input)? {
                Ok(p) => p,
                Err(report) => return Ok((Output::Json(report), false)),
            };
            render_pcs(&p, format)
        }
    }
}

fn render_pcs(p: &RelPcs, format: Format) -> Outcome {
    Ok((
        match format {
            Format::Json => Output::Json(to_value(&p.to_json())),
            Format::Dot => Output::Text(export::to_dot(p)),
            Format::Tikz => Output::Text(export::to_tikz(p).map_err(input_err)?),
        },
        true,
    ))
}

fn run_aut(cmd: AutCommand) -> Outcome {
    match cmd {
        AutCommand::Lang { max_len, input } => {
            let a = load_aut(&input)?;
            Ok((
                Output::Json(json!({ "words": a.language_upto(max_len) })),
                true,
            ))
        }
        AutCommand::Cofrep { max_len, input } => {
            let a = load_aut(&input)?;
            let r = cofibrant_replacement(&a).map_err(check_err)?;
            let report = verify_replacement(&a, &r, max_len).map_err(check_err)?;
            let pass = report.holds();
            Ok((
                Output::Json(json!({
                    "object": r.object.to_json(),
                    "beta": named_map(&r.beta),
                    "certificate": r.certificate,
                    "report": report,
                })),
                pass,
            ))
        }
        AutCommand::Normalize(input) => {
            let a = load_aut(&input)?;
            let n = normalize(&a).map_err(check_err)?;
            Ok((Output::Json(to_value(&n.to_json())), true))
        }
        AutCommand::Conditions(input) => {
            let a = load_aut(&input)?;
            Ok(match check_conditions(&a) {
                Ok(()) => (Output::Json(json!({ "holds": true })), true),
                Err(w) => (Output::Json(json!({ "holds": false, "witness": w })), false),
            })
        }
        AutCommand::Verify { max_len, input } => {
            let a = load_aut(&input)?;
            let r = cofibrant_replacement(&a).map_err(check_err)?;
            let report = verify_replacement(&a, &r, max_len).map_err(check_err)?;
            let n = normalize(&a).map_err(check_err)?;
            let vacuous = a.initial_states().next().is_none();
            let normal = json!({
                "non_relational": n.is_non_relational(),
                "initial_states": n.initial_states().count(),
                "conditions": check_conditions(&n).is_ok(),
                "languages_agree": n.language_upto(max_len) == a.language_upto(max_len),
            });
            let normal_ok = vacuous
                || (n.is_non_relational()
                    && n.initial_states().count() == 1
                    && check_conditions(&n).is_ok()
                    && n.language_upto(max_len) == a.language_upto(max_len));
            let pass = report.holds() && normal_ok;
            Ok((
                Output::Json(json!({ "replacement": report, "normalize": normal })),
                pass,
            ))
        }
    }
}

fn run_rx(cmd: RxCommand) -> Outcome {
    match cmd {
        RxCommand::Compile {
            regex,
            ascii,
            max_len,
        } => {
            let r = parse_with(&regex, ParseOptions { ascii }).map_err(input_err)?;
            let a = compile(&r).map_err(check_err)?;
            let mut out = json!({ "regex": r.to_string(), "automaton": a.to_json() });
            if let Some(l) = max_len {
                out["words"] = json!(a.language_upto(l));
            }
            Ok((Output::Json(out), true))
        }
        RxCommand::Fuzz {
            seed,
            count,
            depth,
            max_len,
            alphabet,
        } => {
            let sigma: Vec<char> = alphabet.chars().collect();
            if sigma.is_empty() {
                return Err(input_err(anyhow::anyhow!("empty alphabet")));
            }
            let report = kleene_fuzz(seed, count, depth, max_len, &sigma).map_err(check_err)?;
            eprintln!("{} mismatches", report.mismatches.len());
            let pass = report.mismatches.is_empty();
            Ok((Output::Json(to_value(&report)), pass))
        }
    }
}

fn summarize(report: &AppendixReport) -> Value {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for c in &report.checks {
        *counts
            .entry(to_value(&c.kind).as_str().unwrap_or("?").to_string())
            .or_default() += 1;
    }
    json!({
        "checks": report.checks.len(),
        "by_kind": counts,
        "failures": report.failures().collect::<Vec<_>>(),
    })
}

fn run_toolkit(cmd: ToolkitCommand) -> Outcome {
    match cmd {
        ToolkitCommand::Appendix { seed } => {
            let pcs = appendix_identity_suite(
                &pcs_sample(seed, SampleSizes::default()).map_err(check_err)?,
            );
            let aut = appendix_identity_suite(
                &automata_sample(seed, SampleSizes::default()).map_err(check_err)?,
            );
            let pass = pcs.all_hold() && aut.all_hold();
            Ok((
                Output::Json(json!({ "precubical": summarize(&pcs), "automata": summarize(&aut) })),
                pass,
            ))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Pcs(c) => run_pcs(c),
        Command::Aut(c) => run_aut(c),
        Command::Rx(c) => run_rx(c),
        Command::Toolkit(c) => run_toolkit(c),
    };
    match outcome {
        Ok((output, pass)) => {
            let text = match output {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("json") + "\n",
                Output::Text(s) => s,
            };
            // A closed pipe downstream is not a failure of the check.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Check(e)) => {
            println!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::from(1)
        }
    }
}
