//! Command-line frontend for the `anosov` binary.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it in-process. Exit codes: 0 positive / verified, 1 negative / rejected,
//! 2 usage or input error, 3 computational limit.

pub mod document;
pub mod syntax;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anosov_core::arith::FactorEffort;
use anosov_core::chain::{almost_commensurability_chain, verify_chain};
use anosov_core::commensurability::{
    are_commensurable, verify_certificate, CommensurabilityVerdict, Options, TraceSequence,
    DEFAULT_MAX_STEPS, DEFAULT_SEARCH_BOUND,
};
use anosov_core::conjugacy::{are_equivalent, rl_word, RlWord};
use anosov_core::{Error, Mat2};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use document::{chain_document, commensurability_document, render, LoadError, Loaded};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "anosov", version, about = "Equivalence and commensurability of torus-bundle suspension flows")]
struct Cli {
    /// Guard on the trace-merge loop.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    /// Initial coordinate box for the intertwiner search.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_SEARCH_BOUND)]
    search_bound: u64,
    /// Pollard-rho iteration budget for squarefree parts.
    #[arg(long, global = true, value_name = "N")]
    factor_effort: Option<usize>,
    /// Print nothing; report through the exit code only.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide topological equivalence (SL2(Z) conjugacy); prints a conjugator.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Print the canonical cyclic RL word.
    Canon {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Decide commensurability; prints minimal exponents and the certificate.
    Commensurable {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Emit a commensurability certificate document.
    Cover {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Write the document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit an almost-commensurability chain document between two models.
    Chain {
        #[arg(allow_hyphen_values = true)]
        m1: String,
        #[arg(allow_hyphen_values = true)]
        m2: String,
        /// Write the document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate document.
    Verify { file: PathBuf },
    /// Print tr(A^1) .. tr(A^N).
    TraceSeq {
        #[arg(allow_hyphen_values = true)]
        a: String,
        n: u64,
    },
}

/// Terminal state of one invocation.
enum Outcome {
    /// Exit code plus the text for standard output.
    Done(i32, String),
    /// Exit code plus a one-line diagnostic for standard error.
    Failed(i32, String),
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome::Failed(EXIT_USAGE, msg.into())
}

fn core_failure(e: Error) -> Outcome {
    let code = match e {
        Error::StepLimitExceeded { .. }
        | Error::FactorizationLimit(_)
        | Error::NoNonsingularIntertwiner(_) => EXIT_LIMIT,
        _ => EXIT_USAGE,
    };
    Outcome::Failed(code, e.to_string())
}

fn mat_json(m: &Mat2) -> Value {
    json!([
        [m.a.to_string(), m.b.to_string()],
        [m.c.to_string(), m.d.to_string()]
    ])
}

fn word_json(w: &RlWord) -> Value {
    json!({
        "word": w.to_string(),
        "exponents": w.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn verdict_json(v: &CommensurabilityVerdict) -> Value {
    let certificate = v.certificate.as_ref().map(|c| {
        match serde_json::to_value(commensurability_document(c)).expect("serializes") {
            Value::Object(mut map) => map.remove("certificate").unwrap_or(Value::Null),
            other => other,
        }
    });
    json!({
        "kind": "commensurability_verdict",
        "commensurable": v.commensurable,
        "minimal_exponents": v.minimal_exponents.map(|(i, j)| [i.to_string(), j.to_string()]),
        "common_trace": v.common_trace.as_ref().map(|t| t.to_string()),
        "squarefree_a": v.squarefree_a.to_string(),
        "squarefree_b": v.squarefree_b.to_string(),
        "squared_a": v.squared_a,
        "squared_b": v.squared_b,
        "certificate": certificate,
    })
}

fn emit(text: String, output: Option<PathBuf>, code: i32) -> Outcome {
    match output {
        None => Outcome::Done(code, text),
        Some(path) => match std::fs::write(&path, text) {
            Ok(()) => Outcome::Done(code, String::new()),
            Err(e) => usage(format!("cannot write '{}': {e}", path.display())),
        },
    }
}

fn execute(cli: Cli) -> Outcome {
    let mut opts = Options {
        max_steps: cli.max_steps,
        search_bound: cli.search_bound,
        factor_effort: FactorEffort::default(),
    };
    if let Some(n) = cli.factor_effort {
        opts.factor_effort.rho_iterations = n;
    }
    macro_rules! parse {
        ($f:path, $s:expr) => {
            match $f(&$s) {
                Ok(v) => v,
                Err(msg) => return usage(msg),
            }
        };
    }
    macro_rules! core {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(e) => return core_failure(e),
            }
        };
    }
    match cli.command {
        Command::Equiv { a, b } => {
            let a = parse!(syntax::parse_hyperbolic, a);
            let b = parse!(syntax::parse_hyperbolic, b);
            let v = core!(are_equivalent(&a, &b));
            let out = json!({
                "kind": "equivalence_verdict",
                "equivalent": v.equivalent,
                "conjugator": v.conjugator.as_ref().map(mat_json),
                "canonical_a": word_json(&v.canonical_a),
                "canonical_b": word_json(&v.canonical_b),
            });
            let code = if v.equivalent { EXIT_POSITIVE } else { EXIT_NEGATIVE };
            Outcome::Done(code, pretty(&out))
        }
        Command::Canon { a } => {
            let a = parse!(syntax::parse_hyperbolic, a);
            let (word, witness) = core!(rl_word(&a));
            let mut out = word_json(&word);
            out["kind"] = json!("canonical_word");
            out["witness"] = mat_json(&witness);
            Outcome::Done(EXIT_POSITIVE, pretty(&out))
        }
        Command::Commensurable { a, b } => {
            let a = parse!(syntax::parse_matrix, a);
            let b = parse!(syntax::parse_matrix, b);
            let v = core!(are_commensurable(&a, &b, &opts));
            let code = if v.commensurable { EXIT_POSITIVE } else { EXIT_NEGATIVE };
            Outcome::Done(code, pretty(&verdict_json(&v)))
        }
        Command::Cover { a, b, output } => {
            let a = parse!(syntax::parse_matrix, a);
            let b = parse!(syntax::parse_matrix, b);
            let v = core!(are_commensurable(&a, &b, &opts));
            match v.certificate {
                Some(c) => emit(render(&commensurability_document(&c)), output, EXIT_POSITIVE),
                None => Outcome::Failed(
                    EXIT_NEGATIVE,
                    format!(
                        "not commensurable: squarefree parts of t^2-4 differ ({} vs {})",
                        v.squarefree_a, v.squarefree_b
                    ),
                ),
            }
        }
        Command::Chain { m1, m2, output } => {
            let m1 = parse!(syntax::parse_model, m1);
            let m2 = parse!(syntax::parse_model, m2);
            let chain = core!(almost_commensurability_chain(&m1, &m2, &opts));
            emit(render(&chain_document(&chain)), output, EXIT_POSITIVE)
        }
        Command::Verify { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return usage(format!("cannot read '{}': {e}", file.display())),
            };
            let verdict = match document::load(&text) {
                Err(e @ LoadError::Malformed(_)) => return usage(e.to_string()),
                Err(LoadError::Invalid(msg)) => {
                    return Outcome::Failed(EXIT_NEGATIVE, format!("rejected: {msg}"))
                }
                Ok(Loaded::Commensurability(c)) => {
                    verify_certificate(&c).map_err(|v| v.to_string())
                }
                Ok(Loaded::Chain(c)) => verify_chain(&c).map_err(|v| v.to_string()),
            };
            match verdict {
                Ok(()) => Outcome::Done(EXIT_POSITIVE, "verified\n".into()),
                Err(msg) => Outcome::Failed(EXIT_NEGATIVE, format!("rejected: {msg}")),
            }
        }
        Command::TraceSeq { a, n } => {
            let a = parse!(syntax::parse_hyperbolic, a);
            let mut seq = TraceSequence::of(&a);
            let traces: Vec<String> = (1..=n as usize).map(|i| seq.get(i).to_string()).collect();
            let out = json!({ "kind": "trace_sequence", "traces": traces });
            Outcome::Done(EXIT_POSITIVE, pretty(&out))
        }
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let quiet = args.iter().any(|a| a == "--quiet");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_POSITIVE };
            if !quiet {
                let text = e.render().to_string();
                let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            }
            return code;
        }
    };
    let quiet = cli.quiet;
    let (code, text, to_err) = match execute(cli) {
        Outcome::Done(code, text) => (code, text, false),
        Outcome::Failed(code, msg) => {
            let prefix = if code == EXIT_NEGATIVE { "" } else { "error: " };
            (code, format!("{prefix}{msg}\n"), true)
        }
    };
    if !quiet {
        let _ = if to_err { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
    }
    code
}
