use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scattered::oracle::run_suite;
use scattered::stability::TwinCard;
use scattered::term::{parse_term, truncate_with, BUILTIN_NAMES};
use scattered::twins::{almost_disjoint_family, LabelledPath};
use scattered::{Config, Engine, Error, Term, Tri};

const EXIT_UNDECIDED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ORACLE: u8 = 3;
const EXIT_OTHER: u8 = 4;

#[derive(Parser)]
#[command(
    name = "scattered",
    version,
    about = "Embeddings, end ranks and twins of scattered trees"
)]
struct Cli {
    /// Stages of a generated sequence examined before answering unknown.
    #[arg(long, global = true, default_value_t = Config::default().horizon)]
    horizon: usize,
    /// Copies kept of an infinite multiplicity when truncating.
    #[arg(long, global = true, default_value_t = Config::default().width)]
    width: usize,
    /// Exit 1 when the answer contains an undecided part.
    #[arg(long, global = true)]
    strict: bool,
    /// Write the output here as well as to stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability certificate and twin cardinality.
    Analyze { input: String },
    /// Rank of the space of ends.
    Rank { input: String },
    /// Shift periods, regularity and origin of the distinguished end.
    Ends { input: String },
    /// Count or list twins of a term or a labelled path.
    Twins {
        input: String,
        #[arg(long, conflicts_with = "enumerate")]
        count: bool,
        #[arg(long, value_name = "K")]
        enumerate: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print each twin as a full term.
        #[arg(long)]
        full: bool,
    },
    /// Finite truncation as DOT or JSON.
    Truncate {
        input: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exhaustive and seeded consistency checks.
    Oracle {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The built-in examples with their expected answers.
    Examples,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    Parse(Error),
    Undecided(String),
    Oracle(Value),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::Ordinal(_) => Failure::Parse(e),
            Error::Undecided(msg) => Failure::Undecided(msg),
            e => Failure::Other(e),
        }
    }
}

/// Reads `@path` from a file, otherwise takes the text itself.
fn input_text(input: &str) -> Result<String, Failure> {
    match input.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Other(Error::Precondition(format!("{path}: {e}")))),
        None => Ok(input.to_string()),
    }
}

fn term(input: &str) -> Result<Term, Failure> {
    Ok(parse_term(&input_text(input)?)?)
}

fn has_unknown(v: &Value) -> bool {
    match v {
        Value::String(s) => s == "unknown",
        Value::Array(xs) => xs.iter().any(has_unknown),
        Value::Object(m) => m.values().any(has_unknown),
        _ => false,
    }
}

struct TwinRequest {
    count: bool,
    enumerate: Option<usize>,
    seed: u64,
    full: bool,
}

fn twins_of_term(engine: &Engine, t: &Term, req: &TwinRequest) -> Result<Value, Failure> {
    let report = engine.classify(t)?;
    let k = match req.enumerate {
        Some(k) if !req.count => k,
        _ => return Ok(json!({ "twins": report.twins, "notes": report.notes })),
    };
    let (family, built): (Vec<Term>, Vec<Value>) = match report.twins {
        TwinCard::Infinite => (1..=k)
            .map(|n| Ok((engine.twin_n(t, n)?, json!({ "pruned": n }))))
            .collect::<Result<Vec<_>, Error>>()?
            .into_iter()
            .unzip(),
        TwinCard::Continuum => {
            let fam = almost_disjoint_family(k.max(1), req.seed, 12)?;
            fam.sets
                .iter()
                .take(k)
                .map(|s| {
                    Ok((
                        engine.twin_from_subset(t, s)?,
                        json!({ "copied_forward_from": s }),
                    ))
                })
                .collect::<Result<Vec<_>, Error>>()?
                .into_iter()
                .unzip()
        }
        card => {
            return Err(Failure::Other(Error::Precondition(format!(
                "twin cardinality is {card}; no family to list"
            ))))
        }
    };
    let mut all = vec![t.clone()];
    all.extend(family.iter().cloned());
    let members: Vec<Value> = family
        .iter()
        .zip(built)
        .map(|(f, mut b)| {
            if req.full {
                b["term"] = json!(f.to_string());
            }
            b
        })
        .collect();
    Ok(json!({
        "twins": report.twins,
        "family": members,
        "pairwise_distinct_depth": scattered::twins::DISTINCTNESS_DEPTH,
        "pairwise_distinct": scattered::twins::pairwise_distinct(&all, scattered::twins::DISTINCTNESS_DEPTH),
    }))
}

fn twins_of_path(p: &LabelledPath, req: &TwinRequest) -> Result<Value, Failure> {
    let (card, reason) = p.twin_count();
    match req.enumerate {
        Some(k) if !req.count => {
            let (family, note) = p.enumerate_twins(k)?;
            Ok(json!({
                "twins": card,
                "reason": reason,
                "family": family.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "note": note,
            }))
        }
        _ => Ok(json!({ "twins": card, "reason": reason })),
    }
}

fn examples(engine: &Engine) -> Result<Value, Failure> {
    let expected = [
        ("ex1", "1", "continuum", "|stage n| = 2^n"),
        ("ex2", "1", "continuum", "infinitely branching copies"),
        ("ex3", "2", "continuum", "combs along the spine"),
        ("ex4", "1", "one", "every self-embedding is onto"),
    ];
    let mut out = Vec::new();
    for ((name, text), (_, rank, twins, remark)) in BUILTIN_NAMES.iter().zip(expected) {
        let t = parse_term(name)?;
        let report = engine.classify(&t)?;
        out.push(json!({
            "name": name,
            "term": text,
            "expected": { "rank": rank, "top_ends": 1, "twins": twins },
            "computed": report,
            "remark": remark,
        }));
    }
    Ok(Value::Array(out))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let engine = Engine::new(Config {
        horizon: cli.horizon,
        width: cli.width,
        ..Config::default()
    });
    let value = match &cli.command {
        Command::Analyze { input } => {
            serde_json::to_value(engine.classify(&term(input)?)?).expect("serializable")
        }
        Command::Rank { input } => {
            serde_json::to_value(engine.rank_summary(&term(input)?)?).expect("serializable")
        }
        Command::Ends { input } => {
            serde_json::to_value(engine.end_report(&term(input)?)?).expect("serializable")
        }
        Command::Twins {
            input,
            count,
            enumerate,
            seed,
            full,
        } => {
            let req = TwinRequest {
                count: *count,
                enumerate: *enumerate,
                seed: *seed,
                full: *full,
            };
            let text = input_text(input)?;
            if text.trim_start().starts_with("lpath") {
                twins_of_path(&text.parse()?, &req)?
            } else {
                twins_of_term(&engine, &parse_term(&text)?, &req)?
            }
        }
        Command::Truncate { input, depth, format } => {
            let tr = truncate_with(&term(input)?, *depth, cli.width);
            match format {
                Format::Dot => return Ok(tr.to_dot()),
                Format::Json => tr.to_json(),
            }
        }
        Command::Oracle { suite, max_n, seed } => {
            let reports = run_suite(suite, *max_n, *seed)?;
            let passed = reports.iter().all(|r| r.passed());
            let value = json!({ "passed": passed, "reports": reports });
            if !passed {
                return Err(Failure::Oracle(value));
            }
            value
        }
        Command::Examples => examples(&engine)?,
    };
    if cli.strict && has_unknown(&value) {
        return Err(Failure::Undecided(format!(
            "undecided within horizon {}: {value}",
            cli.horizon
        )));
    }
    Ok(serde_json::to_string_pretty(&value).expect("serializable") + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: {path}: {e}");
                    return ExitCode::FAILURE;
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Undecided(msg)) => {
            if cli.strict {
                eprintln!("undecided: {msg}");
                ExitCode::from(EXIT_UNDECIDED)
            } else {
                println!("{}", json!({ "result": Tri::Unknown, "reason": msg }));
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Oracle(report)) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            ExitCode::from(EXIT_ORACLE)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_OTHER)
        }
    }
}
