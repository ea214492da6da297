//! `finprob`: exact computations on finite probability spaces.
//!
//! Exit codes: 0 success, 1 violation or false result, 2 usage error,
//! 3 input error (unreadable file, syntax, invalid measure, bad query).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finprob::event_algebra::{Event, SampleSpace};
use finprob::measure::{validate_measure, ProbabilitySpace};
use finprob::query_language::{
    eval_query, parse_query, parse_space_file, QueryValue, SpaceFile, SpaceFileError,
};
use finprob::rational::{format_rational, to_decimal, DEFAULT_DECIMAL_DIGITS};
use finprob::theorem_suite::{
    emit_dependency_graph, fuzz, verify_with_partitions, NodeKind, SpaceGenerator, VerificationReport,
    DEPENDENCY_EDGES, DEPENDENCY_NODES,
};

/// Spaces up to this size are verified over every event.
const EXHAUSTIVE_VERIFY_OUTCOMES: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "finprob", version, about = "Exact probability on finite spaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also print probabilities as decimals.
    #[arg(long, global = true)]
    decimal: bool,
    /// Report wall-clock time for verify and fuzz.
    #[arg(long, global = true)]
    elapsed: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a .prob file and check the axioms.
    Check { file: PathBuf },
    /// Evaluate one query against a .prob file.
    Query { file: PathBuf, query: String },
    /// Run the theorem catalogue against a .prob file.
    Verify { file: PathBuf },
    /// Run the theorem catalogue against seeded random spaces.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(1..=64))]
        max_outcomes: u8,
    },
    /// Emit the proof dependency diagram.
    Graph {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 3;

/// A failure reported on standard error.
struct Failure {
    code: u8,
    source: String,
    message: String,
    position: Option<(usize, usize)>,
}

impl Failure {
    fn input(
        source: impl Into<String>,
        message: impl Into<String>,
        position: Option<(usize, usize)>,
    ) -> Self {
        Failure {
            code: EXIT_INPUT,
            source: source.into(),
            message: message.into(),
            position,
        }
    }

    fn report(&self, format: Format) {
        let line = match format {
            Format::Text => format!("error: {}: {}", self.source, self.message),
            Format::Json => {
                let mut v = json!({ "error": { "source": self.source, "message": self.message } });
                if let Some((line, column)) = self.position {
                    v["error"]["line"] = json!(line);
                    v["error"]["column"] = json!(column);
                }
                v.to_string()
            }
        };
        let _ = writeln!(io::stderr(), "{line}");
    }
}

/// What a successful command prints and how it exits.
struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            f.report(cli.format);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check { file } => check(cli, file),
        Command::Query { file, query } => run_query(cli, file, query),
        Command::Verify { file } => verify(cli, file),
        Command::Fuzz {
            seed,
            trials,
            max_outcomes,
        } => run_fuzz(cli, *seed, *trials, *max_outcomes as usize),
        Command::Graph { out } => graph(cli, out.as_deref()),
    }
}

fn load(path: &Path) -> Result<SpaceFile, Failure> {
    let source = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Failure::input(&source, e.to_string(), None))?;
    parse_space_file(&text).map_err(|e| {
        let position = e.span().map(|s| (s.line, s.column));
        let message = match &e {
            SpaceFileError::InvalidWeight(report) => format!("invalid weights\n{report}"),
            other => other.to_string(),
        };
        Failure::input(source, message, position)
    })
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn check(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let sf = load(path)?;
    let report = validate_measure(sf.measure());
    if !report.is_valid() {
        return Err(Failure::input(
            path.display().to_string(),
            format!("invalid measure\n{report}"),
            None,
        ));
    }
    let text = match cli.format {
        Format::Text => format!(
            "space {}: {} outcomes, {} events, {} partitions\n{report}\nvalid\n",
            sf.name(),
            sf.space().len(),
            sf.events().len(),
            sf.partitions().len(),
        ),
        Format::Json => json_text(&json!({
            "space": sf.name(),
            "outcomes": sf.space().len(),
            "events": sf.events().len(),
            "partitions": sf.partitions().len(),
            "valid": true,
            "report": report,
        })),
    };
    Ok(Output { text, code: 0 })
}

fn run_query(cli: &Cli, path: &Path, query: &str) -> Result<Output, Failure> {
    let sf = load(path)?;
    let ast = parse_query(query)
        .map_err(|e| Failure::input("query", e.to_string(), Some((e.span.line, e.span.column))))?;
    let value = eval_query(&sf, &ast)
        .map_err(|e| Failure::input("query", e.to_string(), Some((e.span.line, e.span.column))))?;

    let (code, text) = match (&value, cli.format) {
        (QueryValue::Probability(p), Format::Text) => {
            let mut s = format_rational(p);
            if cli.decimal {
                s = format!("{s} ~ {}", to_decimal(p, DEFAULT_DECIMAL_DIGITS));
            }
            (0, s + "\n")
        }
        (QueryValue::Probability(p), Format::Json) => {
            let mut v = json!({ "query": ast.to_string(), "value": format_rational(p) });
            if cli.decimal {
                v["decimal"] = json!(to_decimal(p, DEFAULT_DECIMAL_DIGITS));
            }
            (0, json_text(&v))
        }
        (QueryValue::Truth { holds, detail }, Format::Text) => {
            let mut s = format!("{holds}\n");
            if let Some(d) = detail {
                s.push_str(&format!("  {d}\n"));
            }
            (if *holds { 0 } else { EXIT_VIOLATION }, s)
        }
        (QueryValue::Truth { holds, detail }, Format::Json) => (
            if *holds { 0 } else { EXIT_VIOLATION },
            json_text(&json!({ "query": ast.to_string(), "holds": holds, "detail": detail })),
        ),
    };
    Ok(Output { text, code })
}

/// Every event for small spaces; otherwise the named events, the singletons,
/// the empty event and the whole space.
fn verification_events(sf: &SpaceFile) -> Vec<Event> {
    let space: &SampleSpace = sf.space();
    if space.len() <= EXHAUSTIVE_VERIFY_OUTCOMES {
        return space.all_events().expect("small space");
    }
    let mut events: Vec<Event> = sf.events().iter().map(|(_, e)| e.clone()).collect();
    events.extend(space.singletons());
    events.push(space.empty());
    events.push(space.full());
    let mut seen = std::collections::HashSet::new();
    events.retain(|e| seen.insert(e.clone()));
    events
}

fn render_report(cli: &Cli, mut report: VerificationReport, header: &str) -> Output {
    if !cli.elapsed {
        report.elapsed = None;
    }
    let code = if report.is_clean() { 0 } else { EXIT_VIOLATION };
    let text = match cli.format {
        Format::Text => format!("{header}\n{}", report.render_text()),
        Format::Json => json_text(&serde_json::to_value(&report).expect("report serializes")),
    };
    Output { text, code }
}

fn verify(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let sf = load(path)?;
    let start = Instant::now();
    let events = verification_events(&sf);
    let named: Vec<Event> = sf.events().iter().map(|(_, e)| e.clone()).collect();
    let ps = ProbabilitySpace::generated_by(sf.measure().clone(), &named)
        .map_err(|e| Failure::input(path.display().to_string(), e.to_string(), None))?;
    let partitions: Vec<Vec<Event>> = sf.partitions().iter().map(|(_, p)| p.clone()).collect();
    let mut report = verify_with_partitions(&ps, &events, &partitions);
    report.elapsed = Some(start.elapsed());
    let header = format!(
        "space {}: {} outcomes, {} sampled events",
        sf.name(),
        sf.space().len(),
        events.len()
    );
    Ok(render_report(cli, report, &header))
}

fn run_fuzz(cli: &Cli, seed: u64, trials: u64, max_outcomes: usize) -> Result<Output, Failure> {
    let mut gen = SpaceGenerator::new(seed);
    gen.max_outcomes = max_outcomes;
    let report = fuzz(&gen, trials).map_err(|e| Failure {
        code: 2,
        source: "fuzz".into(),
        message: e.to_string(),
        position: None,
    })?;
    let header = format!(
        "fuzz: up to {} outcomes, weights over at most {}, {} events per trial",
        gen.max_outcomes, gen.max_denominator, gen.events_per_trial
    );
    Ok(render_report(cli, report, &header))
}

fn graph_json() -> Value {
    let nodes: Vec<Value> = DEPENDENCY_NODES
        .iter()
        .map(|n| {
            let (kind, cluster) = match n.kind {
                NodeKind::Axiom => ("axiom", Value::Null),
                NodeKind::Result { upper: false, .. } => ("result", json!("combinations of events")),
                NodeKind::Result { upper: true, .. } => ("result", json!("dependent events")),
            };
            json!({ "name": n.name, "label": n.label.replace("\\n", " "), "kind": kind, "cluster": cluster })
        })
        .collect();
    let edges: Vec<Value> = DEPENDENCY_EDGES
        .iter()
        .map(|e| json!({ "from": e.from, "to": e.to, "citation": e.citation, "alternate": e.alternate }))
        .collect();
    json!({ "nodes": nodes, "edges": edges })
}

fn graph(cli: &Cli, out: Option<&Path>) -> Result<Output, Failure> {
    let rendered = match cli.format {
        Format::Text => emit_dependency_graph(),
        Format::Json => json_text(&graph_json()),
    };
    match out {
        None => Ok(Output {
            text: rendered,
            code: 0,
        }),
        Some(path) => {
            fs::write(path, rendered)
                .map_err(|e| Failure::input(path.display().to_string(), e.to_string(), None))?;
            Ok(Output {
                text: String::new(),
                code: 0,
            })
        }
    }
}
