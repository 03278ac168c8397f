//! Command-line front end. All analysis lives in the library; this binary
//! parses arguments, reads inputs, and renders reports.
//!
//! Exit codes: 0 on success, 1 when an analysis reports a negative finding
//! (unparseable or non-valid schema, unresolvable recovery, refused
//! introspection), 2 on usage or IO errors.

use clap::{Parser, Subcommand, ValueEnum};
use gqlscan::complexity::classify;
use gqlscan::corpus::{corpus_report_with, run_funnel};
use gqlscan::introspection::{introspect, IntrospectError};
use gqlscan::lint::lint;
use gqlscan::metrics::{characteristics_with, MetricsOptions, DEFAULT_LARGE_THRESHOLD};
use gqlscan::pagination::detect_pagination;
use gqlscan::parser::{parse_document, parse_schema, parse_schema_named};
use gqlscan::printer::print_document;
use gqlscan::recovery::{recover, CandidateFile, RecoveryStatus};
use gqlscan::report::{
    self, complexity_value, error_value, parse_summary, recovery_value, validation_value,
    OutputFormat,
};
use gqlscan::search::{ReplaySearchClient, SearchProvider};
use gqlscan::typegraph::{build_type_graph_with, TypeGraphOptions};
use gqlscan::validate::validate;
use rayon::prelude::*;
use serde_json::{json, Value as Json};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gqlscan", version, about = "Static analysis for GraphQL schemas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
enum Format {
    Json,
    Table,
}

impl From<Format> for OutputFormat {
    fn from(format: Format) -> OutputFormat {
        match format {
            Format::Json => OutputFormat::Json,
            Format::Table => OutputFormat::Table,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse files and report structure and equivalence fingerprints.
    Parse {
        /// Schema files (`-` reads stdin).
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Fingerprint under order-insensitive equivalence.
        #[arg(long)]
        canonical: bool,
    },
    /// Check completeness and consistency.
    Validate {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Reassemble a split schema by appending files from a pool directory.
    Recover {
        /// Entry file establishing the query operation.
        entry: String,
        /// Directory whose .graphql/.gql files form the candidate pool.
        #[arg(long)]
        root: PathBuf,
    },
    /// Report schema characteristics.
    Stats {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Definition count above which a schema counts as large.
        #[arg(long, default_value_t = DEFAULT_LARGE_THRESHOLD)]
        threshold: u64,
    },
    /// Check naming conventions.
    Lint {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Classify worst-case response growth.
    Complexity {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Query size for the instantiated response bound.
        #[arg(long, requires = "d")]
        n: Option<u64>,
        /// Assumed list length for the instantiated response bound.
        #[arg(long, requires = "n")]
        d: Option<u64>,
        /// Walk only types reachable from the query root.
        #[arg(long)]
        query_only: bool,
    },
    /// Detect slicing arguments and the connections pattern.
    Pagination {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Aggregate a corpus-wide report over many schema files.
    Report {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Definition count above which a schema counts as large.
        #[arg(long, default_value_t = DEFAULT_LARGE_THRESHOLD)]
        threshold: u64,
    },
    /// Run the filter funnel over a fixture tree and write its outputs.
    Funnel {
        /// Fixture directory: a manifest.json or an <owner>/<name>/<path> tree.
        root: PathBuf,
        /// Directory receiving funnel.json, dispositions.ndjson, and
        /// corpus_report.json.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Fetch a schema from an endpoint over the introspection protocol.
    Introspect {
        endpoint: String,
        /// Extra request header as "Name: value" (repeatable).
        #[arg(long)]
        header: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = OutputFormat::from(cli.format);
    let code = match cli.command {
        Command::Parse { inputs, canonical } => {
            each_input(&inputs, format, |text| match parse_document(text) {
                Ok(document) => (parse_summary(&document, canonical), false),
                Err(e) => (error_value(e.to_string()), true),
            })
        }
        Command::Validate { inputs } => each_input(&inputs, format, |text| {
            match parse_schema(text) {
                Ok(doc) => {
                    let result = validate(&doc);
                    let negative = !result.is_valid();
                    (validation_value(&result), negative)
                }
                Err(e) => (error_value(e.to_string()), true),
            }
        }),
        Command::Recover { entry, root } => run_recover(&entry, &root, format),
        Command::Stats { inputs, threshold } => {
            let options = MetricsOptions {
                large_threshold: threshold,
                ..MetricsOptions::default()
            };
            each_schema(&inputs, format, move |doc| {
                (as_json(&characteristics_with(doc, options)), false)
            })
        }
        Command::Lint { inputs } => {
            each_schema(&inputs, format, |doc| (as_json(&lint(doc)), false))
        }
        Command::Complexity {
            inputs,
            n,
            d,
            query_only,
        } => {
            let bound = n.zip(d);
            each_schema(&inputs, format, move |doc| {
                let graph = build_type_graph_with(doc, TypeGraphOptions { query_only });
                (complexity_value(&classify(&graph), bound), false)
            })
        }
        Command::Pagination { inputs } => {
            each_schema(&inputs, format, |doc| (as_json(&detect_pagination(doc)), false))
        }
        Command::Report { inputs, threshold } => run_report(&inputs, threshold, format),
        Command::Funnel { root, out } => run_funnel_command(&root, &out, format),
        Command::Introspect { endpoint, header } => run_introspect(&endpoint, &header, format),
    };
    ExitCode::from(code)
}

fn as_json(value: &impl serde::Serialize) -> Json {
    serde_json::to_value(value).expect("reports serialize")
}

/// Reads every input up front; any IO failure is a usage error.
fn read_inputs(inputs: &[String]) -> Result<Vec<(String, String)>, u8> {
    inputs
        .iter()
        .map(|input| {
            let content = if input == "-" {
                let mut text = String::new();
                std::io::stdin()
                    .read_to_string(&mut text)
                    .map(|_| text)
                    .map_err(|e| e.to_string())
            } else {
                std::fs::read_to_string(input).map_err(|e| e.to_string())
            };
            match content {
                Ok(text) => Ok((input.clone(), text)),
                Err(e) => {
                    eprintln!("gqlscan: {input}: {e}");
                    Err(2)
                }
            }
        })
        .collect()
}

/// Runs one analysis per input in parallel; a single input prints one
/// report, several print an array in input order.
fn each_input<F>(inputs: &[String], format: OutputFormat, analyze: F) -> u8
where
    F: Fn(&str) -> (Json, bool) + Sync,
{
    let texts = match read_inputs(inputs) {
        Ok(texts) => texts,
        Err(code) => return code,
    };
    let results: Vec<(Json, bool)> = texts
        .par_iter()
        .map(|(path, text)| {
            let (value, negative) = analyze(text);
            (report::with_file(path, value), negative)
        })
        .collect();
    let negative = results.iter().any(|(_, n)| *n);
    let reports: Vec<Json> = results.into_iter().map(|(v, _)| v).collect();
    let value = if reports.len() == 1 {
        reports.into_iter().next().expect("one report")
    } else {
        Json::Array(reports)
    };
    emit(&value, format);
    u8::from(negative)
}

fn each_schema<F>(inputs: &[String], format: OutputFormat, analyze: F) -> u8
where
    F: Fn(&gqlscan::ast::SchemaDocument) -> (Json, bool) + Sync,
{
    each_input(inputs, format, |text| match parse_schema(text) {
        Ok(doc) => analyze(&doc),
        Err(e) => (error_value(e.to_string()), true),
    })
}

fn emit(value: &Json, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{}", report::to_stable_json(value)),
        OutputFormat::Table => print!("{}", report::render_table(value)),
    }
}

/// Collects the candidate pool under `root`, skipping files that do not
/// parse as pure schemas (with a note on stderr).
fn pool_under(root: &PathBuf) -> Result<Vec<CandidateFile>, u8> {
    let mut pool = Vec::new();
    let walk = walkdir::WalkDir::new(root).sort_by_file_name();
    for entry in walk {
        let entry = entry.map_err(|e| {
            eprintln!("gqlscan: {}: {e}", root.display());
            2
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let path = entry.path();
        let is_schema_file = matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("graphql" | "gql")
        );
        if !is_schema_file {
            continue;
        }
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| {
            eprintln!("gqlscan: {display}: {e}");
            2
        })?;
        match parse_schema_named(&text, Some(display.clone())) {
            Ok(doc) => pool.push(CandidateFile::new(display, doc)),
            Err(e) => eprintln!("gqlscan: skipping pool file {display}: {e}"),
        }
    }
    Ok(pool)
}

fn run_recover(entry: &str, root: &PathBuf, format: OutputFormat) -> u8 {
    let entry_text = match std::fs::read_to_string(entry) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("gqlscan: {entry}: {e}");
            return 2;
        }
    };
    let entry_doc = match parse_schema(&entry_text) {
        Ok(doc) => doc,
        Err(e) => {
            emit(&report::with_file(entry, error_value(e.to_string())), format);
            return 1;
        }
    };
    let pool = match pool_under(root) {
        Ok(pool) => pool,
        Err(code) => return code,
    };
    let entry_file = CandidateFile::new(entry.to_string(), entry_doc);
    match recover(&entry_file, &pool) {
        Ok(outcome) => {
            let negative = outcome.status == RecoveryStatus::Unresolvable;
            emit(&report::with_file(entry, recovery_value(&outcome)), format);
            u8::from(negative)
        }
        Err(e) => {
            emit(&report::with_file(entry, error_value(e.to_string())), format);
            1
        }
    }
}

fn run_report(inputs: &[String], threshold: u64, format: OutputFormat) -> u8 {
    let texts = match read_inputs(inputs) {
        Ok(texts) => texts,
        Err(code) => return code,
    };
    let mut docs = Vec::with_capacity(texts.len());
    for (path, text) in &texts {
        match parse_schema_named(text, Some(path.clone())) {
            Ok(doc) => docs.push(doc),
            Err(e) => {
                eprintln!("gqlscan: {path}: {e}");
                return 1;
            }
        }
    }
    let options = MetricsOptions {
        large_threshold: threshold,
        ..MetricsOptions::default()
    };
    match corpus_report_with(&docs, options) {
        Ok(report) => {
            emit(&as_json(&report), format);
            0
        }
        Err(e) => {
            eprintln!("gqlscan: {e}");
            2
        }
    }
}

fn run_funnel_command(root: &PathBuf, out: &PathBuf, format: OutputFormat) -> u8 {
    let client = ReplaySearchClient::new(root);
    let hits = match client.search("", (0, u64::MAX)) {
        Ok(hits) => hits,
        Err(e) => {
            eprintln!("gqlscan: {}: {e}", root.display());
            return 2;
        }
    };
    let outcome = run_funnel(hits);
    if let Err(e) = std::fs::create_dir_all(out) {
        eprintln!("gqlscan: {}: {e}", out.display());
        return 2;
    }
    let write = |name: &str, content: String| -> Result<(), u8> {
        let path = out.join(name);
        std::fs::write(&path, content).map_err(|e| {
            eprintln!("gqlscan: {}: {e}", path.display());
            2
        })
    };
    let mut counts_json = report::to_stable_json(&as_json(&outcome.counts));
    counts_json.push('\n');
    if let Err(code) = write("funnel.json", counts_json) {
        return code;
    }
    if let Err(code) = write("dispositions.ndjson", outcome.dispositions_ndjson()) {
        return code;
    }
    let docs: Vec<_> = outcome.survivors.iter().map(|s| s.document.clone()).collect();
    match corpus_report_with(&docs, MetricsOptions::default()) {
        Ok(report) => {
            let mut text = report::to_stable_json(&as_json(&report));
            text.push('\n');
            if let Err(code) = write("corpus_report.json", text) {
                return code;
            }
        }
        Err(_) => {
            eprintln!("gqlscan: no schema survived the funnel; corpus_report.json not written");
        }
    }
    emit(&as_json(&outcome.counts), format);
    0
}

fn run_introspect(endpoint: &str, headers: &[String], format: OutputFormat) -> u8 {
    let mut parsed = Vec::with_capacity(headers.len());
    for header in headers {
        match header.split_once(':') {
            Some((name, value)) => {
                parsed.push((name.trim().to_string(), value.trim().to_string()));
            }
            None => {
                eprintln!("gqlscan: header {header:?} is not \"Name: value\"");
                return 2;
            }
        }
    }
    match introspect(endpoint, &parsed) {
        Ok(doc) => {
            match format {
                OutputFormat::Json => emit(
                    &json!({
                        "endpoint": endpoint,
                        "definition_count": doc.definitions.len(),
                        "sdl": print_document(&doc),
                    }),
                    format,
                ),
                // The schema text itself is the human-readable form.
                OutputFormat::Table => print!("{}", print_document(&doc)),
            }
            0
        }
        Err(e @ IntrospectError::Network(_)) => {
            eprintln!("gqlscan: {endpoint}: {e}");
            2
        }
        Err(e) => {
            eprintln!("gqlscan: {endpoint}: {e}");
            1
        }
    }
}
