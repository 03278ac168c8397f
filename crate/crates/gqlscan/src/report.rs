//! Output rendering shared by every subcommand.
//!
//! JSON output is byte-stable: values pass through [`serde_json::Value`],
//! whose object representation keeps keys sorted, and every float in a
//! report is rounded before it gets here. Tables present the same data
//! for human eyes and are not byte-pinned.

use crate::ast::Document;
use crate::complexity::{response_bound, ComplexityReport};
use crate::equiv::{fingerprint, fingerprint_canonical};
use crate::parser::schema_from_document;
use crate::printer::print_document;
use crate::recovery::RecoveryOutcome;
use crate::validate::ValidationResult;
use serde::Serialize;
use serde_json::{json, Value as Json};

#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum OutputFormat {
    Json,
    Table,
}

/// Renders any serializable report in the requested format.
pub fn render(value: &impl Serialize, format: OutputFormat) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    match format {
        OutputFormat::Json => to_stable_json(&value),
        OutputFormat::Table => render_table(&value),
    }
}

/// Key-sorted, pretty-printed JSON; byte-identical across runs.
pub fn to_stable_json(value: &Json) -> String {
    serde_json::to_string_pretty(value).expect("JSON values render")
}

/// Indented key/value listing; arrays of flat objects become aligned
/// columns.
pub fn render_table(value: &Json) -> String {
    let mut out = String::new();
    table_into(value, 0, &mut out);
    out
}

fn table_into(value: &Json, indent: usize, out: &mut String) {
    match value {
        Json::Object(map) => {
            for (key, entry) in map {
                match entry {
                    Json::Object(_) => {
                        push_line(out, indent, &format!("{key}:"));
                        table_into(entry, indent + 2, out);
                    }
                    Json::Array(items) if !items.is_empty() && items.iter().all(Json::is_object) => {
                        push_line(out, indent, &format!("{key}:"));
                        columns(items, indent + 2, out);
                    }
                    Json::Array(items) => {
                        let rendered: Vec<String> = items.iter().map(inline_text).collect();
                        push_line(out, indent, &format!("{key}: [{}]", rendered.join(", ")));
                    }
                    Json::String(s) if s.contains('\n') => {
                        push_line(out, indent, &format!("{key}:"));
                        for line in s.lines() {
                            push_line(out, indent + 2, line);
                        }
                    }
                    scalar => {
                        push_line(out, indent, &format!("{key}: {}", inline_text(scalar)));
                    }
                }
            }
        }
        Json::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                table_into(item, indent, out);
            }
        }
        scalar => push_line(out, indent, &inline_text(scalar)),
    }
}

fn columns(items: &[Json], indent: usize, out: &mut String) {
    // Objects iterate key-sorted, so the column order is the sorted key
    // union.
    let mut keys: Vec<&str> = Vec::new();
    for item in items {
        if let Json::Object(map) = item {
            for key in map.keys() {
                if !keys.iter().any(|k| k == key) {
                    keys.push(key);
                }
            }
        }
    }
    keys.sort_unstable();
    let cell = |item: &Json, key: &str| -> String {
        item.get(key).map(inline_text).unwrap_or_else(|| "-".to_string())
    };
    let mut widths: Vec<usize> = keys.iter().map(|k| k.len()).collect();
    for item in items {
        for (i, key) in keys.iter().enumerate() {
            widths[i] = widths[i].max(cell(item, key).len());
        }
    }
    let render_row = |texts: Vec<String>| -> String {
        texts
            .iter()
            .zip(&widths)
            .map(|(text, width)| format!("{text:<width$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    push_line(out, indent, &render_row(keys.iter().map(|k| k.to_string()).collect()));
    for item in items {
        push_line(out, indent, &render_row(keys.iter().map(|k| cell(item, k)).collect()));
    }
}

fn inline_text(value: &Json) -> String {
    match value {
        Json::String(s) => s.clone(),
        Json::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn push_line(out: &mut String, indent: usize, text: &str) {
    for _ in 0..indent {
        out.push(' ');
    }
    out.push_str(text);
    out.push('\n');
}

/// FNV-1a 64-bit hex digest; stable across platforms and versions.
pub fn content_hash(text: &str) -> String {
    const OFFSET: u64 = 0xcbf29ce484222325;
    const PRIME: u64 = 0x100000001b3;
    let mut hash = OFFSET;
    for byte in text.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(PRIME);
    }
    format!("{hash:016x}")
}

/// Tags a per-file report with its input path.
pub fn with_file(file: &str, value: Json) -> Json {
    match value {
        Json::Object(mut map) => {
            map.insert("file".to_string(), Json::String(file.to_string()));
            Json::Object(map)
        }
        other => json!({ "file": file, "report": other }),
    }
}

pub fn error_value(message: impl Into<String>) -> Json {
    json!({ "status": "error", "error": message.into() })
}

/// Structure summary for a parsed document. The fingerprint is an
/// equivalence key: two pure schemas hash equal iff they are
/// AST-equivalent (canonically when requested).
pub fn parse_summary(document: &Document, canonical: bool) -> Json {
    use crate::ast::DocumentDefinition;
    let type_system = document
        .definitions
        .iter()
        .filter(|d| matches!(d, DocumentDefinition::TypeSystem(_)))
        .count();
    let executable = document.definitions.len() - type_system;
    let mut value = json!({
        "status": "ok",
        "definition_count": type_system,
        "executable_definition_count": executable,
        "pure_schema": document.is_pure_schema(),
    });
    if document.is_pure_schema() {
        let schema = schema_from_document(document.clone(), None)
            .expect("pure documents convert to schemas");
        let key = if canonical {
            fingerprint_canonical(&schema)
        } else {
            fingerprint(&schema)
        };
        let map = value.as_object_mut().expect("summary is an object");
        map.insert("fingerprint".to_string(), Json::String(content_hash(&key)));
        map.insert(
            "equivalence".to_string(),
            Json::String(if canonical { "canonical" } else { "exact" }.to_string()),
        );
    }
    value
}

pub fn validation_value(result: &ValidationResult) -> Json {
    json!({
        "status": result.status.label(),
        "has_query_operation": result.has_query_operation,
        "missing_references": result
            .missing_references
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
        "diagnostics": result
            .diagnostics
            .iter()
            .map(|d| {
                json!({
                    "code": d.code.label(),
                    "message": d.message,
                    "subject": d.subject,
                    "line": d.loc.line,
                    "column": d.loc.column,
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn recovery_value(outcome: &RecoveryOutcome) -> Json {
    let mut value = json!({
        "status": outcome.status.label(),
        "appended_paths": outcome.appended_paths,
        "unresolved": outcome.unresolved.iter().cloned().collect::<Vec<_>>(),
    });
    if let Some(merged) = &outcome.merged {
        value.as_object_mut().expect("recovery value is an object").insert(
            "merged_schema".to_string(),
            Json::String(print_document(merged)),
        );
    }
    value
}

/// Classification plus, when `(n, d)` is supplied, the response bound the
/// class implies for queries of size `n` over lists of length `d`.
pub fn complexity_value(report: &ComplexityReport, bound: Option<(u64, u64)>) -> Json {
    let mut value = json!({
        "class": report.class.label(),
        "k": report.k,
        "witness": report.witness_steps(),
    });
    if let Some((n, d)) = bound {
        let bound_value = match report.k {
            None => json!({
                "n": n, "d": d,
                "error": "no closed-form bound: worst-case response size grows exponentially",
            }),
            Some(k) => match response_bound(n, k, d) {
                Ok(v) => {
                    let rendered = u64::try_from(v)
                        .map(Json::from)
                        .unwrap_or_else(|_| Json::String(v.to_string()));
                    json!({ "n": n, "d": d, "value": rendered })
                }
                Err(e) => json!({ "n": n, "d": d, "error": e.to_string() }),
            },
        };
        value
            .as_object_mut()
            .expect("complexity value is an object")
            .insert("bound".to_string(), bound_value);
    }
    value
}
