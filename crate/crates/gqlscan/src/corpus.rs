//! The corpus filter funnel: from raw search hits to valid, unique
//! schemas, with a disposition recorded for every input file, plus the
//! corpus-wide report aggregating every analysis.

use crate::ast::SchemaDocument;
use crate::complexity::{classify, ComplexityClass};
use crate::equiv::fingerprint;
use crate::lint::{corpus_convention_summary, lint, ConventionSummary, LintReport};
use crate::metrics::{
    characteristics_with, corpus_aggregate, round4, CorpusStats, EmptyCorpusError, MetricsOptions,
    SchemaStats,
};
use crate::pagination::{detect_pagination, Coverage, PaginationReport};
use crate::parser::{parse_document, schema_from_document};
use crate::recovery::{recover, CandidateFile, RecoveryStatus};
use crate::search::SearchHit;
use crate::typegraph::build_type_graph;
use crate::validate::{validate, ValidationStatus};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Stage counts in funnel order. Each stage's count is the number of files
/// still alive after that filter.
#[derive(Clone, Copy, Debug, Default, Eq, PartialEq, Serialize)]
pub struct FunnelCounts {
    pub search_result_files: u64,
    pub unique_files: u64,
    pub sdl_files: u64,
    pub pure_schemas: u64,
    pub complete_or_recovered: u64,
    pub valid_schemas: u64,
    pub valid_unique_schemas: u64,
}

pub const STAGE_UNIQUE_FILES: &str = "unique_files";
pub const STAGE_SDL_FILES: &str = "sdl_files";
pub const STAGE_PURE_SCHEMAS: &str = "pure_schemas";
pub const STAGE_COMPLETE_OR_RECOVERED: &str = "complete_or_recovered";
pub const STAGE_VALID_SCHEMAS: &str = "valid_schemas";
pub const STAGE_VALID_UNIQUE_SCHEMAS: &str = "valid_unique_schemas";

/// Fate of one input file: either it survived the whole funnel or it was
/// dropped at `stage` for `reason`.
#[derive(Clone, Debug, Serialize)]
pub struct Disposition {
    pub url: String,
    pub repository: String,
    pub path: String,
    pub outcome: &'static str,
    pub stage: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub appended_paths: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SurvivingSchema {
    pub url: String,
    pub repository: String,
    pub path: String,
    pub document: SchemaDocument,
    pub recovered: bool,
    pub appended_paths: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct FunnelOutcome {
    pub counts: FunnelCounts,
    /// One entry per input file, in URL order.
    pub dispositions: Vec<Disposition>,
    pub survivors: Vec<SurvivingSchema>,
}

impl FunnelOutcome {
    pub fn dispositions_ndjson(&self) -> String {
        let mut out = String::new();
        for d in &self.dispositions {
            out.push_str(&serde_json::to_string(d).expect("dispositions serialize"));
            out.push('\n');
        }
        out
    }
}

struct Row {
    hit: SearchHit,
    dropped: Option<(&'static str, String)>,
    document: Option<SchemaDocument>,
    recovered: bool,
    appended_paths: Vec<String>,
}

impl Row {
    fn alive(&self) -> bool {
        self.dropped.is_none()
    }

    fn drop_at(&mut self, stage: &'static str, reason: impl Into<String>) {
        self.dropped = Some((stage, reason.into()));
    }
}

/// Runs the full filter funnel over candidate files.
///
/// Filters, in order: URL dedup, parse, executable-definition exclusion,
/// completeness (with per-repository recovery for incomplete schemas that
/// have a query operation), validity, and AST-equivalence dedup. Dedup
/// stages keep the first file in URL order.
pub fn run_funnel(files: Vec<SearchHit>) -> FunnelOutcome {
    let mut counts = FunnelCounts {
        search_result_files: files.len() as u64,
        ..FunnelCounts::default()
    };
    let mut rows: Vec<Row> = files
        .into_iter()
        .map(|hit| Row {
            hit,
            dropped: None,
            document: None,
            recovered: false,
            appended_paths: Vec::new(),
        })
        .collect();
    rows.sort_by(|a, b| a.hit.url.cmp(&b.hit.url));

    let mut seen_urls = std::collections::BTreeSet::new();
    for row in &mut rows {
        if !seen_urls.insert(row.hit.url.clone()) {
            row.drop_at(STAGE_UNIQUE_FILES, "duplicate URL");
        }
    }
    counts.unique_files = alive(&rows);

    // Parse and purity are per-file and run in parallel.
    rows.par_iter_mut().filter(|r| r.alive()).for_each(|row| {
        match parse_document(&row.hit.content) {
            Err(e) => row.drop_at(STAGE_SDL_FILES, format!("parse error: {e}")),
            Ok(document) => {
                if document.is_pure_schema() {
                    let schema = schema_from_document(document, Some(row.hit.url.clone()))
                        .expect("pure documents convert to schemas");
                    row.document = Some(schema);
                } else {
                    row.document = None;
                }
            }
        }
    });
    counts.sdl_files = alive(&rows);
    for row in &mut rows {
        if row.alive() && row.document.is_none() {
            row.drop_at(STAGE_PURE_SCHEMAS, "contains executable definitions");
        }
    }
    counts.pure_schemas = alive(&rows);

    recover_incomplete(&mut rows);
    counts.complete_or_recovered = alive(&rows);

    rows.par_iter_mut().filter(|r| r.alive()).for_each(|row| {
        let verdict = validate(row.document.as_ref().expect("alive rows carry documents"));
        if verdict.status != ValidationStatus::Valid {
            let detail: Vec<String> = verdict
                .diagnostics
                .iter()
                .take(3)
                .map(|d| d.message.clone())
                .collect();
            row.drop_at(
                STAGE_VALID_SCHEMAS,
                format!("{}: {}", verdict.status.label(), detail.join("; ")),
            );
        }
    });
    counts.valid_schemas = alive(&rows);

    let mut seen_fingerprints: BTreeMap<String, String> = BTreeMap::new();
    for row in &mut rows {
        if !row.alive() {
            continue;
        }
        let print = fingerprint(row.document.as_ref().expect("alive rows carry documents"));
        match seen_fingerprints.get(&print) {
            Some(first_url) => {
                let reason = format!("equivalent to {first_url}");
                row.drop_at(STAGE_VALID_UNIQUE_SCHEMAS, reason);
            }
            None => {
                seen_fingerprints.insert(print, row.hit.url.clone());
            }
        }
    }
    counts.valid_unique_schemas = alive(&rows);

    let mut dispositions = Vec::with_capacity(rows.len());
    let mut survivors = Vec::new();
    for row in rows {
        match &row.dropped {
            Some((stage, reason)) => dispositions.push(Disposition {
                url: row.hit.url.clone(),
                repository: row.hit.repository.clone(),
                path: row.hit.path.clone(),
                outcome: "dropped",
                stage,
                reason: Some(reason.clone()),
                appended_paths: row.appended_paths.clone(),
            }),
            None => {
                dispositions.push(Disposition {
                    url: row.hit.url.clone(),
                    repository: row.hit.repository.clone(),
                    path: row.hit.path.clone(),
                    outcome: "survived",
                    stage: STAGE_VALID_UNIQUE_SCHEMAS,
                    reason: None,
                    appended_paths: row.appended_paths.clone(),
                });
                survivors.push(SurvivingSchema {
                    url: row.hit.url,
                    repository: row.hit.repository,
                    path: row.hit.path,
                    document: row.document.expect("survivors carry documents"),
                    recovered: row.recovered,
                    appended_paths: row.appended_paths,
                });
            }
        }
    }
    FunnelOutcome {
        counts,
        dispositions,
        survivors,
    }
}

fn alive(rows: &[Row]) -> u64 {
    rows.iter().filter(|r| r.alive()).count() as u64
}

enum CompletenessResult {
    Complete,
    Recovered(SchemaDocument, Vec<String>),
    Dropped(String),
}

/// Completeness stage: complete schemas pass as-is (validity is judged
/// later); incomplete ones with a query operation try recovery against
/// their repository's pool. Pools never cross repositories.
fn recover_incomplete(rows: &mut [Row]) {
    let mut by_repo: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        if row.alive() {
            by_repo.entry(row.hit.repository.clone()).or_default().push(i);
        }
    }
    let groups: Vec<(Vec<usize>, Vec<CandidateFile>)> = by_repo
        .into_values()
        .map(|indices| {
            let pool: Vec<CandidateFile> = indices
                .iter()
                .map(|&i| {
                    CandidateFile::new(
                        rows[i].hit.path.clone(),
                        rows[i].document.clone().expect("alive rows carry documents"),
                    )
                })
                .collect();
            (indices, pool)
        })
        .collect();

    let results: Vec<(usize, CompletenessResult)> = groups
        .par_iter()
        .flat_map(|(indices, pool)| {
            indices
                .iter()
                .zip(pool)
                .map(|(&i, entry)| {
                    let verdict = validate(&entry.document);
                    let result = if verdict.is_complete() {
                        CompletenessResult::Complete
                    } else if !verdict.has_query_operation {
                        CompletenessResult::Dropped("no query operation".to_string())
                    } else {
                        let outcome =
                            recover(entry, pool).expect("entry has a query operation");
                        match outcome.status {
                            RecoveryStatus::AlreadyComplete | RecoveryStatus::Recovered => {
                                CompletenessResult::Recovered(
                                    outcome.merged.expect("recovered outcomes carry documents"),
                                    outcome.appended_paths,
                                )
                            }
                            RecoveryStatus::Unresolvable => CompletenessResult::Dropped(format!(
                                "unresolvable: {}",
                                outcome
                                    .unresolved
                                    .iter()
                                    .cloned()
                                    .collect::<Vec<_>>()
                                    .join(", ")
                            )),
                        }
                    };
                    (i, result)
                })
                .collect::<Vec<_>>()
        })
        .collect();

    for (i, result) in results {
        match result {
            CompletenessResult::Complete => {}
            CompletenessResult::Recovered(document, appended) => {
                rows[i].document = Some(document);
                rows[i].recovered = true;
                rows[i].appended_paths = appended;
            }
            CompletenessResult::Dropped(reason) => {
                rows[i].drop_at(STAGE_COMPLETE_OR_RECOVERED, reason);
            }
        }
    }
}

/// Count and share of schemas falling in one complexity class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassShare {
    pub class: &'static str,
    pub count: u64,
    pub proportion: f64,
}

/// Count and share of schemas with one pagination coverage status.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatusShare {
    pub status: &'static str,
    pub count: u64,
    pub proportion: f64,
}

/// Aggregates over one set of schemas.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SegmentReport {
    pub schema_count: u64,
    pub characteristics: CorpusStats,
    pub conventions: ConventionSummary,
    pub complexity_classes: Vec<ClassShare>,
    pub slicing: Vec<StatusShare>,
    pub connections: Vec<StatusShare>,
}

/// Corpus-wide report: every schema, plus the large-schema segment when
/// non-empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    pub all: SegmentReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub large: Option<SegmentReport>,
}

struct PerSchema {
    stats: SchemaStats,
    lint: LintReport,
    class: ComplexityClass,
    pagination: PaginationReport,
}

pub fn corpus_report(docs: &[SchemaDocument]) -> Result<CorpusReport, EmptyCorpusError> {
    corpus_report_with(docs, MetricsOptions::default())
}

pub fn corpus_report_with(
    docs: &[SchemaDocument],
    options: MetricsOptions,
) -> Result<CorpusReport, EmptyCorpusError> {
    if docs.is_empty() {
        return Err(EmptyCorpusError);
    }
    let analyses: Vec<PerSchema> = docs
        .par_iter()
        .map(|doc| PerSchema {
            stats: characteristics_with(doc, options),
            lint: lint(doc),
            class: classify(&build_type_graph(doc)).class,
            pagination: detect_pagination(doc),
        })
        .collect();
    let all = segment(&analyses.iter().collect::<Vec<_>>())?;
    let large_only: Vec<&PerSchema> = analyses.iter().filter(|a| a.stats.is_large).collect();
    let large = if large_only.is_empty() {
        None
    } else {
        Some(segment(&large_only)?)
    };
    Ok(CorpusReport { all, large })
}

fn segment(analyses: &[&PerSchema]) -> Result<SegmentReport, EmptyCorpusError> {
    let total = analyses.len() as u64;
    let stats: Vec<SchemaStats> = analyses.iter().map(|a| a.stats.clone()).collect();
    let lints: Vec<LintReport> = analyses.iter().map(|a| a.lint.clone()).collect();

    const CLASSES: [ComplexityClass; 5] = [
        ComplexityClass::LinearN,
        ComplexityClass::LinearNd,
        ComplexityClass::Quadratic,
        ComplexityClass::Polynomial,
        ComplexityClass::Exponential,
    ];
    let complexity_classes = CLASSES
        .iter()
        .map(|&class| {
            let count = analyses.iter().filter(|a| a.class == class).count() as u64;
            ClassShare {
                class: class.label(),
                count,
                proportion: round4(count as f64 / total as f64),
            }
        })
        .collect();

    const COVERAGES: [Coverage; 4] = [
        Coverage::None,
        Coverage::Some,
        Coverage::Throughout,
        Coverage::NotApplicable,
    ];
    let coverage_shares = |pick: fn(&PaginationReport) -> Coverage| -> Vec<StatusShare> {
        COVERAGES
            .iter()
            .map(|&status| {
                let count = analyses
                    .iter()
                    .filter(|a| pick(&a.pagination) == status)
                    .count() as u64;
                StatusShare {
                    status: status.label(),
                    count,
                    proportion: round4(count as f64 / total as f64),
                }
            })
            .collect()
    };

    Ok(SegmentReport {
        schema_count: total,
        characteristics: corpus_aggregate(&stats)?,
        conventions: corpus_convention_summary(&lints)?,
        complexity_classes,
        slicing: coverage_shares(|p| p.slicing_status),
        connections: coverage_shares(|p| p.connections_status),
    })
}
