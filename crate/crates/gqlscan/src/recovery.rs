//! Reassembly of schemas split across several SDL files.
//!
//! A repository often keeps one entry file holding the query root and
//! scatters type definitions over sibling files. [`recover`] starts from the
//! entry document and, for every unresolved reference, appends the pool file
//! that defines it, preferring the file closest to the entry in the directory
//! tree. Appending never rewrites or drops definitions; if two files define
//! the same name the attempt is abandoned as a conflict.

use crate::ast::{Namespace, SchemaDocument};
use crate::validate::{validate, DiagnosticCode, MissingRef, ValidationStatus};
use std::collections::BTreeSet;
use thiserror::Error;

/// One SDL file offered to recovery. `path` is repository-relative with `/`
/// separators; it drives candidate ranking.
#[derive(Clone, Debug)]
pub struct CandidateFile {
    pub path: String,
    pub document: SchemaDocument,
}

impl CandidateFile {
    pub fn new(path: impl Into<String>, document: SchemaDocument) -> Self {
        CandidateFile {
            path: path.into(),
            document,
        }
    }

    /// True iff this file has a definition for `name` in `namespace`.
    fn defines(&self, namespace: Namespace, name: &str) -> bool {
        self.document
            .effective_definitions()
            .iter()
            .any(|d| d.namespace() == namespace && d.name() == Some(name))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecoveryStatus {
    /// The entry document already validated as valid; nothing was appended.
    AlreadyComplete,
    /// Appending pool files produced a valid document.
    Recovered,
    /// No sequence of appends can produce a valid document.
    Unresolvable,
}

impl RecoveryStatus {
    pub fn label(self) -> &'static str {
        match self {
            RecoveryStatus::AlreadyComplete => "already_complete",
            RecoveryStatus::Recovered => "recovered",
            RecoveryStatus::Unresolvable => "unresolvable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RecoveryOutcome {
    pub status: RecoveryStatus,
    /// Merged document for `AlreadyComplete` and `Recovered`.
    pub merged: Option<SchemaDocument>,
    /// Pool paths appended, in append order.
    pub appended_paths: Vec<String>,
    /// For `Unresolvable`: references with no defining pool file, or the
    /// names involved in the violation that stopped recovery.
    pub unresolved: BTreeSet<String>,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RecoverError {
    #[error("entry document does not contain a query operation")]
    NoQueryOperation,
}

/// Distance between two files in a directory tree: the number of directory
/// components of both paths outside their common prefix.
pub fn directory_distance(a: &str, b: &str) -> usize {
    let dirs = |p: &str| -> Vec<String> {
        let mut parts: Vec<String> = p.split('/').map(str::to_string).collect();
        parts.pop();
        parts.retain(|c| !c.is_empty());
        parts
    };
    let a_dirs = dirs(a);
    let b_dirs = dirs(b);
    let common = a_dirs
        .iter()
        .zip(b_dirs.iter())
        .take_while(|(x, y)| x == y)
        .count();
    a_dirs.len() + b_dirs.len() - 2 * common
}

/// Attempts to complete `entry` by appending files from `pool`.
///
/// Iterates: validate; for each missing reference pick the defining pool file
/// (unique candidate, else minimal [`directory_distance`] from the original
/// entry path, ties to the lexicographically smallest path) and append it; a
/// file is appended at most once. Stops as unresolvable when a reference has
/// no defining file left, when an append introduces a duplicate definition,
/// when the document is invalid beyond dangling references, or when a full
/// pass appends nothing.
pub fn recover(entry: &CandidateFile, pool: &[CandidateFile]) -> Result<RecoveryOutcome, RecoverError> {
    if !entry.document.has_query_operation() {
        return Err(RecoverError::NoQueryOperation);
    }

    let mut working = entry.document.clone();
    let mut appended_paths: Vec<String> = Vec::new();
    let mut used: BTreeSet<String> = BTreeSet::new();
    used.insert(entry.path.clone());

    loop {
        let verdict = validate(&working);

        if !working.duplicate_names().is_empty() {
            let unresolved: BTreeSet<String> = working
                .duplicate_names()
                .iter()
                .map(|(ns, name)| display_name(*ns, name))
                .collect();
            return Ok(RecoveryOutcome {
                status: RecoveryStatus::Unresolvable,
                merged: None,
                appended_paths,
                unresolved,
            });
        }

        match verdict.status {
            ValidationStatus::Valid => {
                let status = if appended_paths.is_empty() {
                    RecoveryStatus::AlreadyComplete
                } else {
                    RecoveryStatus::Recovered
                };
                return Ok(RecoveryOutcome {
                    status,
                    merged: Some(working),
                    appended_paths,
                    unresolved: BTreeSet::new(),
                });
            }
            ValidationStatus::Invalid => {
                // Hard violations other than duplicates (kind misuse, or a
                // query root lost behind an extension) cannot be repaired by
                // appending definitions.
                let mut unresolved = verdict.violation_names();
                if unresolved.is_empty() {
                    unresolved = verdict
                        .diagnostics
                        .iter()
                        .filter(|d| d.code == DiagnosticCode::NoQueryOperation)
                        .map(|_| "query root".to_string())
                        .collect();
                }
                return Ok(RecoveryOutcome {
                    status: RecoveryStatus::Unresolvable,
                    merged: None,
                    appended_paths,
                    unresolved,
                });
            }
            ValidationStatus::Incomplete => {}
        }

        // Some references may have no defining file anywhere in the pool;
        // collect them all before appending anything.
        let missing: Vec<MissingRef> = verdict.missing_references.iter().cloned().collect();
        let hopeless: BTreeSet<String> = missing
            .iter()
            .filter(|m| !pool.iter().any(|f| f.defines(m.namespace, &m.name)))
            .map(|m| m.to_string())
            .collect();
        if !hopeless.is_empty() {
            return Ok(RecoveryOutcome {
                status: RecoveryStatus::Unresolvable,
                merged: None,
                appended_paths,
                unresolved: hopeless,
            });
        }

        let mut appended_this_pass = false;
        for m in &missing {
            // An earlier append in this pass may already define it.
            let already_defined = working
                .effective_definitions()
                .iter()
                .any(|d| d.namespace() == m.namespace && d.name() == Some(&m.name));
            if already_defined {
                continue;
            }
            let Some(choice) = choose_candidate(&entry.path, pool, &used, m) else {
                continue;
            };
            working = working.concatenated(&choice.document);
            used.insert(choice.path.clone());
            appended_paths.push(choice.path.clone());
            appended_this_pass = true;
        }

        if !appended_this_pass {
            let unresolved: BTreeSet<String> =
                missing.iter().map(|m| m.to_string()).collect();
            return Ok(RecoveryOutcome {
                status: RecoveryStatus::Unresolvable,
                merged: None,
                appended_paths,
                unresolved,
            });
        }
    }
}

/// Defining pool files for `m`, excluding already-appended ones: the unique
/// candidate, else minimal directory distance from the original entry path,
/// ties to the lexicographically smallest path.
fn choose_candidate<'a>(
    entry_path: &str,
    pool: &'a [CandidateFile],
    used: &BTreeSet<String>,
    m: &MissingRef,
) -> Option<&'a CandidateFile> {
    pool.iter()
        .filter(|f| !used.contains(&f.path))
        .filter(|f| f.defines(m.namespace, &m.name))
        .min_by(|a, b| {
            directory_distance(entry_path, &a.path)
                .cmp(&directory_distance(entry_path, &b.path))
                .then_with(|| a.path.cmp(&b.path))
        })
}

fn display_name(namespace: Namespace, name: &str) -> String {
    match namespace {
        Namespace::Type => name.to_string(),
        Namespace::Directive => format!("@{name}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_schema;

    fn file(path: &str, source: &str) -> CandidateFile {
        CandidateFile::new(path, parse_schema(source).unwrap())
    }

    #[test]
    fn directory_distance_counts_components_outside_common_prefix() {
        assert_eq!(directory_distance("a/b/main.graphql", "a/b/office.graphql"), 0);
        assert_eq!(directory_distance("a/b/main.graphql", "a/office.graphql"), 1);
        assert_eq!(directory_distance("a/b/main.graphql", "x/office.graphql"), 3);
        assert_eq!(directory_distance("main.graphql", "office.graphql"), 0);
        assert_eq!(directory_distance("a/m.graphql", "a/b/c/o.graphql"), 2);
    }

    #[test]
    fn already_complete_entry_appends_nothing() {
        let entry = file("main.graphql", "type Query { a: Int }");
        let outcome = recover(&entry, &[]).unwrap();
        assert_eq!(outcome.status, RecoveryStatus::AlreadyComplete);
        assert!(outcome.appended_paths.is_empty());
        assert!(outcome.merged.is_some());
    }

    #[test]
    fn single_candidate_recovers() {
        let entry = file("main.graphql", "type Query { office: Office }");
        let pool = vec![file("office.graphql", "type Office { id: ID! }")];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(outcome.status, RecoveryStatus::Recovered);
        assert_eq!(outcome.appended_paths, ["office.graphql"]);
        let merged = outcome.merged.unwrap();
        assert!(validate(&merged).is_valid());
        // Entry definitions first, appended definitions after.
        assert_eq!(merged.definitions[0].name(), Some("Query"));
        assert_eq!(merged.definitions[1].name(), Some("Office"));
    }

    #[test]
    fn transitive_references_resolve_over_multiple_passes() {
        let entry = file("main.graphql", "type Query { office: Office }");
        let pool = vec![
            file("office.graphql", "type Office { company: Company }"),
            file("company.graphql", "type Company { id: ID! }"),
        ];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(outcome.status, RecoveryStatus::Recovered);
        assert_eq!(outcome.appended_paths, ["office.graphql", "company.graphql"]);
    }

    #[test]
    fn closest_directory_wins_then_lexicographic() {
        let entry = file("a/b/main.graphql", "type Query { office: Office }");
        let pool = vec![
            file("x/office.graphql", "type Office { id: ID }"),
            file("a/b/office.graphql", "type Office { id: ID }"),
        ];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(outcome.appended_paths, ["a/b/office.graphql"]);

        // Equal distances: lexicographically smallest path.
        let pool = vec![
            file("a/b/zz.graphql", "type Office { id: ID }"),
            file("a/b/aa.graphql", "type Office { id: ID }"),
        ];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(outcome.appended_paths, ["a/b/aa.graphql"]);
    }

    #[test]
    fn distance_is_measured_from_the_original_entry() {
        // Office's definer sits far away; the reference Company introduced by
        // that file must still rank candidates against the entry path, not
        // against the appended file's path.
        let entry = file("a/main.graphql", "type Query { office: Office }");
        let pool = vec![
            file("deep/nest/office.graphql", "type Office { company: Company }"),
            file("a/company.graphql", "type Company { id: ID }"),
            file("deep/nest/company.graphql", "type Company { id: ID }"),
        ];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(
            outcome.appended_paths,
            ["deep/nest/office.graphql", "a/company.graphql"]
        );
    }

    #[test]
    fn missing_definition_nowhere_in_pool_is_unresolvable() {
        let entry = file("main.graphql", "type Query { office: Office ghost: Ghost }");
        let pool = vec![file("office.graphql", "type Office { id: ID }")];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(outcome.status, RecoveryStatus::Unresolvable);
        assert!(outcome.unresolved.contains("Ghost"));
        assert!(outcome.merged.is_none());
    }

    #[test]
    fn duplicate_definitions_after_append_are_a_conflict() {
        // The only definer of Office also redefines Query.
        let entry = file("main.graphql", "type Query { office: Office }");
        let pool = vec![file(
            "dup.graphql",
            "type Office { id: ID }\ntype Query { other: Int }",
        )];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(outcome.status, RecoveryStatus::Unresolvable);
        assert!(outcome.unresolved.contains("Query"));
    }

    #[test]
    fn extension_in_pool_file_merges_instead_of_conflicting() {
        let entry = file("main.graphql", "type Query { office: Office }");
        let pool = vec![file(
            "office.graphql",
            "type Office { id: ID }\nextend type Query { count: Int }",
        )];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(outcome.status, RecoveryStatus::Recovered);
        let merged = outcome.merged.unwrap();
        let query = merged.object_type("Query").unwrap();
        let names: Vec<_> = query.fields.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["office", "count"]);
    }

    #[test]
    fn entry_without_query_operation_is_rejected() {
        let entry = file("types.graphql", "type Office { id: ID }");
        assert_eq!(
            recover(&entry, &[]).unwrap_err(),
            RecoverError::NoQueryOperation
        );
    }

    #[test]
    fn directive_references_are_recovered_too() {
        let entry = file("main.graphql", "type Query { a: Int @auth }");
        let pool = vec![file(
            "auth.graphql",
            "directive @auth on FIELD_DEFINITION",
        )];
        let outcome = recover(&entry, &pool).unwrap();
        assert_eq!(outcome.status, RecoveryStatus::Recovered);
        assert_eq!(outcome.appended_paths, ["auth.graphql"]);
    }

    #[test]
    fn unrepairable_invalidity_stops_recovery() {
        let entry = file(
            "main.graphql",
            "type Query { f: Filter }\ninput Filter { q: String }",
        );
        let outcome = recover(&entry, &[]).unwrap();
        assert_eq!(outcome.status, RecoveryStatus::Unresolvable);
        assert!(outcome.unresolved.contains("Filter"));
    }
}
