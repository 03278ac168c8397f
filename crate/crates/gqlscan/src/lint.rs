//! Naming-convention checks with per-rule consistency statuses.

use crate::ast::*;
use crate::metrics::{round4, EmptyCorpusError};
use serde::Serialize;

/// Verbs recognized as mutation-field prefixes.
pub const MUTATION_VERBS: [&str; 5] = ["create", "update", "delete", "upsert", "add"];

/// Maximum offender names retained per rule by default.
pub const DEFAULT_OFFENDER_CAP: usize = 50;

#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd, Serialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

pub const ALL_RULES: [RuleId; 7] = [
    RuleId::R1,
    RuleId::R2,
    RuleId::R3,
    RuleId::R4,
    RuleId::R5,
    RuleId::R6,
    RuleId::R7,
];

impl RuleId {
    pub fn id(self) -> &'static str {
        match self {
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
            RuleId::R7 => "R7",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            RuleId::R1 => "camelCase field names",
            RuleId::R2 => "PascalCase type names",
            RuleId::R3 => "PascalCase enum names",
            RuleId::R4 => "ALL_CAPS enum values",
            RuleId::R5 => "Input-suffixed input object names",
            RuleId::R6 => "verb-prefixed mutation fields",
            RuleId::R7 => "snake_case field names",
        }
    }
}

/// Adherence of one rule across its applicable names.
#[derive(Clone, Copy, Debug, Eq, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleStatus {
    Consistent,
    Partial,
    None,
    NotApplicable,
}

impl RuleStatus {
    pub fn label(self) -> &'static str {
        match self {
            RuleStatus::Consistent => "consistent",
            RuleStatus::Partial => "partial",
            RuleStatus::None => "none",
            RuleStatus::NotApplicable => "not_applicable",
        }
    }

    fn from_counts(applicable: u64, violations: u64) -> RuleStatus {
        if applicable == 0 {
            RuleStatus::NotApplicable
        } else if violations == 0 {
            RuleStatus::Consistent
        } else if violations == applicable {
            RuleStatus::None
        } else {
            RuleStatus::Partial
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleReport {
    pub rule: RuleId,
    pub summary: &'static str,
    pub applicable: u64,
    pub violations: u64,
    pub status: RuleStatus,
    /// Violating names, truncated to the configured cap.
    pub offenders: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LintReport {
    pub rules: Vec<RuleReport>,
}

impl LintReport {
    pub fn rule(&self, id: RuleId) -> &RuleReport {
        // Reports always carry all seven rules in order.
        &self.rules[ALL_RULES.iter().position(|r| *r == id).unwrap()]
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LintOptions {
    pub offender_cap: usize,
}

impl Default for LintOptions {
    fn default() -> Self {
        LintOptions {
            offender_cap: DEFAULT_OFFENDER_CAP,
        }
    }
}

pub fn lint(doc: &SchemaDocument) -> LintReport {
    lint_with(doc, LintOptions::default())
}

pub fn lint_with(doc: &SchemaDocument, options: LintOptions) -> LintReport {
    let mut rules = Vec::with_capacity(ALL_RULES.len());
    for id in ALL_RULES {
        let mut tally = Tally::new(id, options.offender_cap);
        match id {
            RuleId::R1 => each_output_field(doc, |type_name, field| {
                tally.record(starts_lowercase(&field.name), || {
                    format!("{type_name}.{}", field.name)
                });
            }),
            RuleId::R2 => {
                for def in doc.effective_definitions() {
                    let name = match def {
                        Definition::Scalar(d) => &d.name,
                        Definition::Object(d) => &d.name,
                        Definition::Interface(d) => &d.name,
                        Definition::Union(d) => &d.name,
                        Definition::InputObject(d) => &d.name,
                        _ => continue,
                    };
                    tally.record(starts_uppercase(name), || name.clone());
                }
            }
            RuleId::R3 => {
                for def in doc.effective_definitions() {
                    if let Definition::Enum(e) = def {
                        tally.record(starts_uppercase(&e.name), || e.name.clone());
                    }
                }
            }
            RuleId::R4 => {
                for def in doc.effective_definitions() {
                    if let Definition::Enum(e) = def {
                        for value in &e.values {
                            tally.record(is_all_caps(&value.name), || {
                                format!("{}.{}", e.name, value.name)
                            });
                        }
                    }
                }
            }
            RuleId::R5 => {
                for def in doc.effective_definitions() {
                    if let Definition::InputObject(i) = def {
                        tally.record(i.name.ends_with("Input"), || i.name.clone());
                    }
                }
            }
            RuleId::R6 => {
                if let Some(mutation) = doc
                    .root_type_name(OperationKind::Mutation)
                    .map(str::to_owned)
                    .and_then(|name| doc.object_type(&name))
                {
                    for field in &mutation.fields {
                        tally.record(has_verb_prefix(&field.name), || {
                            format!("{}.{}", mutation.name, field.name)
                        });
                    }
                }
            }
            RuleId::R7 => each_output_field(doc, |type_name, field| {
                tally.record(field.name.contains('_'), || {
                    format!("{type_name}.{}", field.name)
                });
            }),
        }
        rules.push(tally.finish());
    }
    LintReport { rules }
}

struct Tally {
    rule: RuleId,
    cap: usize,
    applicable: u64,
    violations: u64,
    offenders: Vec<String>,
}

impl Tally {
    fn new(rule: RuleId, cap: usize) -> Self {
        Tally {
            rule,
            cap,
            applicable: 0,
            violations: 0,
            offenders: Vec::new(),
        }
    }

    fn record(&mut self, conforms: bool, name: impl FnOnce() -> String) {
        self.applicable += 1;
        if !conforms {
            self.violations += 1;
            if self.offenders.len() < self.cap {
                self.offenders.push(name());
            }
        }
    }

    fn finish(self) -> RuleReport {
        RuleReport {
            rule: self.rule,
            summary: self.rule.summary(),
            applicable: self.applicable,
            violations: self.violations,
            status: RuleStatus::from_counts(self.applicable, self.violations),
            offenders: self.offenders,
        }
    }
}

/// Visits every field of every object and interface type.
fn each_output_field(doc: &SchemaDocument, mut visit: impl FnMut(&str, &FieldDefinition)) {
    for def in doc.effective_definitions() {
        let (name, fields) = match def {
            Definition::Object(o) => (&o.name, &o.fields),
            Definition::Interface(i) => (&i.name, &i.fields),
            _ => continue,
        };
        for field in fields {
            visit(name, field);
        }
    }
}

fn starts_lowercase(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_lowercase())
}

fn starts_uppercase(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

fn is_all_caps(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
        && name.chars().any(|c| c.is_ascii_uppercase())
}

/// Case-sensitive verb prefix with a camelCase boundary: the character
/// after the verb (if any) must be uppercase or a digit.
fn has_verb_prefix(name: &str) -> bool {
    MUTATION_VERBS.iter().any(|verb| {
        name.strip_prefix(verb).is_some_and(|rest| {
            rest.chars()
                .next()
                .is_none_or(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
        })
    })
}

/// Corpus-level adherence for one rule: the share of schemas where it holds
/// consistently, among schemas where it applies at all.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleAdherence {
    pub rule: RuleId,
    pub summary: &'static str,
    pub applicable_schemas: u64,
    pub consistent_schemas: u64,
    /// `None` when the rule applies to no schema in the corpus.
    pub proportion: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConventionSummary {
    pub schema_count: u64,
    pub rules: Vec<RuleAdherence>,
}

pub fn corpus_convention_summary(
    reports: &[LintReport],
) -> Result<ConventionSummary, EmptyCorpusError> {
    if reports.is_empty() {
        return Err(EmptyCorpusError);
    }
    let rules = ALL_RULES
        .iter()
        .map(|&id| {
            let mut applicable_schemas = 0;
            let mut consistent_schemas = 0;
            for report in reports {
                match report.rule(id).status {
                    RuleStatus::NotApplicable => {}
                    RuleStatus::Consistent => {
                        applicable_schemas += 1;
                        consistent_schemas += 1;
                    }
                    _ => applicable_schemas += 1,
                }
            }
            RuleAdherence {
                rule: id,
                summary: id.summary(),
                applicable_schemas,
                consistent_schemas,
                proportion: (applicable_schemas > 0)
                    .then(|| round4(consistent_schemas as f64 / applicable_schemas as f64)),
            }
        })
        .collect();
    Ok(ConventionSummary {
        schema_count: reports.len() as u64,
        rules,
    })
}
