//! Detection of slicing arguments and the connections pattern.

use crate::ast::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// Argument names that indicate slicing when typed as `Int`.
pub const DEFAULT_SLICING_ARGUMENT_NAMES: [&str; 4] = ["first", "last", "limit", "size"];

/// How widely a pattern is applied across its applicable fields.
#[derive(Clone, Copy, Debug, Eq, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coverage {
    None,
    Some,
    Throughout,
    NotApplicable,
}

impl Coverage {
    pub fn label(self) -> &'static str {
        match self {
            Coverage::None => "none",
            Coverage::Some => "some",
            Coverage::Throughout => "throughout",
            Coverage::NotApplicable => "not_applicable",
        }
    }

    fn from_counts(applicable: u64, covered: u64) -> Coverage {
        if applicable == 0 {
            Coverage::NotApplicable
        } else if covered == applicable {
            Coverage::Throughout
        } else if covered == 0 {
            Coverage::None
        } else {
            Coverage::Some
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PaginationReport {
    /// Fields returning a list of composite types, at any wrapper depth.
    pub list_field_count: u64,
    pub sliced_list_fields: u64,
    pub slicing_status: Coverage,
    /// Type definitions named `*Connection` or `*Edge`.
    pub connection_type_count: u64,
    pub connection_type_names: Vec<String>,
    /// Fields whose named return type ends with `Connection`.
    pub connection_returning_fields: u64,
    pub sliced_connection_fields: u64,
    pub connections_status: Coverage,
}

#[derive(Clone, Debug)]
pub struct PaginationOptions {
    pub slicing_argument_names: BTreeSet<String>,
}

impl Default for PaginationOptions {
    fn default() -> Self {
        PaginationOptions {
            slicing_argument_names: DEFAULT_SLICING_ARGUMENT_NAMES
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

pub fn detect_pagination(doc: &SchemaDocument) -> PaginationReport {
    detect_pagination_with(doc, &PaginationOptions::default())
}

pub fn detect_pagination_with(
    doc: &SchemaDocument,
    options: &PaginationOptions,
) -> PaginationReport {
    let mut list_field_count = 0;
    let mut sliced_list_fields = 0;
    let mut connection_returning_fields = 0;
    let mut sliced_connection_fields = 0;
    let mut connection_type_names = Vec::new();

    for def in doc.effective_definitions() {
        if def.namespace() == Namespace::Type {
            if let Some(name) = def.name() {
                if name.ends_with("Connection") || name.ends_with("Edge") {
                    connection_type_names.push(name.to_string());
                }
            }
        }
        let fields = match def {
            Definition::Object(o) => &o.fields,
            Definition::Interface(i) => &i.fields,
            _ => continue,
        };
        for field in fields {
            let sliced = field.arguments.iter().any(|arg| {
                options.slicing_argument_names.contains(&arg.name)
                    && arg.value_type.name == "Int"
                    && arg.value_type.list_depth() == 0
            });
            let returns_composite = matches!(
                doc.type_definition(&field.return_type.name),
                Some(Definition::Object(_) | Definition::Interface(_) | Definition::Union(_))
            );
            if field.return_type.list_depth() >= 1 && returns_composite {
                list_field_count += 1;
                if sliced {
                    sliced_list_fields += 1;
                }
            }
            if field.return_type.name.ends_with("Connection") {
                connection_returning_fields += 1;
                if sliced {
                    sliced_connection_fields += 1;
                }
            }
        }
    }

    PaginationReport {
        list_field_count,
        sliced_list_fields,
        slicing_status: Coverage::from_counts(list_field_count, sliced_list_fields),
        connection_type_count: connection_type_names.len() as u64,
        connection_type_names,
        connection_returning_fields,
        sliced_connection_fields,
        connections_status: Coverage::from_counts(
            connection_returning_fields,
            sliced_connection_fields,
        ),
    }
}
