//! gqlscan is a static-analysis toolkit for GraphQL schemas written in SDL.
//!
//! It parses the June 2018 edition of the language, checks schema
//! completeness, reassembles schemas split across files, measures schema
//! shape, audits naming conventions, classifies worst-case response growth,
//! detects pagination idioms, and runs whole-corpus pipelines.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! examples/
//!   parse_and_print.rs      parse SDL and render it back
//!   validate_schema.rs      completeness/validity checking
//!   recover_partitioned.rs  reassemble a schema split across files
//!   schema_stats.rs         size and feature measurements
//!   lint_conventions.rs     naming-convention audit
//!   classify_complexity.rs  worst-case response growth classification
//!   worst_case_oracle.rs    brute-force check of the response bound
//!   detect_pagination.rs    slicing arguments and connection types
//!   corpus_funnel.rs        multi-stage corpus filtering
//!   partition_queries.rs    size-partitioned search query planning
//!   introspect_endpoint.rs  fetch a schema over HTTP introspection
//! ```
//!
//! Run one with `cargo run --example parse_and_print`. The same operations
//! are exposed by the `gqlscan` binary; see the README for the command list.

pub mod ast;
pub mod complexity;
pub mod corpus;
pub mod equiv;
pub mod introspection;
pub mod lexer;
pub mod lint;
pub mod metrics;
pub mod oracle;
pub mod pagination;
pub mod parser;
pub mod printer;
pub mod recovery;
pub mod report;
pub mod search;
pub mod typegraph;
pub mod validate;

pub use ast::{Document, SchemaDocument};
pub use equiv::{ast_equivalent, ast_equivalent_canonical};
pub use parser::{is_pure_schema, parse_document, parse_schema, parse_schema_named, ParseError};
pub use printer::print_document;
pub use validate::{validate, ValidationResult, ValidationStatus};
