//! Check schema completeness and validity: a schema is complete when it has
//! a query root and every referenced type is defined, and valid when it is
//! complete with no duplicate names or kind misuse.

use gqlscan::{parse_schema, validate};
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/fig2.graphql");
    let doc = parse_schema(&std::fs::read_to_string(&path)?)?;
    let verdict = validate(&doc);
    println!("{}: {}", path.display(), verdict.status.label());

    // A dangling reference downgrades the schema to incomplete rather than
    // rejecting it outright: another file may still supply the type.
    let partial = parse_schema("type Query { office: Office }")?;
    let verdict = validate(&partial);
    println!("\npartial schema: {}", verdict.status.label());
    println!("has query operation: {}", verdict.has_query_operation);
    for missing in &verdict.missing_references {
        println!("missing: {missing}");
    }
    for diagnostic in &verdict.diagnostics {
        println!("{}: {}", diagnostic.code.label(), diagnostic.message);
    }
    Ok(())
}
