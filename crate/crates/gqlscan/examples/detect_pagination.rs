//! Detect pagination idioms: slicing arguments (first/last/limit/size of
//! type Int) on list fields, and connection-style types named *Connection
//! or *Edge.

use gqlscan::pagination::detect_pagination;
use gqlscan::parse_schema;
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["fig2.graphql", "pagination/throughout.graphql"] {
        let doc = parse_schema(&std::fs::read_to_string(fixtures.join(name))?)?;
        let report = detect_pagination(&doc);
        println!("{name}:");
        println!(
            "  slicing: {} ({} of {} object-list fields)",
            report.slicing_status.label(),
            report.sliced_list_fields,
            report.list_field_count,
        );
        println!(
            "  connections: {} ({} of {} connection fields sliced)",
            report.connections_status.label(),
            report.sliced_connection_fields,
            report.connection_returning_fields,
        );
        if !report.connection_type_names.is_empty() {
            println!("  connection types: {}", report.connection_type_names.join(", "));
        }
    }
    Ok(())
}
