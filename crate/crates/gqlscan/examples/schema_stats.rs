//! Measure a schema's shape: definition counts, fields per type with lower
//! medians, feature usage, and whether it clears the large-schema bar.

use gqlscan::metrics::characteristics;
use gqlscan::parse_schema;
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/fig2.graphql");
    let doc = parse_schema(&std::fs::read_to_string(&path)?)?;
    let stats = characteristics(&doc);
    println!("{}", serde_json::to_string_pretty(&stats)?);
    Ok(())
}
