//! Parse an SDL file, render it back, and confirm the round trip is
//! structurally lossless.

use gqlscan::equiv::fingerprint;
use gqlscan::report::content_hash;
use gqlscan::{ast_equivalent, parse_schema, print_document};
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/fig2.graphql");
    let source = std::fs::read_to_string(&path)?;

    let doc = parse_schema(&source)?;
    println!("parsed {} definitions from {}", doc.definitions.len(), path.display());
    println!("fingerprint: {}", content_hash(&fingerprint(&doc)));

    let printed = print_document(&doc);
    println!("\n{printed}");

    // Printing normalizes whitespace and comments but never structure.
    let reparsed = parse_schema(&printed)?;
    assert!(ast_equivalent(&doc, &reparsed));
    println!("round trip: parse(print(doc)) is equivalent to doc");
    Ok(())
}
