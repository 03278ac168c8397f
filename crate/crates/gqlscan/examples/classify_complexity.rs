//! Classify worst-case response growth. The class is read off the type
//! graph: a cycle through a list field means exponential growth; otherwise
//! the deepest list nesting K reachable from a root gives O(n·Dᵏ).

use gqlscan::complexity::classify;
use gqlscan::parse_schema;
use gqlscan::typegraph::build_type_graph;
use std::path::Path;

fn main() -> anyhow::Result<()> {
    for name in ["friends.graphql", "repos_members.graphql", "fig2.graphql"] {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
        let doc = parse_schema(&std::fs::read_to_string(&path)?)?;
        let report = classify(&build_type_graph(&doc));
        println!("{name}: {}", report.class.label());
        match report.k {
            Some(k) => println!("  nesting K = {k}"),
            None => println!("  no closed-form bound"),
        }
        // The witness is a query path (or cycle) that realizes the class.
        println!("  witness: {}", report.witness_steps().join(" -> "));
    }
    Ok(())
}
