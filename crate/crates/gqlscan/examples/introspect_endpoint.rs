//! Fetch a schema over HTTP introspection and decode it to SDL. With no
//! argument the example serves a fixture schema from an in-process endpoint
//! and introspects that; pass a URL to query a live endpoint instead.

use gqlscan::introspection::{introspect, SchemaServer};
use gqlscan::{ast_equivalent_canonical, parse_schema, print_document};
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let served = parse_schema(&std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/fig2.graphql"),
    )?)?;

    // Keep the server alive for the whole run; dropping it closes the port.
    let (endpoint, local) = match std::env::args().nth(1) {
        Some(url) => (url, None),
        None => {
            let server = SchemaServer::spawn(served.clone())?;
            (server.url(), Some(server))
        }
    };

    println!("introspecting {endpoint}");
    let fetched = introspect(&endpoint, &[])?;
    println!("\n{}", print_document(&fetched));

    if local.is_some() {
        // Introspection loses definition order, so the comparison is the
        // canonical one.
        assert!(ast_equivalent_canonical(&served, &fetched));
        println!("decoded schema is canonically equivalent to the served fixture");
    }
    Ok(())
}
