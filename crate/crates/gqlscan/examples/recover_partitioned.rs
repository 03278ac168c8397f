//! Reassemble a schema whose type definitions are spread over several
//! files: start from the entry file holding the query root, then append the
//! files that define its dangling references, nearest directory first.

use gqlscan::parse_schema_named;
use gqlscan::recovery::{recover, CandidateFile};
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/split_repo");

    let mut entry = None;
    let mut pool = Vec::new();
    for item in walkdir::WalkDir::new(&root).sort_by_file_name() {
        let item = item?;
        if item.path().extension().is_none_or(|e| e != "graphql") {
            continue;
        }
        let relative = item.path().strip_prefix(&root)?.to_string_lossy().into_owned();
        let doc = parse_schema_named(
            &std::fs::read_to_string(item.path())?,
            Some(relative.clone()),
        )?;
        let candidate = CandidateFile::new(relative.clone(), doc);
        if relative == "main.graphql" {
            entry = Some(candidate);
        } else {
            pool.push(candidate);
        }
    }
    let entry = entry.expect("fixture contains main.graphql");
    println!("entry: {} (+ {} candidate files)", entry.path, pool.len());

    let outcome = recover(&entry, &pool)?;
    println!("status: {}", outcome.status.label());
    for path in &outcome.appended_paths {
        println!("appended: {path}");
    }
    if let Some(merged) = &outcome.merged {
        println!("\n{}", gqlscan::print_document(merged));
    }
    Ok(())
}
