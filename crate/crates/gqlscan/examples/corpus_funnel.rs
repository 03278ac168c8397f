//! Run the corpus funnel over a replayed search-result tree: dedupe by URL,
//! parse, keep pure schemas, complete them against same-repository files,
//! validate, dedupe structurally — then aggregate the survivors.

use gqlscan::corpus::{corpus_report, run_funnel};
use gqlscan::search::{ReplaySearchClient, SearchProvider};
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus");
    let hits = ReplaySearchClient::new(root).search("", (0, u64::MAX))?;
    let outcome = run_funnel(hits);

    println!("{}", serde_json::to_string_pretty(&outcome.counts)?);

    println!("\nsample dispositions:");
    for disposition in outcome.dispositions.iter().filter(|d| d.outcome == "dropped").take(5) {
        println!(
            "  {} dropped at {}: {}",
            disposition.url,
            disposition.stage,
            disposition.reason.as_deref().unwrap_or("-"),
        );
    }

    let survivors: Vec<_> = outcome.survivors.iter().map(|s| s.document.clone()).collect();
    let report = corpus_report(&survivors)?;
    println!("\n{} surviving schemas", report.all.schema_count);
    for share in &report.all.complexity_classes {
        println!("  {}: {} ({:.1}%)", share.class, share.count, share.proportion * 100.0);
    }
    Ok(())
}
