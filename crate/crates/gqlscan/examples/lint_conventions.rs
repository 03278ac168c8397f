//! Audit the seven naming conventions. Each rule reports consistent,
//! partial, none, or not_applicable over the names it governs.

use gqlscan::lint::lint;
use gqlscan::parse_schema;
use std::path::Path;

fn main() -> anyhow::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/fig2.graphql");
    let doc = parse_schema(&std::fs::read_to_string(&path)?)?;

    for rule in &lint(&doc).rules {
        println!(
            "{:?}  {:<34} {:>10}  ({} of {} names violate)",
            rule.rule,
            rule.summary,
            rule.status.label(),
            rule.violations,
            rule.applicable,
        );
        for offender in rule.offenders.iter().take(3) {
            println!("      e.g. {offender}");
        }
    }
    Ok(())
}
