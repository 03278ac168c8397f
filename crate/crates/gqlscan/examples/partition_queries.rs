//! Plan size-partitioned search queries. Code-search endpoints cap results
//! per query, so a size range whose observed population exceeds the cap is
//! bisected until every emitted range fits.

use gqlscan::search::partition_search_queries;
use std::collections::BTreeMap;

fn main() {
    // Observed population by file size: a dense cluster of small files and
    // a thin tail, the shape that forces uneven partitions.
    let mut observed: BTreeMap<u64, u64> = BTreeMap::new();
    for size in 0..=64u64 {
        observed.insert(size, 40u64.saturating_sub(size / 2));
    }

    let plan = partition_search_queries(0, 1024, 300, &observed);
    println!("{} queries to cover sizes 0..=1024 under a 300-result cap\n", plan.queries.len());
    for query in &plan.queries {
        println!(
            "{:>5}..{:<5} expecting {:>4} results: {}",
            query.min_size, query.max_size, query.expected_results, query.query,
        );
    }
    for warning in &plan.warnings {
        println!("warning: {warning}");
    }
}
