//! Cross-check the closed-form response bound against a brute-force search
//! over all queries of a given size. On a list chain with enough scalar
//! leaves the bound is attained exactly.

use gqlscan::complexity::response_bound;
use gqlscan::oracle::oracle_worst_case;
use gqlscan::parse_schema;

const CHAIN: &str = r#"
type Query { items: [Level1] }
type Level1 { children: [Level2] }
type Level2 { a: Int, b: Int, c: Int, d: Int }
"#;

fn main() -> anyhow::Result<()> {
    let doc = parse_schema(CHAIN)?;
    let (k, d) = (2u64, 3u64);
    println!("two list levels, every list {d} elements long");
    println!("{:>3} {:>12} {:>12}", "n", "oracle", "bound");
    for n in 3..=6 {
        let actual = oracle_worst_case(&doc, n, d)?;
        let bound = response_bound(n, k, d)?;
        println!("{n:>3} {actual:>12} {bound:>12}");
        assert_eq!(u128::from(actual), bound);
    }

    // Against a recursive schema the worst case multiplies with every
    // extra unit of query budget; no polynomial bound exists.
    let friends = parse_schema(
        "type Query { me: User }\ntype User { name: String, friends: [User] }",
    )?;
    println!("\nrecursive friends schema, lists 2 elements long");
    for n in 2..=7 {
        println!("  n = {n}: worst response {}", oracle_worst_case(&friends, n, 2)?);
    }
    Ok(())
}
