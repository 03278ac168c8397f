//! Schema size and feature measurements, per schema and per corpus.

use crate::ast::*;
use serde::Serialize;
use thiserror::Error;

/// Definition-count threshold above which a schema counts as large.
pub const DEFAULT_LARGE_THRESHOLD: u64 = 36;

#[derive(Clone, Copy, Debug)]
pub struct MetricsOptions {
    /// Count the schema definition itself as a definition.
    pub count_schema_definition: bool,
    /// `is_large` threshold: strictly more definitions than this.
    pub large_threshold: u64,
}

impl Default for MetricsOptions {
    fn default() -> Self {
        MetricsOptions {
            count_schema_definition: true,
            large_threshold: DEFAULT_LARGE_THRESHOLD,
        }
    }
}

/// Shape measurements for one schema.
///
/// `definition_count` counts raw top-level definition nodes of every kind
/// (schema definitions, type definitions, directive definitions, and
/// extensions each count once). Per-kind counts and field tallies use
/// effective definitions, so extended types count once with their merged
/// field list.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemaStats {
    pub definition_count: u64,
    pub object_type_count: u64,
    pub input_object_type_count: u64,
    /// Field count of every object type, in definition order.
    pub fields_per_object_type: Vec<u64>,
    /// Field count of every input object type, in definition order.
    pub fields_per_input_type: Vec<u64>,
    pub median_fields_per_object_type: Option<u64>,
    pub median_fields_per_input_type: Option<u64>,
    pub has_interfaces: bool,
    pub has_unions: bool,
    pub has_custom_directives: bool,
    pub supports_mutation: bool,
    pub supports_subscription: bool,
    pub is_large: bool,
}

/// Lower median: for an even count the smaller of the two middle values.
pub fn lower_median(values: &[u64]) -> Option<u64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    Some(sorted[(sorted.len() - 1) / 2])
}

pub fn characteristics(doc: &SchemaDocument) -> SchemaStats {
    characteristics_with(doc, MetricsOptions::default())
}

pub fn characteristics_with(doc: &SchemaDocument, options: MetricsOptions) -> SchemaStats {
    let mut definition_count = doc.definitions.len() as u64;
    if !options.count_schema_definition {
        let schema_defs = doc
            .definitions
            .iter()
            .filter(|d| matches!(d, Definition::Schema(_)))
            .count() as u64;
        definition_count -= schema_defs;
    }

    let mut object_type_count = 0;
    let mut input_object_type_count = 0;
    let mut fields_per_object_type = Vec::new();
    let mut fields_per_input_type = Vec::new();
    let mut has_interfaces = false;
    let mut has_unions = false;
    let mut has_custom_directives = false;

    for def in doc.effective_definitions() {
        match def {
            Definition::Object(o) => {
                object_type_count += 1;
                fields_per_object_type.push(o.fields.len() as u64);
            }
            Definition::InputObject(i) => {
                input_object_type_count += 1;
                fields_per_input_type.push(i.fields.len() as u64);
            }
            Definition::Interface(_) => has_interfaces = true,
            Definition::Union(_) => has_unions = true,
            Definition::Directive(d) if !is_builtin_directive(&d.name) => {
                has_custom_directives = true;
            }
            _ => {}
        }
    }

    SchemaStats {
        definition_count,
        object_type_count,
        input_object_type_count,
        median_fields_per_object_type: lower_median(&fields_per_object_type),
        median_fields_per_input_type: lower_median(&fields_per_input_type),
        fields_per_object_type,
        fields_per_input_type,
        has_interfaces,
        has_unions,
        has_custom_directives,
        supports_mutation: doc.root_type_name(OperationKind::Mutation).is_some(),
        supports_subscription: doc.root_type_name(OperationKind::Subscription).is_some(),
        is_large: definition_count > options.large_threshold,
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("corpus is empty")]
pub struct EmptyCorpusError;

/// Count and share of schemas with some feature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeatureShare {
    pub count: u64,
    pub proportion: f64,
}

impl FeatureShare {
    fn of(count: u64, total: u64) -> Self {
        FeatureShare {
            count,
            proportion: round4(count as f64 / total as f64),
        }
    }
}

/// Rounds to four decimal places; report proportions use this fixed
/// precision so serialized output is byte-stable.
pub fn round4(x: f64) -> f64 {
    (x * 10_000.0).round() / 10_000.0
}

/// Corpus-level aggregation of [`SchemaStats`].
///
/// Field medians pool the per-type counts of every schema, so one schema
/// with many object types contributes many samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusStats {
    pub schema_count: u64,
    pub median_object_types: u64,
    pub median_input_object_types: u64,
    pub median_fields_per_object_type: Option<u64>,
    pub median_fields_per_input_type: Option<u64>,
    pub have_interfaces: FeatureShare,
    pub have_unions: FeatureShare,
    pub have_custom_directives: FeatureShare,
    pub support_mutation: FeatureShare,
    pub support_subscription: FeatureShare,
    pub large_schemas: FeatureShare,
}

pub fn corpus_aggregate(stats: &[SchemaStats]) -> Result<CorpusStats, EmptyCorpusError> {
    if stats.is_empty() {
        return Err(EmptyCorpusError);
    }
    let total = stats.len() as u64;
    let object_counts: Vec<u64> = stats.iter().map(|s| s.object_type_count).collect();
    let input_counts: Vec<u64> = stats.iter().map(|s| s.input_object_type_count).collect();
    let pooled_object_fields: Vec<u64> = stats
        .iter()
        .flat_map(|s| s.fields_per_object_type.iter().copied())
        .collect();
    let pooled_input_fields: Vec<u64> = stats
        .iter()
        .flat_map(|s| s.fields_per_input_type.iter().copied())
        .collect();
    let count_where = |f: fn(&SchemaStats) -> bool| stats.iter().filter(|s| f(s)).count() as u64;

    Ok(CorpusStats {
        schema_count: total,
        median_object_types: lower_median(&object_counts).unwrap_or(0),
        median_input_object_types: lower_median(&input_counts).unwrap_or(0),
        median_fields_per_object_type: lower_median(&pooled_object_fields),
        median_fields_per_input_type: lower_median(&pooled_input_fields),
        have_interfaces: FeatureShare::of(count_where(|s| s.has_interfaces), total),
        have_unions: FeatureShare::of(count_where(|s| s.has_unions), total),
        have_custom_directives: FeatureShare::of(count_where(|s| s.has_custom_directives), total),
        support_mutation: FeatureShare::of(count_where(|s| s.supports_mutation), total),
        support_subscription: FeatureShare::of(count_where(|s| s.supports_subscription), total),
        large_schemas: FeatureShare::of(count_where(|s| s.is_large), total),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_schema;

    #[test]
    fn lower_median_takes_smaller_middle_value() {
        assert_eq!(lower_median(&[]), None);
        assert_eq!(lower_median(&[7]), Some(7));
        assert_eq!(lower_median(&[1, 2]), Some(1));
        assert_eq!(lower_median(&[3, 1, 2]), Some(2));
        assert_eq!(lower_median(&[4, 1, 3, 2]), Some(2));
    }

    #[test]
    fn counts_cover_every_definition_kind() {
        let doc = parse_schema(
            r#"
            schema { query: Query }
            type Query { a: A, b: Int }
            type A { x: Int }
            input In { q: String }
            interface I { id: ID }
            union U = A
            enum E { ONE }
            scalar S
            directive @d on OBJECT
            "#,
        )
        .unwrap();
        let stats = characteristics(&doc);
        assert_eq!(stats.definition_count, 9);
        assert_eq!(stats.object_type_count, 2);
        assert_eq!(stats.input_object_type_count, 1);
        assert_eq!(stats.fields_per_object_type, [2, 1]);
        assert_eq!(stats.median_fields_per_object_type, Some(1));
        assert!(stats.has_interfaces);
        assert!(stats.has_unions);
        assert!(stats.has_custom_directives);
        assert!(!stats.supports_mutation);
        assert!(!stats.is_large);
    }

    #[test]
    fn schema_definition_flag_excludes_it_from_the_count() {
        let doc = parse_schema("schema { query: Q }\ntype Q { a: Int }").unwrap();
        assert_eq!(characteristics(&doc).definition_count, 2);
        let options = MetricsOptions {
            count_schema_definition: false,
            ..MetricsOptions::default()
        };
        assert_eq!(characteristics_with(&doc, options).definition_count, 1);
    }

    #[test]
    fn builtin_directive_definitions_are_not_custom() {
        let doc = parse_schema(
            "type Query { a: Int }\ndirective @deprecated(reason: String) on FIELD_DEFINITION",
        )
        .unwrap();
        assert!(!characteristics(&doc).has_custom_directives);
    }

    #[test]
    fn mutation_support_follows_root_resolution() {
        let implicit = parse_schema("type Query { a: Int }\ntype Mutation { m: Int }").unwrap();
        assert!(characteristics(&implicit).supports_mutation);

        // Explicit schema definition is authoritative.
        let explicit = parse_schema(
            "schema { query: Q }\ntype Q { a: Int }\ntype Mutation { m: Int }",
        )
        .unwrap();
        assert!(!characteristics(&explicit).supports_mutation);
    }

    #[test]
    fn large_flag_is_strictly_greater_than_threshold() {
        let mut defs = String::new();
        for i in 0..36 {
            defs.push_str(&format!("type T{i} {{ a: Int }}\n"));
        }
        let at_threshold = parse_schema(&defs).unwrap();
        assert!(!characteristics(&at_threshold).is_large);
        defs.push_str("type T36 { a: Int }\n");
        let above = parse_schema(&defs).unwrap();
        assert!(characteristics(&above).is_large);
    }

    #[test]
    fn corpus_aggregate_pools_field_counts() {
        let a = characteristics(&parse_schema("type Query { a: Int b: Int }").unwrap());
        let b = characteristics(
            &parse_schema("type Query { a: Int }\ntype T { x: Int y: Int z: Int }").unwrap(),
        );
        let agg = corpus_aggregate(&[a, b]).unwrap();
        assert_eq!(agg.schema_count, 2);
        // Pooled object field counts: [2] and [1, 3] -> sorted [1, 2, 3].
        assert_eq!(agg.median_fields_per_object_type, Some(2));
        assert_eq!(agg.median_object_types, 1);
        assert_eq!(agg.support_mutation.count, 0);
        assert!(corpus_aggregate(&[]).is_err());
    }
}
