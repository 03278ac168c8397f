//! Structural document equivalence.
//!
//! Two documents are equivalent when their definition sequences are
//! structurally identical after discarding source locations, descriptions,
//! and string-literal style (block vs. quoted). Definition and member order
//! is significant; the canonical variant sorts definitions and their members
//! by name first, for comparing documents that went through a round trip
//! that loses ordering (an introspection endpoint, for example).

use crate::ast::*;

/// Order-sensitive equivalence ignoring locations and descriptions.
pub fn ast_equivalent(a: &SchemaDocument, b: &SchemaDocument) -> bool {
    normalized(a, false) == normalized(b, false)
}

/// Equivalence after sorting definitions, fields, arguments, enum values,
/// union members, and applied directives by name.
pub fn ast_equivalent_canonical(a: &SchemaDocument, b: &SchemaDocument) -> bool {
    normalized(a, true) == normalized(b, true)
}

/// Deterministic key with the same discriminating power as
/// [`ast_equivalent`]: two documents are equivalent iff their fingerprints
/// are equal. Used to bucket documents when deduplicating a corpus.
pub fn fingerprint(doc: &SchemaDocument) -> String {
    format!("{:?}", normalized(doc, false))
}

/// [`fingerprint`] under [`ast_equivalent_canonical`]'s equivalence.
pub fn fingerprint_canonical(doc: &SchemaDocument) -> String {
    format!("{:?}", normalized(doc, true))
}

fn kind_rank(def: &Definition) -> u8 {
    match def {
        Definition::Schema(_) => 0,
        Definition::Scalar(_) => 1,
        Definition::Object(_) => 2,
        Definition::Interface(_) => 3,
        Definition::Union(_) => 4,
        Definition::Enum(_) => 5,
        Definition::InputObject(_) => 6,
        Definition::Directive(_) => 7,
    }
}

fn normalized(doc: &SchemaDocument, canonical: bool) -> Vec<Definition> {
    let mut defs: Vec<Definition> = doc
        .definitions
        .iter()
        .map(|d| normalize_definition(d, canonical))
        .collect();
    if canonical {
        // (kind, name) is not unique — a type and its extensions share
        // both — so the normalized rendering breaks ties, making the sort
        // a total order and the result independent of input order.
        defs.sort_by_cached_key(|d| {
            (
                kind_rank(d),
                d.name().unwrap_or("").to_string(),
                format!("{d:?}"),
            )
        });
    }
    defs
}

fn normalize_definition(def: &Definition, canonical: bool) -> Definition {
    match def {
        Definition::Schema(d) => {
            let mut roots: Vec<RootOperation> = d
                .roots
                .iter()
                .map(|r| RootOperation {
                    kind: r.kind,
                    type_name: r.type_name.clone(),
                    loc: Location::default(),
                })
                .collect();
            if canonical {
                roots.sort_by_key(|r| r.kind);
            }
            Definition::Schema(SchemaDefinition {
                description: None,
                roots,
                directives: normalize_directives(&d.directives, canonical),
                loc: Location::default(),
                from_extension: d.from_extension,
            })
        }
        Definition::Object(d) => {
            let mut implements = d.implements.clone();
            if canonical {
                implements.sort();
            }
            Definition::Object(ObjectType {
                name: d.name.clone(),
                description: None,
                implements,
                fields: normalize_fields(&d.fields, canonical),
                directives: normalize_directives(&d.directives, canonical),
                loc: Location::default(),
                from_extension: d.from_extension,
            })
        }
        Definition::Interface(d) => Definition::Interface(InterfaceType {
            name: d.name.clone(),
            description: None,
            fields: normalize_fields(&d.fields, canonical),
            directives: normalize_directives(&d.directives, canonical),
            loc: Location::default(),
            from_extension: d.from_extension,
        }),
        Definition::Union(d) => {
            let mut members = d.members.clone();
            if canonical {
                members.sort();
            }
            Definition::Union(UnionType {
                name: d.name.clone(),
                description: None,
                members,
                directives: normalize_directives(&d.directives, canonical),
                loc: Location::default(),
                from_extension: d.from_extension,
            })
        }
        Definition::Enum(d) => {
            let mut values: Vec<EnumValueDefinition> = d
                .values
                .iter()
                .map(|v| EnumValueDefinition {
                    name: v.name.clone(),
                    description: None,
                    directives: normalize_directives(&v.directives, canonical),
                    loc: Location::default(),
                })
                .collect();
            if canonical {
                values.sort_by(|a, b| a.name.cmp(&b.name));
            }
            Definition::Enum(EnumType {
                name: d.name.clone(),
                description: None,
                values,
                directives: normalize_directives(&d.directives, canonical),
                loc: Location::default(),
                from_extension: d.from_extension,
            })
        }
        Definition::Scalar(d) => Definition::Scalar(ScalarType {
            name: d.name.clone(),
            description: None,
            directives: normalize_directives(&d.directives, canonical),
            loc: Location::default(),
            from_extension: d.from_extension,
        }),
        Definition::InputObject(d) => Definition::InputObject(InputObjectType {
            name: d.name.clone(),
            description: None,
            fields: normalize_input_values(&d.fields, canonical),
            directives: normalize_directives(&d.directives, canonical),
            loc: Location::default(),
            from_extension: d.from_extension,
        }),
        Definition::Directive(d) => {
            let mut locations = d.locations.clone();
            if canonical {
                locations.sort();
            }
            Definition::Directive(DirectiveDefinition {
                name: d.name.clone(),
                description: None,
                arguments: normalize_input_values(&d.arguments, canonical),
                locations,
                loc: Location::default(),
            })
        }
    }
}

fn normalize_fields(fields: &[FieldDefinition], canonical: bool) -> Vec<FieldDefinition> {
    let mut out: Vec<FieldDefinition> = fields
        .iter()
        .map(|f| FieldDefinition {
            name: f.name.clone(),
            description: None,
            arguments: normalize_input_values(&f.arguments, canonical),
            return_type: normalize_type_reference(&f.return_type),
            directives: normalize_directives(&f.directives, canonical),
            loc: Location::default(),
        })
        .collect();
    if canonical {
        out.sort_by(|a, b| a.name.cmp(&b.name));
    }
    out
}

fn normalize_input_values(
    values: &[InputValueDefinition],
    canonical: bool,
) -> Vec<InputValueDefinition> {
    let mut out: Vec<InputValueDefinition> = values
        .iter()
        .map(|v| InputValueDefinition {
            name: v.name.clone(),
            description: None,
            value_type: normalize_type_reference(&v.value_type),
            default: v.default.as_ref().map(normalize_value),
            directives: normalize_directives(&v.directives, canonical),
            loc: Location::default(),
        })
        .collect();
    if canonical {
        out.sort_by(|a, b| a.name.cmp(&b.name));
    }
    out
}

fn normalize_directives(
    directives: &[AppliedDirective],
    canonical: bool,
) -> Vec<AppliedDirective> {
    let mut out: Vec<AppliedDirective> = directives
        .iter()
        .map(|d| {
            let mut arguments: Vec<Argument> = d
                .arguments
                .iter()
                .map(|a| Argument {
                    name: a.name.clone(),
                    value: normalize_value(&a.value),
                    loc: Location::default(),
                })
                .collect();
            if canonical {
                arguments.sort_by(|a, b| a.name.cmp(&b.name));
            }
            AppliedDirective {
                name: d.name.clone(),
                arguments,
                loc: Location::default(),
            }
        })
        .collect();
    if canonical {
        out.sort_by(|a, b| a.name.cmp(&b.name));
    }
    out
}

fn normalize_type_reference(r: &TypeReference) -> TypeReference {
    TypeReference {
        name: r.name.clone(),
        wrappers: r.wrappers.clone(),
        loc: Location::default(),
    }
}

fn normalize_value(v: &Value) -> Value {
    match v {
        Value::String { value, .. } => Value::String {
            value: value.clone(),
            block: false,
        },
        Value::List(items) => Value::List(items.iter().map(normalize_value).collect()),
        Value::Object(fields) => Value::Object(
            fields
                .iter()
                .map(|(k, v)| (k.clone(), normalize_value(v)))
                .collect(),
        ),
        other => other.clone(),
    }
}
