//! Shared helpers for the integration suites: a seeded schema generator
//! whose output is always complete and valid, a consistent type renamer, a
//! definition splitter for recovery runs, and a list-chain builder whose
//! worst case is known in closed form.

// Each integration target uses a different slice of these helpers.
#![allow(dead_code)]

use gqlscan::ast::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

// The texts below never start or end with a quote or backslash, so they
// survive block-string printing untouched.
const DESCRIPTIONS: [&str; 5] = [
    "One record.",
    "A paged collection.\nOrdered newest first.",
    "Deprecated in the v2 rollout.",
    "Free-form notes,\nline two,\n  line three indented.",
    "Internal use only",
];

/// Deterministic schema generator.
///
/// Every referenced name is defined, names are unique, field return types
/// are output kinds, and argument types are input kinds, so the result
/// always validates as valid. Composite types (objects + interfaces +
/// unions) never exceed ten, keeping instances inside the brute-force
/// oracle's guards.
pub fn generate_definitions(seed: u64) -> Vec<Definition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Generator::new(&mut rng).build()
}

pub fn generate_schema(seed: u64) -> SchemaDocument {
    SchemaDocument::from_definitions(generate_definitions(seed), None)
}

struct Generator<'a> {
    rng: &'a mut ChaCha8Rng,
    explicit_schema: bool,
    object_names: Vec<String>,
    interface_names: Vec<String>,
    union_names: Vec<String>,
    enum_names: Vec<String>,
    scalar_names: Vec<String>,
    input_names: Vec<String>,
    has_directive: bool,
}

impl<'a> Generator<'a> {
    fn new(rng: &'a mut ChaCha8Rng) -> Self {
        let explicit_schema = rng.gen_bool(0.5);
        let extra_objects = rng.gen_range(0..=5usize);
        let root = if explicit_schema { "Root0" } else { "Query" };
        let mut object_names = vec![root.to_string()];
        let with_mutation = rng.gen_bool(0.3);
        if with_mutation {
            object_names.push(if explicit_schema { "Writes0" } else { "Mutation" }.to_string());
        }
        // Mutation roots count against the composite budget.
        let extra_objects = extra_objects.min(5 - usize::from(with_mutation));
        for i in 0..extra_objects {
            object_names.push(format!("T{i}"));
        }
        let interface_names: Vec<String> =
            (0..rng.gen_range(0..=2)).map(|i| format!("I{i}")).collect();
        let union_names: Vec<String> =
            (0..rng.gen_range(0..=2)).map(|i| format!("U{i}")).collect();
        let enum_names: Vec<String> =
            (0..rng.gen_range(0..=2)).map(|i| format!("E{i}")).collect();
        let scalar_names: Vec<String> =
            (0..rng.gen_range(0..=2)).map(|i| format!("S{i}")).collect();
        let input_names: Vec<String> =
            (0..rng.gen_range(0..=2)).map(|i| format!("In{i}")).collect();
        let has_directive = rng.gen_bool(0.3);
        Generator {
            rng,
            explicit_schema,
            object_names,
            interface_names,
            union_names,
            enum_names,
            scalar_names,
            input_names,
            has_directive,
        }
    }

    fn build(mut self) -> Vec<Definition> {
        let mut defs = Vec::new();
        if self.explicit_schema {
            let mut roots = vec![RootOperation {
                kind: OperationKind::Query,
                type_name: self.object_names[0].clone(),
                loc: Location::default(),
            }];
            if let Some(writes) = self.object_names.iter().find(|n| n.starts_with("Writes")) {
                roots.push(RootOperation {
                    kind: OperationKind::Mutation,
                    type_name: writes.clone(),
                    loc: Location::default(),
                });
            }
            defs.push(Definition::Schema(SchemaDefinition {
                description: self.description(0.2),
                roots,
                directives: Vec::new(),
                loc: Location::default(),
                from_extension: false,
            }));
        }
        if self.has_directive {
            defs.push(Definition::Directive(DirectiveDefinition {
                name: "mark".to_string(),
                description: self.description(0.25),
                arguments: vec![InputValueDefinition {
                    name: "level".to_string(),
                    description: None,
                    value_type: TypeReference::named("Int"),
                    default: Some(Value::Int("1".to_string())),
                    directives: Vec::new(),
                    loc: Location::default(),
                }],
                locations: vec!["FIELD_DEFINITION".to_string(), "OBJECT".to_string()],
                loc: Location::default(),
            }));
        }
        for name in self.scalar_names.clone() {
            defs.push(Definition::Scalar(ScalarType {
                name,
                description: self.description(0.25),
                directives: Vec::new(),
                loc: Location::default(),
                from_extension: false,
            }));
        }
        for name in self.enum_names.clone() {
            let values = (0..self.rng.gen_range(1..=4))
                .map(|i| EnumValueDefinition {
                    name: format!("V{i}"),
                    description: self.description(0.15),
                    directives: self.deprecation(0.15),
                    loc: Location::default(),
                })
                .collect();
            defs.push(Definition::Enum(EnumType {
                name,
                description: self.description(0.25),
                values,
                directives: Vec::new(),
                loc: Location::default(),
                from_extension: false,
            }));
        }
        for name in self.input_names.clone() {
            let fields = (0..self.rng.gen_range(1..=3))
                .map(|i| {
                    let value_type = self.input_type_reference();
                    InputValueDefinition {
                        name: format!("v{i}"),
                        description: self.description(0.15),
                        default: self.default_for(&value_type, 0.4),
                        value_type,
                        directives: Vec::new(),
                        loc: Location::default(),
                    }
                })
                .collect();
            defs.push(Definition::InputObject(InputObjectType {
                name,
                description: self.description(0.25),
                fields,
                directives: Vec::new(),
                loc: Location::default(),
                from_extension: false,
            }));
        }
        for (idx, name) in self.interface_names.clone().into_iter().enumerate() {
            let fields = (0..self.rng.gen_range(1..=3))
                .map(|i| self.field(format!("i{idx}f{i}")))
                .collect();
            defs.push(Definition::Interface(InterfaceType {
                name,
                description: self.description(0.25),
                fields,
                directives: Vec::new(),
                loc: Location::default(),
                from_extension: false,
            }));
        }
        let interface_fields: BTreeMap<String, Vec<FieldDefinition>> = defs
            .iter()
            .filter_map(|d| match d {
                Definition::Interface(i) => Some((i.name.clone(), i.fields.clone())),
                _ => None,
            })
            .collect();
        for (idx, name) in self.object_names.clone().into_iter().enumerate() {
            let mut implements = Vec::new();
            let mut fields = Vec::new();
            if !self.interface_names.is_empty() && self.rng.gen_bool(0.25) {
                let pick =
                    self.interface_names[self.rng.gen_range(0..self.interface_names.len())].clone();
                fields.extend(interface_fields[&pick].iter().cloned());
                implements.push(pick);
            }
            for i in 0..self.rng.gen_range(1..=4) {
                fields.push(self.field(format!("o{idx}f{i}")));
            }
            defs.push(Definition::Object(ObjectType {
                name,
                description: self.description(0.25),
                implements,
                fields,
                directives: self.applied_mark(0.15),
                loc: Location::default(),
                from_extension: false,
            }));
        }
        for name in self.union_names.clone() {
            let mut members: Vec<String> = Vec::new();
            for _ in 0..self.rng.gen_range(1..=3) {
                let pick = self.object_names[self.rng.gen_range(0..self.object_names.len())].clone();
                if !members.contains(&pick) {
                    members.push(pick);
                }
            }
            defs.push(Definition::Union(UnionType {
                name,
                description: self.description(0.25),
                members,
                directives: Vec::new(),
                loc: Location::default(),
                from_extension: false,
            }));
        }
        // Occasionally extend the root with scalar-only fields: exercises
        // the extension path without adding references a recovery split
        // would have to chase.
        if self.rng.gen_bool(0.15) {
            defs.push(Definition::Object(ObjectType {
                name: self.object_names[0].clone(),
                description: None,
                implements: Vec::new(),
                fields: vec![self.scalar_field("extra0".to_string())],
                directives: Vec::new(),
                loc: Location::default(),
                from_extension: true,
            }));
        }
        defs
    }

    fn field(&mut self, name: String) -> FieldDefinition {
        let return_type = self.output_type_reference();
        let arguments = if self.rng.gen_bool(0.4) {
            (0..self.rng.gen_range(1..=2))
                .map(|i| {
                    let value_type = self.input_type_reference();
                    InputValueDefinition {
                        name: format!("a{i}"),
                        description: None,
                        default: self.default_for(&value_type, 0.4),
                        value_type,
                        directives: Vec::new(),
                        loc: Location::default(),
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        FieldDefinition {
            name,
            description: self.description(0.15),
            arguments,
            return_type,
            directives: self.field_directives(),
            loc: Location::default(),
        }
    }

    fn scalar_field(&mut self, name: String) -> FieldDefinition {
        FieldDefinition {
            name,
            description: None,
            arguments: Vec::new(),
            return_type: TypeReference::named("Int"),
            directives: Vec::new(),
            loc: Location::default(),
        }
    }

    /// Output-kind reference: scalars and enums dominate so generated
    /// schemas keep plenty of leaves.
    fn output_type_reference(&mut self) -> TypeReference {
        let builtin = ["Int", "Float", "String", "Boolean", "ID"];
        let mut pool: Vec<String> = builtin.iter().map(|s| s.to_string()).collect();
        pool.extend(self.scalar_names.iter().cloned());
        pool.extend(self.enum_names.iter().cloned());
        // Two entries each keep composite returns common enough to grow
        // multi-level graphs.
        for _ in 0..2 {
            pool.extend(self.object_names.iter().cloned());
        }
        pool.extend(self.interface_names.iter().cloned());
        pool.extend(self.union_names.iter().cloned());
        let name = pool[self.rng.gen_range(0..pool.len())].clone();
        self.wrap(name)
    }

    fn input_type_reference(&mut self) -> TypeReference {
        let mut pool: Vec<String> = ["Int", "String", "Boolean", "ID"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        pool.extend(self.enum_names.iter().cloned());
        pool.extend(self.input_names.iter().cloned());
        let name = pool[self.rng.gen_range(0..pool.len())].clone();
        self.wrap(name)
    }

    /// Random wrapper stack, outermost first. Non-null markers only ever
    /// sit between list levels, so two never end up adjacent.
    fn wrap(&mut self, name: String) -> TypeReference {
        let depth = *[0, 0, 0, 1, 1, 2].choose(self.rng).unwrap();
        let mut wrappers = Vec::new();
        for _ in 0..depth {
            if self.rng.gen_bool(0.3) {
                wrappers.push(Wrapper::NonNull);
            }
            wrappers.push(Wrapper::List);
        }
        if self.rng.gen_bool(0.3) {
            wrappers.push(Wrapper::NonNull);
        }
        TypeReference {
            name,
            wrappers,
            loc: Location::default(),
        }
    }

    fn default_for(&mut self, value_type: &TypeReference, p: f64) -> Option<Value> {
        if value_type.is_list() || !self.rng.gen_bool(p) {
            return None;
        }
        let value = match value_type.name.as_str() {
            "Int" => Value::Int("7".to_string()),
            "String" | "ID" => Value::String {
                value: "seed".to_string(),
                block: false,
            },
            "Boolean" => Value::Boolean(true),
            name if self.enum_names.iter().any(|e| e == name) => Value::Enum("V0".to_string()),
            _ => return None,
        };
        Some(value)
    }

    fn description(&mut self, p: f64) -> Option<String> {
        self.rng
            .gen_bool(p)
            .then(|| DESCRIPTIONS[self.rng.gen_range(0..DESCRIPTIONS.len())].to_string())
    }

    fn deprecation(&mut self, p: f64) -> Vec<AppliedDirective> {
        if !self.rng.gen_bool(p) {
            return Vec::new();
        }
        let arguments = if self.rng.gen_bool(0.5) {
            vec![Argument {
                name: "reason".to_string(),
                value: Value::String {
                    value: "Use the replacement.".to_string(),
                    block: false,
                },
                loc: Location::default(),
            }]
        } else {
            Vec::new()
        };
        vec![AppliedDirective {
            name: "deprecated".to_string(),
            arguments,
            loc: Location::default(),
        }]
    }

    fn applied_mark(&mut self, p: f64) -> Vec<AppliedDirective> {
        if !self.has_directive || !self.rng.gen_bool(p) {
            return Vec::new();
        }
        vec![AppliedDirective {
            name: "mark".to_string(),
            arguments: vec![Argument {
                name: "level".to_string(),
                value: Value::Int("2".to_string()),
                loc: Location::default(),
            }],
            loc: Location::default(),
        }]
    }

    fn field_directives(&mut self) -> Vec<AppliedDirective> {
        let mut directives = self.deprecation(0.1);
        directives.extend(self.applied_mark(0.1));
        directives
    }
}

/// Bijective rename of user-defined type names (prefix `Rn`), leaving
/// builtin scalars alone. Without an explicit schema definition the
/// implicit root names also stay fixed so root resolution is unchanged.
pub fn type_rename_map(defs: &[Definition]) -> BTreeMap<String, String> {
    let has_explicit_schema = defs
        .iter()
        .any(|d| matches!(d, Definition::Schema(s) if !s.from_extension));
    let mut map = BTreeMap::new();
    for def in defs {
        if def.namespace() != Namespace::Type {
            continue;
        }
        let Some(name) = def.name() else { continue };
        if !has_explicit_schema && ["Query", "Mutation", "Subscription"].contains(&name) {
            continue;
        }
        map.insert(name.to_string(), format!("Rn{name}"));
    }
    map
}

/// Applies a type rename map everywhere a type name can appear: definition
/// names, root operations, implements lists, union members, field return
/// types, and argument/input-field/directive-argument types.
pub fn rename_definitions(
    defs: &[Definition],
    map: &BTreeMap<String, String>,
) -> Vec<Definition> {
    let rename = |name: &str| -> String {
        map.get(name).cloned().unwrap_or_else(|| name.to_string())
    };
    let rename_ref = |r: &TypeReference| -> TypeReference {
        TypeReference {
            name: rename(&r.name),
            wrappers: r.wrappers.clone(),
            loc: r.loc,
        }
    };
    let rename_inputs = |inputs: &[InputValueDefinition]| -> Vec<InputValueDefinition> {
        inputs
            .iter()
            .map(|i| InputValueDefinition {
                value_type: rename_ref(&i.value_type),
                ..i.clone()
            })
            .collect()
    };
    let rename_fields = |fields: &[FieldDefinition]| -> Vec<FieldDefinition> {
        fields
            .iter()
            .map(|f| FieldDefinition {
                return_type: rename_ref(&f.return_type),
                arguments: rename_inputs(&f.arguments),
                ..f.clone()
            })
            .collect()
    };
    defs.iter()
        .map(|def| match def {
            Definition::Schema(s) => Definition::Schema(SchemaDefinition {
                roots: s
                    .roots
                    .iter()
                    .map(|r| RootOperation {
                        type_name: rename(&r.type_name),
                        ..r.clone()
                    })
                    .collect(),
                ..s.clone()
            }),
            Definition::Object(o) => Definition::Object(ObjectType {
                name: rename(&o.name),
                implements: o.implements.iter().map(|i| rename(i)).collect(),
                fields: rename_fields(&o.fields),
                ..o.clone()
            }),
            Definition::Interface(i) => Definition::Interface(InterfaceType {
                name: rename(&i.name),
                fields: rename_fields(&i.fields),
                ..i.clone()
            }),
            Definition::Union(u) => Definition::Union(UnionType {
                name: rename(&u.name),
                members: u.members.iter().map(|m| rename(m)).collect(),
                ..u.clone()
            }),
            Definition::Enum(e) => Definition::Enum(EnumType {
                name: rename(&e.name),
                ..e.clone()
            }),
            Definition::Scalar(s) => Definition::Scalar(ScalarType {
                name: rename(&s.name),
                ..s.clone()
            }),
            Definition::InputObject(i) => Definition::InputObject(InputObjectType {
                name: rename(&i.name),
                fields: rename_inputs(&i.fields),
                ..i.clone()
            }),
            Definition::Directive(d) => Definition::Directive(DirectiveDefinition {
                arguments: rename_inputs(&d.arguments),
                ..d.clone()
            }),
        })
        .collect()
}

/// Splits definitions into at most `parts` SDL texts. The first text is the
/// recovery entry: it holds the schema definition (if any), the resolved
/// query root type, and every extension; the rest are scattered at random.
/// Empty parts are dropped, so fewer texts than `parts` can come back.
pub fn split_sdl(defs: &[Definition], parts: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    assert!(parts >= 1);
    let doc = SchemaDocument::from_definitions(defs.to_vec(), None);
    let root = doc
        .root_type_name(OperationKind::Query)
        .expect("generated schemas always have a query root")
        .to_string();
    let mut buckets: Vec<Vec<&Definition>> = vec![Vec::new(); parts];
    for def in defs {
        let entry_bound = matches!(def, Definition::Schema(_))
            || def.from_extension()
            || def.name() == Some(root.as_str());
        let bucket = if entry_bound { 0 } else { rng.gen_range(0..parts) };
        buckets[bucket].push(def);
    }
    buckets
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|bucket| {
            let blocks: Vec<String> = bucket
                .into_iter()
                .map(gqlscan::printer::print_definition)
                .collect();
            format!("{}\n", blocks.join("\n\n"))
        })
        .collect()
}

/// A `k`-level list chain ending in `leaves` scalar fields. Its worst-case
/// response for a query of size `n ≥ k + leaves` is exactly the closed-form
/// bound at nesting `k`, because the deepest type offers enough distinct
/// leaves to spend the whole remaining budget.
pub fn chain_sdl(k: u64, leaves: u64) -> String {
    assert!(leaves >= 1);
    let mut out = String::new();
    if k == 0 {
        out.push_str("type Query {\n");
        for i in 0..leaves {
            out.push_str(&format!("  s{i}: Int\n"));
        }
        out.push_str("}\n");
        return out;
    }
    out.push_str("type Query {\n  f1: [C1]\n}\n");
    for level in 1..k {
        out.push_str(&format!(
            "type C{level} {{\n  f{}: [C{}]\n}}\n",
            level + 1,
            level + 1
        ));
    }
    out.push_str(&format!("type C{k} {{\n"));
    for i in 0..leaves {
        out.push_str(&format!("  s{i}: Int\n"));
    }
    out.push_str("}\n");
    out
}
