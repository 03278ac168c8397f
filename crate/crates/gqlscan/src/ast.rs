//! Syntax tree for GraphQL documents (June 2018 edition).
//!
//! [`Document`] holds everything a file can contain, including executable
//! definitions and type extensions. [`SchemaDocument`] is the type-system-only
//! view consumed by every analysis: executable definitions are rejected and
//! extensions are folded into their base definitions (the raw definition
//! sequence is kept for printing and equivalence checks).

use std::collections::BTreeSet;
use std::fmt;

/// 1-based source position of a syntax node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Location {
    pub line: u32,
    pub column: u32,
}

impl Location {
    pub fn new(line: u32, column: u32) -> Self {
        Location { line, column }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Scalar names that exist without a definition.
pub const BUILTIN_SCALARS: [&str; 5] = ["Int", "Float", "String", "Boolean", "ID"];

/// Directive names that exist without a definition.
pub const BUILTIN_DIRECTIVES: [&str; 3] = ["skip", "include", "deprecated"];

pub fn is_builtin_scalar(name: &str) -> bool {
    BUILTIN_SCALARS.contains(&name)
}

pub fn is_builtin_directive(name: &str) -> bool {
    BUILTIN_DIRECTIVES.contains(&name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OperationKind {
    Query,
    Mutation,
    Subscription,
}

impl OperationKind {
    pub fn keyword(self) -> &'static str {
        match self {
            OperationKind::Query => "query",
            OperationKind::Mutation => "mutation",
            OperationKind::Subscription => "subscription",
        }
    }

    /// Type name that implicitly serves as this root when no schema
    /// definition is present.
    pub fn default_type_name(self) -> &'static str {
        match self {
            OperationKind::Query => "Query",
            OperationKind::Mutation => "Mutation",
            OperationKind::Subscription => "Subscription",
        }
    }
}

/// List/non-null wrappers of a type reference, outermost first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wrapper {
    List,
    NonNull,
}

/// A use of a named type, e.g. `[Office!]!`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeReference {
    pub name: String,
    /// Outermost wrapper first: `[Office!]!` is `[NonNull, List, NonNull]`.
    pub wrappers: Vec<Wrapper>,
    pub loc: Location,
}

impl TypeReference {
    pub fn named(name: impl Into<String>) -> Self {
        TypeReference {
            name: name.into(),
            wrappers: Vec::new(),
            loc: Location::default(),
        }
    }

    /// Number of list wrappers at any depth.
    pub fn list_depth(&self) -> u32 {
        self.wrappers.iter().filter(|w| **w == Wrapper::List).count() as u32
    }

    pub fn is_list(&self) -> bool {
        self.list_depth() > 0
    }
}

impl fmt::Display for TypeReference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn render(name: &str, wrappers: &[Wrapper]) -> String {
            match wrappers.split_first() {
                None => name.to_string(),
                Some((Wrapper::NonNull, rest)) => format!("{}!", render(name, rest)),
                Some((Wrapper::List, rest)) => format!("[{}]", render(name, rest)),
            }
        }
        write!(f, "{}", render(&self.name, &self.wrappers))
    }
}

/// A literal value as written in the source.
///
/// Int and float literals keep their raw spelling so printing reproduces the
/// input exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Variable(String),
    Int(String),
    Float(String),
    String { value: String, block: bool },
    Boolean(bool),
    Null,
    Enum(String),
    List(Vec<Value>),
    Object(Vec<(String, Value)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Argument {
    pub name: String,
    pub value: Value,
    pub loc: Location,
}

/// A directive use site, e.g. `@deprecated(reason: "...")`.
#[derive(Clone, Debug, PartialEq)]
pub struct AppliedDirective {
    pub name: String,
    pub arguments: Vec<Argument>,
    pub loc: Location,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootOperation {
    pub kind: OperationKind,
    pub type_name: String,
    pub loc: Location,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemaDefinition {
    pub description: Option<String>,
    pub roots: Vec<RootOperation>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
    pub from_extension: bool,
}

impl SchemaDefinition {
    pub fn root(&self, kind: OperationKind) -> Option<&str> {
        self.roots
            .iter()
            .find(|r| r.kind == kind)
            .map(|r| r.type_name.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputValueDefinition {
    pub name: String,
    pub description: Option<String>,
    pub value_type: TypeReference,
    pub default: Option<Value>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldDefinition {
    pub name: String,
    pub description: Option<String>,
    pub arguments: Vec<InputValueDefinition>,
    pub return_type: TypeReference,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObjectType {
    pub name: String,
    pub description: Option<String>,
    pub implements: Vec<String>,
    pub fields: Vec<FieldDefinition>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
    pub from_extension: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterfaceType {
    pub name: String,
    pub description: Option<String>,
    pub fields: Vec<FieldDefinition>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
    pub from_extension: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnionType {
    pub name: String,
    pub description: Option<String>,
    pub members: Vec<String>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
    pub from_extension: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnumValueDefinition {
    pub name: String,
    pub description: Option<String>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnumType {
    pub name: String,
    pub description: Option<String>,
    pub values: Vec<EnumValueDefinition>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
    pub from_extension: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarType {
    pub name: String,
    pub description: Option<String>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
    pub from_extension: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputObjectType {
    pub name: String,
    pub description: Option<String>,
    pub fields: Vec<InputValueDefinition>,
    pub directives: Vec<AppliedDirective>,
    pub loc: Location,
    pub from_extension: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectiveDefinition {
    pub name: String,
    pub description: Option<String>,
    pub arguments: Vec<InputValueDefinition>,
    pub locations: Vec<String>,
    pub loc: Location,
}

/// A top-level type-system definition.
#[derive(Clone, Debug, PartialEq)]
pub enum Definition {
    Schema(SchemaDefinition),
    Object(ObjectType),
    InputObject(InputObjectType),
    Interface(InterfaceType),
    Union(UnionType),
    Enum(EnumType),
    Scalar(ScalarType),
    Directive(DirectiveDefinition),
}

/// Definition namespaces: type names and directive names never collide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Namespace {
    Type,
    Directive,
}

impl Definition {
    /// Definition name; `None` for the unnamed schema definition.
    pub fn name(&self) -> Option<&str> {
        match self {
            Definition::Schema(_) => None,
            Definition::Object(d) => Some(&d.name),
            Definition::InputObject(d) => Some(&d.name),
            Definition::Interface(d) => Some(&d.name),
            Definition::Union(d) => Some(&d.name),
            Definition::Enum(d) => Some(&d.name),
            Definition::Scalar(d) => Some(&d.name),
            Definition::Directive(d) => Some(&d.name),
        }
    }

    pub fn namespace(&self) -> Namespace {
        match self {
            Definition::Directive(_) => Namespace::Directive,
            _ => Namespace::Type,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Definition::Schema(_) => "schema",
            Definition::Object(_) => "object",
            Definition::InputObject(_) => "input_object",
            Definition::Interface(_) => "interface",
            Definition::Union(_) => "union",
            Definition::Enum(_) => "enum",
            Definition::Scalar(_) => "scalar",
            Definition::Directive(_) => "directive",
        }
    }

    pub fn loc(&self) -> Location {
        match self {
            Definition::Schema(d) => d.loc,
            Definition::Object(d) => d.loc,
            Definition::InputObject(d) => d.loc,
            Definition::Interface(d) => d.loc,
            Definition::Union(d) => d.loc,
            Definition::Enum(d) => d.loc,
            Definition::Scalar(d) => d.loc,
            Definition::Directive(d) => d.loc,
        }
    }

    pub fn from_extension(&self) -> bool {
        match self {
            Definition::Schema(d) => d.from_extension,
            Definition::Object(d) => d.from_extension,
            Definition::InputObject(d) => d.from_extension,
            Definition::Interface(d) => d.from_extension,
            Definition::Union(d) => d.from_extension,
            Definition::Enum(d) => d.from_extension,
            Definition::Scalar(d) => d.from_extension,
            Definition::Directive(_) => false,
        }
    }
}

/// Summary of an executable definition found in a full document.
///
/// Selection detail is validated during parsing but not retained; analyses
/// only need to know executable definitions exist.
#[derive(Clone, Debug, PartialEq)]
pub enum ExecutableDefinition {
    Operation {
        kind: OperationKind,
        name: Option<String>,
        loc: Location,
    },
    Fragment {
        name: String,
        loc: Location,
    },
}

impl ExecutableDefinition {
    pub fn loc(&self) -> Location {
        match self {
            ExecutableDefinition::Operation { loc, .. } => *loc,
            ExecutableDefinition::Fragment { loc, .. } => *loc,
        }
    }
}

/// Any top-level definition a GraphQL file may contain.
#[derive(Clone, Debug, PartialEq)]
pub enum DocumentDefinition {
    TypeSystem(Definition),
    Executable(ExecutableDefinition),
}

/// A parsed GraphQL document before the type-system-only view is extracted.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub definitions: Vec<DocumentDefinition>,
}

impl Document {
    /// True iff the document contains no operation or fragment definitions.
    pub fn is_pure_schema(&self) -> bool {
        self.definitions
            .iter()
            .all(|d| matches!(d, DocumentDefinition::TypeSystem(_)))
    }
}

/// A type-system-only document.
///
/// `definitions` preserves the source sequence (extensions appear as
/// definitions flagged `from_extension`); `effective` folds extensions into
/// their bases and keeps one entry per name, which is what analyses consume.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemaDocument {
    pub definitions: Vec<Definition>,
    pub source_name: Option<String>,
    effective: Vec<Definition>,
    duplicate_names: BTreeSet<(Namespace, String)>,
}

impl SchemaDocument {
    pub fn from_definitions(definitions: Vec<Definition>, source_name: Option<String>) -> Self {
        let (effective, duplicate_names) = merge_definitions(&definitions);
        SchemaDocument {
            definitions,
            source_name,
            effective,
            duplicate_names,
        }
    }

    pub fn empty() -> Self {
        SchemaDocument::from_definitions(Vec::new(), None)
    }

    /// Definitions with extensions folded in, one per name.
    pub fn effective_definitions(&self) -> &[Definition] {
        &self.effective
    }

    /// Names defined more than once (extensions do not count as duplicates).
    pub fn duplicate_names(&self) -> &BTreeSet<(Namespace, String)> {
        &self.duplicate_names
    }

    /// Effective schema definition, if any appears in the document.
    pub fn schema_definition(&self) -> Option<&SchemaDefinition> {
        self.effective.iter().find_map(|d| match d {
            Definition::Schema(s) => Some(s),
            _ => None,
        })
    }

    /// Effective type definition by name (directives live in their own
    /// namespace, see [`SchemaDocument::directive_definition`]).
    pub fn type_definition(&self, name: &str) -> Option<&Definition> {
        self.effective.iter().find(|d| {
            d.namespace() == Namespace::Type && d.name() == Some(name)
        })
    }

    pub fn directive_definition(&self, name: &str) -> Option<&DirectiveDefinition> {
        self.effective.iter().find_map(|d| match d {
            Definition::Directive(dd) if dd.name == name => Some(dd),
            _ => None,
        })
    }

    pub fn object_type(&self, name: &str) -> Option<&ObjectType> {
        match self.type_definition(name) {
            Some(Definition::Object(o)) => Some(o),
            _ => None,
        }
    }

    /// Resolved root operation type name.
    ///
    /// An explicit schema definition is authoritative when present; otherwise
    /// an object type carrying the default root name serves as the root. A
    /// schema definition or root type that only exists through extensions
    /// does not establish a root on its own.
    pub fn root_type_name(&self, kind: OperationKind) -> Option<&str> {
        if let Some(schema) = self.schema_definition() {
            if !schema.from_extension {
                return schema.root(kind);
            }
        }
        let default_name = kind.default_type_name();
        match self.type_definition(default_name) {
            Some(def) if !def.from_extension() => match def {
                Definition::Object(_) => Some(default_name),
                _ => None,
            },
            _ => None,
        }
    }

    /// True iff a query root operation is established.
    pub fn has_query_operation(&self) -> bool {
        self.root_type_name(OperationKind::Query).is_some()
    }

    /// New document with `other`'s definitions appended after this one's.
    pub fn concatenated(&self, other: &SchemaDocument) -> SchemaDocument {
        let mut defs = self.definitions.clone();
        defs.extend(other.definitions.iter().cloned());
        SchemaDocument::from_definitions(defs, self.source_name.clone())
    }
}

/// Folds extensions into bases and detects duplicate names.
///
/// Grouping key is (namespace, name) with the schema definition in a
/// reserved slot. Within a group: one non-extension definition is the base
/// and extensions merge into it in sequence order; two or more non-extension
/// definitions are a duplicate (the first stays effective so analyses can
/// continue); extension-only groups merge into a single definition that keeps
/// its `from_extension` flag.
fn merge_definitions(
    definitions: &[Definition],
) -> (Vec<Definition>, BTreeSet<(Namespace, String)>) {
    // Key: None = schema definition slot, Some((ns, name)) otherwise.
    type Key = Option<(Namespace, String)>;
    let key_of = |d: &Definition| -> Key {
        d.name().map(|n| (d.namespace(), n.to_string()))
    };

    let mut order: Vec<Key> = Vec::new();
    let mut groups: Vec<Vec<&Definition>> = Vec::new();
    for def in definitions {
        let key = key_of(def);
        match order.iter().position(|k| *k == key) {
            Some(i) => groups[i].push(def),
            None => {
                order.push(key);
                groups.push(vec![def]);
            }
        }
    }

    let mut effective = Vec::new();
    let mut duplicates = BTreeSet::new();
    for (key, group) in order.into_iter().zip(groups) {
        let base_count = group.iter().filter(|d| !d.from_extension()).count();
        if base_count > 1 {
            if let Some(k) = key {
                duplicates.insert(k);
            } else {
                duplicates.insert((Namespace::Type, "schema".to_string()));
            }
        }
        // Seed with the first non-extension definition (duplicates keep the
        // first occurrence), or the first extension when no base exists.
        let seed_index = group
            .iter()
            .position(|d| !d.from_extension())
            .unwrap_or(0);
        let mut merged = group[seed_index].clone();
        for (i, ext) in group.iter().enumerate() {
            if i == seed_index || !ext.from_extension() {
                continue;
            }
            merge_extension(&mut merged, ext);
        }
        effective.push(merged);
    }
    (effective, duplicates)
}

/// Appends an extension's content to a base definition of the same kind.
/// Mismatched kinds leave the base untouched; validation reports the clash
/// via the duplicate-name path when both occupy the type namespace.
fn merge_extension(base: &mut Definition, ext: &Definition) {
    match (base, ext) {
        (Definition::Schema(b), Definition::Schema(e)) => {
            b.roots.extend(e.roots.iter().cloned());
            b.directives.extend(e.directives.iter().cloned());
        }
        (Definition::Object(b), Definition::Object(e)) => {
            b.implements.extend(e.implements.iter().cloned());
            b.fields.extend(e.fields.iter().cloned());
            b.directives.extend(e.directives.iter().cloned());
        }
        (Definition::InputObject(b), Definition::InputObject(e)) => {
            b.fields.extend(e.fields.iter().cloned());
            b.directives.extend(e.directives.iter().cloned());
        }
        (Definition::Interface(b), Definition::Interface(e)) => {
            b.fields.extend(e.fields.iter().cloned());
            b.directives.extend(e.directives.iter().cloned());
        }
        (Definition::Union(b), Definition::Union(e)) => {
            b.members.extend(e.members.iter().cloned());
            b.directives.extend(e.directives.iter().cloned());
        }
        (Definition::Enum(b), Definition::Enum(e)) => {
            b.values.extend(e.values.iter().cloned());
            b.directives.extend(e.directives.iter().cloned());
        }
        (Definition::Scalar(b), Definition::Scalar(e)) => {
            b.directives.extend(e.directives.iter().cloned());
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn object(name: &str, fields: Vec<FieldDefinition>, from_extension: bool) -> Definition {
        Definition::Object(ObjectType {
            name: name.to_string(),
            description: None,
            implements: Vec::new(),
            fields,
            directives: Vec::new(),
            loc: Location::default(),
            from_extension,
        })
    }

    fn field(name: &str, ty: &str) -> FieldDefinition {
        FieldDefinition {
            name: name.to_string(),
            description: None,
            arguments: Vec::new(),
            return_type: TypeReference::named(ty),
            directives: Vec::new(),
            loc: Location::default(),
        }
    }

    #[test]
    fn type_reference_display_nests_wrappers() {
        let r = TypeReference {
            name: "Office".to_string(),
            wrappers: vec![Wrapper::NonNull, Wrapper::List, Wrapper::NonNull],
            loc: Location::default(),
        };
        assert_eq!(r.to_string(), "[Office!]!");
        assert_eq!(r.list_depth(), 1);
    }

    #[test]
    fn extension_fields_fold_into_base() {
        let doc = SchemaDocument::from_definitions(
            vec![
                object("Query", vec![field("a", "Int")], false),
                object("Query", vec![field("b", "Int")], true),
            ],
            None,
        );
        assert!(doc.duplicate_names().is_empty());
        let merged = doc.object_type("Query").unwrap();
        let names: Vec<_> = merged.fields.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["a", "b"]);
    }

    #[test]
    fn two_bases_are_a_duplicate_name() {
        let doc = SchemaDocument::from_definitions(
            vec![
                object("Office", vec![field("a", "Int")], false),
                object("Office", vec![field("b", "Int")], false),
            ],
            None,
        );
        assert!(doc
            .duplicate_names()
            .contains(&(Namespace::Type, "Office".to_string())));
        // First base survives as the effective definition.
        assert_eq!(doc.object_type("Office").unwrap().fields[0].name, "a");
    }

    #[test]
    fn extension_only_type_does_not_establish_query_root() {
        let doc = SchemaDocument::from_definitions(
            vec![object("Query", vec![field("a", "Int")], true)],
            None,
        );
        assert!(!doc.has_query_operation());
        assert!(doc.type_definition("Query").is_some());
    }

    #[test]
    fn explicit_schema_definition_overrides_default_names() {
        let schema = Definition::Schema(SchemaDefinition {
            description: None,
            roots: vec![RootOperation {
                kind: OperationKind::Query,
                type_name: "Root".to_string(),
                loc: Location::default(),
            }],
            directives: Vec::new(),
            loc: Location::default(),
            from_extension: false,
        });
        let doc = SchemaDocument::from_definitions(
            vec![
                schema,
                object("Root", vec![field("a", "Int")], false),
                object("Mutation", vec![field("m", "Int")], false),
            ],
            None,
        );
        assert_eq!(doc.root_type_name(OperationKind::Query), Some("Root"));
        // The schema definition is authoritative: a stray Mutation type does
        // not become a root.
        assert_eq!(doc.root_type_name(OperationKind::Mutation), None);
    }
}
