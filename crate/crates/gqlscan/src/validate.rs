//! Completeness and consistency validation for schema documents.
//!
//! `valid` requires a query root operation, every referenced type and
//! directive defined, and no structural violations. `incomplete` marks a
//! document that has a query root but dangling references: the shape produced
//! by schemas split across several files. Everything else is `invalid`.

use crate::ast::*;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationStatus {
    Valid,
    Incomplete,
    Invalid,
}

impl ValidationStatus {
    pub fn label(self) -> &'static str {
        match self {
            ValidationStatus::Valid => "valid",
            ValidationStatus::Incomplete => "incomplete",
            ValidationStatus::Invalid => "invalid",
        }
    }
}

/// An unresolved identifier. Type and directive names live in separate
/// namespaces; directives display with an `@` prefix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MissingRef {
    pub namespace: Namespace,
    pub name: String,
}

impl MissingRef {
    pub fn type_name(name: impl Into<String>) -> Self {
        MissingRef {
            namespace: Namespace::Type,
            name: name.into(),
        }
    }

    pub fn directive(name: impl Into<String>) -> Self {
        MissingRef {
            namespace: Namespace::Directive,
            name: name.into(),
        }
    }
}

impl fmt::Display for MissingRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.namespace {
            Namespace::Type => write!(f, "{}", self.name),
            Namespace::Directive => write!(f, "@{}", self.name),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticCode {
    NoQueryOperation,
    MissingReference,
    DuplicateName,
    DuplicateMember,
    KindMisuse,
}

impl DiagnosticCode {
    pub fn label(self) -> &'static str {
        match self {
            DiagnosticCode::NoQueryOperation => "no_query_operation",
            DiagnosticCode::MissingReference => "missing_reference",
            DiagnosticCode::DuplicateName => "duplicate_name",
            DiagnosticCode::DuplicateMember => "duplicate_member",
            DiagnosticCode::KindMisuse => "kind_misuse",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
    /// Name the diagnostic is about, when one applies.
    pub subject: Option<String>,
    pub loc: Location,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationResult {
    pub status: ValidationStatus,
    pub has_query_operation: bool,
    pub missing_references: BTreeSet<MissingRef>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationResult {
    pub fn is_valid(&self) -> bool {
        self.status == ValidationStatus::Valid
    }

    /// A document is complete when a query root exists and every reference
    /// resolves, regardless of other violations.
    pub fn is_complete(&self) -> bool {
        self.has_query_operation && self.missing_references.is_empty()
    }

    /// Names involved in hard violations (duplicates and kind misuse).
    pub fn violation_names(&self) -> BTreeSet<String> {
        self.diagnostics
            .iter()
            .filter(|d| {
                matches!(
                    d.code,
                    DiagnosticCode::DuplicateName
                        | DiagnosticCode::DuplicateMember
                        | DiagnosticCode::KindMisuse
                )
            })
            .filter_map(|d| d.subject.clone())
            .collect()
    }
}

/// Type reference positions with different kind requirements.
#[derive(Clone, Copy, PartialEq)]
enum Position {
    Output,
    Input,
}

pub fn validate(doc: &SchemaDocument) -> ValidationResult {
    let mut checker = Checker {
        doc,
        missing: BTreeSet::new(),
        diagnostics: Vec::new(),
    };
    checker.run();

    let has_query_operation = doc.has_query_operation();
    if !has_query_operation {
        checker.diagnostics.push(Diagnostic {
            code: DiagnosticCode::NoQueryOperation,
            message: "document does not define a query root operation".to_string(),
            subject: None,
            loc: Location::new(1, 1),
        });
    }

    let hard_violation = checker.diagnostics.iter().any(|d| {
        matches!(
            d.code,
            DiagnosticCode::DuplicateName
                | DiagnosticCode::DuplicateMember
                | DiagnosticCode::KindMisuse
        )
    });

    let status = if !has_query_operation {
        ValidationStatus::Invalid
    } else if !checker.missing.is_empty() {
        ValidationStatus::Incomplete
    } else if hard_violation {
        ValidationStatus::Invalid
    } else {
        ValidationStatus::Valid
    };

    ValidationResult {
        status,
        has_query_operation,
        missing_references: checker.missing,
        diagnostics: checker.diagnostics,
    }
}

struct Checker<'a> {
    doc: &'a SchemaDocument,
    missing: BTreeSet<MissingRef>,
    diagnostics: Vec<Diagnostic>,
}

impl<'a> Checker<'a> {
    fn run(&mut self) {
        self.report_duplicate_names();
        for def in self.doc.effective_definitions().to_vec() {
            match &def {
                Definition::Schema(d) => self.check_schema_definition(d),
                Definition::Object(d) => self.check_object(d),
                Definition::Interface(d) => self.check_interface(d),
                Definition::Union(d) => self.check_union(d),
                Definition::Enum(d) => self.check_enum(d),
                Definition::Scalar(d) => self.check_directive_uses(&d.directives),
                Definition::InputObject(d) => self.check_input_object(d),
                Definition::Directive(d) => self.check_directive_definition(d),
            }
        }
    }

    fn diag(
        &mut self,
        code: DiagnosticCode,
        subject: Option<String>,
        loc: Location,
        message: String,
    ) {
        self.diagnostics.push(Diagnostic {
            code,
            message,
            subject,
            loc,
        });
    }

    fn report_duplicate_names(&mut self) {
        for (namespace, name) in self.doc.duplicate_names().clone() {
            let message = match namespace {
                Namespace::Type if name == "schema" => {
                    "duplicate schema definition".to_string()
                }
                Namespace::Type => format!("duplicate definition of type `{name}`"),
                Namespace::Directive => format!("duplicate definition of directive `@{name}`"),
            };
            self.diag(DiagnosticCode::DuplicateName, Some(name), Location::new(1, 1), message);
        }
    }

    fn check_duplicate_members<'b>(
        &mut self,
        names: impl Iterator<Item = (&'b str, Location)>,
        what: &str,
        owner: &str,
    ) {
        let mut seen = BTreeSet::new();
        for (name, loc) in names {
            if !seen.insert(name.to_string()) {
                self.diag(
                    DiagnosticCode::DuplicateMember,
                    Some(owner.to_string()),
                    loc,
                    format!("duplicate {what} `{name}` on `{owner}`"),
                );
            }
        }
    }

    fn resolve_type(&self, name: &str) -> Option<TypeKind> {
        if is_builtin_scalar(name) {
            return Some(TypeKind::Scalar);
        }
        match self.doc.type_definition(name) {
            Some(Definition::Object(_)) => Some(TypeKind::Object),
            Some(Definition::Interface(_)) => Some(TypeKind::Interface),
            Some(Definition::Union(_)) => Some(TypeKind::Union),
            Some(Definition::Enum(_)) => Some(TypeKind::Enum),
            Some(Definition::Scalar(_)) => Some(TypeKind::Scalar),
            Some(Definition::InputObject(_)) => Some(TypeKind::InputObject),
            _ => None,
        }
    }

    fn check_type_ref(&mut self, r: &TypeReference, position: Position, site: &str) {
        let Some(kind) = self.resolve_type(&r.name) else {
            self.missing.insert(MissingRef::type_name(&r.name));
            self.diag(
                DiagnosticCode::MissingReference,
                Some(r.name.clone()),
                r.loc,
                format!("type `{}` referenced by {site} is not defined", r.name),
            );
            return;
        };
        let ok = match position {
            Position::Output => !matches!(kind, TypeKind::InputObject),
            Position::Input => matches!(
                kind,
                TypeKind::Scalar | TypeKind::Enum | TypeKind::InputObject
            ),
        };
        if !ok {
            let expected = match position {
                Position::Output => "an output type",
                Position::Input => "an input type",
            };
            self.diag(
                DiagnosticCode::KindMisuse,
                Some(r.name.clone()),
                r.loc,
                format!(
                    "{site} references `{}`, which is {} and not {expected}",
                    r.name,
                    kind.article_label()
                ),
            );
        }
    }

    fn check_directive_uses(&mut self, directives: &[AppliedDirective]) {
        for d in directives {
            if is_builtin_directive(&d.name) || self.doc.directive_definition(&d.name).is_some() {
                continue;
            }
            self.missing.insert(MissingRef::directive(&d.name));
            self.diag(
                DiagnosticCode::MissingReference,
                Some(d.name.clone()),
                d.loc,
                format!("directive `@{}` is not defined", d.name),
            );
        }
    }

    fn check_schema_definition(&mut self, d: &SchemaDefinition) {
        self.check_directive_uses(&d.directives);
        self.check_duplicate_members(
            d.roots.iter().map(|r| (r.kind.keyword(), r.loc)),
            "root operation",
            "schema",
        );
        for root in &d.roots {
            match self.resolve_type(&root.type_name) {
                None => {
                    self.missing.insert(MissingRef::type_name(&root.type_name));
                    self.diag(
                        DiagnosticCode::MissingReference,
                        Some(root.type_name.clone()),
                        root.loc,
                        format!(
                            "type `{}` referenced by the `{}` root is not defined",
                            root.type_name,
                            root.kind.keyword()
                        ),
                    );
                }
                Some(TypeKind::Object) => {}
                Some(kind) => {
                    self.diag(
                        DiagnosticCode::KindMisuse,
                        Some(root.type_name.clone()),
                        root.loc,
                        format!(
                            "the `{}` root references `{}`, which is {} and not an object type",
                            root.kind.keyword(),
                            root.type_name,
                            kind.article_label()
                        ),
                    );
                }
            }
        }
    }

    fn check_fields(&mut self, owner: &str, fields: &[FieldDefinition]) {
        self.check_duplicate_members(
            fields.iter().map(|f| (f.name.as_str(), f.loc)),
            "field",
            owner,
        );
        for field in fields {
            let site = format!("`{owner}.{}`", field.name);
            self.check_type_ref(&field.return_type, Position::Output, &site);
            self.check_directive_uses(&field.directives);
            self.check_duplicate_members(
                field.arguments.iter().map(|a| (a.name.as_str(), a.loc)),
                "argument",
                &format!("{owner}.{}", field.name),
            );
            for arg in &field.arguments {
                let arg_site = format!("argument `{}` of `{owner}.{}`", arg.name, field.name);
                self.check_type_ref(&arg.value_type, Position::Input, &arg_site);
                self.check_directive_uses(&arg.directives);
            }
        }
    }

    fn check_object(&mut self, d: &ObjectType) {
        self.check_directive_uses(&d.directives);
        for interface in &d.implements {
            match self.resolve_type(interface) {
                None => {
                    self.missing.insert(MissingRef::type_name(interface));
                    self.diag(
                        DiagnosticCode::MissingReference,
                        Some(interface.clone()),
                        d.loc,
                        format!(
                            "interface `{interface}` implemented by `{}` is not defined",
                            d.name
                        ),
                    );
                }
                Some(TypeKind::Interface) => {}
                Some(kind) => {
                    self.diag(
                        DiagnosticCode::KindMisuse,
                        Some(interface.clone()),
                        d.loc,
                        format!(
                            "`{}` implements `{interface}`, which is {} and not an interface",
                            d.name,
                            kind.article_label()
                        ),
                    );
                }
            }
        }
        self.check_fields(&d.name, &d.fields);
    }

    fn check_interface(&mut self, d: &InterfaceType) {
        self.check_directive_uses(&d.directives);
        self.check_fields(&d.name, &d.fields);
    }

    fn check_union(&mut self, d: &UnionType) {
        self.check_directive_uses(&d.directives);
        self.check_duplicate_members(
            d.members.iter().map(|m| (m.as_str(), d.loc)),
            "member",
            &d.name,
        );
        for member in &d.members {
            match self.resolve_type(member) {
                None => {
                    self.missing.insert(MissingRef::type_name(member));
                    self.diag(
                        DiagnosticCode::MissingReference,
                        Some(member.clone()),
                        d.loc,
                        format!("union `{}` member `{member}` is not defined", d.name),
                    );
                }
                Some(TypeKind::Object) => {}
                Some(kind) => {
                    self.diag(
                        DiagnosticCode::KindMisuse,
                        Some(member.clone()),
                        d.loc,
                        format!(
                            "union `{}` member `{member}` is {} and not an object type",
                            d.name,
                            kind.article_label()
                        ),
                    );
                }
            }
        }
    }

    fn check_enum(&mut self, d: &EnumType) {
        self.check_directive_uses(&d.directives);
        self.check_duplicate_members(
            d.values.iter().map(|v| (v.name.as_str(), v.loc)),
            "value",
            &d.name,
        );
        for value in &d.values {
            self.check_directive_uses(&value.directives);
        }
    }

    fn check_input_object(&mut self, d: &InputObjectType) {
        self.check_directive_uses(&d.directives);
        self.check_duplicate_members(
            d.fields.iter().map(|f| (f.name.as_str(), f.loc)),
            "input field",
            &d.name,
        );
        for field in &d.fields {
            let site = format!("input field `{}.{}`", d.name, field.name);
            self.check_type_ref(&field.value_type, Position::Input, &site);
            self.check_directive_uses(&field.directives);
        }
    }

    fn check_directive_definition(&mut self, d: &DirectiveDefinition) {
        self.check_duplicate_members(
            d.arguments.iter().map(|a| (a.name.as_str(), a.loc)),
            "argument",
            &format!("@{}", d.name),
        );
        for arg in &d.arguments {
            let site = format!("argument `{}` of directive `@{}`", arg.name, d.name);
            self.check_type_ref(&arg.value_type, Position::Input, &site);
            self.check_directive_uses(&arg.directives);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum TypeKind {
    Object,
    Interface,
    Union,
    Enum,
    Scalar,
    InputObject,
}

impl TypeKind {
    fn article_label(self) -> &'static str {
        match self {
            TypeKind::Object => "an object type",
            TypeKind::Interface => "an interface",
            TypeKind::Union => "a union",
            TypeKind::Enum => "an enum",
            TypeKind::Scalar => "a scalar",
            TypeKind::InputObject => "an input object type",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_schema;

    fn check(source: &str) -> ValidationResult {
        validate(&parse_schema(source).unwrap())
    }

    #[test]
    fn complete_schema_is_valid() {
        let r = check("type Query { office: Office }\ntype Office { id: ID! }");
        assert_eq!(r.status, ValidationStatus::Valid);
        assert!(r.missing_references.is_empty());
        assert!(r.has_query_operation);
    }

    #[test]
    fn dangling_reference_with_query_root_is_incomplete() {
        let r = check("type Query { office: Office }");
        assert_eq!(r.status, ValidationStatus::Incomplete);
        assert_eq!(
            r.missing_references.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            ["Office"]
        );
    }

    #[test]
    fn no_query_root_is_invalid() {
        let r = check("type Office { id: ID! }");
        assert_eq!(r.status, ValidationStatus::Invalid);
        assert!(!r.has_query_operation);
        assert!(r
            .diagnostics
            .iter()
            .any(|d| d.code == DiagnosticCode::NoQueryOperation));
    }

    #[test]
    fn schema_definition_designating_missing_root_is_incomplete() {
        let r = check("schema { query: Root }\ntype Other { id: ID }");
        assert_eq!(r.status, ValidationStatus::Incomplete);
        assert!(r.has_query_operation);
        assert!(r.missing_references.contains(&MissingRef::type_name("Root")));
    }

    #[test]
    fn explicit_schema_definition_suppresses_implicit_roots() {
        // A type literally named Query does not count when a schema
        // definition designates a different root.
        let r = check("schema { query: Root }\ntype Query { a: Int }\ntype Root { b: Int }");
        assert_eq!(r.status, ValidationStatus::Valid);
    }

    #[test]
    fn duplicate_type_names_are_invalid() {
        let r = check("type Query { a: Int }\ntype Office { id: ID }\ntype Office { id: ID }");
        assert_eq!(r.status, ValidationStatus::Invalid);
        assert!(r.violation_names().contains("Office"));
    }

    #[test]
    fn input_type_in_output_position_is_invalid() {
        let r = check("type Query { f: Filter }\ninput Filter { q: String }");
        assert_eq!(r.status, ValidationStatus::Invalid);
        assert!(r
            .diagnostics
            .iter()
            .any(|d| d.code == DiagnosticCode::KindMisuse));
    }

    #[test]
    fn object_type_in_input_position_is_invalid() {
        let r = check("type Query { f(x: Office): Int }\ntype Office { id: ID }");
        assert_eq!(r.status, ValidationStatus::Invalid);
    }

    #[test]
    fn missing_references_take_priority_over_hard_violations() {
        // Query root present, one dangling reference, plus a duplicate: the
        // document is incomplete (recovery may still resolve it).
        let r = check(
            "type Query { office: Office }\ntype A { x: Int }\ntype A { x: Int }",
        );
        assert_eq!(r.status, ValidationStatus::Incomplete);
        assert!(!r.violation_names().is_empty());
    }

    #[test]
    fn undefined_directive_is_a_missing_reference() {
        let r = check("type Query { a: Int @auth }");
        assert_eq!(r.status, ValidationStatus::Incomplete);
        assert!(r.missing_references.contains(&MissingRef::directive("auth")));
        // Built-ins never go missing.
        let r = check("type Query { a: Int @deprecated(reason: \"x\") }");
        assert_eq!(r.status, ValidationStatus::Valid);
    }

    #[test]
    fn union_members_and_implements_are_checked() {
        let r = check(
            "type Query { u: U }\nunion U = A | E\ntype A { x: Int }\nenum E { X }",
        );
        assert_eq!(r.status, ValidationStatus::Invalid);

        let r = check("type Query implements Missing { a: Int }");
        assert_eq!(r.status, ValidationStatus::Incomplete);
        assert!(r.missing_references.contains(&MissingRef::type_name("Missing")));
    }

    #[test]
    fn duplicate_fields_and_enum_values_are_invalid() {
        let r = check("type Query { a: Int a: Int }");
        assert_eq!(r.status, ValidationStatus::Invalid);
        let r = check("type Query { ok: Int }\nenum E { A A }");
        assert_eq!(r.status, ValidationStatus::Invalid);
    }

    #[test]
    fn extension_only_type_resolves_references_but_not_roots() {
        // A lone extension defines the name for reference resolution.
        let r = check("type Query { o: Office }\nextend type Office { id: ID }");
        assert_eq!(r.status, ValidationStatus::Valid);
        // It does not establish a query root by itself.
        let r = check("extend type Query { a: Int }");
        assert_eq!(r.status, ValidationStatus::Invalid);
        assert!(!r.has_query_operation);
    }
}
