//! Recursive-descent parser for GraphQL documents (June 2018 edition).
//!
//! The full grammar is accepted: type-system definitions, type extensions,
//! and executable definitions (operations and fragments). Executable
//! selection sets are syntax-checked but only summarized in the AST.

use crate::ast::*;
use crate::lexer::{tokenize, Token, TokenKind};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("parse error at {line}:{column}: {message}")]
    Syntax {
        message: String,
        line: u32,
        column: u32,
    },
    /// A schema document was requested but the text contains operations or
    /// fragments.
    #[error("executable definition at {line}:{column}: not a pure schema document")]
    ExecutableDefinition { line: u32, column: u32 },
}

impl ParseError {
    pub fn syntax(message: impl Into<String>, loc: Location) -> Self {
        ParseError::Syntax {
            message: message.into(),
            line: loc.line,
            column: loc.column,
        }
    }

    pub fn location(&self) -> Location {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::ExecutableDefinition { line, column } => Location::new(*line, *column),
        }
    }
}

const DIRECTIVE_LOCATIONS: [&str; 18] = [
    "QUERY",
    "MUTATION",
    "SUBSCRIPTION",
    "FIELD",
    "FRAGMENT_DEFINITION",
    "FRAGMENT_SPREAD",
    "INLINE_FRAGMENT",
    "SCHEMA",
    "SCALAR",
    "OBJECT",
    "FIELD_DEFINITION",
    "ARGUMENT_DEFINITION",
    "INTERFACE",
    "UNION",
    "ENUM",
    "ENUM_VALUE",
    "INPUT_OBJECT",
    "INPUT_FIELD_DEFINITION",
];

/// Parses a full document: type-system and executable definitions.
pub fn parse_document(source: &str) -> Result<Document, ParseError> {
    Parser::new(source)?.document()
}

/// Parses a type-system-only document.
///
/// Errors with [`ParseError::ExecutableDefinition`] if the text contains an
/// operation or fragment definition.
pub fn parse_schema(source: &str) -> Result<SchemaDocument, ParseError> {
    parse_schema_named(source, None)
}

/// [`parse_schema`] with a source name recorded on the document.
pub fn parse_schema_named(
    source: &str,
    source_name: Option<String>,
) -> Result<SchemaDocument, ParseError> {
    let doc = parse_document(source)?;
    schema_from_document(doc, source_name)
}

/// Extracts the type-system view from a parsed document.
pub fn schema_from_document(
    doc: Document,
    source_name: Option<String>,
) -> Result<SchemaDocument, ParseError> {
    let mut defs = Vec::with_capacity(doc.definitions.len());
    for d in doc.definitions {
        match d {
            DocumentDefinition::TypeSystem(def) => defs.push(def),
            DocumentDefinition::Executable(e) => {
                let loc = e.loc();
                return Err(ParseError::ExecutableDefinition {
                    line: loc.line,
                    column: loc.column,
                });
            }
        }
    }
    Ok(SchemaDocument::from_definitions(defs, source_name))
}

/// True iff the text parses and contains no executable definitions.
pub fn is_pure_schema(source: &str) -> Result<bool, ParseError> {
    Ok(parse_document(source)?.is_pure_schema())
}

/// Parses a standalone value literal, e.g. a default value reported by an
/// introspection endpoint.
pub fn parse_value_literal(source: &str) -> Result<Value, ParseError> {
    let mut p = Parser::new(source)?;
    let value = p.value(false)?;
    p.expect_eof()?;
    Ok(value)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(source: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: tokenize(source)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_kind(&self) -> &TokenKind {
        &self.peek().kind
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        ParseError::syntax(message, self.peek().loc)
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, ParseError> {
        if *self.peek_kind() == kind {
            Ok(self.bump())
        } else {
            Err(self.error_here(format!(
                "expected {}, found {}",
                kind.describe(),
                self.peek_kind().describe()
            )))
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        match self.peek_kind() {
            TokenKind::Eof => Ok(()),
            other => Err(self.error_here(format!(
                "expected end of input, found {}",
                other.describe()
            ))),
        }
    }

    fn name(&mut self, what: &str) -> Result<(String, Location), ParseError> {
        match self.peek_kind().clone() {
            TokenKind::Name(n) => {
                let loc = self.bump().loc;
                Ok((n, loc))
            }
            other => Err(self.error_here(format!(
                "expected {what}, found {}",
                other.describe()
            ))),
        }
    }

    /// Consumes a name token iff it equals `keyword`.
    fn eat_keyword(&mut self, keyword: &str) -> bool {
        if matches!(self.peek_kind(), TokenKind::Name(n) if n == keyword) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn at_keyword(&self, keyword: &str) -> bool {
        matches!(self.peek_kind(), TokenKind::Name(n) if n == keyword)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn document(&mut self) -> Result<Document, ParseError> {
        let mut definitions = Vec::new();
        if matches!(self.peek_kind(), TokenKind::Eof) {
            return Err(self.error_here("empty document (expected at least one definition)"));
        }
        while !matches!(self.peek_kind(), TokenKind::Eof) {
            definitions.push(self.definition()?);
        }
        Ok(Document { definitions })
    }

    fn definition(&mut self) -> Result<DocumentDefinition, ParseError> {
        // A description (string literal) may precede any type-system
        // definition.
        let description = self.description();
        let loc = self.peek().loc;
        match self.peek_kind().clone() {
            TokenKind::BraceOpen => {
                if description.is_some() {
                    return Err(self.error_here("a description cannot precede an operation"));
                }
                self.selection_set()?;
                Ok(DocumentDefinition::Executable(
                    ExecutableDefinition::Operation {
                        kind: OperationKind::Query,
                        name: None,
                        loc,
                    },
                ))
            }
            TokenKind::Name(word) => match word.as_str() {
                "schema" => {
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(Definition::Schema(
                        self.schema_definition(description, loc, false)?,
                    )))
                }
                "scalar" => {
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(
                        self.scalar_definition(description, loc, false)?,
                    ))
                }
                "type" => {
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(
                        self.object_definition(description, loc, false)?,
                    ))
                }
                "interface" => {
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(
                        self.interface_definition(description, loc, false)?,
                    ))
                }
                "union" => {
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(
                        self.union_definition(description, loc, false)?,
                    ))
                }
                "enum" => {
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(
                        self.enum_definition(description, loc, false)?,
                    ))
                }
                "input" => {
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(
                        self.input_object_definition(description, loc, false)?,
                    ))
                }
                "directive" => {
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(
                        self.directive_definition(description, loc)?,
                    ))
                }
                "extend" => {
                    if description.is_some() {
                        return Err(self.error_here("a description cannot precede an extension"));
                    }
                    self.bump();
                    Ok(DocumentDefinition::TypeSystem(self.extension(loc)?))
                }
                "query" | "mutation" | "subscription" => {
                    if description.is_some() {
                        return Err(self.error_here("a description cannot precede an operation"));
                    }
                    Ok(DocumentDefinition::Executable(self.operation(loc)?))
                }
                "fragment" => {
                    if description.is_some() {
                        return Err(self.error_here("a description cannot precede a fragment"));
                    }
                    self.bump();
                    Ok(DocumentDefinition::Executable(self.fragment(loc)?))
                }
                other => Err(self.error_here(format!("unexpected name `{other}`"))),
            },
            other => Err(self.error_here(format!(
                "expected a definition, found {}",
                other.describe()
            ))),
        }
    }

    fn description(&mut self) -> Option<String> {
        if let TokenKind::Str { value, .. } = self.peek_kind().clone() {
            self.bump();
            Some(value)
        } else {
            None
        }
    }

    fn extension(&mut self, loc: Location) -> Result<Definition, ParseError> {
        let (word, _) = self.name("a definition keyword after `extend`")?;
        match word.as_str() {
            "schema" => Ok(Definition::Schema(
                self.schema_definition(None, loc, true)?,
            )),
            "scalar" => self.scalar_definition(None, loc, true),
            "type" => self.object_definition(None, loc, true),
            "interface" => self.interface_definition(None, loc, true),
            "union" => self.union_definition(None, loc, true),
            "enum" => self.enum_definition(None, loc, true),
            "input" => self.input_object_definition(None, loc, true),
            other => Err(self.error_here(format!("cannot extend `{other}`"))),
        }
    }

    fn schema_definition(
        &mut self,
        description: Option<String>,
        loc: Location,
        from_extension: bool,
    ) -> Result<SchemaDefinition, ParseError> {
        let directives = self.directives()?;
        let mut roots = Vec::new();
        let has_block = *self.peek_kind() == TokenKind::BraceOpen;
        if has_block {
            self.bump();
            while !self.eat(&TokenKind::BraceClose) {
                let (word, root_loc) = self.name("`query`, `mutation`, or `subscription`")?;
                let kind = match word.as_str() {
                    "query" => OperationKind::Query,
                    "mutation" => OperationKind::Mutation,
                    "subscription" => OperationKind::Subscription,
                    other => {
                        return Err(ParseError::syntax(
                            format!("invalid root operation `{other}`"),
                            root_loc,
                        ))
                    }
                };
                self.expect(TokenKind::Colon)?;
                let (type_name, _) = self.name("a type name")?;
                roots.push(RootOperation {
                    kind,
                    type_name,
                    loc: root_loc,
                });
            }
            if roots.is_empty() {
                return Err(self.error_here("schema definition block cannot be empty"));
            }
        }
        if !has_block && (!from_extension || directives.is_empty()) {
            if from_extension {
                return Err(self.error_here("schema extension requires directives or a block"));
            }
            return Err(self.error_here("schema definition requires a `{` block"));
        }
        Ok(SchemaDefinition {
            description,
            roots,
            directives,
            loc,
            from_extension,
        })
    }

    fn scalar_definition(
        &mut self,
        description: Option<String>,
        loc: Location,
        from_extension: bool,
    ) -> Result<Definition, ParseError> {
        let (name, _) = self.name("a scalar name")?;
        let directives = self.directives()?;
        if from_extension && directives.is_empty() {
            return Err(self.error_here("scalar extension requires directives"));
        }
        Ok(Definition::Scalar(ScalarType {
            name,
            description,
            directives,
            loc,
            from_extension,
        }))
    }

    fn object_definition(
        &mut self,
        description: Option<String>,
        loc: Location,
        from_extension: bool,
    ) -> Result<Definition, ParseError> {
        let (name, _) = self.name("a type name")?;
        let implements = self.implements_interfaces()?;
        let directives = self.directives()?;
        let fields = self.fields_block_opt()?;
        if from_extension && implements.is_empty() && directives.is_empty() && fields.is_empty() {
            return Err(self.error_here("type extension requires content"));
        }
        Ok(Definition::Object(ObjectType {
            name,
            description,
            implements,
            fields,
            directives,
            loc,
            from_extension,
        }))
    }

    fn interface_definition(
        &mut self,
        description: Option<String>,
        loc: Location,
        from_extension: bool,
    ) -> Result<Definition, ParseError> {
        let (name, _) = self.name("an interface name")?;
        let directives = self.directives()?;
        let fields = self.fields_block_opt()?;
        if from_extension && directives.is_empty() && fields.is_empty() {
            return Err(self.error_here("interface extension requires content"));
        }
        Ok(Definition::Interface(InterfaceType {
            name,
            description,
            fields,
            directives,
            loc,
            from_extension,
        }))
    }

    fn union_definition(
        &mut self,
        description: Option<String>,
        loc: Location,
        from_extension: bool,
    ) -> Result<Definition, ParseError> {
        let (name, _) = self.name("a union name")?;
        let directives = self.directives()?;
        let mut members = Vec::new();
        if self.eat(&TokenKind::Equals) {
            self.eat(&TokenKind::Pipe);
            loop {
                let (member, _) = self.name("a union member type")?;
                members.push(member);
                if !self.eat(&TokenKind::Pipe) {
                    break;
                }
            }
        }
        if from_extension && directives.is_empty() && members.is_empty() {
            return Err(self.error_here("union extension requires content"));
        }
        Ok(Definition::Union(UnionType {
            name,
            description,
            members,
            directives,
            loc,
            from_extension,
        }))
    }

    fn enum_definition(
        &mut self,
        description: Option<String>,
        loc: Location,
        from_extension: bool,
    ) -> Result<Definition, ParseError> {
        let (name, _) = self.name("an enum name")?;
        let directives = self.directives()?;
        let mut values = Vec::new();
        if self.eat(&TokenKind::BraceOpen) {
            while !self.eat(&TokenKind::BraceClose) {
                let value_description = self.description();
                let (value_name, value_loc) = self.name("an enum value")?;
                if matches!(value_name.as_str(), "true" | "false" | "null") {
                    return Err(ParseError::syntax(
                        format!("`{value_name}` cannot be an enum value"),
                        value_loc,
                    ));
                }
                let value_directives = self.directives()?;
                values.push(EnumValueDefinition {
                    name: value_name,
                    description: value_description,
                    directives: value_directives,
                    loc: value_loc,
                });
            }
            if values.is_empty() {
                return Err(self.error_here("enum value block cannot be empty"));
            }
        }
        if from_extension && directives.is_empty() && values.is_empty() {
            return Err(self.error_here("enum extension requires content"));
        }
        Ok(Definition::Enum(EnumType {
            name,
            description,
            values,
            directives,
            loc,
            from_extension,
        }))
    }

    fn input_object_definition(
        &mut self,
        description: Option<String>,
        loc: Location,
        from_extension: bool,
    ) -> Result<Definition, ParseError> {
        let (name, _) = self.name("an input object name")?;
        let directives = self.directives()?;
        let mut fields = Vec::new();
        if self.eat(&TokenKind::BraceOpen) {
            while !self.eat(&TokenKind::BraceClose) {
                fields.push(self.input_value_definition()?);
            }
            if fields.is_empty() {
                return Err(self.error_here("input field block cannot be empty"));
            }
        }
        if from_extension && directives.is_empty() && fields.is_empty() {
            return Err(self.error_here("input object extension requires content"));
        }
        Ok(Definition::InputObject(InputObjectType {
            name,
            description,
            fields,
            directives,
            loc,
            from_extension,
        }))
    }

    fn directive_definition(
        &mut self,
        description: Option<String>,
        loc: Location,
    ) -> Result<Definition, ParseError> {
        self.expect(TokenKind::At)?;
        let (name, _) = self.name("a directive name")?;
        let arguments = self.arguments_definition_opt()?;
        if !self.eat_keyword("on") {
            return Err(self.error_here("expected `on` and directive locations"));
        }
        self.eat(&TokenKind::Pipe);
        let mut locations = Vec::new();
        loop {
            let (location, location_loc) = self.name("a directive location")?;
            if !DIRECTIVE_LOCATIONS.contains(&location.as_str()) {
                return Err(ParseError::syntax(
                    format!("unknown directive location `{location}`"),
                    location_loc,
                ));
            }
            locations.push(location);
            if !self.eat(&TokenKind::Pipe) {
                break;
            }
        }
        Ok(Definition::Directive(DirectiveDefinition {
            name,
            description,
            arguments,
            locations,
            loc,
        }))
    }

    fn implements_interfaces(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        if self.eat_keyword("implements") {
            self.eat(&TokenKind::Amp);
            loop {
                let (name, _) = self.name("an interface name")?;
                names.push(name);
                if !self.eat(&TokenKind::Amp) {
                    break;
                }
            }
        }
        Ok(names)
    }

    fn fields_block_opt(&mut self) -> Result<Vec<FieldDefinition>, ParseError> {
        let mut fields = Vec::new();
        if self.eat(&TokenKind::BraceOpen) {
            while !self.eat(&TokenKind::BraceClose) {
                fields.push(self.field_definition()?);
            }
            if fields.is_empty() {
                return Err(self.error_here("field block cannot be empty"));
            }
        }
        Ok(fields)
    }

    fn field_definition(&mut self) -> Result<FieldDefinition, ParseError> {
        let description = self.description();
        let (name, loc) = self.name("a field name")?;
        let arguments = self.arguments_definition_opt()?;
        self.expect(TokenKind::Colon)?;
        let return_type = self.type_reference()?;
        let directives = self.directives()?;
        Ok(FieldDefinition {
            name,
            description,
            arguments,
            return_type,
            directives,
            loc,
        })
    }

    fn arguments_definition_opt(&mut self) -> Result<Vec<InputValueDefinition>, ParseError> {
        let mut arguments = Vec::new();
        if self.eat(&TokenKind::ParenOpen) {
            while !self.eat(&TokenKind::ParenClose) {
                arguments.push(self.input_value_definition()?);
            }
            if arguments.is_empty() {
                return Err(self.error_here("argument list cannot be empty"));
            }
        }
        Ok(arguments)
    }

    fn input_value_definition(&mut self) -> Result<InputValueDefinition, ParseError> {
        let description = self.description();
        let (name, loc) = self.name("an argument or input field name")?;
        self.expect(TokenKind::Colon)?;
        let value_type = self.type_reference()?;
        let default = if self.eat(&TokenKind::Equals) {
            Some(self.value(false)?)
        } else {
            None
        };
        let directives = self.directives()?;
        Ok(InputValueDefinition {
            name,
            description,
            value_type,
            default,
            directives,
            loc,
        })
    }

    fn type_reference(&mut self) -> Result<TypeReference, ParseError> {
        // Parse the nested form, then flatten to outermost-first wrappers.
        fn inner(p: &mut Parser, wrappers: &mut Vec<Wrapper>) -> Result<(String, Location), ParseError> {
            if p.eat(&TokenKind::BracketOpen) {
                let mut nested = Vec::new();
                let name = inner(p, &mut nested)?;
                p.expect(TokenKind::BracketClose)?;
                let non_null = p.eat(&TokenKind::Bang);
                if non_null {
                    wrappers.push(Wrapper::NonNull);
                }
                wrappers.push(Wrapper::List);
                wrappers.extend(nested);
                Ok(name)
            } else {
                let (name, loc) = p.name("a type name")?;
                if p.eat(&TokenKind::Bang) {
                    wrappers.push(Wrapper::NonNull);
                }
                Ok((name, loc))
            }
        }
        let mut wrappers = Vec::new();
        // Outermost non-null is handled inside `inner` for each layer; the
        // recursion already orders wrappers outermost-first.
        let (name, loc) = inner(self, &mut wrappers)?;
        Ok(TypeReference {
            name,
            wrappers,
            loc,
        })
    }

    fn directives(&mut self) -> Result<Vec<AppliedDirective>, ParseError> {
        let mut out = Vec::new();
        while *self.peek_kind() == TokenKind::At {
            let loc = self.bump().loc;
            let (name, _) = self.name("a directive name")?;
            let arguments = self.value_arguments_opt()?;
            out.push(AppliedDirective {
                name,
                arguments,
                loc,
            });
        }
        Ok(out)
    }

    fn value_arguments_opt(&mut self) -> Result<Vec<Argument>, ParseError> {
        let mut out = Vec::new();
        if self.eat(&TokenKind::ParenOpen) {
            while !self.eat(&TokenKind::ParenClose) {
                let (name, loc) = self.name("an argument name")?;
                self.expect(TokenKind::Colon)?;
                let value = self.value(true)?;
                out.push(Argument { name, value, loc });
            }
            if out.is_empty() {
                return Err(self.error_here("argument list cannot be empty"));
            }
        }
        Ok(out)
    }

    /// `allow_variables` is true in executable positions and false in
    /// type-system default values.
    fn value(&mut self, allow_variables: bool) -> Result<Value, ParseError> {
        match self.peek_kind().clone() {
            TokenKind::Dollar => {
                let loc = self.peek().loc;
                if !allow_variables {
                    return Err(ParseError::syntax(
                        "variables are not allowed in this position",
                        loc,
                    ));
                }
                self.bump();
                let (name, _) = self.name("a variable name")?;
                Ok(Value::Variable(name))
            }
            TokenKind::Int(v) => {
                self.bump();
                Ok(Value::Int(v))
            }
            TokenKind::Float(v) => {
                self.bump();
                Ok(Value::Float(v))
            }
            TokenKind::Str { value, block } => {
                self.bump();
                Ok(Value::String { value, block })
            }
            TokenKind::Name(n) => {
                self.bump();
                match n.as_str() {
                    "true" => Ok(Value::Boolean(true)),
                    "false" => Ok(Value::Boolean(false)),
                    "null" => Ok(Value::Null),
                    _ => Ok(Value::Enum(n)),
                }
            }
            TokenKind::BracketOpen => {
                self.bump();
                let mut items = Vec::new();
                while !self.eat(&TokenKind::BracketClose) {
                    items.push(self.value(allow_variables)?);
                }
                Ok(Value::List(items))
            }
            TokenKind::BraceOpen => {
                self.bump();
                let mut fields = Vec::new();
                while !self.eat(&TokenKind::BraceClose) {
                    let (name, _) = self.name("an object field name")?;
                    self.expect(TokenKind::Colon)?;
                    fields.push((name, self.value(allow_variables)?));
                }
                Ok(Value::Object(fields))
            }
            other => Err(self.error_here(format!("expected a value, found {}", other.describe()))),
        }
    }

    // Executable grammar: syntax is validated, selection detail discarded.

    fn operation(&mut self, loc: Location) -> Result<ExecutableDefinition, ParseError> {
        let (word, _) = self.name("an operation keyword")?;
        let kind = match word.as_str() {
            "query" => OperationKind::Query,
            "mutation" => OperationKind::Mutation,
            "subscription" => OperationKind::Subscription,
            _ => unreachable!("caller checked the keyword"),
        };
        let name = match self.peek_kind().clone() {
            TokenKind::Name(n) => {
                self.bump();
                Some(n)
            }
            _ => None,
        };
        if self.eat(&TokenKind::ParenOpen) {
            while !self.eat(&TokenKind::ParenClose) {
                self.expect(TokenKind::Dollar)?;
                self.name("a variable name")?;
                self.expect(TokenKind::Colon)?;
                self.type_reference()?;
                if self.eat(&TokenKind::Equals) {
                    self.value(false)?;
                }
            }
        }
        self.directives()?;
        self.selection_set()?;
        Ok(ExecutableDefinition::Operation { kind, name, loc })
    }

    fn fragment(&mut self, loc: Location) -> Result<ExecutableDefinition, ParseError> {
        let (name, name_loc) = self.name("a fragment name")?;
        if name == "on" {
            return Err(ParseError::syntax(
                "fragment name cannot be `on`",
                name_loc,
            ));
        }
        if !self.eat_keyword("on") {
            return Err(self.error_here("expected `on` and a type condition"));
        }
        self.name("a type condition")?;
        self.directives()?;
        self.selection_set()?;
        Ok(ExecutableDefinition::Fragment { name, loc })
    }

    fn selection_set(&mut self) -> Result<(), ParseError> {
        self.expect(TokenKind::BraceOpen)?;
        let mut any = false;
        while !self.eat(&TokenKind::BraceClose) {
            any = true;
            self.selection()?;
        }
        if !any {
            return Err(self.error_here("selection set cannot be empty"));
        }
        Ok(())
    }

    fn selection(&mut self) -> Result<(), ParseError> {
        if self.eat(&TokenKind::Spread) {
            if self.at_keyword("on") {
                self.bump();
                self.name("a type condition")?;
                self.directives()?;
                self.selection_set()?;
            } else if matches!(self.peek_kind(), TokenKind::Name(_)) {
                self.name("a fragment name")?;
                self.directives()?;
            } else if *self.peek_kind() == TokenKind::At || *self.peek_kind() == TokenKind::BraceOpen {
                // Inline fragment without a type condition.
                self.directives()?;
                self.selection_set()?;
            } else {
                return Err(self.error_here("expected a fragment spread or inline fragment"));
            }
            return Ok(());
        }
        // Field with optional alias.
        let (_, _) = self.name("a field name")?;
        if self.eat(&TokenKind::Colon) {
            self.name("a field name after alias")?;
        }
        if self.eat(&TokenKind::ParenOpen) {
            while !self.eat(&TokenKind::ParenClose) {
                self.name("an argument name")?;
                self.expect(TokenKind::Colon)?;
                self.value(true)?;
            }
        }
        self.directives()?;
        if *self.peek_kind() == TokenKind::BraceOpen {
            self.selection_set()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_object_with_wrappers_and_arguments() {
        let doc = parse_schema(
            "type Query { offices(limit: Int!, after: ID): [Office!]! }\ntype Office { id: ID! }",
        )
        .unwrap();
        assert_eq!(doc.definitions.len(), 2);
        let query = doc.object_type("Query").unwrap();
        let field = &query.fields[0];
        assert_eq!(field.name, "offices");
        assert_eq!(field.arguments.len(), 2);
        assert_eq!(field.return_type.to_string(), "[Office!]!");
        assert_eq!(field.return_type.list_depth(), 1);
    }

    #[test]
    fn parse_error_reports_line_and_column() {
        let err = parse_schema("type {").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 1);
                assert_eq!(column, 6);
            }
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn executable_definitions_are_detected() {
        assert!(is_pure_schema("type Query { a: Int }").unwrap());
        assert!(!is_pure_schema("query { a }").unwrap());
        assert!(!is_pure_schema("{ a }").unwrap());
        assert!(!is_pure_schema("fragment F on T { a }").unwrap());
        assert!(matches!(
            parse_schema("type Query { a: Int } query Q { a }"),
            Err(ParseError::ExecutableDefinition { .. })
        ));
    }

    #[test]
    fn descriptions_attach_to_definitions_and_fields() {
        let doc = parse_schema(
            "\"\"\"A company.\"\"\"\ntype Company {\n  \"Display name.\"\n  name: String\n}",
        )
        .unwrap();
        let company = doc.object_type("Company").unwrap();
        assert_eq!(company.description.as_deref(), Some("A company."));
        assert_eq!(
            company.fields[0].description.as_deref(),
            Some("Display name.")
        );
    }

    #[test]
    fn schema_definition_and_directives() {
        let doc = parse_schema(
            "schema { query: Q mutation: M }\ntype Q { a: Int @deprecated(reason: \"old\") }\ntype M { b: Int }",
        )
        .unwrap();
        let schema = doc.schema_definition().unwrap();
        assert_eq!(schema.root(OperationKind::Query), Some("Q"));
        assert_eq!(schema.root(OperationKind::Mutation), Some("M"));
        let q = doc.object_type("Q").unwrap();
        assert_eq!(q.fields[0].directives[0].name, "deprecated");
    }

    #[test]
    fn unions_enums_inputs_interfaces_directives() {
        let doc = parse_schema(
            r#"
            interface Node { id: ID! }
            type A implements Node { id: ID! }
            type B implements Node { id: ID! }
            union AB = | A | B
            enum Color { RED GREEN }
            input Filter { color: Color = RED }
            directive @auth(role: String) on FIELD_DEFINITION | OBJECT
            type Query { ab: AB }
            "#,
        )
        .unwrap();
        assert_eq!(doc.definitions.len(), 8);
        match doc.type_definition("AB").unwrap() {
            Definition::Union(u) => assert_eq!(u.members, ["A", "B"]),
            other => panic!("unexpected: {other:?}"),
        }
        let directive = doc.directive_definition("auth").unwrap();
        assert_eq!(directive.locations, ["FIELD_DEFINITION", "OBJECT"]);
    }

    #[test]
    fn extensions_parse_and_merge() {
        let doc = parse_schema(
            "type Query { a: Int }\nextend type Query { b: Int }\nextend type Query @deprecated",
        )
        .unwrap();
        assert_eq!(doc.definitions.len(), 3);
        assert!(doc.definitions[1].from_extension());
        let merged = doc.object_type("Query").unwrap();
        let names: Vec<_> = merged.fields.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["a", "b"]);
        assert_eq!(merged.directives.len(), 1);
    }

    #[test]
    fn empty_blocks_are_rejected() {
        assert!(parse_schema("type Query { }").is_err());
        assert!(parse_schema("enum E { }").is_err());
        assert!(parse_schema("type Query").is_ok());
    }

    #[test]
    fn empty_document_is_a_parse_error() {
        assert!(parse_document("").is_err());
        assert!(parse_document("  # only a comment\n").is_err());
    }

    #[test]
    fn value_literals_round_trip_structures() {
        let v = parse_value_literal(r#"{ a: [1, 2.5, "x"], b: RED, c: null, d: true }"#).unwrap();
        match v {
            Value::Object(fields) => {
                assert_eq!(fields.len(), 4);
                assert_eq!(fields[0].0, "a");
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn unknown_directive_location_is_rejected() {
        assert!(parse_schema("directive @x on NOWHERE").is_err());
    }
}
