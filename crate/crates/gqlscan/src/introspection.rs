//! Schema capture over the introspection protocol.
//!
//! [`introspect`] fetches a remote endpoint's schema and decodes it back
//! into a [`SchemaDocument`]. The decoded document always carries an
//! explicit schema definition (the protocol names its roots explicitly,
//! so the decoder preserves that). Applied directives other than
//! `@deprecated` are invisible to the protocol and do not survive the
//! round trip; `@deprecated` is reconstructed from the deprecation flags,
//! with the protocol's default reason decoding back to the bare form.
//!
//! [`SchemaServer`] is a loopback fixture endpoint for exercising the
//! client without a real deployment.

use crate::ast::*;
use crate::parser::parse_value_literal;
use crate::printer::print_value;
use serde_json::{json, Value as Json};
use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Duration;
use thiserror::Error;

/// Reason a server reports for `@deprecated` uses that gave none.
pub const DEFAULT_DEPRECATION_REASON: &str = "No longer supported";

/// The full schema-introspection query, deprecated members included.
pub const INTROSPECTION_QUERY: &str = r#"query IntrospectionQuery {
  __schema {
    queryType { name }
    mutationType { name }
    subscriptionType { name }
    types { ...FullType }
    directives {
      name
      description
      locations
      args { ...InputValue }
    }
  }
}

fragment FullType on __Type {
  kind
  name
  description
  fields(includeDeprecated: true) {
    name
    description
    args { ...InputValue }
    type { ...TypeRef }
    isDeprecated
    deprecationReason
  }
  inputFields { ...InputValue }
  interfaces { ...TypeRef }
  enumValues(includeDeprecated: true) {
    name
    description
    isDeprecated
    deprecationReason
  }
  possibleTypes { ...TypeRef }
}

fragment InputValue on __InputValue {
  name
  description
  type { ...TypeRef }
  defaultValue
}

fragment TypeRef on __Type {
  kind
  name
  ofType {
    kind
    name
    ofType {
      kind
      name
      ofType {
        kind
        name
        ofType {
          kind
          name
          ofType {
            kind
            name
            ofType {
              kind
              name
              ofType {
                kind
                name
              }
            }
          }
        }
      }
    }
  }
}
"#;

#[derive(Debug, Error)]
pub enum IntrospectError {
    #[error("network error: {0}")]
    Network(String),
    #[error("endpoint returned HTTP {status}")]
    Http { status: u16 },
    #[error("endpoint rejected introspection: {0}")]
    IntrospectionDisabled(String),
    #[error("malformed introspection response: {0}")]
    MalformedResponse(String),
}

fn malformed(detail: impl Into<String>) -> IntrospectError {
    IntrospectError::MalformedResponse(detail.into())
}

/// Fetches and decodes the schema behind a GraphQL endpoint.
///
/// Sends [`INTROSPECTION_QUERY`] as a POST with any extra `headers`
/// applied (name, value). The decoded document's source name is the
/// endpoint URL.
pub fn introspect(
    endpoint: &str,
    headers: &[(String, String)],
) -> Result<SchemaDocument, IntrospectError> {
    let client = reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs(30))
        .build()
        .map_err(|e| IntrospectError::Network(e.to_string()))?;
    let mut request = client
        .post(endpoint)
        .json(&json!({ "query": INTROSPECTION_QUERY }));
    for (name, value) in headers {
        request = request.header(name.as_str(), value.as_str());
    }
    let response = request
        .send()
        .map_err(|e| IntrospectError::Network(e.to_string()))?;
    let status = response.status();
    if !status.is_success() {
        return Err(IntrospectError::Http {
            status: status.as_u16(),
        });
    }
    let payload: Json = response
        .json()
        .map_err(|_| malformed("response body is not JSON"))?;
    let mut doc = document_from_introspection(&payload)?;
    doc.source_name = Some(endpoint.to_string());
    Ok(doc)
}

/// Decodes an introspection response (`{"data": {"__schema": ...}}`) into
/// a schema document.
///
/// Built-in scalars, protocol meta types (`__`-prefixed), and built-in
/// directives are part of every response and are not turned into
/// definitions. A non-empty `errors` array is treated as the endpoint
/// refusing introspection.
pub fn document_from_introspection(payload: &Json) -> Result<SchemaDocument, IntrospectError> {
    if let Some(errors) = payload.get("errors").and_then(Json::as_array) {
        if !errors.is_empty() {
            let message = errors[0]
                .get("message")
                .and_then(Json::as_str)
                .unwrap_or("unnamed error")
                .to_string();
            return Err(IntrospectError::IntrospectionDisabled(message));
        }
    }
    let schema = payload
        .get("data")
        .and_then(|d| d.get("__schema"))
        .filter(|s| s.is_object())
        .ok_or_else(|| malformed("missing data.__schema"))?;

    let mut roots = Vec::new();
    for (kind, key) in [
        (OperationKind::Query, "queryType"),
        (OperationKind::Mutation, "mutationType"),
        (OperationKind::Subscription, "subscriptionType"),
    ] {
        if let Some(name) = schema
            .get(key)
            .and_then(|t| t.get("name"))
            .and_then(Json::as_str)
        {
            roots.push(RootOperation {
                kind,
                type_name: name.to_string(),
                loc: Location::default(),
            });
        }
    }
    let mut definitions = vec![Definition::Schema(SchemaDefinition {
        description: None,
        roots,
        directives: Vec::new(),
        loc: Location::default(),
        from_extension: false,
    })];

    let types = schema
        .get("types")
        .and_then(Json::as_array)
        .ok_or_else(|| malformed("missing types array"))?;
    for entry in types {
        let name = required_str(entry, "name")?;
        if name.starts_with("__") || is_builtin_scalar(name) {
            continue;
        }
        definitions.push(decode_type(entry, name)?);
    }

    if let Some(directives) = schema.get("directives").and_then(Json::as_array) {
        for entry in directives {
            let name = required_str(entry, "name")?;
            if is_builtin_directive(name) {
                continue;
            }
            definitions.push(Definition::Directive(DirectiveDefinition {
                name: name.to_string(),
                description: optional_str(entry, "description"),
                arguments: decode_input_values(entry.get("args"))?,
                locations: entry
                    .get("locations")
                    .and_then(Json::as_array)
                    .map(|ls| {
                        ls.iter()
                            .filter_map(Json::as_str)
                            .map(str::to_string)
                            .collect()
                    })
                    .unwrap_or_default(),
                loc: Location::default(),
            }));
        }
    }
    Ok(SchemaDocument::from_definitions(definitions, None))
}

fn required_str<'a>(entry: &'a Json, key: &str) -> Result<&'a str, IntrospectError> {
    entry
        .get(key)
        .and_then(Json::as_str)
        .ok_or_else(|| malformed(format!("entry without {key}")))
}

fn optional_str(entry: &Json, key: &str) -> Option<String> {
    entry.get(key).and_then(Json::as_str).map(str::to_string)
}

fn decode_type(entry: &Json, name: &str) -> Result<Definition, IntrospectError> {
    let kind = required_str(entry, "kind")?;
    let name = name.to_string();
    let description = optional_str(entry, "description");
    let loc = Location::default();
    let def = match kind {
        "SCALAR" => Definition::Scalar(ScalarType {
            name,
            description,
            directives: Vec::new(),
            loc,
            from_extension: false,
        }),
        "OBJECT" => Definition::Object(ObjectType {
            name,
            description,
            implements: decode_names(entry.get("interfaces"))?,
            fields: decode_fields(entry.get("fields"))?,
            directives: Vec::new(),
            loc,
            from_extension: false,
        }),
        "INTERFACE" => Definition::Interface(InterfaceType {
            name,
            description,
            fields: decode_fields(entry.get("fields"))?,
            directives: Vec::new(),
            loc,
            from_extension: false,
        }),
        "UNION" => Definition::Union(UnionType {
            name,
            description,
            members: decode_names(entry.get("possibleTypes"))?,
            directives: Vec::new(),
            loc,
            from_extension: false,
        }),
        "ENUM" => Definition::Enum(EnumType {
            name,
            description,
            values: decode_enum_values(entry.get("enumValues"))?,
            directives: Vec::new(),
            loc,
            from_extension: false,
        }),
        "INPUT_OBJECT" => Definition::InputObject(InputObjectType {
            name,
            description,
            fields: decode_input_values(entry.get("inputFields"))?,
            directives: Vec::new(),
            loc,
            from_extension: false,
        }),
        other => return Err(malformed(format!("unknown type kind {other}"))),
    };
    Ok(def)
}

fn decode_names(entries: Option<&Json>) -> Result<Vec<String>, IntrospectError> {
    let Some(array) = entries.and_then(Json::as_array) else {
        return Ok(Vec::new());
    };
    array
        .iter()
        .map(|e| required_str(e, "name").map(str::to_string))
        .collect()
}

fn decode_fields(entries: Option<&Json>) -> Result<Vec<FieldDefinition>, IntrospectError> {
    let Some(array) = entries.and_then(Json::as_array) else {
        return Ok(Vec::new());
    };
    array
        .iter()
        .map(|entry| {
            Ok(FieldDefinition {
                name: required_str(entry, "name")?.to_string(),
                description: optional_str(entry, "description"),
                arguments: decode_input_values(entry.get("args"))?,
                return_type: decode_type_reference(
                    entry.get("type").ok_or_else(|| malformed("field without type"))?,
                )?,
                directives: decode_deprecation(entry),
                loc: Location::default(),
            })
        })
        .collect()
}

fn decode_enum_values(
    entries: Option<&Json>,
) -> Result<Vec<EnumValueDefinition>, IntrospectError> {
    let Some(array) = entries.and_then(Json::as_array) else {
        return Ok(Vec::new());
    };
    array
        .iter()
        .map(|entry| {
            Ok(EnumValueDefinition {
                name: required_str(entry, "name")?.to_string(),
                description: optional_str(entry, "description"),
                directives: decode_deprecation(entry),
                loc: Location::default(),
            })
        })
        .collect()
}

fn decode_input_values(
    entries: Option<&Json>,
) -> Result<Vec<InputValueDefinition>, IntrospectError> {
    let Some(array) = entries.and_then(Json::as_array) else {
        return Ok(Vec::new());
    };
    array
        .iter()
        .map(|entry| {
            let default = match entry.get("defaultValue").and_then(Json::as_str) {
                None => None,
                Some(literal) => Some(parse_value_literal(literal).map_err(|e| {
                    malformed(format!("unparseable default value {literal:?}: {e}"))
                })?),
            };
            Ok(InputValueDefinition {
                name: required_str(entry, "name")?.to_string(),
                description: optional_str(entry, "description"),
                value_type: decode_type_reference(
                    entry.get("type").ok_or_else(|| malformed("input value without type"))?,
                )?,
                default,
                directives: Vec::new(),
                loc: Location::default(),
            })
        })
        .collect()
}

/// Wrapper nodes arrive outermost first, matching [`TypeReference`]'s
/// wrapper order, so the walk pushes as it descends.
fn decode_type_reference(node: &Json) -> Result<TypeReference, IntrospectError> {
    let mut wrappers = Vec::new();
    let mut node = node;
    loop {
        match required_str(node, "kind")? {
            "NON_NULL" => wrappers.push(Wrapper::NonNull),
            "LIST" => wrappers.push(Wrapper::List),
            _ => {
                return Ok(TypeReference {
                    name: required_str(node, "name")?.to_string(),
                    wrappers,
                    loc: Location::default(),
                });
            }
        }
        node = node
            .get("ofType")
            .filter(|t| t.is_object())
            .ok_or_else(|| malformed("wrapper type without ofType"))?;
    }
}

fn decode_deprecation(entry: &Json) -> Vec<AppliedDirective> {
    if entry.get("isDeprecated").and_then(Json::as_bool) != Some(true) {
        return Vec::new();
    }
    let reason = entry.get("deprecationReason").and_then(Json::as_str);
    let arguments = match reason {
        Some(r) if r != DEFAULT_DEPRECATION_REASON => vec![Argument {
            name: "reason".to_string(),
            value: Value::String {
                value: r.to_string(),
                block: false,
            },
            loc: Location::default(),
        }],
        _ => Vec::new(),
    };
    vec![AppliedDirective {
        name: "deprecated".to_string(),
        arguments,
        loc: Location::default(),
    }]
}

/// Renders the introspection response a conforming endpoint would give
/// for `doc`: `{"data": {"__schema": ...}}` with referenced built-in
/// scalars, protocol meta types, and built-in directives included.
pub fn introspection_response(doc: &SchemaDocument) -> Json {
    let mut types = Vec::new();
    for def in doc.effective_definitions() {
        match def {
            Definition::Schema(_) | Definition::Directive(_) => {}
            other => types.push(encode_type(other, doc)),
        }
    }
    for name in referenced_builtin_scalars(doc) {
        types.push(json!({
            "kind": "SCALAR", "name": name, "description": null,
            "fields": null, "inputFields": null, "interfaces": null,
            "enumValues": null, "possibleTypes": null,
        }));
    }
    for (kind, name) in META_TYPES {
        types.push(json!({
            "kind": kind, "name": name, "description": null,
            "fields": [], "inputFields": null, "interfaces": [],
            "enumValues": [], "possibleTypes": null,
        }));
    }

    let root = |kind: OperationKind| -> Json {
        match doc.root_type_name(kind) {
            Some(name) => json!({ "name": name }),
            None => Json::Null,
        }
    };

    let mut directives = builtin_directive_entries();
    for def in doc.effective_definitions() {
        if let Definition::Directive(d) = def {
            directives.push(json!({
                "name": d.name,
                "description": d.description,
                "locations": d.locations,
                "args": d.arguments.iter().map(|a| encode_input_value(a, doc)).collect::<Vec<_>>(),
            }));
        }
    }

    json!({
        "data": {
            "__schema": {
                "queryType": root(OperationKind::Query),
                "mutationType": root(OperationKind::Mutation),
                "subscriptionType": root(OperationKind::Subscription),
                "types": types,
                "directives": directives,
            }
        }
    })
}

const META_TYPES: [(&str, &str); 8] = [
    ("OBJECT", "__Schema"),
    ("OBJECT", "__Type"),
    ("ENUM", "__TypeKind"),
    ("OBJECT", "__Field"),
    ("OBJECT", "__InputValue"),
    ("OBJECT", "__EnumValue"),
    ("OBJECT", "__Directive"),
    ("ENUM", "__DirectiveLocation"),
];

fn builtin_directive_entries() -> Vec<Json> {
    let if_arg = json!({
        "name": "if", "description": null,
        "type": {"kind": "NON_NULL", "name": null, "ofType": {"kind": "SCALAR", "name": "Boolean", "ofType": null}},
        "defaultValue": null,
    });
    vec![
        json!({
            "name": "skip", "description": null,
            "locations": ["FIELD", "FRAGMENT_SPREAD", "INLINE_FRAGMENT"],
            "args": [if_arg.clone()],
        }),
        json!({
            "name": "include", "description": null,
            "locations": ["FIELD", "FRAGMENT_SPREAD", "INLINE_FRAGMENT"],
            "args": [if_arg],
        }),
        json!({
            "name": "deprecated", "description": null,
            "locations": ["FIELD_DEFINITION", "ENUM_VALUE"],
            "args": [{
                "name": "reason", "description": null,
                "type": {"kind": "SCALAR", "name": "String", "ofType": null},
                "defaultValue": print_value(&Value::String {
                    value: DEFAULT_DEPRECATION_REASON.to_string(),
                    block: false,
                }),
            }],
        }),
    ]
}

fn referenced_builtin_scalars(doc: &SchemaDocument) -> BTreeSet<&'static str> {
    let mut used = BTreeSet::new();
    let mut note = |r: &TypeReference| {
        if let Some(known) = BUILTIN_SCALARS.iter().find(|s| **s == r.name) {
            used.insert(*known);
        }
    };
    for def in doc.effective_definitions() {
        match def {
            Definition::Object(d) => {
                for f in &d.fields {
                    note(&f.return_type);
                    f.arguments.iter().for_each(|a| note(&a.value_type));
                }
            }
            Definition::Interface(d) => {
                for f in &d.fields {
                    note(&f.return_type);
                    f.arguments.iter().for_each(|a| note(&a.value_type));
                }
            }
            Definition::InputObject(d) => d.fields.iter().for_each(|f| note(&f.value_type)),
            Definition::Directive(d) => d.arguments.iter().for_each(|a| note(&a.value_type)),
            _ => {}
        }
    }
    used
}

fn encode_type(def: &Definition, doc: &SchemaDocument) -> Json {
    let null: Json = Json::Null;
    match def {
        Definition::Scalar(d) => json!({
            "kind": "SCALAR", "name": d.name, "description": d.description,
            "fields": null, "inputFields": null, "interfaces": null,
            "enumValues": null, "possibleTypes": null,
        }),
        Definition::Object(d) => json!({
            "kind": "OBJECT", "name": d.name, "description": d.description,
            "fields": d.fields.iter().map(|f| encode_field(f, doc)).collect::<Vec<_>>(),
            "inputFields": null,
            "interfaces": d.implements.iter()
                .map(|i| json!({"kind": "INTERFACE", "name": i, "ofType": null}))
                .collect::<Vec<_>>(),
            "enumValues": null, "possibleTypes": null,
        }),
        Definition::Interface(d) => json!({
            "kind": "INTERFACE", "name": d.name, "description": d.description,
            "fields": d.fields.iter().map(|f| encode_field(f, doc)).collect::<Vec<_>>(),
            "inputFields": null, "interfaces": null, "enumValues": null,
            "possibleTypes": implementer_refs(&d.name, doc),
        }),
        Definition::Union(d) => json!({
            "kind": "UNION", "name": d.name, "description": d.description,
            "fields": null, "inputFields": null, "interfaces": null, "enumValues": null,
            "possibleTypes": d.members.iter()
                .map(|m| json!({"kind": "OBJECT", "name": m, "ofType": null}))
                .collect::<Vec<_>>(),
        }),
        Definition::Enum(d) => json!({
            "kind": "ENUM", "name": d.name, "description": d.description,
            "fields": null, "inputFields": null, "interfaces": null,
            "enumValues": d.values.iter().map(|v| {
                let (is_deprecated, reason) = deprecation_of(&v.directives);
                json!({
                    "name": v.name, "description": v.description,
                    "isDeprecated": is_deprecated, "deprecationReason": reason,
                })
            }).collect::<Vec<_>>(),
            "possibleTypes": null,
        }),
        Definition::InputObject(d) => json!({
            "kind": "INPUT_OBJECT", "name": d.name, "description": d.description,
            "fields": null,
            "inputFields": d.fields.iter().map(|f| encode_input_value(f, doc)).collect::<Vec<_>>(),
            "interfaces": null, "enumValues": null, "possibleTypes": null,
        }),
        Definition::Schema(_) | Definition::Directive(_) => null,
    }
}

fn implementer_refs(interface: &str, doc: &SchemaDocument) -> Json {
    let refs: Vec<Json> = doc
        .effective_definitions()
        .iter()
        .filter_map(|d| match d {
            Definition::Object(o) if o.implements.iter().any(|i| i == interface) => {
                Some(json!({"kind": "OBJECT", "name": o.name, "ofType": null}))
            }
            _ => None,
        })
        .collect();
    Json::Array(refs)
}

fn encode_field(field: &FieldDefinition, doc: &SchemaDocument) -> Json {
    let (is_deprecated, reason) = deprecation_of(&field.directives);
    json!({
        "name": field.name,
        "description": field.description,
        "args": field.arguments.iter().map(|a| encode_input_value(a, doc)).collect::<Vec<_>>(),
        "type": encode_type_reference(&field.return_type, doc),
        "isDeprecated": is_deprecated,
        "deprecationReason": reason,
    })
}

fn encode_input_value(value: &InputValueDefinition, doc: &SchemaDocument) -> Json {
    json!({
        "name": value.name,
        "description": value.description,
        "type": encode_type_reference(&value.value_type, doc),
        "defaultValue": value.default.as_ref().map(print_value),
    })
}

fn encode_type_reference(r: &TypeReference, doc: &SchemaDocument) -> Json {
    fn wrap(name: &str, kind: &str, wrappers: &[Wrapper]) -> Json {
        match wrappers.split_first() {
            None => json!({"kind": kind, "name": name, "ofType": null}),
            Some((Wrapper::NonNull, rest)) => {
                json!({"kind": "NON_NULL", "name": null, "ofType": wrap(name, kind, rest)})
            }
            Some((Wrapper::List, rest)) => {
                json!({"kind": "LIST", "name": null, "ofType": wrap(name, kind, rest)})
            }
        }
    }
    wrap(&r.name, named_kind(&r.name, doc), &r.wrappers)
}

fn named_kind(name: &str, doc: &SchemaDocument) -> &'static str {
    if is_builtin_scalar(name) {
        return "SCALAR";
    }
    match doc.type_definition(name) {
        Some(Definition::Object(_)) => "OBJECT",
        Some(Definition::Interface(_)) => "INTERFACE",
        Some(Definition::Union(_)) => "UNION",
        Some(Definition::Enum(_)) => "ENUM",
        Some(Definition::InputObject(_)) => "INPUT_OBJECT",
        _ => "SCALAR",
    }
}

fn deprecation_of(directives: &[AppliedDirective]) -> (bool, Option<String>) {
    match directives.iter().find(|d| d.name == "deprecated") {
        None => (false, None),
        Some(d) => {
            let reason = d
                .arguments
                .iter()
                .find(|a| a.name == "reason")
                .and_then(|a| match &a.value {
                    Value::String { value, .. } => Some(value.clone()),
                    _ => None,
                })
                .unwrap_or_else(|| DEFAULT_DEPRECATION_REASON.to_string());
            (true, Some(reason))
        }
    }
}

/// What a [`SchemaServer`] answers with.
pub enum ServeMode {
    /// Serve the introspection response for this schema.
    Document(SchemaDocument),
    /// Serve the schema only to requests carrying `Authorization: Bearer
    /// <token>`; answer 401 otherwise.
    BearerProtected {
        token: String,
        document: SchemaDocument,
    },
    /// Answer 200 with an `errors` body, like an endpoint with
    /// introspection turned off.
    Disabled,
    /// Answer 200 with a body that is not JSON.
    Garbage,
}

/// Minimal loopback HTTP endpoint serving introspection responses.
///
/// Listens on an ephemeral port; the listener thread shuts down when the
/// server is dropped.
pub struct SchemaServer {
    addr: SocketAddr,
    shutdown: Arc<AtomicBool>,
    handle: Option<std::thread::JoinHandle<()>>,
}

impl SchemaServer {
    pub fn spawn(document: SchemaDocument) -> std::io::Result<SchemaServer> {
        SchemaServer::spawn_with(ServeMode::Document(document))
    }

    pub fn spawn_with(mode: ServeMode) -> std::io::Result<SchemaServer> {
        let listener = TcpListener::bind(("127.0.0.1", 0))?;
        let addr = listener.local_addr()?;
        let shutdown = Arc::new(AtomicBool::new(false));
        let flag = Arc::clone(&shutdown);
        let handle = std::thread::spawn(move || serve(listener, mode, flag));
        Ok(SchemaServer {
            addr,
            shutdown,
            handle: Some(handle),
        })
    }

    /// Endpoint URL to introspect.
    pub fn url(&self) -> String {
        format!("http://{}", self.addr)
    }
}

impl Drop for SchemaServer {
    fn drop(&mut self) {
        self.shutdown.store(true, Ordering::SeqCst);
        // Unblock the accept loop so the thread observes the flag.
        let _ = TcpStream::connect(self.addr);
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}

fn serve(listener: TcpListener, mode: ServeMode, shutdown: Arc<AtomicBool>) {
    for stream in listener.incoming() {
        if shutdown.load(Ordering::SeqCst) {
            break;
        }
        if let Ok(mut stream) = stream {
            let _ = answer(&mut stream, &mode);
        }
    }
}

fn answer(stream: &mut TcpStream, mode: &ServeMode) -> std::io::Result<()> {
    stream.set_read_timeout(Some(Duration::from_secs(5)))?;
    let head = read_request(stream)?;
    let (status, reason, body) = match mode {
        ServeMode::Document(doc) => (200, "OK", introspection_response(doc).to_string()),
        ServeMode::BearerProtected { token, document } => {
            if bearer_token(&head) == Some(token.as_str()) {
                (200, "OK", introspection_response(document).to_string())
            } else {
                (
                    401,
                    "Unauthorized",
                    r#"{"errors":[{"message":"missing or invalid bearer token"}]}"#.to_string(),
                )
            }
        }
        ServeMode::Disabled => (
            200,
            "OK",
            r#"{"errors":[{"message":"introspection is not allowed on this endpoint"}]}"#
                .to_string(),
        ),
        ServeMode::Garbage => (200, "OK", "<html>not a graphql response</html>".to_string()),
    };
    write!(
        stream,
        "HTTP/1.1 {status} {reason}\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{body}",
        body.len()
    )
}

/// Reads the request head and drains the body so the client is never cut
/// off mid-write. Returns the head text.
fn read_request(stream: &mut TcpStream) -> std::io::Result<String> {
    let mut head = Vec::new();
    let mut byte = [0u8; 1];
    while !head.ends_with(b"\r\n\r\n") && head.len() < 64 * 1024 {
        if stream.read(&mut byte)? == 0 {
            break;
        }
        head.push(byte[0]);
    }
    let head = String::from_utf8_lossy(&head).into_owned();
    let content_length = head
        .lines()
        .find_map(|line| {
            let (name, value) = line.split_once(':')?;
            name.trim()
                .eq_ignore_ascii_case("content-length")
                .then(|| value.trim().parse::<usize>().ok())?
        })
        .unwrap_or(0);
    let mut body = vec![0u8; content_length.min(1 << 20)];
    let _ = stream.read_exact(&mut body);
    Ok(head)
}

fn bearer_token(head: &str) -> Option<&str> {
    head.lines().find_map(|line| {
        let (name, value) = line.split_once(':')?;
        if !name.trim().eq_ignore_ascii_case("authorization") {
            return None;
        }
        value.trim().strip_prefix("Bearer ")
    })
}
