//! SDL rendering for [`SchemaDocument`].
//!
//! Output is deterministic: definitions print in document order as
//! blank-line-separated blocks with two-space indentation, so the text
//! reparses to an equivalent document.

use crate::ast::*;

/// Renders the document's raw definition sequence as SDL.
pub fn print_document(doc: &SchemaDocument) -> String {
    let blocks: Vec<String> = doc.definitions.iter().map(print_definition).collect();
    if blocks.is_empty() {
        return String::new();
    }
    format!("{}\n", blocks.join("\n\n"))
}

pub fn print_definition(def: &Definition) -> String {
    match def {
        Definition::Schema(d) => print_schema_definition(d),
        Definition::Object(d) => print_object(d),
        Definition::InputObject(d) => print_input_object(d),
        Definition::Interface(d) => print_interface(d),
        Definition::Union(d) => print_union(d),
        Definition::Enum(d) => print_enum(d),
        Definition::Scalar(d) => print_scalar(d),
        Definition::Directive(d) => print_directive_definition(d),
    }
}

fn extend_prefix(from_extension: bool) -> &'static str {
    if from_extension {
        "extend "
    } else {
        ""
    }
}

fn print_schema_definition(d: &SchemaDefinition) -> String {
    let mut out = String::new();
    push_description(&mut out, &d.description, "");
    out.push_str(extend_prefix(d.from_extension));
    out.push_str("schema");
    out.push_str(&print_applied_directives(&d.directives));
    if !d.roots.is_empty() {
        out.push_str(" {\n");
        for root in &d.roots {
            out.push_str(&format!("  {}: {}\n", root.kind.keyword(), root.type_name));
        }
        out.push('}');
    }
    out
}

fn print_object(d: &ObjectType) -> String {
    let mut out = String::new();
    push_description(&mut out, &d.description, "");
    out.push_str(extend_prefix(d.from_extension));
    out.push_str("type ");
    out.push_str(&d.name);
    if !d.implements.is_empty() {
        out.push_str(" implements ");
        out.push_str(&d.implements.join(" & "));
    }
    out.push_str(&print_applied_directives(&d.directives));
    out.push_str(&print_fields_block(&d.fields));
    out
}

fn print_interface(d: &InterfaceType) -> String {
    let mut out = String::new();
    push_description(&mut out, &d.description, "");
    out.push_str(extend_prefix(d.from_extension));
    out.push_str("interface ");
    out.push_str(&d.name);
    out.push_str(&print_applied_directives(&d.directives));
    out.push_str(&print_fields_block(&d.fields));
    out
}

fn print_union(d: &UnionType) -> String {
    let mut out = String::new();
    push_description(&mut out, &d.description, "");
    out.push_str(extend_prefix(d.from_extension));
    out.push_str("union ");
    out.push_str(&d.name);
    out.push_str(&print_applied_directives(&d.directives));
    if !d.members.is_empty() {
        out.push_str(" = ");
        out.push_str(&d.members.join(" | "));
    }
    out
}

fn print_enum(d: &EnumType) -> String {
    let mut out = String::new();
    push_description(&mut out, &d.description, "");
    out.push_str(extend_prefix(d.from_extension));
    out.push_str("enum ");
    out.push_str(&d.name);
    out.push_str(&print_applied_directives(&d.directives));
    if !d.values.is_empty() {
        out.push_str(" {\n");
        for value in &d.values {
            push_description(&mut out, &value.description, "  ");
            out.push_str("  ");
            out.push_str(&value.name);
            out.push_str(&print_applied_directives(&value.directives));
            out.push('\n');
        }
        out.push('}');
    }
    out
}

fn print_scalar(d: &ScalarType) -> String {
    let mut out = String::new();
    push_description(&mut out, &d.description, "");
    out.push_str(extend_prefix(d.from_extension));
    out.push_str("scalar ");
    out.push_str(&d.name);
    out.push_str(&print_applied_directives(&d.directives));
    out
}

fn print_input_object(d: &InputObjectType) -> String {
    let mut out = String::new();
    push_description(&mut out, &d.description, "");
    out.push_str(extend_prefix(d.from_extension));
    out.push_str("input ");
    out.push_str(&d.name);
    out.push_str(&print_applied_directives(&d.directives));
    if !d.fields.is_empty() {
        out.push_str(" {\n");
        for field in &d.fields {
            push_description(&mut out, &field.description, "  ");
            out.push_str("  ");
            out.push_str(&print_input_value(field));
            out.push('\n');
        }
        out.push('}');
    }
    out
}

fn print_directive_definition(d: &DirectiveDefinition) -> String {
    let mut out = String::new();
    push_description(&mut out, &d.description, "");
    out.push_str("directive @");
    out.push_str(&d.name);
    out.push_str(&print_arguments_definition(&d.arguments, ""));
    out.push_str(" on ");
    out.push_str(&d.locations.join(" | "));
    out
}

fn print_fields_block(fields: &[FieldDefinition]) -> String {
    if fields.is_empty() {
        return String::new();
    }
    let mut out = String::from(" {\n");
    for field in fields {
        push_description(&mut out, &field.description, "  ");
        out.push_str("  ");
        out.push_str(&field.name);
        out.push_str(&print_arguments_definition(&field.arguments, "  "));
        out.push_str(": ");
        out.push_str(&field.return_type.to_string());
        out.push_str(&print_applied_directives(&field.directives));
        out.push('\n');
    }
    out.push('}');
    out
}

/// Arguments print inline unless one carries a description, in which case
/// each argument gets its own line.
fn print_arguments_definition(args: &[InputValueDefinition], indent: &str) -> String {
    if args.is_empty() {
        return String::new();
    }
    if args.iter().all(|a| a.description.is_none()) {
        let rendered: Vec<String> = args.iter().map(print_input_value).collect();
        return format!("({})", rendered.join(", "));
    }
    let mut out = String::from("(\n");
    let inner = format!("{indent}  ");
    for arg in args {
        push_description(&mut out, &arg.description, &inner);
        out.push_str(&inner);
        out.push_str(&print_input_value(arg));
        out.push('\n');
    }
    out.push_str(indent);
    out.push(')');
    out
}

fn print_input_value(v: &InputValueDefinition) -> String {
    let mut out = format!("{}: {}", v.name, v.value_type);
    if let Some(default) = &v.default {
        out.push_str(" = ");
        out.push_str(&print_value(default));
    }
    out.push_str(&print_applied_directives(&v.directives));
    out
}

fn print_applied_directives(directives: &[AppliedDirective]) -> String {
    let mut out = String::new();
    for d in directives {
        out.push_str(" @");
        out.push_str(&d.name);
        if !d.arguments.is_empty() {
            let rendered: Vec<String> = d
                .arguments
                .iter()
                .map(|a| format!("{}: {}", a.name, print_value(&a.value)))
                .collect();
            out.push_str(&format!("({})", rendered.join(", ")));
        }
    }
    out
}

pub fn print_value(value: &Value) -> String {
    match value {
        Value::Variable(name) => format!("${name}"),
        Value::Int(raw) | Value::Float(raw) => raw.clone(),
        Value::String { value, block } => {
            if *block {
                format!("\"\"\"{}\"\"\"", value.replace("\"\"\"", "\\\"\"\""))
            } else {
                print_quoted_string(value)
            }
        }
        Value::Boolean(true) => "true".to_string(),
        Value::Boolean(false) => "false".to_string(),
        Value::Null => "null".to_string(),
        Value::Enum(name) => name.clone(),
        Value::List(items) => {
            let rendered: Vec<String> = items.iter().map(print_value).collect();
            format!("[{}]", rendered.join(", "))
        }
        Value::Object(fields) => {
            let rendered: Vec<String> = fields
                .iter()
                .map(|(k, v)| format!("{k}: {}", print_value(v)))
                .collect();
            format!("{{{}}}", rendered.join(", "))
        }
    }
}

fn print_quoted_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Descriptions render as block strings above their node; single-line values
/// stay on one line.
fn push_description(out: &mut String, description: &Option<String>, indent: &str) {
    let Some(text) = description else { return };
    let escaped = text.replace("\"\"\"", "\\\"\"\"");
    if escaped.contains('\n') {
        out.push_str(indent);
        out.push_str("\"\"\"\n");
        for line in escaped.split('\n') {
            out.push_str(indent);
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(indent);
        out.push_str("\"\"\"\n");
    } else {
        out.push_str(indent);
        out.push_str(&format!("\"\"\"{escaped}\"\"\"\n"));
    }
}
