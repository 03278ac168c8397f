//! Type graph over output composite types, the input to response-size
//! classification.

use crate::ast::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// How an edge is traversed in a query.
#[derive(Clone, Debug, Eq, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeVia {
    /// Selecting the named field on `from`.
    Field(String),
    /// Narrowing an abstract `from` to the concrete member `to` with an
    /// inline fragment; costs no query field.
    Expansion,
}

#[derive(Clone, Debug, Eq, PartialEq, Serialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub via: EdgeVia,
    /// Number of list wrappers on the originating field type; expansion
    /// edges always weigh 0.
    pub weight: u32,
}

impl Edge {
    /// Witness-step rendering: `Type.field`, or the inline-fragment form
    /// for expansion edges.
    pub fn step(&self) -> String {
        match &self.via {
            EdgeVia::Field(name) => format!("{}.{}", self.from, name),
            EdgeVia::Expansion => format!("{} ... on {}", self.from, self.to),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TypeGraphOptions {
    /// Restrict roots to the query root, excluding mutation/subscription.
    pub query_only: bool,
}

/// Object, interface, and union types reachable from the operation roots,
/// with an edge per composite-returning field and per abstract-type
/// expansion.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TypeGraph {
    pub nodes: BTreeSet<String>,
    pub edges: Vec<Edge>,
    pub roots: BTreeSet<String>,
}

impl TypeGraph {
    pub fn edges_from<'a>(&'a self, node: &'a str) -> impl Iterator<Item = &'a Edge> {
        self.edges.iter().filter(move |e| e.from == node)
    }
}

pub fn build_type_graph(doc: &SchemaDocument) -> TypeGraph {
    build_type_graph_with(doc, TypeGraphOptions::default())
}

pub fn build_type_graph_with(doc: &SchemaDocument, options: TypeGraphOptions) -> TypeGraph {
    let mut roots = BTreeSet::new();
    let kinds: &[OperationKind] = if options.query_only {
        &[OperationKind::Query]
    } else {
        &[
            OperationKind::Query,
            OperationKind::Mutation,
            OperationKind::Subscription,
        ]
    };
    for &kind in kinds {
        if let Some(name) = doc.root_type_name(kind) {
            if doc.object_type(name).is_some() {
                roots.insert(name.to_string());
            }
        }
    }

    // Implementing objects, keyed by interface name.
    let mut implementers: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for def in doc.effective_definitions() {
        if let Definition::Object(o) = def {
            for iface in &o.implements {
                implementers.entry(iface).or_default().push(&o.name);
            }
        }
    }

    let mut graph = TypeGraph {
        roots: roots.clone(),
        ..TypeGraph::default()
    };
    let mut queue: VecDeque<String> = roots.into_iter().collect();
    while let Some(name) = queue.pop_front() {
        if !graph.nodes.insert(name.clone()) {
            continue;
        }
        let mut targets: Vec<Edge> = Vec::new();
        match doc.type_definition(&name) {
            Some(Definition::Object(o)) => {
                field_edges(doc, &name, &o.fields, &mut targets);
            }
            Some(Definition::Interface(i)) => {
                field_edges(doc, &name, &i.fields, &mut targets);
                for implementer in implementers.get(name.as_str()).into_iter().flatten() {
                    targets.push(Edge {
                        from: name.clone(),
                        to: implementer.to_string(),
                        via: EdgeVia::Expansion,
                        weight: 0,
                    });
                }
            }
            Some(Definition::Union(u)) => {
                for member in &u.members {
                    targets.push(Edge {
                        from: name.clone(),
                        to: member.clone(),
                        via: EdgeVia::Expansion,
                        weight: 0,
                    });
                }
            }
            _ => {}
        }
        for edge in targets {
            if !graph.nodes.contains(&edge.to) {
                queue.push_back(edge.to.clone());
            }
            graph.edges.push(edge);
        }
    }
    graph
}

/// Appends one edge per field whose unwrapped return type is an output
/// composite; scalar- and enum-returning fields contribute nothing.
fn field_edges(doc: &SchemaDocument, from: &str, fields: &[FieldDefinition], out: &mut Vec<Edge>) {
    for field in fields {
        let target = &field.return_type.name;
        let is_composite = matches!(
            doc.type_definition(target),
            Some(Definition::Object(_) | Definition::Interface(_) | Definition::Union(_))
        );
        if is_composite {
            out.push(Edge {
                from: from.to_string(),
                to: target.clone(),
                via: EdgeVia::Field(field.name.clone()),
                weight: field.return_type.list_depth(),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_schema;

    fn edge_triples(graph: &TypeGraph) -> Vec<(String, u32)> {
        graph.edges.iter().map(|e| (e.step(), e.weight)).collect()
    }

    #[test]
    fn fields_become_weighted_edges_and_scalars_do_not() {
        let doc = parse_schema(
            r#"
            type Query { company: Company, version: String }
            type Company { offices: OfficeConnection }
            type OfficeConnection { nodes: [Office], edges: [OfficeEdge], total: Int }
            type Office { id: ID }
            type OfficeEdge { node: Office, cursor: String }
            "#,
        )
        .unwrap();
        let graph = build_type_graph(&doc);
        assert_eq!(
            edge_triples(&graph),
            [
                ("Query.company".to_string(), 0),
                ("Company.offices".to_string(), 0),
                ("OfficeConnection.nodes".to_string(), 1),
                ("OfficeConnection.edges".to_string(), 1),
                ("OfficeEdge.node".to_string(), 0),
            ]
        );
        assert_eq!(graph.roots.len(), 1);
        assert_eq!(graph.nodes.len(), 5);
    }

    #[test]
    fn self_referential_list_field_is_a_self_edge() {
        let doc =
            parse_schema("type Query { u: User }\ntype User { friends: [User] }").unwrap();
        let graph = build_type_graph(&doc);
        assert!(graph
            .edges
            .iter()
            .any(|e| e.from == "User" && e.to == "User" && e.weight == 1));
    }

    #[test]
    fn nested_list_wrappers_add_up() {
        let doc = parse_schema("type Query { m: [[M]] }\ntype M { x: Int }").unwrap();
        let graph = build_type_graph(&doc);
        assert_eq!(edge_triples(&graph), [("Query.m".to_string(), 2)]);
    }

    #[test]
    fn abstract_types_expand_with_zero_weight() {
        let doc = parse_schema(
            r#"
            type Query { node: Node, thing: Thing }
            interface Node { id: ID }
            type Office implements Node { id: ID }
            union Thing = Office
            "#,
        )
        .unwrap();
        let graph = build_type_graph(&doc);
        assert!(graph.edges.contains(&Edge {
            from: "Node".into(),
            to: "Office".into(),
            via: EdgeVia::Expansion,
            weight: 0,
        }));
        assert!(graph.edges.contains(&Edge {
            from: "Thing".into(),
            to: "Office".into(),
            via: EdgeVia::Expansion,
            weight: 0,
        }));
        assert_eq!(
            graph.edges.iter().filter(|e| e.from == "Node").count(),
            1,
            "expansion edges only; Node has no composite fields"
        );
    }

    #[test]
    fn unreachable_types_stay_out_of_the_graph() {
        let doc = parse_schema(
            r#"
            type Query { a: A }
            type A { x: Int }
            type Island { a: A }
            "#,
        )
        .unwrap();
        let graph = build_type_graph(&doc);
        assert!(!graph.nodes.contains("Island"));
        assert_eq!(graph.nodes.len(), 2);
    }

    #[test]
    fn mutation_root_is_included_unless_query_only() {
        let doc = parse_schema(
            r#"
            type Query { a: Int }
            type Mutation { makeB: B }
            type B { x: Int }
            "#,
        )
        .unwrap();
        let both = build_type_graph(&doc);
        assert!(both.roots.contains("Mutation"));
        assert!(both.nodes.contains("B"));
        let query_only = build_type_graph_with(&doc, TypeGraphOptions { query_only: true });
        assert_eq!(query_only.roots.len(), 1);
        assert!(!query_only.nodes.contains("B"));
    }

    #[test]
    fn expansion_steps_render_as_inline_fragments() {
        let edge = Edge {
            from: "Node".into(),
            to: "Office".into(),
            via: EdgeVia::Expansion,
            weight: 0,
        };
        assert_eq!(edge.step(), "Node ... on Office");
    }
}
