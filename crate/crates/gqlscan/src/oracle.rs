//! Brute-force worst-case response size for small instances, used to
//! cross-check the closed-form bound. Enumerates queries directly from the
//! document rather than going through the type graph, so the two sides of
//! the comparison stay independent.

use crate::ast::*;
use std::collections::BTreeSet;
use thiserror::Error;

pub const MAX_ORACLE_TYPES: usize = 10;
pub const MAX_ORACLE_QUERY_SIZE: u64 = 8;
pub const MAX_ORACLE_LIST_LENGTH: u64 = 4;

#[derive(Clone, Debug, Eq, Error, PartialEq)]
pub enum OracleError {
    #[error("instance exceeds oracle guard: {0}")]
    GuardExceeded(String),
    #[error("document has no query root")]
    NoQueryRoot,
    #[error("no valid query of size {n} exists against this schema")]
    Unsatisfiable { n: u64 },
}

/// Maximum response size over all valid queries of size `n`, executed
/// against synthetic data where every list holds exactly `d` elements and
/// every abstract element takes its most expensive concrete type.
///
/// Response units follow the recurrence arithmetic: one per scalar (or
/// enum) field instance and one per list-naming field instance; the key of
/// a plain object field is not counted. Queries may always pad to size
/// exactly `n` by repeating an already-selected leaf (the duplicate merges
/// in the response), so the search maximizes over distinct-field
/// selections of size at most `n`.
pub fn oracle_worst_case(doc: &SchemaDocument, n: u64, d: u64) -> Result<u64, OracleError> {
    let composite_types = doc
        .effective_definitions()
        .iter()
        .filter(|def| {
            matches!(
                def,
                Definition::Object(_) | Definition::Interface(_) | Definition::Union(_)
            )
        })
        .count();
    if composite_types > MAX_ORACLE_TYPES {
        return Err(OracleError::GuardExceeded(format!(
            "{composite_types} composite types exceed the {MAX_ORACLE_TYPES}-type limit"
        )));
    }
    if n > MAX_ORACLE_QUERY_SIZE {
        return Err(OracleError::GuardExceeded(format!(
            "query size {n} exceeds the limit of {MAX_ORACLE_QUERY_SIZE}"
        )));
    }
    if !(1..=MAX_ORACLE_LIST_LENGTH).contains(&d) {
        return Err(OracleError::GuardExceeded(format!(
            "list length {d} is outside 1..={MAX_ORACLE_LIST_LENGTH}"
        )));
    }
    let root = doc
        .root_type_name(OperationKind::Query)
        .ok_or(OracleError::NoQueryRoot)?
        .to_string();
    if n == 0 {
        return Err(OracleError::Unsatisfiable { n });
    }
    let oracle = Oracle { doc, d };
    oracle
        .best_selection(&root, n, &BTreeSet::new())
        .ok_or(OracleError::Unsatisfiable { n })
}

struct Oracle<'a> {
    doc: &'a SchemaDocument,
    d: u64,
}

impl Oracle<'_> {
    /// Best value of a nonempty selection on the composite type `name`
    /// using at most `budget` fields. `excluded` holds response keys
    /// already claimed at this selection level by an enclosing direct
    /// selection; re-selecting one would merge and add nothing.
    fn best_selection(&self, name: &str, budget: u64, excluded: &BTreeSet<String>) -> Option<u64> {
        let (fields, members): (&[FieldDefinition], Vec<String>) =
            match self.doc.type_definition(name)? {
                Definition::Object(o) => (&o.fields, Vec::new()),
                Definition::Interface(i) => (&i.fields, self.implementers(name)),
                Definition::Union(u) => (&[], u.members.clone()),
                _ => return None,
            };
        let mut chosen = excluded.clone();
        let value = self.best_from(fields, 0, budget, &mut chosen, &members);
        // Every selectable field yields at least one unit, so zero means
        // nothing fit in the budget.
        (value > 0).then_some(value)
    }

    /// Maximum value over subsets of `fields[idx..]` within `budget`,
    /// followed by an optional inline fragment on the best single member.
    /// Synthetic data picks each abstract element's concrete type
    /// adversarially, so only one member fragment ever pays off.
    fn best_from(
        &self,
        fields: &[FieldDefinition],
        idx: usize,
        budget: u64,
        chosen: &mut BTreeSet<String>,
        members: &[String],
    ) -> u64 {
        if idx == fields.len() {
            if budget == 0 {
                return 0;
            }
            return members
                .iter()
                .filter_map(|member| self.best_selection(member, budget, chosen))
                .max()
                .unwrap_or(0);
        }
        let field = &fields[idx];
        let mut best = self.best_from(fields, idx + 1, budget, chosen, members);
        if budget == 0 || chosen.contains(&field.name) {
            return best;
        }
        let target = &field.return_type.name;
        let wrappers = field.return_type.list_depth();
        let newly_added = chosen.insert(field.name.clone());
        if self.is_composite(target) {
            for sub_budget in 1..budget {
                if let Some(sub) = self.best_selection(target, sub_budget, &BTreeSet::new()) {
                    let field_value = if wrappers >= 1 {
                        1 + self.d.pow(wrappers) * sub
                    } else {
                        sub
                    };
                    let rest =
                        self.best_from(fields, idx + 1, budget - 1 - sub_budget, chosen, members);
                    best = best.max(field_value + rest);
                }
            }
        } else {
            let rest = self.best_from(fields, idx + 1, budget - 1, chosen, members);
            best = best.max(1 + rest);
        }
        if newly_added {
            chosen.remove(&field.name);
        }
        best
    }

    fn is_composite(&self, name: &str) -> bool {
        matches!(
            self.doc.type_definition(name),
            Some(Definition::Object(_) | Definition::Interface(_) | Definition::Union(_))
        )
    }

    fn implementers(&self, interface: &str) -> Vec<String> {
        self.doc
            .effective_definitions()
            .iter()
            .filter_map(|def| match def {
                Definition::Object(o) if o.implements.iter().any(|i| i == interface) => {
                    Some(o.name.clone())
                }
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_schema;

    fn oracle(sdl: &str, n: u64, d: u64) -> Result<u64, OracleError> {
        oracle_worst_case(&parse_schema(sdl).unwrap(), n, d)
    }

    const FRIENDS: &str =
        "type Query { friends: [User] }\ntype User { name: String, friends: [User] }";

    #[test]
    fn recursive_list_chain_matches_the_unrolled_recurrence() {
        // friends{friends{friends{name}}} with D = 2: 1+2·(1+2·(1+2·1)).
        assert_eq!(oracle(FRIENDS, 4, 2), Ok(15));
        assert_eq!(oracle(FRIENDS, 3, 2), Ok(7));
        assert_eq!(oracle(FRIENDS, 2, 2), Ok(3));
    }

    #[test]
    fn guards_reject_oversized_instances() {
        assert!(matches!(
            oracle(FRIENDS, 4, 10),
            Err(OracleError::GuardExceeded(_))
        ));
        assert!(matches!(
            oracle(FRIENDS, 9, 2),
            Err(OracleError::GuardExceeded(_))
        ));
        assert!(matches!(
            oracle(FRIENDS, 4, 0),
            Err(OracleError::GuardExceeded(_))
        ));
        let mut many = String::from("type Query { a: Int }\n");
        for i in 0..11 {
            many.push_str(&format!("type T{i} {{ x: Int }}\n"));
        }
        assert!(matches!(
            oracle(&many, 1, 2),
            Err(OracleError::GuardExceeded(_))
        ));
    }

    #[test]
    fn flat_scalar_schema_answers_n() {
        let sdl = "type Query { a: Int, b: Int, c: Int }";
        assert_eq!(oracle(sdl, 1, 3), Ok(1));
        assert_eq!(oracle(sdl, 2, 3), Ok(2));
        assert_eq!(oracle(sdl, 3, 3), Ok(3));
    }

    #[test]
    fn plain_object_keys_are_free_but_cost_budget() {
        let sdl = "type Query { b: B }\ntype B { c: C }\ntype C { d: Int }";
        // The only shape is b{c{d}}: three query fields, one scalar unit.
        assert_eq!(oracle(sdl, 3, 2), Ok(1));
        assert_eq!(oracle(sdl, 2, 2), Err(OracleError::Unsatisfiable { n: 2 }));
    }

    #[test]
    fn single_list_level_yields_one_plus_d() {
        let sdl = r#"
            type Query { company: Company }
            type Company { offices: OfficeConnection }
            type OfficeConnection { nodes: [Office] }
            type Office { name: String }
        "#;
        assert_eq!(oracle(sdl, 4, 3), Ok(4));
        assert_eq!(oracle(sdl, 4, 2), Ok(3));
    }

    #[test]
    fn list_of_scalars_is_a_single_leaf_unit() {
        assert_eq!(oracle("type Query { tags: [String] }", 1, 4), Ok(1));
    }

    #[test]
    fn union_selection_takes_the_best_member() {
        let sdl = r#"
            type Query { thing: Thing }
            union Thing = A | B
            type A { x: Int }
            type B { y: Int, z: Int }
        "#;
        assert_eq!(oracle(sdl, 2, 2), Ok(1));
        assert_eq!(oracle(sdl, 3, 2), Ok(2));
    }

    #[test]
    fn interface_fragments_cannot_recount_direct_fields() {
        let sdl = r#"
            type Query { node: Node }
            interface Node { id: ID }
            type Member implements Node { id: ID, extra: Int }
        "#;
        // node{id ...on Member{extra}}: the fragment's id would merge with
        // the direct one, so the best third field is extra.
        assert_eq!(oracle(sdl, 3, 2), Ok(2));
        assert_eq!(oracle(sdl, 2, 2), Ok(1));
    }

    #[test]
    fn chain_fixture_attains_the_closed_form_bound() {
        let sdl = r#"
            type Query { l1: [T1] }
            type T1 { l2: [T2] }
            type T2 { s: Int, t: Int }
        "#;
        // l1{l2{s t}}: (n−K)·D^K + (D^K−1)/(D−1) with n=4, K=2, D=2.
        assert_eq!(oracle(sdl, 4, 2), Ok(11));
        assert_eq!(
            crate::complexity::response_bound(4, 2, 2),
            Ok(u128::from(oracle(sdl, 4, 2).unwrap()))
        );
    }

    #[test]
    fn only_the_query_root_is_searched() {
        let sdl = r#"
            type Query { a: Int }
            type Mutation { everything: [Query] }
        "#;
        assert_eq!(oracle(sdl, 1, 4), Ok(1));
    }
}
