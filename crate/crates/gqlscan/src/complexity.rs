//! Worst-case response-size classification over the type graph, and the
//! closed-form bound on response size.

use crate::typegraph::{Edge, TypeGraph};
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

/// Growth of the worst-case response as a function of query size n and
/// list length D.
#[derive(Clone, Copy, Debug, Eq, Ord, PartialEq, PartialOrd, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexityClass {
    /// K = 0: response size is the query size.
    LinearN,
    /// K = 1: one list level, O(n·D).
    LinearNd,
    /// K = 2.
    Quadratic,
    /// K ≥ 3.
    Polynomial,
    /// A reachable cycle goes through a list field.
    Exponential,
}

impl ComplexityClass {
    pub fn label(self) -> &'static str {
        match self {
            ComplexityClass::LinearN => "linear-n",
            ComplexityClass::LinearNd => "linear-nd",
            ComplexityClass::Quadratic => "quadratic",
            ComplexityClass::Polynomial => "polynomial",
            ComplexityClass::Exponential => "exponential",
        }
    }

    pub fn for_nesting(k: u64) -> ComplexityClass {
        match k {
            0 => ComplexityClass::LinearN,
            1 => ComplexityClass::LinearNd,
            2 => ComplexityClass::Quadratic,
            _ => ComplexityClass::Polynomial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub class: ComplexityClass,
    /// Maximal nesting of object lists; absent for exponential schemas.
    pub k: Option<u64>,
    /// For exponential schemas a cycle through a list edge; otherwise a
    /// maximum-weight path from a root.
    pub witness: Vec<Edge>,
}

impl ComplexityReport {
    pub fn witness_steps(&self) -> Vec<String> {
        self.witness.iter().map(Edge::step).collect()
    }
}

pub fn classify(graph: &TypeGraph) -> ComplexityReport {
    let nodes: Vec<&str> = graph.nodes.iter().map(String::as_str).collect();
    let index: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes.len()];
    for (edge_idx, edge) in graph.edges.iter().enumerate() {
        adjacency[index[edge.from.as_str()]].push((edge_idx, index[edge.to.as_str()]));
    }
    let components = tarjan(&adjacency);

    // A weight-carrying edge inside one component witnesses a cycle whose
    // every traversal multiplies the response by D.
    for edge in &graph.edges {
        if edge.weight >= 1
            && components.of[index[edge.from.as_str()]] == components.of[index[edge.to.as_str()]]
        {
            let back = intra_component_path(
                graph,
                &index,
                &components.of,
                index[edge.to.as_str()],
                index[edge.from.as_str()],
            );
            let mut witness = vec![edge.clone()];
            witness.extend(back.into_iter().map(|i| graph.edges[i].clone()));
            return ComplexityReport {
                class: ComplexityClass::Exponential,
                k: None,
                witness,
            };
        }
    }

    // No weighted cycle: K is the heaviest root-originated path through the
    // component condensation, found in topological (reverse pop) order.
    let comp_count = components.count;
    let mut dist: Vec<Option<u64>> = vec![None; comp_count];
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; comp_count];
    for root in &graph.roots {
        if let Some(&i) = index.get(root.as_str()) {
            dist[components.of[i]] = Some(0);
        }
    }
    for comp in (0..comp_count).rev() {
        let Some(d) = dist[comp] else { continue };
        for (edge_idx, edge) in graph.edges.iter().enumerate() {
            let from_comp = components.of[index[edge.from.as_str()]];
            let to_comp = components.of[index[edge.to.as_str()]];
            if from_comp != comp || to_comp == comp {
                continue;
            }
            let candidate = d + u64::from(edge.weight);
            if dist[to_comp].is_none_or(|existing| candidate > existing) {
                dist[to_comp] = Some(candidate);
                pred[to_comp] = Some((edge_idx, comp));
            }
        }
    }

    let mut best_comp = None;
    let mut k = 0;
    for comp in (0..comp_count).rev() {
        if let Some(d) = dist[comp] {
            if best_comp.is_none() || d > k {
                best_comp = Some(comp);
                k = d;
            }
        }
    }

    let witness = best_comp
        .map(|comp| reconstruct_path(graph, &index, &components.of, &pred, comp))
        .unwrap_or_default();
    ComplexityReport {
        class: ComplexityClass::for_nesting(k),
        k: Some(k),
        witness,
    }
}

struct Components {
    /// Component id per node, in pop order: every edge leaving a component
    /// targets a component with a smaller id.
    of: Vec<usize>,
    count: usize,
}

fn tarjan(adjacency: &[Vec<(usize, usize)>]) -> Components {
    struct State<'a> {
        adjacency: &'a [Vec<(usize, usize)>],
        next_index: usize,
        index: Vec<Option<usize>>,
        lowlink: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        of: Vec<usize>,
        count: usize,
    }

    fn connect(state: &mut State<'_>, v: usize) {
        state.index[v] = Some(state.next_index);
        state.lowlink[v] = state.next_index;
        state.next_index += 1;
        state.stack.push(v);
        state.on_stack[v] = true;
        for &(_, w) in &state.adjacency[v] {
            if state.index[w].is_none() {
                connect(state, w);
                state.lowlink[v] = state.lowlink[v].min(state.lowlink[w]);
            } else if state.on_stack[w] {
                state.lowlink[v] = state.lowlink[v].min(state.index[w].unwrap());
            }
        }
        if state.lowlink[v] == state.index[v].unwrap() {
            while let Some(w) = state.stack.pop() {
                state.on_stack[w] = false;
                state.of[w] = state.count;
                if w == v {
                    break;
                }
            }
            state.count += 1;
        }
    }

    let n = adjacency.len();
    let mut state = State {
        adjacency,
        next_index: 0,
        index: vec![None; n],
        lowlink: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        of: vec![0; n],
        count: 0,
    };
    for v in 0..n {
        if state.index[v].is_none() {
            connect(&mut state, v);
        }
    }
    Components {
        of: state.of,
        count: state.count,
    }
}

/// Shortest edge path from `start` to `goal` staying inside one strongly
/// connected component (such a path always exists there). Returns edge
/// indices; empty when start = goal.
fn intra_component_path(
    graph: &TypeGraph,
    index: &BTreeMap<&str, usize>,
    comp_of: &[usize],
    start: usize,
    goal: usize,
) -> Vec<usize> {
    if start == goal {
        return Vec::new();
    }
    let comp = comp_of[start];
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for (edge_idx, edge) in graph.edges.iter().enumerate() {
            if index[edge.from.as_str()] != v {
                continue;
            }
            let w = index[edge.to.as_str()];
            if comp_of[w] != comp || w == start || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, edge_idx);
            if w == goal {
                let mut path = Vec::new();
                let mut at = goal;
                while at != start {
                    let e = parent[&at];
                    path.push(e);
                    at = index[graph.edges[e].from.as_str()];
                }
                path.reverse();
                return path;
            }
            queue.push_back(w);
        }
    }
    unreachable!("strongly connected component must connect its members");
}

/// Expands the per-component predecessor chain into a concrete edge walk,
/// inserting intra-component connectors where a component is crossed.
fn reconstruct_path(
    graph: &TypeGraph,
    index: &BTreeMap<&str, usize>,
    comp_of: &[usize],
    pred: &[Option<(usize, usize)>],
    last_comp: usize,
) -> Vec<Edge> {
    let mut cross = Vec::new();
    let mut comp = last_comp;
    while let Some((edge_idx, prev)) = pred[comp] {
        cross.push(edge_idx);
        comp = prev;
    }
    cross.reverse();

    // `comp` is now a root component; start from its lexically first root.
    let Some(start_root) = graph
        .roots
        .iter()
        .find(|r| index.get(r.as_str()).is_some_and(|&i| comp_of[i] == comp))
    else {
        return Vec::new();
    };
    let mut walk = Vec::new();
    let mut at = index[start_root.as_str()];
    for edge_idx in cross {
        let from = index[graph.edges[edge_idx].from.as_str()];
        for connector in intra_component_path(graph, index, comp_of, at, from) {
            walk.push(graph.edges[connector].clone());
        }
        walk.push(graph.edges[edge_idx].clone());
        at = index[graph.edges[edge_idx].to.as_str()];
    }
    walk
}

#[derive(Clone, Copy, Debug, Eq, Error, PartialEq)]
pub enum BoundError {
    #[error("query size n = {n} must exceed list nesting K = {k}")]
    SizeNotAboveNesting { n: u64, k: u64 },
    #[error("list length D = {d} must be at least 1")]
    ListLengthTooSmall { d: u64 },
    #[error("bound exceeds 128-bit integer range")]
    Overflow,
}

/// Worst-case response size for a query of size `n` against a schema with
/// list nesting `k`, with every list `d` elements long:
/// (n−k)·dᵏ + (dᵏ−1)/(d−1), exactly.
pub fn response_bound(n: u64, k: u64, d: u64) -> Result<u128, BoundError> {
    if d < 1 {
        return Err(BoundError::ListLengthTooSmall { d });
    }
    if n <= k {
        return Err(BoundError::SizeNotAboveNesting { n, k });
    }
    // With d = 1 the geometric sum collapses to k, giving (n−k)+k = n; the
    // k = 0 case is the same identity.
    if d == 1 || k == 0 {
        return Ok(u128::from(n));
    }
    let exp = u32::try_from(k).map_err(|_| BoundError::Overflow)?;
    let dk = u128::from(d).checked_pow(exp).ok_or(BoundError::Overflow)?;
    let spine = u128::from(n - k).checked_mul(dk).ok_or(BoundError::Overflow)?;
    let geometric = (dk - 1) / (u128::from(d) - 1);
    spine.checked_add(geometric).ok_or(BoundError::Overflow)
}
