use std::collections::{BTreeMap, HashMap, HashSet};

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::{depth_first_search, DfsEvent};

use super::hints::{Hint, HintCode};
use crate::model::*;

/// Control ranks for the nodes of one boundary. Rank 0 is the top of the
/// control structure.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hierarchy {
    pub ranks: BTreeMap<Ident, usize>,
    /// One `hierarchy-cycle` hint per strongly connected component of the
    /// control-action subgraph with two or more nodes.
    pub hints: Vec<Hint>,
}

impl Hierarchy {
    pub fn rank(&self, node: &str) -> Option<usize> {
        self.ranks.get(node).copied()
    }

    /// Node ids grouped by rank, top row first. Each row keeps scope order.
    pub fn rows<'a>(&self, scope: &BoundaryScope<'a>) -> Vec<Vec<&'a Node>> {
        let depth = self.ranks.values().max().map_or(0, |m| m + 1);
        let mut rows = vec![Vec::new(); depth];
        for node in &scope.nodes {
            if let Some(rank) = self.rank(node.id.as_str()) {
                rows[rank].push(*node);
            }
        }
        rows
    }
}

/// Longest-path control ranks inside `boundary`, considering only
/// control-action edges. Cycles are broken at the back edges of a
/// depth-first search taken in declaration order.
pub fn hierarchy_ranks(model: &Model, boundary: &str) -> Result<Hierarchy, ReferenceError> {
    Ok(rank_scope(&model.elements_in_boundary(boundary)?))
}

pub(crate) fn rank_scope(scope: &BoundaryScope<'_>) -> Hierarchy {
    let mut graph: DiGraph<&Ident, ()> = DiGraph::new();
    let mut at: HashMap<&str, NodeIndex> = HashMap::new();
    for node in &scope.nodes {
        at.entry(node.id.as_str()).or_insert_with(|| graph.add_node(&node.id));
    }
    let mut controls = Vec::new();
    for edge in scope.control_actions() {
        if edge.source == edge.target {
            continue;
        }
        if let (Some(&a), Some(&b)) = (at.get(edge.source.as_str()), at.get(edge.target.as_str())) {
            controls.push((a, b));
            graph.add_edge(a, b, ());
        }
    }

    let mut back: HashSet<(NodeIndex, NodeIndex)> = HashSet::new();
    depth_first_search(&graph, graph.node_indices(), |event| {
        if let DfsEvent::BackEdge(u, v) = event {
            back.insert((u, v));
        }
    });

    let mut dag: DiGraph<(), ()> = DiGraph::with_capacity(graph.node_count(), controls.len());
    for _ in graph.node_indices() {
        dag.add_node(());
    }
    for &(a, b) in &controls {
        if !back.contains(&(a, b)) {
            dag.add_edge(a, b, ());
        }
    }
    let order = toposort(&dag, None).expect("removing DFS back edges leaves a DAG");
    let mut rank = vec![0usize; graph.node_count()];
    for v in order {
        for w in dag.neighbors(v) {
            rank[w.index()] = rank[w.index()].max(rank[v.index()] + 1);
        }
    }

    let ranks = graph
        .node_indices()
        .map(|i| (graph[i].clone(), rank[i.index()]))
        .collect();

    let mut hints: Vec<Hint> = tarjan_scc(&graph)
        .into_iter()
        .filter(|component| component.len() >= 2)
        .map(|component| {
            let mut ids: Vec<&str> = component.iter().map(|i| graph[*i].as_str()).collect();
            ids.sort_unstable();
            Hint::new(
                HintCode::HierarchyCycle,
                ids.iter().map(|id| ElementRef::new(ElementClass::Node, *id)).collect(),
                format!("control actions form a cycle through {}", ids.join(", ")),
            )
        })
        .collect();
    hints.sort();

    Hierarchy { ranks, hints }
}
