use std::collections::BTreeMap;

use super::*;
use crate::graph::{GraphError, LabeledGraph, Mark};

fn instantiate(p: &LabelPattern, m: &Match) -> Atom {
    match p {
        LabelPattern::Literal(a) => a.clone(),
        LabelPattern::Var(v) => m.assignment[v].clone(),
    }
}

fn concrete(mark: MarkPattern) -> Mark {
    match mark {
        MarkPattern::MustBeRed => Mark::Red,
        _ => Mark::None,
    }
}

/// Applies `rule` at `m`. Fails only if `m` does not come from `host`.
pub fn apply(rule: &Rule, m: &Match, host: &LabeledGraph) -> Result<LabeledGraph, GraphError> {
    let mut g = host.clone();
    for e in &rule.lhs.edges {
        let id = m.edge_map[&e.id];
        match rule.rhs.edge(&e.id) {
            Some(r) => g.set_edge_label(id, instantiate(&r.label, m))?,
            None => {
                g.remove_edge(id)?;
            }
        }
    }
    for n in &rule.lhs.nodes {
        let id = m.node_map[&n.id];
        if !rule.interface.contains(&n.id) {
            g.remove_node(id)?;
        }
    }
    let mut image: BTreeMap<&str, NodeId> = BTreeMap::new();
    for n in &rule.rhs.nodes {
        let label = instantiate(&n.label, m);
        let mark = concrete(n.mark);
        if rule.interface.contains(&n.id) {
            let id = m.node_map[&n.id];
            let node = g.node_mut(id).ok_or(GraphError::MissingNode(id))?;
            node.label = label;
            node.mark = mark;
            image.insert(&n.id, id);
        } else {
            image.insert(&n.id, g.add_node(label, mark));
        }
    }
    for e in &rule.rhs.edges {
        if rule.lhs.edge(&e.id).is_none() {
            g.add_edge(image[e.src.as_str()], image[e.tgt.as_str()], instantiate(&e.label, m))?;
        }
    }
    Ok(g)
}
