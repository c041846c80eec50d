//! Labelled directed host graphs and the specification ⇄ graph encoding.
//!
//! Every AST node becomes one graph node labelled with its symbol (an
//! identifier, operator glyph, literal or the empty string). Each such node
//! also owns a `"kind"` edge to a leaf labelled with its grammar kind, so the
//! symbol and the grammatical role live on separate nodes. Children hang off
//! edges labelled with their 1-based position.

mod decode;
mod encode;
pub(crate) mod gp2_lex;
mod host_format;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use decode::{decode, DecodeError, ShapeRule};
pub use encode::{encode, kinds, KIND_EDGE};
pub use host_format::{read_host_graph, write_host_graph};

pub type NodeId = u32;
pub type EdgeId = u32;

/// A label atom. Every label in this crate is a single atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Int(i64),
    Str(String),
}

pub type Label = Atom;

impl Atom {
    pub fn str(s: impl Into<String>) -> Self {
        Atom::Str(s.into())
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Atom::Str(s) => Some(s),
            Atom::Int(_) => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Atom::Int(i) => Some(*i),
            Atom::Str(_) => None,
        }
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::Str(s.to_string())
    }
}

impl From<i64> for Atom {
    fn from(i: i64) -> Self {
        Atom::Int(i)
    }
}

impl From<i32> for Atom {
    fn from(i: i32) -> Self {
        Atom::Int(i as i64)
    }
}

impl From<String> for Atom {
    fn from(s: String) -> Self {
        Atom::Str(s)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(i) => write!(f, "{i}"),
            Atom::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Mark {
    #[default]
    None,
    Red,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphNode {
    pub id: NodeId,
    pub label: Label,
    pub mark: Mark,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphEdge {
    pub id: EdgeId,
    pub src: NodeId,
    pub tgt: NodeId,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("node {0} does not exist")]
    MissingNode(NodeId),
    #[error("edge {0} does not exist")]
    MissingEdge(EdgeId),
    #[error("node id {0} is already in use")]
    DuplicateNode(NodeId),
    #[error("edge id {0} is already in use")]
    DuplicateEdge(EdgeId),
    #[error("node {0} still has incident edges")]
    Dangling(NodeId),
}

/// Directed graph with integer-indexed nodes and edges. Edges may be
/// parallel; every edge's endpoints exist.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabeledGraph {
    nodes: BTreeMap<NodeId, GraphNode>,
    edges: BTreeMap<EdgeId, GraphEdge>,
    outgoing: BTreeMap<NodeId, BTreeSet<EdgeId>>,
    incoming: BTreeMap<NodeId, BTreeSet<EdgeId>>,
    next_node_id: NodeId,
    next_edge_id: EdgeId,
}

impl LabeledGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn next_node_id(&self) -> NodeId {
        self.next_node_id
    }

    pub fn next_edge_id(&self) -> EdgeId {
        self.next_edge_id
    }

    pub fn add_node(&mut self, label: impl Into<Label>, mark: Mark) -> NodeId {
        let id = self.next_node_id;
        self.insert_node(GraphNode { id, label: label.into(), mark }).expect("fresh node id");
        id
    }

    /// Inserts a node with a caller-chosen id.
    pub fn insert_node(&mut self, node: GraphNode) -> Result<(), GraphError> {
        if self.nodes.contains_key(&node.id) {
            return Err(GraphError::DuplicateNode(node.id));
        }
        self.next_node_id = self.next_node_id.max(node.id + 1);
        self.outgoing.insert(node.id, BTreeSet::new());
        self.incoming.insert(node.id, BTreeSet::new());
        self.nodes.insert(node.id, node);
        Ok(())
    }

    pub fn add_edge(&mut self, src: NodeId, tgt: NodeId, label: impl Into<Label>) -> Result<EdgeId, GraphError> {
        let id = self.next_edge_id;
        self.insert_edge(GraphEdge { id, src, tgt, label: label.into() })?;
        Ok(id)
    }

    pub fn insert_edge(&mut self, edge: GraphEdge) -> Result<(), GraphError> {
        if self.edges.contains_key(&edge.id) {
            return Err(GraphError::DuplicateEdge(edge.id));
        }
        for end in [edge.src, edge.tgt] {
            if !self.nodes.contains_key(&end) {
                return Err(GraphError::MissingNode(end));
            }
        }
        self.next_edge_id = self.next_edge_id.max(edge.id + 1);
        self.outgoing.get_mut(&edge.src).unwrap().insert(edge.id);
        self.incoming.get_mut(&edge.tgt).unwrap().insert(edge.id);
        self.edges.insert(edge.id, edge);
        Ok(())
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<GraphEdge, GraphError> {
        let edge = self.edges.remove(&id).ok_or(GraphError::MissingEdge(id))?;
        self.outgoing.get_mut(&edge.src).unwrap().remove(&id);
        self.incoming.get_mut(&edge.tgt).unwrap().remove(&id);
        Ok(edge)
    }

    /// Removes an isolated node; refuses if any edge is still incident.
    pub fn remove_node(&mut self, id: NodeId) -> Result<GraphNode, GraphError> {
        if !self.nodes.contains_key(&id) {
            return Err(GraphError::MissingNode(id));
        }
        if self.degree(id) > 0 {
            return Err(GraphError::Dangling(id));
        }
        self.outgoing.remove(&id);
        self.incoming.remove(&id);
        Ok(self.nodes.remove(&id).unwrap())
    }

    pub fn node(&self, id: NodeId) -> Option<&GraphNode> {
        self.nodes.get(&id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&GraphEdge> {
        self.edges.get(&id)
    }

    pub fn node_mut(&mut self, id: NodeId) -> Option<&mut GraphNode> {
        self.nodes.get_mut(&id)
    }

    pub fn set_edge_label(&mut self, id: EdgeId, label: Label) -> Result<(), GraphError> {
        self.edges.get_mut(&id).ok_or(GraphError::MissingEdge(id))?.label = label;
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes.values()
    }

    pub fn edges(&self) -> impl Iterator<Item = &GraphEdge> {
        self.edges.values()
    }

    pub fn out_edges(&self, id: NodeId) -> impl Iterator<Item = &GraphEdge> {
        self.outgoing.get(&id).into_iter().flatten().map(|e| &self.edges[e])
    }

    pub fn in_edges(&self, id: NodeId) -> impl Iterator<Item = &GraphEdge> {
        self.incoming.get(&id).into_iter().flatten().map(|e| &self.edges[e])
    }

    pub fn degree(&self, id: NodeId) -> usize {
        self.outgoing.get(&id).map_or(0, BTreeSet::len) + self.incoming.get(&id).map_or(0, BTreeSet::len)
    }

    /// Ids of all edges incident to `id`, in either direction.
    pub fn incident_edges(&self, id: NodeId) -> impl Iterator<Item = EdgeId> + '_ {
        self.outgoing
            .get(&id)
            .into_iter()
            .flatten()
            .chain(self.incoming.get(&id).into_iter().flatten())
            .copied()
    }

    pub fn count_marked(&self, mark: Mark) -> usize {
        self.nodes.values().filter(|n| n.mark == mark).count()
    }

    /// Checks structural invariants: unique ids, edges with existing
    /// endpoints, consistent incidence index.
    pub fn check_invariants(&self) -> Result<(), String> {
        for e in self.edges.values() {
            for end in [e.src, e.tgt] {
                if !self.nodes.contains_key(&end) {
                    return Err(format!("edge {} has missing endpoint {}", e.id, end));
                }
            }
            if !self.outgoing[&e.src].contains(&e.id) || !self.incoming[&e.tgt].contains(&e.id) {
                return Err(format!("edge {} missing from the incidence index", e.id));
            }
        }
        for (id, out) in &self.outgoing {
            if !self.nodes.contains_key(id) {
                return Err(format!("incidence entry for missing node {id}"));
            }
            if out.iter().any(|e| self.edges.get(e).map(|e| e.src) != Some(*id)) {
                return Err(format!("stale outgoing entry at node {id}"));
            }
        }
        if self.nodes.keys().any(|&n| n >= self.next_node_id) || self.edges.keys().any(|&e| e >= self.next_edge_id) {
            return Err("id counters behind existing ids".into());
        }
        Ok(())
    }

    /// Copy with node and edge ids compacted to `0..n` in their existing
    /// order. Two graphs equal after renumbering differ only in id choice.
    pub fn renumbered(&self) -> LabeledGraph {
        let node_map: BTreeMap<NodeId, NodeId> =
            self.nodes.keys().enumerate().map(|(i, &id)| (id, i as NodeId)).collect();
        let mut g = LabeledGraph::new();
        for n in self.nodes.values() {
            g.insert_node(GraphNode { id: node_map[&n.id], label: n.label.clone(), mark: n.mark }).unwrap();
        }
        for (i, e) in self.edges.values().enumerate() {
            g.insert_edge(GraphEdge {
                id: i as EdgeId,
                src: node_map[&e.src],
                tgt: node_map[&e.tgt],
                label: e.label.clone(),
            })
            .unwrap();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removing_a_node_with_edges_is_refused() {
        let mut g = LabeledGraph::new();
        let a = g.add_node("a", Mark::None);
        let b = g.add_node("b", Mark::Red);
        let e = g.add_edge(a, b, 1).unwrap();
        assert_eq!(g.remove_node(b), Err(GraphError::Dangling(b)));
        g.remove_edge(e).unwrap();
        g.remove_node(b).unwrap();
        assert_eq!(g.node_count(), 1);
        g.check_invariants().unwrap();
    }

    #[test]
    fn edges_need_endpoints() {
        let mut g = LabeledGraph::new();
        let a = g.add_node(1, Mark::None);
        assert_eq!(g.add_edge(a, 7, 1), Err(GraphError::MissingNode(7)));
    }

    #[test]
    fn ids_are_never_reused() {
        let mut g = LabeledGraph::new();
        let a = g.add_node("a", Mark::None);
        g.remove_node(a).unwrap();
        assert_eq!(g.add_node("b", Mark::None), a + 1);
    }

    #[test]
    fn renumbering_compacts_ids() {
        let mut g = LabeledGraph::new();
        let a = g.add_node("a", Mark::None);
        let b = g.add_node("b", Mark::None);
        let c = g.add_node("c", Mark::None);
        g.add_edge(a, c, 1).unwrap();
        g.remove_node(b).unwrap();
        let r = g.renumbered();
        assert_eq!(r.node(1).unwrap().label, Atom::str("c"));
        assert_eq!(r.edge(0).unwrap().tgt, 1);
    }
}
