//! Injective backtracking matcher. Nodes are visited in a plan that starts
//! from the most selective literal-labelled node and then follows pattern
//! edges, so most candidates come from host adjacency rather than a scan.

use std::collections::HashMap;

use super::*;
use crate::graph::{LabeledGraph, Mark};

/// All matches of `rule` in `host`, in canonical order: by the sorted image
/// node ids, then node map, then edge map (each in pattern declaration order).
pub fn find_matches(rule: &Rule, host: &LabeledGraph) -> Vec<Match> {
    let mut out = Vec::new();
    Search::new(rule, host).run(&mut |m| {
        out.push(m);
        true
    });
    out.sort_by_cached_key(|m| canonical_key(rule, m));
    out
}

/// The first match in canonical order, if any.
pub fn find_first_match(rule: &Rule, host: &LabeledGraph) -> Option<Match> {
    find_matches(rule, host).into_iter().next()
}

fn canonical_key(rule: &Rule, m: &Match) -> (Vec<NodeId>, Vec<NodeId>, Vec<EdgeId>) {
    let nodes: Vec<NodeId> = rule.lhs.nodes.iter().map(|n| m.node_map[&n.id]).collect();
    let edges: Vec<EdgeId> = rule.lhs.edges.iter().map(|e| m.edge_map[&e.id]).collect();
    let mut sorted = nodes.clone();
    sorted.sort_unstable();
    (sorted, nodes, edges)
}

#[derive(Clone, Copy)]
enum Step {
    Node(usize),
    Edge(usize),
}

struct Search<'a> {
    rule: &'a Rule,
    host: &'a LabeledGraph,
    plan: Vec<Step>,
    /// pattern edge index -> (src idx, tgt idx)
    ends: Vec<(usize, usize)>,
    /// For node steps: a pattern edge joining the node to an earlier one.
    anchor: Vec<Option<usize>>,
    by_label: HashMap<&'a Atom, Vec<NodeId>>,
    node_img: Vec<Option<NodeId>>,
    edge_img: Vec<Option<EdgeId>>,
    used_nodes: Vec<NodeId>,
    used_edges: Vec<EdgeId>,
    vars: BTreeMap<&'a str, Atom>,
}

impl<'a> Search<'a> {
    fn new(rule: &'a Rule, host: &'a LabeledGraph) -> Self {
        let lhs = &rule.lhs;
        let idx: HashMap<&str, usize> = lhs.nodes.iter().enumerate().map(|(i, n)| (n.id.as_str(), i)).collect();
        let ends: Vec<(usize, usize)> = lhs.edges.iter().map(|e| (idx[e.src.as_str()], idx[e.tgt.as_str()])).collect();
        let mut by_label: HashMap<&Atom, Vec<NodeId>> = HashMap::new();
        for n in host.nodes() {
            by_label.entry(&n.label).or_default().push(n.id);
        }
        let selectivity = |i: usize| match &lhs.nodes[i].label {
            LabelPattern::Literal(a) => by_label.get(a).map_or(0, Vec::len),
            LabelPattern::Var(_) => usize::MAX,
        };

        // Plan: repeatedly seed from the most selective unplanned node, then
        // grow breadth-first along pattern edges.
        let k = lhs.nodes.len();
        let mut planned = vec![false; k];
        let mut edge_planned = vec![false; ends.len()];
        let mut plan = Vec::new();
        let mut anchor = vec![None; k];
        while let Some(seed) = (0..k).filter(|&i| !planned[i]).min_by_key(|&i| (selectivity(i), i)) {
            let mut queue = std::collections::VecDeque::from([seed]);
            planned[seed] = true;
            while let Some(n) = queue.pop_front() {
                plan.push(Step::Node(n));
                for (ei, &(s, t)) in ends.iter().enumerate() {
                    if !edge_planned[ei] && (s == n || t == n) && plan_has(&plan, s) && plan_has(&plan, t) {
                        edge_planned[ei] = true;
                        plan.push(Step::Edge(ei));
                    }
                }
                for (ei, &(s, t)) in ends.iter().enumerate() {
                    let other = if s == n { t } else if t == n { s } else { continue };
                    if !planned[other] {
                        planned[other] = true;
                        anchor[other] = Some(ei);
                        queue.push_back(other);
                    }
                }
            }
        }
        Search {
            rule,
            host,
            plan,
            ends,
            anchor,
            by_label,
            node_img: vec![None; k],
            edge_img: vec![None; lhs.edges.len()],
            used_nodes: Vec::new(),
            used_edges: Vec::new(),
            vars: BTreeMap::new(),
        }
    }

    fn run(&mut self, emit: &mut dyn FnMut(Match) -> bool) {
        self.step(0, emit);
    }

    /// Returns false to abort the search.
    fn step(&mut self, at: usize, emit: &mut dyn FnMut(Match) -> bool) -> bool {
        let Some(&step) = self.plan.get(at) else {
            if self.dangling_ok() {
                return emit(self.current());
            }
            return true;
        };
        match step {
            Step::Node(i) => {
                let (rule, host) = (self.rule, self.host);
                let pn = &rule.lhs.nodes[i];
                for cand in self.node_candidates(i) {
                    if self.used_nodes.contains(&cand) {
                        continue;
                    }
                    let hn = host.node(cand).unwrap();
                    let mark_ok = match pn.mark {
                        MarkPattern::MustBeNone => hn.mark == Mark::None,
                        MarkPattern::MustBeRed => hn.mark == Mark::Red,
                        MarkPattern::AnyMark => true,
                    };
                    if !mark_ok {
                        continue;
                    }
                    let Some(bound) = self.bind(&pn.label, &hn.label) else { continue };
                    self.node_img[i] = Some(cand);
                    self.used_nodes.push(cand);
                    let go_on = self.step(at + 1, emit);
                    self.used_nodes.pop();
                    self.node_img[i] = None;
                    if let Some(v) = bound {
                        self.vars.remove(v);
                    }
                    if !go_on {
                        return false;
                    }
                }
                true
            }
            Step::Edge(ei) => {
                let (s, t) = self.ends[ei];
                let (hs, ht) = (self.node_img[s].unwrap(), self.node_img[t].unwrap());
                let (rule, host) = (self.rule, self.host);
                let cands: Vec<EdgeId> = host.out_edges(hs).filter(|e| e.tgt == ht).map(|e| e.id).collect();
                for cand in cands {
                    if self.used_edges.contains(&cand) {
                        continue;
                    }
                    let label = &host.edge(cand).unwrap().label;
                    let Some(bound) = self.bind(&rule.lhs.edges[ei].label, label) else { continue };
                    self.edge_img[ei] = Some(cand);
                    self.used_edges.push(cand);
                    let go_on = self.step(at + 1, emit);
                    self.used_edges.pop();
                    self.edge_img[ei] = None;
                    if let Some(v) = bound {
                        self.vars.remove(v);
                    }
                    if !go_on {
                        return false;
                    }
                }
                true
            }
        }
    }

    fn node_candidates(&self, i: usize) -> Vec<NodeId> {
        if let Some(ei) = self.anchor[i] {
            let (s, t) = self.ends[ei];
            let mut v: Vec<NodeId> = if t == i {
                self.host.out_edges(self.node_img[s].unwrap()).map(|e| e.tgt).collect()
            } else {
                self.host.in_edges(self.node_img[t].unwrap()).map(|e| e.src).collect()
            };
            v.sort_unstable();
            v.dedup();
            return v;
        }
        match &self.rule.lhs.nodes[i].label {
            LabelPattern::Literal(a) => self.by_label.get(a).cloned().unwrap_or_default(),
            LabelPattern::Var(_) => self.host.nodes().map(|n| n.id).collect(),
        }
    }

    /// Checks a label against a pattern, extending the assignment. Returns
    /// `Some(Some(var))` when a new variable was bound.
    fn bind(&mut self, pat: &'a LabelPattern, label: &Atom) -> Option<Option<&'a str>> {
        match pat {
            LabelPattern::Literal(a) => (a == label).then_some(None),
            LabelPattern::Var(v) => match self.vars.get(v.as_str()) {
                Some(b) => (b == label).then_some(None),
                None => {
                    let ty = self.rule.param(v).map_or(VarType::Any, |p| p.ty);
                    if !ty.admits(label) {
                        return None;
                    }
                    self.vars.insert(v.as_str(), label.clone());
                    Some(Some(v.as_str()))
                }
            },
        }
    }

    fn dangling_ok(&self) -> bool {
        self.rule.lhs.nodes.iter().enumerate().all(|(i, n)| {
            self.rule.interface.contains(&n.id)
                || self.host.incident_edges(self.node_img[i].unwrap()).all(|e| self.used_edges.contains(&e))
        })
    }

    fn current(&self) -> Match {
        let lhs = &self.rule.lhs;
        Match {
            node_map: lhs.nodes.iter().zip(&self.node_img).map(|(n, h)| (n.id.clone(), h.unwrap())).collect(),
            edge_map: lhs.edges.iter().zip(&self.edge_img).map(|(e, h)| (e.id.clone(), h.unwrap())).collect(),
            assignment: self.vars.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

fn plan_has(plan: &[Step], n: usize) -> bool {
    plan.iter().any(|s| matches!(s, Step::Node(m) if *m == n))
}
