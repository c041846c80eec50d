//! Random generators and brute-force oracles shared by the property tests
//! and the acceptance suite.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::engine::{
    apply, find_matches, run, LabelPattern, MarkPattern, Match, Param, PatternEdge, PatternGraph, PatternNode, Rule,
    RuleProgram, RuleSet, RunError, VarType,
};
use crate::essence::{
    AttrName, Attribute, Binder, DeclKind, Declaration, Domain, Expr, BinOp, QuantSource, Specification,
};
use crate::graph::{Atom, LabeledGraph, Mark, NodeId};

// ---------------------------------------------------------------------------
// Specifications

#[derive(Clone, Copy, PartialEq)]
enum Local {
    Int,
    Pair,
}

/// Builds well-scoped random specifications over the supported subset.
/// Expressions are loosely typed: scoping is exact, semantics are not.
struct SpecGen<'r, R: Rng> {
    rng: &'r mut R,
    ints: Vec<String>,
    int_domains: Vec<String>,
    set_domains: Vec<String>,
    sets: Vec<String>,
    rels: Vec<String>,
    funs: Vec<String>,
    set_funs: Vec<String>,
    locals: Vec<(String, Local)>,
    fresh: usize,
}

impl<R: Rng> SpecGen<'_, R> {
    fn name(&mut self, prefix: &str) -> String {
        self.fresh += 1;
        format!("{prefix}{}", self.fresh)
    }

    fn lit(&mut self) -> Expr {
        Expr::Int(self.rng.random_range(0..10))
    }

    fn pick(&mut self, names: &[String]) -> Option<String> {
        names.choose(self.rng).cloned()
    }

    fn int_leaf(&mut self) -> Expr {
        let locals: Vec<(String, Local)> = self.locals.clone();
        match self.rng.random_range(0..4) {
            0 if !self.ints.is_empty() => Expr::Ident(self.pick(&self.ints.clone()).unwrap()),
            1 if !locals.is_empty() => {
                let (n, k) = locals.choose(self.rng).unwrap().clone();
                match k {
                    Local::Int => Expr::Ident(n),
                    Local::Pair => Expr::index(Expr::Ident(n), self.rng.random_range(1..=2)),
                }
            }
            _ => self.lit(),
        }
    }

    fn int_expr(&mut self, depth: u32) -> Expr {
        if depth == 0 {
            return self.int_leaf();
        }
        match self.rng.random_range(0..9) {
            0 => Expr::bin(BinOp::Add, self.int_expr(depth - 1), self.int_expr(depth - 1)),
            1 => Expr::bin(BinOp::Sub, self.int_expr(depth - 1), self.int_expr(depth - 1)),
            2 => Expr::bin(BinOp::Mul, self.int_expr(depth - 1), self.int_expr(depth - 1)),
            3 => Expr::ToInt(Box::new(self.bool_expr(depth - 1))),
            4 if !self.funs.is_empty() => {
                let f = self.pick(&self.funs.clone()).unwrap();
                Expr::apply(f, vec![self.int_expr(depth - 1)])
            }
            5 => {
                let (binder, source) = self.quant_source();
                let body = self.with_binder(&binder, |g| g.int_expr(depth - 1));
                Expr::sum(binder, source, body)
            }
            _ => self.int_leaf(),
        }
    }

    fn set_expr(&mut self, depth: u32) -> Option<Expr> {
        let mut options: Vec<Expr> = self.sets.iter().map(|s| Expr::ident(s.clone())).collect();
        for f in self.funs.clone().into_iter().chain(self.set_funs.clone()) {
            options.push(Expr::Defined(Box::new(Expr::ident(f))));
        }
        if depth > 0 {
            for f in self.set_funs.clone() {
                options.push(Expr::apply(f, vec![self.int_expr(depth - 1)]));
            }
        }
        options.choose(self.rng).cloned()
    }

    /// A binder and its source, with the binder names not yet in scope.
    fn quant_source(&mut self) -> (Binder, QuantSource) {
        let choice = self.rng.random_range(0..4);
        if choice == 0 && !self.rels.is_empty() {
            let r = self.pick(&self.rels.clone()).unwrap();
            let binder = Binder::Tuple(vec![self.name("u"), self.name("v")]);
            return (binder, QuantSource::Expr(Box::new(Expr::ident(r))));
        }
        if choice == 1 && !self.rels.is_empty() {
            let r = self.pick(&self.rels.clone()).unwrap();
            return (Binder::Name(self.name("p")), QuantSource::Expr(Box::new(Expr::ident(r))));
        }
        if choice == 2 {
            if let Some(s) = self.set_expr(1) {
                return (Binder::Name(self.name("x")), QuantSource::Expr(Box::new(s)));
            }
        }
        let d = self.int_domain(false);
        (Binder::Name(self.name("i")), QuantSource::Domain(d))
    }

    fn with_binder<T>(&mut self, binder: &Binder, f: impl FnOnce(&mut Self) -> T) -> T {
        let mark = self.locals.len();
        match binder {
            Binder::Name(n) if n.starts_with('p') => self.locals.push((n.clone(), Local::Pair)),
            Binder::Name(n) => self.locals.push((n.clone(), Local::Int)),
            Binder::Tuple(ns) => self.locals.extend(ns.iter().map(|n| (n.clone(), Local::Int))),
        }
        let out = f(self);
        self.locals.truncate(mark);
        out
    }

    fn bool_expr(&mut self, depth: u32) -> Expr {
        let d = depth.saturating_sub(1);
        match self.rng.random_range(0..12) {
            0 => Expr::bin(BinOp::Eq, self.int_expr(d), self.int_expr(d)),
            1 => Expr::bin(BinOp::Neq, self.int_expr(d), self.int_expr(d)),
            2 if depth > 0 => Expr::negate(self.bool_expr(d)),
            3 if depth > 0 => Expr::bin(BinOp::And, self.bool_expr(d), self.bool_expr(d)),
            4 if depth > 0 => Expr::bin(BinOp::Implies, self.bool_expr(d), self.bool_expr(d)),
            5 if !self.rels.is_empty() => {
                let r = self.pick(&self.rels.clone()).unwrap();
                let t = Expr::Tuple(vec![self.int_expr(d), self.int_expr(d)]);
                Expr::bin(BinOp::In, t, Expr::ident(r))
            }
            6 if !self.rels.is_empty() => {
                let r = self.pick(&self.rels.clone()).unwrap();
                Expr::apply(r, vec![self.int_expr(d), self.int_expr(d)])
            }
            7 => match self.set_expr(d) {
                Some(s) => Expr::bin(BinOp::In, self.int_expr(d), s),
                None => self.int_comparison(d),
            },
            8 => match (self.set_expr(d), self.set_expr(d)) {
                (Some(a), Some(b)) => Expr::bin(BinOp::Eq, Expr::bin(BinOp::Intersect, a, b), Expr::EmptySet),
                _ => self.int_comparison(d),
            },
            9 | 10 if depth > 0 => {
                let (binder, source) = self.quant_source();
                let body = self.with_binder(&binder, |g| g.bool_expr(d));
                Expr::for_all(binder, source, body)
            }
            _ => self.int_comparison(d),
        }
    }

    fn int_comparison(&mut self, d: u32) -> Expr {
        Expr::bin(BinOp::Eq, self.int_expr(d), self.int_expr(d))
    }

    fn bound(&mut self) -> Expr {
        if !self.ints.is_empty() && self.rng.random_bool(0.5) {
            let n = self.pick(&self.ints.clone()).unwrap();
            if self.rng.random_bool(0.5) {
                return Expr::bin(BinOp::Sub, Expr::ident(n), Expr::Int(1));
            }
            return Expr::ident(n);
        }
        self.lit()
    }

    fn int_domain(&mut self, allow_open: bool) -> Domain {
        if !self.int_domains.is_empty() && self.rng.random_bool(0.4) {
            return Domain::Named(self.pick(&self.int_domains.clone()).unwrap());
        }
        match self.rng.random_range(0..6) {
            0 if allow_open => Domain::IntUnbounded,
            1 if allow_open => Domain::int_range(Some(self.lit()), None),
            _ => {
                let lo = self.bound();
                let hi = self.bound();
                Domain::int_range(Some(lo), Some(hi))
            }
        }
    }

    fn size_attr(&mut self) -> Vec<Attribute> {
        if self.rng.random_bool(0.5) {
            vec![Attribute::size(self.int_expr(1))]
        } else {
            vec![]
        }
    }

    fn declaration(&mut self) -> Declaration {
        match self.rng.random_range(0..9) {
            0 | 1 => {
                let n = self.name("n");
                let d = self.int_domain(true);
                self.ints.push(n.clone());
                Declaration::given(n, d)
            }
            2 => {
                let n = self.name("D");
                let d = self.int_domain(false);
                self.int_domains.push(n.clone());
                Declaration::letting_domain(n, d)
            }
            3 => {
                let n = self.name("k");
                let e = self.int_expr(2);
                self.ints.push(n.clone());
                Declaration::letting_value(n, e)
            }
            4 => {
                let n = self.name("s");
                let attrs = self.size_attr();
                let d = Domain::Set { attrs, element: Box::new(self.int_domain(false)) };
                self.sets.push(n.clone());
                self.decision_or_given(n, d)
            }
            5 => {
                let n = self.name("r");
                let mut attrs = Vec::new();
                if self.rng.random_bool(0.5) {
                    attrs.push(Attribute::flag(AttrName::Irreflexive));
                }
                attrs.extend(self.size_attr());
                let e = self.int_domain(false);
                let d = Domain::Relation { attrs, components: vec![e.clone(), e] };
                self.rels.push(n.clone());
                self.decision_or_given(n, d)
            }
            6 => {
                let n = self.name("S");
                let attrs = self.size_attr();
                let d = Domain::Set { attrs, element: Box::new(self.int_domain(false)) };
                self.set_domains.push(n.clone());
                Declaration::letting_domain(n, d)
            }
            7 if !self.set_domains.is_empty() => {
                let n = self.name("g");
                let to = Domain::Named(self.pick(&self.set_domains.clone()).unwrap());
                let attrs = if self.rng.random_bool(0.5) { vec![Attribute::flag(AttrName::Total)] } else { vec![] };
                let d = Domain::Function { attrs, from: Box::new(self.int_domain(false)), to: Box::new(to) };
                self.set_funs.push(n.clone());
                Declaration::find(n, d)
            }
            _ => {
                let n = self.name("f");
                let attrs = if self.rng.random_bool(0.5) { vec![Attribute::flag(AttrName::Total)] } else { vec![] };
                let d = Domain::Function {
                    attrs,
                    from: Box::new(self.int_domain(false)),
                    to: Box::new(self.int_domain(false)),
                };
                self.funs.push(n.clone());
                Declaration::find(n, d)
            }
        }
    }

    fn decision_or_given(&mut self, n: String, d: Domain) -> Declaration {
        if self.rng.random_bool(0.5) {
            Declaration::find(n, d)
        } else {
            Declaration::given(n, d)
        }
    }
}

/// A random well-scoped specification (no comments).
pub fn random_spec<R: Rng>(rng: &mut R) -> Specification {
    let mut g = SpecGen {
        rng,
        ints: vec![],
        int_domains: vec![],
        set_domains: vec![],
        sets: vec![],
        rels: vec![],
        funs: vec![],
        set_funs: vec![],
        locals: vec![],
        fresh: 0,
    };
    let mut spec = Specification::default();
    let decls = g.rng.random_range(0..8);
    for _ in 0..decls {
        let d = g.declaration();
        spec.declarations.push(d);
    }
    let constraints = g.rng.random_range(0..4);
    for _ in 0..constraints {
        let e = g.bool_expr(3);
        spec.constraints.push(e);
    }
    debug_assert!(spec.declarations.iter().all(|d| d.kind != DeclKind::Given || d.domain().is_some()));
    spec
}

// ---------------------------------------------------------------------------
// Rules and host graphs

const STRINGS: [&str; 3] = ["a", "b", "c"];

fn random_atom<R: Rng>(rng: &mut R) -> Atom {
    if rng.random_bool(0.6) {
        Atom::from(*STRINGS.choose(rng).unwrap())
    } else {
        Atom::Int(rng.random_range(0..3))
    }
}

fn random_mark<R: Rng>(rng: &mut R) -> Mark {
    if rng.random_bool(0.25) {
        Mark::Red
    } else {
        Mark::None
    }
}

/// A random valid rule with at most 3 left-hand nodes and 3 edges.
pub fn random_rule<R: Rng>(rng: &mut R) -> Rule {
    let mut params: Vec<Param> = Vec::new();
    let label = |rng: &mut R, params: &mut Vec<Param>| {
        if rng.random_bool(0.35) {
            let name = format!("x{}", params.len());
            let ty = *[VarType::String, VarType::Int, VarType::Any].choose(rng).unwrap();
            params.push(Param { name: name.clone(), ty });
            LabelPattern::Var(name)
        } else if !params.is_empty() && rng.random_bool(0.1) {
            LabelPattern::Var(params.choose(rng).unwrap().name.clone())
        } else {
            LabelPattern::Literal(random_atom(rng))
        }
    };
    let mut lhs = PatternGraph::default();
    let n_lhs = rng.random_range(1..=3);
    for i in 0..n_lhs {
        let l = label(rng, &mut params);
        let mark = match rng.random_range(0..6) {
            0 => MarkPattern::MustBeRed,
            1 => MarkPattern::AnyMark,
            _ => MarkPattern::MustBeNone,
        };
        lhs.nodes.push(PatternNode { id: format!("n{i}"), label: l, mark });
    }
    for i in 0..rng.random_range(0..=3) {
        let src = format!("n{}", rng.random_range(0..n_lhs));
        let tgt = format!("n{}", rng.random_range(0..n_lhs));
        let l = label(rng, &mut params);
        lhs.edges.push(PatternEdge { id: format!("e{i}"), src, tgt, label: l });
    }
    let interface: BTreeSet<String> = lhs.nodes.iter().filter(|_| rng.random_bool(0.6)).map(|n| n.id.clone()).collect();

    let vars: Vec<String> = params.iter().map(|p| p.name.clone()).collect();
    let rhs_label = |rng: &mut R| {
        if !vars.is_empty() && rng.random_bool(0.3) {
            LabelPattern::Var(vars.choose(rng).unwrap().clone())
        } else {
            LabelPattern::Literal(random_atom(rng))
        }
    };
    let rhs_mark = |rng: &mut R| if rng.random_bool(0.3) { MarkPattern::MustBeRed } else { MarkPattern::MustBeNone };
    let mut rhs = PatternGraph::default();
    for n in lhs.nodes.iter().filter(|n| interface.contains(&n.id)) {
        let l = if rng.random_bool(0.5) { n.label.clone() } else { rhs_label(rng) };
        rhs.nodes.push(PatternNode { id: n.id.clone(), label: l, mark: rhs_mark(rng) });
    }
    for i in 0..rng.random_range(0..=2) {
        let (l, m) = (rhs_label(rng), rhs_mark(rng));
        rhs.nodes.push(PatternNode { id: format!("m{i}"), label: l, mark: m });
    }
    for e in &lhs.edges {
        if interface.contains(&e.src) && interface.contains(&e.tgt) && rng.random_bool(0.6) {
            let l = if rng.random_bool(0.5) { e.label.clone() } else { rhs_label(rng) };
            rhs.edges.push(PatternEdge { label: l, ..e.clone() });
        }
    }
    if !rhs.nodes.is_empty() {
        for i in 0..rng.random_range(0..=2) {
            let src = rhs.nodes.choose(rng).unwrap().id.clone();
            let tgt = rhs.nodes.choose(rng).unwrap().id.clone();
            let l = rhs_label(rng);
            rhs.edges.push(PatternEdge { id: format!("f{i}"), src, tgt, label: l });
        }
    }
    Rule::new("r", params, lhs, rhs, interface).expect("generated rules are valid")
}

/// A random host; with `plant` set, an instance of the rule's left-hand
/// side is embedded first so that matches are common.
pub fn random_host<R: Rng>(rng: &mut R, plant: Option<&Rule>) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    if let Some(rule) = plant {
        let mut values: BTreeMap<&str, Atom> = BTreeMap::new();
        for p in &rule.params {
            let v = match p.ty {
                VarType::String => Atom::from(*STRINGS.choose(rng).unwrap()),
                VarType::Int => Atom::Int(rng.random_range(0..3)),
                VarType::Any => random_atom(rng),
            };
            values.insert(&p.name, v);
        }
        let resolve = |l: &LabelPattern| match l {
            LabelPattern::Literal(a) => a.clone(),
            LabelPattern::Var(v) => values[v.as_str()].clone(),
        };
        let mut ids: BTreeMap<&str, NodeId> = BTreeMap::new();
        for n in &rule.lhs.nodes {
            let mark = match n.mark {
                MarkPattern::MustBeRed => Mark::Red,
                MarkPattern::MustBeNone => Mark::None,
                MarkPattern::AnyMark => random_mark(rng),
            };
            ids.insert(&n.id, g.add_node(resolve(&n.label), mark));
        }
        for e in &rule.lhs.edges {
            g.add_edge(ids[e.src.as_str()], ids[e.tgt.as_str()], resolve(&e.label)).unwrap();
        }
    }
    for _ in 0..rng.random_range(0..5) {
        let (l, m) = (random_atom(rng), random_mark(rng));
        g.add_node(l, m);
    }
    let nodes: Vec<NodeId> = g.nodes().map(|n| n.id).collect();
    if !nodes.is_empty() {
        for _ in 0..rng.random_range(0..6) {
            let (s, t) = (*nodes.choose(rng).unwrap(), *nodes.choose(rng).unwrap());
            let l = random_atom(rng);
            g.add_edge(s, t, l).unwrap();
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Oracles

/// Counts matches by exhaustive search over injective node and edge maps,
/// independently of the engine's planner.
pub fn brute_force_match_count(rule: &Rule, host: &LabeledGraph) -> usize {
    let host_nodes: Vec<NodeId> = host.nodes().map(|n| n.id).collect();
    let mut count = 0;
    let mut node_map: Vec<NodeId> = Vec::new();
    fn bind(assign: &mut BTreeMap<String, Atom>, rule: &Rule, pat: &LabelPattern, a: &Atom) -> bool {
        match pat {
            LabelPattern::Literal(l) => l == a,
            LabelPattern::Var(v) => {
                if !rule.param(v).is_some_and(|p| p.ty.admits(a)) {
                    return false;
                }
                match assign.get(v) {
                    Some(b) => b == a,
                    None => {
                        assign.insert(v.clone(), a.clone());
                        true
                    }
                }
            }
        }
    }
    fn edges(
        rule: &Rule,
        host: &LabeledGraph,
        nm: &[NodeId],
        i: usize,
        used: &mut Vec<u32>,
        assign: &BTreeMap<String, Atom>,
    ) -> usize {
        let lhs = &rule.lhs;
        if i == lhs.edges.len() {
            // Dangling: deleted nodes may only touch matched edges.
            for (k, n) in lhs.nodes.iter().enumerate() {
                if !rule.interface.contains(&n.id) && host.incident_edges(nm[k]).any(|e| !used.contains(&e)) {
                    return 0;
                }
            }
            return 1;
        }
        let pe = &lhs.edges[i];
        let idx = |id: &str| lhs.nodes.iter().position(|n| n.id == id).unwrap();
        let (s, t) = (nm[idx(&pe.src)], nm[idx(&pe.tgt)]);
        let mut total = 0;
        for he in host.edges() {
            if used.contains(&he.id) || he.src != s || he.tgt != t {
                continue;
            }
            let mut a = assign.clone();
            if !bind(&mut a, rule, &pe.label, &he.label) {
                continue;
            }
            used.push(he.id);
            total += edges(rule, host, nm, i + 1, used, &a);
            used.pop();
        }
        total
    }
    fn nodes(
        rule: &Rule,
        host: &LabeledGraph,
        host_nodes: &[NodeId],
        nm: &mut Vec<NodeId>,
        assign: &BTreeMap<String, Atom>,
        count: &mut usize,
    ) {
        let lhs = &rule.lhs;
        if nm.len() == lhs.nodes.len() {
            *count += edges(rule, host, nm, 0, &mut Vec::new(), assign);
            return;
        }
        let pn = &lhs.nodes[nm.len()];
        for &h in host_nodes {
            if nm.contains(&h) {
                continue;
            }
            let hn = host.node(h).unwrap();
            let mark_ok = match pn.mark {
                MarkPattern::MustBeNone => hn.mark == Mark::None,
                MarkPattern::MustBeRed => hn.mark == Mark::Red,
                MarkPattern::AnyMark => true,
            };
            let mut a = assign.clone();
            if !mark_ok || !bind(&mut a, rule, &pn.label, &hn.label) {
                continue;
            }
            nm.push(h);
            nodes(rule, host, host_nodes, nm, &a, count);
            nm.pop();
        }
    }
    nodes(rule, host, &host_nodes, &mut node_map, &BTreeMap::new(), &mut count);
    count
}

/// Summary of one checked (rule, host) pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairReport {
    pub matches: usize,
    pub loop_applications_bounded: bool,
}

fn check_match(rule: &Rule, host: &LabeledGraph, m: &Match) -> Result<(), String> {
    let images: BTreeSet<NodeId> = m.node_map.values().copied().collect();
    if images.len() != m.node_map.len() || m.node_map.len() != rule.lhs.nodes.len() {
        return Err(format!("node map is not injective and total: {m}"));
    }
    let eimages: BTreeSet<u32> = m.edge_map.values().copied().collect();
    if eimages.len() != m.edge_map.len() || m.edge_map.len() != rule.lhs.edges.len() {
        return Err(format!("edge map is not injective and total: {m}"));
    }
    for n in &rule.lhs.nodes {
        if rule.interface.contains(&n.id) {
            continue;
        }
        let h = m.node_map[&n.id];
        if let Some(e) = host.incident_edges(h).find(|e| !eimages.contains(e)) {
            return Err(format!("dangling edge {e} on deleted node {h} in match {m}"));
        }
    }
    Ok(())
}

fn check_frame(rule: &Rule, host: &LabeledGraph, m: &Match, out: &LabeledGraph) -> Result<(), String> {
    let images: BTreeSet<NodeId> = m.node_map.values().copied().collect();
    let eimages: BTreeSet<u32> = m.edge_map.values().copied().collect();
    for n in host.nodes().filter(|n| !images.contains(&n.id)) {
        if out.node(n.id) != Some(n) {
            return Err(format!("unmatched node {} changed", n.id));
        }
    }
    for e in host.edges().filter(|e| !eimages.contains(&e.id)) {
        if out.edge(e.id) != Some(e) {
            return Err(format!("unmatched edge {} changed", e.id));
        }
    }
    let deleted = rule.lhs.nodes.len() - rule.interface.len();
    let created = rule.rhs.nodes.len() - rule.interface.len();
    if out.node_count() != host.node_count() - deleted + created {
        return Err(format!("node count {} after applying to {} nodes", out.node_count(), host.node_count()));
    }
    let expected = host.edge_count() - rule.lhs.edges.len() + rule.rhs.edges.len();
    if out.edge_count() != expected {
        return Err(format!("edge count {} after applying, expected {expected}", out.edge_count()));
    }
    out.check_invariants()
}

/// Checks injectivity, the dangling condition, match completeness against
/// the brute-force count, the frame condition for every match, and that an
/// as-long-as-possible loop ends within its fuel with no match left.
pub fn check_pair(rule: &Rule, host: &LabeledGraph, fuel: usize) -> Result<PairReport, String> {
    let matches = find_matches(rule, host);
    let expected = brute_force_match_count(rule, host);
    if matches.len() != expected {
        return Err(format!("engine found {} matches, exhaustive search {}", matches.len(), expected));
    }
    for m in &matches {
        check_match(rule, host, m)?;
        let out = apply(rule, m, host).map_err(|e| format!("apply failed: {e}"))?;
        check_frame(rule, host, m, &out)?;
    }
    let mut rules = RuleSet::default();
    rules.rules.insert(rule.name.clone(), rule.clone());
    let program = RuleProgram::Loop(Box::new(RuleProgram::call(rule.name.clone())));
    let bounded = match run(&program, &rules, host, fuel) {
        Ok(g) => {
            if !find_matches(rule, &g).is_empty() {
                return Err("loop stopped while a match remained".into());
            }
            true
        }
        Err(RunError::FuelExhausted { applications }) => {
            if applications > fuel {
                return Err(format!("{applications} applications exceed fuel {fuel}"));
            }
            // Only rules that never shrink the host may run out of fuel.
            let shrinks = rule.rhs.nodes.len() + rule.rhs.edges.len() < rule.lhs.nodes.len() + rule.lhs.edges.len();
            if shrinks {
                return Err("a shrinking rule exhausted its fuel".into());
            }
            false
        }
        Err(e) => return Err(format!("loop failed: {e}")),
    };
    Ok(PairReport { matches: matches.len(), loop_applications_bounded: bounded })
}
