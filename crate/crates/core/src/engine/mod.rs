//! GP2-style graph rewriting: rules with typed label variables and node
//! interfaces, injective matching under the dangling condition, and a small
//! control language (sequence, choice, as-long-as-possible, try).

mod apply;
mod matcher;
mod parse;
mod program;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::essence::ParseError;
use crate::graph::{Atom, EdgeId, NodeId};

pub use apply::apply;
pub use matcher::{find_first_match, find_matches};
pub use parse::{parse_program, parse_rule_file};
pub use program::{run, run_with_trace, Applied, RunError, RunOutcome, DEFAULT_FUEL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarType {
    String,
    Int,
    Any,
}

impl VarType {
    pub fn admits(self, a: &Atom) -> bool {
        matches!((self, a), (VarType::Any, _) | (VarType::String, Atom::Str(_)) | (VarType::Int, Atom::Int(_)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub ty: VarType,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LabelPattern {
    Literal(Atom),
    Var(String),
}

impl LabelPattern {
    pub fn lit(a: impl Into<Atom>) -> Self {
        LabelPattern::Literal(a.into())
    }

    pub fn var(name: impl Into<String>) -> Self {
        LabelPattern::Var(name.into())
    }

    fn var_name(&self) -> Option<&str> {
        match self {
            LabelPattern::Var(v) => Some(v),
            LabelPattern::Literal(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MarkPattern {
    #[default]
    MustBeNone,
    MustBeRed,
    /// Left-hand sides only.
    AnyMark,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternNode {
    pub id: String,
    pub label: LabelPattern,
    pub mark: MarkPattern,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternEdge {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub label: LabelPattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternGraph {
    pub nodes: Vec<PatternNode>,
    pub edges: Vec<PatternEdge>,
}

impl PatternGraph {
    pub fn node(&self, id: &str) -> Option<&PatternNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&PatternEdge> {
        self.edges.iter().find(|e| e.id == id)
    }

    fn labels(&self) -> impl Iterator<Item = &LabelPattern> {
        self.nodes.iter().map(|n| &n.label).chain(self.edges.iter().map(|e| &e.label))
    }
}

/// A validated rewrite rule. Edges whose id occurs on both sides with the
/// same (interface) endpoints are preserved and only relabelled; every other
/// LHS edge is deleted and every other RHS edge created.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub params: Vec<Param>,
    pub lhs: PatternGraph,
    pub rhs: PatternGraph,
    pub interface: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("rule `{rule}`: variable `{var}` is not declared{context}")]
    UndeclaredVariable { rule: String, var: String, context: String },
    #[error("rule `{rule}`: {detail}")]
    InterfaceMismatch { rule: String, detail: String },
    #[error("rule `{rule}`: {detail}")]
    Malformed { rule: String, detail: String },
    #[error("program refers to unknown rule or procedure `{0}`")]
    UnknownName(String),
}

impl Rule {
    pub fn new(
        name: impl Into<String>,
        params: Vec<Param>,
        lhs: PatternGraph,
        rhs: PatternGraph,
        interface: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Rule, RuleError> {
        let rule = Rule { name: name.into(), params, lhs, rhs, interface: interface.into_iter().map(Into::into).collect() };
        rule.validate()?;
        Ok(rule)
    }

    pub fn param(&self, name: &str) -> Option<&Param> {
        self.params.iter().find(|p| p.name == name)
    }

    fn validate(&self) -> Result<(), RuleError> {
        let malformed = |detail: String| Err(RuleError::Malformed { rule: self.name.clone(), detail });
        let mismatch = |detail: String| Err(RuleError::InterfaceMismatch { rule: self.name.clone(), detail });
        let mut names = BTreeSet::new();
        for p in &self.params {
            if !names.insert(p.name.as_str()) {
                return malformed(format!("parameter `{}` is declared twice", p.name));
            }
        }
        for (side, g) in [("left", &self.lhs), ("right", &self.rhs)] {
            let mut ids = BTreeSet::new();
            for n in &g.nodes {
                if !ids.insert(n.id.as_str()) {
                    return malformed(format!("node id `{}` repeats on the {side}-hand side", n.id));
                }
            }
            let mut eids = BTreeSet::new();
            for e in &g.edges {
                if !eids.insert(e.id.as_str()) {
                    return malformed(format!("edge id `{}` repeats on the {side}-hand side", e.id));
                }
                for end in [&e.src, &e.tgt] {
                    if g.node(end).is_none() {
                        return malformed(format!("edge `{}` refers to unknown node `{end}`", e.id));
                    }
                }
            }
            for v in g.labels().filter_map(LabelPattern::var_name) {
                if self.param(v).is_none() {
                    return Err(RuleError::UndeclaredVariable {
                        rule: self.name.clone(),
                        var: v.to_string(),
                        context: String::new(),
                    });
                }
            }
        }
        if self.rhs.nodes.iter().any(|n| n.mark == MarkPattern::AnyMark) {
            return malformed("`# any` is only allowed on the left-hand side".to_string());
        }
        let lhs_vars: BTreeSet<&str> = self.lhs.labels().filter_map(LabelPattern::var_name).collect();
        if let Some(v) = self.rhs.labels().filter_map(LabelPattern::var_name).find(|v| !lhs_vars.contains(v)) {
            return Err(RuleError::UndeclaredVariable {
                rule: self.name.clone(),
                var: v.to_string(),
                context: " on the left-hand side".to_string(),
            });
        }
        for i in &self.interface {
            if self.lhs.node(i).is_none() || self.rhs.node(i).is_none() {
                return mismatch(format!("interface node `{i}` must appear on both sides"));
            }
        }
        for n in &self.rhs.nodes {
            if !self.interface.contains(&n.id) && self.lhs.node(&n.id).is_some() {
                return mismatch(format!("node `{}` appears on both sides but not in the interface", n.id));
            }
        }
        for e in &self.rhs.edges {
            if let Some(l) = self.lhs.edge(&e.id) {
                if l.src != e.src || l.tgt != e.tgt {
                    return mismatch(format!("edge `{}` changes its endpoints", e.id));
                }
                if !self.interface.contains(&e.src) || !self.interface.contains(&e.tgt) {
                    return mismatch(format!("preserved edge `{}` must join interface nodes", e.id));
                }
            }
        }
        Ok(())
    }

    /// True when the edge is kept (same id and endpoints on both sides).
    pub fn preserves_edge(&self, id: &str) -> bool {
        self.lhs.edge(id).is_some() && self.rhs.edge(id).is_some()
    }
}

/// A rule application site.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Match {
    pub node_map: BTreeMap<String, NodeId>,
    pub edge_map: BTreeMap<String, EdgeId>,
    pub assignment: BTreeMap<String, Atom>,
}

impl fmt::Display for Match {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.node_map.iter().map(|(k, v)| format!("{k}->{v}")).collect();
        let vars: Vec<String> = self.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", nodes.join(" "))?;
        if !vars.is_empty() {
            write!(f, " [{}]", vars.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleProgram {
    /// A rule or a named procedure.
    Call(String),
    Seq(Vec<RuleProgram>),
    /// Tries the named rules in order; the first with a match is applied.
    Choice(Vec<String>),
    /// As long as possible.
    Loop(Box<RuleProgram>),
    Try(Box<RuleProgram>),
}

impl RuleProgram {
    pub fn call(name: impl Into<String>) -> Self {
        RuleProgram::Call(name.into())
    }

    pub fn looped(p: RuleProgram) -> Self {
        RuleProgram::Loop(Box::new(p))
    }

    pub fn try_(p: RuleProgram) -> Self {
        RuleProgram::Try(Box::new(p))
    }

    fn names(&self, out: &mut Vec<String>) {
        match self {
            RuleProgram::Call(n) => out.push(n.clone()),
            RuleProgram::Choice(ns) => out.extend(ns.iter().cloned()),
            RuleProgram::Seq(ps) => ps.iter().for_each(|p| p.names(out)),
            RuleProgram::Loop(p) | RuleProgram::Try(p) => p.names(out),
        }
    }
}

impl fmt::Display for RuleProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleProgram::Call(n) => f.write_str(n),
            RuleProgram::Seq(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", parts.join("; "))
            }
            RuleProgram::Choice(ns) => write!(f, "{{{}}}", ns.join(", ")),
            RuleProgram::Loop(p) => write!(f, "{p}!"),
            RuleProgram::Try(p) => write!(f, "try {p}"),
        }
    }
}

/// Rules, named procedures and an optional `Main` program.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleSet {
    pub rules: BTreeMap<String, Rule>,
    pub procedures: BTreeMap<String, RuleProgram>,
    pub main: Option<RuleProgram>,
}

impl RuleSet {
    /// Adds another set; its rules, procedures and `Main` win on name clashes.
    pub fn merge(&mut self, other: RuleSet) {
        self.rules.extend(other.rules);
        self.procedures.extend(other.procedures);
        if other.main.is_some() {
            self.main = other.main;
        }
    }

    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.get(name)
    }

    /// Checks that every name used by a program resolves.
    pub fn validate(&self) -> Result<(), RuleError> {
        let mut names = Vec::new();
        for p in self.procedures.values().chain(self.main.iter()) {
            p.names(&mut names);
        }
        match names.into_iter().find(|n| !self.rules.contains_key(n) && !self.procedures.contains_key(n)) {
            Some(n) => Err(RuleError::UnknownName(n)),
            None => Ok(()),
        }
    }
}
