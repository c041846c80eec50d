use std::collections::BTreeSet;
use std::fmt;

use super::encode::{kinds, KIND_EDGE};
use super::{Atom, LabeledGraph, Mark, NodeId};
use crate::essence::*;

/// The shape rule a malformed graph violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeRule {
    NoRoot,
    Cycle,
    MissingChildPosition,
    DuplicateChildPosition,
    UnknownKind,
    DanglingMark,
    Arity,
    BadLabel,
    Unreachable,
}

impl fmt::Display for ShapeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeRule::NoRoot => "no single root",
            ShapeRule::Cycle => "cycle or shared subtree",
            ShapeRule::MissingChildPosition => "missing child position",
            ShapeRule::DuplicateChildPosition => "duplicate child position",
            ShapeRule::UnknownKind => "unknown kind",
            ShapeRule::DanglingMark => "dangling mark",
            ShapeRule::Arity => "wrong number of children",
            ShapeRule::BadLabel => "bad label",
            ShapeRule::Unreachable => "unreachable node",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}{rule}: {detail}", node.map(|n| format!("node {n}: ")).unwrap_or_default())]
pub struct DecodeError {
    pub node: Option<NodeId>,
    pub rule: ShapeRule,
    pub detail: String,
}

fn err<T>(node: impl Into<Option<NodeId>>, rule: ShapeRule, detail: impl Into<String>) -> Result<T, DecodeError> {
    Err(DecodeError { node: node.into(), rule, detail: detail.into() })
}

const DECL_KINDS: &[&str] = &[kinds::GIVEN, kinds::FIND, kinds::LETTING_DOMAIN, kinds::LETTING_VALUE];

/// Decodes an encoded specification. Root children are split by kind into
/// declarations and constraints, each group keeping its position order.
pub fn decode(g: &LabeledGraph) -> Result<Specification, DecodeError> {
    if let Some(n) = g.nodes().find(|n| n.mark == Mark::Red) {
        return err(n.id, ShapeRule::DanglingMark, "node is still marked red");
    }
    let mut d = Decoder { g, seen: BTreeSet::new() };
    let mut roots = Vec::new();
    for n in g.nodes() {
        if d.kind_edge_target(n.id)?.is_some() && d.kind(n.id)? == kinds::SPEC {
            roots.push(n.id);
        }
    }
    let root = match roots.as_slice() {
        [r] => *r,
        [] => return err(None, ShapeRule::NoRoot, "no node of kind `spec`"),
        [_, second, ..] => return err(*second, ShapeRule::NoRoot, "more than one node of kind `spec`"),
    };
    if let Some(e) = g.in_edges(root).next() {
        return err(root, ShapeRule::Cycle, format!("root has an incoming edge from node {}", e.src));
    }
    d.visit(root)?;
    let mut spec = Specification::default();
    for child in d.children(root)? {
        if DECL_KINDS.contains(&d.kind(child)?.as_str()) {
            spec.declarations.push(d.declaration(child)?);
        } else {
            spec.constraints.push(d.expr(child)?);
        }
    }
    if let Some(n) = g.nodes().find(|n| !d.seen.contains(&n.id)) {
        return err(n.id, ShapeRule::Unreachable, "node is not reachable from the root");
    }
    Ok(spec)
}

struct Decoder<'a> {
    g: &'a LabeledGraph,
    seen: BTreeSet<NodeId>,
}

impl Decoder<'_> {
    fn visit(&mut self, n: NodeId) -> Result<(), DecodeError> {
        if !self.seen.insert(n) {
            return err(n, ShapeRule::Cycle, "node is reached twice");
        }
        if let Some(k) = self.kind_edge_target(n)? {
            self.seen.insert(k);
        }
        Ok(())
    }

    fn kind_edge_target(&self, n: NodeId) -> Result<Option<NodeId>, DecodeError> {
        let mut it = self.g.out_edges(n).filter(|e| e.label.as_str() == Some(KIND_EDGE));
        let first = it.next().map(|e| e.tgt);
        if it.next().is_some() {
            return err(n, ShapeRule::UnknownKind, "node has more than one kind edge");
        }
        Ok(first)
    }

    fn kind(&self, n: NodeId) -> Result<String, DecodeError> {
        let Some(k) = self.kind_edge_target(n)? else {
            return err(n, ShapeRule::UnknownKind, "node has no kind edge");
        };
        match &self.g.node(k).unwrap().label {
            Atom::Str(s) => Ok(s.clone()),
            Atom::Int(i) => err(k, ShapeRule::UnknownKind, format!("kind leaf labelled with integer {i}")),
        }
    }

    fn label(&self, n: NodeId) -> &Atom {
        &self.g.node(n).unwrap().label
    }

    fn symbol(&self, n: NodeId) -> Result<String, DecodeError> {
        match self.label(n) {
            Atom::Str(s) => Ok(s.clone()),
            Atom::Int(i) => err(n, ShapeRule::BadLabel, format!("expected a string symbol, found {i}")),
        }
    }

    fn int_symbol(&self, n: NodeId) -> Result<i64, DecodeError> {
        match self.label(n) {
            Atom::Int(i) => Ok(*i),
            Atom::Str(s) => err(n, ShapeRule::BadLabel, format!("expected an integer symbol, found {s:?}")),
        }
    }

    fn expect_symbol(&self, n: NodeId, want: &str) -> Result<(), DecodeError> {
        let got = self.symbol(n)?;
        if got != want {
            return err(n, ShapeRule::BadLabel, format!("expected symbol {want:?}, found {got:?}"));
        }
        Ok(())
    }

    /// Child nodes ordered by position; positions must be exactly 1..k.
    fn children(&mut self, n: NodeId) -> Result<Vec<NodeId>, DecodeError> {
        let mut kids = Vec::new();
        for e in self.g.out_edges(n) {
            match &e.label {
                Atom::Int(p) => kids.push((*p, e.tgt)),
                Atom::Str(s) if s == KIND_EDGE => {}
                Atom::Str(s) => return err(n, ShapeRule::BadLabel, format!("edge {} has label {s:?}", e.id)),
            }
        }
        kids.sort();
        for (i, (p, _)) in kids.iter().enumerate() {
            let want = i as i64 + 1;
            if *p != want {
                let rule = if i > 0 && kids[i - 1].0 == *p {
                    ShapeRule::DuplicateChildPosition
                } else {
                    ShapeRule::MissingChildPosition
                };
                return err(n, rule, format!("expected child position {want}, found {p}"));
            }
        }
        for &(_, c) in &kids {
            self.visit(c)?;
        }
        Ok(kids.into_iter().map(|(_, c)| c).collect())
    }

    fn children_n<const N: usize>(&mut self, n: NodeId) -> Result<[NodeId; N], DecodeError> {
        let kids = self.children(n)?;
        let len = kids.len();
        kids.try_into()
            .or_else(|_| err(n, ShapeRule::Arity, format!("expected {N} children, found {len}")))
    }

    fn declaration(&mut self, n: NodeId) -> Result<Declaration, DecodeError> {
        let kind = match self.kind(n)?.as_str() {
            kinds::GIVEN => DeclKind::Given,
            kinds::FIND => DeclKind::Find,
            kinds::LETTING_DOMAIN => DeclKind::LettingDomain,
            kinds::LETTING_VALUE => DeclKind::LettingValue,
            other => return err(n, ShapeRule::UnknownKind, format!("`{other}` is not a declaration")),
        };
        self.expect_symbol(n, kind.keyword())?;
        let [name_node] = self.children_n(n)?;
        if self.kind(name_node)? != kinds::NAME {
            return err(name_node, ShapeRule::UnknownKind, "expected a name node");
        }
        let name = self.symbol(name_node)?;
        let [body] = self.children_n(name_node)?;
        let body = match kind {
            DeclKind::LettingValue => DeclBody::Value(self.expr(body)?),
            _ => DeclBody::Domain(self.domain(body)?),
        };
        Ok(Declaration { kind, name, body })
    }

    fn attrs(&mut self, n: NodeId) -> Result<Vec<Attribute>, DecodeError> {
        if self.kind(n)? != kinds::ATTRS {
            return err(n, ShapeRule::UnknownKind, "expected an attribute list");
        }
        let mut out = Vec::new();
        for a in self.children(n)? {
            if self.kind(a)? != kinds::ATTR {
                return err(a, ShapeRule::UnknownKind, "expected an attribute");
            }
            let sym = self.symbol(a)?;
            let Some(name) = AttrName::from_name(&sym) else {
                return err(a, ShapeRule::BadLabel, format!("unknown attribute `{sym}`"));
            };
            let kids = self.children(a)?;
            let arg = match (name.takes_arg(), kids.as_slice()) {
                (true, [x]) => Some(self.expr(*x)?),
                (false, []) => None,
                _ => return err(a, ShapeRule::Arity, format!("attribute `{sym}` has {} arguments", kids.len())),
            };
            out.push(Attribute { name, arg });
        }
        Ok(out)
    }

    fn bound(&mut self, n: NodeId) -> Result<Option<Box<Expr>>, DecodeError> {
        if self.kind(n)? == kinds::ABSENT {
            self.children_n::<0>(n)?;
            return Ok(None);
        }
        Ok(Some(Box::new(self.expr(n)?)))
    }

    fn domain(&mut self, n: NodeId) -> Result<Domain, DecodeError> {
        Ok(match self.kind(n)?.as_str() {
            kinds::INT_UNBOUNDED => {
                self.children_n::<0>(n)?;
                Domain::IntUnbounded
            }
            kinds::INT_RANGE => {
                let [lo, hi] = self.children_n(n)?;
                Domain::IntRange { lo: self.bound(lo)?, hi: self.bound(hi)? }
            }
            kinds::DOMAIN_REF => {
                self.children_n::<0>(n)?;
                Domain::Named(self.symbol(n)?)
            }
            kinds::RELATION => {
                let kids = self.children(n)?;
                if kids.len() != 3 {
                    return err(n, ShapeRule::Arity, "a relation needs attributes and two components");
                }
                let attrs = self.attrs(kids[0])?;
                let components = kids[1..].iter().map(|&c| self.domain(c)).collect::<Result<_, _>>()?;
                Domain::Relation { attrs, components }
            }
            kinds::SET => {
                let [a, e] = self.children_n(n)?;
                Domain::Set { attrs: self.attrs(a)?, element: Box::new(self.domain(e)?) }
            }
            kinds::FUNCTION => {
                let [a, f, t] = self.children_n(n)?;
                Domain::Function {
                    attrs: self.attrs(a)?,
                    from: Box::new(self.domain(f)?),
                    to: Box::new(self.domain(t)?),
                }
            }
            kinds::TUPLE_DOMAIN => {
                let kids = self.children(n)?;
                Domain::Tuple(kids.into_iter().map(|c| self.domain(c)).collect::<Result<_, _>>()?)
            }
            other => return err(n, ShapeRule::UnknownKind, format!("`{other}` is not a domain kind")),
        })
    }

    fn unary(&mut self, n: NodeId) -> Result<Box<Expr>, DecodeError> {
        let [x] = self.children_n(n)?;
        Ok(Box::new(self.expr(x)?))
    }

    fn expr(&mut self, n: NodeId) -> Result<Expr, DecodeError> {
        Ok(match self.kind(n)?.as_str() {
            kinds::INT_LIT => {
                self.children_n::<0>(n)?;
                Expr::Int(self.int_symbol(n)?)
            }
            kinds::IDENT => {
                self.children_n::<0>(n)?;
                Expr::Ident(self.symbol(n)?)
            }
            kinds::TUPLE_LIT => {
                let kids = self.children(n)?;
                Expr::Tuple(kids.into_iter().map(|c| self.expr(c)).collect::<Result<_, _>>()?)
            }
            kinds::EMPTY_SET => {
                self.children_n::<0>(n)?;
                Expr::EmptySet
            }
            kinds::BINOP => {
                let sym = self.symbol(n)?;
                let Some(op) = BinOp::from_glyph(&sym) else {
                    return err(n, ShapeRule::BadLabel, format!("unknown operator `{sym}`"));
                };
                let [l, r] = self.children_n(n)?;
                Expr::BinOp { op, lhs: Box::new(self.expr(l)?), rhs: Box::new(self.expr(r)?) }
            }
            kinds::NOT => Expr::Not(self.unary(n)?),
            kinds::TO_INT => Expr::ToInt(self.unary(n)?),
            kinds::DEFINED => Expr::Defined(self.unary(n)?),
            kinds::INDEX => {
                let i = self.int_symbol(n)?;
                let index = u32::try_from(i)
                    .ok()
                    .filter(|i| *i >= 1)
                    .map_or_else(|| err(n, ShapeRule::BadLabel, format!("tuple index {i} is not positive")), Ok)?;
                let tuple = self.unary(n)?;
                Expr::TupleIndex { tuple, index }
            }
            kinds::APPLY => {
                let func = self.symbol(n)?;
                let kids = self.children(n)?;
                Expr::Apply { func, args: kids.into_iter().map(|c| self.expr(c)).collect::<Result<_, _>>()? }
            }
            k @ (kinds::FOR_ALL | kinds::SUM) => {
                let kind = if k == kinds::FOR_ALL { QuantKind::ForAll } else { QuantKind::Sum };
                let [b, s, body] = self.children_n(n)?;
                let binder = self.binder(b)?;
                let source = match self.kind(s)?.as_str() {
                    kinds::OVER_DOMAIN => {
                        let [d] = self.children_n(s)?;
                        QuantSource::Domain(self.domain(d)?)
                    }
                    kinds::IN_EXPR => QuantSource::Expr(self.unary(s)?),
                    other => return err(s, ShapeRule::UnknownKind, format!("`{other}` is not a quantifier source")),
                };
                Expr::Quant { kind, binder, source, body: Box::new(self.expr(body)?) }
            }
            other => return err(n, ShapeRule::UnknownKind, format!("`{other}` is not an expression kind")),
        })
    }

    fn binder(&mut self, n: NodeId) -> Result<Binder, DecodeError> {
        match self.kind(n)?.as_str() {
            kinds::BINDER => {
                self.children_n::<0>(n)?;
                Ok(Binder::Name(self.symbol(n)?))
            }
            kinds::BINDER_TUPLE => {
                let mut names = Vec::new();
                for c in self.children(n)? {
                    if self.kind(c)? != kinds::BINDER {
                        return err(c, ShapeRule::UnknownKind, "expected a binder name");
                    }
                    self.children_n::<0>(c)?;
                    names.push(self.symbol(c)?);
                }
                Ok(Binder::Tuple(names))
            }
            other => err(n, ShapeRule::UnknownKind, format!("`{other}` is not a binder kind")),
        }
    }
}
