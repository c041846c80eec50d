use super::{Atom, LabeledGraph, Mark, NodeId};
use crate::essence::*;

/// Label of the edge from an AST node to its grammar-kind leaf.
pub const KIND_EDGE: &str = "kind";

/// Grammar-kind names used on kind leaves.
pub mod kinds {
    pub const SPEC: &str = "spec";
    pub const GIVEN: &str = "given";
    pub const FIND: &str = "find";
    pub const LETTING_DOMAIN: &str = "lettingDomain";
    pub const LETTING_VALUE: &str = "lettingValue";
    pub const NAME: &str = "name";
    pub const INT_RANGE: &str = "intRange";
    pub const INT_UNBOUNDED: &str = "intUnbounded";
    pub const DOMAIN_REF: &str = "domainRef";
    pub const RELATION: &str = "relation";
    pub const SET: &str = "set";
    pub const FUNCTION: &str = "function";
    pub const TUPLE_DOMAIN: &str = "tupleDomain";
    pub const ATTRS: &str = "attrs";
    pub const ATTR: &str = "attr";
    pub const ABSENT: &str = "absent";
    pub const INT_LIT: &str = "intLit";
    pub const IDENT: &str = "ident";
    pub const TUPLE_LIT: &str = "tupleLit";
    pub const EMPTY_SET: &str = "emptySet";
    pub const BINOP: &str = "binop";
    pub const NOT: &str = "not";
    pub const INDEX: &str = "index";
    pub const APPLY: &str = "apply";
    pub const FOR_ALL: &str = "forAll";
    pub const SUM: &str = "sum";
    pub const BINDER: &str = "binder";
    pub const BINDER_TUPLE: &str = "binderTuple";
    pub const OVER_DOMAIN: &str = "overDomain";
    pub const IN_EXPR: &str = "inExpr";
    pub const TO_INT: &str = "toInt";
    pub const DEFINED: &str = "defined";
}

/// Encodes a specification as a host graph rooted at a node labelled `name`.
/// Node ids are assigned in pre-order; comments are dropped.
pub fn encode(spec: &Specification, name: &str) -> LabeledGraph {
    let mut enc = Encoder { g: LabeledGraph::new() };
    let root = enc.node(Atom::str(name), kinds::SPEC);
    let mut pos = 0;
    for decl in &spec.declarations {
        pos += 1;
        let d = enc.declaration(decl);
        enc.child(root, d, pos);
    }
    for c in &spec.constraints {
        pos += 1;
        let e = enc.expr(c);
        enc.child(root, e, pos);
    }
    enc.g
}

struct Encoder {
    g: LabeledGraph,
}

impl Encoder {
    fn node(&mut self, symbol: Atom, kind: &str) -> NodeId {
        let n = self.g.add_node(symbol, Mark::None);
        let k = self.g.add_node(kind, Mark::None);
        self.g.add_edge(n, k, KIND_EDGE).unwrap();
        n
    }

    fn child(&mut self, parent: NodeId, child: NodeId, pos: i64) {
        self.g.add_edge(parent, child, pos).unwrap();
    }

    fn children(&mut self, parent: NodeId, kids: impl IntoIterator<Item = NodeId>) {
        for (i, k) in kids.into_iter().enumerate() {
            self.child(parent, k, i as i64 + 1);
        }
    }

    fn declaration(&mut self, decl: &Declaration) -> NodeId {
        let kind = match decl.kind {
            DeclKind::Given => kinds::GIVEN,
            DeclKind::Find => kinds::FIND,
            DeclKind::LettingDomain => kinds::LETTING_DOMAIN,
            DeclKind::LettingValue => kinds::LETTING_VALUE,
        };
        let d = self.node(Atom::str(decl.kind.keyword()), kind);
        let name = self.node(Atom::str(&decl.name), kinds::NAME);
        self.child(d, name, 1);
        let body = match &decl.body {
            DeclBody::Domain(dom) => self.domain(dom),
            DeclBody::Value(e) => self.expr(e),
        };
        self.child(name, body, 1);
        d
    }

    fn attrs(&mut self, attrs: &[Attribute]) -> NodeId {
        let list = self.node(Atom::str(""), kinds::ATTRS);
        for (i, a) in attrs.iter().enumerate() {
            let an = self.node(Atom::str(a.name.as_str()), kinds::ATTR);
            self.child(list, an, i as i64 + 1);
            if let Some(arg) = &a.arg {
                let e = self.expr(arg);
                self.child(an, e, 1);
            }
        }
        list
    }

    fn bound(&mut self, e: &Option<Box<Expr>>) -> NodeId {
        match e {
            Some(e) => self.expr(e),
            None => self.node(Atom::str(""), kinds::ABSENT),
        }
    }

    fn domain(&mut self, d: &Domain) -> NodeId {
        match d {
            Domain::IntUnbounded => self.node(Atom::str("int"), kinds::INT_UNBOUNDED),
            Domain::IntRange { lo, hi } => {
                let n = self.node(Atom::str("int"), kinds::INT_RANGE);
                let l = self.bound(lo);
                self.child(n, l, 1);
                let h = self.bound(hi);
                self.child(n, h, 2);
                n
            }
            Domain::Named(name) => self.node(Atom::str(name), kinds::DOMAIN_REF),
            Domain::Relation { attrs, components } => {
                let n = self.node(Atom::str("relation"), kinds::RELATION);
                let a = self.attrs(attrs);
                self.child(n, a, 1);
                for (i, c) in components.iter().enumerate() {
                    let cn = self.domain(c);
                    self.child(n, cn, i as i64 + 2);
                }
                n
            }
            Domain::Set { attrs, element } => {
                let n = self.node(Atom::str("set"), kinds::SET);
                let a = self.attrs(attrs);
                self.child(n, a, 1);
                let e = self.domain(element);
                self.child(n, e, 2);
                n
            }
            Domain::Function { attrs, from, to } => {
                let n = self.node(Atom::str("function"), kinds::FUNCTION);
                let a = self.attrs(attrs);
                self.child(n, a, 1);
                let f = self.domain(from);
                self.child(n, f, 2);
                let t = self.domain(to);
                self.child(n, t, 3);
                n
            }
            Domain::Tuple(comps) => {
                let n = self.node(Atom::str("tuple"), kinds::TUPLE_DOMAIN);
                for (i, c) in comps.iter().enumerate() {
                    let cn = self.domain(c);
                    self.child(n, cn, i as i64 + 1);
                }
                n
            }
        }
    }

    fn expr(&mut self, e: &Expr) -> NodeId {
        match e {
            Expr::Int(v) => self.node(Atom::Int(*v), kinds::INT_LIT),
            Expr::Ident(name) => self.node(Atom::str(name), kinds::IDENT),
            Expr::Tuple(elems) => {
                let n = self.node(Atom::str(""), kinds::TUPLE_LIT);
                for (i, x) in elems.iter().enumerate() {
                    let xn = self.expr(x);
                    self.child(n, xn, i as i64 + 1);
                }
                n
            }
            Expr::EmptySet => self.node(Atom::str("{}"), kinds::EMPTY_SET),
            Expr::BinOp { op, lhs, rhs } => {
                let n = self.node(Atom::str(op.glyph()), kinds::BINOP);
                let l = self.expr(lhs);
                self.child(n, l, 1);
                let r = self.expr(rhs);
                self.child(n, r, 2);
                n
            }
            Expr::Not(x) => self.unary("!", kinds::NOT, x),
            Expr::ToInt(x) => self.unary("toInt", kinds::TO_INT, x),
            Expr::Defined(x) => self.unary("defined", kinds::DEFINED, x),
            Expr::TupleIndex { tuple, index } => {
                let n = self.node(Atom::Int(*index as i64), kinds::INDEX);
                let t = self.expr(tuple);
                self.child(n, t, 1);
                n
            }
            Expr::Apply { func, args } => {
                let n = self.node(Atom::str(func), kinds::APPLY);
                for (i, a) in args.iter().enumerate() {
                    let an = self.expr(a);
                    self.child(n, an, i as i64 + 1);
                }
                n
            }
            Expr::Quant { kind, binder, source, body } => {
                let k = match kind {
                    QuantKind::ForAll => kinds::FOR_ALL,
                    QuantKind::Sum => kinds::SUM,
                };
                let n = self.node(Atom::str(kind.keyword()), k);
                let b = match binder {
                    Binder::Name(name) => self.node(Atom::str(name), kinds::BINDER),
                    Binder::Tuple(names) => {
                        let t = self.node(Atom::str(""), kinds::BINDER_TUPLE);
                        let kids: Vec<NodeId> =
                            names.iter().map(|nm| self.node(Atom::str(nm), kinds::BINDER)).collect();
                        self.children(t, kids);
                        t
                    }
                };
                self.child(n, b, 1);
                let s = match source {
                    QuantSource::Domain(d) => {
                        let s = self.node(Atom::str(":"), kinds::OVER_DOMAIN);
                        let dn = self.domain(d);
                        self.child(s, dn, 1);
                        s
                    }
                    QuantSource::Expr(x) => {
                        let s = self.node(Atom::str("in"), kinds::IN_EXPR);
                        let xn = self.expr(x);
                        self.child(s, xn, 1);
                        s
                    }
                };
                self.child(n, s, 2);
                let bn = self.expr(body);
                self.child(n, bn, 3);
                n
            }
        }
    }

    fn unary(&mut self, symbol: &str, kind: &str, x: &Expr) -> NodeId {
        let n = self.node(Atom::str(symbol), kind);
        let xn = self.expr(x);
        self.child(n, xn, 1);
        n
    }
}
