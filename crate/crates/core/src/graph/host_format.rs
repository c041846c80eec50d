//! Textual host graphs: `[ (id, label[# red]) ... | (id, src, tgt, label) ... ]`.

use super::gp2_lex::{Cursor, GTok};
use super::{Atom, GraphEdge, GraphNode, LabeledGraph, Mark};
use crate::essence::ParseError;

const INLINE_LIMIT: usize = 6;

pub fn write_host_graph(g: &LabeledGraph) -> String {
    let node = |n: &GraphNode| match n.mark {
        Mark::None => format!("({}, {})", n.id, n.label),
        Mark::Red => format!("({}, {} # red)", n.id, n.label),
    };
    let edge = |e: &GraphEdge| format!("({}, {}, {}, {})", e.id, e.src, e.tgt, e.label);
    if g.node_count() + g.edge_count() <= INLINE_LIMIT {
        let mut out = String::from("[ ");
        for n in g.nodes() {
            out.push_str(&node(n));
            out.push(' ');
        }
        out.push_str("| ");
        for e in g.edges() {
            out.push_str(&edge(e));
            out.push(' ');
        }
        out.push_str("]\n");
        return out;
    }
    let mut out = String::from("[\n");
    for n in g.nodes() {
        out.push_str("  ");
        out.push_str(&node(n));
        out.push('\n');
    }
    out.push_str("|\n");
    for e in g.edges() {
        out.push_str("  ");
        out.push_str(&edge(e));
        out.push('\n');
    }
    out.push_str("]\n");
    out
}

pub fn read_host_graph(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut c = Cursor::new(text)?;
    let mut g = LabeledGraph::new();
    c.expect("[")?;
    while c.eat("(") {
        let id = id_of(&mut c)?;
        c.expect(",")?;
        let label = atom(&mut c)?;
        let mark = if c.eat("#") {
            match c.ident()?.as_str() {
                "red" => Mark::Red,
                other => return Err(c.error(format!("unsupported mark `{other}`"))),
            }
        } else {
            Mark::None
        };
        c.expect(")")?;
        g.insert_node(GraphNode { id, label, mark }).map_err(|e| c.error(e.to_string()))?;
    }
    c.expect("|")?;
    while c.eat("(") {
        let id = id_of(&mut c)?;
        c.expect(",")?;
        let src = id_of(&mut c)?;
        c.expect(",")?;
        let tgt = id_of(&mut c)?;
        c.expect(",")?;
        let label = atom(&mut c)?;
        c.expect(")")?;
        g.insert_edge(GraphEdge { id, src, tgt, label }).map_err(|e| c.error(e.to_string()))?;
    }
    c.expect("]")?;
    if !c.at_eof() {
        return Err(c.expected(&["end of input"]));
    }
    Ok(g)
}

fn id_of(c: &mut Cursor) -> Result<u32, ParseError> {
    match c.peek().clone() {
        GTok::Int(i) if i >= 0 && i <= u32::MAX as i64 => {
            c.bump();
            Ok(i as u32)
        }
        _ => Err(c.expected(&["non-negative id"])),
    }
}

fn atom(c: &mut Cursor) -> Result<Atom, ParseError> {
    match c.peek().clone() {
        GTok::Int(i) => {
            c.bump();
            Ok(Atom::Int(i))
        }
        GTok::Str(s) => {
            c.bump();
            Ok(Atom::Str(s))
        }
        _ => Err(c.expected(&["integer", "string"])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_node_graph() {
        let mut g = LabeledGraph::new();
        let a = g.add_node("spec", Mark::None);
        let b = g.add_node("find", Mark::None);
        g.add_edge(a, b, 1).unwrap();
        assert_eq!(write_host_graph(&g), "[ (0, \"spec\") (1, \"find\") | (0, 0, 1, 1) ]\n");
        assert_eq!(read_host_graph(&write_host_graph(&g)).unwrap(), g);
    }

    #[test]
    fn empty_graph() {
        assert_eq!(write_host_graph(&LabeledGraph::new()).trim(), "[ | ]");
        assert!(read_host_graph("[ | ]").unwrap().is_empty());
    }

    #[test]
    fn marks_and_escapes() {
        let g = read_host_graph("[ (3, \"rel\\\"x\"# red) (7, -2) | (5, 7, 3, \"kind\") ]").unwrap();
        assert_eq!(g.node(3).unwrap().mark, Mark::Red);
        assert_eq!(g.node(3).unwrap().label, Atom::str("rel\"x"));
        assert_eq!(g.node(7).unwrap().label, Atom::Int(-2));
        assert_eq!(read_host_graph(&write_host_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_positions() {
        let e = read_host_graph("[ (0, \"a\")\n  (1 \"b\") | ]").unwrap_err();
        assert_eq!((e.line, e.col), (2, 6));
        assert!(read_host_graph("[ (0, \"a\") | (0, 0, 9, 1) ]").is_err());
    }
}
