use specrewriter_core::engine::*;
use specrewriter_core::essence::parse_spec;
use specrewriter_core::graph::*;

const RELATION_SPEC: &str = include_str!("../../../data/kfold_colouring.essence");
const TAG_RULE: &str = include_str!("../rules/tagRelationDecisionVariable.gp2r");

fn relation_spec_graph() -> LabeledGraph {
    encode(&parse_spec(RELATION_SPEC).unwrap(), "kfold_colouring")
}

fn rules(text: &str) -> RuleSet {
    parse_rule_file(text).unwrap()
}

#[test]
fn tag_rule_parses_verbatim() {
    let set = rules(TAG_RULE);
    let r = set.rule("tagRelationDecisionVariable").unwrap();
    assert_eq!(r.lhs.nodes.len(), 4);
    assert_eq!(r.rhs.nodes.len(), 4);
    assert_eq!(r.interface.iter().map(String::as_str).collect::<Vec<_>>(), ["n0", "n1", "n2", "n3"]);
    assert_eq!(r.rhs.node("n3").unwrap().mark, MarkPattern::MustBeRed);
    assert_eq!(set.main, Some(RuleProgram::call("tagRelationDecisionVariable")));
}

#[test]
fn tag_rule_matches_relation_spec_once() {
    let set = rules(TAG_RULE);
    let r = set.rule("tagRelationDecisionVariable").unwrap();
    let g = relation_spec_graph();
    let ms = find_matches(r, &g);
    assert_eq!(ms.len(), 1);
    let m = &ms[0];
    assert_eq!(m.assignment["decisionVariableName"], Atom::str("colouring"));
    assert_eq!(m.assignment["specName"], Atom::str("kfold_colouring"));
    assert_eq!(m.assignment["findPos"], Atom::Int(7));
    // `n` is declared but never used by the rule.
    assert!(!m.assignment.contains_key("n"));

    // Exhaustive check: exactly one find→name→"relation" path exists.
    let mut paths = 0;
    for e1 in g.out_edges(0).filter(|e| e.label.as_int().is_some()) {
        if g.node(e1.tgt).unwrap().label != Atom::str("find") {
            continue;
        }
        for e2 in g.out_edges(e1.tgt).filter(|e| e.label == Atom::Int(1)) {
            for e3 in g.out_edges(e2.tgt).filter(|e| e.label == Atom::Int(1)) {
                paths += (g.node(e3.tgt).unwrap().label == Atom::str("relation")) as usize;
            }
        }
    }
    assert_eq!(paths, 1);
}

#[test]
fn tag_rule_changes_exactly_one_mark() {
    let set = rules(TAG_RULE);
    let g = relation_spec_graph();
    let out = run(set.main.as_ref().unwrap(), &set, &g, DEFAULT_FUEL).unwrap();
    assert_eq!(out.node_count(), g.node_count());
    assert_eq!(out.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    let changed: Vec<_> = g.nodes().zip(out.nodes()).filter(|(a, b)| a != b).collect();
    assert_eq!(changed.len(), 1);
    let (before, after) = changed[0];
    assert_eq!(after.label, Atom::str("relation"));
    assert_eq!((before.mark, after.mark), (Mark::None, Mark::Red));
}

#[test]
fn empty_host_and_identity_rule() {
    let set = rules(TAG_RULE);
    assert!(find_matches(set.rule("tagRelationDecisionVariable").unwrap(), &LabeledGraph::new()).is_empty());

    let id = rules("Main = r\nr()[|]=>[|] interface = {}");
    let r = id.rule("r").unwrap();
    let g = relation_spec_graph();
    let ms = find_matches(r, &g);
    assert_eq!(ms, vec![Match::default()]);
    assert_eq!(apply(r, &ms[0], &g).unwrap(), g);
}

const DELETE_LEAF: &str = "deleteLeaf(x:any)
[ (p, x) (c, \"leaf\") | (e, p, c, 1) ] => [ (p, x) | ] interface = {p}";

#[test]
fn delete_leaf_removes_one_node_and_edge() {
    let mut g = LabeledGraph::new();
    let root = g.add_node("root", Mark::None);
    let mid = g.add_node("mid", Mark::None);
    let leaf = g.add_node("leaf", Mark::None);
    g.add_edge(root, mid, 1).unwrap();
    g.add_edge(mid, leaf, 1).unwrap();
    let set = rules(DELETE_LEAF);
    let r = set.rule("deleteLeaf").unwrap();
    let ms = find_matches(r, &g);
    assert_eq!(ms.len(), 1);
    let out = apply(r, &ms[0], &g).unwrap();
    assert_eq!((g.node_count() - out.node_count(), g.edge_count() - out.edge_count()), (1, 1));
    assert!(out.node(leaf).is_none());
    out.check_invariants().unwrap();
}

#[test]
fn dangling_condition_blocks_deletion() {
    let mut g = LabeledGraph::new();
    let p = g.add_node("root", Mark::None);
    let c = g.add_node("leaf", Mark::None);
    let k = g.add_node("kind", Mark::None);
    g.add_edge(p, c, 1).unwrap();
    g.add_edge(c, k, "kind").unwrap();
    let set = rules(DELETE_LEAF);
    assert!(find_matches(set.rule("deleteLeaf").unwrap(), &g).is_empty());
}

const SHRINK: &str = "Main = shrink!
shrink(a, b:any)
[ (p, a # red) (c, b # red) | (e, p, c, 1) ] => [ (p, a # red) | ] interface = {p}";

#[test]
fn loop_on_red_chain_leaves_one() {
    let mut g = LabeledGraph::new();
    let ids: Vec<_> = (0..3).map(|i| g.add_node(i as i64, Mark::Red)).collect();
    g.add_edge(ids[0], ids[1], 1).unwrap();
    g.add_edge(ids[1], ids[2], 1).unwrap();
    let set = rules(SHRINK);
    let out = run_with_trace(set.main.as_ref().unwrap(), &set, &g, DEFAULT_FUEL).unwrap();
    assert_eq!(out.graph.count_marked(Mark::Red), 1);
    assert_eq!(out.graph.node_count(), 1);
    assert_eq!(out.trace.len(), 2);
}

#[test]
fn seq_stuck_and_try() {
    let set = rules(&format!("Main = deleteLeaf\nTried = try deleteLeaf\n{DELETE_LEAF}"));
    let g = relation_spec_graph();
    let err = run(&parse_program("deleteLeaf").unwrap(), &set, &g, DEFAULT_FUEL).unwrap_err();
    assert_eq!(err, RunError::Stuck { path: vec!["deleteLeaf".to_string()] });
    let err = run(&parse_program("(Tried; deleteLeaf)").unwrap(), &set, &g, DEFAULT_FUEL).unwrap_err();
    assert_eq!(err, RunError::Stuck { path: vec!["#2".to_string(), "deleteLeaf".to_string()] });
    assert_eq!(run(&parse_program("Tried").unwrap(), &set, &g, DEFAULT_FUEL).unwrap(), g);
}

#[test]
fn try_rolls_back_partial_sequences() {
    let set = rules(&format!("{DELETE_LEAF}\nnever()[ (a, \"absent\") | ] => [ (a, \"absent\") | ] interface = {{a}}"));
    let mut g = LabeledGraph::new();
    let p = g.add_node("p", Mark::None);
    let c = g.add_node("leaf", Mark::None);
    g.add_edge(p, c, 1).unwrap();
    let out = run(&parse_program("try (deleteLeaf; never)").unwrap(), &set, &g, DEFAULT_FUEL).unwrap();
    assert_eq!(out, g);
}

#[test]
fn non_terminating_loop_exhausts_fuel() {
    let set = rules("Main = grow!\ngrow()[ (a, \"x\") | ] => [ (a, \"x\") (b, \"x\") | ] interface = {a}");
    let mut g = LabeledGraph::new();
    g.add_node("x", Mark::None);
    let err = run(set.main.as_ref().unwrap(), &set, &g, 50).unwrap_err();
    assert_eq!(err, RunError::FuelExhausted { applications: 50 });
}

#[test]
fn choice_takes_first_applicable_rule() {
    let set = rules(
        "a()[ (n, \"missing\") | ] => [ (n, \"missing\") | ] interface = {n}
         b()[ (n, \"x\") | ] => [ (n, \"y\") | ] interface = {n}",
    );
    let mut g = LabeledGraph::new();
    g.add_node("x", Mark::None);
    let out = run_with_trace(&parse_program("{a, b}").unwrap(), &set, &g, 10).unwrap();
    assert_eq!(out.trace[0].rule, "b");
    assert_eq!(out.graph.node(0).unwrap().label, Atom::str("y"));
}

#[test]
fn matches_are_injective_and_canonical() {
    let set = rules("pair(x, y:any)[ (a, x) (b, y) | ] => [ (a, x) (b, y) | ] interface = {a, b}");
    let r = set.rule("pair").unwrap();
    let mut g = LabeledGraph::new();
    for i in 0..3 {
        g.add_node(i as i64, Mark::None);
    }
    let ms = find_matches(r, &g);
    assert_eq!(ms.len(), 6);
    let firsts: Vec<(NodeId, NodeId)> = ms.iter().map(|m| (m.node_map["a"], m.node_map["b"])).collect();
    assert_eq!(firsts, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]);
}

#[test]
fn typed_variables_and_repeated_variables() {
    let set = rules("same(x:int)[ (a, x) (b, x) | (e, a, b, \"k\") ] => [ (a, x) (b, x) | (e, a, b, \"k\") ] interface = {a, b}");
    let r = set.rule("same").unwrap();
    let mut g = LabeledGraph::new();
    let a = g.add_node(4, Mark::None);
    let b = g.add_node(4, Mark::None);
    let c = g.add_node("4", Mark::None);
    let d = g.add_node("4", Mark::None);
    g.add_edge(a, b, "k").unwrap();
    g.add_edge(c, d, "k").unwrap();
    let ms = find_matches(r, &g);
    assert_eq!(ms.len(), 1);
    assert_eq!(ms[0].node_map["a"], a);
}

#[test]
fn parallel_edges_are_matched_injectively() {
    let set = rules("two()[ (a, \"p\") (b, \"q\") | (e1, a, b, 1) (e2, a, b, 1) ] => [ (a, \"p\") (b, \"q\") | ] interface = {a, b}");
    let r = set.rule("two").unwrap();
    let mut g = LabeledGraph::new();
    let a = g.add_node("p", Mark::None);
    let b = g.add_node("q", Mark::None);
    g.add_edge(a, b, 1).unwrap();
    assert!(find_matches(r, &g).is_empty());
    g.add_edge(a, b, 1).unwrap();
    let ms = find_matches(r, &g);
    assert_eq!(ms.len(), 2);
    let out = apply(r, &ms[0], &g).unwrap();
    assert_eq!(out.edge_count(), 0);
}
