use specrewriter_core::engine::{parse_program, run, RunError, DEFAULT_FUEL};
use specrewriter_core::essence::*;
use specrewriter_core::graph::{encode, Mark};
use specrewriter_core::rules::*;

const RELATION_SPEC: &str = include_str!("../../../data/kfold_colouring.essence");
const FUNCTION_SPEC: &str = include_str!("../../../data/kfold_colouring_function.essence");

/// The function spec with the relation spec's given domains, which the rewrite leaves alone.
fn expected_rewrite() -> Specification {
    let l1 = parse_spec(RELATION_SPEC).unwrap();
    let mut l3 = parse_spec(FUNCTION_SPEC).unwrap();
    for d in l3.declarations.iter_mut().filter(|d| d.kind == DeclKind::Given) {
        *d = l1.declaration(&d.name).unwrap().clone();
    }
    l3
}

#[test]
fn builtin_files_parse() {
    for (name, text) in builtin_rule_files() {
        specrewriter_core::engine::parse_rule_file(text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let rules = builtin_rules();
    rules.validate().unwrap();
    assert!(rules.main.is_some());
}

#[test]
fn relation_spec_becomes_function_spec() {
    let out = reformulate(&parse_spec(RELATION_SPEC).unwrap()).unwrap();
    assert!(struct_eq(&out.rewritten, &expected_rewrite(), true), "{}", print_spec(&out.rewritten));
    assert_eq!(out.aux_domain_name.as_deref(), Some("coloursSet"));
    assert_eq!(out.host_after.count_marked(Mark::Red), 0);
    assert!(!out.report.is_empty());
}

#[test]
fn tagging_marks_three_nodes() {
    let mut rules = builtin_rules();
    rules.main = Some(parse_program("Normalise; Tag").unwrap());
    let g = run(rules.main.as_ref().unwrap(), &rules, &encode(&parse_spec(RELATION_SPEC).unwrap(), "spec"), DEFAULT_FUEL)
        .unwrap();
    assert_eq!(g.count_marked(Mark::Red), 3);
}

#[test]
fn set_decision_variable_is_not_applicable() {
    let spec = parse_spec("given n : int\nfind s : set (size 2) of int(1..n)\nsuch that 1 in s").unwrap();
    let err = reformulate(&spec).unwrap_err();
    assert!(err.is_not_applicable(), "{err}");
}

#[test]
fn rewriting_is_idempotent() {
    let once = reformulate(&parse_spec(RELATION_SPEC).unwrap()).unwrap().rewritten;
    let err = reformulate(&once).unwrap_err();
    assert!(err.is_not_applicable(), "{err}");
}

#[test]
fn names_carry_through() {
    let text = RELATION_SPEC.replace("colouring", "assign").replace("coloursPerNode", "kk").replace("colours", "palette");
    let out = reformulate(&parse_spec(&text).unwrap()).unwrap();
    let printed = print_spec(&out.rewritten);
    assert!(printed.contains("letting paletteSet be domain set (size kk) of palette"), "{printed}");
    assert!(printed.contains("find assign : function (total) vertices --> paletteSet"), "{printed}");
    assert!(printed.contains("assign(v) intersect assign(u) = {}"), "{printed}");
}

#[test]
fn aux_name_is_uniquified() {
    let text = RELATION_SPEC.replace("letting colours be", "given coloursSet : int\nletting colours be");
    let out = reformulate(&parse_spec(&text).unwrap()).unwrap();
    assert_eq!(out.aux_domain_name.as_deref(), Some("coloursSet2"));
}

#[test]
fn rule_directory_overrides() {
    let dir = std::env::temp_dir().join(format!("rules-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, text) in builtin_rule_files() {
        std::fs::write(dir.join(format!("{name}.gp2r")), text).unwrap();
    }
    let rules = load_rules_dir(&dir).unwrap();
    let out = Reformulator::new(rules).reformulate(&parse_spec(RELATION_SPEC).unwrap(), "spec").unwrap();
    assert!(struct_eq(&out.rewritten, &expected_rewrite(), true));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fuel_is_enforced() {
    let err = Reformulator::new(builtin_rules()).with_fuel(2).reformulate(&parse_spec(RELATION_SPEC).unwrap(), "spec");
    match err {
        Err(ReformulateError::Engine { source: RunError::FuelExhausted { .. }, .. }) => {}
        other => panic!("{other:?}"),
    }
}
