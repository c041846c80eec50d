use specrewriter_core::essence::*;

const RELATION_SPEC: &str = include_str!("../../../data/kfold_colouring.essence");
const FUNCTION_SPEC: &str = include_str!("../../../data/kfold_colouring_function.essence");
const CONVERTER_SPEC: &str = include_str!("../../../data/kfold_converter.essence");

#[test]
fn relation_spec_shape() {
    let s = parse_spec(RELATION_SPEC).unwrap();
    assert_eq!(s.declarations.iter().filter(|d| d.kind != DeclKind::Find).count(), 6);
    // numberColours and coloursPerNode are givens; 4 givens + 2 lettings.
    assert_eq!(s.givens().count(), 4);
    let finds: Vec<_> = s.finds().collect();
    assert_eq!(finds.len(), 1);
    assert!(matches!(finds[0].domain(), Some(Domain::Relation { .. })));
    assert_eq!(s.constraints.len(), 2);
    assert_eq!(s.comments.len(), 3);
}

#[test]
fn empty_and_minimal() {
    let s = parse_spec("").unwrap();
    assert!(s.is_empty());
    assert_eq!(print_spec(&s), "");
    let s = parse_spec("find x : int(1..3)\nsuch that x = 2").unwrap();
    assert_eq!(s.finds().count(), 1);
    assert_eq!(s.constraints.len(), 1);
}

#[test]
fn golden_round_trips() {
    for text in [RELATION_SPEC, FUNCTION_SPEC, CONVERTER_SPEC] {
        let a = parse_spec(text).unwrap();
        let printed = print_spec(&a);
        let b = parse_spec(&printed).unwrap();
        assert!(struct_eq(&a, &b, false), "{printed}");
        assert_eq!(printed, print_spec(&b));
    }
}

#[test]
fn converter_spec_splits_combined_given() {
    let s = parse_spec(CONVERTER_SPEC).unwrap();
    let names: Vec<_> = s.givens().map(|d| d.name.as_str()).collect();
    assert_eq!(names, ["n", "numberColours", "coloursPerNode", "solution"]);
}

#[test]
fn struct_eq_cases() {
    let l1 = parse_spec(RELATION_SPEC).unwrap();
    let l3 = parse_spec(FUNCTION_SPEC).unwrap();
    assert!(struct_eq(&l1, &parse_spec(RELATION_SPEC).unwrap(), false));
    assert!(!struct_eq(&l1, &l3, false));
    let renamed = parse_spec(&FUNCTION_SPEC.replace("(u,v)", "(a,b)").replace("(v)", "(b)").replace("(u)", "(a)")).unwrap();
    assert!(!struct_eq(&l3, &renamed, false));
    assert!(struct_eq(&l3, &renamed, true));
}

#[test]
fn comments_are_inert() {
    let a = parse_spec("$ c\nfind x : int(1..3)\nsuch that\n$ d\nx = 2").unwrap();
    let b = parse_spec("find x : int(1..3) such that x = 2").unwrap();
    assert_eq!(a.comments.len(), 2);
    assert!(struct_eq(&a, &b, false));
    assert!(print_spec(&a).starts_with("$ c\nfind x"));
}

#[test]
fn scope_errors() {
    assert!(matches!(parse_spec("such that x = 1"), Err(EssenceError::Scope(_))));
    assert!(matches!(parse_spec("find x : D\nletting D be domain int(1..2)"), Err(EssenceError::Scope(_))));
    assert!(matches!(parse_spec("given n : int\ngiven n : int"), Err(EssenceError::Scope(_))));
    assert!(parse_spec("find x : int(1..2) such that forAll y : int(1..2) . x != y -> y = y").is_ok());
}

#[test]
fn parse_errors_have_positions() {
    let EssenceError::Parse(e) = parse_spec("find x : int(1..3)\nsuch that x = ").unwrap_err() else {
        panic!("expected parse error")
    };
    assert_eq!(e.line, 2);
    let EssenceError::Parse(e) = parse_spec("find x : mset of int(1..2)").unwrap_err() else {
        panic!("expected parse error")
    };
    assert!(e.message.contains("unsupported"), "{e}");
}
