use std::collections::BTreeSet;

use proptest::prelude::*;
use specrewriter_core::essence::{parse_domain, parse_expr, parse_spec};
use specrewriter_core::eval::*;
use specrewriter_core::Value;

const RELATION_SPEC: &str = include_str!("../../../data/kfold_colouring.essence");
const FUNCTION_SPEC: &str = include_str!("../../../data/kfold_colouring_function.essence");

fn instance(n: i64, edges: &[(i64, i64)], nc: i64, cpn: i64) -> Instance {
    Instance::new([
        ("n", Value::Int(n)),
        ("edges", Value::int_relation(edges.iter().copied())),
        ("numberColours", Value::Int(nc)),
        ("coloursPerNode", Value::Int(cpn)),
    ])
}

fn ground_all(domain: &str) -> Vec<Value> {
    let d = parse_domain(domain).unwrap();
    ground(&d, &Env::new()).unwrap().iter().collect()
}

#[test]
fn ground_int_range() {
    assert_eq!(ground_all("int(1..3)"), vec![Value::Int(1), Value::Int(2), Value::Int(3)]);
    assert!(ground_all("int(3..1)").is_empty());
}

#[test]
fn ground_fixed_size_set() {
    let got = ground_all("set (size 2) of int(1..3)");
    assert_eq!(got, vec![Value::int_set([1, 2]), Value::int_set([1, 3]), Value::int_set([2, 3])]);
}

#[test]
fn ground_irreflexive_relation() {
    let got = ground_all("relation (irreflexive) of (int(0..1) * int(0..1))");
    let want: BTreeSet<Value> = [
        Value::int_relation([]),
        Value::int_relation([(0, 1)]),
        Value::int_relation([(1, 0)]),
        Value::int_relation([(0, 1), (1, 0)]),
    ]
    .into();
    assert_eq!(got.len(), 4);
    assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want);
}

#[test]
fn ground_total_functions() {
    let got = ground_all("function (total) int(0..1) --> set (size 1) of int(1..2)");
    assert_eq!(got.len(), 4);
    let partial = ground_all("function int(0..1) --> int(1..2)");
    assert_eq!(partial.len(), 9);
}

#[test]
fn ground_refuses_above_cap() {
    let d = parse_domain("set of int(1..30)").unwrap();
    let mut env = Env::new();
    env.max_ground = 1000;
    let err = ground(&d, &env).unwrap_err();
    assert!(err.is_too_large(), "{err}");
    let d = parse_domain("function (total) int(1..40) --> set (size 5) of int(1..15)").unwrap();
    assert!(ground(&d, &Env::new()).unwrap_err().is_too_large());
}

#[test]
fn ground_errors() {
    let d = parse_domain("int(1..m)").unwrap();
    assert_eq!(ground(&d, &Env::new()).unwrap_err().root(), &EvalError::UnboundIdentifier("m".into()));
    let d = parse_domain("set (size 0 - 1) of int(1..2)").unwrap();
    assert_eq!(ground(&d, &Env::new()).unwrap_err().root(), &EvalError::NegativeSize(-1));
}

#[test]
fn eval_examples() {
    let env = Env::new();
    assert_eq!(eval_expr(&parse_expr("toInt(1 = 1)").unwrap(), &env).unwrap(), Value::Int(1));

    let env = Env::new().with_value("colouring", Value::int_relation([(0, 1), (1, 2)]));
    let e = parse_expr(
        "forAll (u,v) in edges . forAll ca in colouring . (ca[1] = u) -> !((v,ca[2]) in colouring)",
    )
    .unwrap();
    let env = env.with_value("edges", Value::int_relation([(0, 1)]));
    assert_eq!(eval_expr(&e, &env).unwrap(), Value::Int(1));

    let f = Value::function([(Value::Int(0), Value::int_set([1])), (Value::Int(1), Value::int_set([1]))]);
    let env = Env::new().with_value("colouring", f);
    let e = parse_expr("colouring(0) intersect colouring(1) = {}").unwrap();
    assert_eq!(eval_expr(&e, &env).unwrap(), Value::Int(0));
}

#[test]
fn eval_errors() {
    let f = Value::function([(Value::Int(0), Value::Int(5))]);
    let env = Env::new().with_value("f", f).with_value("t", Value::tuple([Value::Int(1)]));
    let err = eval_expr(&parse_expr("f(3)").unwrap(), &env).unwrap_err();
    assert!(matches!(err, EvalError::PartialApplication(_)), "{err}");
    let err = eval_expr(&parse_expr("t[2]").unwrap(), &env).unwrap_err();
    assert_eq!(err, EvalError::IndexOutOfArity { index: 2, arity: 1 });
    let err = eval_expr(&parse_expr("f + 1").unwrap(), &env).unwrap_err();
    assert!(matches!(err, EvalError::TypeMismatch(_)), "{err}");
    assert_eq!(eval_expr(&parse_expr("sum x in {} . x").unwrap(), &env).unwrap(), Value::Int(0));
}

#[test]
fn relation_applied_as_predicate() {
    let env = Env::new().with_value("r", Value::int_relation([(0, 1)]));
    assert_eq!(eval_expr(&parse_expr("r(0, 1)").unwrap(), &env).unwrap(), Value::Int(1));
    assert_eq!(eval_expr(&parse_expr("r(1, 0)").unwrap(), &env).unwrap(), Value::Int(0));
}

#[test]
fn solve_relation_spec_small() {
    let spec = parse_spec(RELATION_SPEC).unwrap();
    let sols = solve(&spec, &instance(2, &[(0, 1)], 2, 1), None).unwrap();
    let got: Vec<Value> = sols.iter().map(|s| s["colouring"].clone()).collect();
    assert_eq!(got, vec![Value::int_relation([(0, 1), (1, 2)]), Value::int_relation([(0, 2), (1, 1)])]);

    let sols = solve(&spec, &instance(1, &[], 1, 1), None).unwrap();
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0]["colouring"], Value::int_relation([(0, 1)]));
}

#[test]
fn solve_function_spec_small() {
    let spec = parse_spec(FUNCTION_SPEC).unwrap();
    let sols = solve(&spec, &instance(2, &[(0, 1)], 2, 1), None).unwrap();
    let f = |a, b| Value::function([(Value::Int(0), Value::int_set([a])), (Value::Int(1), Value::int_set([b]))]);
    let got: Vec<Value> = sols.iter().map(|s| s["colouring"].clone()).collect();
    assert_eq!(got, vec![f(1, 2), f(2, 1)]);
}

#[test]
fn instance_checked_on_load() {
    let spec = parse_spec(RELATION_SPEC).unwrap();
    let err = solve(&spec, &instance(2, &[(0, 0)], 2, 1), None).unwrap_err();
    assert!(matches!(err, EvalError::DomainViolation { .. }), "{err}");
    let err = solve(&spec, &Instance::default(), None).unwrap_err();
    assert_eq!(err, EvalError::MissingGiven("n".into()));
}

#[test]
fn solve_refuses_large_candidate_space() {
    let spec = parse_spec(RELATION_SPEC).unwrap();
    let opts = SolveOptions { limit: Some(1), max_ground: 100 };
    let err = solve_with(&spec, &instance(4, &[(0, 1)], 4, 2), opts).unwrap_err();
    assert!(err.is_too_large());
}

/// Independent count: assign each vertex a k-subset of colours so that no
/// stored edge (u, v) has a shared colour.
fn oracle_count(n: usize, edges: &[(i64, i64)], nc: usize, k: usize) -> usize {
    let subsets: Vec<u32> = (0u32..1 << nc).filter(|m| m.count_ones() as usize == k).collect();
    fn go(v: usize, n: usize, assign: &mut Vec<u32>, subsets: &[u32], edges: &[(i64, i64)]) -> usize {
        if v == n {
            let ok = edges.iter().all(|&(a, b)| assign[a as usize] & assign[b as usize] == 0);
            return ok as usize;
        }
        let mut total = 0;
        for &s in subsets {
            assign.push(s);
            total += go(v + 1, n, assign, subsets, edges);
            assign.pop();
        }
        total
    }
    go(0, n, &mut Vec::new(), &subsets, edges)
}

fn small_instance() -> impl Strategy<Value = (usize, Vec<(i64, i64)>, usize, usize)> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(n, k)| {
        let pairs: Vec<(i64, i64)> =
            (0..n as i64).flat_map(|a| (0..n as i64).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        (Just(n), proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()), k..=k + 2, Just(k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn both_forms_match_oracle((n, edges, nc, k) in small_instance()) {
        let inst = instance(n as i64, &edges, nc as i64, k as i64);
        let want = oracle_count(n, &edges, nc, k);
        let a = solve(&parse_spec(RELATION_SPEC).unwrap(), &inst, None).unwrap();
        prop_assert_eq!(a.len(), want);
        // The function form bounds numberColours and coloursPerNode by n.
        let b = solve(&parse_spec(FUNCTION_SPEC).unwrap(), &inst, None);
        if nc <= n && k <= n {
            prop_assert_eq!(b.unwrap().len(), want);
        } else {
            let is_violation = matches!(b, Err(EvalError::DomainViolation { .. }));
            prop_assert!(is_violation);
        }
    }

    #[test]
    fn limit_returns_prefix(limit in 0usize..4) {
        let spec = parse_spec(FUNCTION_SPEC).unwrap();
        let inst = instance(3, &[(0, 1), (1, 0)], 3, 1);
        let all = solve(&spec, &inst, None).unwrap();
        let some = solve(&spec, &inst, Some(limit)).unwrap();
        prop_assert_eq!(&all[..limit.min(all.len())], &some[..]);
    }
}

#[test]
fn solutions_recheck() {
    let spec = parse_spec(RELATION_SPEC).unwrap();
    let inst = instance(3, &[(0, 1), (1, 0), (1, 2), (2, 1)], 3, 1);
    let env = Env::for_instance(&spec, &inst, DEFAULT_MAX_GROUND).unwrap();
    let sols = solve(&spec, &inst, None).unwrap();
    assert_eq!(sols.len(), 12);
    for s in &sols {
        assert!(check_constraints(&spec, &env, s).unwrap());
    }
}
