mod common;

use common::*;
use specrewriter_core::essence::{parse_spec, struct_eq, DeclKind};

#[test]
fn rewrite_relation_spec() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.essence");
    let o = run(&["rewrite", data("kfold_colouring.essence").to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let got = parse_spec(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let l1 = parse_spec(RELATION_SPEC).unwrap();
    let mut want = parse_spec(FUNCTION_SPEC).unwrap();
    for d in want.declarations.iter_mut().filter(|d| d.kind == DeclKind::Given) {
        *d = l1.declaration(&d.name).unwrap().clone();
    }
    assert!(struct_eq(&got, &want, true));
}

#[test]
fn rewrite_to_stdout_and_host_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "l1.essence", RELATION_SPEC);
    let o = run(&["rewrite", &input, "--emit-host"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("find colouring : function (total) vertices --> coloursSet"));
    let before = std::fs::read_to_string(dir.path().join("l1.before.host")).unwrap();
    let after = std::fs::read_to_string(dir.path().join("l1.after.host")).unwrap();
    assert!(before.contains("\"relation\""));
    assert!(after.contains("\"function\""));
    assert!(!after.contains("# red"));
}

#[test]
fn rewrite_not_applicable_copies_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "set.essence", "given n : int\nfind s : set of int(1..n)\n$ keep me\nsuch that 1 in s\n");
    let out = dir.path().join("o.essence");
    let o = run(&["rewrite", &input, "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(&input).unwrap());
    assert!(stderr(&o).contains("not applicable"));
}

#[test]
fn rewrite_error_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_spec = write(dir.path(), "bad.essence", "find x : int(1..");
    assert_eq!(code(&run(&["rewrite", &bad_spec])), 1);
    let unscoped = write(dir.path(), "u.essence", "find x : int(1..m)");
    assert_eq!(code(&run(&["rewrite", &unscoped])), 1);

    let l1 = data("kfold_colouring.essence");
    let l1 = l1.to_str().unwrap();
    let bad_rule = write(dir.path(), "bad.gp2r", "r(x:string)\n[ (n0, x) | ]\n=>\n[ (n0, x) ");
    let o = run(&["rewrite", l1, "--rules", &bad_rule]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("bad.gp2r") && stderr(&o).contains("4:"), "{}", stderr(&o));

    let o = run(&["rewrite", l1, "--fuel", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("fuel"), "{}", stderr(&o));

    // A stage that cannot finish: cleanup never runs, so marks survive.
    let partial = write(dir.path(), "partial.gp2r", "Main = Normalise; Tag; Propagate; Glue; Shrink; Missing\n");
    let o = run(&["rewrite", l1, "--rules", &partial]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    let stuck = write(dir.path(), "stuck.gp2r", "Main = Normalise; Tag; Propagate; Glue; Shrink; Glue\n");
    let o = run(&["rewrite", l1, "--rules", &stuck]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    assert!(stderr(&o).contains("Glue"), "{}", stderr(&o));
}

#[test]
fn rules_dir_env_replaces_library() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in specrewriter_core::rules::builtin_rule_files() {
        write(dir.path(), &format!("{name}.gp2r"), text);
    }
    let l1 = data("kfold_colouring.essence");
    let o = bin().env("SPECREWRITER_RULES_DIR", dir.path()).args(["rewrite", l1.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let only = tempfile::tempdir().unwrap();
    write(only.path(), "pipeline.gp2r", "Main = nothing\nnothing()\n[ (a, \"no such label\") | ]\n=>\n[ (a, \"x\") | ]\ninterface = { a }\n");
    let o = bin().env("SPECREWRITER_RULES_DIR", only.path()).args(["rewrite", l1.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn solve_examples() {
    let dir = tempfile::tempdir().unwrap();
    let l1 = data("kfold_colouring.essence");
    let l1 = l1.to_str().unwrap();
    let p = write(dir.path(), "small.param", &param(2, &[(0, 1)], 2, 1));
    let sols = dir.path().join("sols");
    let o = run(&["solve", l1, &p, "-o", sols.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "2 solutions");
    let first = std::fs::read_to_string(sols.join("small-solution000001.solution")).unwrap();
    assert_eq!(first, "letting colouring be relation((0, 1), (1, 2))\n");
    assert!(sols.join("small-solution000002.solution").exists());

    let o = run(&["solve", l1, &p, "-o", sols.to_str().unwrap(), "--limit", "1"]);
    assert_eq!(stdout(&o).trim(), "1 solution");

    let unsat = write(dir.path(), "unsat.param", &param(2, &[(0, 1), (1, 0)], 1, 1));
    let o = run(&["solve", l1, &unsat, "-o", sols.to_str().unwrap()]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "0 solutions".to_string()));

    let edges: Vec<(i64, i64)> = (0..40).map(|i| (i, (i + 1) % 40)).collect();
    let huge = write(dir.path(), "huge.param", &param(40, &edges, 8, 2));
    let o = run(&["solve", l1, &huge, "-o", sols.to_str().unwrap()]);
    assert_eq!(code(&o), 4, "{}", stderr(&o));
    assert!(stderr(&o).contains("too large"));

    let wrong = write(dir.path(), "wrong.param", &param(2, &[(0, 0)], 2, 1));
    assert_eq!(code(&run(&["solve", l1, &wrong])), 1);
}

#[test]
fn gen_converter_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("conv.essence");
    let (l1, l3) = (data("kfold_colouring.essence"), data("kfold_colouring_function.essence"));
    let o = run(&["gen-converter", l1.to_str().unwrap(), l3.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let got = parse_spec(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(struct_eq(&got, &parse_spec(CONVERTER_SPEC).unwrap(), true));

    let o = run(&["gen-converter", l1.to_str().unwrap(), l1.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("no conversion needed"), "{}", stderr(&o));
}

#[test]
fn convert_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let l1 = data("kfold_colouring.essence");
    let l1 = l1.to_str().unwrap();
    let p = write(dir.path(), "i.param", &param(2, &[(0, 1)], 2, 1));
    let f = write(dir.path(), "f.solution", "letting colouring be function(0 --> {1}, 1 --> {2})\n");
    let o = run(&["convert", l1, &p, &f]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "letting colouring be relation((0, 1), (1, 2))\n");

    let short = write(dir.path(), "s.solution", "letting colouring be function(0 --> {1})\n");
    assert_eq!(code(&run(&["convert", l1, &p, &short])), 5);

    let good = write(dir.path(), "g.solution", "letting colouring be relation((0, 1), (1, 2))\n");
    let o = run(&["validate", l1, &p, &good]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "Valid".to_string()));
    let bad = write(dir.path(), "b.solution", "letting colouring be relation((0, 1), (1, 1))\n");
    let o = run(&["validate", l1, &p, &bad]);
    assert_eq!(code(&o), 5);
    assert!(stdout(&o).starts_with("Invalid\n  forAll (u, v) in edges"), "{}", stdout(&o));
}

#[test]
fn gen_instances_grid_and_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid");
    let o = run(&["gen-instances", "--seed", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 54);
    let again = dir.path().join("again");
    run(&["gen-instances", "--seed", "3", "-o", again.to_str().unwrap()]);
    for e in std::fs::read_dir(&out).unwrap() {
        let e = e.unwrap();
        assert_eq!(std::fs::read(e.path()).unwrap(), std::fs::read(again.join(e.file_name())).unwrap());
    }

    let cfg = write(
        dir.path(),
        "g.toml",
        "n_values = [2, 3]\nedge_density_percents = [50]\ncpn_values = [1]\ncolours_multipliers = [2]\nseed = 1\n",
    );
    let small = dir.path().join("small");
    let o = run(&["gen-instances", "--grid", &cfg, "-o", small.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(std::fs::read_dir(&small).unwrap().count(), 2);

    let dodeca = data("dodecahedral.edges");
    let o = run(&[
        "gen-instances",
        "--edge-list",
        dodeca.to_str().unwrap(),
        "--number-colours",
        "15",
        "--colours-per-node",
        "5",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let inst = specrewriter_core::eval::Instance::parse(&stdout(&o)).unwrap();
    assert_eq!(inst.bindings["n"], specrewriter_core::Value::Int(20));
    assert_eq!(inst.bindings["edges"].members().unwrap().len(), 60);

    let looped = write(dir.path(), "loop.edges", "0 1\n2 2\n");
    let o = run(&["gen-instances", "--edge-list", &looped, "--number-colours", "2", "--colours-per-node", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("self-loop"));
}

#[test]
fn verify_single_instance_and_empty_grid() {
    let dir = tempfile::tempdir().unwrap();
    let l1 = data("kfold_colouring.essence");
    let l1 = l1.to_str().unwrap();
    let p = write(dir.path(), "tri.param", &param(3, &[(0, 1), (1, 0), (1, 2), (2, 1)], 3, 1));
    let o = run(&["verify", l1, &p]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("record id=tri original=12 rewritten=12 bijection=pass validation=pass converter=pass"), "{out}");
    assert!(out.contains("summary records=1 pass=1 fail=0 skipped=0"));

    let empty = write(dir.path(), "e.toml", "n_values = []\nedge_density_percents = [50]\ncpn_values = [1]\ncolour_offsets = [0]\n");
    let o = run(&["verify", l1, "--grid", &empty]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("summary records=0 pass=0 fail=0 skipped=0"));
}

#[test]
fn verify_skips_too_large() {
    let dir = tempfile::tempdir().unwrap();
    let l1 = data("kfold_colouring.essence");
    let p = write(dir.path(), "big.param", &param(4, &[(0, 1)], 4, 2));
    let o = run(&["verify", l1.to_str().unwrap(), &p, "--max-ground", "100"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("skipped(TooLarge)"));
    assert!(stdout(&o).contains("summary records=1 pass=0 fail=0 skipped=1"));
}

#[test]
fn verify_catches_a_broken_rule() {
    let dir = tempfile::tempdir().unwrap();
    let mutant = write(dir.path(), "mutant.gp2r", MUTANT_RULE);
    let l1 = data("kfold_colouring.essence");
    let p = write(dir.path(), "e.param", &param(2, &[(0, 1), (1, 0)], 2, 1));
    let o = run(&["verify", l1.to_str().unwrap(), &p, "--rules", &mutant]);
    assert_eq!(code(&o), 5, "{}\n{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("bijection=fail validation=fail"), "{}", stdout(&o));
    let err = stderr(&o);
    assert!(err.contains("Invalid") && err.contains("counterexample"), "{err}");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}
