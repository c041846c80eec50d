#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const RELATION_SPEC: &str = include_str!("../../../../data/kfold_colouring.essence");
pub const FUNCTION_SPEC: &str = include_str!("../../../../data/kfold_colouring_function.essence");
pub const CONVERTER_SPEC: &str = include_str!("../../../../data/kfold_converter.essence");

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_specrewriter"));
    c.env_remove("SPECREWRITER_RULES_DIR");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

pub fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

pub fn param(n: i64, edges: &[(i64, i64)], nc: i64, cpn: i64) -> String {
    let edges: Vec<String> = edges.iter().map(|(a, b)| format!("({a}, {b})")).collect();
    format!(
        "letting n be {n}\nletting edges be relation({})\nletting numberColours be {nc}\nletting coloursPerNode be {cpn}\n",
        edges.join(", ")
    )
}

/// `glueEmptyIntersection` rewritten to emit `1 = 1` instead of the
/// disjointness test: a deliberately wrong reformulation.
pub const MUTANT_RULE: &str = r#"
glueEmptyIntersection(u, v, ca, dv:string)
[
    (o, "forAll") (ob, "") (obk, "binderTuple") (bu, u)
    (bv, v) (i, "forAll" # red) (ik, "forAll") (y1, ca # red)
    (y2, "in" # red) (rv, dv # red) (y3, "->" # red)
|
    (o1, o, ob, 1) (o1k, ob, obk, "kind") (b1, ob, bu, 1) (b2, ob, bv, 2)
    (o3, o, i, 3) (ik1, i, ik, "kind") (i1, i, y1, 1) (i2, i, y2, 2)
    (i3, y2, rv, 1) (i4, i, y3, 3)
]
=>
[
    (o, "forAll") (ob, "") (obk, "binderTuple") (bu, u)
    (bv, v) (i, "=") (ik, "binop") (y1, ca # red)
    (y2, "in" # red) (rv, dv # red) (y3, "->" # red)
    (a, 1) (ak, "intLit") (b, 1) (bk, "intLit")
|
    (o1, o, ob, 1) (o1k, ob, obk, "kind") (b1, ob, bu, 1) (b2, ob, bv, 2)
    (o3, o, i, 3) (ik1, i, ik, "kind") (i1, i, y1, 3) (i2, i, y2, 4)
    (i3, y2, rv, 1) (i4, i, y3, 5) (n1, i, a, 1) (n1k, a, ak, "kind")
    (n2, i, b, 2) (n2k, b, bk, "kind")
]
interface = { o, ob, obk, bu, bv, i, ik, y1, y2, rv, y3 }
"#;
