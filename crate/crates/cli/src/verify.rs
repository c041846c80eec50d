//! Batch equivalence checking and its report.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use specrewriter_core::convert::{convert_solution, validate, Validation};
use specrewriter_core::essence::Specification;
use specrewriter_core::eval::{solve_with, Env, EvalError, Instance, SolveOptions, Solution};
use specrewriter_core::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    /// The instance was too large to enumerate.
    Skipped,
}

impl Verdict {
    pub fn key(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Skipped => "skipped",
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Verdict::Skipped => "skipped(TooLarge)",
            v => v.key(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Record {
    pub id: String,
    pub original: Option<usize>,
    pub rewritten: Option<usize>,
    pub bijection: Verdict,
    pub validation: Verdict,
    pub converter: Verdict,
    pub timings_ms: Vec<(&'static str, f64)>,
    pub applications: usize,
    pub counterexample: Option<String>,
}

impl Record {
    fn verdicts(&self) -> [&Verdict; 3] {
        [&self.bijection, &self.validation, &self.converter]
    }

    pub fn failed(&self) -> bool {
        self.verdicts().iter().any(|v| matches!(v, Verdict::Fail(_)))
    }

    pub fn skipped(&self) -> bool {
        !self.failed() && self.verdicts().iter().any(|v| **v == Verdict::Skipped)
    }

    pub fn total_ms(&self) -> f64 {
        self.timings_ms.iter().map(|(_, t)| t).sum()
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub records: Vec<Record>,
}

impl RunReport {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.failed()).count()
    }

    pub fn skipped(&self) -> usize {
        self.records.iter().filter(|r| r.skipped()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn table(&self) -> String {
        let width = self.records.iter().map(|r| r.id.len()).max().unwrap_or(0).max(8);
        let mut s = format!(
            "{:<width$}  {:>6}  {:>6}  {:<17}  {:<17}  {:<17}  {:>9}\n",
            "instance", "orig", "rewr", "bijection", "validation", "converter", "total_ms"
        );
        let count = |c: Option<usize>| c.map_or("-".to_string(), |c| c.to_string());
        for r in &self.records {
            let _ = writeln!(
                s,
                "{:<width$}  {:>6}  {:>6}  {:<17}  {:<17}  {:<17}  {:>9.1}",
                r.id,
                count(r.original),
                count(r.rewritten),
                r.bijection.label(),
                r.validation.label(),
                r.converter.label(),
                r.total_ms()
            );
        }
        s
    }

    /// One `record key=value ...` line per instance, then a `summary` line.
    pub fn machine_lines(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let count = |c: Option<usize>| c.map_or("-".to_string(), |c| c.to_string());
            let _ = write!(
                s,
                "record id={} original={} rewritten={} bijection={} validation={} converter={} applications={}",
                r.id,
                count(r.original),
                count(r.rewritten),
                r.bijection.key(),
                r.validation.key(),
                r.converter.key(),
                r.applications
            );
            for (k, t) in &r.timings_ms {
                let _ = write!(s, " {k}_ms={t:.3}");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "summary records={} pass={} fail={} skipped={}",
            self.records.len(),
            self.records.len() - self.failures() - self.skipped(),
            self.failures(),
            self.skipped()
        );
        s
    }

    /// Details of every failing record.
    pub fn failure_details(&self) -> String {
        let mut s = String::new();
        for r in self.records.iter().filter(|r| r.failed()) {
            let _ = writeln!(s, "instance {} failed:", r.id);
            for (name, v) in [("bijection", &r.bijection), ("validation", &r.validation), ("converter", &r.converter)] {
                if let Verdict::Fail(why) = v {
                    let _ = writeln!(s, "  {name}: {why}");
                }
            }
            if let Some(c) = &r.counterexample {
                let _ = writeln!(s, "  counterexample: {c}");
            }
        }
        s
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub max_ground: u128,
    /// Also solve the generated converter specification per solution.
    pub check_converter_spec: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_ground: specrewriter_core::eval::DEFAULT_MAX_GROUND, check_converter_spec: true }
    }
}

/// The pair under test, shared by every instance.
pub struct Subject<'a> {
    pub original: &'a Specification,
    pub rewritten: &'a Specification,
    pub converter: Option<&'a Specification>,
    pub applications: usize,
}

fn timed<T>(timings: &mut Vec<(&'static str, f64)>, key: &'static str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    timings.push((key, t.elapsed().as_secs_f64() * 1000.0));
    out
}

fn find_name(spec: &Specification) -> Result<String, String> {
    let finds: Vec<_> = spec.finds().collect();
    match finds.as_slice() {
        [f] => Ok(f.name.clone()),
        _ => Err(format!("expected one find, found {}", finds.len())),
    }
}

pub fn verify_instance(subject: &Subject, id: &str, inst: &Instance, opts: VerifyOptions) -> Record {
    let mut rec = Record {
        id: id.to_string(),
        original: None,
        rewritten: None,
        bijection: Verdict::Skipped,
        validation: Verdict::Skipped,
        converter: Verdict::Skipped,
        timings_ms: Vec::new(),
        applications: subject.applications,
        counterexample: None,
    };
    let fail_all = |rec: &mut Record, why: String| {
        rec.bijection = Verdict::Fail(why.clone());
        rec.validation = Verdict::Fail(why.clone());
        rec.converter = Verdict::Fail(why);
    };
    let solve_opts = SolveOptions { limit: None, max_ground: opts.max_ground };
    let mut timings = Vec::new();
    let solved = |spec: &Specification, timings: &mut Vec<_>, key| timed(timings, key, || solve_with(spec, inst, solve_opts));
    let originals = solved(subject.original, &mut timings, "solve_original");
    let rewrittens = solved(subject.rewritten, &mut timings, "solve_rewritten");
    rec.timings_ms = timings;
    let (originals, rewrittens) = match (originals, rewrittens) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) if e.is_too_large() => return rec,
        (Err(e), _) | (_, Err(e)) => {
            fail_all(&mut rec, e.to_string());
            return rec;
        }
    };
    rec.original = Some(originals.len());
    rec.rewritten = Some(rewrittens.len());

    let (find_o, find_r) = match (find_name(subject.original), find_name(subject.rewritten)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            fail_all(&mut rec, e);
            return rec;
        }
    };
    let env = match Env::for_instance(subject.original, inst, opts.max_ground) {
        Ok(env) => env,
        Err(e) => {
            fail_all(&mut rec, e.to_string());
            return rec;
        }
    };
    let domain = subject.original.declaration(&find_o).and_then(|d| d.domain()).unwrap().clone();

    // Direct conversion and the bijection check.
    let mut timings = std::mem::take(&mut rec.timings_ms);
    let converted: Result<Vec<Value>, (String, String)> = timed(&mut timings, "convert", || {
        rewrittens
            .iter()
            .map(|s| convert_solution(&s[&find_r], &domain, &env).map_err(|e| (e.to_string(), s[&find_r].to_string())))
            .collect()
    });
    let want: BTreeSet<Value> = originals.iter().map(|s| s[&find_o].clone()).collect();
    let converted = match converted {
        Ok(c) => c,
        Err((why, witness)) => {
            rec.timings_ms = timings;
            fail_all(&mut rec, why);
            rec.counterexample = Some(format!("rewritten solution {witness}"));
            return rec;
        }
    };
    let got: BTreeSet<Value> = converted.iter().cloned().collect();
    rec.bijection = if got.len() != converted.len() {
        let mut seen = BTreeSet::new();
        let dup = converted.iter().find(|v| !seen.insert(*v)).unwrap();
        rec.counterexample = Some(format!("two rewritten solutions convert to {dup}"));
        Verdict::Fail("conversion is not injective".into())
    } else if got != want {
        if let Some(extra) = got.difference(&want).next() {
            rec.counterexample = Some(format!("converted {extra} is not an original solution"));
        } else if let Some(missing) = want.difference(&got).next() {
            rec.counterexample = Some(format!("original solution {missing} has no rewritten preimage"));
        }
        Verdict::Fail(format!("{} converted vs {} original solutions", got.len(), want.len()))
    } else {
        Verdict::Pass
    };

    let (validation, witness) = timed(&mut timings, "validate", || {
        for c in &converted {
            match validate(subject.original, inst, c) {
                Ok(Validation::Valid) => {}
                Ok(Validation::Invalid(failing)) => {
                    return (Verdict::Fail(format!("Invalid: {}", failing.join("; "))), Some(c.to_string()))
                }
                Err(e) => return (Verdict::Fail(e.to_string()), Some(c.to_string())),
            }
        }
        (Verdict::Pass, None)
    });
    rec.validation = validation;
    if rec.counterexample.is_none() {
        rec.counterexample = witness;
    }

    if let (true, Some(conv)) = (opts.check_converter_spec, subject.converter) {
        rec.converter = timed(&mut timings, "converter", || converter_agreement(conv, inst, &rewrittens, &converted, &find_r, &find_o, solve_opts));
    }
    rec.timings_ms = timings;
    rec
}

fn converter_agreement(
    conv: &Specification,
    inst: &Instance,
    rewrittens: &[Solution],
    converted: &[Value],
    find_r: &str,
    find_o: &str,
    opts: SolveOptions,
) -> Verdict {
    let Some(sol_name) = conv.givens().last().map(|d| d.name.clone()) else {
        return Verdict::Fail("converter has no givens".into());
    };
    for (s, direct) in rewrittens.iter().zip(converted) {
        let bound = inst.clone().with(sol_name.clone(), s[find_r].clone());
        match solve_with(conv, &bound, SolveOptions { limit: Some(2), ..opts }) {
            Ok(found) if found.len() == 1 && &found[0][find_o] == direct => {}
            Ok(found) => {
                return Verdict::Fail(format!(
                    "converter specification gave {} solution(s) for {}, expected exactly {direct}",
                    found.len(),
                    s[find_r]
                ))
            }
            Err(EvalError::TooLarge { .. }) => return Verdict::Skipped,
            Err(e) => return Verdict::Fail(e.to_string()),
        }
    }
    Verdict::Pass
}

/// Verifies every instance (in parallel); records keep the input order.
pub fn verify_all(subject: &Subject, instances: &[(String, Instance)], opts: VerifyOptions) -> RunReport {
    let records = instances.par_iter().map(|(id, inst)| verify_instance(subject, id, inst, opts)).collect();
    RunReport { records }
}
