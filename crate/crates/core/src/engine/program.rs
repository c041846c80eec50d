use super::*;
use crate::graph::{GraphError, LabeledGraph};

pub const DEFAULT_FUEL: usize = 10_000;

/// One committed rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applied {
    pub rule: String,
    /// Innermost enclosing procedure, if any.
    pub stage: Option<String>,
    pub summary: String,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub graph: LabeledGraph,
    pub trace: Vec<Applied>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("stuck at {}", .path.join(" / "))]
    Stuck { path: Vec<String> },
    #[error("fuel exhausted after {applications} rule applications")]
    FuelExhausted { applications: usize },
    #[error("unknown rule or procedure `{0}`")]
    UnknownName(String),
    #[error("{0}")]
    Apply(#[from] GraphError),
}

pub fn run(program: &RuleProgram, rules: &RuleSet, host: &LabeledGraph, fuel: usize) -> Result<LabeledGraph, RunError> {
    run_with_trace(program, rules, host, fuel).map(|o| o.graph)
}

/// Runs a program. Failed `Loop` iterations and failed `Try` bodies are
/// rolled back; their applications still count against `fuel`.
pub fn run_with_trace(
    program: &RuleProgram,
    rules: &RuleSet,
    host: &LabeledGraph,
    fuel: usize,
) -> Result<RunOutcome, RunError> {
    let mut r = Runner { rules, fuel, attempted: 0, trace: Vec::new(), path: Vec::new(), stages: Vec::new() };
    let graph = r.exec(program, host.clone())?;
    Ok(RunOutcome { graph, trace: r.trace })
}

struct Runner<'a> {
    rules: &'a RuleSet,
    fuel: usize,
    attempted: usize,
    trace: Vec<Applied>,
    path: Vec<String>,
    stages: Vec<String>,
}

impl Runner<'_> {
    fn exec(&mut self, p: &RuleProgram, g: LabeledGraph) -> Result<LabeledGraph, RunError> {
        match p {
            RuleProgram::Call(name) => {
                if let Some(proc_) = self.rules.procedures.get(name) {
                    self.path.push(name.clone());
                    self.stages.push(name.clone());
                    let out = self.exec(proc_, g);
                    self.stages.pop();
                    self.path.pop();
                    out
                } else {
                    self.apply_one(std::slice::from_ref(name), g)
                }
            }
            RuleProgram::Choice(names) => self.apply_one(names, g),
            RuleProgram::Seq(ps) => {
                let mut g = g;
                for (i, q) in ps.iter().enumerate() {
                    self.path.push(format!("#{}", i + 1));
                    let out = self.exec(q, g);
                    self.path.pop();
                    g = out?;
                }
                Ok(g)
            }
            RuleProgram::Loop(body) => {
                let mut g = g;
                loop {
                    let mark = self.trace.len();
                    self.path.push("loop".to_string());
                    let out = self.exec(body, g.clone());
                    self.path.pop();
                    match out {
                        Ok(next) => {
                            g = next;
                            if self.trace.len() == mark {
                                return Ok(g);
                            }
                        }
                        Err(RunError::Stuck { .. }) => {
                            self.trace.truncate(mark);
                            return Ok(g);
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            RuleProgram::Try(body) => {
                let mark = self.trace.len();
                self.path.push("try".to_string());
                let out = self.exec(body, g.clone());
                self.path.pop();
                match out {
                    Err(RunError::Stuck { .. }) => {
                        self.trace.truncate(mark);
                        Ok(g)
                    }
                    other => other,
                }
            }
        }
    }

    fn apply_one(&mut self, names: &[String], g: LabeledGraph) -> Result<LabeledGraph, RunError> {
        for name in names {
            let rule = self.rules.rule(name).ok_or_else(|| RunError::UnknownName(name.clone()))?;
            if let Some(m) = find_first_match(rule, &g) {
                if self.attempted >= self.fuel {
                    return Err(RunError::FuelExhausted { applications: self.attempted });
                }
                self.attempted += 1;
                let next = apply(rule, &m, &g)?;
                self.trace.push(Applied { rule: name.clone(), stage: self.stages.last().cloned(), summary: m.to_string() });
                return Ok(next);
            }
        }
        let mut path = self.path.clone();
        path.push(if names.len() == 1 { names[0].clone() } else { format!("{{{}}}", names.join(", ")) });
        Err(RunError::Stuck { path })
    }
}
