//! The shipped rule library: relation decision variable + counting
//! constraint ⇒ total function to fixed-size sets.
//!
//! Stages (procedures in `pipeline.gp2r`): Normalise, Tag, Propagate, Glue,
//! Shrink, Cleanup. Glue runs before Shrink because the element domain and
//! the count it needs live inside the tagged subtrees Shrink deletes.

use std::fs;
use std::path::Path;

use crate::engine::{parse_rule_file, run_with_trace, Applied, RuleError, RuleSet, RunError, DEFAULT_FUEL};
use crate::essence::{check_scopes, DeclKind, Domain, ScopeError, Specification};
use crate::graph::{decode, encode, Atom, DecodeError, LabeledGraph, Mark};

/// Placeholder the glue rules give the auxiliary domain; labels cannot be
/// computed by rules, so the final `<B>Set` name is filled in afterwards.
pub const AUX_PLACEHOLDER: &str = "$aux";

const BUILTIN: &[(&str, &str)] = &[
    ("tagRelationDecisionVariable", include_str!("../../rules/tagRelationDecisionVariable.gp2r")),
    ("normalise", include_str!("../../rules/normalise.gp2r")),
    ("tag", include_str!("../../rules/tag.gp2r")),
    ("propagate", include_str!("../../rules/propagate.gp2r")),
    ("glue", include_str!("../../rules/glue.gp2r")),
    ("shrink", include_str!("../../rules/shrink.gp2r")),
    ("cleanup", include_str!("../../rules/cleanup.gp2r")),
    ("pipeline", include_str!("../../rules/pipeline.gp2r")),
];

/// The shipped `.gp2r` sources, in merge order (`pipeline` supplies `Main`).
pub fn builtin_rule_files() -> Vec<(&'static str, &'static str)> {
    BUILTIN.to_vec()
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{file}: {source}")]
    Rule { file: String, source: RuleError },
    #[error("{file}: {source}")]
    Io { file: String, source: std::io::Error },
    #[error("rule set has no `Main` program")]
    NoMain,
}

/// Parses and merges rule files in order; later files win on name clashes.
pub fn merge_rule_files<'a>(files: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<RuleSet, LoadError> {
    let mut set = RuleSet::default();
    for (file, text) in files {
        let parsed = parse_rule_file(text).map_err(|source| LoadError::Rule { file: file.to_string(), source })?;
        set.merge(parsed);
    }
    Ok(set)
}

pub fn builtin_rules() -> RuleSet {
    merge_rule_files(builtin_rule_files()).expect("built-in rules parse")
}

/// Loads every `*.gp2r` in `dir`, sorted by name with `pipeline.gp2r` last.
pub fn load_rules_dir(dir: &Path) -> Result<RuleSet, LoadError> {
    let io = |source| LoadError::Io { file: dir.display().to_string(), source };
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "gp2r"))
        .collect();
    paths.sort_by_key(|p| (p.file_name().is_some_and(|n| n == "pipeline.gp2r"), p.clone()));
    let mut texts = Vec::new();
    for p in &paths {
        let text = fs::read_to_string(p).map_err(|source| LoadError::Io { file: p.display().to_string(), source })?;
        texts.push((p.display().to_string(), text));
    }
    merge_rule_files(texts.iter().map(|(f, t)| (f.as_str(), t.as_str())))
}

/// Reads rule files from disk and merges them over `base`.
pub fn extend_with_files(base: &mut RuleSet, files: &[impl AsRef<Path>]) -> Result<(), LoadError> {
    for f in files {
        let f = f.as_ref();
        let file = f.display().to_string();
        let text = fs::read_to_string(f).map_err(|source| LoadError::Io { file: file.clone(), source })?;
        base.merge(parse_rule_file(&text).map_err(|source| LoadError::Rule { file, source })?);
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ReformulationResult {
    pub rewritten: Specification,
    pub report: Vec<Applied>,
    pub aux_domain_name: Option<String>,
    pub host_before: LabeledGraph,
    pub host_after: LabeledGraph,
}

#[derive(Debug, thiserror::Error)]
pub enum ReformulateError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("{0}")]
    Rules(#[from] LoadError),
    #[error("invalid rule set: {0}")]
    InvalidRules(RuleError),
    #[error("engine failed in stage {}: {source}", stage.as_deref().unwrap_or("Main"))]
    Engine { stage: Option<String>, source: RunError },
    #[error("rewritten graph does not decode: {0}")]
    Decode(#[from] DecodeError),
    #[error("rewritten specification is not well-scoped: {0}")]
    Scope(#[from] ScopeError),
}

impl ReformulateError {
    pub fn is_not_applicable(&self) -> bool {
        matches!(self, ReformulateError::NotApplicable(_))
    }
}

/// Runs the built-in library on `spec`.
pub fn reformulate(spec: &Specification) -> Result<ReformulationResult, ReformulateError> {
    Reformulator::new(builtin_rules()).reformulate(spec, "spec")
}

#[derive(Debug, Clone)]
pub struct Reformulator {
    pub rules: RuleSet,
    pub fuel: usize,
}

impl Reformulator {
    pub fn new(rules: RuleSet) -> Self {
        Reformulator { rules, fuel: DEFAULT_FUEL }
    }

    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }

    /// `name` labels the graph root (normally the file stem).
    pub fn reformulate(&self, spec: &Specification, name: &str) -> Result<ReformulationResult, ReformulateError> {
        self.rules.validate().map_err(ReformulateError::InvalidRules)?;
        let main = self.rules.main.as_ref().ok_or(LoadError::NoMain)?;
        let host_before = encode(spec, name);
        let outcome = match run_with_trace(main, &self.rules, &host_before, self.fuel) {
            Ok(o) => o,
            Err(RunError::Stuck { path }) if self.stuck_while_tagging(&path) => {
                return Err(ReformulateError::NotApplicable(format!(
                    "no match for {}",
                    path.last().map(String::as_str).unwrap_or("Main")
                )))
            }
            Err(source) => {
                let stage = match &source {
                    RunError::Stuck { path } => self.stage_of(path),
                    _ => None,
                };
                return Err(ReformulateError::Engine { stage, source });
            }
        };
        let mut host_after = outcome.graph;
        let mut rewritten = decode(&host_after)?;
        let aux_domain_name = match aux_base(&rewritten) {
            Some(base) => {
                let name = unique_name(&rewritten, &format!("{base}Set"));
                for id in host_after.nodes().map(|n| n.id).collect::<Vec<_>>() {
                    let node = host_after.node_mut(id).unwrap();
                    if node.label.as_str() == Some(AUX_PLACEHOLDER) {
                        node.label = Atom::str(&name);
                    }
                }
                rewritten = decode(&host_after)?;
                Some(name)
            }
            None => None,
        };
        debug_assert_eq!(host_after.count_marked(Mark::Red), 0);
        check_scopes(&rewritten)?;
        Ok(ReformulationResult { rewritten, report: outcome.trace, aux_domain_name, host_before, host_after })
    }

    fn stage_of(&self, path: &[String]) -> Option<String> {
        path.iter().find(|s| self.rules.procedures.contains_key(*s)).cloned()
    }

    /// The pattern is absent when tagging fails (or, for rule sets without a
    /// `Tag` stage, when the very first step fails).
    fn stuck_while_tagging(&self, path: &[String]) -> bool {
        if self.rules.procedures.contains_key("Tag") {
            path.iter().any(|s| s == "Tag")
        } else {
            path.first().is_some_and(|s| s == "#1" || path.len() == 1)
        }
    }
}

fn aux_base(spec: &Specification) -> Option<String> {
    let decl = spec.declarations.iter().find(|d| d.name == AUX_PLACEHOLDER && d.kind == DeclKind::LettingDomain)?;
    match decl.domain()? {
        Domain::Set { element, .. } => match element.as_ref() {
            Domain::Named(b) => Some(b.clone()),
            _ => Some("aux".to_string()),
        },
        _ => Some("aux".to_string()),
    }
}

fn unique_name(spec: &Specification, want: &str) -> String {
    let taken = |n: &str| spec.declarations.iter().any(|d| d.name == n);
    if !taken(want) {
        return want.to_string();
    }
    (2..).map(|i| format!("{want}{i}")).find(|n| !taken(n)).unwrap()
}
