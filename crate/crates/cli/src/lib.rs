//! The `specrewriter` command line: rewriting, solving, conversion,
//! validation, instance generation and batch verification.

pub mod commands;
pub mod verify;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use specrewriter_core::essence::{parse_spec, EssenceError, Specification};
use specrewriter_core::eval::{EvalError, Instance};
use specrewriter_core::rules::{builtin_rules, extend_with_files, load_rules_dir, LoadError};
use specrewriter_core::engine::RuleSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_ENGINE: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

pub const RULES_DIR_ENV: &str = "SPECREWRITER_RULES_DIR";

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

pub type CmdResult = Result<i32, Failure>;

pub fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// Writes to `out` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn load_spec(path: &Path) -> Result<Specification, Failure> {
    let text = read_text(path)?;
    parse_spec(&text).map_err(|e: EssenceError| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

pub fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let text = read_text(path)?;
    Instance::parse(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_error(e: LoadError) -> Failure {
    Failure::new(EXIT_PARSE, format!("rule file {e}"))
}

/// Built-in rules (or `$SPECREWRITER_RULES_DIR`), then `extra` files on top.
pub fn load_rules(extra: &[PathBuf]) -> Result<RuleSet, Failure> {
    let mut set = match std::env::var_os(RULES_DIR_ENV) {
        Some(dir) => load_rules_dir(Path::new(&dir)).map_err(load_error)?,
        None => builtin_rules(),
    };
    extend_with_files(&mut set, extra).map_err(load_error)?;
    Ok(set)
}

pub fn eval_failure(e: EvalError) -> Failure {
    let code = match e.root() {
        EvalError::TooLarge { .. } => EXIT_TOO_LARGE,
        EvalError::MissingGiven(_) | EvalError::DomainViolation { .. } => EXIT_PARSE,
        _ => EXIT_ENGINE,
    };
    Failure::new(code, e.to_string())
}

pub fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "spec".into())
}
