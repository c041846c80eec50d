//! The supported Essence subset: syntax tree, parser, printer, scoping and
//! comparison.

pub mod ast;
mod compare;
mod lexer;
pub mod params;
mod parser;
mod printer;
mod scope;

use std::fmt;

pub use ast::*;
pub use compare::{decl_alpha_eq, expr_alpha_eq, struct_eq};
pub use parser::is_keyword;
pub use printer::{print_declaration, print_domain, print_expr, print_spec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into(), expected: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("in {context}: {message}")]
pub struct ScopeError {
    pub context: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EssenceError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("scope error {0}")]
    Scope(#[from] ScopeError),
}

/// Parses and scope-checks specification text.
pub fn parse_spec(text: &str) -> Result<Specification, EssenceError> {
    let spec = parse_spec_unchecked(text)?;
    scope::check(&spec)?;
    Ok(spec)
}

/// Parses without scope checking.
pub fn parse_spec_unchecked(text: &str) -> Result<Specification, ParseError> {
    parser::Parser::new(text)?.parse_spec()
}

pub fn check_scopes(spec: &Specification) -> Result<(), ScopeError> {
    scope::check(spec)
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = parser::Parser::new(text)?;
    let e = p.parse_expr()?;
    if !p.at_eof() {
        return Err(p.error("trailing input after expression", &[]));
    }
    Ok(e)
}

pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    let mut p = parser::Parser::new(text)?;
    let d = p.parse_domain()?;
    if !p.at_eof() {
        return Err(p.error("trailing input after domain", &[]));
    }
    Ok(d)
}

impl fmt::Display for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_spec(self))
    }
}
