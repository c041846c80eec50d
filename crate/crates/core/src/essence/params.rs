//! `.param` / `.solution` files: `letting <name> be <value-literal>` lines.

use super::lexer::Tok;
use super::parser::Parser;
use super::ParseError;
use crate::value::Value;

/// Parses a parameter or solution file into `(name, value)` bindings, in
/// file order. Names must be unique.
pub fn parse_bindings(text: &str) -> Result<Vec<(String, Value)>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out: Vec<(String, Value)> = Vec::new();
    while !p.at_eof() {
        p.expect_word("letting")?;
        let (line, col) = p.here();
        let name = p.expect_ident()?;
        if out.iter().any(|(n, _)| *n == name) {
            return Err(ParseError::new(line, col, format!("`{name}` is bound more than once")));
        }
        p.expect_word("be")?;
        let value = p.parse_value()?;
        out.push((name, value));
    }
    Ok(out)
}

/// Parses a single value literal such as `relation((0, 1), (1, 2))`.
pub fn parse_value(text: &str) -> Result<Value, ParseError> {
    let mut p = Parser::new(text)?;
    let v = p.parse_value()?;
    if !p.at_eof() {
        return Err(p.error("trailing input after value", &[]));
    }
    Ok(v)
}

/// Renders bindings in the same format `parse_bindings` reads.
pub fn print_bindings<'a>(bindings: impl IntoIterator<Item = (&'a str, &'a Value)>) -> String {
    let mut out = String::new();
    for (name, value) in bindings {
        out.push_str(&format!("letting {name} be {value}\n"));
    }
    out
}

impl Parser {
    pub(super) fn parse_value(&mut self) -> Result<Value, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Value::Int(v))
            }
            Tok::Sym("-") => {
                self.bump();
                let v = self.expect_int()?;
                Ok(Value::Int(-v))
            }
            Tok::Sym("(") => {
                self.bump();
                let mut elems = vec![self.parse_value()?];
                while self.eat_sym(",") {
                    elems.push(self.parse_value()?);
                }
                self.expect_sym(")")?;
                if elems.len() < 2 {
                    return Err(self.error("tuple literals need at least two components", &[","]));
                }
                Ok(Value::tuple(elems))
            }
            Tok::Sym("{") => {
                self.bump();
                let elems = self.value_list("}")?;
                Ok(Value::set(elems))
            }
            Tok::Ident(w) if w == "relation" => {
                self.bump();
                self.expect_sym("(")?;
                let tuples = self.value_list(")")?;
                if let Some(bad) = tuples.iter().find(|t| !matches!(t, Value::Tuple(_))) {
                    return Err(self.error(format!("relation members must be tuples, got `{bad}`"), &["("]));
                }
                Ok(Value::relation(tuples))
            }
            Tok::Ident(w) if w == "function" => {
                self.bump();
                self.expect_sym("(")?;
                let mut entries = Vec::new();
                if !self.eat_sym(")") {
                    loop {
                        let k = self.parse_value()?;
                        self.expect_sym("-->")?;
                        let v = self.parse_value()?;
                        if entries.iter().any(|(x, _)| *x == k) {
                            return Err(self.error(format!("function maps `{k}` more than once"), &[]));
                        }
                        entries.push((k, v));
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                    self.expect_sym(")")?;
                }
                Ok(Value::function(entries))
            }
            _ => Err(self.error(
                "expected a value literal",
                &["integer", "(", "{", "relation", "function"],
            )),
        }
    }

    fn value_list(&mut self, close: &'static str) -> Result<Vec<Value>, ParseError> {
        let mut elems = Vec::new();
        if self.eat_sym(close) {
            return Ok(elems);
        }
        loop {
            elems.push(self.parse_value()?);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(close)?;
        Ok(elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_file() {
        let text = "$ instance\nletting n be 2\nletting edges be relation((0,1),(1,0))\n\
                    letting s be {2, 1}\nletting f be function(0 --> {1}, 1 --> {})\nletting m be -3\n";
        let b = parse_bindings(text).unwrap();
        assert_eq!(b[0], ("n".to_string(), Value::Int(2)));
        assert_eq!(b[1].1, Value::int_relation([(0, 1), (1, 0)]));
        assert_eq!(b[2].1, Value::int_set([1, 2]));
        assert_eq!(
            b[3].1,
            Value::function([(Value::Int(0), Value::int_set([1])), (Value::Int(1), Value::int_set([]))])
        );
        assert_eq!(b[4].1, Value::Int(-3));
    }

    #[test]
    fn empty_collections() {
        assert_eq!(parse_value("relation()").unwrap(), Value::relation([]));
        assert_eq!(parse_value("function()").unwrap(), Value::function([]));
        assert_eq!(parse_value("{}").unwrap(), Value::set([]));
    }

    #[test]
    fn duplicate_binding_rejected() {
        assert!(parse_bindings("letting n be 1\nletting n be 2").is_err());
    }

    #[test]
    fn printed_bindings_reparse() {
        let v = Value::function([(Value::Int(3), Value::int_set([1, 4]))]);
        let text = print_bindings([("colouring", &v)]);
        assert_eq!(text, "letting colouring be function(3 --> {1, 4})\n");
        assert_eq!(parse_bindings(&text).unwrap()[0].1, v);
    }
}
