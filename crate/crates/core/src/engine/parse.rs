//! Rule files: `Main = <program>`, `Proc = <program>` declarations and rules
//! `name(a,b:string;c:int) [ nodes | edges ] => [ nodes | edges ] interface = {..}`.

use super::*;
use crate::graph::gp2_lex::{Cursor, GTok};

pub fn parse_rule_file(text: &str) -> Result<RuleSet, RuleError> {
    let mut c = Cursor::new(text)?;
    let mut set = RuleSet::default();
    while !c.at_eof() {
        let GTok::Ident(name) = c.peek().clone() else {
            return Err(c.expected(&["rule", "program declaration"]).into());
        };
        if name == "where" {
            return Err(c.error("`where` conditions are not supported").into());
        }
        match c.peek_at(1) {
            GTok::Sym("=") => {
                c.bump();
                c.bump();
                let prog = program(&mut c)?;
                if name == "Main" {
                    if set.main.is_some() {
                        return Err(c.error("`Main` is declared twice").into());
                    }
                    set.main = Some(prog);
                } else if name.starts_with(|ch: char| ch.is_ascii_uppercase()) {
                    if set.procedures.insert(name.clone(), prog).is_some() {
                        return Err(c.error(format!("procedure `{name}` is declared twice")).into());
                    }
                } else {
                    return Err(c.error(format!("procedure name `{name}` must start with an uppercase letter")).into());
                }
            }
            GTok::Sym("(") => {
                let rule = rule(&mut c)?;
                if set.rules.contains_key(&rule.name) {
                    return Err(c.error(format!("rule `{}` is declared twice", rule.name)).into());
                }
                set.rules.insert(rule.name.clone(), rule);
            }
            _ => {
                c.bump();
                return Err(c.expected(&["=", "("]).into());
            }
        }
    }
    Ok(set)
}

/// Parses a standalone program such as `Tag; Shrink!`.
pub fn parse_program(text: &str) -> Result<RuleProgram, RuleError> {
    let mut c = Cursor::new(text)?;
    let p = program(&mut c)?;
    if !c.at_eof() {
        return Err(c.expected(&[";", "end of input"]).into());
    }
    Ok(p)
}

fn program(c: &mut Cursor) -> Result<RuleProgram, ParseError> {
    let mut items = vec![item(c)?];
    while c.eat(";") {
        items.push(item(c)?);
    }
    Ok(if items.len() == 1 { items.pop().unwrap() } else { RuleProgram::Seq(items) })
}

fn item(c: &mut Cursor) -> Result<RuleProgram, ParseError> {
    if matches!(c.peek(), GTok::Ident(s) if s == "try") {
        c.bump();
        return Ok(RuleProgram::try_(item(c)?));
    }
    let mut p = if c.eat("(") {
        let p = program(c)?;
        c.expect(")")?;
        p
    } else if c.eat("{") {
        let mut names = vec![c.ident()?];
        while c.eat(",") {
            names.push(c.ident()?);
        }
        c.expect("}")?;
        RuleProgram::Choice(names)
    } else {
        match c.peek().clone() {
            GTok::Ident(n) if !matches!(n.as_str(), "if" | "then" | "else" | "or" | "skip" | "fail" | "break") => {
                c.bump();
                RuleProgram::Call(n)
            }
            GTok::Ident(n) => return Err(c.error(format!("`{n}` is not supported in programs"))),
            _ => return Err(c.expected(&["rule name", "(", "{", "try"])),
        }
    };
    while c.eat("!") {
        p = RuleProgram::looped(p);
    }
    Ok(p)
}

fn rule(c: &mut Cursor) -> Result<Rule, RuleError> {
    let name = c.ident()?;
    c.expect("(")?;
    let mut params = Vec::new();
    if !c.eat(")") {
        loop {
            let mut group = vec![c.ident()?];
            while c.eat(",") {
                group.push(c.ident()?);
            }
            c.expect(":")?;
            let ty = match c.ident()?.as_str() {
                "string" => VarType::String,
                "int" => VarType::Int,
                "any" => VarType::Any,
                other => return Err(c.error(format!("unsupported variable type `{other}`")).into()),
            };
            params.extend(group.into_iter().map(|name| Param { name, ty }));
            if c.eat(")") {
                break;
            }
            c.expect(";")?;
        }
    }
    let lhs = pattern(c, true)?;
    c.expect("=>")?;
    let rhs = pattern(c, false)?;
    match c.peek().clone() {
        GTok::Ident(s) if s == "interface" => {
            c.bump();
        }
        GTok::Ident(s) if s == "where" => return Err(c.error("`where` conditions are not supported").into()),
        _ => return Err(c.expected(&["interface"]).into()),
    }
    c.expect("=")?;
    c.expect("{")?;
    let mut interface = Vec::new();
    if !c.eat("}") {
        loop {
            interface.push(c.ident()?);
            if c.eat("}") {
                break;
            }
            c.expect(",")?;
        }
    }
    if matches!(c.peek(), GTok::Ident(s) if s == "where") {
        return Err(c.error("`where` conditions are not supported").into());
    }
    Rule::new(name, params, lhs, rhs, interface)
}

fn pattern(c: &mut Cursor, lhs: bool) -> Result<PatternGraph, ParseError> {
    let mut g = PatternGraph::default();
    c.expect("[")?;
    while c.eat("(") {
        let id = c.ident()?;
        c.expect(",")?;
        let label = label(c)?;
        let mark = if c.eat("#") {
            match c.ident()?.as_str() {
                "red" => MarkPattern::MustBeRed,
                "any" if lhs => MarkPattern::AnyMark,
                "any" => return Err(c.error("`# any` is only allowed on the left-hand side")),
                other => return Err(c.error(format!("unsupported mark `{other}`"))),
            }
        } else {
            MarkPattern::MustBeNone
        };
        c.expect(")")?;
        g.nodes.push(PatternNode { id, label, mark });
    }
    c.expect("|")?;
    while c.eat("(") {
        let id = c.ident()?;
        c.expect(",")?;
        let src = c.ident()?;
        c.expect(",")?;
        let tgt = c.ident()?;
        c.expect(",")?;
        let label = label(c)?;
        if c.eat("#") {
            return Err(c.error("edge marks are not supported"));
        }
        c.expect(")")?;
        g.edges.push(PatternEdge { id, src, tgt, label });
    }
    c.expect("]")?;
    Ok(g)
}

fn label(c: &mut Cursor) -> Result<LabelPattern, ParseError> {
    let l = match c.peek().clone() {
        GTok::Int(i) => LabelPattern::Literal(Atom::Int(i)),
        GTok::Str(s) => LabelPattern::Literal(Atom::Str(s)),
        GTok::Ident(v) => LabelPattern::Var(v),
        _ => return Err(c.expected(&["label"])),
    };
    c.bump();
    if c.eat(":") {
        return Err(c.error("list labels are not supported; labels are single atoms"));
    }
    Ok(l)
}
