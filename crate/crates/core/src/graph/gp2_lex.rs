//! Tokenizer shared by the host-graph and rule-file readers.

use crate::essence::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum GTok {
    Ident(String),
    Int(i64),
    Str(String),
    Sym(&'static str),
    Eof,
}

impl GTok {
    pub(crate) fn describe(&self) -> String {
        match self {
            GTok::Ident(s) => format!("`{s}`"),
            GTok::Int(i) => format!("`{i}`"),
            GTok::Str(s) => format!("{s:?}"),
            GTok::Sym(s) => format!("`{s}`"),
            GTok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct GToken {
    pub tok: GTok,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: &[&str] = &["=>", "[", "]", "(", ")", "{", "}", "|", ",", ";", ":", "#", "=", "!"];

/// `\\` and `//` start comments that run to the end of the line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<GToken>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (l0, c0) = (line, col);
        let next = chars.get(i + 1).copied();
        if (c == '\\' && next == Some('\\')) || (c == '/' && next == Some('/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(GToken { tok: GTok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_digit() || (c == '-' && next.is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let digits: String = chars[start..i].iter().collect();
            let v = digits
                .parse()
                .map_err(|_| ParseError::new(l0, c0, format!("integer `{digits}` out of range")))?;
            out.push(GToken { tok: GTok::Int(v), line: l0, col: c0 });
            continue;
        }
        if c == '"' {
            let mut s = String::new();
            i += 1;
            col += 1;
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(ParseError::new(l0, c0, "unterminated string")),
                    Some('"') => {
                        i += 1;
                        col += 1;
                        break;
                    }
                    Some('\\') => {
                        match chars.get(i + 1) {
                            Some(e @ ('"' | '\\')) => s.push(*e),
                            Some('n') => s.push('\n'),
                            _ => return Err(ParseError::new(line, col, "bad escape in string")),
                        }
                        i += 2;
                        col += 2;
                    }
                    Some(ch) => {
                        s.push(*ch);
                        i += 1;
                        col += 1;
                    }
                }
            }
            out.push(GToken { tok: GTok::Str(s), line: l0, col: c0 });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(sym) => {
                out.push(GToken { tok: GTok::Sym(sym), line: l0, col: c0 });
                i += sym.len();
                col += sym.len();
            }
            None => return Err(ParseError::new(l0, c0, format!("unexpected character `{c}`"))),
        }
    }
    out.push(GToken { tok: GTok::Eof, line, col });
    Ok(out)
}

/// Cursor over a token stream with the usual expect/peek helpers.
pub(crate) struct Cursor {
    toks: Vec<GToken>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Cursor { toks: tokenize(text)?, pos: 0 })
    }

    pub(crate) fn peek(&self) -> &GTok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn peek_at(&self, k: usize) -> &GTok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub(crate) fn bump(&mut self) -> GTok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::new(t.line, t.col, message)
    }

    pub(crate) fn expected(&self, what: &[&str]) -> ParseError {
        let mut e = self.error(format!("unexpected {}", self.peek().describe()));
        e.expected = what.iter().map(|s| s.to_string()).collect();
        e
    }

    pub(crate) fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), GTok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.expected(&[sym]))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            GTok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.expected(&["identifier"])),
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        matches!(self.peek(), GTok::Eof)
    }
}
