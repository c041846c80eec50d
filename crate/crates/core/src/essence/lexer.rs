use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    /// A `$` comment; text excludes the `$` and one following space.
    Comment(String),
    Sym(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::Comment(_) => "comment".to_string(),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

// Longest first so maximal munch falls out of the scan order.
const SYMBOLS: &[&str] = &[
    "-->", "..", "->", "!=", "/\\", "(", ")", "[", "]", "{", "}", ",", ":", ".", "*", "+", "-", "=",
    "!",
];

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
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
        let (start_line, start_col) = (line, col);
        if c == '$' {
            let mut j = i + 1;
            while j < chars.len() && chars[j] != '\n' {
                j += 1;
            }
            let raw: String = chars[i + 1..j].iter().collect();
            let text = raw.strip_prefix(' ').unwrap_or(&raw).trim_end().to_string();
            out.push(Token { tok: Tok::Comment(text), line: start_line, col: start_col });
            col += j - i;
            i = j;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            out.push(Token { tok: Tok::Ident(word), line: start_line, col: start_col });
            col += j - i;
            i = j;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let value = digits.parse::<i64>().map_err(|_| {
                ParseError::new(start_line, start_col, format!("integer literal `{digits}` out of range"))
            })?;
            out.push(Token { tok: Tok::Int(value), line: start_line, col: start_col });
            col += j - i;
            i = j;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(sym) => {
                out.push(Token { tok: Tok::Sym(sym), line: start_line, col: start_col });
                i += sym.len();
                col += sym.len();
            }
            None => {
                return Err(ParseError::new(start_line, start_col, format!("unexpected character `{c}`")));
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn arrows_munch_longest() {
        assert_eq!(
            toks("a --> b -> c - d"),
            vec![
                Tok::Ident("a".into()),
                Tok::Sym("-->"),
                Tok::Ident("b".into()),
                Tok::Sym("->"),
                Tok::Ident("c".into()),
                Tok::Sym("-"),
                Tok::Ident("d".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn range_and_comment() {
        assert_eq!(
            toks("int(0..n-1) $ hi there\n"),
            vec![
                Tok::Ident("int".into()),
                Tok::Sym("("),
                Tok::Int(0),
                Tok::Sym(".."),
                Tok::Ident("n".into()),
                Tok::Sym("-"),
                Tok::Int(1),
                Tok::Sym(")"),
                Tok::Comment("hi there".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let t = tokenize("\n  find").unwrap();
        assert_eq!((t[0].line, t[0].col), (2, 3));
    }

    #[test]
    fn rejects_stray_character() {
        let err = tokenize("find x : int(1..3) @").unwrap_err();
        assert_eq!((err.line, err.col), (1, 20));
    }
}
