use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Int(s) => write!(f, "integer {s}"),
            Tok::Sym(s) => write!(f, "'{s}'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {msg}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub span: Span,
    pub msg: String,
    pub expected: Vec<String>,
}

fn expected_suffix(e: &[String]) -> String {
    if e.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", e.join(", "))
    }
}

const SYMS: &[&str] = &["->", ";", "=", "(", ")", "[", "]", "{", "}", ",", "/", ":", "+", "-", "*", "^"];

pub fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
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
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), span));
            col += i - start;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), span));
            col += i - start;
            continue;
        }
        let sym = SYMS.iter().find(|s| s.chars().enumerate().all(|(k, sc)| chars.get(i + k) == Some(&sc)));
        match sym {
            Some(s) => {
                out.push((Tok::Sym(s), span));
                i += s.len();
                col += s.len();
            }
            None => return Err(ParseError { span, msg: format!("unexpected character '{c}'"), expected: Vec::new() }),
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = lex("ring R = Q[x];\n# note\nquery dim R; // tail").unwrap();
        assert_eq!(toks[0], (Tok::Ident("ring".into()), Span { line: 1, col: 1 }));
        assert_eq!(toks[4], (Tok::Sym("["), Span { line: 1, col: 11 }));
        let q = toks.iter().find(|(t, _)| *t == Tok::Ident("query".into())).unwrap();
        assert_eq!(q.1, Span { line: 3, col: 1 });
        assert_eq!(toks.last().unwrap().0, Tok::Eof);
    }

    #[test]
    fn arrows_and_errors() {
        let toks = lex("f : R -> S").unwrap();
        assert_eq!(toks[3].0, Tok::Sym("->"));
        let e = lex("ring R = Q @").unwrap_err();
        assert_eq!(e.span, Span { line: 1, col: 12 });
    }
}
