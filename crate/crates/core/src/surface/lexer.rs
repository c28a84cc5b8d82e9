use crate::kernel::Stage;

use super::ast::Span;
use super::{Diagnostic, DiagnosticKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Identifier with a stage mark, as in `Nat@d`.
    Marked(String, Stage),
    Num(u64),
    /// Numeral literal, as in `7@s`.
    Lit(u64, Stage),
    Backslash,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Tilde,
    Comma,
    Colon,
    Semi,
    Eq,
    Star,
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Marked(s, st) => format!("`{s}@{}`", mark(*st)),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Lit(n, st) => format!("`{n}@{}`", mark(*st)),
            Tok::Eof => "end of input".to_owned(),
            other => format!("`{}`", punct(other)),
        }
    }
}

fn mark(s: Stage) -> char {
    if s == Stage::Sta {
        's'
    } else {
        'd'
    }
}

fn punct(t: &Tok) -> &'static str {
    match t {
        Tok::Backslash => "\\",
        Tok::Dot => ".",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBracket => "[",
        Tok::RBracket => "]",
        Tok::Lt => "<",
        Tok::Gt => ">",
        Tok::Tilde => "~",
        Tok::Comma => ",",
        Tok::Colon => ":",
        Tok::Semi => ";",
        Tok::Eq => "=",
        Tok::Star => "*",
        Tok::Arrow => "->",
        _ => "?",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |span, message: String| Diagnostic::new(DiagnosticKind::SyntaxError, span, message);
    while i < chars.len() {
        let c = chars[i];
        let span = Span::new(line, col);
        let start = i;
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
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if is_ident_start(c) || c.is_ascii_digit() {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let stage = match (chars.get(i), chars.get(i + 1), chars.get(i + 2)) {
                (Some('@'), Some(m @ ('s' | 'd')), next)
                    if !next.is_some_and(|n| is_ident_char(*n)) =>
                {
                    i += 2;
                    Some(if *m == 's' { Stage::Sta } else { Stage::Dyn })
                }
                (Some('@'), ..) => return Err(err(span, "expected `@s` or `@d`".to_owned())),
                _ => None,
            };
            if c.is_ascii_digit() {
                let n = word
                    .parse::<u64>()
                    .map_err(|_| err(span, format!("invalid number `{word}`")))?;
                match stage {
                    Some(s) => Tok::Lit(n, s),
                    None => Tok::Num(n),
                }
            } else {
                match stage {
                    Some(s) => Tok::Marked(word, s),
                    None => Tok::Ident(word),
                }
            }
        } else {
            i += 1;
            match c {
                '\\' | 'λ' => Tok::Backslash,
                '.' => Tok::Dot,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                '~' => Tok::Tilde,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                '*' => Tok::Star,
                '-' if chars.get(i) == Some(&'>') => {
                    i += 1;
                    Tok::Arrow
                }
                _ => return Err(err(span, format!("unexpected character `{c}`"))),
            }
        };
        col += i - start;
        out.push(Token { tok, span });
    }
    out.push(Token { tok: Tok::Eof, span: Span::new(line, col) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn marks_and_literals() {
        assert_eq!(
            toks("Nat@d 7@s 3 x'"),
            vec![
                Tok::Marked("Nat".into(), Stage::Dyn),
                Tok::Lit(7, Stage::Sta),
                Tok::Num(3),
                Tok::Ident("x'".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn arrows_comments_and_positions() {
        let ts = lex("a -> b -- note\n  <c>").unwrap();
        let kinds: Vec<_> = ts.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("a".into()),
                Tok::Arrow,
                Tok::Ident("b".into()),
                Tok::Lt,
                Tok::Ident("c".into()),
                Tok::Gt,
                Tok::Eof
            ]
        );
        assert_eq!(ts[3].span, Span::new(2, 3));
    }

    #[test]
    fn bad_mark() {
        let e = lex("Nat@q").unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::SyntaxError);
        assert_eq!(e.span, Span::new(1, 1));
    }

    #[test]
    fn stray_character() {
        let e = lex("x $").unwrap_err();
        assert_eq!(e.span, Span::new(1, 3));
    }
}
