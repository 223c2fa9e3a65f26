//! Tokens of the script language.
//!
//! Newlines end statements only outside brackets, so tables and frames may
//! span lines. `;` is an explicit statement separator and `#` starts a
//! comment.

use super::ast::Pos;
use super::{Diagnostic, DiagnosticKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// A run of decimal digits.
    Num(String),
    /// `--name`.
    Flag(String),
    Arrow,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Eq,
    Plus,
    Slash,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Flag(s) => format!("flag `--{s}`"),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

pub fn lex(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = source.chars().collect();
    let mut out: Vec<Token> = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    // brackets of any shape; `[0,1/2)` opens with one and closes with another
    let mut depth: usize = 0;
    let push_newline = |out: &mut Vec<Token>, pos: Pos| {
        if out.last().is_some_and(|t| t.tok != Tok::Newline) {
            out.push(Token { tok: Tok::Newline, pos });
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let single = |tok: Tok| Some((tok, 1));
        let lexed: Option<(Tok, usize)> = match c {
            '\n' => {
                if depth == 0 {
                    push_newline(&mut out, pos);
                }
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            ';' => {
                if depth > 0 {
                    return Err(Diagnostic::new(DiagnosticKind::Syntax, pos, "`;` inside brackets"));
                }
                push_newline(&mut out, pos);
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '(' | '[' | '{' => {
                depth += 1;
                single(match c {
                    '(' => Tok::LParen,
                    '[' => Tok::LBrack,
                    _ => Tok::LBrace,
                })
            }
            ')' | ']' | '}' => {
                if depth == 0 {
                    return Err(Diagnostic::new(
                        DiagnosticKind::Syntax,
                        pos,
                        format!("unbalanced `{c}`"),
                    ));
                }
                depth -= 1;
                single(match c {
                    ')' => Tok::RParen,
                    ']' => Tok::RBrack,
                    _ => Tok::RBrace,
                })
            }
            ',' => single(Tok::Comma),
            ':' => single(Tok::Colon),
            '=' => single(Tok::Eq),
            '+' => single(Tok::Plus),
            '/' => single(Tok::Slash),
            '-' => match chars.get(i + 1) {
                Some('>') => Some((Tok::Arrow, 2)),
                Some('-') => {
                    let start = i + 2;
                    let mut j = start;
                    while j < chars.len() && (is_ident_char(chars[j]) || chars[j] == '-') {
                        j += 1;
                    }
                    if j == start {
                        return Err(Diagnostic::new(DiagnosticKind::Syntax, pos, "flag name expected after `--`"));
                    }
                    Some((Tok::Flag(chars[start..j].iter().collect()), j - i))
                }
                _ => None,
            },
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                Some((Tok::Num(chars[i..j].iter().collect()), j - i))
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                Some((Tok::Ident(chars[i..j].iter().collect()), j - i))
            }
            _ => None,
        };
        let Some((tok, len)) = lexed else {
            return Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                pos,
                format!("unexpected character `{c}`"),
            ));
        };
        out.push(Token { tok, pos });
        i += len;
        col += len;
    }
    let end = Pos { line, col };
    if depth > 0 {
        return Err(Diagnostic::new(DiagnosticKind::Syntax, end, "unclosed bracket at end of input"));
    }
    push_newline(&mut out, end);
    out.push(Token { tok: Tok::Eof, pos: end });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn tables_span_lines() {
        let toks = kinds("operator f on B = table{\n a -> a+b,\n b -> 0 }\n");
        assert_eq!(toks.iter().filter(|t| **t == Tok::Newline).count(), 1);
        assert!(toks.contains(&Tok::Arrow));
    }

    #[test]
    fn flags_and_comments() {
        let toks = kinds("proper f --budget 5 # comment\n\n\n");
        assert_eq!(
            toks,
            vec![
                Tok::Ident("proper".into()),
                Tok::Ident("f".into()),
                Tok::Flag("budget".into()),
                Tok::Num("5".into()),
                Tok::Newline,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn half_open_intervals_balance() {
        assert!(lex("eval g [0,1/2)+[3/4,1)\n").is_ok());
    }

    #[test]
    fn positions_are_one_based() {
        let toks = lex("\n  pc f").unwrap();
        assert_eq!((toks[0].pos.line, toks[0].pos.col), (2, 3));
        assert_eq!((toks[1].pos.line, toks[1].pos.col), (2, 6));
        let err = lex("pc f $").unwrap_err();
        assert_eq!((err.pos.line, err.pos.col), (1, 6));
    }
}
