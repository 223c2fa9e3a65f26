//! Recursive-descent parser; stops at the first syntax error.
//!
//! ```text
//! script    := (stmt NEWLINE)*
//! stmt      := "algebra" NAME "=" carrier
//!            | "operator" NAME "on" NAME "=" body
//!            | "frame" NAME "=" "{" "points" ":" "[" names "]" "," "edges" ":" "[" edges "]" "}"
//!            | QUERY elem* ("expect" NAME)? flag*
//! carrier   := "powerset" "(" "atoms" ":" "[" names "]" ")" | "fc" | "intervals"
//! body      := "table" "{" (NAME "->" elem),* "}"
//!            | "builtin" "(" NAME ("(" param,* ")")? ")"
//! param     := (NAME "=")? elem
//! elem      := term ("+" term)*
//! term      := NAME | rat | "co"? "{" nat,* "}" | "[" rat "," rat ")"
//! rat       := nat ("/" nat)?
//! flag      := "--" NAME nat?
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::{CarrierSpec, Elem, Flag, Name, OperatorBody, Param, Pos, Query, QueryKind, Script, Stmt, Term};
use super::lexer::{lex, Tok, Token};
use super::{Diagnostic, DiagnosticKind};
use crate::algebra::Rat;

pub fn parse(source: &str) -> Result<Script, Diagnostic> {
    let tokens = lex(source)?;
    let mut p = Parser { tokens, at: 0 };
    let mut stmts = Vec::new();
    loop {
        match p.peek() {
            Tok::Eof => break,
            Tok::Newline => {
                p.bump();
            }
            _ => {
                stmts.push(p.stmt()?);
                p.end_of_stmt()?;
            }
        }
    }
    Ok(Script { stmts })
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

type Parsed<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Parsed<T> {
        Err(Diagnostic::new(
            DiagnosticKind::Syntax,
            self.pos(),
            format!("expected {expected}, found {}", self.peek().describe()),
        ))
    }

    fn expect(&mut self, tok: Tok) -> Parsed<Pos> {
        if *self.peek() == tok {
            Ok(self.bump().pos)
        } else {
            self.error(&tok.describe())
        }
    }

    fn is_word(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn keyword(&mut self, word: &str) -> Parsed<Pos> {
        if self.is_word(word) {
            Ok(self.bump().pos)
        } else {
            self.error(&format!("`{word}`"))
        }
    }

    fn name(&mut self) -> Parsed<Name> {
        match self.peek().clone() {
            Tok::Ident(text) => {
                let pos = self.bump().pos;
                Ok(Name { text, pos })
            }
            _ => self.error("a name"),
        }
    }

    fn nat(&mut self) -> Parsed<u64> {
        match self.peek().clone() {
            Tok::Num(digits) => {
                let pos = self.pos();
                self.bump();
                digits
                    .parse()
                    .map_err(|_| Diagnostic::new(DiagnosticKind::Syntax, pos, format!("number `{digits}` is too large")))
            }
            _ => self.error("a number"),
        }
    }

    fn rat(&mut self) -> Parsed<Rat> {
        let big = |p: &mut Parser| -> Parsed<BigInt> {
            match p.peek().clone() {
                Tok::Num(digits) => {
                    p.bump();
                    Ok(digits.parse().expect("lexer yields digits"))
                }
                _ => p.error("a number"),
            }
        };
        let n = big(self)?;
        if *self.peek() != Tok::Slash {
            return Ok(Rat::from_integer(n));
        }
        self.bump();
        let pos = self.pos();
        let d = big(self)?;
        if d.is_zero() {
            return Err(Diagnostic::new(DiagnosticKind::Syntax, pos, "zero denominator"));
        }
        Ok(Rat::new(n, d))
    }

    fn end_of_stmt(&mut self) -> Parsed<()> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.error("end of line"),
        }
    }

    fn comma_list<T>(&mut self, close: Tok, mut item: impl FnMut(&mut Parser) -> Parsed<T>) -> Parsed<Vec<T>> {
        let mut out = Vec::new();
        while *self.peek() != close {
            out.push(item(self)?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else if *self.peek() != close {
                return self.error(&format!("`,` or {}", close.describe()));
            }
        }
        self.bump();
        Ok(out)
    }

    fn stmt(&mut self) -> Parsed<Stmt> {
        let head = self.name()?;
        match head.text.as_str() {
            "algebra" => {
                let name = self.name()?;
                self.expect(Tok::Eq)?;
                let spec = self.carrier()?;
                Ok(Stmt::Algebra { name, spec })
            }
            "operator" => {
                let name = self.name()?;
                self.keyword("on")?;
                let on = self.name()?;
                self.expect(Tok::Eq)?;
                let body = self.body()?;
                Ok(Stmt::Operator { name, on, body })
            }
            "frame" => self.frame(),
            word => match QueryKind::from_keyword(word) {
                Some(kind) => self.query(kind, head.pos),
                None => Err(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    head.pos,
                    format!("unknown statement `{word}`"),
                )),
            },
        }
    }

    fn carrier(&mut self) -> Parsed<CarrierSpec> {
        if self.is_word("fc") {
            self.bump();
            return Ok(CarrierSpec::Fc);
        }
        if self.is_word("intervals") {
            self.bump();
            return Ok(CarrierSpec::Intervals);
        }
        if !self.is_word("powerset") {
            return self.error("`powerset(atoms:[…])`, `fc` or `intervals`");
        }
        self.bump();
        self.expect(Tok::LParen)?;
        self.keyword("atoms")?;
        self.expect(Tok::Colon)?;
        self.expect(Tok::LBrack)?;
        let atoms = self.comma_list(Tok::RBrack, Parser::name)?;
        self.expect(Tok::RParen)?;
        Ok(CarrierSpec::Powerset { atoms })
    }

    fn body(&mut self) -> Parsed<OperatorBody> {
        if self.is_word("table") {
            self.bump();
            self.expect(Tok::LBrace)?;
            let rows = self.comma_list(Tok::RBrace, |p| {
                let atom = p.name()?;
                p.expect(Tok::Arrow)?;
                Ok((atom, p.elem()?))
            })?;
            return Ok(OperatorBody::Table(rows));
        }
        if !self.is_word("builtin") {
            return self.error("`table{…}` or `builtin(…)`");
        }
        self.bump();
        self.expect(Tok::LParen)?;
        let name = self.name()?;
        let params = if *self.peek() == Tok::LParen {
            self.bump();
            self.comma_list(Tok::RParen, |p| {
                let key = if matches!(p.peek(), Tok::Ident(_)) && *p.peek_at(1) == Tok::Eq {
                    let k = p.name()?;
                    p.bump();
                    Some(k)
                } else {
                    None
                };
                Ok(Param { key, value: p.elem()? })
            })?
        } else {
            Vec::new()
        };
        self.expect(Tok::RParen)?;
        Ok(OperatorBody::Builtin { name, params })
    }

    fn frame(&mut self) -> Parsed<Stmt> {
        let name = self.name()?;
        self.expect(Tok::Eq)?;
        self.expect(Tok::LBrace)?;
        self.keyword("points")?;
        self.expect(Tok::Colon)?;
        self.expect(Tok::LBrack)?;
        let points = self.comma_list(Tok::RBrack, Parser::name)?;
        self.expect(Tok::Comma)?;
        self.keyword("edges")?;
        self.expect(Tok::Colon)?;
        self.expect(Tok::LBrack)?;
        let edges = self.comma_list(Tok::RBrack, |p| {
            let x = p.name()?;
            p.expect(Tok::Arrow)?;
            Ok((x, p.name()?))
        })?;
        self.expect(Tok::RBrace)?;
        Ok(Stmt::Frame { name, points, edges })
    }

    fn query(&mut self, kind: QueryKind, pos: Pos) -> Parsed<Stmt> {
        let mut args = Vec::new();
        while !matches!(self.peek(), Tok::Newline | Tok::Eof | Tok::Flag(_)) && !self.is_word("expect") {
            args.push(self.elem()?);
        }
        let expect = if self.is_word("expect") {
            self.bump();
            Some(self.name()?)
        } else {
            None
        };
        let mut flags = Vec::new();
        while let Tok::Flag(text) = self.peek().clone() {
            let pos = self.bump().pos;
            let value = if matches!(self.peek(), Tok::Num(_)) {
                Some(self.nat()?)
            } else {
                None
            };
            flags.push(Flag {
                name: Name { text, pos },
                value,
            });
        }
        Ok(Stmt::Query(Query {
            kind,
            pos,
            args,
            expect,
            flags,
        }))
    }

    fn elem(&mut self) -> Parsed<Elem> {
        let pos = self.pos();
        let mut terms = vec![self.term()?];
        while *self.peek() == Tok::Plus {
            self.bump();
            terms.push(self.term()?);
        }
        Ok(Elem { terms, pos })
    }

    fn term(&mut self) -> Parsed<Term> {
        match self.peek().clone() {
            Tok::Ident(word) if word == "co" && *self.peek_at(1) == Tok::LBrace => {
                self.bump();
                self.set(true)
            }
            Tok::Ident(_) => Ok(Term::Ident(self.name()?)),
            Tok::Num(_) => Ok(Term::Num(self.rat()?)),
            Tok::LBrace => self.set(false),
            Tok::LBrack => {
                self.bump();
                let s = self.rat()?;
                self.expect(Tok::Comma)?;
                let t = self.rat()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Interval(s, t))
            }
            _ => self.error("an element"),
        }
    }

    fn set(&mut self, co: bool) -> Parsed<Term> {
        self.expect(Tok::LBrace)?;
        let items = self.comma_list(Tok::RBrace, Parser::nat)?;
        Ok(Term::Set { co, items })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::interval::rat;

    #[test]
    fn carrier_declaration() {
        let s = parse("algebra B = powerset(atoms:[a,b])").unwrap();
        assert_eq!(
            s.stmts,
            vec![Stmt::Algebra {
                name: Name::new("B"),
                spec: CarrierSpec::Powerset {
                    atoms: vec![Name::new("a"), Name::new("b")]
                },
            }]
        );
    }

    #[test]
    fn atom_table() {
        let s = parse("operator f on B = table{a -> a+b, b -> 0}").unwrap();
        let Stmt::Operator { body: OperatorBody::Table(rows), .. } = &s.stmts[0] else {
            panic!("{s:?}")
        };
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].1.to_string(), "a+b");
        assert_eq!(rows[1].1.terms, vec![Term::Num(rat(0, 1))]);
    }

    #[test]
    fn builtin_parameters() {
        let s = parse("operator g on I = builtin(exdensepc(a=[0,1/4), b=[1/4,1/2), c=[1/2,1)))").unwrap();
        let Stmt::Operator { body: OperatorBody::Builtin { name, params }, .. } = &s.stmts[0] else {
            panic!("{s:?}")
        };
        assert_eq!(name.text, "exdensepc");
        assert_eq!(params.len(), 3);
        assert_eq!(params[1].value.terms, vec![Term::Interval(rat(1, 4), rat(1, 2))]);
    }

    #[test]
    fn queries_with_flags_and_expectations() {
        let s = parse("proper f expect proper_exists --budget 5\nexamples run --all").unwrap();
        let Stmt::Query(q) = &s.stmts[0] else { panic!() };
        assert_eq!(q.kind, QueryKind::Proper);
        assert_eq!(q.expect.as_ref().unwrap().text, "proper_exists");
        assert_eq!(q.flags[0].value, Some(5));
        let Stmt::Query(q) = &s.stmts[1] else { panic!() };
        assert_eq!((q.args.len(), q.flags[0].value), (1, None));
    }

    #[test]
    fn fc_literals() {
        let s = parse("eval f co{0,2}+{5}").unwrap();
        let Stmt::Query(q) = &s.stmts[0] else { panic!() };
        assert_eq!(
            q.args[1].terms,
            vec![
                Term::Set { co: true, items: vec![0, 2] },
                Term::Set { co: false, items: vec![5] }
            ]
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("algebra B = powerset(atoms:[a,b])\noperator f on B = table{a => b}").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::Syntax);
        assert_eq!((err.pos.line, err.pos.col), (2, 28));
        let err = parse("frobnicate f").unwrap_err();
        assert_eq!((err.pos.line, err.pos.col), (1, 1));
        let err = parse("eval f [1/0,1)").unwrap_err();
        assert!(err.message.contains("zero denominator"));
    }

    #[test]
    fn empty_and_comment_only_scripts() {
        assert!(parse("").unwrap().stmts.is_empty());
        assert!(parse("# nothing\n\n;;\n").unwrap().stmts.is_empty());
    }

    #[test]
    fn printing_is_canonical() {
        let src = "algebra  B=powerset(atoms:[a, b])\noperator f on B = table{ a->a + b ,b->0 }\nfame";
        let err = parse(src).unwrap_err();
        assert_eq!(err.pos.line, 3);
        let s = parse(&src[..src.len() - 4]).unwrap();
        assert_eq!(
            s.to_string(),
            "algebra B = powerset(atoms:[a,b])\noperator f on B = table{a -> a+b, b -> 0}\n"
        );
        assert_eq!(parse(&s.to_string()).unwrap(), s);
    }
}
