//! Recursive-descent parser for the formula DSL.
//!
//! ```text
//! F ::= R(t, ..., t) | t = t | !F | And[F; ...; F] | Or[F; ...; F]
//!     | Exists x:s . F | Forall x:s . F | (F)
//! ```
//!
//! Identifiers are `[A-Za-z_][A-Za-z0-9_]*`; whitespace is insignificant.
//! Terms resolve to the innermost bound variable of that name, otherwise to a
//! declared constant.

use thiserror::Error;

use super::formula::{Formula, Literal, LiteralSet, Term};
use super::signature::{Signature, SortId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("sort error at {pos}: {message}")]
    Sort { pos: usize, message: String },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { pos: usize, name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && (bytes[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        let ch = b as char;
        if ch.is_ascii_alphabetic() || ch == '_' {
            while self.pos < bytes.len() && {
                let c = bytes[self.pos] as char;
                c.is_ascii_alphanumeric() || c == '_'
            } {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.src[start..self.pos].to_string())));
        }
        if "()[];,=!:.{}".contains(ch) {
            self.pos += 1;
            return Ok((start, Tok::Sym(ch)));
        }
        let bad = self.src[start..].chars().next().unwrap_or('?');
        Err(ParseError::Syntax { pos: start, message: format!("unexpected character `{bad}`") })
    }
}

struct Parser<'a> {
    sig: &'a Signature,
    toks: Vec<(usize, Tok)>,
    at: usize,
    scope: Vec<(String, SortId)>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature, free: &[(String, SortId)]) -> Result<Self, ParseError> {
        let mut lex = Lexer { src: text, pos: 0 };
        let mut toks = Vec::new();
        loop {
            let t = lex.next()?;
            let end = t.1 == Tok::End;
            toks.push(t);
            if end {
                break;
            }
        }
        Ok(Parser { sig, toks, at: 0, scope: free.to_vec() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expect(&mut self, ch: char) -> Result<usize, ParseError> {
        match self.peek() {
            Tok::Sym(c) if *c == ch => Ok(self.bump().0),
            other => self.syntax(format!("expected `{ch}`, found {}", describe(other))),
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        match self.bump() {
            (p, Tok::Ident(s)) => Ok((p, s)),
            (p, other) => {
                Err(ParseError::Syntax { pos: p, message: format!("expected identifier, found {}", describe(&other)) })
            }
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Sym('!') => {
                self.bump();
                Ok(Formula::not(self.formula()?))
            }
            Tok::Sym('(') => {
                self.bump();
                let f = self.formula()?;
                self.expect(')')?;
                Ok(f)
            }
            Tok::Ident(kw) if (kw == "And" || kw == "Or") && *self.peek2() == Tok::Sym('[') => {
                let open = self.bump().0;
                self.bump();
                let mut items = Vec::new();
                if *self.peek() == Tok::Sym(']') {
                    return Err(ParseError::Syntax { pos: open, message: format!("empty {kw} family") });
                }
                loop {
                    items.push(self.formula()?);
                    match self.peek() {
                        Tok::Sym(';') => {
                            self.bump();
                        }
                        Tok::Sym(']') => {
                            self.bump();
                            break;
                        }
                        other => return self.syntax(format!("expected `;` or `]`, found {}", describe(other))),
                    }
                }
                Ok(if kw == "And" { Formula::And(items) } else { Formula::Or(items) })
            }
            Tok::Ident(kw) if kw == "Exists" || kw == "Forall" => {
                self.bump();
                let (_, var) = self.ident()?;
                self.expect(':')?;
                let (spos, sort_name) = self.ident()?;
                let sort = self
                    .sig
                    .sort_by_name(&sort_name)
                    .ok_or(ParseError::UnknownSymbol { pos: spos, name: sort_name })?;
                self.expect('.')?;
                self.scope.push((var.clone(), sort));
                let body = self.formula();
                self.scope.pop();
                let body = Box::new(body?);
                Ok(if kw == "Exists" {
                    Formula::Exists { var, sort, body }
                } else {
                    Formula::Forall { var, sort, body }
                })
            }
            Tok::Ident(name) if *self.peek2() == Tok::Sym('(') => {
                let (pos, _) = self.bump();
                self.bump();
                let rel = self.sig.rel_by_name(&name).ok_or(ParseError::UnknownSymbol { pos, name: name.clone() })?;
                let mut args = Vec::new();
                if *self.peek() != Tok::Sym(')') {
                    loop {
                        args.push(self.term()?);
                        match self.peek() {
                            Tok::Sym(',') => {
                                self.bump();
                            }
                            Tok::Sym(')') => break,
                            other => return self.syntax(format!("expected `,` or `)`, found {}", describe(other))),
                        }
                    }
                }
                self.expect(')')?;
                let decl = self.sig.relation(rel);
                if decl.arity() != args.len() {
                    return Err(ParseError::Sort {
                        pos,
                        message: format!("{} expects {} arguments, got {}", name, decl.arity(), args.len()),
                    });
                }
                for (i, ((apos, sort), &want)) in args.iter().map(|a| (a.0, a.2)).zip(&decl.sorts).enumerate() {
                    if sort != want {
                        return Err(ParseError::Sort {
                            pos: apos,
                            message: format!(
                                "argument {i} of {name} has sort {}, expected {}",
                                self.sig.sort_name(sort),
                                self.sig.sort_name(want)
                            ),
                        });
                    }
                }
                Ok(Formula::Atom { rel, args: args.into_iter().map(|a| a.1).collect() })
            }
            Tok::Ident(_) => {
                let (lpos, lhs, ls) = self.term()?;
                self.expect('=')?;
                let (_, rhs, rs) = self.term()?;
                if ls != rs {
                    return Err(ParseError::Sort {
                        pos: lpos,
                        message: format!(
                            "equality between sorts {} and {}",
                            self.sig.sort_name(ls),
                            self.sig.sort_name(rs)
                        ),
                    });
                }
                Ok(Formula::Eq(lhs, rhs))
            }
            other => self.syntax(format!("expected a formula, found {}", describe(&other))),
        }
    }

    fn term(&mut self) -> Result<(usize, Term, SortId), ParseError> {
        let (pos, name) = self.ident()?;
        if let Some((_, s)) = self.scope.iter().rev().find(|(v, _)| *v == name) {
            return Ok((pos, Term::Var(name), *s));
        }
        match self.sig.const_by_name(&name) {
            Some(c) => Ok((pos, Term::Const(c), self.sig.const_sort(c))),
            None => Err(ParseError::UnknownSymbol { pos, name }),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            other => self.syntax(format!("unexpected trailing {}", describe(other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".to_string(),
    }
}

/// Parses a closed, well-sorted formula.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse_open_formula(text, sig, &[])
}

/// Parses a formula whose free variables must be among `free`.
pub fn parse_open_formula(text: &str, sig: &Signature, free: &[(String, SortId)]) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig, free)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a single literal (atomic or negated atomic sentence).
pub fn parse_literal(text: &str, sig: &Signature) -> Result<Literal, ParseError> {
    let f = parse_formula(text, sig)?;
    f.as_literal().ok_or(ParseError::Syntax { pos: 0, message: "expected a literal".into() })
}

/// Parses a literal set written `{L, L, ...}`.
pub fn parse_literal_set(text: &str, sig: &Signature) -> Result<LiteralSet, ParseError> {
    let mut p = Parser::new(text, sig, &[])?;
    p.expect('{')?;
    let mut out = LiteralSet::new();
    if *p.peek() == Tok::Sym('}') {
        p.bump();
        p.finish()?;
        return Ok(out);
    }
    loop {
        let pos = p.pos();
        let f = p.formula()?;
        let lit = f.as_literal().ok_or(ParseError::Syntax { pos, message: "expected a literal".into() })?;
        out.insert(lit);
        match p.peek() {
            Tok::Sym(',') => {
                p.bump();
            }
            Tok::Sym('}') => {
                p.bump();
                break;
            }
            other => return p.syntax(format!("expected `,` or `}}`, found {}", describe(other))),
        }
    }
    p.finish()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::formula::{render_formula, GroundAtom};

    fn sig() -> Signature {
        Signature::builder()
            .sort("s", ["c0", "c1"])
            .sort("t", ["d0"])
            .relation("P", ["s"])
            .relation("R", ["s", "t"])
            .build()
            .unwrap()
    }

    #[test]
    fn reflexivity_atom() {
        let sig = sig();
        let c0 = sig.const_by_name("c0").unwrap();
        assert_eq!(parse_formula("c0 = c0", &sig).unwrap(), Formula::eq(c0, c0));
    }

    #[test]
    fn conjunction_with_negation() {
        let sig = sig();
        let p = sig.rel_by_name("P").unwrap();
        let (c0, c1) = (sig.const_by_name("c0").unwrap(), sig.const_by_name("c1").unwrap());
        let f = parse_formula("And[P(c0); !P(c1)]", &sig).unwrap();
        assert_eq!(f, Formula::And(vec![Formula::atom(p, &[c0]), Formula::not(Formula::atom(p, &[c1]))]));
    }

    #[test]
    fn existential_round_trips() {
        let sig = sig();
        let s = sig.sort_by_name("s").unwrap();
        let p = sig.rel_by_name("P").unwrap();
        let f = parse_formula("Exists x:s . P(x)", &sig).unwrap();
        assert_eq!(f, Formula::exists("x", s, Formula::Atom { rel: p, args: vec![Term::Var("x".into())] }));
        let printed = render_formula(&f, &sig);
        assert_eq!(parse_formula(&printed, &sig).unwrap(), f);
    }

    #[test]
    fn whitespace_and_parentheses_are_insignificant() {
        let sig = sig();
        let a = parse_formula("  !( c0=c1 )", &sig).unwrap();
        let b = parse_formula("!c0 = c1", &sig).unwrap();
        assert_eq!(a, b);
        assert_eq!(render_formula(&a, &sig), "!(c0 = c1)");
    }

    #[test]
    fn errors_are_located() {
        let sig = sig();
        assert_eq!(
            parse_formula("P(c0) junk", &sig),
            Err(ParseError::Syntax { pos: 6, message: "unexpected trailing `junk`".into() })
        );
        assert!(matches!(parse_formula("c0 = d0", &sig), Err(ParseError::Sort { pos: 0, .. })));
        assert!(matches!(parse_formula("R(d0, c0)", &sig), Err(ParseError::Sort { pos: 2, .. })));
        assert!(matches!(parse_formula("R(c0)", &sig), Err(ParseError::Sort { .. })));
        assert_eq!(parse_formula("Q(c0)", &sig), Err(ParseError::UnknownSymbol { pos: 0, name: "Q".into() }));
        assert!(matches!(parse_formula("P(x)", &sig), Err(ParseError::UnknownSymbol { pos: 2, .. })));
        assert!(matches!(parse_formula("And[]", &sig), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_formula("Exists x:u . P(x)", &sig), Err(ParseError::UnknownSymbol { .. })));
        assert!(matches!(parse_formula("P(c0) # x", &sig), Err(ParseError::Syntax { pos: 6, .. })));
    }

    #[test]
    fn bound_variables_shadow_constants() {
        let sig = sig();
        let f = parse_formula("Forall c0:s . P(c0)", &sig).unwrap();
        assert!(f.is_closed());
        let Formula::Forall { body, .. } = &f else { panic!() };
        assert!(matches!(&**body, Formula::Atom { args, .. } if args[0] == Term::Var("c0".into())));
    }

    #[test]
    fn literal_sets() {
        let sig = sig();
        let set = parse_literal_set("{P(c0), !(c0 = c1), P(c0)}", &sig).unwrap();
        assert_eq!(set.len(), 2);
        let c0 = sig.const_by_name("c0").unwrap();
        let c1 = sig.const_by_name("c1").unwrap();
        assert!(set.contains(&Literal::neg(GroundAtom::Eq(c0, c1))));
        assert!(parse_literal_set("{}", &sig).unwrap().is_empty());
        assert!(parse_literal_set("{And[P(c0)]}", &sig).is_err());
        assert!(parse_literal_set("{P(c0)", &sig).is_err());
    }
}
