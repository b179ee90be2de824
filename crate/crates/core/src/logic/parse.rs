//! Recursive-descent parser for the axiom grammar.
//!
//! Precedence from loosest: `iff` (left), `implies` (right), `or`, `and`,
//! `not`. A quantifier body extends as far right as possible. Identifiers
//! bound by an enclosing quantifier are variables, all others constants.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: `{symbol}` used with arity {found}, earlier with arity {expected}")]
    Arity { line: usize, col: usize, symbol: String, expected: usize, found: usize },
    #[error("{line}:{col}: `{symbol}` used as both {first} and {second}")]
    Kind { line: usize, col: usize, symbol: String, first: &'static str, second: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line, col });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line, col });
        } else {
            return Err(ParseError::Syntax { line, col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Spanned { tok: Tok::End, line, col: chars.len() + 1 });
    Ok(out)
}

const KEYWORDS: [&str; 7] = ["forall", "exists", "and", "or", "implies", "iff", "not"];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Predicate,
    Function,
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Predicate => "predicate",
            Kind::Function => "function",
        }
    }
}

/// Symbol arities seen so far, shared across the axioms of one file.
#[derive(Default)]
struct Signature {
    symbols: BTreeMap<String, (Kind, usize)>,
}

impl Signature {
    fn record(&mut self, name: &str, kind: Kind, arity: usize, at: &Spanned) -> Result<(), ParseError> {
        match self.symbols.get(name) {
            None => {
                self.symbols.insert(name.to_string(), (kind, arity));
                Ok(())
            }
            Some(&(k, _)) if k != kind => Err(ParseError::Kind {
                line: at.line,
                col: at.col,
                symbol: name.to_string(),
                first: k.label(),
                second: kind.label(),
            }),
            Some(&(_, a)) if a != arity => Err(ParseError::Arity {
                line: at.line,
                col: at.col,
                symbol: name.to_string(),
                expected: a,
                found: arity,
            }),
            Some(_) => Ok(()),
        }
    }
}

struct Parser<'s> {
    toks: Vec<Spanned>,
    pos: usize,
    bound: Vec<String>,
    sig: &'s mut Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { line: at.line, col: at.col, message: message.into() })
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::End => "end of line".into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            self.error(&t, format!("expected {}, found {}", Self::describe(&tok), Self::describe(&t.tok)))
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.implication()?;
        while self.keyword("iff") {
            self.next();
            let rhs = self.implication()?;
            f = Formula::Iff(Box::new(f), Box::new(rhs));
        }
        Ok(f)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.keyword("implies") {
            self.next();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.keyword("or") {
            self.next();
            let rhs = self.conjunction()?;
            f = Formula::Or(Box::new(f), Box::new(rhs));
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.keyword("and") {
            self.next();
            let rhs = self.unary()?;
            f = Formula::and(f, rhs);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == "not" => Ok(Formula::Not(Box::new(self.unary()?))),
            Tok::Ident(s) if s == "forall" || s == "exists" => {
                let v = self.next();
                let name = match &v.tok {
                    Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => name.clone(),
                    other => return self.error(&v, format!("expected a variable, found {}", Self::describe(other))),
                };
                self.expect(Tok::Dot)?;
                self.bound.push(name.clone());
                let body = self.formula();
                self.bound.pop();
                let body = Box::new(body?);
                Ok(if s == "forall" { Formula::Forall(name, body) } else { Formula::Exists(name, body) })
            }
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let name = s.clone();
                let args = if self.peek().tok == Tok::LParen { self.arguments()? } else { Vec::new() };
                if name == "eq" {
                    if args.len() != 2 {
                        return Err(ParseError::Arity {
                            line: t.line,
                            col: t.col,
                            symbol: name,
                            expected: 2,
                            found: args.len(),
                        });
                    }
                    let mut it = args.into_iter();
                    return Ok(Formula::Eq(it.next().unwrap(), it.next().unwrap()));
                }
                if name != super::EX {
                    self.sig.record(&name, Kind::Predicate, args.len(), &t)?;
                }
                Ok(Formula::Atom(name, args))
            }
            other => self.error(&t, format!("expected a formula, found {}", Self::describe(other))),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        loop {
            let t = self.next();
            match &t.tok {
                Tok::Comma => args.push(self.term()?),
                Tok::RParen => return Ok(args),
                other => return self.error(&t, format!("expected `,` or `)`, found {}", Self::describe(other))),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let t = self.next();
        let name = match &t.tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => s.clone(),
            other => return self.error(&t, format!("expected a term, found {}", Self::describe(other))),
        };
        if self.peek().tok == Tok::LParen {
            let args = self.arguments()?;
            self.sig.record(&name, Kind::Function, args.len(), &t)?;
            Ok(Term::App(name, args))
        } else if self.bound.contains(&name) {
            Ok(Term::Var(name))
        } else {
            self.sig.record(&name, Kind::Function, 0, &t)?;
            Ok(Term::Const(name))
        }
    }
}

fn parse_line(text: &str, line: usize, sig: &mut Signature) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text, line)?, pos: 0, bound: Vec::new(), sig };
    let f = p.formula()?;
    let t = p.next();
    if t.tok != Tok::End {
        return p.error(&t, format!("unexpected {}", Parser::describe(&t.tok)));
    }
    Ok(f)
}

/// One axiom per line; blank lines and `#` comments are skipped. Symbol
/// arities must agree across all axioms.
pub fn parse_axioms(text: &str) -> Result<Vec<Formula>, ParseError> {
    let mut sig = Signature::default();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        out.push(parse_line(content, i + 1, &mut sig)?);
    }
    Ok(out)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_line(text, 1, &mut Signature::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_axiom() {
        let f = parse_formula("forall x . eq(op(e0, x), x)").unwrap();
        let expected = Formula::Forall(
            "x".into(),
            Box::new(Formula::Eq(
                Term::app("op", vec![Term::Const("e0".into()), Term::var("x")]),
                Term::var("x"),
            )),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn associativity_round_trips() {
        let text = "forall x . forall y . forall z . eq(op(op(x,y),z), op(x,op(y,z)))";
        let f = parse_formula(text).unwrap();
        assert_eq!(f.to_string(), "forall x . forall y . forall z . eq(op(op(x, y), z), op(x, op(y, z)))");
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn trailing_comma_is_reported() {
        let err = parse_formula("forall x . eq(op(x), x,").unwrap_err();
        assert_eq!(err, ParseError::Syntax { line: 1, col: 24, message: "expected a term, found end of line".into() });
    }

    #[test]
    fn precedence() {
        let f = parse_formula("not p and q or r implies s implies t iff u").unwrap();
        assert_eq!(f.to_string(), "((((not p and q) or r) implies (s implies t)) iff u)");
    }

    #[test]
    fn arity_is_consistent_across_lines() {
        let err = parse_axioms("forall x . p(x)\n\nforall x . p(x, x)").unwrap_err();
        assert!(matches!(err, ParseError::Arity { line: 3, ref symbol, expected: 1, found: 2, .. } if symbol == "p"));
        let err = parse_axioms("forall x . eq(f(x), x)\nforall x . f(x)").unwrap_err();
        assert!(matches!(err, ParseError::Kind { line: 2, .. }));
    }

    #[test]
    fn comments_and_line_numbers() {
        let fs = parse_axioms("# monoid\nforall x . p(x) # unary\n").unwrap();
        assert_eq!(fs.len(), 1);
        let err = parse_axioms("p\nforall . p").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, col: 8, .. }));
    }
}
