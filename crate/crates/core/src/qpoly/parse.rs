//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' ['-'] INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::context::Ctx;
use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{other}`") })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    ctx: &'a Ctx,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        let e = match self.bump() {
            Tok::Int(n) => n,
            _ => return Err(Error::Syntax { pos, msg: "expected integer exponent".into() }),
        };
        let e: i64 = i64::try_from(&e).map_err(|_| Error::Syntax { pos, msg: "exponent too large".into() })?;
        let e = if neg { -e } else { e };
        base.try_powi(e).map_err(|err| match err {
            Error::Input(msg) => Error::Syntax { pos, msg },
            other => other,
        })
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Int(d) if d != BigInt::from(0) => {
                            Ok(Polynomial::constant(self.ctx, Rational::new(n, d)))
                        }
                        Tok::Int(_) => Err(Error::Syntax { pos: dpos, msg: "zero denominator".into() }),
                        _ => Err(Error::Syntax {
                            pos: dpos,
                            msg: "`/` is only allowed inside rational literals".into(),
                        }),
                    }
                } else {
                    Ok(Polynomial::constant(self.ctx, Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                Polynomial::var_named(self.ctx, &name)
            }
            Tok::LParen => {
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
        }
    }
}

/// Parses `text` into a canonical polynomial over `ctx`.
pub fn parse(text: &str, ctx: &Ctx) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, ctx };
    if *p.peek() == Tok::End {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if *p.peek() == Tok::Slash {
        return p.err("`/` is only allowed inside rational literals");
    }
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{ctx_of, rat, VarTable};
    use std::sync::Arc;

    #[test]
    fn literals_and_precedence() {
        let ctx = ctx_of(&["x", "y", "z"]);
        let p = parse("2*y*z", &ctx).unwrap();
        assert_eq!(p.to_string(), "2*y*z");
        assert!(parse("0", &ctx).unwrap().term_map().is_empty());
        let d = parse("(x+y)*(x-y)", &ctx).unwrap();
        // expand-and-collect by hand: x^2 - xy + xy - y^2
        let expected = &(&Polynomial::var(&ctx, 0) * &Polynomial::var(&ctx, 0))
            - &(&Polynomial::var(&ctx, 1) * &Polynomial::var(&ctx, 1));
        assert_eq!(d, expected);
        assert_eq!(d.to_string(), "x^2 - y^2");
        assert_eq!(parse("-x^2", &ctx).unwrap().to_string(), "-x^2");
        assert_eq!(parse("3/6*x + 1", &ctx).unwrap().to_string(), "1/2*x + 1");
        assert_eq!(parse("x*-y", &ctx).unwrap().to_string(), "-x*y");
        assert_eq!(parse("2^3", &ctx).unwrap().as_constant(), Some(rat(8, 1)));
    }

    #[test]
    fn laurent_exponents() {
        let ctx = Arc::new(VarTable::with_flags(&["a", "X"], &[false, true]).unwrap());
        let p = parse("a - X^-1", &ctx).unwrap();
        assert_eq!(p.to_string(), "a - X^-1");
        assert_eq!(parse("X^-1*X", &ctx).unwrap().to_string(), "1");
        assert_eq!(parse("(2*X)^-2", &ctx).unwrap().to_string(), "1/4*X^-2");
        assert_eq!(parse("a^-1", &ctx), Err(Error::NegativeExponent("a".into())));
        assert!(matches!(parse("(a+X)^-1", &ctx), Err(Error::Syntax { .. })));
    }

    #[test]
    fn errors_carry_positions() {
        let ctx = ctx_of(&["x", "y"]);
        assert_eq!(parse("x + q", &ctx), Err(Error::UnknownVariable("q".into())));
        assert!(matches!(parse("x + ", &ctx), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse("x / y", &ctx), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("(x", &ctx), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("x $ y", &ctx), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("1/0", &ctx), Err(Error::Syntax { .. })));
        assert!(matches!(parse("", &ctx), Err(Error::Syntax { pos: 0, .. })));
    }
}
