//! Recursive-descent parser for the canonical expression grammar.
//!
//! Polynomials use `+ - * ^` with parentheses, integer and `a/b` rational
//! literals, and explicit multiplication (no juxtaposition). A localized
//! element is a polynomial optionally followed by `/` and a product of
//! denominator factors, each a generator name or a parenthesized
//! polynomial with an optional natural exponent. A `/` continues a
//! rational literal only when both sides are integer literals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Colon,
    Eof,
}

#[derive(Debug, Clone)]
struct SpannedTok {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<SpannedTok>> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        let bump = |ch: char, line: &mut usize, col: &mut usize| {
            if ch == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match ch {
            ' ' | '\t' | '\r' | '\n' => {
                chars.next();
                bump(ch, &mut line, &mut col);
            }
            '+' | '-' | '*' | '^' | '/' | '(' | ')' | ':' => {
                chars.next();
                bump(ch, &mut line, &mut col);
                let tok = match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Colon,
                };
                toks.push(SpannedTok {
                    tok,
                    line: l,
                    col: c,
                });
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits.parse().expect("digit string");
                toks.push(SpannedTok {
                    tok: Tok::Int(n),
                    line: l,
                    col: c,
                });
            }
            _ if ch.is_alphabetic() || ch == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                toks.push(SpannedTok {
                    tok: Tok::Name(name),
                    line: l,
                    col: c,
                });
            }
            _ => {
                return Err(Error::Syntax {
                    line: l,
                    col: c,
                    msg: format!("unexpected character `{ch}`"),
                })
            }
        }
    }
    toks.push(SpannedTok {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<SpannedTok>,
    pos: usize,
    gens: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(text: &str, gens: &'a [String]) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            gens,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        let i = (self.pos + 1).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].line, self.toks[self.pos].col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn nat(&mut self) -> Result<u32> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                u32::try_from(&n).map_err(|_| self.err("exponent too large"))
            }
            _ => Err(self.err("expected a nonnegative integer exponent")),
        }
    }

    fn nvars(&self) -> usize {
        self.gens.len()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.nat()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                // An integer followed by `/ integer` is a rational literal;
                // any other `/` belongs to an enclosing element.
                if *self.peek() == Tok::Slash {
                    if let Tok::Int(d) = self.peek2().clone() {
                        self.bump();
                        self.bump();
                        if d.is_zero() {
                            return Err(self.err("zero denominator in rational literal"));
                        }
                        return Ok(Poly::constant(self.nvars(), Rat::new(n, d)));
                    }
                }
                Ok(Poly::constant(self.nvars(), Rat::new(n, BigInt::one())))
            }
            Tok::Name(name) => {
                self.bump();
                match self.gens.iter().position(|g| *g == name) {
                    Some(i) => Ok(Poly::var(self.nvars(), i)),
                    None => Err(Error::UnknownIdentifier { name, line, col }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err("expected a generator, literal, or `(`")),
        }
    }

    /// One denominator factor: a name or parenthesized polynomial, with an
    /// optional `^nat`.
    fn denom_factor(&mut self) -> Result<(Poly, u32)> {
        let base = match self.peek().clone() {
            Tok::Name(_) | Tok::LParen => self.atom()?,
            _ => {
                return Err(
                    self.err("expected a denominator factor (name or parenthesized polynomial)")
                )
            }
        };
        let e = if *self.peek() == Tok::Caret {
            self.bump();
            self.nat()?
        } else {
            1
        };
        Ok((base, e))
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

/// Parse a polynomial over the named generators.
pub fn parse_poly(text: &str, gens: &[String]) -> Result<Poly> {
    let mut p = Parser::new(text, gens)?;
    let poly = p.expr()?;
    p.finish()?;
    Ok(poly)
}

/// Parse an element string `numerator [/ factor*factor^e...]`.
///
/// Returns the numerator and the raw denominator factors; the caller is
/// responsible for matching factors against declared denominators.
pub fn parse_elem_parts(text: &str, gens: &[String]) -> Result<(Poly, Vec<(Poly, u32)>)> {
    let mut p = Parser::new(text, gens)?;
    let num = p.expr()?;
    let mut factors = Vec::new();
    if *p.peek() == Tok::Slash {
        p.bump();
        factors.push(p.denom_factor()?);
        while *p.peek() == Tok::Star {
            p.bump();
            factors.push(p.denom_factor()?);
        }
    }
    p.finish()?;
    Ok((num, factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ratio, MonomialOrder};

    fn gens(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn literals_and_precedence() {
        let g = gens(&["x", "y"]);
        let p = parse_poly("1/2*x + 3", &g).unwrap();
        let q = parse_poly("3 + x*1/2", &g).unwrap();
        assert_eq!(p, q);
        assert_eq!(
            parse_poly("2^3", &g).unwrap().as_constant().unwrap(),
            ratio(8, 1)
        );
        assert_eq!(
            parse_poly("-x^2", &g).unwrap(),
            parse_poly("0-x^2", &g).unwrap()
        );
    }

    #[test]
    fn error_positions() {
        let g = gens(&["x", "y"]);
        match parse_poly("x + w", &g) {
            Err(Error::UnknownIdentifier { name, col, .. }) => {
                assert_eq!(name, "w");
                assert_eq!(col, 5);
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        assert!(parse_poly("x + ", &g).is_err());
        assert!(
            parse_poly("x y", &g).is_err(),
            "juxtaposition is not multiplication"
        );
        assert!(
            parse_poly("x / y", &g).is_err(),
            "bare `/` is not polynomial syntax"
        );
    }

    #[test]
    fn element_splitting() {
        let g = gens(&["x", "y", "z"]);
        let (num, den) = parse_elem_parts("1/2*x / (x^2+y^2)^2*z", &g).unwrap();
        assert_eq!(num, parse_poly("1/2*x", &g).unwrap());
        assert_eq!(den.len(), 2);
        assert_eq!(den[0].0, parse_poly("x^2+y^2", &g).unwrap());
        assert_eq!(den[0].1, 2);
        assert_eq!(den[1].0, parse_poly("z", &g).unwrap());
        assert_eq!(den[1].1, 1);

        let (num, den) = parse_elem_parts("3/4", &g).unwrap();
        assert_eq!(num.as_constant().unwrap(), ratio(3, 4));
        assert!(den.is_empty());
    }

    #[test]
    fn roundtrip_display() {
        let g = gens(&["x", "y", "z"]);
        let ord = MonomialOrder::grevlex(3);
        for text in ["x^2*y - 1/3*z + 7", "-x + y - 1", "1/2*x^2 + 1/2*y^2 - 1/2"] {
            let p = parse_poly(text, &g).unwrap();
            let s = p.format(&g, &ord);
            assert_eq!(
                parse_poly(&s, &g).unwrap(),
                p,
                "roundtrip of {text} via {s}"
            );
        }
    }
}
