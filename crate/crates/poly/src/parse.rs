//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `1/2*x` and `x/3`
//! parse while `1/x` is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::PolyError;
use crate::poly::{Poly, DEFAULT_DEGREE_CAP};
use crate::rat::Rat;
use crate::ring::RingCtx;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Lexer, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Int(s.parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() || c == '_' || c == '$' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(PolyError::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    toks.push((Tok::End, chars.len()));
    Ok(Lexer { toks })
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a RingCtx,
    cap: u32,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.checked_mul(&rhs, self.cap)?;
                }
                Tok::Op('/') => {
                    let at = self.offset();
                    self.bump();
                    let rhs = self.unary()?;
                    match rhs.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => return Err(PolyError::Syntax { pos: at, msg: "division by zero".into() }),
                        None => {
                            return Err(PolyError::Syntax {
                                pos: at,
                                msg: "division by a non-constant expression".into(),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == &Tok::Op('^') {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Tok::Int(k) => {
                    let k: u32 = k.try_into().map_err(|_| PolyError::Syntax {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?;
                    if self.peek() == &Tok::Op('^') {
                        return self.err("chained exponents need parentheses");
                    }
                    return base.checked_pow(k, self.cap);
                }
                _ => return Err(PolyError::Syntax { pos: at, msg: "expected a nonnegative integer exponent".into() }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let n = self.ring.arity();
        let at = self.offset();
        match self.bump() {
            Tok::Int(k) => Ok(Poly::constant(n, Rat::from_integer(k))),
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => Ok(Poly::var(n, i)),
                None => Err(PolyError::UnknownVariable { name, pos: at }),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(PolyError::Syntax { pos: at, msg: "unexpected end of expression".into() }),
            Tok::Op(c) => Err(PolyError::Syntax { pos: at, msg: format!("unexpected `{c}`") }),
        }
    }
}

pub fn parse_poly(text: &str, ring: &RingCtx) -> Result<Poly, PolyError> {
    parse_poly_with_cap(text, ring, DEFAULT_DEGREE_CAP)
}

pub fn parse_poly_with_cap(text: &str, ring: &RingCtx, cap: u32) -> Result<Poly, PolyError> {
    let lexer = lex(text)?;
    let mut p = Parser { toks: lexer.toks, pos: 0, ring, cap };
    let out = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ring() -> RingCtx {
        RingCtx::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn examples() {
        let r = ring();
        let f = parse_poly("(1+x)^2 - y^2", &r).unwrap();
        let expected = Poly::from_terms(
            2,
            [
                (crate::Monomial::from_exponents(vec![0, 0]), rat::int(1)),
                (crate::Monomial::from_exponents(vec![1, 0]), rat::int(2)),
                (crate::Monomial::from_exponents(vec![2, 0]), rat::int(1)),
                (crate::Monomial::from_exponents(vec![0, 2]), rat::int(-1)),
            ],
        );
        assert_eq!(f, expected);
        assert!(parse_poly("0", &r).unwrap().is_zero());
        assert_eq!(parse_poly("x*y - 1", &r).unwrap().to_text(&r), "x*y - 1");
        assert_eq!(parse_poly("-x^2", &r).unwrap().to_text(&r), "-x^2");
        assert_eq!(parse_poly("x/2 + 1/3", &r).unwrap().to_text(&r), "1/2*x + 1/3");
    }

    #[test]
    fn errors_report_position() {
        let r = ring();
        assert_eq!(
            parse_poly("x + z", &r),
            Err(PolyError::UnknownVariable { name: "z".into(), pos: 4 })
        );
        match parse_poly("x + * y", &r) {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("1/x", &r), Err(PolyError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("(x", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x # y", &r), Err(PolyError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x^2^2", &r), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn degree_cap() {
        let r = ring();
        assert!(matches!(parse_poly("x^65", &r), Err(PolyError::LimitExceeded(_))));
        assert!(matches!(parse_poly("(x^40)*(y^40)", &r), Err(PolyError::LimitExceeded(_))));
        assert!(parse_poly_with_cap("x^100", &r, 200).is_ok());
    }
}
