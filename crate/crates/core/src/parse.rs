//! Text syntax for polynomials in `x` and for coefficient expressions.
//!
//! ```text
//! poly    := ['+'|'-'] term (('+'|'-') term)*
//! term    := atom ('*' atom)*
//! atom    := integer | 'x' ['^' nat] | symbol ['^' nat] | '(' expr ')'
//! expr    := ['+'|'-'] product (('+'|'-') product)*
//! product := factor (('*'|'/') factor)*
//! factor  := '-' factor | primary ['^' nat]
//! primary := integer | symbol | '(' expr ')'
//! ```
//!
//! Division is only accepted inside coefficient expressions. Whitespace is
//! ignored and names are case-sensitive.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fields::{Field, FpElem, PrimeField, RatFunc, SymRat, SymVars};
use crate::upoly::UPoly;

/// Coefficient fields that can be read from text.
pub trait ParseScalar: Field {
    fn from_integer(ctx: &Self::Ctx, n: &BigInt) -> Self;
    /// Value of a named symbol other than `x`.
    fn symbol(ctx: &Self::Ctx, name: &str) -> Result<Self>;
}

impl ParseScalar for FpElem {
    fn from_integer(ctx: &PrimeField, n: &BigInt) -> Self {
        let m = BigInt::from(ctx.p());
        let r = ((n % &m) + &m) % &m;
        ctx.elem(r.to_i64().expect("reduced residue fits"))
    }

    fn symbol(_: &PrimeField, name: &str) -> Result<Self> {
        Err(Error::UnknownSymbol(name.to_string()))
    }
}

impl ParseScalar for RatFunc {
    fn from_integer(ctx: &PrimeField, n: &BigInt) -> Self {
        RatFunc::from_poly(UPoly::constant(FpElem::from_integer(ctx, n)))
    }

    fn symbol(ctx: &PrimeField, name: &str) -> Result<Self> {
        match name {
            "T" => Ok(RatFunc::t(ctx)),
            _ => Err(Error::UnknownSymbol(name.to_string())),
        }
    }
}

impl ParseScalar for SymRat {
    fn from_integer(ctx: &Arc<SymVars>, n: &BigInt) -> Self {
        SymRat::rational(ctx, BigRational::from_integer(n.clone()))
    }

    fn symbol(ctx: &Arc<SymVars>, name: &str) -> Result<Self> {
        SymRat::var(ctx, name)
    }
}

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

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!(
                        "unexpected character `{}`",
                        text[start..].chars().next().unwrap()
                    ),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'c, F: ParseScalar> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    ctx: &'c F::Ctx,
}

impl<'c, F: ParseScalar> Parser<'c, F> {
    fn new(text: &str, ctx: &'c F::Ctx) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            at: 0,
            ctx,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            Tok::Slash => self.err("division is only allowed inside parenthesized coefficients"),
            _ => self.err("unexpected trailing input"),
        }
    }

    fn nat(&mut self) -> Result<u32> {
        match self.bump() {
            Tok::Int(n) => match n.to_u32() {
                Some(e) => Ok(e),
                None => self.err("exponent too large"),
            },
            _ => {
                self.at -= 1;
                self.err("expected a natural exponent")
            }
        }
    }

    fn poly(&mut self) -> Result<UPoly<F>> {
        let mut acc = UPoly::zero(self.ctx);
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (c, k) = self.term()?;
            let c = if negate { -c } else { c };
            acc = &acc + &UPoly::monomial(c, k);
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(F, usize)> {
        let (mut c, mut k) = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let (c2, k2) = self.atom()?;
            c = c * c2;
            k += k2;
        }
        Ok((c, k))
    }

    fn atom(&mut self) -> Result<(F, usize)> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok((F::from_integer(self.ctx, &n), 0)),
            Tok::Ident(name) if name == "x" => {
                let k = if *self.peek() == Tok::Caret {
                    self.bump();
                    self.nat()?
                } else {
                    1
                };
                Ok((F::one(self.ctx), k as usize))
            }
            Tok::Ident(name) => {
                let mut v = F::symbol(self.ctx, &name)?;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    v = v.pow(self.nat()? as u64);
                }
                Ok((v, 0))
            }
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((v, 0))
            }
            _ => Err(Error::Parse {
                pos,
                msg: "expected a term".into(),
            }),
        }
    }

    fn expr(&mut self) -> Result<F> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                -self.product()?
            }
            Tok::Plus => {
                self.bump();
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.product()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<F> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.factor()?;
                    acc = match acc.checked_div(&d) {
                        Some(q) => q,
                        None => {
                            return Err(Error::Parse {
                                pos,
                                msg: "division by zero".into(),
                            })
                        }
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<F> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let pos = self.pos();
        let base = match self.bump() {
            Tok::Int(n) => F::from_integer(self.ctx, &n),
            Tok::Ident(name) if name == "x" => {
                return Err(Error::Parse {
                    pos,
                    msg: "`x` may not appear inside a coefficient".into(),
                })
            }
            Tok::Ident(name) => F::symbol(self.ctx, &name)?,
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                v
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: "expected a number, symbol or `(`".into(),
                })
            }
        };
        if *self.peek() == Tok::Caret {
            self.bump();
            return Ok(base.pow(self.nat()? as u64));
        }
        Ok(base)
    }
}

/// Parses a polynomial in `x` with coefficients in `F`.
pub fn parse_poly<F: ParseScalar>(text: &str, ctx: &F::Ctx) -> Result<UPoly<F>> {
    let mut p = Parser::<F>::new(text, ctx)?;
    let out = p.poly()?;
    p.finish()?;
    Ok(out)
}

/// Parses a single coefficient expression (division allowed).
pub fn parse_expr<F: ParseScalar>(text: &str, ctx: &F::Ctx) -> Result<F> {
    let mut p = Parser::<F>::new(text, ctx)?;
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        _ => p.err("unexpected trailing input"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_mode() {
        let k = PrimeField::new(11).unwrap();
        let p: UPoly<FpElem> = parse_poly("x^5+x^2+7*x+9", &k).unwrap();
        assert_eq!(p, UPoly::from_i64s(&k, &[9, 7, 1, 0, 0, 1]));
        let q: UPoly<FpElem> = parse_poly(" - x ^ 2 + 3 * x * x - 13 ", &k).unwrap();
        assert_eq!(q, UPoly::from_i64s(&k, &[-13, 0, 2]));
        let r: UPoly<FpElem> = parse_poly("(1/2)*x", &k).unwrap();
        assert_eq!(r, UPoly::from_i64s(&k, &[0, 6]));
    }

    #[test]
    fn sym_mode() {
        let vars = SymVars::standard();
        let p: UPoly<SymRat> = parse_poly("x^2+a*x+b", &vars).unwrap();
        assert_eq!(p.coeff(1), SymRat::var(&vars, "a").unwrap());
        assert_eq!(p.coeff(0), SymRat::var(&vars, "b").unwrap());
        let e: SymRat = parse_expr("-a^2/12", &vars).unwrap();
        let a = SymRat::var(&vars, "a").unwrap();
        assert_eq!(
            e,
            -(a.clone() * a)
                .checked_div(&SymRat::from_i64(&vars, 12))
                .unwrap()
        );
    }

    #[test]
    fn ratfunc_mode() {
        let k = PrimeField::new(11).unwrap();
        let p: UPoly<RatFunc> = parse_poly("x^2+(T)*x+(1)", &k).unwrap();
        assert_eq!(p.coeff(1), RatFunc::t(&k));
        let q: UPoly<RatFunc> = parse_poly("((T^2+1)/(T))*x", &k).unwrap();
        assert_eq!(q.to_string(), "((T^2+1)/(T))*x");
    }

    #[test]
    fn errors_carry_positions() {
        let k = PrimeField::new(11).unwrap();
        let e = parse_poly::<FpElem>("x^2+*x", &k).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                pos: 4,
                msg: "expected a term".into()
            }
        );
        let e = parse_poly::<FpElem>("x^2/3", &k).unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 3, .. }));
        let e = parse_poly::<FpElem>("x+a", &k).unwrap_err();
        assert_eq!(e, Error::UnknownSymbol("a".into()));
        let e = parse_poly::<FpElem>("x + #", &k).unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 4, .. }));
        let e = parse_poly::<FpElem>("(1/0)*x", &k).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_poly::<FpElem>("(x)", &k).unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 1, .. }));
    }

    #[test]
    fn canonical_print_round_trips() {
        let vars = SymVars::standard();
        for text in ["x^4+(a)*x^2+(b)*x+(-1/12*a^2)", "x^2+((a)/(b+1))*x+3"] {
            let p: UPoly<SymRat> = parse_poly(text, &vars).unwrap();
            assert_eq!(p.to_string(), text);
        }
        let k = PrimeField::new(17).unwrap();
        let p: UPoly<FpElem> = parse_poly("x^5+x^2+15*x+13", &k).unwrap();
        assert_eq!(p.to_string(), "x^5+x^2+15*x+13");
    }
}
