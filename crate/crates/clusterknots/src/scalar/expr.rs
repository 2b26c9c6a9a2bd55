//! A small infix reader for rational expressions, used for fixtures and CLI
//! input: `+ - * / ^`, parentheses, integers, `i`, and named variables.
//! Juxtaposition multiplies (`2x1`, `T(1+T)`); `^` binds tighter than a
//! leading minus, so `-T^2` is `−(T²)`.

use std::str::FromStr;

use super::{GaussRat, MultiRat, RatFuncT};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < cs.len() {
        let c = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let st = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            let t: String = cs[st..k].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| Error::Parse(format!("number {t} too large")))?));
        } else if c.is_alphabetic() {
            let st = k;
            k += 1;
            while k < cs.len() && (cs[k].is_ascii_digit() || cs[k] == '_' || cs[k] == '\'') {
                k += 1;
            }
            out.push(Tok::Ident(cs[st..k].iter().filter(|&&c| c != '_').collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(Error::Parse(format!("unexpected {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

/// The ring operations the reader needs. Products keep their written
/// order, so noncommutative algebras work too; `a/b` means `a·b⁻¹`.
pub trait ExprAlgebra {
    type Elem: Clone;
    fn int(&self, n: i64) -> Self::Elem;
    /// Resolves an identifier (including `i`, if the algebra has it).
    fn name(&self, s: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn pow(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem>;
}

struct Parser<'a, A: ExprAlgebra> {
    toks: Vec<Tok>,
    pos: usize,
    alg: &'a A,
}

impl<A: ExprAlgebra> Parser<'_, A> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<A::Elem> {
        let mut acc = if self.eat('-') {
            self.alg.neg(&self.term()?)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = self.alg.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = self.alg.add(&acc, &self.alg.neg(&self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A::Elem> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = self.alg.mul(&acc, &self.factor()?);
            } else if self.eat('/') {
                acc = self.alg.div(&acc, &self.factor()?)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                acc = self.alg.mul(&acc, &self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<A::Elem> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let grouped = self.eat('(');
        let neg = neg || (grouped && self.eat('-'));
        let e = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => *n,
            t => return Err(Error::Parse(format!("expected an integer exponent, found {t:?}"))),
        };
        self.pos += 1;
        if grouped && !self.eat(')') {
            return Err(Error::Parse("unclosed exponent".into()));
        }
        self.alg.pow(&base, if neg { -e } else { e })
    }

    fn primary(&mut self) -> Result<A::Elem> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match t {
            Some(Tok::Num(n)) => Ok(self.alg.int(n)),
            Some(Tok::Ident(name)) => self.alg.name(&name),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing )".into()));
                }
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected {t:?}"))),
        }
    }
}

/// Parses `s` in the algebra `alg`.
pub fn parse_in<A: ExprAlgebra>(s: &str, alg: &A) -> Result<A::Elem> {
    let mut p = Parser { toks: lex(s)?, pos: 0, alg };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

struct Rational<'a>(&'a dyn Fn(&str) -> Option<usize>);

impl ExprAlgebra for Rational<'_> {
    type Elem = MultiRat;

    fn int(&self, n: i64) -> MultiRat {
        MultiRat::from_int(n)
    }

    fn name(&self, s: &str) -> Result<MultiRat> {
        if s == "i" {
            return Ok(MultiRat::constant(GaussRat::i()));
        }
        (self.0)(s).map(MultiRat::var).ok_or_else(|| Error::Parse(format!("unknown variable {s}")))
    }

    fn add(&self, a: &MultiRat, b: &MultiRat) -> MultiRat {
        a + b
    }

    fn neg(&self, a: &MultiRat) -> MultiRat {
        -a
    }

    fn mul(&self, a: &MultiRat, b: &MultiRat) -> MultiRat {
        a * b
    }

    fn div(&self, a: &MultiRat, b: &MultiRat) -> Result<MultiRat> {
        a.checked_div(b)
    }

    fn pow(&self, a: &MultiRat, e: i64) -> Result<MultiRat> {
        a.pow(e)
    }
}

/// Parses a rational function, resolving names through `var`.
pub fn parse_expr(s: &str, var: &dyn Fn(&str) -> Option<usize>) -> Result<MultiRat> {
    parse_in(s, &Rational(var))
}

/// `T` ↦ 0 and `x<k>` (or `X<k>`, `A<k>`) ↦ `k`.
pub fn default_var(name: &str) -> Option<usize> {
    if name == "T" {
        return Some(0);
    }
    let k: usize = name.strip_prefix(['x', 'X', 'A'])?.parse().ok()?;
    (k > 0).then_some(k)
}

impl FromStr for MultiRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s, &default_var)
    }
}

impl FromStr for RatFuncT {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = parse_expr(s, &|n| (n == "T").then_some(0))?;
        r.as_ratfunc().ok_or_else(|| Error::Parse(format!("{s:?} is not a function of T alone")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let a: MultiRat = "-T^2 + 2x1/(1-T)".parse().unwrap();
        let t = MultiRat::t();
        let want = &(-&(&t * &t)) + &(&MultiRat::from_int(2) * &MultiRat::var(1)).checked_div(&(&MultiRat::one() - &t)).unwrap();
        assert_eq!(a, want);
        assert_eq!("T^-2".parse::<MultiRat>().unwrap(), t.pow(-2).unwrap());
        assert_eq!("T^(-2)".parse::<MultiRat>().unwrap(), t.pow(-2).unwrap());
        assert_eq!("x_2 x1".parse::<MultiRat>().unwrap(), &MultiRat::var(1) * &MultiRat::var(2));
    }

    #[test]
    fn round_trips_display() {
        let r: RatFuncT = "(T^2)/(T^4 - T^2 + 1)".parse().unwrap();
        assert_eq!(r.to_string().parse::<RatFuncT>().unwrap(), r);
        let m: MultiRat = "i x1/T - (1+i) x2^3".parse().unwrap();
        assert_eq!(m.to_string().parse::<MultiRat>().unwrap(), m);
    }

    #[test]
    fn rejects_garbage() {
        assert!("1 +".parse::<MultiRat>().is_err());
        assert!("y".parse::<MultiRat>().is_err());
        assert!("1/0".parse::<MultiRat>().is_err());
        assert!("(T".parse::<RatFuncT>().is_err());
        assert!("x1".parse::<RatFuncT>().is_err());
    }
}
