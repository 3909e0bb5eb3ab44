//! Expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := prod ('#' prod)*
//! prod   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := int ('/' int)? | 'I' | 'Q' | ident | '(' expr ')'
//! ```
//!
//! `#` separates tensor legs. A negative exponent is accepted only on a
//! scalar subexpression (for instance `Q^-1`).

use num_bigint::BigInt;
use num_traits::Zero;

use super::algebra::Alphabet;
use super::tensor::Tensor;
use super::{NcPoly, Word};
use crate::error::{Error, Result};
use crate::scalar::{Field, Tower, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    Imag,
    Param,
    Gen(String),
    Neg(Box<Expr>),
    Sum(Vec<(bool, Expr)>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Tensor(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Int(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*^()/#".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { msg: format!("unexpected character {c:?}"), pos: i, input: s.into() });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        let pos = self.toks.get(self.i).map_or(self.src.len(), |t| t.0);
        Err(Error::Parse { msg: msg.into(), pos, input: self.src.into() })
    }
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut parts = vec![(true, self.term()?)];
        loop {
            if self.eat('+') {
                parts.push((true, self.term()?));
            } else if self.eat('-') {
                parts.push((false, self.term()?));
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap().1 } else { Expr::Sum(parts) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut legs = vec![self.prod()?];
        while self.eat('#') {
            legs.push(self.prod()?);
        }
        Ok(if legs.len() == 1 { legs.pop().unwrap() } else { Expr::Tensor(legs) })
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        while self.eat('*') {
            let r = self.unary()?;
            e = Expr::Mul(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let a = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.i += 1;
                    let n: i64 = n.try_into().map_err(|_| Error::Parse {
                        msg: "exponent too large".into(),
                        pos: self.toks[self.i - 1].0,
                        input: self.src.into(),
                    })?;
                    return Ok(Expr::Pow(Box::new(a), if neg { -n } else { n }));
                }
                _ => return self.err("expected integer exponent"),
            }
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.i += 1;
                            Ok(Expr::Num(Q::new(n, d)))
                        }
                        _ => self.err("expected nonzero denominator"),
                    }
                } else {
                    Ok(Expr::Num(Q::from_integer(n)))
                }
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(match s.as_str() {
                    "I" => Expr::Imag,
                    "Q" => Expr::Param,
                    _ => Expr::Gen(s),
                })
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    let mut p = Parser { toks, i: 0, src: s };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

struct Ctx<'a, K> {
    alphabets: &'a [&'a Alphabet],
    tower: Tower,
    param: Option<K>,
}

impl<'a, K: Field> Ctx<'a, K> {
    fn eval(&self, e: &Expr, leg: usize) -> Result<Tensor<K>> {
        Ok(match e {
            Expr::Num(q) => Tensor::scalar(K::from_q(q), 0),
            Expr::Imag => {
                let i = K::imag_unit().filter(|_| self.tower.allows_imaginary()).ok_or_else(|| {
                    Error::Tower(format!("I is not available over {}", self.tower.as_str()))
                })?;
                Tensor::scalar(i, 0)
            }
            Expr::Param => {
                let q = self
                    .param
                    .clone()
                    .ok_or_else(|| Error::Tower(format!("Q is not available over {}", self.tower.as_str())))?;
                Tensor::scalar(q, 0)
            }
            Expr::Gen(name) => {
                let al = self
                    .alphabets
                    .get(leg)
                    .ok_or_else(|| Error::UnknownGenerator(format!("{name} (tensor leg {leg} out of range)")))?;
                let g = al.rank(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                Tensor::from_poly(&NcPoly::gen(g))
            }
            Expr::Neg(a) => self.eval(a, leg)?.neg(),
            Expr::Sum(parts) => {
                let vals: Vec<(bool, Tensor<K>)> =
                    parts.iter().map(|(s, x)| Ok((*s, self.eval(x, leg)?))).collect::<Result<_>>()?;
                let ar = vals.iter().map(|v| v.1.arity()).max().unwrap_or(0);
                let mut acc = Tensor::zero(ar);
                for (s, v) in vals {
                    let v = lift(v, ar)?;
                    acc = if s { acc.add(&v) } else { acc.sub(&v) };
                }
                acc
            }
            Expr::Mul(a, b) => {
                let x = self.eval(a, leg)?;
                let y = self.eval(b, leg)?;
                let ar = x.arity().max(y.arity());
                lift(x, ar)?.mul(&lift(y, ar)?)
            }
            Expr::Pow(a, n) => {
                let x = self.eval(a, leg)?;
                if *n < 0 {
                    let c = x.as_scalar().ok_or_else(|| Error::Parse {
                        msg: "negative exponent on a non-scalar".into(),
                        pos: 0,
                        input: String::new(),
                    })?;
                    let v = c.pow(*n).ok_or_else(|| Error::Parse {
                        msg: "zero raised to a negative power".into(),
                        pos: 0,
                        input: String::new(),
                    })?;
                    Tensor::scalar(v, 0)
                } else {
                    let mut acc = Tensor::scalar(K::one(), x.arity());
                    for _ in 0..*n {
                        acc = acc.mul(&x);
                    }
                    acc
                }
            }
            Expr::Tensor(legs) => {
                let mut acc = Tensor::scalar(K::one(), 0);
                let mut off = leg;
                for l in legs {
                    let v = self.eval(l, off)?;
                    let ar = v.arity().max(1);
                    off += ar;
                    acc = acc.outer(&lift(v, ar)?);
                }
                acc
            }
        })
    }
}

fn lift<K: Field>(t: Tensor<K>, arity: usize) -> Result<Tensor<K>> {
    if t.arity() == arity {
        return Ok(t);
    }
    if t.arity() == 0 {
        let c = t.as_scalar().unwrap_or_else(K::zero);
        return Ok(Tensor::scalar(c, arity));
    }
    Err(Error::Parse { msg: format!("cannot combine {}-fold and {arity}-fold tensors", t.arity()), pos: 0, input: String::new() })
}

impl Expr {
    /// Evaluate into the free tensor product of the given alphabets (no
    /// reduction); leg `i` resolves names in `alphabets[i]`.
    pub fn eval_tensor<K: Field>(&self, alphabets: &[&Alphabet], tower: Tower, param: Option<K>) -> Result<Tensor<K>> {
        let ctx = Ctx { alphabets, tower, param };
        let v = ctx.eval(self, 0)?;
        lift(v, alphabets.len())
    }

    pub fn eval_poly<K: Field>(&self, alphabet: &Alphabet, tower: Tower, param: Option<K>) -> Result<NcPoly<K>> {
        let t = self.eval_tensor(&[alphabet], tower, param)?;
        Ok(NcPoly::from_terms(t.into_terms().into_iter().map(|(mut k, c)| (k.pop().unwrap_or_else(Word::empty), c))))
    }

    /// Evaluate an expression that must be a pure scalar.
    pub fn eval_scalar<K: Field>(&self, tower: Tower, param: Option<K>) -> Result<K> {
        let ctx = Ctx { alphabets: &[], tower, param };
        let v = ctx.eval(self, 0)?;
        v.as_scalar().ok_or_else(|| Error::Parse { msg: "expected a scalar".into(), pos: 0, input: String::new() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{RatFunc, QI};

    fn al() -> Alphabet {
        Alphabet::new(&["x", "y"], &["x", "y"]).unwrap()
    }

    #[test]
    fn precedence_and_powers() {
        let a = al();
        let p: NcPoly<Q> = parse_expr("2*x^2 - (y + 1/2)").unwrap().eval_poly(&a, Tower::Rational, None).unwrap();
        assert_eq!(p.display(a.names()), "2*x*x - y - 1/2");
    }

    #[test]
    fn unary_minus_binds_to_factor() {
        let a = al();
        let p: NcPoly<Q> = parse_expr("-x*y").unwrap().eval_poly(&a, Tower::Rational, None).unwrap();
        assert_eq!(p.display(a.names()), "-x*y");
    }

    #[test]
    fn tower_restrictions() {
        let a = al();
        let e = parse_expr("I*x").unwrap();
        assert!(matches!(e.eval_poly::<QI>(&a, Tower::Rational, None), Err(Error::Tower(_))));
        assert!(e.eval_poly::<QI>(&a, Tower::Gaussian, None).is_ok());
        let e = parse_expr("Q^-1*x").unwrap();
        let p = e.eval_poly::<RatFunc>(&a, Tower::RationalFunction, RatFunc::param()).unwrap();
        assert_eq!(p.display(a.names()), "Q^-1*x");
    }

    #[test]
    fn negative_power_needs_scalar() {
        let a = al();
        assert!(parse_expr("x^-1").unwrap().eval_poly::<Q>(&a, Tower::Rational, None).is_err());
    }

    #[test]
    fn tensor_legs() {
        let a = al();
        let t: Tensor<Q> = parse_expr("x # y + 2 # x").unwrap().eval_tensor(&[&a, &a], Tower::Rational, None).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.arity(), 2);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_expr("x + * y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("x $ y").is_err());
        assert!(parse_expr("1/0").is_err());
    }
}
