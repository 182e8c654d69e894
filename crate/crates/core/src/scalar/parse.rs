//! Recursive-descent parser for the scalar grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := atom (('*' | '/') atom)*
//! atom     := rational | 'z' INT ('^' ['-'] INT)? | '(' expr ')' | '-' atom
//! rational := INT ('/' INT)?
//! ```
//!
//! `zN^k` denotes `zeta_N^k`. Whitespace is ignored between tokens. The result
//! lives in `Q(zeta_L)` with `L` the lcm of all `N` that occur.

use num_bigint::BigInt;

use super::{check_order, lcm, Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Expr {
    Rational(Rational),
    Zeta { order: u64, exp: i64 },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn small_int(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        let v = self.int()?;
        u64::try_from(v).or_else(|_| {
            self.pos = start;
            self.err(format!("{what} too large"))
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.atom()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.atom()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'z') => {
                self.pos += 1;
                let at = self.pos;
                let order = self.small_int("root of unity order")?;
                if order == 0 {
                    self.pos = at;
                    return self.err("root of unity order must be at least 1");
                }
                let mut exp = 1i64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let negative = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let e = self.small_int("exponent")?;
                    let e = i64::try_from(e % order).unwrap();
                    exp = if negative { -e } else { e };
                }
                Ok(Expr::Zeta { order, exp })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(Expr::Rational(Rational::from_integer(n)))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn field_order(e: &Expr) -> u64 {
    match e {
        Expr::Rational(_) => 1,
        Expr::Zeta { order, .. } => *order,
        Expr::Neg(a) => field_order(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            lcm(field_order(a), field_order(b))
        }
    }
}

fn eval(e: &Expr, order: u64) -> Result<Scalar> {
    Ok(match e {
        Expr::Rational(r) => Scalar::from_rational(r.clone()).lift(order)?,
        Expr::Zeta { order: n, exp } => {
            Scalar::root_of_unity(order, exp * (order / n) as i64)?
        }
        Expr::Neg(a) => -eval(a, order)?,
        Expr::Add(a, b) => eval(a, order)? + eval(b, order)?,
        Expr::Sub(a, b) => eval(a, order)? - eval(b, order)?,
        Expr::Mul(a, b) => eval(a, order)? * eval(b, order)?,
        Expr::Div(a, b, pos) => {
            let d = eval(b, order)?;
            if d.is_zero() {
                return Err(Error::Syntax { position: *pos, message: "division by zero".into() });
            }
            eval(a, order)? * d.inv()?
        }
    })
}

/// Parses a scalar expression into its canonical element of `Q(zeta_L)`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let order = field_order(&e);
    check_order(order)?;
    eval(&e, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn spec_examples() {
        let s = parse_scalar("z4^2").unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s, Scalar::from_int(-1));
        assert!(parse_scalar("1 + z3 + z3^2").unwrap().is_zero());
        let s = parse_scalar("3/2 * z8 - z8").unwrap();
        assert_eq!(s, Scalar::root_of_unity(8, 1).unwrap().scale(&rat(1, 2)));
    }

    #[test]
    fn negative_exponent_and_nesting() {
        assert_eq!(parse_scalar("z8^-4").unwrap(), Scalar::from_int(-1));
        assert_eq!(parse_scalar("-(1 - z2)").unwrap(), Scalar::from_int(-2));
        assert_eq!(parse_scalar("z4 * z6").unwrap().order(), 12);
        assert_eq!(parse_scalar("(1 + z4) / (1 - z4)").unwrap(), parse_scalar("z4").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_scalar("1 + * 2"),
            Err(Error::Syntax { position: 4, message: "unexpected character".into() })
        );
        assert!(matches!(parse_scalar("z0"), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(parse_scalar("(1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_scalar("1 2"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_scalar("3/0"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_scalar("1/(z3 + z3^2 + 1)"), Err(Error::Syntax { .. })));
    }
}
