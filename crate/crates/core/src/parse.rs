//! Text syntax for operators.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' uint)?
//! base   := uint | 'x' | 'D' | '(' expr ')'
//! ```
//!
//! Products are evaluated in the operator ring as they are parsed, so `D*x`
//! and `x*D + 1` give the same value. A divisor must be a nonzero rational
//! function; `p/f` is `p*(1/f)`.

use crate::error::{Error, Result};
use crate::orepoly::OrePoly;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;

pub fn parse_operator<F: Scalar>(text: &str) -> Result<OrePoly<F>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses a rational function: an operator expression without `D`.
pub fn parse_ratfunc<F: Scalar>(text: &str) -> Result<RatFunc<F>> {
    let op = parse_operator::<F>(text)?;
    match op.order() {
        None => Ok(RatFunc::zero()),
        Some(0) => Ok(op.coeff(0)),
        Some(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected a rational function, found D".into(),
        }),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    /// Consumes `c` after optional whitespace.
    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<F: Scalar>(&mut self) -> Result<OrePoly<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Scalar>(&mut self) -> Result<OrePoly<F>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let divisor = self.factor::<F>()?;
                let inv = match divisor.order() {
                    Some(0) => divisor.coeff(0).inv()?,
                    None => {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "division by zero".into(),
                        })
                    }
                    Some(_) => {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "divisor contains D".into(),
                        })
                    }
                };
                acc = acc.right_scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<F: Scalar>(&mut self) -> Result<OrePoly<F>> {
        if self.eat(b'-') {
            return Ok(-&self.factor::<F>()?);
        }
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base<F: Scalar>(&mut self) -> Result<OrePoly<F>> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(OrePoly::x())
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(OrePoly::d())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                let n = F::from_decimal(&digits).ok_or(Error::Parse {
                    pos: start,
                    msg: "integer literal out of range".into(),
                })?;
                Ok(OrePoly::constant(n))
            }
            Some(_) => Err(self.error("expected a number, 'x', 'D' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Operator, Rational, RationalFunction};

    fn op(s: &str) -> Operator {
        parse_operator(s).unwrap()
    }

    #[test]
    fn commutation_is_applied() {
        assert_eq!(op("D*x"), op("x*D + 1"));
        assert_eq!(op("D*x"), &Operator::x() * &Operator::d() + Operator::one());
        assert_eq!(op("x*D"), &Operator::x() * &Operator::d());
    }

    #[test]
    fn coefficients_and_printing() {
        let a = op("(1/x)*D^2 + 3");
        assert_eq!(a.coeffs().len(), 3);
        assert_eq!(a.coeff(0), RationalFunction::from_i64(3));
        assert!(a.coeff(1).is_zero());
        assert_eq!(a.coeff(2), RationalFunction::one() / RationalFunction::x());
        assert_eq!(a.to_string(), "(1/x)*D^2 + 3");
        assert_eq!(op(&a.to_string()), a);
    }

    #[test]
    fn signs_and_powers() {
        assert_eq!(op("-x^2"), -&op("x*x"));
        assert_eq!(op("--D"), Operator::d());
        assert_eq!(op("1/2*x"), Operator::x().scale(&Rational::new(1.into(), 2.into())));
        assert_eq!(op("(D + x)^0"), Operator::one());
        assert_eq!(op(" D ^ 2 - 2 "), &op("D*D") - &Operator::from_i64(2));
    }

    #[test]
    fn division_is_right_multiplication() {
        // D*(1/x) = (1/x)*D - 1/x^2
        assert_eq!(op("D/x"), op("(1/x)*D - 1/x^2"));
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_operator::<Rational>(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected a parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("x +"), 3);
        assert_eq!(pos("x ) "), 2);
        assert_eq!(pos("1/D"), 2);
        assert_eq!(pos("1/(x-x)"), 2);
        assert_eq!(pos("(x"), 2);
        assert_eq!(pos("y"), 0);
        assert_eq!(pos("x^-1"), 2);
    }

    #[test]
    fn ratfunc_parsing() {
        let f: RationalFunction = parse_ratfunc("(x + 1)/x^2").unwrap();
        assert_eq!(f.to_string(), "(x + 1)/x^2");
        assert!(parse_ratfunc::<Rational>("x*D").is_err());
    }
}
