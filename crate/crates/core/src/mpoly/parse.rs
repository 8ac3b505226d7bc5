//! Text form of polynomials.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := "-" factor | base ("^" int)?
//! base     := rational | var | "(" expr ")"
//! rational := int ("/" posint)?
//! var      := "x" posint
//! ```
//!
//! Whitespace is ignored and there is no implicit multiplication. A leading
//! minus applies to the whole power, so `-x1^2` is `-(x1^2)`.

use num_bigint::BigInt;

use super::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::field::Field;

/// Parses `text` as a polynomial in `nvars` variables over `field`.
pub fn parse<F: Field>(text: &str, nvars: usize, field: &F) -> Result<MPoly<F>> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        nvars,
        field,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser<'a, F: Field> {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
    field: &'a F,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, message: String) -> Error {
        Error::Syntax {
            offset: self.pos + 1,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly<F>> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent".into()));
            }
            let e: u32 = digits.parse().map_err(|_| Error::Syntax {
                offset: start + 1,
                message: format!("exponent {digits} too large"),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn base(&mut self) -> Result<MPoly<F>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'".into()));
                }
                Ok(e)
            }
            Some('x') => {
                self.pos += 1;
                let start = self.pos;
                let digits = self.digits();
                let index: usize = match digits.parse() {
                    Ok(i) if i >= 1 => i,
                    _ => {
                        return Err(Error::Syntax {
                            offset: start + 1,
                            message: "expected variable index >= 1 after 'x'".into(),
                        })
                    }
                };
                if index > self.nvars {
                    return Err(Error::BadVariable {
                        index,
                        nvars: self.nvars,
                    });
                }
                Ok(MPoly::var(self.field, self.nvars, index - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.eat('/') {
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected denominator".into()));
                    }
                    den = d.parse().expect("digits");
                }
                let c = self.field.from_ratio(&num, &den)?;
                Ok(MPoly::constant(self.field, self.nvars, c))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

fn render_monomial(m: &Monomial) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{e}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl<F: Field> MPoly<F> {
    /// Canonical text: terms in descending graded-lex order, signs folded
    /// into the joining operators, explicit `*` and `^`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = self.field();
        let mut out = String::new();
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let negative = f.is_negative(c);
            let mag = if negative { f.neg(c) } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&f.render(&mag));
            } else if f.is_one(&mag) {
                out.push_str(&render_monomial(m));
            } else {
                out.push_str(&f.render(&mag));
                out.push('*');
                out.push_str(&render_monomial(m));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn parse_examples() {
        let q = Rationals;
        let p = parse("x1 + x1^3", 1, &q).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.render(), "x1^3 + x1");
        assert!(parse("(x1+x2)^2 - x1^2 - 2*x1*x2 - x2^2", 2, &q).unwrap().is_zero());
        let f5 = PrimeField::new(5).unwrap();
        let p = parse("1/2 * x1", 1, &f5).unwrap();
        assert_eq!(p, MPoly::var(&f5, 1, 0).scale(&3));
        assert_eq!(p.render(), "3*x1");
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let q = Rationals;
        assert_eq!(parse("-x1^2", 1, &q).unwrap().render(), "-x1^2");
        assert_eq!(parse("(-x1)^2", 1, &q).unwrap().render(), "x1^2");
        assert_eq!(parse("2*-x1", 1, &q).unwrap().render(), "-2*x1");
    }

    #[test]
    fn render_examples() {
        let q = Rationals;
        assert_eq!(MPoly::zero(&q, 2).render(), "0");
        assert_eq!(parse("1 + x3^2", 3, &q).unwrap().render(), "x3^2 + 1");
        assert_eq!(
            parse("x2 - 1/2*x1*x2 - 3", 2, &q).unwrap().render(),
            "-1/2*x1*x2 + x2 - 3"
        );
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(parse("-x1 - 1", 1, &f7).unwrap().render(), "6*x1 + 6");
    }

    #[test]
    fn errors() {
        let q = Rationals;
        assert!(matches!(parse("x1 + ", 1, &q), Err(Error::Syntax { offset: 6, .. })));
        assert!(matches!(parse("x1 x2", 2, &q), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(
            parse("x3", 2, &q),
            Err(Error::BadVariable { index: 3, nvars: 2 })
        ));
        assert!(matches!(parse("x0", 2, &q), Err(Error::Syntax { .. })));
        assert!(matches!(parse("1/0*x1", 1, &q), Err(Error::DivisorNotUnit(_))));
        let f5 = PrimeField::new(5).unwrap();
        assert!(matches!(parse("x1/5", 1, &f5), Err(Error::Syntax { .. })));
        assert!(matches!(parse("1/10", 1, &f5), Err(Error::DivisorNotUnit(_))));
        assert!(matches!(parse("(x1", 1, &q), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x1^", 1, &q), Err(Error::Syntax { .. })));
    }

    #[test]
    fn integer_literals_reduce_mod_p() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(parse("7*x1 + 9", 1, &f3).unwrap().render(), "x1");
    }
}
