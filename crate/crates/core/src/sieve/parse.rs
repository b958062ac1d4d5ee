use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FactoredPoly, SieveError};
use crate::poly::{is_irreducible_q, IntPoly};

const MAX_EXPONENT: usize = 3;

/// Parses a product of parenthesized polynomials in `t`, such as
/// `(2t+9)(2t-3)(8t-13)` or `(t^2 + 1)`, and validates the factors.
pub fn parse_factored(text: &str) -> Result<FactoredPoly, SieveError> {
    let factors = Parser::new(text).product()?;
    validate(&factors)?;
    Ok(FactoredPoly {
        factors,
        source_text: text.to_string(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SieveError> {
        Err(SieveError::Parse {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SieveError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    fn product(&mut self) -> Result<Vec<IntPoly>, SieveError> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            self.expect(b'(')?;
            out.push(self.poly()?);
            self.expect(b')')?;
        }
        if out.is_empty() {
            return self.error("expected at least one parenthesized factor");
        }
        Ok(out)
    }

    fn poly(&mut self) -> Result<IntPoly, SieveError> {
        let mut coeffs = vec![BigInt::zero(); MAX_EXPONENT + 1];
        let mut first = true;
        loop {
            let negative = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let (c, k) = self.term()?;
            if negative {
                coeffs[k] -= c;
            } else {
                coeffs[k] += c;
            }
        }
        Ok(IntPoly::new(coeffs))
    }

    /// `c`, `t`, `c*t`, `ct`, `t^k`, `c*t^k`
    fn term(&mut self) -> Result<(BigInt, usize), SieveError> {
        let coeff = self.number()?;
        let has_star = self.eat(b'*');
        if self.eat(b't') {
            let k = if self.eat(b'^') {
                let start = self.pos;
                let Some(k) = self.number()? else {
                    return self.error("expected exponent after '^'");
                };
                if k.is_zero() || k > BigInt::from(MAX_EXPONENT) {
                    self.pos = start;
                    return self.error(format!("exponent must be between 1 and {MAX_EXPONENT}"));
                }
                usize::try_from(&k).unwrap()
            } else {
                1
            };
            Ok((coeff.unwrap_or_else(BigInt::one), k))
        } else if has_star {
            self.error("expected 't' after '*'")
        } else {
            match coeff {
                Some(c) => Ok((c, 0)),
                None => self.error("expected a number or 't'"),
            }
        }
    }

    fn number(&mut self) -> Result<Option<BigInt>, SieveError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(Some(digits.parse().unwrap()))
    }
}

fn validate(factors: &[IntPoly]) -> Result<(), SieveError> {
    for (i, f) in factors.iter().enumerate() {
        let index = i + 1;
        match f.degree() {
            None | Some(0) => return Err(SieveError::Constant { index }),
            Some(d) if d > MAX_EXPONENT => return Err(SieveError::Degree { index, degree: d }),
            _ => {}
        }
        if !f.content().is_one() {
            return Err(SieveError::NotPrimitive { index });
        }
        if !is_irreducible_q(f).expect("nonconstant") {
            return Err(SieveError::Reducible { index });
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if factors[i] == factors[j] || factors[i] == -&factors[j] {
                return Err(SieveError::Duplicate { first: i + 1, second: j + 1 });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn accepts_gate_polynomials() {
        let g = parse_factored("(4t+1)(4t+5)").unwrap();
        assert_eq!(g.factors, vec![p(&[1, 4]), p(&[5, 4])]);
        let g = parse_factored("(t^2+1)").unwrap();
        assert_eq!(g.factors, vec![p(&[1, 0, 1])]);
        let g = parse_factored(" ( 2*t + 9 ) (2t-3)(8t - 13) ").unwrap();
        assert_eq!(g.factors, vec![p(&[9, 2]), p(&[-3, 2]), p(&[-13, 8])]);
        let g = parse_factored("(-t^3 + 2)").unwrap();
        assert_eq!(g.factors, vec![p(&[2, 0, 0, -1])]);
        let g = parse_factored("(t^2 - 12)").unwrap();
        assert_eq!(g.product(), p(&[-12, 0, 1]));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_factored("(4t+1)(4t+") {
            Err(SieveError::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        match parse_factored("4t+1") {
            Err(SieveError::Parse { pos, .. }) => assert_eq!(pos, 0),
            other => panic!("{other:?}"),
        }
        match parse_factored("(t^4+1)") {
            Err(SieveError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_factored(""), Err(SieveError::Parse { .. })));
        assert!(matches!(parse_factored("(2*)"), Err(SieveError::Parse { .. })));
        assert!(matches!(parse_factored("(x+1)"), Err(SieveError::Parse { .. })));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(parse_factored("(t+1)(t+1)").unwrap_err(), SieveError::Duplicate { first: 1, second: 2 });
        assert_eq!(parse_factored("(t+1)(-t-1)").unwrap_err(), SieveError::Duplicate { first: 1, second: 2 });
        assert_eq!(parse_factored("(2t+2)").unwrap_err(), SieveError::NotPrimitive { index: 1 });
        assert_eq!(parse_factored("(t^2-1)").unwrap_err(), SieveError::Reducible { index: 1 });
        assert_eq!(parse_factored("(t+1)(5)").unwrap_err(), SieveError::Constant { index: 2 });
        assert_eq!(parse_factored("(t - t + 3)").unwrap_err(), SieveError::Constant { index: 1 });
    }
}
