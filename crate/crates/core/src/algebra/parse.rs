//! Text grammar for integer polynomials: `t^5 - 2*t + 1`.
//!
//! Integer coefficients, one variable (`t` or `x`), operators `+ - * ^`.
//! Whitespace is ignored; implicit multiplication is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::FieldDesc;
use super::poly::Poly;
use super::AlgebraError;

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    var: Option<char>,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn variable(&mut self) -> Result<(), AlgebraError> {
        match self.bump() {
            Some(c @ ('t' | 'x')) => match self.var {
                Some(v) if v != c => Err(self.err("mixed variable names")),
                _ => {
                    self.var = Some(c);
                    Ok(())
                }
            },
            _ => {
                self.pos -= 1;
                Err(self.err("expected variable t or x"))
            }
        }
    }

    fn exponent(&mut self) -> Result<usize, AlgebraError> {
        if self.peek() == Some('^') {
            self.bump();
            let e = self.integer()?;
            usize::try_from(e).map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    /// term := int ['*' var ['^' int]] | var ['^' int]
    fn term(&mut self) -> Result<(BigInt, usize), AlgebraError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.integer()?;
                match self.peek() {
                    Some('*') => {
                        self.bump();
                        self.variable()?;
                        Ok((c, self.exponent()?))
                    }
                    Some('t' | 'x') => Err(self.err("implicit multiplication")),
                    Some('^') => Err(self.err("powers of constants are not supported")),
                    _ => Ok((c, 0)),
                }
            }
            Some('t' | 'x') => {
                self.variable()?;
                let e = self.exponent()?;
                if self.peek().is_some_and(|c| c.is_ascii_digit() || c == '*') {
                    return Err(self.err("coefficient must precede the variable"));
                }
                Ok((BigInt::from(1), e))
            }
            _ => Err(self.err("expected term")),
        }
    }
}

/// Parse into ascending integer coefficients.
pub fn parse_integer_poly(src: &str) -> Result<Vec<BigInt>, AlgebraError> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut lx = Lexer {
        chars,
        pos: 0,
        var: None,
        src,
    };
    if lx.chars.is_empty() {
        return Err(lx.err("empty polynomial"));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    while lx.peek().is_some() {
        let sign = match lx.peek() {
            Some('+') => {
                lx.bump();
                1
            }
            Some('-') => {
                lx.bump();
                -1
            }
            _ if first => 1,
            _ => return Err(lx.err("expected + or -")),
        };
        first = false;
        let (c, e) = lx.term()?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::zero());
        }
        coeffs[e] += c * sign;
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Parse and map the integer coefficients into `field`.
pub fn parse_poly(field: &FieldDesc, src: &str) -> Result<Poly, AlgebraError> {
    let coeffs = parse_integer_poly(src)?;
    Ok(Poly::new(
        field,
        coeffs.iter().map(|c| field.from_bigint(c)).collect(),
    ))
}
