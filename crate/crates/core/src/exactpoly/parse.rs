//! Text grammar for polynomials:
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int ('/' int)? | 'x' int ('^' int)?
//! ```
//!
//! Whitespace is insignificant. Variables are numbered from 1.

use num_bigint::BigInt;

use super::{Mono, Poly, Rat, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    /// 1-based character column within the parsed text.
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for PolyParseError {}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<String, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self, coeff: &mut Rat, mono: &mut Mono) -> Result<(), PolyParseError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let at = self.pos;
                let idx: usize = self.digits()?.parse().map_err(|_| PolyParseError {
                    column: at + 1,
                    message: "variable index too large".into(),
                })?;
                if idx == 0 || idx > self.nvars {
                    return Err(PolyParseError {
                        column: at + 1,
                        message: format!("variable x{idx} outside x1..x{}", self.nvars),
                    });
                }
                let mut e: u32 = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let at = self.pos;
                    e = self.digits()?.parse().map_err(|_| PolyParseError {
                        column: at + 1,
                        message: "exponent too large".into(),
                    })?;
                }
                let total = mono.exp(idx - 1) as u32 + e;
                if total > u16::MAX as u32 {
                    return self.err("exponent too large");
                }
                let mut exps = [0u16; MAX_VARS];
                exps[idx - 1] = e as u16;
                *mono = mono.mul(&Mono::from_exponents(&exps));
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().unwrap();
                let mut d = BigInt::from(1);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    d = self.digits()?.parse().unwrap();
                    if d == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                }
                *coeff = &*coeff * Rat::from_big(n, d);
                Ok(())
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<(Mono, Rat), PolyParseError> {
        let mut coeff = Rat::one();
        let mut mono = Mono::one();
        self.factor(&mut coeff, &mut mono)?;
        while self.peek() == Some('*') {
            self.pos += 1;
            self.factor(&mut coeff, &mut mono)?;
        }
        Ok((mono, coeff))
    }

    fn poly(&mut self) -> Result<Poly, PolyParseError> {
        let mut p = Poly::zero(self.nvars);
        let mut sign = Rat::one();
        match self.peek() {
            Some('-') => {
                sign = -Rat::one();
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, &(c * &sign));
            match self.peek() {
                Some('+') => sign = Rat::one(),
                Some('-') => sign = -Rat::one(),
                None => break,
                Some(c) => return self.err(format!("unexpected `{c}`")),
            }
            self.pos += 1;
        }
        Ok(p)
    }
}

/// Parse polynomial text in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, PolyParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        nvars,
    };
    p.poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_display_output() {
        let p = parse_poly("3/2*x1^2*x2 - x3", 3).unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x3");
        assert_eq!(parse_poly("0", 2).unwrap(), Poly::zero(2));
        assert_eq!(parse_poly("-x1 + 1", 2).unwrap().to_string(), "-x1 + 1");
        assert_eq!(parse_poly("x1*x1*2", 2).unwrap().to_string(), "2*x1^2");
    }

    #[test]
    fn reports_columns() {
        let e = parse_poly("x1 + * x2", 2).unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_poly("x3", 2).unwrap_err();
        assert_eq!(e.column, 2);
        assert!(parse_poly("", 2).is_err());
        assert!(parse_poly("1/0", 2).is_err());
        assert!(parse_poly("x1 x2", 2).is_err());
    }
}
