use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{GradedRing, Poly, Scalar};

/// Parses expressions such as `x^2 - 3/4*x*y + (y - 1)^2` over `ring`.
/// Division is allowed only by nonzero constants.
pub fn parse_poly(ring: &Arc<GradedRing>, src: &str) -> Result<Poly> {
    let mut p = Parser { ring, src, chars: src.char_indices().collect(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<GradedRing>,
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let at = self.chars.get(self.pos).map(|(i, _)| *i).unwrap_or(self.src.len());
        Error::Parse(format!("{msg} at offset {at} in `{}`", self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let den = self.unary()?;
                    let c = den
                        .as_constant()
                        .ok_or_else(|| self.error("division by a non-constant"))?;
                    let inv = self
                        .ring
                        .field()
                        .inv(&c)
                        .ok_or_else(|| self.error("division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if !f(c) {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().unwrap();
                let c = self.ring.field().reduce(&Scalar::from_integer(n))?;
                Ok(Poly::constant(self.ring, c))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Poly::var(self.ring, i)),
                    None => Err(Error::Parse(format!("unknown variable `{name}` in `{}`", self.src))),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_canonically() {
        let r = GradedRing::rational(["x", "y"]);
        let p = parse_poly(&r, "(x+y)*(x-y) + 2/4*x*y").unwrap();
        assert_eq!(p.to_string(), "x^2 + 1/2*x*y - y^2");
        assert_eq!(parse_poly(&r, &p.to_string()).unwrap(), p);
        assert_eq!(parse_poly(&r, "-x^2").unwrap().to_string(), "-x^2");
    }

    #[test]
    fn rejects_garbage() {
        let r = GradedRing::rational(["x"]);
        assert!(parse_poly(&r, "z").is_err());
        assert!(parse_poly(&r, "x/x").is_err());
        assert!(parse_poly(&r, "x^").is_err());
        assert!(parse_poly(&r, "(x").is_err());
        assert!(parse_poly(&r, "x 2").is_err());
        assert!(parse_poly(&r, "1/0").is_err());
    }
}
