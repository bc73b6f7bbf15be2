//! Parser for the canonical polynomial text form.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | 'z' | name | '(' expr ')'
//! ```
//!
//! `z` is the primitive root of unity of the declared conductor; names are
//! letters followed by a one-based index (`x1`, `t2`, `z3`).

use super::cyclotomic::{check_conductor, CycNum};
use super::poly::{default_var_names, MPoly};
use super::rat::{parse_rat, Rat};
use super::AlgebraError;

pub fn parse_poly(text: &str, nvars: usize, conductor: u32) -> Result<MPoly, AlgebraError> {
    parse_poly_with(text, &default_var_names("x", nvars), conductor)
}

pub fn parse_poly_with(text: &str, names: &[String], conductor: u32) -> Result<MPoly, AlgebraError> {
    check_conductor(conductor)?;
    let mut p = Parser { src: text.as_bytes(), text, pos: 0, names, conductor };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    names: &'a [String],
    conductor: u32,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.text))
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

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MPoly, AlgebraError> {
        let mut acc = MPoly::zero(self.nvars());
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MPoly, AlgebraError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            let k: u32 = digits.parse().map_err(|_| self.error("expected exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn atom(&mut self) -> Result<MPoly, AlgebraError> {
        let n = self.nvars();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.digits();
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    if self.digits().is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                }
                let r: Rat = parse_rat(&self.text[start..self.pos])?;
                Ok(MPoly::constant(n, CycNum::rational(r)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                self.digits();
                let ident = &self.text[start..self.pos];
                if ident == "z" {
                    return Ok(MPoly::constant(n, CycNum::zeta(self.conductor)));
                }
                match self.names.iter().position(|s| s == ident) {
                    Some(i) => Ok(MPoly::var(n, i)),
                    None => Err(self.error(&format!("unknown variable `{ident}`"))),
                }
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_expressions() {
        let a = parse_poly("(x1 + 1)^2 - 2*(x1)", 1, 1).unwrap();
        assert_eq!(a, parse_poly("x1^2 + 1", 1, 1).unwrap());
        let b = parse_poly_with("t1*z1 - z*t2", &["t1".into(), "t2".into(), "z1".into()], 3).unwrap();
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn errors_carry_location() {
        let e = parse_poly("x1 + y7", 2, 1).unwrap_err();
        assert!(e.to_string().contains("y7"));
        assert!(parse_poly("x1 +", 1, 1).is_err());
        assert!(parse_poly("(x1", 1, 1).is_err());
        assert!(parse_poly("x3", 2, 1).is_err());
    }
}
