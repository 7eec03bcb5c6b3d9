//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | postfix
//! postfix := atom ('^' '-' '1')*
//! atom    := number | 'x' digits | 'inv' '(' expr ')' | '(' expr ')'
//! number  := digits ('/' digits)?
//! ```
//!
//! A minus sign directly followed by a number literal folds into a negative
//! constant. Whitespace is ignored everywhere.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::expr::NcExpr;
use crate::Rat;

pub fn parse(text: &str) -> Result<NcExpr<Rat>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<NcExpr<Rat>> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = lhs + self.term()?;
            } else if self.eat(b'-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<NcExpr<Rat>> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = lhs * self.unary()?;
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<NcExpr<Rat>> {
        if self.eat(b'-') {
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let lit = self.number()?;
                return self.postfix(NcExpr::Const(-lit));
            }
            return Ok(-self.unary()?);
        }
        let atom = self.atom()?;
        self.postfix(atom)
    }

    fn postfix(&mut self, mut e: NcExpr<Rat>) -> Result<NcExpr<Rat>> {
        while self.eat(b'^') {
            self.expect(b'-')?;
            self.expect(b'1')?;
            if self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error("only the exponent -1 is supported"));
            }
            e = e.inv();
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<NcExpr<Rat>> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(NcExpr::Const(self.number()?)),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let digits = self.digits();
                if digits.is_empty() {
                    return Err(self.error("expected a variable index after 'x'"));
                }
                match digits.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(NcExpr::Var(k)),
                    _ => Err(Error::Parse { pos: start, msg: format!("invalid variable index '{digits}'") }),
                }
            }
            Some(b'i') if self.src[self.pos..].starts_with(b"inv") => {
                self.pos += 3;
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e.inv())
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<Rat> {
        self.skip_ws();
        let num: BigInt = self.digits().parse().map_err(|_| self.error("expected a number"))?;
        // the slash belongs to the literal only when a denominator follows
        let save = self.pos;
        if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let den: BigInt = self.digits().parse().map_err(|_| self.error("expected a denominator"))?;
            if den == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            return Ok(Rat::new(num, den));
        }
        self.pos = save;
        Ok(Rat::from_integer(num))
    }
}
