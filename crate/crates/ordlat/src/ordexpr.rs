//! The ordinal expression language of the `ordinal` command.
//!
//! ```text
//! query   := "cof" "(" expr ")" | "cofinal" "(" desc ("," desc)* ")" | expr
//! expr    := product ("+" product)*
//! product := power ("*" power)*
//! power   := atom ("^" atom)?
//! atom    := number | "w" | "(" expr ")" | "id" "(" expr ")"
//! desc    := "empty" | "max" | "w" | "w1" | "w2" | ...
//! ```
//!
//! Only `w` may be raised to an infinite power.

use std::fmt;

use ordlat_core::ordinal::{
    cnf_add, cnf_mul, id_order_type, product_has_cofinal_chain, ChainDescriptor, CnfOrdinal,
    Cofinality,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected {found} at offset {offset}, expected {expected}")]
    Unexpected {
        offset: usize,
        found: String,
        expected: &'static str,
    },
    #[error("number too large at offset {0}")]
    Overflow(usize),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluated {
    Ordinal(CnfOrdinal),
    Cofinality(Cofinality),
    Bool(bool),
}

impl fmt::Display for Evaluated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluated::Ordinal(a) => write!(f, "{a}"),
            Evaluated::Cofinality(c) => f.write_str(&c.name()),
            Evaluated::Bool(b) => write!(f, "{b}"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn unexpected(&mut self, expected: &'static str) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        };
        ParseError::Unexpected {
            offset: self.pos,
            found,
            expected,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Consumes `name(` if it is next.
    fn call(&mut self, name: &str) -> bool {
        let save = self.pos;
        if self.word() == name && self.eat('(') {
            return true;
        }
        self.pos = save;
        false
    }

    fn query(&mut self) -> Result<Evaluated, ParseError> {
        let out = if self.call("cof") {
            let a = self.expr()?;
            self.expect(')', "')'")?;
            Evaluated::Cofinality(a.cofinality())
        } else if self.call("cofinal") {
            let mut chains = vec![self.desc()?];
            while self.eat(',') {
                chains.push(self.desc()?);
            }
            self.expect(')', "',' or ')'")?;
            let v = product_has_cofinal_chain(&chains).expect("at least one descriptor");
            Evaluated::Bool(v)
        } else {
            Evaluated::Ordinal(self.expr()?)
        };
        if self.peek().is_some() {
            return Err(self.unexpected("end of input"));
        }
        Ok(out)
    }

    fn desc(&mut self) -> Result<ChainDescriptor, ParseError> {
        let start = self.pos;
        let w = self.word().to_string();
        match Cofinality::from_name(&w) {
            Some(c) => Ok(ChainDescriptor::new(c)),
            None => {
                self.pos = start;
                Err(self.unexpected("a chain descriptor (empty, max, w, w1, ...)"))
            }
        }
    }

    fn expr(&mut self) -> Result<CnfOrdinal, ParseError> {
        let mut acc = self.product()?;
        while self.eat('+') {
            acc = cnf_add(&acc, &self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<CnfOrdinal, ParseError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = cnf_mul(&acc, &self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<CnfOrdinal, ParseError> {
        let base_is_w = {
            let save = self.pos;
            let w = self.word() == "w";
            self.pos = save;
            w
        };
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = self.atom()?;
        if base_is_w {
            return Ok(CnfOrdinal::term(exp, 1));
        }
        match (base.as_finite(), exp.as_finite()) {
            (Some(b), Some(e)) => {
                let e = u32::try_from(e).map_err(|_| ParseError::Overflow(self.pos))?;
                b.checked_pow(e)
                    .map(CnfOrdinal::finite)
                    .ok_or(ParseError::Overflow(self.pos))
            }
            _ => Err(ParseError::Unsupported(
                "only w may carry an infinite exponent or base",
            )),
        }
    }

    fn atom(&mut self) -> Result<CnfOrdinal, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(')', "')'")?;
                Ok(a)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.word();
                digits
                    .parse::<u64>()
                    .map(CnfOrdinal::finite)
                    .map_err(|_| ParseError::Overflow(start))
            }
            Some(_) => {
                if self.call("id") {
                    let a = self.expr()?;
                    self.expect(')', "')'")?;
                    return Ok(id_order_type(&a));
                }
                let start = self.pos;
                if self.word() == "w" {
                    return Ok(CnfOrdinal::omega());
                }
                self.pos = start;
                Err(self.unexpected("a number, w, id(...) or '('"))
            }
            None => Err(self.unexpected("an ordinal")),
        }
    }
}

pub fn evaluate(src: &str) -> Result<Evaluated, ParseError> {
    Parser { src, pos: 0 }.query()
}
