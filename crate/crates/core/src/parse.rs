//! Text syntax for monomials and monomial ideals.
//!
//! ```text
//! ideal    := '(' monomial (',' monomial)* ')' | 'intersect(' ideal (',' ideal)* ')'
//! monomial := term ('*' term)* | '1'
//! term     := var ('^' int)?
//! ```
//!
//! Whitespace between tokens is ignored. `(0)` is accepted for the zero
//! ideal so that every printed ideal parses back.

use crate::error::AlgebraError;
use crate::monomial::{Ambient, Monomial, MonomialIdeal, MAX_EXPONENT};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ambient: &'a Ambient,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), AlgebraError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphabetic() || c == '_' || (i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn int(&mut self) -> Result<u32, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected an integer");
        }
        self.pos += len;
        match rest[..len].parse::<u64>() {
            Ok(v) if v <= u64::from(MAX_EXPONENT) => Ok(v as u32),
            _ => Err(AlgebraError::ExponentTooLarge { pos: start }),
        }
    }

    fn ideal(&mut self) -> Result<MonomialIdeal, AlgebraError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            if self.try_zero() {
                return Ok(MonomialIdeal::zero(self.ambient.clone()));
            }
            let mut gens = vec![self.monomial()?];
            while self.eat(',') {
                gens.push(self.monomial()?);
            }
            self.expect(')')?;
            return Ok(MonomialIdeal::from_gens(self.ambient.clone(), gens));
        }
        let save = self.pos;
        match self.ident() {
            Some((_, "intersect")) => {
                self.expect('(')?;
                let mut acc = self.ideal()?;
                while self.eat(',') {
                    acc = acc.intersect(&self.ideal()?)?;
                }
                self.expect(')')?;
                Ok(acc)
            }
            _ => {
                self.pos = save;
                self.err("expected `(` or `intersect(`")
            }
        }
    }

    fn try_zero(&mut self) -> bool {
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('0') {
            self.pos += 1;
            if self.eat(')') {
                return true;
            }
        }
        self.pos = save;
        false
    }

    fn monomial(&mut self) -> Result<Monomial, AlgebraError> {
        self.skip_ws();
        let n = self.ambient.n();
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Monomial::one(n));
        }
        let mut exps = vec![0u32; n];
        loop {
            let Some((start, name)) = self.ident() else {
                return self.err("expected a variable or `1`");
            };
            let var = self.ambient.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable {
                name: name.to_string(),
                pos: start,
            })?;
            let e = if self.eat('^') { self.int()? } else { 1 };
            exps[var] = exps[var]
                .checked_add(e)
                .filter(|&v| v <= MAX_EXPONENT)
                .ok_or(AlgebraError::ExponentTooLarge { pos: start })?;
            if !self.eat('*') {
                break;
            }
        }
        Ok(Monomial::new(exps))
    }

    fn finish(&mut self) -> Result<(), AlgebraError> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

/// Parses an ideal and returns it in canonical minimal form.
pub fn parse_ideal(text: &str, ambient: &Ambient) -> Result<MonomialIdeal, AlgebraError> {
    let mut p = Parser { src: text, pos: 0, ambient };
    let ideal = p.ideal()?;
    p.finish()?;
    Ok(ideal)
}

pub fn parse_monomial(text: &str, ambient: &Ambient) -> Result<Monomial, AlgebraError> {
    let mut p = Parser { src: text, pos: 0, ambient };
    let m = p.monomial()?;
    p.finish()?;
    Ok(m)
}
