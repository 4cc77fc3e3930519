//! Text syntax for polynomials.
//!
//! ```text
//! poly     ::= term (("+" | "-") term)*
//! term     ::= [sign] [rational "*"] monomial | [sign] rational
//! rational ::= int ["/" posint]
//! monomial ::= var ["^" posint] ("*" var ["^" posint])*
//! ```
//!
//! Whitespace is ignored everywhere. Variables are `x`, `y` and (arity 3) `z`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Poly, Rational, VARIABLES};
use crate::error::{Error, Result};

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    arity: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(o, _)| o).unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn sign(&mut self) -> bool {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        }
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if self.peek() == Some('/') {
            self.pos += 1;
            let Some(den) = self.digits() else {
                return self.fail("expected denominator");
            };
            if den.is_zero() {
                return self.fail("zero denominator");
            }
            return Ok(Some(Rational::new(num, den)));
        }
        Ok(Some(Rational::from_integer(num)))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let at = self.pos;
        let Some(e) = self.digits() else {
            return self.fail("expected exponent");
        };
        if e.is_zero() {
            self.pos = at;
            return self.fail("exponent must be positive");
        }
        match u32::try_from(e) {
            Ok(e) => Ok(e),
            Err(_) => Err(Error::ExponentOverflow {
                exponent: u64::MAX,
                cap: super::exponent_cap(),
            }),
        }
    }

    fn variable(&mut self) -> Result<Option<usize>> {
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        if !c.is_ascii_alphabetic() {
            return Ok(None);
        }
        match VARIABLES.iter().position(|&v| v == c) {
            Some(i) if i < self.arity => {
                self.pos += 1;
                Ok(Some(i))
            }
            _ => Err(Error::WrongVariable {
                var: c,
                arity: self.arity,
            }),
        }
    }

    fn monomial(&mut self) -> Result<Monomial> {
        let mut exps = [0u64; 3];
        loop {
            let Some(v) = self.variable()? else {
                return self.fail("expected variable");
            };
            exps[v] += self.exponent()? as u64;
            if self.peek() == Some('*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        let cap = super::exponent_cap() as u64;
        if let Some(&e) = exps.iter().find(|&&e| e > cap) {
            return Err(Error::ExponentOverflow {
                exponent: e,
                cap: cap as u32,
            });
        }
        Monomial::new(&exps.map(|e| e as u32))
    }

    fn term(&mut self, negative: bool) -> Result<(Monomial, Rational)> {
        let negative = negative ^ self.sign();
        let coeff = match self.rational()? {
            Some(c) => {
                if self.peek() == Some('*') {
                    self.pos += 1;
                    Some(c)
                } else {
                    let c = if negative { -c } else { c };
                    return Ok((Monomial::ONE, c));
                }
            }
            None => None,
        };
        let m = self.monomial()?;
        let c = coeff.unwrap_or_else(Rational::one);
        Ok((m, if negative { -c } else { c }))
    }
}

/// Parses a polynomial in `arity` variables.
pub fn parse_poly(text: &str, arity: usize) -> Result<Poly> {
    if !(2..=3).contains(&arity) {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: arity,
        });
    }
    let mut p = Parser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        pos: 0,
        arity,
        end: text.len(),
    };
    if p.chars.is_empty() {
        return p.fail("empty polynomial");
    }
    let mut out = Poly::zero(arity);
    let (m, c) = p.term(false)?;
    out.add_term(m, c);
    while let Some(c) = p.peek() {
        let negative = match c {
            '+' => false,
            '-' => true,
            _ => return p.fail(format!("unexpected character `{c}`")),
        };
        p.pos += 1;
        let (m, c) = p.term(negative)?;
        out.add_term(m, c);
    }
    Ok(out)
}
