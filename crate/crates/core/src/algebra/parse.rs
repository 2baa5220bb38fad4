//! Recursive-descent parser for the polynomial syntax used in input files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exp)?
//! exp    := ['-'] int | '(' ['-'] int ['/' int] ')'
//! atom   := int | name | '(' expr ')'
//! ```
//!
//! Negative powers are accepted only on single terms; half-integer powers
//! only on single terms whose exponents stay integral in the s-lattice.
//! Division must be exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{integer, Monomial, MultiPoly, Rational, VarNames};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomial syntax error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

const MAX_EXPONENT: i64 = 256;
const MAX_PRODUCT_WORK: usize = 1 << 20;
const MAX_HALF_EXP: i64 = 1 << 20;

pub fn parse_poly(text: &str, names: &VarNames) -> Result<MultiPoly, PolyParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, names, depth: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a VarNames,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyParseError {
        PolyParseError { pos: self.pos, msg: msg.to_string() }
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

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyParseError> {
        self.depth += 1;
        if self.depth > 200 {
            return Err(self.err("expression nested too deeply"));
        }
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = guarded_mul(&acc, &rhs).map_err(|msg| PolyParseError { pos: at, msg })?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = divide(&acc, &d).map_err(|msg| PolyParseError { pos: at, msg })?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyParseError> {
        self.depth += 1;
        if self.depth > 200 {
            return Err(self.err("expression nested too deeply"));
        }
        let r = if self.eat(b'-') {
            self.unary().map(|p| -p)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        };
        self.depth -= 1;
        r
    }

    fn power(&mut self) -> Result<MultiPoly, PolyParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let exp = self.exponent()?;
        raise(&base, &exp).map_err(|msg| PolyParseError { pos: at, msg })
    }

    fn integer(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn exponent(&mut self) -> Result<Rational, PolyParseError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let num = self.integer()?;
            let den = if self.eat(b'/') { self.integer()? } else { BigInt::one() };
            if den.is_zero() {
                return Err(self.err("zero denominator in exponent"));
            }
            if !self.eat(b')') {
                return Err(self.err("expected ')' after exponent"));
            }
            let r = Rational::new(num, den);
            Ok(if neg { -r } else { r })
        } else {
            let neg = self.eat(b'-');
            let n = Rational::from_integer(self.integer()?);
            Ok(if neg { -n } else { n })
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(MultiPoly::constant(self.nvars(), Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.names.index_of(name) {
                    Some(k) => Ok(MultiPoly::var(self.nvars(), k)),
                    None => Err(PolyParseError { pos: start, msg: format!("unknown variable '{name}'") }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn raise(base: &MultiPoly, exp: &Rational) -> Result<MultiPoly, String> {
    let twice = exp * integer(2);
    if !twice.is_integer() {
        return Err("exponents must be multiples of 1/2".into());
    }
    let twice = twice.to_integer();
    if twice.abs() > BigInt::from(2 * MAX_EXPONENT) {
        return Err(format!("exponent magnitude exceeds {MAX_EXPONENT}"));
    }
    let twice = twice.to_i32().unwrap();
    if twice % 2 == 0 && twice >= 0 {
        let mut acc = MultiPoly::one(base.nvars());
        for _ in 0..twice / 2 {
            acc = guarded_mul(&acc, base)?;
        }
        return Ok(acc);
    }
    // Negative or half powers: single terms only.
    let (c, m) = base
        .as_term()
        .ok_or_else(|| "negative or fractional powers need a single-term base".to_string())?;
    if base.max_abs_exp() * (twice.abs() as i64) > MAX_HALF_EXP {
        return Err("exponent too large".into());
    }
    if twice % 2 != 0 {
        if !c.is_one() {
            return Err("fractional powers need a unit-coefficient monomial base".into());
        }
        if m.pairs().iter().any(|&(_, e)| e % 2 != 0) {
            return Err("fractional power of a half-step monomial".into());
        }
        let half: Vec<(usize, i32)> = m.pairs().iter().map(|&(k, e)| (k, e / 2 * twice)).collect();
        return Ok(MultiPoly::monomial(base.nvars(), Monomial::from_pairs(half)));
    }
    let n = twice / 2;
    let cn = num_traits::pow::pow(c.recip(), (-n) as usize);
    Ok(MultiPoly::term(base.nvars(), m.pow(n), cn))
}

fn guarded_mul(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, String> {
    if a.len().saturating_mul(b.len()) > MAX_PRODUCT_WORK {
        return Err("expression too large".into());
    }
    if a.max_abs_exp() + b.max_abs_exp() > MAX_HALF_EXP {
        return Err("exponent too large".into());
    }
    Ok(a * b)
}

fn divide(num: &MultiPoly, den: &MultiPoly) -> Result<MultiPoly, String> {
    if den.is_zero() {
        return Err("division by zero".into());
    }
    if let Some((c, m)) = den.as_term() {
        return Ok(num.mul_monomial(&m.inv()).scale(&c.recip()));
    }
    num.div_exact(den).map_err(|e| e.to_string())
}
