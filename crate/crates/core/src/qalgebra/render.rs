//! Human-readable rendering and parsing of polynomials and rational functions.
//!
//! Output groups terms by powers of `x`, e.g. `-1 - x*(q^2 + q^3 + q^4)`,
//! and is always accepted back by [`parse_rational`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::bipoly::BiPoly;
use super::ratfunc::RationalFunction;
use super::AlgebraError;

fn power(var: char, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// `|c| * x^dx * q^dq` without sign.
fn unsigned_monomial(c: &BigInt, dx: u32, dq: u32) -> String {
    let mut parts = Vec::new();
    let c = c.abs();
    if !c.is_one() || (dx == 0 && dq == 0) {
        parts.push(c.to_string());
    }
    if dx > 0 {
        parts.push(power('x', dx));
    }
    if dq > 0 {
        parts.push(power('q', dq));
    }
    parts.join("*")
}

fn push_signed(out: &mut String, negative: bool, body: &str) {
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    out.push_str(body);
}

/// Renders a polynomial in `q` alone (terms ascending).
fn render_q_poly(terms: &[(u32, BigInt)], flip: bool) -> String {
    let mut out = String::new();
    for (dq, c) in terms {
        let neg = c.is_negative() != flip;
        push_signed(&mut out, neg, &unsigned_monomial(c, 0, *dq));
    }
    out
}

pub fn render_poly(p: &BiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut groups: BTreeMap<u32, Vec<(u32, BigInt)>> = BTreeMap::new();
    for (dx, dq, c) in p.terms() {
        groups.entry(dx).or_default().push((dq, c.clone()));
    }
    let mut out = String::new();
    for (dx, terms) in groups {
        if dx == 0 || terms.len() == 1 {
            for (dq, c) in &terms {
                push_signed(&mut out, c.is_negative(), &unsigned_monomial(c, dx, *dq));
            }
            continue;
        }
        let all_negative = terms.iter().all(|(_, c)| c.is_negative());
        let body = format!("{}*({})", power('x', dx), render_q_poly(&terms, all_negative));
        push_signed(&mut out, all_negative, &body);
    }
    out
}

/// A denominator that can follow `/` without parentheses: `x^a` or `q^b`.
fn is_bare_power(p: &BiPoly) -> bool {
    p.is_monomial()
        && p.terms()
            .next()
            .is_some_and(|(dx, dq, c)| c.is_one() && (dx == 0) != (dq == 0))
}

pub fn render_rational(r: &RationalFunction) -> String {
    if r.is_polynomial() {
        return render_poly(r.numer());
    }
    let num = r.numer();
    let num_s = if num.is_monomial() {
        render_poly(num)
    } else {
        format!("({})", render_poly(num))
    };
    let den_s = if is_bare_power(r.denom()) {
        render_poly(r.denom())
    } else {
        format!("({})", render_poly(r.denom()))
    };
    format!("{num_s}/{den_s}")
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as integer"))
    }

    fn expr(&mut self) -> Result<RationalFunction, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|_| AlgebraError::Parse {
                        pos: at,
                        msg: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, AlgebraError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e = self.integer()?;
        let e: u32 = e.try_into().map_err(|_| AlgebraError::Parse {
            pos: at,
            msg: "exponent too large".into(),
        })?;
        let p = base.pow(e);
        if negative {
            p.inv().map_err(|_| AlgebraError::Parse {
                pos: at,
                msg: "negative power of zero".into(),
            })
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RationalFunction, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(RationalFunction::x())
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(RationalFunction::q())
            }
            Some(c) if c.is_ascii_digit() => Ok(RationalFunction::constant(self.integer()?)),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses expressions over `x`, `q` and integers with `+ - * / ^` and parentheses.
pub fn parse_rational(text: &str) -> Result<RationalFunction, AlgebraError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Like [`parse_rational`] but rejects non-polynomial results.
pub fn parse_poly(text: &str) -> Result<BiPoly, AlgebraError> {
    let r = parse_rational(text)?;
    r.as_poly().cloned().ok_or(AlgebraError::NotPolynomial)
}

pub(crate) fn render_coeff(c: &num_rational::BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
