//! Generators, sparse Laurent monomials and small polynomials over them.
//!
//! Exponents are `i64` with checked arithmetic: the exponents that occur for
//! the parameter ranges of interest are far below that bound, and an overflow
//! panics instead of wrapping.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A coordinate of a diptych. The derived order (`A < B < L < M < x_i < y_j`)
/// is the canonical order for rendering monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
    L,
    M,
    X(u32),
    Y(u32),
}

impl Gen {
    pub fn is_letter(self) -> bool {
        matches!(self, Gen::A | Gen::B | Gen::L | Gen::M)
    }

    pub fn is_side(self) -> bool {
        matches!(self, Gen::X(_) | Gen::Y(_))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Gen::A => write!(f, "A"),
            Gen::B => write!(f, "B"),
            Gen::L => write!(f, "L"),
            Gen::M => write!(f, "M"),
            Gen::X(i) => write!(f, "x_{}", braced(*i)),
            Gen::Y(j) => write!(f, "y_{}", braced(*j)),
        }
    }
}

fn braced(i: u32) -> String {
    if i < 10 {
        i.to_string()
    } else {
        format!("{{{i}}}")
    }
}

impl FromStr for Gen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Gen> {
        let mut p = Parser::new(s);
        let g = p.gen()?;
        if !p.done() {
            return Err(Error::Domain(format!("trailing input in generator {s:?}")));
        }
        Ok(g)
    }
}

impl Serialize for Gen {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gen {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Gen, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Laurent monomial with finitely many nonzero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: BTreeMap<Gen, i64>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(g: Gen) -> Self {
        Monomial::pow(g, 1)
    }

    pub fn pow(g: Gen, e: i64) -> Self {
        let mut m = Monomial::one();
        m.set(g, e);
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Gen, i64)>>(pairs: I) -> Self {
        let mut m = Monomial::one();
        for (g, e) in pairs {
            m.add_exp(g, e);
        }
        m
    }

    pub fn exp(&self, g: Gen) -> i64 {
        self.exps.get(&g).copied().unwrap_or(0)
    }

    pub fn set(&mut self, g: Gen, e: i64) {
        if e == 0 {
            self.exps.remove(&g);
        } else {
            self.exps.insert(g, e);
        }
    }

    pub fn add_exp(&mut self, g: Gen, e: i64) {
        let v = self.exp(g).checked_add(e).expect("exponent overflow");
        self.set(g, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Gen, i64)> + '_ {
        self.exps.iter().map(|(g, e)| (*g, *e))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.values().all(|&e| e >= 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (g, e) in o.iter() {
            m.add_exp(g, e);
        }
        m
    }

    pub fn inv(&self) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(g, e)| (g, -e)))
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        self.mul(&o.inv())
    }

    pub fn powi(&self, n: i64) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(g, e)| (g, e.checked_mul(n).expect("exponent overflow"))))
    }

    /// True when `o / self` is a polynomial monomial.
    pub fn divides(&self, o: &Monomial) -> bool {
        o.div(self).is_polynomial()
    }

    /// Highest common factor of two polynomial monomials.
    pub fn hcf(&self, o: &Monomial) -> Monomial {
        Monomial::from_pairs(
            self.iter()
                .filter_map(|(g, e)| {
                    let f = o.exp(g);
                    (e > 0 && f > 0).then(|| (g, e.min(f)))
                }),
        )
    }

    /// Substitutes each generator by a monomial (generators absent from the map stay).
    pub fn substitute(&self, map: &BTreeMap<Gen, Monomial>) -> Monomial {
        let mut out = Monomial::one();
        for (g, e) in self.iter() {
            match map.get(&g) {
                Some(m) => out = out.mul(&m.powi(e)),
                None => out.add_exp(g, e),
            }
        }
        out
    }

    /// True when any generator in `gens` occurs with a nonzero exponent.
    pub fn involves(&self, gens: &[Gen]) -> bool {
        gens.iter().any(|g| self.exp(*g) != 0)
    }

    /// Restriction to the letters `A, B, L, M`.
    pub fn letters(&self) -> Monomial {
        Monomial::from_pairs(self.iter().filter(|(g, _)| g.is_letter()))
    }

    pub fn parse(s: &str) -> Result<Monomial> {
        let mut p = Parser::new(s);
        let m = p.monomial()?;
        if !p.done() {
            return Err(Error::Domain(format!("trailing input in monomial {s:?}")));
        }
        Ok(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (g, e) in self.iter() {
            write!(f, "{g}")?;
            if e != 1 {
                if (0..10).contains(&e) {
                    write!(f, "^{e}")?;
                } else {
                    write!(f, "^{{{e}}}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(Gen, i64)> = self.iter().collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Monomial, D::Error> {
        let pairs = Vec::<(Gen, i64)>::deserialize(d)?;
        Ok(Monomial::from_pairs(pairs))
    }
}

/// A polynomial with integer coefficients over Laurent monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn term(coeff: i64, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(BigInt::from(coeff), m);
        p
    }

    pub fn add_term(&mut self, c: BigInt, m: Monomial) {
        let v = self.terms.remove(&m).unwrap_or_default() + c;
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(c.clone(), m.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(c1 * c2, m1.mul(m2));
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if n > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
                if !m.is_one() {
                    write!(f, "{m}")?;
                }
            } else {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Recursive-descent reader for the display syntax, e.g. `x_2^3LM^{12}y_{16}`.
pub(crate) struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Parser { s: src.as_bytes(), pos: 0, src }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] == b' ' || self.s[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    pub(crate) fn done(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.s.len()
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Domain(format!("{what} at byte {} of {:?}", self.pos, self.src))
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let braced = self.eat(b'{');
        let neg = self.eat(b'-');
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let v: i64 = self.src[start..self.pos].parse().map_err(|_| self.err("number too large"))?;
        if braced && !self.eat(b'}') {
            return Err(self.err("unclosed brace"));
        }
        Ok(if neg { -v } else { v })
    }

    fn index(&mut self) -> Result<u32> {
        if !self.eat(b'_') {
            return Err(self.err("expected '_' before an index"));
        }
        let v = self.number()?;
        u32::try_from(v).map_err(|_| self.err("negative index"))
    }

    pub(crate) fn gen(&mut self) -> Result<Gen> {
        let g = match self.peek() {
            Some(b'A') => Gen::A,
            Some(b'B') => Gen::B,
            Some(b'L') => Gen::L,
            Some(b'M') => Gen::M,
            Some(b'x') => {
                self.pos += 1;
                return Ok(Gen::X(self.index()?));
            }
            Some(b'y') => {
                self.pos += 1;
                return Ok(Gen::Y(self.index()?));
            }
            _ => return Err(self.err("expected a generator")),
        };
        self.pos += 1;
        Ok(g)
    }

    pub(crate) fn monomial(&mut self) -> Result<Monomial> {
        let mut m = Monomial::one();
        if self.eat(b'1') {
            return Ok(m);
        }
        let mut any = false;
        while matches!(self.peek(), Some(b'A' | b'B' | b'L' | b'M' | b'x' | b'y')) {
            let g = self.gen()?;
            let e = if self.eat(b'^') { self.number()? } else { 1 };
            m.add_exp(g, e);
            any = true;
        }
        if !any {
            return Err(self.err("expected a monomial"));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rendering() {
        let m = Monomial::parse("Lx_0^4").unwrap();
        assert_eq!(m.to_string(), "Lx_0^4");
        assert_eq!(Monomial::parse("x_3A").unwrap().to_string(), "Ax_3");
        assert_eq!(Monomial::parse("x_2^3LM^3").unwrap().to_string(), "LM^3x_2^3");
        assert_eq!(Monomial::parse("y_{16}^{-1}A^{12}").unwrap().to_string(), "A^{12}y_{16}^{-1}");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn arithmetic() {
        let a = Monomial::parse("A^4B^7").unwrap();
        let b = Monomial::parse("A^3B^5x_1").unwrap();
        assert_eq!(a.hcf(&b), Monomial::parse("A^3B^5").unwrap());
        assert!(Monomial::parse("A^3B^5").unwrap().divides(&a));
        assert!(!b.divides(&a));
        assert!(a.div(&a).is_one());
    }

    #[test]
    fn poly_cancellation() {
        let x = Poly::term(1, Monomial::var(Gen::A));
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.add(&x).to_string(), "2A");
    }
}
