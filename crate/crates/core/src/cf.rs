//! Jung–Hirzebruch continued fractions and their SL(2, Z) realization.
//!
//! A tag word `[c_1, ..., c_n]` stands for `c_1 - 1/(c_2 - 1/(... - 1/c_n))`.
//! Evaluation always goes through the matrix product
//! `∏ (0, 1; -1, c_i) = (-q', q; -p', p)`, so words whose recursive evaluation
//! divides by zero still have a well-defined (possibly infinite) value.

use crate::error::{Error, Result};
use crate::serde_util;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

/// A finite word of integer tags. May be empty and may contain entries `≤ 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tags(#[serde(with = "serde_util::ints")] pub Vec<BigInt>);

impl Tags {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Tags(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Tags(entries.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Tags {
        Tags(self.0.iter().rev().cloned().collect())
    }

    pub fn concat(&self, other: &Tags) -> Tags {
        Tags(self.0.iter().chain(other.0.iter()).cloned().collect())
    }
}

impl std::ops::Deref for Tags {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for Tags {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "[")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A 2×2 integer matrix `(m11, m12; m21, m22)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    #[serde(with = "serde_util::int")]
    pub m11: BigInt,
    #[serde(with = "serde_util::int")]
    pub m12: BigInt,
    #[serde(with = "serde_util::int")]
    pub m21: BigInt,
    #[serde(with = "serde_util::int")]
    pub m22: BigInt,
}

impl Mat2 {
    pub fn new(m11: BigInt, m12: BigInt, m21: BigInt, m22: BigInt) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn from_i64(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        Mat2::new(m11.into(), m12.into(), m21.into(), m22.into())
    }

    pub fn identity() -> Self {
        Mat2::from_i64(1, 0, 0, 1)
    }

    /// The elementary factor `(0, 1; -1, c)`.
    pub fn elementary(c: &BigInt) -> Self {
        Mat2::new(BigInt::zero(), BigInt::one(), -BigInt::one(), c.clone())
    }

    pub fn det(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.m11.clone(), self.m21.clone(), self.m12.clone(), self.m22.clone())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &self.m11 * &o.m11 + &self.m12 * &o.m21,
            &self.m11 * &o.m12 + &self.m12 * &o.m22,
            &self.m21 * &o.m11 + &self.m22 * &o.m21,
            &self.m21 * &o.m12 + &self.m22 * &o.m22,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({},{};{},{})", self.m11, self.m12, self.m21, self.m22)
    }
}

/// A point of the projective line over Q: `p/q` in lowest terms with `q ≥ 0`.
/// `q = 0` is the point at infinity, normalized to `1/0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtRational {
    #[serde(with = "serde_util::int")]
    pub p: BigInt,
    #[serde(with = "serde_util::int")]
    pub q: BigInt,
}

impl ExtRational {
    /// Normalizes `p/q`; `(0, 0)` is rejected.
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::Domain("0/0 is not a point of the projective line".into()));
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(ExtRational { p, q })
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.q.is_one() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// Ordered product of the elementary factors `(0, 1; -1, c_i)`.
pub fn cf_to_matrix(tags: &[BigInt]) -> Mat2 {
    tags.iter().fold(Mat2::identity(), |acc, c| &acc * &Mat2::elementary(c))
}

/// Raw numerator `p = m22` and denominator `q = m12` of the product, unreduced.
pub fn numerator_denominator(tags: &[BigInt]) -> (BigInt, BigInt) {
    let m = cf_to_matrix(tags);
    (m.m22, m.m12)
}

/// Value of the word read off the right column of its matrix.
pub fn eval_cf(tags: &[BigInt]) -> ExtRational {
    let (p, q) = numerator_denominator(tags);
    // The right column of an SL(2, Z) matrix is primitive, never (0, 0).
    ExtRational::new(p, q).expect("right column of a unimodular matrix is nonzero")
}

/// Round-up expansion of `r/a`: first tag `ceil(r/a)`, then all tags `≥ 2`.
pub fn expand_fraction(r: &BigInt, a: &BigInt) -> Result<Tags> {
    if !a.is_positive() {
        return Err(Error::Domain(format!("denominator must be positive, got {a}")));
    }
    if !r.gcd(a).is_one() {
        return Err(Error::Domain(format!("{r} and {a} are not coprime")));
    }
    let (mut num, mut den) = (r.clone(), a.clone());
    let mut out = Vec::new();
    loop {
        let c = num.div_ceil(&den);
        let rest = &c * &den - &num;
        out.push(c);
        if rest.is_zero() {
            return Ok(Tags(out));
        }
        // num/den = c - rest/den, and den/rest > 1 continues the expansion.
        num = std::mem::replace(&mut den, rest);
    }
}

/// Contracts the tag `1` at `index`: interior ones decrement both neighbours,
/// terminal ones decrement their single neighbour.
pub fn blowdown_at(tags: &[BigInt], index: usize) -> Result<Tags> {
    let n = tags.len();
    if index >= n {
        return Err(Error::Precondition(format!("index {index} out of range for length {n}")));
    }
    if !tags[index].is_one() {
        return Err(Error::Precondition(format!(
            "entry {index} is {}, not 1",
            tags[index]
        )));
    }
    if n == 1 {
        return Err(Error::Precondition("a lone 1 has no neighbour to blow down onto".into()));
    }
    let mut out: Vec<BigInt> = tags.to_vec();
    if index > 0 {
        out[index - 1] -= 1;
    }
    if index + 1 < n {
        out[index + 1] -= 1;
    }
    out.remove(index);
    Ok(Tags(out))
}

/// Order in which available 1s are blown down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    Leftmost,
    Rightmost,
}

fn is_terminal_zero(tags: &[BigInt]) -> bool {
    (tags.len() == 1 && tags[0].is_zero()) || (tags.len() == 2 && tags[0].is_one() && tags[1].is_one())
}

/// Serial blowdown until no 1 remains or the word is `[0]` or `[1,1]`.
/// The trace starts with the input and ends with the terminal word.
pub fn reduce_to_zero(tags: &[BigInt]) -> (bool, Vec<Tags>) {
    reduce_to_zero_with(tags, TieBreak::Leftmost)
}

pub fn reduce_to_zero_with(tags: &[BigInt], order: TieBreak) -> (bool, Vec<Tags>) {
    let mut current = Tags(tags.to_vec());
    let mut trace = vec![current.clone()];
    loop {
        if is_terminal_zero(&current) || current.len() < 2 {
            break;
        }
        let mut ones = current.iter().enumerate().filter(|(_, c)| c.is_one()).map(|(i, _)| i);
        let pick = match order {
            TieBreak::Leftmost => ones.next(),
            TieBreak::Rightmost => ones.last(),
        };
        let Some(i) = pick else { break };
        current = blowdown_at(&current, i).expect("picked entry is a 1 with a neighbour");
        trace.push(current.clone());
    }
    (is_terminal_zero(&current), trace)
}

/// Outcome of the reciprocal identity `q·q* = N(c_2..c_{n-1})·p + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReciprocalOutcome {
    Holds,
    Fails,
    /// Length below 2, or one of the two orientations evaluates to infinity.
    Inapplicable,
}

pub fn reciprocal_identity_check(tags: &[BigInt]) -> ReciprocalOutcome {
    let n = tags.len();
    if n < 2 {
        return ReciprocalOutcome::Inapplicable;
    }
    let (p, q) = numerator_denominator(tags);
    let rev: Vec<BigInt> = tags.iter().rev().cloned().collect();
    let (p_star, q_star) = numerator_denominator(&rev);
    if q.is_zero() || q_star.is_zero() {
        return ReciprocalOutcome::Inapplicable;
    }
    // Empty interior has numerator 1 (the identity matrix).
    let (interior_p, _) = numerator_denominator(&tags[1..n - 1]);
    if p == p_star && &q * &q_star == interior_p * &p + 1 {
        ReciprocalOutcome::Holds
    } else {
        ReciprocalOutcome::Fails
    }
}

/// Complementary word of `p/q`: the expansion of `p/(p-q)`.
pub fn complement(tags: &[BigInt]) -> Result<Tags> {
    if tags.is_empty() {
        return Err(Error::Precondition("complement of the empty word".into()));
    }
    if let Some(c) = tags.iter().find(|c| **c < BigInt::from(2)) {
        return Err(Error::Precondition(format!("entry {c} is below 2")));
    }
    let (p, q) = numerator_denominator(tags);
    // Entries ≥ 2 force p > q ≥ 1.
    expand_fraction(&p, &(&p - &q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[i64]) -> Tags {
        Tags::from_i64(v)
    }

    fn rat(p: i64, q: i64) -> ExtRational {
        ExtRational::new(p.into(), q.into()).unwrap()
    }

    #[test]
    fn matrix_of_two_zero_two() {
        assert_eq!(cf_to_matrix(&t(&[2, 0, 2])), Mat2::from_i64(0, -1, 1, -4));
        assert_eq!(eval_cf(&t(&[2, 0, 2])), rat(4, 1));
        assert_eq!(cf_to_matrix(&[]), Mat2::identity());
    }

    #[test]
    fn six_term_word_has_zero_numerator() {
        let m = cf_to_matrix(&t(&[4, 2, 1, 3, 2, 2]));
        assert!(m.m22.is_zero());
        assert!(eval_cf(&t(&[4, 2, 1, 3, 2, 2])).is_zero());
    }

    #[test]
    fn evaluations() {
        assert_eq!(eval_cf(&t(&[2, 2, 3])), rat(7, 5));
        assert_eq!(eval_cf(&t(&[5, 1, 3])), rat(7, 2));
        assert_eq!(eval_cf(&t(&[0])), rat(0, 1));
        assert!(eval_cf(&t(&[1, 1, 1])).is_infinite());
        assert!(eval_cf(&t(&[0, 0])).is_infinite());
    }

    #[test]
    fn expansions() {
        assert_eq!(expand_fraction(&(-24).into(), &7.into()).unwrap(), t(&[-3, 3, 2, 2]));
        assert_eq!(expand_fraction(&7.into(), &4.into()).unwrap(), t(&[2, 4]));
        assert_eq!(expand_fraction(&1.into(), &1.into()).unwrap(), t(&[1]));
        assert!(expand_fraction(&6.into(), &4.into()).is_err());
        assert!(expand_fraction(&6.into(), &0.into()).is_err());
    }

    #[test]
    fn blowdowns() {
        assert_eq!(blowdown_at(&t(&[4, 2, 1, 3, 2, 2]), 2).unwrap(), t(&[4, 1, 2, 2, 2]));
        assert_eq!(blowdown_at(&t(&[1, 1]), 0).unwrap(), t(&[0]));
        assert_eq!(blowdown_at(&t(&[5, 1]), 1).unwrap(), t(&[4]));
        assert!(blowdown_at(&t(&[5, 2]), 1).is_err());
    }

    #[test]
    fn reductions() {
        let (zero, trace) = reduce_to_zero(&t(&[4, 2, 1, 3, 2, 2]));
        assert!(zero);
        assert_eq!(trace.len(), 5);
        assert_eq!(trace.last().unwrap(), &t(&[1, 1]));
        assert!(!reduce_to_zero(&t(&[2, 2])).0);
        assert!(reduce_to_zero(&t(&[2, 1, 2])).0);
    }

    #[test]
    fn reciprocal() {
        assert_eq!(reciprocal_identity_check(&t(&[2, 2, 3])), ReciprocalOutcome::Holds);
        assert_eq!(reciprocal_identity_check(&t(&[2, 4])), ReciprocalOutcome::Holds);
        assert_eq!(reciprocal_identity_check(&t(&[5])), ReciprocalOutcome::Inapplicable);
    }

    #[test]
    fn complements() {
        assert_eq!(complement(&t(&[2, 2, 3])).unwrap(), t(&[4, 2]));
        assert_eq!(complement(&t(&[2])).unwrap(), t(&[2]));
        assert_eq!(complement(&t(&[4, 2])).unwrap(), t(&[2, 2, 3]));
        assert!(complement(&t(&[1, 3])).is_err());
    }
}
