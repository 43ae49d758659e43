//! The two toric panels of a diptych as long rectangles.
//!
//! A panel built from `(r, a; b, s)` with letters `(P, Q)` has sides
//! `x_0..x_k` and `y_0..y_l`, stored bottom-up. In the AB orientation the
//! bottom is the big end, the basis is `(x_k, y_l, P, Q)` and
//!
//! ```text
//! x_0 = x_k^a y_l^{-r} P^r,   y_0 = x_k^{-s} y_l^b Q^s.
//! ```
//!
//! The LM panel of a pair is the AB construction for `(r, g; h, s)` with
//! letters `(L, M)`, turned upside down, so its big end is the top.

use crate::cf::{expand_fraction, reduce_to_zero, Mat2, Tags};
use crate::classify::MatrixPair;
use crate::error::{invariant, Error, Result};
use crate::monomial::{Gen, Monomial};
use crate::serde_util;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Panel {
    AB,
    LM,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum End {
    Bottom,
    Top,
}

/// Corner tags at the little end (the top in AB orientation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LittleEnd {
    /// `a_k ≥ 2` and `b_l = 1`, when `r < a` and `b < s`.
    XTagBig,
    /// `a_k = 1` and `b_l ≥ 2`, when `r > a` and `b > s`.
    YTagBig,
}

/// Corner tags at the big end (the bottom in AB orientation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BigEnd {
    /// `a_0 ≤ -1` and `b_0 = 0`, when `r < b` and `a < s`.
    XNegative,
    /// `a_0 = 0` and `b_0 ≤ -1`, when `r > b` and `a > s`.
    YNegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Attitude {
    Regular { little: LittleEnd, big: BigEnd },
    /// `r = 1` or `s = 1`.
    Initial,
}

/// A corner tag equation `u·w = ann·c^t`, with its polynomial replacement
/// when the tag `t` is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerEquation {
    pub corner: Gen,
    pub lhs: (Gen, Gen),
    pub tag: i64,
    pub annotation: Monomial,
    /// `ann·c^t`, possibly with a negative exponent.
    pub laurent: Monomial,
    /// Equal to `laurent` unless the tag is negative, in which case `c^t` is
    /// eliminated through the opposite corner equation.
    pub polynomial: Monomial,
}

impl CornerEquation {
    pub fn is_anomalous(&self) -> bool {
        self.tag < 0
    }
}

impl fmt::Display for CornerEquation {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}{} = {}", self.lhs.0, self.lhs.1, self.laurent)?;
        if self.is_anomalous() {
            write!(f, " = {}", self.polynomial)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongRectangle {
    pub panel: Panel,
    /// The matrix of the AB-orientation construction.
    pub matrix: Mat2,
    pub x_tags: Tags,
    pub y_tags: Tags,
    pub k: usize,
    pub l: usize,
    pub big_end: End,
    pub attitude: Attitude,
    /// Annotations at `x_0, y_0, x_k, y_l`, in that order.
    pub annotations: [Monomial; 4],
}

fn tag_i64(t: &BigInt) -> i64 {
    t.to_i64().expect("tags fit in 64 bits")
}

fn x(i: usize) -> Gen {
    Gen::X(i as u32)
}

fn y(j: usize) -> Gen {
    Gen::Y(j as u32)
}

fn letters(p: Gen, pe: &BigInt, q: Gen, qe: &BigInt) -> Monomial {
    Monomial::from_pairs([(p, tag_i64(pe)), (q, tag_i64(qe))])
}

/// Side tags from the two expansions of one side, checked to agree inside.
fn side_tags(bottom: Tags, top_reversed: Tags, side: &str) -> Result<Tags> {
    let n = bottom.len();
    invariant!(
        n == top_reversed.len(),
        "{side} side: expansions {bottom} and {top_reversed} differ in length"
    );
    let mut tags = bottom.0.clone();
    tags.push(top_reversed.0[0].clone());
    for i in 1..n {
        invariant!(
            tags[i] == top_reversed.0[n - i],
            "{side} side: interior tag {i} disagrees between {bottom} and {top_reversed}"
        );
    }
    Ok(Tags(tags))
}

fn attitude_of(m: &Mat2, xt: &Tags, yt: &Tags) -> Result<Attitude> {
    let (r, a, b, s) = (&m.m11, &m.m12, &m.m21, &m.m22);
    if r.is_one() || s.is_one() {
        return Ok(Attitude::Initial);
    }
    let (k, l) = (xt.len() - 1, yt.len() - 1);
    let one = BigInt::one();
    let little = if r < a && b < s {
        invariant!(xt[k] >= BigInt::from(2) && yt[l] == one, "little end tags contradict r < a, b < s");
        LittleEnd::XTagBig
    } else if r > a && b > s {
        invariant!(xt[k] == one && yt[l] >= BigInt::from(2), "little end tags contradict r > a, b > s");
        LittleEnd::YTagBig
    } else {
        return Err(Error::Invariant(format!("{m}: r<a and b<s disagree")));
    };
    let big = if r < b && a < s {
        invariant!(xt[0] <= -one.clone() && yt[0].is_zero(), "big end tags contradict r < b, a < s");
        BigEnd::XNegative
    } else if r > b && a > s {
        invariant!(xt[0].is_zero() && yt[0] <= -one, "big end tags contradict r > b, a > s");
        BigEnd::YNegative
    } else {
        return Err(Error::Invariant(format!("{m}: r<b and a<s disagree")));
    };
    Ok(Attitude::Regular { little, big })
}

/// The AB-orientation construction of `(r, a; b, s)` with letters `(p, q)`.
fn construct(m: &Mat2, panel: Panel, p: Gen, q: Gen) -> Result<LongRectangle> {
    let (r, a, b, s) = (&m.m11, &m.m12, &m.m21, &m.m22);
    if !r.is_positive() || !s.is_positive() || a.is_negative() || b.is_negative() {
        return Err(Error::Precondition(format!("{m} needs r, s ≥ 1 and a, b ≥ 0")));
    }
    invariant!(m.det().is_one(), "{m} does not have determinant 1");
    let x_tags = side_tags(expand_fraction(&-b, r)?, expand_fraction(a, r)?, "x")?;
    let y_tags = side_tags(expand_fraction(&-a, s)?, expand_fraction(b, s)?, "y")?;
    let (k, l) = (x_tags.len() - 1, y_tags.len() - 1);
    let attitude = attitude_of(m, &x_tags, &y_tags)?;
    let annotations = [
        letters(p, b, q, s),
        letters(p, r, q, a),
        Monomial::var(p),
        Monomial::var(q),
    ];
    Ok(LongRectangle {
        panel,
        matrix: m.clone(),
        x_tags,
        y_tags,
        k,
        l,
        big_end: End::Bottom,
        attitude,
        annotations,
    })
}

/// Panel `V_AB` of the pair.
pub fn rectangle_ab(pair: &MatrixPair) -> Result<LongRectangle> {
    construct(&pair.ab(), Panel::AB, Gen::A, Gen::B)
}

/// Panel `V_AB` of a single matrix, as used for the initial cases.
pub fn rectangle_from_matrix(m: &Mat2) -> Result<LongRectangle> {
    construct(m, Panel::AB, Gen::A, Gen::B)
}

/// Panel `V_LM` of the pair, stored bottom-up with its big end at the top.
pub fn rectangle_lm(pair: &MatrixPair) -> Result<LongRectangle> {
    let rev = construct(&pair.gh(), Panel::LM, Gen::L, Gen::M)?;
    let [ax0, ay0, axk, ayl] = rev.annotations.clone();
    let rect = LongRectangle {
        panel: Panel::LM,
        matrix: rev.matrix.clone(),
        x_tags: rev.x_tags.reversed(),
        y_tags: rev.y_tags.reversed(),
        k: rev.k,
        l: rev.l,
        big_end: End::Top,
        attitude: rev.attitude,
        annotations: [axk, ayl, ax0, ay0],
    };
    check_lm_corner_expansions(pair, &rect)?;
    Ok(rect)
}

/// Corner tags read directly from `g/r`, `-h/r`, `h/s`, `-g/s`.
fn check_lm_corner_expansions(pair: &MatrixPair, rect: &LongRectangle) -> Result<()> {
    let (k, l) = (rect.k, rect.l);
    let bottom_x = expand_fraction(&pair.g, &pair.r)?;
    let top_x = expand_fraction(&-&pair.h, &pair.r)?;
    let bottom_y = expand_fraction(&pair.h, &pair.s)?;
    let top_y = expand_fraction(&-&pair.g, &pair.s)?;
    invariant!(bottom_x.0[..] == rect.x_tags.0[..k], "LM x tags disagree with g/r");
    invariant!(top_x.reversed().0[..] == rect.x_tags.0[1..], "LM x tags disagree with -h/r");
    invariant!(bottom_y.0[..] == rect.y_tags.0[..l], "LM y tags disagree with h/s");
    invariant!(top_y.reversed().0[..] == rect.y_tags.0[1..], "LM y tags disagree with -g/s");
    Ok(())
}

impl LongRectangle {
    pub fn x_tag(&self, i: usize) -> i64 {
        tag_i64(&self.x_tags[i])
    }

    pub fn y_tag(&self, j: usize) -> i64 {
        tag_i64(&self.y_tags[j])
    }

    /// All side generators, `x_0..x_k` then `y_0..y_l`.
    pub fn generators(&self) -> Vec<Gen> {
        (0..=self.k).map(x).chain((0..=self.l).map(y)).collect()
    }

    /// Letters of the panel.
    pub fn letters(&self) -> [Gen; 2] {
        match self.panel {
            Panel::AB => [Gen::A, Gen::B],
            Panel::LM => [Gen::L, Gen::M],
        }
    }

    /// Tags in AB orientation (little end on top).
    pub fn oriented_tags(&self) -> (Tags, Tags) {
        match self.big_end {
            End::Bottom => (self.x_tags.clone(), self.y_tags.clone()),
            End::Top => (self.x_tags.reversed(), self.y_tags.reversed()),
        }
    }

    fn corner_data(&self) -> [(Gen, Gen, Gen, i64, &Monomial); 4] {
        let (k, l) = (self.k, self.l);
        [
            (x(0), x(1), y(0), self.x_tag(0), &self.annotations[0]),
            (y(0), y(1), x(0), self.y_tag(0), &self.annotations[1]),
            (x(k), x(k - 1), y(l), self.x_tag(k), &self.annotations[2]),
            (y(l), y(l - 1), x(k), self.y_tag(l), &self.annotations[3]),
        ]
    }

    /// The four corner equations at `x_0, y_0, x_k, y_l`.
    pub fn corner_equations(&self) -> Result<[CornerEquation; 4]> {
        let data = self.corner_data();
        let mut out = Vec::with_capacity(4);
        for (n, &(c, same, other, t, ann)) in data.iter().enumerate() {
            let laurent = ann.mul(&Monomial::pow(c, t));
            let polynomial = if t >= 0 {
                laurent.clone()
            } else {
                // The opposite corner at the same end has tag 0, so there
                // c = ann' / same', giving same'^{-t}·ann·ann'^{t}.
                let (_, same_o, _, t_o, ann_o) = data[n ^ 1];
                invariant!(t_o == 0, "anomalous corner {c} faces tag {t_o}, not 0");
                let m = Monomial::pow(same_o, -t).mul(ann).mul(&ann_o.powi(t));
                invariant!(m.is_polynomial(), "replacement {m} at {c} is not a polynomial");
                m
            };
            let (u, w) = match same {
                Gen::X(_) => (same, other),
                _ => (other, same),
            };
            out.push(CornerEquation { corner: c, lhs: (u, w), tag: t, annotation: ann.clone(), laurent, polynomial });
        }
        Ok(out.try_into().expect("four corners"))
    }

    /// Every side generator as a Laurent monomial in the panel basis:
    /// `(x_k, y_l, A, B)` for AB and `(x_0, y_0, L, M)` for LM.
    pub fn generators_laurent(&self) -> Result<BTreeMap<Gen, Monomial>> {
        let (k, l) = (self.k, self.l);
        let mut map = BTreeMap::new();
        match self.panel {
            Panel::AB => {
                let m = &self.matrix;
                let [p, q] = self.letters();
                let (xi, eta) = (Monomial::var(x(k)), Monomial::var(y(l)));
                let x0 = xi.powi(tag_i64(&m.m12)).mul(&eta.powi(-tag_i64(&m.m11))).mul(&Monomial::pow(p, tag_i64(&m.m11)));
                let y0 = xi.powi(-tag_i64(&m.m22)).mul(&eta.powi(tag_i64(&m.m21))).mul(&Monomial::pow(q, tag_i64(&m.m22)));
                let x1 = self.annotations[0].mul(&x0.powi(self.x_tag(0))).div(&y0);
                let y1 = self.annotations[1].mul(&y0.powi(self.y_tag(0))).div(&x0);
                fill_side(&mut map, x, &self.x_tags, x0, x1);
                fill_side(&mut map, y, &self.y_tags, y0, y1);
                invariant!(map[&x(k)] == xi, "continued division does not return to x_{k}: {}", map[&x(k)]);
                invariant!(map[&y(l)] == eta, "continued division does not return to y_{l}: {}", map[&y(l)]);
            }
            Panel::LM => {
                let (x0, y0) = (Monomial::var(x(0)), Monomial::var(y(0)));
                let x1 = self.annotations[0].mul(&x0.powi(self.x_tag(0))).div(&y0);
                let y1 = self.annotations[1].mul(&y0.powi(self.y_tag(0))).div(&x0);
                fill_side(&mut map, x, &self.x_tags, x0.clone(), x1);
                fill_side(&mut map, y, &self.y_tags, y0.clone(), y1);
                let m = &self.matrix;
                let [p, q] = self.letters();
                let xk = x0.powi(tag_i64(&m.m12)).mul(&y0.powi(-tag_i64(&m.m11))).mul(&Monomial::pow(p, tag_i64(&m.m11)));
                let yl = x0.powi(-tag_i64(&m.m22)).mul(&y0.powi(tag_i64(&m.m21))).mul(&Monomial::pow(q, tag_i64(&m.m22)));
                invariant!(map[&x(k)] == xk, "continued division gives x_{k} = {}, expected {xk}", map[&x(k)]);
                invariant!(map[&y(l)] == yl, "continued division gives y_{l} = {}, expected {yl}", map[&y(l)]);
            }
        }
        for eq in self.corner_equations()? {
            let lhs = map[&eq.lhs.0].mul(&map[&eq.lhs.1]);
            invariant!(lhs == eq.laurent.substitute(&map), "corner equation {eq} fails on the Laurent map");
            invariant!(lhs == eq.polynomial.substitute(&map), "replacement {eq} fails on the Laurent map");
        }
        Ok(map)
    }

    /// Side tag equations, then every cross equation `x_i y_j = 0` except
    /// at `(0, 0)` and `(k, l)`.
    pub fn tent_equations(&self) -> Vec<TentEquation> {
        let mut out = Vec::new();
        for i in 1..self.k {
            out.push(TentEquation::Tag { lhs: (x(i - 1), x(i + 1)), rhs: Monomial::pow(x(i), self.x_tag(i)) });
        }
        for j in 1..self.l {
            out.push(TentEquation::Tag { lhs: (y(j - 1), y(j + 1)), rhs: Monomial::pow(y(j), self.y_tag(j)) });
        }
        for i in 0..=self.k {
            for j in 0..=self.l {
                if (i, j) != (0, 0) && (i, j) != (self.k, self.l) {
                    out.push(TentEquation::Cross { lhs: (x(i), y(j)) });
                }
            }
        }
        out
    }

    /// Toric value of `u·w` on this panel.
    pub fn toric_relation(&self, u: Gen, w: Gen) -> Result<Monomial> {
        let map = self.generators_laurent()?;
        let get = |g: Gen| {
            if g.is_letter() {
                Ok(Monomial::var(g))
            } else {
                map.get(&g).cloned().ok_or_else(|| Error::Precondition(format!("{g} is not a generator of this panel")))
            }
        };
        Ok(get(u)?.mul(&get(w)?))
    }

    /// Whether the attitude-appropriate concatenation of side tags reduces to zero.
    pub fn zero_check(&self) -> bool {
        match self.attitude {
            Attitude::Regular { .. } => reduce_to_zero(&self.zero_word()).0,
            Attitude::Initial => self.zero_words().iter().any(|w| reduce_to_zero(w).0),
        }
    }

    /// The concatenation tested by [`zero_check`](Self::zero_check), in AB
    /// orientation: drop `a_0, a_1` if `a_0 = 0`, else drop `a_0, b_0, b_1`.
    pub fn zero_word(&self) -> Tags {
        let (xt, _) = self.oriented_tags();
        let [drop_x, drop_y] = self.zero_words();
        if xt[0].is_zero() {
            drop_x
        } else {
            drop_y
        }
    }

    fn zero_words(&self) -> [Tags; 2] {
        let (xt, yt) = self.oriented_tags();
        let (k, l) = (xt.len() - 1, yt.len() - 1);
        let drop_x = xt[2.min(k + 1)..].iter().chain(yt[1..].iter().rev()).cloned().collect();
        let drop_y = xt[1..].iter().chain(yt[2.min(l + 1)..].iter().rev()).cloned().collect();
        [Tags(drop_x), Tags(drop_y)]
    }

    /// Two-column text picture, top row first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let name = match self.panel {
            Panel::AB => "V_AB",
            Panel::LM => "V_LM",
        };
        out.push_str(&format!("{name} from {}\n", self.matrix));
        out.push_str(&format!("  top:    {} at x_{}, {} at y_{}\n", self.annotations[2], self.k, self.annotations[3], self.l));
        let rows = self.k.max(self.l);
        for n in (0..=rows).rev() {
            let left = if n <= self.k { format!("x_{:<3}{:>5}", n, self.x_tags[n].to_string()) } else { String::new() };
            let right = if n <= self.l { format!("{:>5}  y_{}", self.y_tags[n].to_string(), n) } else { String::new() };
            out.push_str(&format!("  {left:<12}    {right}\n"));
        }
        out.push_str(&format!("  bottom: {} at x_0, {} at y_0\n", self.annotations[0], self.annotations[1]));
        out
    }
}

fn fill_side(map: &mut BTreeMap<Gen, Monomial>, gen: fn(usize) -> Gen, tags: &Tags, v0: Monomial, v1: Monomial) {
    let n = tags.len() - 1;
    let mut vals = vec![v0, v1];
    for i in 1..n {
        let next = vals[i].powi(tag_i64(&tags[i])).div(&vals[i - 1]);
        vals.push(next);
    }
    for (i, v) in vals.into_iter().enumerate().take(n + 1) {
        map.insert(gen(i), v);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TentEquation {
    Tag { lhs: (Gen, Gen), rhs: Monomial },
    Cross { lhs: (Gen, Gen) },
}

impl fmt::Display for TentEquation {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            TentEquation::Tag { lhs, rhs } => write!(f, "{}{} = {}", lhs.0, lhs.1, rhs),
            TentEquation::Cross { lhs } => write!(f, "{}{} = 0", lhs.0, lhs.1),
        }
    }
}

/// Inward facet normals of the AB cone in the basis `(x_k, y_l, A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facets {
    pub normals: Vec<[serde_util::JsonInt; 4]>,
    /// Every normal takes the value 1 on `AB`.
    pub gorenstein: bool,
}

pub fn cone_facets(pair: &MatrixPair) -> Facets {
    let MatrixPair { r, a, b, s, .. } = pair;
    let z = BigInt::zero;
    let o = BigInt::one;
    let raw: Vec<[BigInt; 4]> = vec![
        [z(), z(), z(), o()],
        [z(), z(), o(), z()],
        [z(), o(), o(), z()],
        [r * b, r * s, o(), z()],
        [r * s, a * s, z(), o()],
        [o(), z(), z(), o()],
    ];
    let gorenstein = raw.iter().all(|n| (&n[2] + &n[3]).is_one());
    Facets {
        normals: raw.into_iter().map(|n| n.map(serde_util::JsonInt)).collect(),
        gorenstein,
    }
}

/// Pairing of a normal with a Laurent monomial in the basis `(x_k, y_l, A, B)`.
pub fn pair_normal(normal: &[serde_util::JsonInt; 4], m: &Monomial, k: usize, l: usize) -> BigInt {
    let e = [m.exp(x(k)), m.exp(y(l)), m.exp(Gen::A), m.exp(Gen::B)];
    normal.iter().zip(e).map(|(n, e)| &n.0 * BigInt::from(e)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> MatrixPair {
        MatrixPair::from_i64(7, 12, 4, 7, 24, 2)
    }

    #[test]
    fn fig2_tags() {
        let r = rectangle_ab(&worked()).unwrap();
        assert_eq!(r.x_tags, Tags::from_i64(&[0, 2, 4, 2]));
        assert_eq!(r.y_tags, Tags::from_i64(&[-1, 2, 2, 3, 1]));
        assert_eq!(r.attitude, Attitude::Regular { little: LittleEnd::XTagBig, big: BigEnd::YNegative });
        assert!(r.zero_check());
        assert_eq!(r.zero_word(), Tags::from_i64(&[4, 2, 1, 3, 2, 2]));
    }

    #[test]
    fn fig4_tags() {
        let r = rectangle_lm(&worked()).unwrap();
        assert_eq!(r.x_tags, Tags::from_i64(&[4, 2, 4, 0]));
        assert_eq!(r.y_tags, Tags::from_i64(&[1, 2, 2, 3, -3]));
        assert!(r.zero_check());
        assert_eq!(r.zero_word().reversed(), Tags::from_i64(&[3, 2, 2, 1, 4, 2]));
        let as_ab = rectangle_from_matrix(&Mat2::from_i64(7, 24, 2, 7)).unwrap();
        assert_eq!(as_ab.x_tags, Tags::from_i64(&[0, 4, 2, 4]));
        assert_eq!(as_ab.y_tags, Tags::from_i64(&[-3, 3, 2, 2, 1]));
    }

    #[test]
    fn laurent_generators() {
        let ab = rectangle_ab(&worked()).unwrap();
        let map = ab.generators_laurent().unwrap();
        assert_eq!(map[&Gen::X(0)], Monomial::parse("x_3^{12}A^7y_4^{-7}").unwrap());
        assert_eq!(map[&Gen::X(3)], Monomial::var(Gen::X(3)));
        let lm = rectangle_lm(&worked()).unwrap();
        let map = lm.generators_laurent().unwrap();
        assert_eq!(map[&Gen::X(3)], Monomial::parse("x_0^{24}L^7y_0^{-7}").unwrap());
    }

    #[test]
    fn corners() {
        let ab = rectangle_ab(&worked()).unwrap();
        let eqs = ab.corner_equations().unwrap();
        assert_eq!(eqs[0].polynomial, Monomial::parse("A^4B^7").unwrap());
        assert_eq!(eqs[1].laurent, Monomial::parse("y_0^{-1}A^7B^{12}").unwrap());
        assert_eq!(eqs[1].polynomial, Monomial::parse("x_1A^3B^5").unwrap());
        let lm = rectangle_lm(&worked()).unwrap();
        let eqs = lm.corner_equations().unwrap();
        assert_eq!(eqs[3].lhs, (Gen::X(3), Gen::Y(3)));
        assert_eq!(eqs[3].polynomial, Monomial::parse("x_2^3LM^3").unwrap());
        assert_eq!(eqs[0].polynomial, Monomial::parse("x_0^4L").unwrap());
    }

    #[test]
    fn relations() {
        let ab = rectangle_ab(&worked()).unwrap();
        assert_eq!(ab.toric_relation(Gen::X(1), Gen::Y(0)).unwrap(), Monomial::parse("A^4B^7").unwrap());
        assert_eq!(ab.toric_relation(Gen::X(3), Gen::X(3)).unwrap(), Monomial::parse("x_3^2").unwrap());
        let lm = rectangle_lm(&worked()).unwrap();
        let map = lm.generators_laurent().unwrap();
        let rhs = Monomial::parse("x_2^3LM^3").unwrap().substitute(&map);
        assert_eq!(lm.toric_relation(Gen::X(3), Gen::Y(3)).unwrap(), rhs);
    }

    #[test]
    fn tent() {
        let ab = rectangle_ab(&worked()).unwrap();
        let eqs = ab.tent_equations();
        assert_eq!(eqs.len(), 2 + 3 + (4 * 5 - 2));
        assert!(eqs.contains(&TentEquation::Tag { lhs: (Gen::Y(0), Gen::Y(2)), rhs: Monomial::parse("y_1^2").unwrap() }));
        assert!(eqs.contains(&TentEquation::Cross { lhs: (Gen::X(1), Gen::Y(1)) }));
    }

    #[test]
    fn facets() {
        let f = cone_facets(&worked());
        assert!(f.gorenstein);
        let n: Vec<[i64; 4]> = f.normals.iter().map(|v| v.clone().map(|x| x.0.to_i64().unwrap())).collect();
        assert!(n.contains(&[28, 49, 1, 0]));
        assert!(n.contains(&[49, 84, 0, 1]));
        assert!(cone_facets(&MatrixPair::from_i64(1, 1, 0, 1, 0, 0)).gorenstein);
        // Each normal is nonnegative on every generator of the panel.
        let ab = rectangle_ab(&worked()).unwrap();
        let map = ab.generators_laurent().unwrap();
        for normal in &f.normals {
            for m in map.values().chain([Monomial::var(Gen::A), Monomial::var(Gen::B)].iter()) {
                assert!(pair_normal(normal, m, ab.k, ab.l) >= BigInt::zero(), "{m}");
            }
        }
    }

    #[test]
    fn mutated_rectangle_fails_zero_check() {
        let mut r = rectangle_ab(&worked()).unwrap();
        r.x_tags.0[2] += 1;
        assert!(!r.zero_check());
    }

    #[test]
    fn initial_case_tags() {
        // Columns of the initial-case table are (y, x).
        let cases: [((i64, i64, i64, i64), &[i64], &[i64]); 5] = [
            ((1, 0, 0, 1), &[0, 0], &[0, 0]),
            ((1, 0, 5, 1), &[0, 5], &[-5, 0]),
            ((1, 5, 0, 1), &[-5, 0], &[0, 5]),
            ((1, 1, 4, 5), &[0, 5, 1], &[-4, 1]),
            ((6, 5, 1, 1), &[-5, 1], &[0, 6, 1]),
        ];
        for ((r, a, b, s), ycol, xcol) in cases {
            let rect = rectangle_from_matrix(&Mat2::from_i64(r, a, b, s)).unwrap();
            assert_eq!(rect.attitude, Attitude::Initial);
            assert_eq!(rect.x_tags, Tags::from_i64(xcol), "({r},{a};{b},{s})");
            assert_eq!(rect.y_tags, Tags::from_i64(ycol), "({r},{a};{b},{s})");
            assert!(rect.zero_check());
            rect.generators_laurent().unwrap();
        }
    }
}
