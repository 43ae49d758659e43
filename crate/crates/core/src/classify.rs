//! Partner matrix pairs `(r, a; b, s)`, `(r, g; h, s)` and their classification.
//!
//! A pair obeys the rules when `r, s ≥ 1`, `a, b, g, h ≥ 0`, `ab = gh = rs - 1`,
//! and `a + h`, `b + g` vanish modulo both `r` and `s`. Then
//! `a + h = d·s` and `b + g = e·r` define `(d, e)`. Every such pair is an
//! alternating product of elementary matrices with `k + 1` factors per line,
//! or one of the exceptional initial pairs.

use crate::cf::Mat2;
use crate::error::{Error, Result};
use crate::serde_util;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The pair `AB = (r, a; b, s)` and `GH = (r, g; h, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixPair {
    #[serde(with = "serde_util::int")]
    pub r: BigInt,
    #[serde(with = "serde_util::int")]
    pub a: BigInt,
    #[serde(with = "serde_util::int")]
    pub b: BigInt,
    #[serde(with = "serde_util::int")]
    pub s: BigInt,
    #[serde(with = "serde_util::int")]
    pub g: BigInt,
    #[serde(with = "serde_util::int")]
    pub h: BigInt,
}

impl MatrixPair {
    pub fn from_i64(r: i64, a: i64, b: i64, s: i64, g: i64, h: i64) -> Self {
        MatrixPair {
            r: r.into(),
            a: a.into(),
            b: b.into(),
            s: s.into(),
            g: g.into(),
            h: h.into(),
        }
    }

    /// Builds a pair from two matrices sharing their diagonal.
    pub fn from_mats(ab: &Mat2, gh: &Mat2) -> Result<Self> {
        if ab.m11 != gh.m11 || ab.m22 != gh.m22 {
            return Err(Error::Domain(format!("{ab} and {gh} do not share a diagonal")));
        }
        Ok(MatrixPair {
            r: ab.m11.clone(),
            a: ab.m12.clone(),
            b: ab.m21.clone(),
            s: ab.m22.clone(),
            g: gh.m12.clone(),
            h: gh.m21.clone(),
        })
    }

    pub fn ab(&self) -> Mat2 {
        Mat2::new(self.r.clone(), self.a.clone(), self.b.clone(), self.s.clone())
    }

    pub fn gh(&self) -> Mat2 {
        Mat2::new(self.r.clone(), self.g.clone(), self.h.clone(), self.s.clone())
    }

    /// Exchanges the roles of the two matrices.
    pub fn exchanged(&self) -> MatrixPair {
        MatrixPair {
            r: self.r.clone(),
            a: self.g.clone(),
            b: self.h.clone(),
            s: self.s.clone(),
            g: self.a.clone(),
            h: self.b.clone(),
        }
    }

    /// Transposes both matrices.
    pub fn transposed(&self) -> MatrixPair {
        MatrixPair {
            r: self.r.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
            s: self.s.clone(),
            g: self.h.clone(),
            h: self.g.clone(),
        }
    }

    fn entries(&self) -> [&BigInt; 6] {
        [&self.r, &self.a, &self.b, &self.s, &self.g, &self.h]
    }

    pub fn max_entry(&self) -> BigInt {
        self.entries().into_iter().map(|x| x.abs()).max().expect("six entries")
    }

    fn nonnegative(&self) -> bool {
        self.entries().into_iter().all(|x| !x.is_negative())
    }
}

impl fmt::Display for MatrixPair {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{},{}", self.ab(), self.gh())
    }
}

/// Which factorization realizes the pair. The swapped variants exchange the
/// two matrices of the corresponding unswapped product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    First,
    Second,
    SwappedFirst,
    SwappedSecond,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::First, Variant::Second, Variant::SwappedFirst, Variant::SwappedSecond];
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "first" => Ok(Variant::First),
            "second" => Ok(Variant::Second),
            "swapped-first" => Ok(Variant::SwappedFirst),
            "swapped-second" => Ok(Variant::SwappedSecond),
            _ => Err(Error::Domain(format!("unknown variant {s:?}"))),
        }
    }
}

/// Why a parameter triple lies outside the main case `d, e ≥ 2, de > 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExcludedCase {
    /// `de = 0`: only `k = 1` exists and no panels are built.
    DeZero,
    /// `d = 1` or `e = 1`.
    UnitTag,
    /// `d = e = 2`.
    DeFour,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiptychParams {
    pub d: i64,
    pub e: i64,
    pub k: usize,
    pub variant: Variant,
    pub main_case: bool,
    pub excluded: Option<ExcludedCase>,
}

impl DiptychParams {
    pub fn new(d: i64, e: i64, k: usize, variant: Variant) -> Result<Self> {
        if d < 0 || e < 0 {
            return Err(Error::Domain(format!("d = {d}, e = {e} must be nonnegative")));
        }
        check_k_bound(d, e, k)?;
        let main_case = d >= 2 && e >= 2 && d * e > 4;
        let excluded = if main_case {
            None
        } else if d == 0 || e == 0 {
            Some(ExcludedCase::DeZero)
        } else if d == 1 || e == 1 {
            Some(ExcludedCase::UnitTag)
        } else {
            Some(ExcludedCase::DeFour)
        };
        Ok(DiptychParams { d, e, k, variant, main_case, excluded })
    }

    /// `κ = ⌊(k-1)/2⌋` for odd `k` and `k/2` for even `k`.
    pub fn kappa(&self) -> usize {
        if self.k % 2 == 1 {
            (self.k - 1) / 2
        } else {
            self.k / 2
        }
    }
}

/// Largest admissible `k` for the product `de`; `None` means unbounded.
pub fn k_bound(de: i64) -> Option<usize> {
    match de {
        0 => Some(1),
        1 => Some(2),
        2 => Some(3),
        3 => Some(5),
        _ => None,
    }
}

pub fn check_k_bound(d: i64, e: i64, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let de = d * e;
    if let Some(max) = k_bound(de) {
        if k > max {
            return Err(Error::Domain(format!(
                "k = {k} exceeds the bound k <= {max} for de = {de} (d = {d}, e = {e})"
            )));
        }
    }
    Ok(())
}

/// `(t, -1; 1, 0)`.
fn p_factor(t: &BigInt) -> Mat2 {
    Mat2::new(t.clone(), -BigInt::one(), BigInt::one(), BigInt::zero())
}

/// `(0, -1; 1, t)`.
fn f_factor(t: &BigInt) -> Mat2 {
    Mat2::new(BigInt::zero(), -BigInt::one(), BigInt::one(), t.clone())
}

/// `(t, 1; -1, 0)`.
fn q_factor(t: &BigInt) -> Mat2 {
    Mat2::new(t.clone(), BigInt::one(), -BigInt::one(), BigInt::zero())
}

/// `J = (0, 1; -1, 0)`.
pub fn j_matrix() -> Mat2 {
    Mat2::from_i64(0, 1, -1, 0)
}

/// Tags `d, e, d, ...` read from the left.
fn from_left(d: i64, e: i64, k: usize) -> Vec<BigInt> {
    (0..k).map(|i| BigInt::from(if i % 2 == 0 { d } else { e })).collect()
}

/// Tags alternating so that the last one is `e`.
fn ending_e(d: i64, e: i64, k: usize) -> Vec<BigInt> {
    (0..k).map(|i| BigInt::from(if (k - 1 - i) % 2 == 0 { e } else { d })).collect()
}

/// First factorization with literal tags:
/// `AB = P(d)P(e)⋯J` and `GH = J⋯F(d)F(e)`.
pub fn first_product(d: i64, e: i64, k: usize) -> MatrixPair {
    let ab = from_left(d, e, k).iter().fold(Mat2::identity(), |m, t| &m * &p_factor(t)) * j_matrix();
    let gh = ending_e(d, e, k).iter().fold(j_matrix(), |m, t| &m * &f_factor(t));
    MatrixPair::from_mats(&ab, &gh).expect("alternating products share their diagonal")
}

/// Second factorization with literal tags:
/// `AB = E(d)E(e)⋯J⁻¹` and `GH = J⁻¹⋯Q(d)Q(e)`.
pub fn second_product(d: i64, e: i64, k: usize) -> MatrixPair {
    let j_inv = Mat2::from_i64(0, -1, 1, 0);
    let ab = from_left(d, e, k).iter().fold(Mat2::identity(), |m, t| &m * &Mat2::elementary(t)) * j_inv.clone();
    let gh = ending_e(d, e, k).iter().fold(j_inv, |m, t| &m * &q_factor(t));
    MatrixPair::from_mats(&ab, &gh).expect("alternating products share their diagonal")
}

/// The pair of the given parameters, named so that [`verify_rules`] returns
/// `(d, e)` for the unswapped variants. The second factorization's displayed
/// tags are read with `d` and `e` exchanged for this reason.
pub fn build_pair(params: &DiptychParams) -> Result<MatrixPair> {
    let DiptychParams { d, e, k, variant, .. } = *params;
    check_k_bound(d, e, k)?;
    Ok(match variant {
        Variant::First => first_product(d, e, k),
        Variant::Second => second_product(e, d, k),
        Variant::SwappedFirst => first_product(d, e, k).exchanged(),
        Variant::SwappedSecond => second_product(e, d, k).exchanged(),
    })
}

/// The first rule a candidate pair breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule", content = "detail")]
pub enum RuleViolation {
    DiagonalNotPositive(String),
    NegativeEntry(String),
    DeterminantAB(String),
    DeterminantGH(String),
    Congruence(String),
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            RuleViolation::DiagonalNotPositive(s) => write!(f, "diagonal not positive: {s}"),
            RuleViolation::NegativeEntry(s) => write!(f, "negative entry: {s}"),
            RuleViolation::DeterminantAB(s) => write!(f, "ab != rs - 1: {s}"),
            RuleViolation::DeterminantGH(s) => write!(f, "gh != rs - 1: {s}"),
            RuleViolation::Congruence(s) => write!(f, "congruence fails: {s}"),
        }
    }
}

/// Exceptional initial pairs, which no alternating product reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionalBranch {
    /// `(1, a; 0, 1), (1, 0; h, 1)` with `h > 0`.
    BgZero,
    /// `(1, 0; b, 1), (1, g; 0, 1)` with `b > 0`; the transpose of the above.
    AhZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleReport {
    pub d: i64,
    pub e: i64,
    pub exceptional: Option<ExceptionalBranch>,
    /// `de = 0`: the pair sits on the lowest row of the `k` bound table.
    pub de_zero: bool,
}

pub fn verify_rules(pair: &MatrixPair) -> std::result::Result<RuleReport, RuleViolation> {
    let MatrixPair { r, a, b, s, g, h } = pair;
    if !r.is_positive() || !s.is_positive() {
        return Err(RuleViolation::DiagonalNotPositive(format!("r = {r}, s = {s}")));
    }
    for (name, v) in [("a", a), ("b", b), ("g", g), ("h", h)] {
        if v.is_negative() {
            return Err(RuleViolation::NegativeEntry(format!("{name} = {v}")));
        }
    }
    let n = r * s - 1;
    if a * b != n {
        return Err(RuleViolation::DeterminantAB(format!("{a}·{b} != {n}")));
    }
    if g * h != n {
        return Err(RuleViolation::DeterminantGH(format!("{g}·{h} != {n}")));
    }
    let ah = a + h;
    let bg = b + g;
    for (sum, label) in [(&ah, "a + h"), (&bg, "b + g")] {
        for (m, mname) in [(r, "r"), (s, "s")] {
            if !sum.is_multiple_of(m) {
                return Err(RuleViolation::Congruence(format!("{label} = {sum} not divisible by {mname} = {m}")));
            }
        }
    }
    let to_i64 = |v: BigInt, what: &str| {
        v.to_i64().ok_or_else(|| RuleViolation::Congruence(format!("{what} does not fit in 64 bits")))
    };
    let d = to_i64(&ah / s, "d")?;
    let e = to_i64(&bg / r, "e")?;
    let exceptional = if r.is_one() && s.is_one() {
        if b.is_zero() && g.is_zero() && h.is_positive() {
            Some(ExceptionalBranch::BgZero)
        } else if a.is_zero() && h.is_zero() && b.is_positive() {
            Some(ExceptionalBranch::AhZero)
        } else {
            None
        }
    } else {
        None
    };
    Ok(RuleReport { d, e, exceptional, de_zero: d * e == 0 })
}

/// The two descent operations, each peeling one factor off both lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DescentOp {
    /// Inverts the leading factor of the first factorization.
    Op22,
    /// Inverts the leading factor of the second factorization.
    Op23,
}

/// One descent operation with the current `(d, e)`. The output may break the
/// inequalities; the equalities hold with `d` and `e` exchanged.
pub fn descent_step(pair: &MatrixPair, op: DescentOp, d: &BigInt, e: &BigInt) -> MatrixPair {
    let MatrixPair { r, a, b, s, g, h } = pair;
    match op {
        // (b, s; db - r, h) and (b, r; eh - s, h)
        DescentOp::Op22 => MatrixPair {
            r: b.clone(),
            a: s.clone(),
            b: d * b - r,
            s: h.clone(),
            g: r.clone(),
            h: e * h - s,
        },
        // (g, ea - s; r, a) and (g, dg - r; s, a)
        DescentOp::Op23 => MatrixPair {
            r: g.clone(),
            a: e * a - s,
            b: r.clone(),
            s: a.clone(),
            g: d * g - r,
            h: s.clone(),
        },
    }
}

fn terminal(op: DescentOp) -> MatrixPair {
    match op {
        DescentOp::Op22 => MatrixPair::from_i64(0, 1, -1, 0, 1, -1),
        DescentOp::Op23 => MatrixPair::from_i64(0, -1, 1, 0, -1, 1),
    }
}

/// Record of a successful descent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descent {
    pub op: DescentOp,
    pub k: usize,
    /// Pairs visited, starting with the input and ending at the terminal pair.
    pub trace: Vec<MatrixPair>,
}

/// Runs one kind of descent to the terminal pair, if it gets there. When the
/// current `d` or `e` is 1 the operation is applied twice in a row, stopping
/// early if the first half already lands on the terminal pair.
pub fn descend(pair: &MatrixPair, op: DescentOp, d: i64, e: i64) -> Option<Descent> {
    let end = terminal(op);
    let limit = 2 * pair.entries().iter().map(|x| x.abs()).sum::<BigInt>().to_usize().unwrap_or(usize::MAX / 4) + 8;
    let (mut d, mut e) = (BigInt::from(d), BigInt::from(e));
    let mut cur = pair.clone();
    let mut trace = vec![cur.clone()];
    let admissible = |p: &MatrixPair| p == &end || (p.nonnegative() && p.r.is_positive() && p.s.is_positive());
    loop {
        if cur == end {
            let k = trace.len() - 1;
            return Some(Descent { op, k, trace });
        }
        if trace.len() > limit {
            return None;
        }
        let doubled = d.is_one() || e.is_one();
        cur = descent_step(&cur, op, &d, &e);
        std::mem::swap(&mut d, &mut e);
        trace.push(cur.clone());
        if doubled && cur != end {
            cur = descent_step(&cur, op, &d, &e);
            std::mem::swap(&mut d, &mut e);
            trace.push(cur.clone());
        }
        if !admissible(&cur) {
            return None;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Classification {
    Regular { params: DiptychParams, descent: Descent },
    Exceptional { branch: ExceptionalBranch, d: i64, e: i64 },
}

impl Classification {
    pub fn params(&self) -> Option<&DiptychParams> {
        match self {
            Classification::Regular { params, .. } => Some(params),
            Classification::Exceptional { .. } => None,
        }
    }
}

/// Recovers `(d, e, k)` and the factorization by descent. Swapped variants
/// are reported as the unswapped variant that produces the same pair.
pub fn classify_descent(pair: &MatrixPair) -> Result<Classification> {
    let report = verify_rules(pair).map_err(|v| Error::Precondition(v.to_string()))?;
    // Attitude picks the operation; the unit-tag cases may need the other one.
    // For 1 <= de <= 3 both can terminate, since the first factorization of
    // length k equals the second of length 3, 4 or 6 minus k; the first wins.
    let preferred = if pair.b < pair.r || (1..=3).contains(&(report.d * report.e)) { DescentOp::Op22 } else { DescentOp::Op23 };
    let other = match preferred {
        DescentOp::Op22 => DescentOp::Op23,
        DescentOp::Op23 => DescentOp::Op22,
    };
    // With de = 0 the exceptional shapes with a zero corner are also the
    // length-1 second products, so descent is tried before the exceptional label.
    let Some(descent) = descend(pair, preferred, report.d, report.e).or_else(|| descend(pair, other, report.d, report.e)) else {
        return match report.exceptional {
            Some(branch) => Ok(Classification::Exceptional { branch, d: report.d, e: report.e }),
            None => Err(Error::Invariant(format!("no descent of {pair} reaches the terminal pair"))),
        };
    };
    let variant = match descent.op {
        DescentOp::Op22 => Variant::First,
        DescentOp::Op23 => Variant::Second,
    };
    let params = DiptychParams::new(report.d, report.e, descent.k, variant)?;
    Ok(Classification::Regular { params, descent })
}

/// All pairs obeying the rules with every entry in `[0, bound]`, classified,
/// sorted by `(r, a, b, s, g, h)`.
pub fn enumerate_pairs(bound: i64) -> Vec<(MatrixPair, Classification)> {
    assert!(bound >= 1, "bound must be positive");
    let factorizations = |n: i64| -> Vec<(i64, i64)> {
        if n == 0 {
            let mut v: Vec<(i64, i64)> = (0..=bound).map(|x| (0, x)).collect();
            v.extend((1..=bound).map(|x| (x, 0)));
            v
        } else {
            (1..=bound.min(n)).filter(|x| n % x == 0 && n / x <= bound).map(|x| (x, n / x)).collect()
        }
    };
    let mut out: Vec<(MatrixPair, Classification)> = (1..=bound)
        .into_par_iter()
        .flat_map_iter(|r| {
            let mut found = Vec::new();
            for s in 1..=bound {
                let fs = factorizations(r * s - 1);
                for &(a, b) in &fs {
                    for &(g, h) in &fs {
                        if (a + h) % r != 0 || (a + h) % s != 0 || (b + g) % r != 0 || (b + g) % s != 0 {
                            continue;
                        }
                        let pair = MatrixPair::from_i64(r, a, b, s, g, h);
                        let class = classify_descent(&pair).expect("enumerated pairs obey the rules");
                        found.push((pair, class));
                    }
                }
            }
            found
        })
        .collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: i64, e: i64, k: usize, v: Variant) -> DiptychParams {
        DiptychParams::new(d, e, k, v).unwrap()
    }

    #[test]
    fn worked_pair() {
        let p = build_pair(&params(2, 4, 3, Variant::First)).unwrap();
        assert_eq!(p, MatrixPair::from_i64(7, 12, 4, 7, 24, 2));
        let rep = verify_rules(&p).unwrap();
        assert_eq!((rep.d, rep.e), (2, 4));
    }

    #[test]
    fn second_factorization_recovers_names() {
        for (d, e, k) in [(2, 4, 3), (4, 2, 3), (3, 5, 4), (2, 3, 5), (1, 5, 4)] {
            let p = build_pair(&params(d, e, k, Variant::Second)).unwrap();
            let rep = verify_rules(&p).unwrap();
            assert_eq!((rep.d, rep.e), (d, e), "({d},{e},{k})");
        }
        // Literal displayed tags come out exchanged.
        let lit = second_product(2, 4, 3);
        assert_eq!(lit, MatrixPair::from_i64(7, 4, 12, 7, 2, 24));
        let rep = verify_rules(&lit).unwrap();
        assert_eq!((rep.d, rep.e), (4, 2));
    }

    #[test]
    fn initial_case() {
        let p = build_pair(&params(5, 3, 1, Variant::First)).unwrap();
        assert_eq!(p, MatrixPair::from_i64(1, 5, 0, 1, 3, 0));
        match classify_descent(&p).unwrap() {
            Classification::Regular { params, .. } => assert_eq!((params.d, params.e, params.k), (5, 3, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn de_four_pair() {
        let p = build_pair(&params(2, 2, 3, Variant::First)).unwrap();
        assert_eq!(p.ab(), Mat2::from_i64(3, 4, 2, 3));
        let pr = params(2, 2, 3, Variant::First);
        assert!(!pr.main_case);
        assert_eq!(pr.excluded, Some(ExcludedCase::DeFour));
    }

    #[test]
    fn descent_step_literal() {
        let p = MatrixPair::from_i64(7, 12, 4, 7, 24, 2);
        let q = descent_step(&p, DescentOp::Op22, &2.into(), &4.into());
        assert_eq!(q, MatrixPair::from_i64(4, 7, 1, 2, 7, 1));
    }

    #[test]
    fn classifies_worked_pair() {
        let p = MatrixPair::from_i64(7, 12, 4, 7, 24, 2);
        let c = classify_descent(&p).unwrap();
        let pr = c.params().unwrap();
        assert_eq!((pr.d, pr.e, pr.k, pr.variant), (2, 4, 3, Variant::First));
    }

    #[test]
    fn exceptional_and_identity() {
        let ex = MatrixPair::from_i64(1, 3, 0, 1, 0, 2);
        assert_eq!(verify_rules(&ex).unwrap().exceptional, Some(ExceptionalBranch::BgZero));
        assert!(matches!(classify_descent(&ex).unwrap(), Classification::Exceptional { .. }));
        assert!(matches!(
            classify_descent(&ex.transposed()).unwrap(),
            Classification::Exceptional { branch: ExceptionalBranch::AhZero, .. }
        ));
        let id = MatrixPair::from_i64(1, 0, 0, 1, 0, 0);
        let rep = verify_rules(&id).unwrap();
        assert_eq!((rep.d, rep.e, rep.de_zero), (0, 0, true));
    }

    #[test]
    fn k_bound_rejections() {
        assert!(DiptychParams::new(1, 1, 4, Variant::First).is_err());
        assert!(DiptychParams::new(1, 1, 2, Variant::First).is_ok());
        assert!(DiptychParams::new(0, 7, 2, Variant::First).is_err());
        assert!(DiptychParams::new(1, 3, 5, Variant::First).is_ok());
    }

    #[test]
    fn unit_tag_descent_uses_doubled_steps() {
        let p = build_pair(&params(1, 5, 3, Variant::First)).unwrap();
        assert_eq!(p, MatrixPair::from_i64(4, 3, 5, 4, 15, 1));
        let pr = classify_descent(&p).unwrap().params().cloned().unwrap();
        assert_eq!((pr.d, pr.e, pr.k), (1, 5, 3));
    }

    #[test]
    fn small_enumeration() {
        let all = enumerate_pairs(1);
        assert!(all.iter().all(|(p, _)| p.r.is_one() && p.s.is_one()));
        assert!(!all.is_empty());
    }
}
