//! Torus weights in the impartial basis `(L, M, A, B)`.
//!
//! With `t(i)` the alternating side tags of [`Diptych::cycle_tag`],
//!
//! ```text
//! (α β; γ δ) = (0 1; -1 t(1)) ⋯ (0 1; -1 t(k-1)) · diag(-1/t(k), 1/t(k-1))
//! x_0 = (-1/t(0), 0, γ, δ),   x_1 = (0, 1/t(1), α, β)
//! ```
//!
//! and the rest follow from the tag equations of the two panels.

use crate::diptych::Diptych;
use crate::error::{invariant, Result};
use crate::monomial::{Gen, Monomial};
use crate::serde_util::JsonRat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// A weight `(w_L, w_M, w_A, w_B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusWeight(pub [BigRational; 4]);

impl TorusWeight {
    pub fn zero() -> Self {
        TorusWeight(std::array::from_fn(|_| BigRational::zero()))
    }

    pub fn unit(slot: usize) -> Self {
        let mut w = Self::zero();
        w.0[slot] = BigRational::one();
        w
    }

    pub fn from_i64(entries: [(i64, i64); 4]) -> Self {
        TorusWeight(entries.map(|(n, d)| rat(n, d)))
    }

    pub fn pi_lm(&self) -> [BigRational; 2] {
        [self.0[0].clone(), self.0[1].clone()]
    }

    pub fn pi_ab(&self) -> [BigRational; 2] {
        [self.0[2].clone(), self.0[3].clone()]
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigRational::from_integer(c.into());
        TorusWeight(self.0.clone().map(|x| x * &c))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

impl Add for &TorusWeight {
    type Output = TorusWeight;
    fn add(self, o: &TorusWeight) -> TorusWeight {
        TorusWeight(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &TorusWeight {
    type Output = TorusWeight;
    fn sub(self, o: &TorusWeight) -> TorusWeight {
        TorusWeight(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &TorusWeight {
    type Output = TorusWeight;
    fn neg(self) -> TorusWeight {
        TorusWeight(self.0.clone().map(|x| -x))
    }
}

impl Mul<&TorusWeight> for i64 {
    type Output = TorusWeight;
    fn mul(self, w: &TorusWeight) -> TorusWeight {
        w.scale(self)
    }
}

impl fmt::Display for TorusWeight {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl Serialize for TorusWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.clone().map(JsonRat).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusWeight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = <[JsonRat; 4]>::deserialize(d)?;
        Ok(TorusWeight(raw.map(|r| r.0)))
    }
}

pub fn pi_ab(w: &TorusWeight) -> [BigRational; 2] {
    w.pi_ab()
}

pub fn pi_lm(w: &TorusWeight) -> [BigRational; 2] {
    w.pi_lm()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTable {
    pub d: i64,
    pub e: i64,
    pub k: usize,
    pub l: usize,
    /// `(α, β; γ, δ)`.
    pub abcd: [[JsonRat; 2]; 2],
    /// Weights of `x_0..x_k, y_0..y_l`.
    pub weights: BTreeMap<Gen, TorusWeight>,
}

impl WeightTable {
    pub fn weight(&self, g: Gen) -> TorusWeight {
        match g {
            Gen::L => TorusWeight::unit(0),
            Gen::M => TorusWeight::unit(1),
            Gen::A => TorusWeight::unit(2),
            Gen::B => TorusWeight::unit(3),
            _ => self.weights.get(&g).cloned().unwrap_or_else(|| panic!("{g} is not a generator of this table")),
        }
    }

    pub fn monomial_weight(&self, m: &Monomial) -> TorusWeight {
        m.iter().fold(TorusWeight::zero(), |acc, (g, e)| &acc + &self.weight(g).scale(e))
    }

    pub fn x(&self, i: usize) -> TorusWeight {
        self.weight(Gen::X(i as u32))
    }

    pub fn y(&self, j: usize) -> TorusWeight {
        self.weight(Gen::Y(j as u32))
    }

    /// Every generator including the letters, letters first.
    pub fn all_generators(&self) -> Vec<Gen> {
        let mut g = vec![Gen::A, Gen::B, Gen::L, Gen::M];
        g.extend(self.weights.keys().copied());
        g
    }
}

pub fn weight_table(dip: &Diptych) -> Result<WeightTable> {
    let (k, l) = (dip.k, dip.l);
    let t = |i: usize| dip.cycle_tag(i);
    let mut m = [[BigRational::one(), BigRational::zero()], [BigRational::zero(), BigRational::one()]];
    for i in 1..k {
        // m · (0 1; -1 t)
        let ti = BigRational::from_integer(t(i).into());
        m = [
            [-m[0][1].clone(), &m[0][0] + &m[0][1] * &ti],
            [-m[1][1].clone(), &m[1][0] + &m[1][1] * &ti],
        ];
    }
    let (dk, dk1) = (rat(-1, t(k)), rat(1, t(k - 1)));
    let [[alpha, beta], [gamma, delta]] = [
        [&m[0][0] * &dk, &m[0][1] * &dk1],
        [&m[1][0] * &dk, &m[1][1] * &dk1],
    ];
    let zero = BigRational::zero;
    let x0 = TorusWeight([rat(-1, t(0)), zero(), gamma.clone(), delta.clone()]);
    let x1 = TorusWeight([zero(), rat(1, t(1)), alpha.clone(), beta.clone()]);
    let mut xs = vec![x0, x1];
    for i in 1..k {
        let next = &xs[i].scale(t(i)) - &xs[i - 1];
        xs.push(next);
    }
    let y0 = TorusWeight([
        zero(),
        rat(-1, t(1)),
        &gamma * BigRational::from_integer(t(0).into()) - &alpha,
        &delta * BigRational::from_integer(t(0).into()) - &beta,
    ]);
    // Corner y_0 of V_LM: x_0 y_1 = M y_0^{b'_0}.
    let y1 = &(&TorusWeight::unit(1) + &y0.scale(dip.lm.y_tag(0))) - &xs[0];
    let mut ys = vec![y0, y1];
    for j in 1..l {
        let next = &ys[j].scale(dip.ab.y_tag(j)) - &ys[j - 1];
        ys.push(next);
    }
    let mut weights = BTreeMap::new();
    for (i, w) in xs.into_iter().enumerate() {
        weights.insert(Gen::X(i as u32), w);
    }
    for (j, w) in ys.into_iter().enumerate() {
        weights.insert(Gen::Y(j as u32), w);
    }
    let table = WeightTable {
        d: dip.d,
        e: dip.e,
        k,
        l,
        abcd: [[JsonRat(alpha), JsonRat(beta)], [JsonRat(gamma), JsonRat(delta)]],
        weights,
    };
    check_corner_forms(&table, dip)?;
    invariant!(corner_homogeneity(&table, dip), "a corner tag equation is not homogeneous");
    Ok(table)
}

/// The top corners carry `-1/t(k)` at `x_k` and `-1/t(k-1)` at `y_l`, and the
/// entries next to them vanish.
fn check_corner_forms(table: &WeightTable, dip: &Diptych) -> Result<()> {
    let (k, l) = (dip.k, dip.l);
    let xk = table.x(k);
    let yl = table.y(l);
    let xk1 = table.x(k - 1);
    invariant!(xk.0[2] == rat(-1, dip.cycle_tag(k)) && xk.0[3].is_zero(), "x_{k} = {xk} has the wrong corner form");
    invariant!(yl.0[2].is_zero() && yl.0[3] == rat(-1, dip.cycle_tag(k - 1)), "y_{l} = {yl} has the wrong corner form");
    invariant!(xk1.0[2].is_zero() && xk1.0[3] == rat(1, dip.cycle_tag(k - 1)), "x_{} = {xk1} has the wrong form", k - 1);
    Ok(())
}

/// Both sides of every corner tag equation of both panels have equal weight.
pub fn corner_homogeneity(table: &WeightTable, dip: &Diptych) -> bool {
    [&dip.ab, &dip.lm].into_iter().all(|rect| match rect.corner_equations() {
        Ok(eqs) => eqs.iter().all(|eq| {
            let lhs = &table.weight(eq.lhs.0) + &table.weight(eq.lhs.1);
            lhs == table.monomial_weight(&eq.laurent) && lhs == table.monomial_weight(&eq.polynomial)
        }),
        Err(_) => false,
    })
}

fn strictly_less(a: &[BigRational; 2], b: &[BigRational; 2]) -> bool {
    a[0] < b[0] && a[1] < b[1]
}

/// `π_LM` strictly increases and `π_AB` strictly decreases along each side.
pub fn monotonicity_check(table: &WeightTable) -> bool {
    let side = |n: usize, f: &dyn Fn(usize) -> TorusWeight| {
        (0..n).all(|i| {
            let (u, w) = (f(i), f(i + 1));
            strictly_less(&u.pi_lm(), &w.pi_lm()) && strictly_less(&w.pi_ab(), &u.pi_ab())
        })
    };
    side(table.k, &|i| table.x(i)) && side(table.l, &|j| table.y(j))
}

/// No side generator has the weight of a monomial in the others with
/// exponents at most `bound`.
pub fn minimal_generator_check(table: &WeightTable, bound: u32) -> bool {
    let sides: Vec<Gen> = table.weights.keys().copied().collect();
    sides.par_iter().all(|&g| find_representation(table, g, bound).is_none())
}

/// A monomial in the generators other than `g`, exponents at most `bound`,
/// with the weight of `g`.
pub fn find_representation(table: &WeightTable, g: Gen, bound: u32) -> Option<Monomial> {
    let others: Vec<(Gen, TorusWeight)> =
        table.weights.iter().filter(|(h, _)| **h != g).map(|(h, w)| (*h, w.clone())).collect();
    // Most negative contribution still available from others[i..], per slot.
    let mut slack = vec![TorusWeight::zero(); others.len() + 1];
    for i in (0..others.len()).rev() {
        let neg = TorusWeight(others[i].1 .0.clone().map(|x| if x.is_negative() { x * BigRational::from_integer(bound.into()) } else { BigRational::zero() }));
        slack[i] = &slack[i + 1] + &neg;
    }
    let target = table.weight(g);
    let mut exps = vec![0u32; others.len()];
    let found = search(&others, &slack, &target, bound, 0, TorusWeight::zero(), &mut exps);
    found.then(|| {
        let mut m = Monomial::from_pairs(others.iter().zip(&exps).map(|((h, _), e)| (*h, *e as i64)));
        let rest = &target - &table.monomial_weight(&m);
        for (slot, letter) in [Gen::L, Gen::M, Gen::A, Gen::B].into_iter().enumerate() {
            m.add_exp(letter, rest.0[slot].to_integer().try_into().expect("small letter exponent"));
        }
        m
    })
}

fn search(
    others: &[(Gen, TorusWeight)],
    slack: &[TorusWeight],
    target: &TorusWeight,
    bound: u32,
    i: usize,
    partial: TorusWeight,
    exps: &mut [u32],
) -> bool {
    let rest = target - &partial;
    // Remaining contributions can lower a slot by at most the slack.
    if (0..4).any(|c| rest.0[c] < slack[i].0[c]) {
        return false;
    }
    if i == others.len() {
        // The letters make up any nonnegative integral remainder.
        return rest.is_integral() && rest.0.iter().all(|x| !x.is_negative());
    }
    let mut acc = partial;
    for e in 0..=bound {
        exps[i] = e;
        if search(others, slack, target, bound, i + 1, acc.clone(), exps) {
            return true;
        }
        acc = &acc + &others[i].1;
    }
    exps[i] = 0;
    false
}

/// Class in `Q = M / M'` as `residue_d·[x_0] + residue_e·[y_0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PaddedCellClass {
    pub residue_d: i64,
    pub residue_e: i64,
}

impl PaddedCellClass {
    pub fn add(self, o: Self, d: i64, e: i64) -> Self {
        PaddedCellClass {
            residue_d: (self.residue_d + o.residue_d).mod_floor(&d),
            residue_e: (self.residue_e + o.residue_e).mod_floor(&e),
        }
    }

    pub fn neg(self, d: i64, e: i64) -> Self {
        PaddedCellClass { residue_d: (-self.residue_d).mod_floor(&d), residue_e: (-self.residue_e).mod_floor(&e) }
    }
}

/// Orders of `[x_0]` and `[y_0]` in `Q`; these are `t(0)` and `t(1)`.
fn basis_orders(dip: &Diptych) -> (i64, i64) {
    (dip.cycle_tag(0), dip.cycle_tag(1))
}

pub fn padded_class(table: &WeightTable, dip: &Diptych, w: &TorusWeight) -> Result<PaddedCellClass> {
    let (p, q) = basis_orders(dip);
    let (x0, y0) = (table.x(0), table.y(0));
    let mut hits = Vec::new();
    for rd in 0..p {
        for re in 0..q {
            let rest = &(w - &x0.scale(rd)) - &y0.scale(re);
            if rest.is_integral() {
                hits.push(PaddedCellClass { residue_d: rd, residue_e: re });
            }
        }
    }
    invariant!(hits.len() == 1, "weight {w} has {} classes over the x_0, y_0 basis", hits.len());
    Ok(hits[0])
}

/// Classes of every side generator in `Q ≅ Z/t(0) ⊕ Z/t(1)`.
pub fn padded_cell(table: &WeightTable, dip: &Diptych) -> Result<BTreeMap<Gen, PaddedCellClass>> {
    let (p, q) = basis_orders(dip);
    for (g, w) in &table.weights {
        let scaled = w.scale(p * q);
        invariant!(scaled.is_integral(), "{g} = {w} does not land in M after scaling by {}", p * q);
    }
    invariant!(table.x(0).scale(p).is_integral() && table.y(0).scale(q).is_integral(), "x_0^{p} or y_0^{q} is not in M'");
    table.weights.iter().map(|(g, w)| Ok((*g, padded_class(table, dip, w)?))).collect()
}

/// The walk of the Padded Cell: `x_1 ≡ -y_0`, `x_i ≡ -x_{i-2}`, period 4 with
/// `x_3 ≡ y_0`, and every step `y_{j-1} → y_j` is the class of `x_i` with
/// `i` from [`walk_index`](crate::projseq::walk_index).
pub fn padded_cell_check(table: &WeightTable, dip: &Diptych) -> Result<bool> {
    let (p, q) = basis_orders(dip);
    let cls = padded_cell(table, dip)?;
    let x = |i: usize| cls[&Gen::X(i as u32)];
    let y = |j: usize| cls[&Gen::Y(j as u32)];
    let mut ok = x(1) == y(0).neg(p, q);
    ok &= (2..=dip.k).all(|i| x(i) == x(i - 2).neg(p, q));
    ok &= (4..=dip.k).all(|i| x(i) == x(i - 4));
    if dip.k >= 3 {
        ok &= x(3) == y(0);
    }
    // With k = 1 there are no quarter-circuits and y_1 ≡ -x_0 instead.
    if dip.k >= 2 {
        ok &= (0..dip.l).all(|j| y(j + 1) == y(j).add(x(crate::projseq::walk_index(dip, j + 1)), p, q));
    } else {
        ok &= y(1) == x(0).neg(p, q);
    }
    Ok(ok)
}

/// One point of the scissors plot, in units of `1/t(0)` and `1/t(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScissorsRow {
    pub generator: Gen,
    #[serde(with = "crate::serde_util::int")]
    pub l_units: BigInt,
    #[serde(with = "crate::serde_util::int")]
    pub m_units: BigInt,
}

pub fn scissors_export(table: &WeightTable, dip: &Diptych) -> Result<Vec<ScissorsRow>> {
    let (p, q) = basis_orders(dip);
    table
        .weights
        .iter()
        .map(|(g, w)| {
            let lu = &w.0[0] * BigRational::from_integer(p.into());
            let mu = &w.0[1] * BigRational::from_integer(q.into());
            invariant!(lu.is_integer() && mu.is_integer(), "{g} does not sit on the scissors grid");
            Ok(ScissorsRow { generator: *g, l_units: lu.to_integer(), m_units: mu.to_integer() })
        })
        .collect()
}
