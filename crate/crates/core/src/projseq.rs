//! The projection sequence of `V_AB` from the top and of `V_LM` from the
//! bottom.
//!
//! Each step blows down a tag-1 top corner. Eliminating the left corner keeps
//! `A_ν = A_{ν+1}` and sets `B_ν = A_{ν+1} B_{ν+1}`; eliminating the right
//! corner sets `A_ν = A_{ν+1} B_{ν+1}` and keeps `B_ν = B_{ν+1}`. Steps are
//! numbered so that `s_0 = x_2` is the last monomial eliminated.

use crate::diptych::Diptych;
use crate::error::{invariant, Error, Result};
use crate::monomial::{Gen, Monomial};
use crate::weights::WeightTable;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `V_{AB,ν}` together with the monomial `s_ν` adjoined to reach `V_{AB,ν+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionStep {
    pub nu: usize,
    pub s: Gen,
    pub bar_i: usize,
    pub bar_j: usize,
    pub alpha: i64,
    pub beta: i64,
    pub a_ann: Monomial,
    pub b_ann: Monomial,
    pub h: Monomial,
}

/// A shrinking rectangle of the deconstruction, tags bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedRectangle {
    pub x_tags: Vec<i64>,
    pub y_tags: Vec<i64>,
    pub a_ann: Monomial,
    pub b_ann: Monomial,
    /// The monomial removed to reach the next rectangle.
    pub eliminated: Option<Gen>,
}

impl AnnotatedRectangle {
    pub fn top(&self) -> (usize, usize) {
        (self.x_tags.len() - 1, self.y_tags.len() - 1)
    }

    /// The two tag equations at the bar, `x_{i-1}y_j = x_i^α A_ν` and
    /// `x_i y_{j-1} = y_j^β B_ν`.
    pub fn bar_equations(&self) -> [(Gen, Gen, Monomial); 2] {
        let (i, j) = self.top();
        let (xi, yj) = (Gen::X(i as u32), Gen::Y(j as u32));
        [
            (Gen::X(i as u32 - 1), yj, Monomial::pow(xi, self.x_tags[i]).mul(&self.a_ann)),
            (xi, Gen::Y(j as u32 - 1), Monomial::pow(yj, self.y_tags[j]).mul(&self.b_ann)),
        ]
    }
}

impl fmt::Display for AnnotatedRectangle {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let (i, j) = self.top();
        for n in (0..=i.max(j)).rev() {
            let left = match n {
                _ if n > i => String::new(),
                _ if n == i => format!("{} {}", self.a_ann, self.x_tags[n]),
                _ => self.x_tags[n].to_string(),
            };
            let right = match n {
                _ if n > j => String::new(),
                _ if n == j => format!("{} {}", self.y_tags[n], self.b_ann),
                _ => self.y_tags[n].to_string(),
            };
            writeln!(f, "{left:>12}  {right}")?;
        }
        Ok(())
    }
}

/// Eliminates tag-1 top corners down to the bar `x_1, y_1`. The input is in
/// AB orientation with letters `p` at the top of x and `q` at the top of y.
pub fn simulate(x_tags: &[i64], y_tags: &[i64], p: Monomial, q: Monomial) -> Result<Vec<AnnotatedRectangle>> {
    let mut cur = AnnotatedRectangle { x_tags: x_tags.to_vec(), y_tags: y_tags.to_vec(), a_ann: p, b_ann: q, eliminated: None };
    let mut chain = Vec::new();
    loop {
        let (i, j) = cur.top();
        if (i, j) == (1, 1) {
            chain.push(cur);
            return Ok(chain);
        }
        let can_x = i >= 2 && cur.x_tags[i] == 1;
        let can_y = j >= 2 && cur.y_tags[j] == 1;
        let mut next = cur.clone();
        if can_x && can_y {
            return Err(Error::Invariant(format!("both top corners x_{i}, y_{j} carry tag 1")));
        } else if can_x {
            next.x_tags.pop();
            next.x_tags[i - 1] -= 1;
            next.y_tags[j] -= 1;
            next.b_ann = cur.a_ann.mul(&cur.b_ann);
            cur.eliminated = Some(Gen::X(i as u32));
        } else if can_y {
            next.y_tags.pop();
            next.y_tags[j - 1] -= 1;
            next.x_tags[i] -= 1;
            next.a_ann = cur.a_ann.mul(&cur.b_ann);
            cur.eliminated = Some(Gen::Y(j as u32));
        } else {
            return Err(Error::Invariant(format!(
                "no top corner with tag 1 at bar x_{i}, y_{j} (tags {}, {})",
                cur.x_tags[i], cur.y_tags[j]
            )));
        }
        chain.push(cur);
        cur = next;
    }
}

fn gate(dip: &Diptych) -> Result<()> {
    // k = l = 1 is already the complete intersection V_{AB,0}.
    if (dip.k, dip.l) != (1, 1) && dip.ab.y_tag(dip.l) != 1 {
        return Err(Error::OutOfScope(format!("b_l = {} is not 1 outside the main case", dip.ab.y_tag(dip.l))));
    }
    Ok(())
}

/// The chain `V_AB = V_{AB,k+l-2} → ⋯ → V_{AB,0}`.
pub fn deconstruct_rectangle(dip: &Diptych) -> Result<Vec<AnnotatedRectangle>> {
    gate(dip)?;
    let tags = |r: &crate::cf::Tags| r.iter().map(|t| i64::try_from(t).expect("small tag")).collect::<Vec<_>>();
    let chain = simulate(&tags(&dip.ab.x_tags), &tags(&dip.ab.y_tags), Monomial::var(Gen::A), Monomial::var(Gen::B))?;
    invariant!(chain.len() == dip.k + dip.l - 1, "deconstruction has {} rectangles", chain.len());
    Ok(chain)
}

/// The bottom-up chain of `V_LM`, as rectangles in `V_LM`'s own indexing
/// (eliminated generators relabelled back, tags stored top-down).
fn deconstruct_lm(dip: &Diptych) -> Result<Vec<AnnotatedRectangle>> {
    let (xt, yt) = dip.lm.oriented_tags();
    let tags = |r: &crate::cf::Tags| r.iter().map(|t| i64::try_from(t).expect("small tag")).collect::<Vec<_>>();
    let chain = simulate(&tags(&xt), &tags(&yt), Monomial::var(Gen::L), Monomial::var(Gen::M))?;
    invariant!(chain.len() == dip.k + dip.l - 1, "V_LM deconstruction has {} rectangles", chain.len());
    Ok(chain)
}

/// The schedule with its interval data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spreadsheet {
    pub d: i64,
    pub e: i64,
    pub k: usize,
    pub l: usize,
    /// Indexed by `ν`.
    pub steps: Vec<ProjectionStep>,
    /// `i ↦ Y_{i-1}` for `i = 2..=k`, as inclusive ranges.
    pub intervals: BTreeMap<usize, (usize, usize)>,
}

impl Spreadsheet {
    /// Top bar of `V_{AB,ν}` for `ν ≤ k + l - 2`.
    pub fn bar(&self, nu: usize) -> (usize, usize) {
        if nu == self.steps.len() {
            (self.k, self.l)
        } else {
            (self.steps[nu].bar_i, self.steps[nu].bar_j)
        }
    }

    pub fn h_sequence(&self) -> Vec<Monomial> {
        self.steps.iter().map(|s| s.h.clone()).collect()
    }

    /// Elimination order from the top of `V_AB`: `s_{k+l-3}, ..., s_0`.
    pub fn elimination_order(&self) -> Vec<Gen> {
        self.steps.iter().rev().map(|s| s.s).collect()
    }
}

pub fn schedule(dip: &Diptych) -> Result<Spreadsheet> {
    let chain = deconstruct_rectangle(dip)?;
    let n = chain.len() - 1;
    let mut steps = Vec::with_capacity(n);
    for nu in 0..n {
        let v = &chain[n - nu];
        let above = &chain[n - nu - 1];
        let (i, j) = v.top();
        let h = v.a_ann.hcf(&v.b_ann);
        invariant!(h == v.a_ann || h == v.b_ann, "h_{nu} = {h} is neither A_ν nor B_ν");
        steps.push(ProjectionStep {
            nu,
            s: above.eliminated.expect("every rectangle above the last eliminates a monomial"),
            bar_i: i,
            bar_j: j,
            alpha: v.x_tags[i],
            beta: v.y_tags[j],
            a_ann: v.a_ann.clone(),
            b_ann: v.b_ann.clone(),
            h,
        });
    }
    let sheet = Spreadsheet { d: dip.d, e: dip.e, k: dip.k, l: dip.l, steps, intervals: intervals(dip) };
    check_schedule(dip, &sheet)?;
    Ok(sheet)
}

/// Checks a simulated spreadsheet against the closed form of its rows, the
/// annotation recursion, the divisibility chain of `h_ν` and both clauses of
/// the interval rule.
pub fn check_schedule(dip: &Diptych, sheet: &Spreadsheet) -> Result<()> {
    let (k, l) = (dip.k, dip.l);
    let steps = &sheet.steps;
    invariant!(steps.len() == k + l - 2, "{} steps, expected k + l - 2", steps.len());
    if steps.is_empty() {
        return Ok(());
    }
    let last = steps.last().expect("at least one step");
    invariant!(last.s == Gen::Y(l as u32) && last.h == Monomial::var(Gen::B), "the first elimination is not y_l with h = B");
    invariant!(steps[0].s == Gen::X(2) && (steps[0].bar_i, steps[0].bar_j) == (1, 1), "s_0 is {}, not x_2", steps[0].s);
    for nu in 0..steps.len() {
        invariant!(sheet.bar(nu) == table1_bar(dip, nu), "bar of V_AB,{nu} is {:?}, the closed form gives {:?}", sheet.bar(nu), table1_bar(dip, nu));
        let step = &steps[nu];
        if nu + 1 < steps.len() {
            let up = &steps[nu + 1];
            // Whether s_ν sits on the x side decides which annotation is inherited.
            let left = matches!(step.s, Gen::X(_));
            let ok = if left {
                step.a_ann == up.a_ann && step.b_ann == up.a_ann.mul(&up.b_ann) && up.alpha == 1
            } else {
                step.a_ann == up.a_ann.mul(&up.b_ann) && step.b_ann == up.b_ann && up.beta == 1
            };
            invariant!(ok, "annotation recursion fails between ν = {nu} and {}", nu + 1);
            invariant!(up.h.divides(&step.h), "h_{} does not divide h_{nu}", nu + 1);
        }
        if nu >= 1 {
            let (lo, hi) = sheet.intervals[&step.bar_i];
            invariant!((lo..=hi).contains(&step.bar_j), "bar y_{} lies outside Y_{}", step.bar_j, step.bar_i - 1);
        }
    }
    for i in 2..k {
        invariant!(sheet.intervals[&i].1 == sheet.intervals[&(i + 1)].0, "Y_{} and Y_{i} are not adjacent", i - 1);
    }
    let lm = lm_bars(dip)?;
    for (n2, &(i2, j2)) in lm.iter().enumerate().skip(1).take(k + l - 3) {
        // The bar x_{i-1}, y_j of V_LM has j in Y_i, stored under key i + 1.
        let Some(&(lo, hi)) = sheet.intervals.get(&(i2 + 2)) else {
            return Err(Error::Invariant(format!("V_LM bottom bar x_{i2} after {n2} steps has no interval")));
        };
        invariant!((lo..=hi).contains(&j2), "V_LM bottom bar x_{i2}, y_{j2} after {n2} steps lies outside Y_{}", i2 + 1);
    }
    Ok(())
}

/// Closed form for the bar of `V_{AB,ν}`. Both parities read the same once
/// the half-round lengths `t(2) - 1`, `t(3) - 1` are used.
pub fn table1_bar(dip: &Diptych, nu: usize) -> (usize, usize) {
    let (k, l) = (dip.k, dip.l);
    if nu == k + l - 2 {
        return (k, l);
    }
    let p = dip.cycle_tag(2) as usize - 1;
    let q = dip.cycle_tag(3) as usize - 1;
    let step = (dip.d + dip.e - 4) as usize;
    let (c, v) = (nu / (p + q), nu % (p + q));
    if v == 0 {
        (2 * c + 1, step * c + 1)
    } else if v <= p {
        (2 * c + 2, step * c + v)
    } else {
        (2 * c + 3, step * c + v - 1)
    }
}

/// `l` from the closed form: `(d+e-4)κ + 2` for odd `k`, and
/// `(t(2)-2)κ + (t(3)-2)(κ-1) + 2` for even `k`.
pub fn table1_l(dip: &Diptych) -> usize {
    let kappa = dip.kappa() as i64;
    let l = if dip.k == 1 {
        // No half rounds: V_AB is the complete intersection itself.
        1
    } else if dip.k % 2 == 1 {
        (dip.d + dip.e - 4) * kappa + 2
    } else {
        (dip.cycle_tag(2) - 2) * kappa + (dip.cycle_tag(3) - 2) * (kappa - 1) + 2
    };
    l as usize
}

/// `i ↦ Y_{i-1} = [n_i + 1, n_i + t(i) - 1]` with `n_2 = 0` and
/// `n_{i+1} = n_i + t(i) - 2`.
pub fn intervals(dip: &Diptych) -> BTreeMap<usize, (usize, usize)> {
    let mut out = BTreeMap::new();
    let mut n = 0i64;
    for i in 2..=dip.k {
        let t = dip.cycle_tag(i);
        out.insert(i, ((n + 1) as usize, (n + t - 1) as usize));
        n += t - 2;
    }
    out
}

/// The `i` with `y_m ≡ y_{m-1} + x_i` in the Padded Cell: the first `i` whose
/// interval `Y_{i-1}` reaches `m`, and `k` past the last interval.
pub fn walk_index(dip: &Diptych, m: usize) -> usize {
    intervals(dip).into_iter().find(|&(_, (_, hi))| m <= hi).map_or(dip.k, |(i, _)| i)
}

/// Bottom bars of `V_LM` after `0, 1, ..., k+l-2` eliminations, in `V_LM`'s
/// indexing.
pub fn lm_bars(dip: &Diptych) -> Result<Vec<(usize, usize)>> {
    let chain = deconstruct_lm(dip)?;
    Ok(chain.iter().map(|r| {
        let (i, j) = r.top();
        (dip.k - i, dip.l - j)
    }).collect())
}

/// Bottom-up elimination order of `V_LM`, starting with `y_0`.
pub fn elimination_order_lm(dip: &Diptych) -> Result<Vec<Gen>> {
    let chain = deconstruct_lm(dip)?;
    Ok(chain
        .iter()
        .filter_map(|r| r.eliminated)
        .map(|g| match g {
            Gen::X(i) => Gen::X(dip.k as u32 - i),
            Gen::Y(j) => Gen::Y(dip.l as u32 - j),
            other => other,
        })
        .collect())
}

/// Elimination order from the top of `V_AB`.
pub fn elimination_order_ab(dip: &Diptych) -> Result<Vec<Gen>> {
    Ok(deconstruct_rectangle(dip)?.iter().filter_map(|r| r.eliminated).collect())
}

/// `(x_0, ..., x_{i-1}, y_0, ..., y_{j-1}, h_ν)`.
pub fn divisor_ideal(step: &ProjectionStep) -> (Vec<Gen>, Monomial) {
    let gens = (0..step.bar_i).map(|i| Gen::X(i as u32)).chain((0..step.bar_j).map(|j| Gen::Y(j as u32))).collect();
    (gens, step.h.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeetingShape {
    /// `x_{i-1}, x_i, y_{j-1}, y_j`.
    Cross,
    /// `x_{i-2}, x_{i-1}, x_i, y_j`.
    Pitchfork,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meeting {
    pub shape: MeetingShape,
    pub top: (usize, usize),
    pub bottom: (usize, usize),
    pub generators: Vec<Gen>,
}

/// The four monomials left after `n1` eliminations from the top of `V_AB`
/// and `k + l - 2 - n1` from the bottom of `V_LM`.
pub fn cross_or_pitchfork(dip: &Diptych, sheet: &Spreadsheet, n1: usize) -> Result<Meeting> {
    let total = dip.k + dip.l - 2;
    if n1 > total {
        return Err(Error::Precondition(format!("n1 = {n1} exceeds k + l - 2 = {total}")));
    }
    let n2 = total - n1;
    let ab_order = sheet.elimination_order();
    let lm_order = elimination_order_lm(dip)?;
    let gone: std::collections::BTreeSet<Gen> = ab_order[..n1].iter().chain(&lm_order[..n2]).copied().collect();
    invariant!(gone.len() == total, "top-down and bottom-up eliminations overlap at n1 = {n1}");
    let generators: Vec<Gen> = dip.side_generators().into_iter().filter(|g| !gone.contains(g)).collect();
    let top = sheet.bar(total - n1);
    let bottom = lm_bars(dip)?[n2];
    let (i, j) = top;
    let shape = if bottom == (i.wrapping_sub(1), j.wrapping_sub(1)) {
        MeetingShape::Cross
    } else if bottom == (i.wrapping_sub(2), j) {
        MeetingShape::Pitchfork
    } else {
        return Err(Error::Invariant(format!("bars {top:?} and {bottom:?} form neither a cross nor a pitchfork")));
    };
    let expected: Vec<Gen> = match shape {
        MeetingShape::Cross => vec![Gen::X(i as u32 - 1), Gen::X(i as u32), Gen::Y(j as u32 - 1), Gen::Y(j as u32)],
        MeetingShape::Pitchfork => vec![Gen::X(i as u32 - 2), Gen::X(i as u32 - 1), Gen::X(i as u32), Gen::Y(j as u32)],
    };
    invariant!(generators == expected, "remaining monomials {generators:?} do not match the {shape:?}");
    Ok(Meeting { shape, top, bottom, generators })
}

/// If `V_AB` eliminates `m1` before `m2` then `π_LM(m1) ≥ π_LM(m2)`, and
/// dually for the bottom-up order of `V_LM` with `π_AB`.
pub fn elimination_monotone(dip: &Diptych, sheet: &Spreadsheet, table: &WeightTable) -> Result<bool> {
    let ge = |a: [num_rational::BigRational; 2], b: [num_rational::BigRational; 2]| a[0] >= b[0] && a[1] >= b[1];
    let ab = sheet.elimination_order();
    let lm = elimination_order_lm(dip)?;
    let ok_ab = ab.windows(2).all(|w| ge(table.weight(w[0]).pi_lm(), table.weight(w[1]).pi_lm()));
    let ok_lm = lm.windows(2).all(|w| ge(table.weight(w[0]).pi_ab(), table.weight(w[1]).pi_ab()));
    Ok(ok_ab && ok_lm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        Monomial::parse(s).unwrap()
    }

    #[test]
    fn worked_schedule() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let sheet = schedule(&dip).unwrap();
        let s: Vec<Gen> = sheet.steps.iter().map(|s| s.s).collect();
        assert_eq!(s, vec![Gen::X(2), Gen::Y(2), Gen::Y(3), Gen::X(3), Gen::Y(4)]);
        assert_eq!(sheet.h_sequence(), vec![m("A^3B^5"), m("AB^2"), m("AB^2"), m("AB"), m("B")]);
        assert_eq!(table1_l(&dip), 4);
    }

    #[test]
    fn worked_deconstruction() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let chain = deconstruct_rectangle(&dip).unwrap();
        assert_eq!(chain.len(), 6);
        let third = &chain[3];
        assert_eq!(third.top(), (2, 2));
        let [e1, e2] = third.bar_equations();
        assert_eq!(e1, (Gen::X(1), Gen::Y(2), m("A^2B^3x_2^2")));
        assert_eq!(e2, (Gen::X(2), Gen::Y(1), m("AB^2y_2")));
        let last = chain.last().unwrap();
        assert_eq!((last.a_ann.clone(), last.b_ann.clone()), (m("A^3B^5"), m("A^4B^7")));
        assert_eq!((last.x_tags.clone(), last.y_tags.clone()), (vec![0, 1], vec![-1, 0]));
    }

    #[test]
    fn divisor_ideals() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let sheet = schedule(&dip).unwrap();
        assert_eq!(divisor_ideal(&sheet.steps[0]), (vec![Gen::X(0), Gen::Y(0)], m("A^3B^5")));
        let last = divisor_ideal(sheet.steps.last().unwrap());
        assert_eq!(last.0, vec![Gen::X(0), Gen::X(1), Gen::X(2), Gen::Y(0), Gen::Y(1), Gen::Y(2)]);
        assert_eq!(last.1, m("B"));
    }

    #[test]
    fn big_example_orders() {
        let dip = Diptych::new(4, 6, 6).unwrap();
        let sheet = schedule(&dip).unwrap();
        assert_eq!(sheet.elimination_order()[..4], [Gen::Y(16), Gen::Y(15), Gen::Y(14), Gen::X(6)]);
        let lm = elimination_order_lm(&dip).unwrap();
        assert_eq!(lm[..5], [Gen::Y(0), Gen::Y(1), Gen::Y(2), Gen::X(0), Gen::Y(3)]);
        assert_eq!(table1_l(&dip), 16);
    }

    #[test]
    fn small_intervals() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let iv = intervals(&dip);
        assert_eq!(iv[&2], (1, 3));
        assert_eq!(iv[&3], (3, 3));
        let dip = Diptych::new(4, 6, 6).unwrap();
        let iv = intervals(&dip);
        assert_eq!(iv.values().map(|(a, b)| b - a + 1).collect::<Vec<_>>(), vec![3, 5, 3, 5, 3]);
    }

    #[test]
    fn meetings() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let sheet = schedule(&dip).unwrap();
        for n1 in 0..=dip.k + dip.l - 2 {
            let mt = cross_or_pitchfork(&dip, &sheet, n1).unwrap();
            assert!(mt.bottom.0 < mt.top.0 && mt.bottom.1 <= mt.top.1);
        }
    }

    #[test]
    fn grid_schedules_agree_with_closed_forms() {
        for d in 2..=6 {
            for e in 2..=6 {
                for k in 1..=8 {
                    let Ok(dip) = Diptych::new(d, e, k) else { continue };
                    let sheet = schedule(&dip).unwrap_or_else(|err| panic!("({d},{e},{k}): {err}"));
                    assert_eq!(table1_l(&dip), dip.l, "({d},{e},{k})");
                    let table = crate::weights::weight_table(&dip).unwrap();
                    assert!(elimination_monotone(&dip, &sheet, &table).unwrap(), "({d},{e},{k})");
                    for n1 in 0..=dip.k + dip.l - 2 {
                        cross_or_pitchfork(&dip, &sheet, n1).unwrap_or_else(|err| panic!("({d},{e},{k}) n1={n1}: {err}"));
                    }
                }
            }
        }
    }
}
