//! Serial Pfaffian unprojection from the complete intersection `V_0` up to
//! `V_ABLM`.
//!
//! Each step places the four monomials of a cross or pitchfork on the
//! superdiagonal of a 5×5 skew matrix
//!
//! ```text
//!   p1  a13  a14  -s
//!       p2   g    a25
//!            p3   a35
//!                 p4
//! ```
//!
//! so that `Pf_{23.45}` and `Pf_{12.34}` are the two known equations with left
//! sides `p2·p4` and `p1·p3`. The other three Pfaffians are the new equations.

use crate::diptych::Diptych;
use crate::error::{invariant, Error, Result};
use crate::monomial::{Gen, Monomial, Poly};
use crate::projseq::{schedule, MeetingShape, Spreadsheet};
use crate::weights::{TorusWeight, WeightTable};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A monomial with coefficient `±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: i64,
    pub monomial: Monomial,
}

impl Term {
    pub fn pos(m: Monomial) -> Term {
        Term { coefficient: 1, monomial: m }
    }

    pub fn neg(m: Monomial) -> Term {
        Term { coefficient: -1, monomial: m }
    }

    fn poly(&self) -> Poly {
        Poly::term(self.coefficient, self.monomial.clone())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.coefficient < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", self.monomial)
    }
}

fn has_lm(m: &Monomial) -> bool {
    m.involves(&[Gen::L, Gen::M])
}

fn has_ab(m: &Monomial) -> bool {
    m.involves(&[Gen::A, Gen::B])
}

/// `u·w = t1 + t2`. Stored with `u ≤ w` and `t1` the term that survives
/// `L = M = 0` when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Trinomial {
    pub lhs: (Gen, Gen),
    pub rhs: [Monomial; 2],
}

impl Trinomial {
    pub fn new(u: Gen, w: Gen, t1: Monomial, t2: Monomial) -> Trinomial {
        let lhs = if u <= w { (u, w) } else { (w, u) };
        let key = |m: &Monomial| (has_lm(m), has_ab(m), m.clone());
        let rhs = if key(&t1) <= key(&t2) { [t1, t2] } else { [t2, t1] };
        Trinomial { lhs, rhs }
    }

    /// Parses `u w = t1 + t2`, for instance `x_1y_0=A^4B^7+Lx_0^4`.
    pub fn parse(s: &str) -> Result<Trinomial> {
        let (l, r) = s.split_once('=').ok_or_else(|| Error::Domain(format!("no '=' in {s:?}")))?;
        let lhs = Monomial::parse(l.trim())?;
        let gens: Vec<(Gen, i64)> = lhs.iter().collect();
        let (u, w) = match gens[..] {
            [(u, 1), (w, 1)] => (u, w),
            [(u, 2)] => (u, u),
            _ => return Err(Error::Domain(format!("left side {l:?} is not a product of two generators"))),
        };
        let terms: Vec<&str> = r.split('+').map(str::trim).collect();
        if terms.len() != 2 {
            return Err(Error::Domain(format!("right side {r:?} does not have two terms")));
        }
        Ok(Trinomial::new(u, w, Monomial::parse(terms[0])?, Monomial::parse(terms[1])?))
    }

    pub fn lhs_monomial(&self) -> Monomial {
        Monomial::var(self.lhs.0).mul(&Monomial::var(self.lhs.1))
    }

    /// `u·w - t1 - t2`.
    pub fn poly(&self) -> Poly {
        Poly::term(1, self.lhs_monomial()).sub(&Poly::term(1, self.rhs[0].clone())).sub(&Poly::term(1, self.rhs[1].clone()))
    }
}

/// Compact `x_1y_0=A^4B^7+Lx_0^4`; the alternate form `{:#}` spaces the
/// operators.
impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let (eq, plus) = if f.alternate() { (" = ", " + ") } else { ("=", "+") };
        write!(f, "{}{}{eq}{}{plus}{}", self.lhs.0, self.lhs.1, self.rhs[0], self.rhs[1])
    }
}

/// Upper entries `a_12, a_13, a_14, a_15, a_23, a_24, a_25, a_34, a_35, a_45`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewMatrix5 {
    pub entries: [Term; 10],
}

impl SkewMatrix5 {
    fn index(i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= 5);
        match (i, j) {
            (1, c) => c - 2,
            (2, c) => c + 1,
            (3, c) => c + 3,
            _ => 9,
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Term {
        &self.entries[Self::index(i, j)]
    }

    fn entry(&self, i: usize, j: usize) -> Poly {
        self.at(i, j).poly()
    }

    /// `Pf_{ij.kl} = a_ij a_kl - a_ik a_jl + a_il a_jk`.
    pub fn pfaffian(&self, i: usize, j: usize, k: usize, l: usize) -> Poly {
        let e = |a, b| self.entry(a, b);
        e(i, j).mul(&e(k, l)).sub(&e(i, k).mul(&e(j, l))).add(&e(i, l).mul(&e(j, k)))
    }

    /// Rows in the order `a12 a13 a14 a15; a23 a24 a25; a34 a35; a45`.
    pub fn rows(&self) -> [Vec<&Term>; 4] {
        let e = &self.entries;
        [vec![&e[0], &e[1], &e[2], &e[3]], vec![&e[4], &e[5], &e[6]], vec![&e[7], &e[8]], vec![&e[9]]]
    }
}

impl fmt::Display for SkewMatrix5 {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let rows = self.rows();
        for (n, row) in rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|t| t.to_string()).collect();
            writeln!(f, "{:indent$}{}", "", cells.join("  "), indent = 4 * n)?;
        }
        Ok(())
    }
}

/// The five Pfaffians with their labels, in the order
/// `23.45, 12.34, 12.35, 13.45, 12.45`.
pub const PFAFFIAN_LABELS: [[usize; 4]; 5] = [[2, 3, 4, 5], [1, 2, 3, 4], [1, 2, 3, 5], [1, 3, 4, 5], [1, 2, 4, 5]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pentagram {
    pub new_var: Gen,
    pub matrix: SkewMatrix5,
    pub inputs: [Trinomial; 2],
    pub outputs: [Trinomial; 3],
}

impl Pentagram {
    /// Every Pfaffian equals its equation up to sign.
    pub fn pfaffian_identity(&self) -> bool {
        let eqs = [&self.inputs[0], &self.inputs[1], &self.outputs[0], &self.outputs[1], &self.outputs[2]];
        PFAFFIAN_LABELS.iter().zip(eqs).all(|(&[i, j, k, l], eq)| {
            let pf = self.matrix.pfaffian(i, j, k, l);
            pf == eq.poly() || pf == eq.poly().neg()
        })
    }
}

impl fmt::Display for Pentagram {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "adjoin {}:", self.new_var)?;
        write!(f, "{}", self.matrix)?;
        let eqs = [&self.inputs[0], &self.inputs[1], &self.outputs[0], &self.outputs[1], &self.outputs[2]];
        for (lab, eq) in PFAFFIAN_LABELS.iter().zip(eqs) {
            writeln!(f, "  {}{}.{}{}  {eq:#}", lab[0], lab[1], lab[2], lab[3])?;
        }
        Ok(())
    }
}

fn exact_div(m: &Monomial, by: &Monomial) -> Option<Monomial> {
    by.divides(m).then(|| m.div(by))
}

/// Solves for the pentagram with superdiagonal `p = [p1, p2, p3, p4]`, where
/// `e1` has left side `p2·p4` and `e2` has left side `p1·p3`. In `e1` the term
/// divisible by `p3` gives `a_25`; in `e2` the term divisible by `p2` gives
/// `a_14`; the other two terms share `a_24 = g`, their hcf.
pub fn pentagram_solve(e1: &Trinomial, e2: &Trinomial, p: [Gen; 4], new_var: Gen) -> Result<Pentagram> {
    let [p1, p2, p3, p4] = p;
    let pair = |u: Gen, w: Gen| if u <= w { (u, w) } else { (w, u) };
    if e1.lhs != pair(p2, p4) || e2.lhs != pair(p1, p3) {
        return Err(Error::Structural(format!("inputs {e1} and {e2} do not sit on the superdiagonal {p:?}")));
    }
    let (v2, v3) = (Monomial::var(p2), Monomial::var(p3));
    let mut found: Vec<Pentagram> = Vec::new();
    for o1 in 0..2 {
        for o2 in 0..2 {
            let (t_o1, t_g1) = (&e1.rhs[o1], &e1.rhs[1 - o1]);
            let (t_o2, t_g2) = (&e2.rhs[o2], &e2.rhs[1 - o2]);
            let (Some(a25), Some(a14)) = (exact_div(t_o1, &v3), exact_div(t_o2, &v2)) else { continue };
            let g = t_g1.hcf(t_g2);
            let a35 = t_g1.div(&g);
            let a13 = t_g2.div(&g);
            let var = |x: Gen| Term::pos(Monomial::var(x));
            let matrix = SkewMatrix5 {
                entries: [
                    var(p1),
                    Term::pos(a13.clone()),
                    Term::neg(a14.clone()),
                    Term::neg(Monomial::var(new_var)),
                    var(p2),
                    Term::pos(g.clone()),
                    Term::neg(a25.clone()),
                    var(p3),
                    Term::pos(a35.clone()),
                    var(p4),
                ],
            };
            let s = Monomial::var(new_var);
            let outputs = [
                Trinomial::new(new_var, p2, Monomial::var(p1).mul(&a35), a13.mul(&a25)),
                Trinomial::new(new_var, p3, a13.mul(&Monomial::var(p4)), a14.mul(&a35)),
                Trinomial::new(p1, p4, a14.mul(&a25), s.mul(&g)),
            ];
            let pg = Pentagram { new_var, matrix, inputs: [e1.clone(), e2.clone()], outputs };
            invariant!(pg.pfaffian_identity(), "Pfaffians of the solved matrix disagree with its equations");
            if !found.iter().any(|f| f.outputs == pg.outputs) {
                found.push(pg);
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one solution")),
        0 => Err(Error::Structural(format!("no monomial matrix fits {e1} and {e2} on {p:?}"))),
        n => Err(Error::Structural(format!("{n} different matrices fit {e1} and {e2} on {p:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationStore {
    pub d: i64,
    pub e: i64,
    pub k: usize,
    pub l: usize,
    pub equations: Vec<Trinomial>,
    pub log: Vec<Pentagram>,
}

impl EquationStore {
    pub fn get(&self, u: Gen, w: Gen) -> Option<&Trinomial> {
        let key = if u <= w { (u, w) } else { (w, u) };
        self.equations.iter().find(|t| t.lhs == key)
    }

    fn insert(&mut self, t: Trinomial) -> Result<()> {
        if let Some(old) = self.get(t.lhs.0, t.lhs.1) {
            invariant!(*old == t, "two derivations of {}{} disagree: {old} and {t}", t.lhs.0, t.lhs.1);
            return Ok(());
        }
        self.equations.push(t);
        Ok(())
    }

    /// Equations keyed by left side.
    pub fn by_lhs(&self) -> BTreeMap<(Gen, Gen), &Trinomial> {
        self.equations.iter().map(|t| (t.lhs, t)).collect()
    }
}

/// `x_1y_0` and `x_0y_1` from the bottom corner equations of both panels.
pub fn initial_ci(dip: &Diptych) -> Result<[Trinomial; 2]> {
    let ab = dip.ab.corner_equations()?;
    let lm = dip.lm.corner_equations()?;
    let mut out = Vec::new();
    for c in 0..2 {
        invariant!(ab[c].lhs == lm[c].lhs, "bottom corners of the two panels have different left sides");
        let (u, w) = ab[c].lhs;
        out.push(Trinomial::new(u, w, ab[c].polynomial.clone(), lm[c].polynomial.clone()));
    }
    let [a, b] = <[Trinomial; 2]>::try_from(out).expect("two corners");
    Ok([a, b])
}

/// Runs the chain bottom-up along the schedule of `dip`.
pub fn serial_chain(dip: &Diptych) -> Result<EquationStore> {
    let sheet = schedule(dip)?;
    serial_chain_with(dip, &sheet)
}

pub fn serial_chain_with(dip: &Diptych, sheet: &Spreadsheet) -> Result<EquationStore> {
    let (k, l) = (dip.k, dip.l);
    let mut store = EquationStore { d: dip.d, e: dip.e, k, l, equations: Vec::new(), log: Vec::new() };
    for t in initial_ci(dip)? {
        store.insert(t)?;
    }
    let total = k + l - 2;
    for (nu, step) in sheet.steps.iter().enumerate() {
        let meeting = crate::projseq::cross_or_pitchfork(dip, sheet, total - nu)?;
        let (i, j) = meeting.top;
        let (x, y) = (|i: usize| Gen::X(i as u32), |j: usize| Gen::Y(j as u32));
        let q = match meeting.shape {
            MeetingShape::Cross => y(j - 1),
            MeetingShape::Pitchfork => x(i - 2),
        };
        let p = [y(j), q, x(i - 1), x(i)];
        let lookup = |u: Gen, w: Gen| {
            store.get(u, w).cloned().ok_or_else(|| Error::Invariant(format!("step {nu}: no stored equation for {u}{w}")))
        };
        let e1 = lookup(q, x(i))?;
        let e2 = lookup(x(i - 1), y(j))?;
        let pg = pentagram_solve(&e1, &e2, p, step.s)?;
        invariant!(step.h.divides(&pg.matrix.at(2, 4).monomial),
            "step {nu}: h = {} does not divide g = {}", step.h, pg.matrix.at(2, 4));
        for t in pg.outputs.clone() {
            store.insert(t)?;
        }
        store.log.push(pg);
    }
    invariant!(store.equations.len() == 2 + 3 * total, "{} equations, expected {}", store.equations.len(), 2 + 3 * total);
    Ok(store)
}

/// The chain run from the top of `V_LM` downwards, in the original labels.
pub fn serial_chain_top_down(dip: &Diptych) -> Result<EquationStore> {
    let flipped = dip.flip()?;
    let store = serial_chain(&flipped)?;
    let map_t = |t: &Trinomial| {
        Trinomial::new(dip.flip_gen(t.lhs.0), dip.flip_gen(t.lhs.1), flipped.flip_monomial(&t.rhs[0]), flipped.flip_monomial(&t.rhs[1]))
    };
    let map_term = |t: &Term| Term { coefficient: t.coefficient, monomial: flipped.flip_monomial(&t.monomial) };
    Ok(EquationStore {
        d: dip.d,
        e: dip.e,
        k: dip.k,
        l: dip.l,
        equations: store.equations.iter().map(map_t).collect(),
        log: store
            .log
            .iter()
            .map(|pg| Pentagram {
                new_var: flipped.flip_gen(pg.new_var),
                matrix: SkewMatrix5 { entries: pg.matrix.entries.clone().map(|t| map_term(&t)) },
                inputs: pg.inputs.clone().map(|t| map_t(&t)),
                outputs: pg.outputs.clone().map(|t| map_t(&t)),
            })
            .collect(),
    })
}

/// Both sides of every equation have the same torus weight.
pub fn homogeneity_check(store: &EquationStore, table: &WeightTable) -> bool {
    store.equations.par_iter().all(|t| trinomial_homogeneous(t, table))
}

pub fn trinomial_homogeneous(t: &Trinomial, table: &WeightTable) -> bool {
    let lhs: TorusWeight = &table.weight(t.lhs.0) + &table.weight(t.lhs.1);
    t.rhs.iter().all(|m| table.monomial_weight(m) == lhs)
}

/// Which section an equation failed, with the offending equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionFailure {
    pub section: String,
    pub equation: Trinomial,
}

/// At `L = M = 0` exactly one term survives and agrees with `V_AB`'s Laurent
/// parametrization; dually at `A = B = 0` with `V_LM`.
pub fn section_check(store: &EquationStore, dip: &Diptych) -> Result<Vec<SectionFailure>> {
    let ab = dip.ab.generators_laurent()?;
    let lm = dip.lm.generators_laurent()?;
    let mut failures = Vec::new();
    for t in &store.equations {
        for (name, map, killed) in [("L=M=0", &ab, has_lm as fn(&Monomial) -> bool), ("A=B=0", &lm, has_ab)] {
            let survivors: Vec<&Monomial> = t.rhs.iter().filter(|m| !killed(m)).collect();
            let lhs = t.lhs_monomial().substitute(map);
            let ok = survivors.len() == 1 && survivors[0].substitute(map) == lhs;
            if !ok {
                failures.push(SectionFailure { section: name.into(), equation: t.clone() });
            }
        }
    }
    Ok(failures)
}

/// Brute force over `x_i^ξ y_j^η A^α B^β L^λ M^μ` with `ξ, η ≤ bound` at
/// each weight of a relation of `V_{AB,ν}`: every such monomial must be
/// divisible by `h_ν`. Returns the number of monomials checked, or the first
/// counterexample.
pub fn claim_divisibility_check(
    table: &WeightTable,
    sheet: &Spreadsheet,
    nu: usize,
    bound: u32,
) -> std::result::Result<usize, Monomial> {
    let step = &sheet.steps[nu];
    let (i, j) = (step.bar_i, step.bar_j);
    let weights = relation_weights(table, i, j);
    check_weights_divisible(table, i, j, &step.h, &weights, bound)
}

/// Weights of products of two distinct non-adjacent monomials on the
/// boundary cycle `x_0, ..., x_i, y_j, ..., y_0`.
pub fn relation_weights(table: &WeightTable, i: usize, j: usize) -> Vec<TorusWeight> {
    let cycle: Vec<Gen> = (0..=i).map(|a| Gen::X(a as u32)).chain((0..=j).rev().map(|b| Gen::Y(b as u32))).collect();
    let n = cycle.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 2..n {
            if a == 0 && b == n - 1 {
                continue;
            }
            out.push(&table.weight(cycle[a]) + &table.weight(cycle[b]));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn check_weights_divisible(
    table: &WeightTable,
    i: usize,
    j: usize,
    h: &Monomial,
    weights: &[TorusWeight],
    bound: u32,
) -> std::result::Result<usize, Monomial> {
    let (xi, yj) = (Gen::X(i as u32), Gen::Y(j as u32));
    let (wx, wy) = (table.weight(xi), table.weight(yj));
    let mut checked = 0;
    for w in weights {
        for xe in 0..=bound as i64 {
            for ye in 0..=bound as i64 {
                let rest = &(w - &wx.scale(xe)) - &wy.scale(ye);
                if !rest.is_integral() || rest.0.iter().any(|c| c < &num_rational::BigRational::from_integer(0.into())) {
                    continue;
                }
                let e = |c: usize| -> i64 { rest.0[c].to_integer().try_into().expect("small exponent") };
                let m = Monomial::from_pairs([(xi, xe), (yj, ye), (Gen::L, e(0)), (Gen::M, e(1)), (Gen::A, e(2)), (Gen::B, e(3))]);
                checked += 1;
                if !h.divides(&m) {
                    return Err(m);
                }
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(s: &str) -> Trinomial {
        Trinomial::parse(s).unwrap()
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(tri("x_1y_0=Lx_0^4+A^4B^7").to_string(), "x_1y_0=A^4B^7+Lx_0^4");
        assert_eq!(tri("x_3x_1 = BLM^4 + x_2^4").to_string(), "x_1x_3=x_2^4+BLM^4");
    }

    #[test]
    fn first_pentagram() {
        let e1 = tri("x_2y_4=x_3^2A+L^2M^7");
        let e2 = tri("x_3y_3=y_4B+x_2^3LM^3");
        let pg = pentagram_solve(&e1, &e2, [Gen::Y(3), Gen::Y(4), Gen::X(3), Gen::X(2)], Gen::X(1)).unwrap();
        let m = |s: &str| Monomial::parse(s).unwrap();
        assert_eq!(pg.matrix.at(1, 3).monomial, m("x_2^3"));
        assert_eq!(*pg.matrix.at(1, 4), Term::neg(m("B")));
        assert_eq!(*pg.matrix.at(2, 4), Term::pos(m("LM^3")));
        assert_eq!(*pg.matrix.at(2, 5), Term::neg(m("Ax_3")));
        assert_eq!(*pg.matrix.at(3, 5), Term::pos(m("LM^4")));
        let mut outs = pg.outputs.to_vec();
        outs.sort_by_key(|t| t.lhs);
        assert_eq!(outs, vec![tri("x_1x_3=x_2^4+BLM^4"), tri("x_1y_4=x_2^3x_3A+y_3LM^4"), tri("x_2y_3=x_3AB+x_1LM^3")]);
    }

    #[test]
    fn initial_equations() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let [a, b] = initial_ci(&dip).unwrap();
        assert_eq!(a, tri("x_1y_0=A^4B^7+Lx_0^4"));
        assert_eq!(b, tri("x_0y_1=A^3B^5x_1+My_0"));
    }

    #[test]
    fn worked_chain() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let store = serial_chain(&dip).unwrap();
        assert_eq!(store.equations.len(), 17);
        assert!(store.get(Gen::X(1), Gen::X(3)).is_some());
        assert_eq!(*store.get(Gen::X(1), Gen::Y(1)).unwrap(), tri("x_1y_1=A^3B^5x_2+LMx_0^3"));
        let table = crate::weights::weight_table(&dip).unwrap();
        assert!(homogeneity_check(&store, &table));
        assert!(section_check(&store, &dip).unwrap().is_empty());
        let down = serial_chain_top_down(&dip).unwrap();
        assert_eq!(store.by_lhs(), down.by_lhs());
    }

    #[test]
    fn perturbed_exponent_breaks_homogeneity() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let mut store = serial_chain(&dip).unwrap();
        let table = crate::weights::weight_table(&dip).unwrap();
        store.equations[5].rhs[0].add_exp(Gen::A, 1);
        assert!(!homogeneity_check(&store, &table));
    }

    #[test]
    fn claim_for_worked_example() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        let sheet = schedule(&dip).unwrap();
        let table = crate::weights::weight_table(&dip).unwrap();
        for nu in 0..sheet.steps.len() {
            assert!(claim_divisibility_check(&table, &sheet, nu, 20).is_ok(), "ν = {nu}");
        }
        // The bar itself is not a relation, and x_i y_j is not divisible by h.
        let step = &sheet.steps[0];
        let bar = &table.weight(Gen::X(step.bar_i as u32)) + &table.weight(Gen::Y(step.bar_j as u32));
        assert!(check_weights_divisible(&table, step.bar_i, step.bar_j, &step.h, &[bar], 20).is_err());
    }
}
