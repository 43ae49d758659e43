//! A main-case diptych: the partner pair and its two panels, named from the
//! top of `V_AB`.
//!
//! `Diptych::new(d, e, k)` has side tags `d, e, d, ...` reading down the x side
//! of `V_AB` from `x_k`. This agrees with the first factorization for odd `k`
//! and with its `d ↔ e` exchange for even `k`.

use crate::classify::{build_pair, DiptychParams, MatrixPair, Variant};
use crate::error::{invariant, Error, Result};
use crate::monomial::{Gen, Monomial};
use crate::rectangle::{rectangle_ab, rectangle_lm, LongRectangle};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diptych {
    pub d: i64,
    pub e: i64,
    pub k: usize,
    pub l: usize,
    /// Parameters of the first factorization that yields [`pair`](Self::pair).
    pub params: DiptychParams,
    pub pair: MatrixPair,
    pub ab: LongRectangle,
    pub lm: LongRectangle,
}

impl Diptych {
    pub fn new(d: i64, e: i64, k: usize) -> Result<Diptych> {
        let probe = DiptychParams::new(d, e, k, Variant::First)?;
        if !probe.main_case {
            return Err(Error::OutOfScope(format!(
                "(d, e, k) = ({d}, {e}, {k}) is outside the main case d, e >= 2, de > 4 ({:?})",
                probe.excluded.expect("non-main case has a reason")
            )));
        }
        let params = if k % 2 == 1 { probe } else { DiptychParams::new(e, d, k, Variant::First)? };
        let pair = build_pair(&params)?;
        let ab = rectangle_ab(&pair)?;
        let lm = rectangle_lm(&pair)?;
        invariant!(ab.k == k, "V_AB has {} x steps, expected {k}", ab.k);
        let dip = Diptych { d, e, k, l: ab.l, params, pair, ab, lm };
        for i in 1..k {
            invariant!(dip.ab.x_tag(i) == dip.cycle_tag(i), "x_{i} carries tag {}, not {}", dip.ab.x_tag(i), dip.cycle_tag(i));
        }
        invariant!(dip.ab.x_tag(k) == d, "top tag of V_AB is {}, not d = {d}", dip.ab.x_tag(k));
        Ok(dip)
    }

    /// `t(i)`: `d` at `i = k`, alternating with `e` down the x side and
    /// continued periodically past the ends.
    pub fn cycle_tag(&self, i: usize) -> i64 {
        if (self.k + i) % 2 == 0 {
            self.d
        } else {
            self.e
        }
    }

    /// `κ` with `k = 2κ` or `k = 2κ + 1`.
    pub fn kappa(&self) -> usize {
        self.k / 2
    }

    /// The diptych turned upside down, with `AB ↔ LM`.
    pub fn flip(&self) -> Result<Diptych> {
        let (d, e) = if self.k % 2 == 1 { (self.e, self.d) } else { (self.d, self.e) };
        let flipped = Diptych::new(d, e, self.k)?;
        invariant!(flipped.pair == self.pair.exchanged(), "flip of {} is {}", self.pair, flipped.pair);
        invariant!(flipped.l == self.l, "flip changes l");
        Ok(flipped)
    }

    /// Image of a generator under the flip.
    pub fn flip_gen(&self, g: Gen) -> Gen {
        match g {
            Gen::A => Gen::L,
            Gen::B => Gen::M,
            Gen::L => Gen::A,
            Gen::M => Gen::B,
            Gen::X(i) => Gen::X(self.k as u32 - i),
            Gen::Y(j) => Gen::Y(self.l as u32 - j),
        }
    }

    pub fn flip_monomial(&self, m: &Monomial) -> Monomial {
        Monomial::from_pairs(m.iter().map(|(g, e)| (self.flip_gen(g), e)))
    }

    /// Side generators `x_0..x_k, y_0..y_l`.
    pub fn side_generators(&self) -> Vec<Gen> {
        self.ab.generators()
    }

    /// All generators, letters first.
    pub fn generators(&self) -> Vec<Gen> {
        let mut g = vec![Gen::A, Gen::B, Gen::L, Gen::M];
        g.extend(self.side_generators());
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::Tags;

    #[test]
    fn worked_example() {
        let dip = Diptych::new(2, 4, 3).unwrap();
        assert_eq!(dip.pair, MatrixPair::from_i64(7, 12, 4, 7, 24, 2));
        assert_eq!(dip.l, 4);
    }

    #[test]
    fn even_k_naming() {
        let dip = Diptych::new(4, 6, 6).unwrap();
        assert_eq!(dip.ab.x_tags, Tags::from_i64(&[0, 6, 4, 6, 4, 6, 4]));
        assert_eq!(dip.l, 16);
        assert_eq!(dip.ab.y_tags.0[1..16], Tags::from_i64(&[2, 2, 3, 2, 2, 2, 3, 2, 3, 2, 2, 2, 3, 2, 2]).0[..]);
    }

    #[test]
    fn flip_reverses_panels() {
        for (d, e, k) in [(2, 4, 3), (4, 6, 6), (3, 3, 4), (2, 5, 5)] {
            let dip = Diptych::new(d, e, k).unwrap();
            let f = dip.flip().unwrap();
            assert_eq!(f.ab.x_tags, dip.lm.x_tags.reversed());
            assert_eq!(f.ab.y_tags, dip.lm.y_tags.reversed());
            assert_eq!(f.lm.x_tags, dip.ab.x_tags.reversed());
            assert_eq!(f.flip().unwrap(), dip);
        }
    }

    #[test]
    fn outside_main_case() {
        assert!(matches!(Diptych::new(2, 2, 3), Err(Error::OutOfScope(_))));
        assert!(matches!(Diptych::new(1, 5, 3), Err(Error::OutOfScope(_))));
        assert!(matches!(Diptych::new(1, 1, 4), Err(Error::Domain(_))));
    }
}
