//! Grid verification: every check that applies to a single main-case
//! `(d, e, k)`, run in parallel over a box of parameters.

use crate::diptych::Diptych;
use crate::error::Result;
use crate::projseq::{check_schedule, elimination_monotone, schedule};
use crate::rectangle::cone_facets;
use crate::unproject::{homogeneity_check, section_check, serial_chain, serial_chain_top_down};
use crate::weights::{monotonicity_check, padded_cell_check, weight_table};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepBounds {
    pub dmin: i64,
    pub dmax: i64,
    pub emin: i64,
    pub emax: i64,
    pub kmax: usize,
}

impl SweepBounds {
    pub fn new(dmax: i64, emax: i64, kmax: usize) -> SweepBounds {
        SweepBounds { dmin: 2, dmax, emin: 2, emax, kmax }
    }

    /// Main-case tuples in lexicographic order.
    pub fn tuples(&self) -> Vec<(i64, i64, usize)> {
        let mut out = Vec::new();
        for d in self.dmin.max(2)..=self.dmax {
            for e in self.emin.max(2)..=self.emax {
                if d * e <= 4 {
                    continue;
                }
                for k in 1..=self.kmax {
                    out.push((d, e, k));
                }
            }
        }
        out
    }
}

/// Outcome of every per-tuple check. `error` is set when construction itself
/// failed, in which case the boolean fields are `false`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleReport {
    pub d: i64,
    pub e: i64,
    pub k: usize,
    pub l: usize,
    pub equations: usize,
    pub schedule: bool,
    pub homogeneous: bool,
    pub section_failures: usize,
    pub top_down_agrees: bool,
    pub gorenstein: bool,
    pub weights_monotone: bool,
    pub padded_cell: bool,
    pub elimination_monotone: bool,
    pub error: Option<String>,
}

impl TupleReport {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.schedule
            && self.homogeneous
            && self.section_failures == 0
            && self.top_down_agrees
            && self.gorenstein
            && self.weights_monotone
            && self.padded_cell
            && self.elimination_monotone
    }

    fn failed(d: i64, e: i64, k: usize, err: String) -> TupleReport {
        TupleReport {
            d,
            e,
            k,
            l: 0,
            equations: 0,
            schedule: false,
            homogeneous: false,
            section_failures: 0,
            top_down_agrees: false,
            gorenstein: false,
            weights_monotone: false,
            padded_cell: false,
            elimination_monotone: false,
            error: Some(err),
        }
    }
}

fn run_tuple(d: i64, e: i64, k: usize) -> Result<TupleReport> {
    let dip = Diptych::new(d, e, k)?;
    let sheet = schedule(&dip)?;
    let schedule_ok = check_schedule(&dip, &sheet).is_ok();
    let table = weight_table(&dip)?;
    let store = serial_chain(&dip)?;
    let down = serial_chain_top_down(&dip)?;
    Ok(TupleReport {
        d,
        e,
        k,
        l: dip.l,
        equations: store.equations.len(),
        schedule: schedule_ok,
        homogeneous: homogeneity_check(&store, &table),
        section_failures: section_check(&store, &dip)?.len(),
        top_down_agrees: store.by_lhs() == down.by_lhs(),
        gorenstein: cone_facets(&dip.pair).gorenstein,
        weights_monotone: monotonicity_check(&table),
        padded_cell: padded_cell_check(&table, &dip)?,
        elimination_monotone: elimination_monotone(&dip, &sheet, &table)?,
        error: None,
    })
}

pub fn check_tuple(d: i64, e: i64, k: usize) -> TupleReport {
    run_tuple(d, e, k).unwrap_or_else(|err| TupleReport::failed(d, e, k, err.to_string()))
}

/// Reports in the order of [`SweepBounds::tuples`].
pub fn sweep(bounds: &SweepBounds) -> Vec<TupleReport> {
    bounds.tuples().into_par_iter().map(|(d, e, k)| check_tuple(d, e, k)).collect()
}
