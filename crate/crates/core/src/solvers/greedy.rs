//! Greedy references: cut modulo the largest capacity, then Next Fit into
//! largest bins.

use crate::auxiliary::OpenBins;
use crate::error::{Error, Result};
use crate::model::{Instance, Item};
use crate::scalar::Size;
use crate::solvers::SolveResult;

/// Splits an item into full largest-bin pieces and a remainder in `(0, bmax]`.
fn modulo_cut<S: Size>(item: &Item<S>, bmax: S, cut_limit: u32) -> Result<(usize, S)> {
    let mut t = item.size;
    let mut full = 0usize;
    while t > bmax {
        if full as u64 == u64::from(cut_limit) {
            return Err(Error::Infeasible {
                item: item.id,
                size: item.size.to_string(),
                pieces: (u64::from(cut_limit) + 1).to_string(),
                max_capacity: bmax.to_string(),
            });
        }
        t = t - bmax;
        full += 1;
    }
    Ok((full, t))
}

/// Next Fit over largest bins sharing one current bin.
struct NextFit {
    current: Option<usize>,
}

impl NextFit {
    fn push<S: Size>(&mut self, bins: &mut OpenBins<S>, bmax: S, parent: usize, size: S) {
        let b = match self.current {
            Some(b) if bins.room(b, bmax) >= size => b,
            _ => {
                let b = bins.open(0);
                self.current = Some(b);
                b
            }
        };
        bins.put(b, parent, size);
    }
}

/// On-line reference. Full pieces of an item each open their own largest
/// bin; remainders (and items that fit whole) are packed Next Fit.
pub fn solve_cnfl<S: Size>(instance: &Instance<S>) -> Result<SolveResult<S>> {
    let bmax = instance.max_capacity();
    let mut bins = OpenBins::new();
    let mut nf = NextFit { current: None };
    for item in instance.items() {
        let (full, rest) = modulo_cut(item, bmax, instance.cut_limit())?;
        for _ in 0..full {
            let b = bins.open(0);
            bins.put(b, item.id, bmax);
        }
        nf.push(&mut bins, bmax, item.id, rest);
    }
    SolveResult::from_packing(bins.into_packing(), instance)
}

/// Off-line reference: all pieces of the modulo cut are sorted by decreasing
/// size (stable) and packed Next Fit.
pub fn solve_cdnfl<S: Size>(instance: &Instance<S>) -> Result<SolveResult<S>> {
    let bmax = instance.max_capacity();
    let mut pieces = Vec::new();
    for item in instance.items() {
        let (full, rest) = modulo_cut(item, bmax, instance.cut_limit())?;
        pieces.extend(std::iter::repeat_n((item.id, bmax), full));
        pieces.push((item.id, rest));
    }
    pieces.sort_by_key(|p| std::cmp::Reverse(p.1));
    let mut bins = OpenBins::new();
    let mut nf = NextFit { current: None };
    for (parent, size) in pieces {
        nf.push(&mut bins, bmax, parent, size);
    }
    SolveResult::from_packing(bins.into_packing(), instance)
}
