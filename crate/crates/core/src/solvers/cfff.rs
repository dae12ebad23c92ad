//! On-line solver with a fill factor.
//!
//! Items that fit the largest bin go to a Next-Fit-with-Cuts stream of
//! largest bins. Larger items are cut modulo the largest capacity; each full
//! piece gets its own largest bin and the remainder is placed by the fill
//! factor rule: First Fit into any opened bin, else a new largest bin when
//! the remainder is at most half of it, else the smallest class whose
//! capacity lies in `[t, t / f]`, else a new largest bin.
//!
//! With a cut limit of 0 every item is placed by the fill factor rule alone.

use crate::auxiliary::{NfcStream, OpenBins};
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::scalar::Size;
use crate::solvers::{FillFactor, SolveResult};

/// How a remainder was placed. Only the largest-bin categories matter to
/// the cost bound; the labels are informational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RemainderCategory {
    /// Big remainder opening its own largest bin.
    X,
    /// Remainder sharing a largest bin, or small enough to open one.
    Y,
    /// Remainder in a bin smaller than the largest.
    Z,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CfffTrace {
    /// `(item id, category)` for every remainder placed by the fill factor rule.
    pub remainders: Vec<(usize, RemainderCategory)>,
    /// Items that went through the NFC stream.
    pub streamed: Vec<usize>,
}

pub fn solve_cfff<S: Size>(instance: &Instance<S>, f: FillFactor) -> Result<SolveResult<S>> {
    solve_cfff_traced(instance, f).map(|(r, _)| r)
}

pub fn solve_cfff_traced<S: Size>(instance: &Instance<S>, f: FillFactor) -> Result<(SolveResult<S>, CfffTrace)> {
    let classes = instance.classes();
    let bmax = instance.max_capacity();
    let cut_limit = instance.cut_limit();
    let mut bins = OpenBins::new();
    let mut stream = NfcStream::new();
    let mut trace = CfffTrace::default();

    for item in instance.items() {
        let mut t = item.size;
        if cut_limit >= 1 && t <= bmax {
            stream.push(&mut bins, 0, bmax, item.id, t, true);
            trace.streamed.push(item.id);
            continue;
        }
        let mut cuts = 0u32;
        while t > bmax {
            if cuts == cut_limit {
                return Err(Error::Infeasible {
                    item: item.id,
                    size: item.size.to_string(),
                    pieces: (u64::from(cut_limit) + 1).to_string(),
                    max_capacity: bmax.to_string(),
                });
            }
            let b = bins.open(0);
            bins.put(b, item.id, bmax);
            t = t - bmax;
            cuts += 1;
        }

        let first_fit = (0..bins.bins.len())
            .find(|&b| bins.room(b, classes[bins.bins[b].class_index].capacity) >= t);
        let (target, category) = match first_fit {
            Some(b) => {
                let cat = if bins.bins[b].class_index == 0 {
                    RemainderCategory::Y
                } else {
                    RemainderCategory::Z
                };
                (b, cat)
            }
            None if t.wide() * 2 <= bmax.wide() => (bins.open(0), RemainderCategory::Y),
            None => {
                let fitting = classes
                    .iter()
                    .rposition(|c| f.accepts(t.wide(), c.capacity.wide()));
                match fitting {
                    Some(l) if l > 0 => (bins.open(l), RemainderCategory::Z),
                    _ => (bins.open(0), RemainderCategory::X),
                }
            }
        };
        bins.put(target, item.id, t);
        trace.remainders.push((item.id, category));
    }

    let result = SolveResult::from_packing(bins.into_packing(), instance)?;
    Ok((result, trace))
}
