//! Off-line solver: cut oversized items against the largest bin, pack with
//! FFD, then walk down the bin classes repacking the least-filled bin of the
//! previous class into bins of the next one, keeping the cheapest packing.

use crate::auxiliary::first_fit_decreasing;
use crate::error::{Error, Result};
use crate::model::{Fragment, Instance, PackedBin, Packing};
use crate::scalar::Size;
use crate::solvers::SolveResult;
use crate::verify::total_cost;

/// Per-round costs of the descent, for inspection in tests and tooling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiffdTrace<S> {
    pub initial_cost: S,
    /// One entry per class index 1..m; `None` when the round was skipped.
    pub round_costs: Vec<Option<S>>,
    pub best_before_squeeze: S,
    pub final_cost: S,
}

pub fn solve_ciffd<S: Size>(instance: &Instance<S>) -> Result<SolveResult<S>> {
    solve_ciffd_traced(instance).map(|(r, _)| r)
}

pub fn solve_ciffd_traced<S: Size>(instance: &Instance<S>) -> Result<(SolveResult<S>, CiffdTrace<S>)> {
    let classes = instance.classes();
    let cut_limit = instance.cut_limit();
    let n = instance.items().len();
    let b1 = classes[0].capacity;

    let mut bins = Vec::new();
    let mut pool = Vec::new();
    for item in instance.items() {
        let mut t = item.size;
        let mut cuts = 0u32;
        while t > b1 {
            if cuts == cut_limit {
                return Err(Error::Infeasible {
                    item: item.id,
                    size: item.size.to_string(),
                    pieces: (u64::from(cut_limit) + 1).to_string(),
                    max_capacity: b1.to_string(),
                });
            }
            bins.push(full_bin(0, item.id, b1));
            t = t - b1;
            cuts += 1;
        }
        pool.push(Fragment { parent: item.id, piece: 0, size: t });
    }
    bins.extend(first_fit_decreasing(pool, b1, 0));

    let mut best = Packing::new(bins);
    let mut best_cost = total_cost(&best, instance)?;
    let initial_cost = best_cost;
    let mut round_costs = Vec::with_capacity(classes.len().saturating_sub(1));

    for j in 1..classes.len() {
        let outcome = repack_round(&best, instance, j, n)?;
        round_costs.push(outcome.as_ref().map(|(_, c)| *c));
        if let Some((candidate, cost)) = outcome {
            if cost < best_cost {
                best = candidate;
                best_cost = cost;
            }
        }
    }
    let best_before_squeeze = best_cost;

    squeeze(&mut best, instance);
    let result = SolveResult::from_packing(best, instance)?;
    let trace = CiffdTrace {
        initial_cost,
        round_costs,
        best_before_squeeze,
        final_cost: result.cost,
    };
    Ok((result, trace))
}

fn full_bin<S: Size>(class_index: usize, parent: usize, size: S) -> PackedBin<S> {
    PackedBin {
        class_index,
        fragments: vec![Fragment { parent, piece: 0, size }],
    }
}

/// Empties the least-filled bin of class `j - 1` in a copy of `best` and
/// repacks its contents into bins of class `j`. Returns `None` when there is
/// no such bin or the cut budget cannot bring every piece under `b_j`.
fn repack_round<S: Size>(
    best: &Packing<S>,
    instance: &Instance<S>,
    j: usize,
    n: usize,
) -> Result<Option<(Packing<S>, S)>> {
    let bj = instance.classes()[j].capacity;
    let cut_limit = instance.cut_limit();

    // Least load, ties to the most recently opened bin.
    let victim = best
        .bins
        .iter()
        .enumerate()
        .filter(|(_, b)| b.class_index == j - 1)
        .min_by(|(ia, a), (ib, b)| a.load().cmp(&b.load()).then(ib.cmp(ia)))
        .map(|(i, _)| i);
    let Some(victim) = victim else {
        return Ok(None);
    };

    let mut work = best.clone();
    let emptied = work.bins.remove(victim);
    let mut cuts: Vec<u32> = work
        .fragment_counts(n)
        .iter()
        .zip(emptied_counts(&emptied, n))
        .map(|(a, b)| (a + b).saturating_sub(1))
        .collect();

    let mut new_bins = Vec::new();
    let mut pool = Vec::new();
    for frag in emptied.fragments {
        let mut t = frag.size;
        while t > bj && cuts[frag.parent] < cut_limit {
            new_bins.push(full_bin(j, frag.parent, bj));
            t = t - bj;
            cuts[frag.parent] += 1;
        }
        if t > bj {
            return Ok(None);
        }
        pool.push(Fragment { size: t, ..frag });
    }
    new_bins.extend(first_fit_decreasing(pool, bj, j));
    work.bins.extend(new_bins);

    let cost = total_cost(&work, instance)?;
    Ok(Some((work, cost)))
}

fn emptied_counts<S: Size>(bin: &PackedBin<S>, n: usize) -> Vec<u32> {
    let mut counts = vec![0u32; n + 1];
    for f in &bin.fragments {
        counts[f.parent] += 1;
    }
    counts
}

/// Moves the contents of every non-full bin, largest classes first, into the
/// smallest class that holds them when that does not raise the cost.
fn squeeze<S: Size>(packing: &mut Packing<S>, instance: &Instance<S>) {
    let classes = instance.classes();
    let mut order: Vec<usize> = (0..packing.bins.len()).collect();
    order.sort_by_key(|&i| packing.bins[i].class_index);
    for i in order {
        let bin = &mut packing.bins[i];
        let current = classes[bin.class_index];
        let load = bin.load();
        if load >= current.capacity {
            continue;
        }
        // Classes are sorted by decreasing capacity: the last one that fits is the smallest.
        if let Some(l) = classes.iter().rposition(|c| c.capacity >= load) {
            if l > bin.class_index && classes[l].cost <= current.cost {
                bin.class_index = l;
            }
        }
    }
}
