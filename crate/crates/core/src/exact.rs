//! Exhaustive branch-and-bound for tiny instances.
//!
//! Items are processed in decreasing size. For each item every split into at
//! most `D + 1` positive parts is tried (non-increasing parts only when
//! symmetry pruning is on), and every part is assigned either to an existing
//! group of fragments or to a new one. A group's cost is that of the cheapest
//! class able to hold its load, so bin classes never need to be branched on.
//!
//! The bound for a partial assignment is the current group cost plus the
//! cheapest possible price, at the minimum unit cost over all classes, of
//! the mass that cannot fit into the slack the open groups still have
//! against the largest capacity.

use crate::error::{Error, Result};
use crate::model::{Fragment, Instance, PackedBin, Packing};
use crate::scalar::Size;
use crate::solvers::SolveResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_items: usize,
    pub max_size: u64,
    pub max_classes: usize,
    pub max_cuts: u32,
    /// Search nodes (fragment placements) before giving up.
    pub node_budget: u64,
    /// Only enumerate non-increasing splits and skip equivalent placements of
    /// equal parts. Turning it off must not change any optimum.
    pub symmetry_pruning: bool,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_items: 5,
            max_size: 12,
            max_classes: 3,
            max_cuts: 2,
            node_budget: 20_000_000,
            symmetry_pruning: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome<T> {
    Optimal(T),
    BudgetExceeded { nodes: u64 },
}

impl<T> ExactOutcome<T> {
    pub fn optimal(self) -> Option<T> {
        match self {
            ExactOutcome::Optimal(v) => Some(v),
            ExactOutcome::BudgetExceeded { .. } => None,
        }
    }
}

/// Minimum-cost packing.
pub fn solve_exact<S: Size>(instance: &Instance<S>, limits: &ExactLimits) -> Result<ExactOutcome<SolveResult<S>>> {
    let problem = Problem::new(instance, limits, Objective::Cost)?;
    match problem.run() {
        ExactOutcome::Optimal(groups) => {
            let packing = problem.to_packing::<S>(&groups)?;
            Ok(ExactOutcome::Optimal(SolveResult::from_packing(packing, instance)?))
        }
        ExactOutcome::BudgetExceeded { nodes } => Ok(ExactOutcome::BudgetExceeded { nodes }),
    }
}

/// Minimum number of bins, ignoring costs.
pub fn min_bins_exact<S: Size>(instance: &Instance<S>, limits: &ExactLimits) -> Result<ExactOutcome<usize>> {
    let problem = Problem::new(instance, limits, Objective::Bins)?;
    Ok(match problem.run() {
        ExactOutcome::Optimal(groups) => ExactOutcome::Optimal(groups.len()),
        ExactOutcome::BudgetExceeded { nodes } => ExactOutcome::BudgetExceeded { nodes },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Objective {
    Cost,
    Bins,
}

type Group = Vec<(usize, u64)>;

struct Problem {
    objective: Objective,
    /// (item id, size), decreasing size.
    items: Vec<(usize, u64)>,
    /// (capacity, cost), decreasing capacity.
    classes: Vec<(u64, u64)>,
    max_parts: u64,
    bmax: u64,
    /// Minimum unit cost as a fraction (cost, capacity).
    unit: (u64, u64),
    node_budget: u64,
    symmetry: bool,
}

impl Problem {
    fn new<S: Size>(instance: &Instance<S>, limits: &ExactLimits, objective: Objective) -> Result<Self> {
        let n = instance.items().len();
        if n > limits.max_items {
            return Err(Error::LimitsExceeded(format!("{n} items > {}", limits.max_items)));
        }
        if instance.classes().len() > limits.max_classes {
            return Err(Error::LimitsExceeded(format!(
                "{} classes > {}",
                instance.classes().len(),
                limits.max_classes
            )));
        }
        if instance.cut_limit() > limits.max_cuts {
            return Err(Error::LimitsExceeded(format!(
                "cut limit {} > {}",
                instance.cut_limit(),
                limits.max_cuts
            )));
        }
        let to_u64 = |v: S| v.to_u64().ok_or(Error::Overflow);
        let mut items = Vec::with_capacity(n);
        for it in instance.items() {
            let size = to_u64(it.size)?;
            if size > limits.max_size {
                return Err(Error::LimitsExceeded(format!(
                    "item {} has size {size} > {}",
                    it.id, limits.max_size
                )));
            }
            items.push((it.id, size));
        }
        items.sort_by_key(|it| std::cmp::Reverse(it.1));
        let classes = instance
            .classes()
            .iter()
            .map(|c| Ok((to_u64(c.capacity)?, to_u64(c.cost)?)))
            .collect::<Result<Vec<_>>>()?;
        let unit = match objective {
            Objective::Bins => (1, classes[0].0),
            Objective::Cost => classes
                .iter()
                .map(|&(cap, cost)| (cost, cap))
                .min_by(|a, b| (u128::from(a.0) * u128::from(b.1)).cmp(&(u128::from(b.0) * u128::from(a.1))))
                .expect("at least one class"),
        };
        Ok(Problem {
            objective,
            items,
            bmax: classes[0].0,
            classes,
            max_parts: u64::from(instance.cut_limit()) + 1,
            unit,
            node_budget: limits.node_budget,
            symmetry: limits.symmetry_pruning,
        })
    }

    fn group_cost(&self, load: u64) -> u64 {
        match self.objective {
            Objective::Bins => 1,
            Objective::Cost => self
                .classes
                .iter()
                .filter(|c| c.0 >= load)
                .map(|c| c.1)
                .min()
                .expect("group loads never exceed the largest capacity"),
        }
    }

    /// Cheapest conceivable price of `mass` placed in new bins.
    fn mass_bound(&self, mass: u64) -> u64 {
        let num = u128::from(mass) * u128::from(self.unit.0);
        let den = u128::from(self.unit.1);
        num.div_ceil(den) as u64
    }

    fn run(&self) -> ExactOutcome<Vec<Group>> {
        let total: u64 = self.items.iter().map(|i| i.1).sum();
        let mut search = Search {
            p: self,
            groups: Vec::new(),
            loads: Vec::new(),
            cost: 0,
            remaining: total,
            best: u64::MAX,
            best_groups: Vec::new(),
            nodes: 0,
            floor: self.mass_bound(total),
            done: false,
            aborted: false,
        };
        search.item(0);
        if search.aborted {
            ExactOutcome::BudgetExceeded { nodes: search.nodes }
        } else {
            ExactOutcome::Optimal(search.best_groups)
        }
    }

    fn to_packing<S: Size>(&self, groups: &[Group]) -> Result<Packing<S>> {
        let mut bins = Vec::with_capacity(groups.len());
        for g in groups {
            let load: u64 = g.iter().map(|f| f.1).sum();
            // Cheapest class that holds the load, smallest capacity on ties.
            let class_index = self
                .classes
                .iter()
                .enumerate()
                .filter(|(_, c)| c.0 >= load)
                .min_by(|(ia, a), (ib, b)| a.1.cmp(&b.1).then(ib.cmp(ia)))
                .map(|(i, _)| i)
                .expect("load fits the largest class");
            let fragments = g
                .iter()
                .map(|&(parent, size)| Ok(Fragment { parent, piece: 0, size: S::from_u64(size)? }))
                .collect::<Result<Vec<_>>>()?;
            bins.push(PackedBin { class_index, fragments });
        }
        Ok(Packing::new(bins))
    }
}

struct Search<'a> {
    p: &'a Problem,
    groups: Vec<Group>,
    loads: Vec<u64>,
    cost: u64,
    remaining: u64,
    best: u64,
    best_groups: Vec<Group>,
    nodes: u64,
    floor: u64,
    done: bool,
    aborted: bool,
}

impl Search<'_> {
    fn stop(&self) -> bool {
        self.done || self.aborted
    }

    fn bound(&self) -> u64 {
        let slack: u64 = self.loads.iter().map(|&l| self.p.bmax - l).sum();
        self.cost + self.p.mass_bound(self.remaining.saturating_sub(slack))
    }

    fn item(&mut self, k: usize) {
        if self.stop() {
            return;
        }
        if k == self.p.items.len() {
            if self.cost < self.best {
                self.best = self.cost;
                self.best_groups = self.groups.clone();
                self.done = self.best <= self.floor;
            }
            return;
        }
        if self.bound() >= self.best {
            return;
        }
        let (id, size) = self.p.items[k];
        let max_parts = self.p.max_parts.min(size);
        let mut parts = Vec::new();
        for count in 1..=max_parts {
            if self.p.symmetry {
                self.partitions(k, id, size, count, size, &mut parts);
            } else {
                self.compositions(k, id, size, count, &mut parts);
            }
            if self.stop() {
                return;
            }
        }
    }

    /// Non-increasing splits of `left` into `count` parts, each at most `cap`.
    fn partitions(&mut self, k: usize, id: usize, left: u64, count: u64, cap: u64, parts: &mut Vec<u64>) {
        if self.stop() {
            return;
        }
        if count == 0 {
            if left == 0 {
                let split = parts.clone();
                self.assign(k, id, &split, 0, 0);
            }
            return;
        }
        // Remaining parts are at least 1 and at most the current part.
        let hi = cap.min(left - (count - 1)).min(self.p.bmax);
        let lo = left.div_ceil(count);
        for v in (lo..=hi).rev() {
            parts.push(v);
            self.partitions(k, id, left - v, count - 1, v, parts);
            parts.pop();
        }
    }

    /// Ordered splits of `left` into `count` positive parts.
    fn compositions(&mut self, k: usize, id: usize, left: u64, count: u64, parts: &mut Vec<u64>) {
        if self.stop() {
            return;
        }
        if count == 1 {
            if left <= self.p.bmax {
                parts.push(left);
                let split = parts.clone();
                self.assign(k, id, &split, 0, 0);
                parts.pop();
            }
            return;
        }
        for v in (1..=(left - (count - 1)).min(self.p.bmax)).rev() {
            parts.push(v);
            self.compositions(k, id, left - v, count - 1, parts);
            parts.pop();
        }
    }

    /// Places part `r` of the current item. Parts of one item go to distinct
    /// groups (two parts sharing a group is the same as one larger part).
    /// `min_group` enforces increasing groups across equal consecutive parts.
    fn assign(&mut self, k: usize, id: usize, parts: &[u64], r: usize, min_group: usize) {
        if self.stop() {
            return;
        }
        if r == parts.len() {
            self.item(k + 1);
            return;
        }
        self.nodes += 1;
        if self.nodes > self.p.node_budget {
            self.aborted = true;
            return;
        }
        if self.bound() >= self.best {
            return;
        }
        let v = parts[r];
        let twin_follows = self.p.symmetry && r + 1 < parts.len() && parts[r + 1] == v;
        let equal_next = |g: usize| if twin_follows { g + 1 } else { 0 };

        for g in min_group..self.groups.len() {
            if self.loads[g] + v > self.p.bmax || self.groups[g].iter().any(|f| f.0 == id) {
                continue;
            }
            let before = self.p.group_cost(self.loads[g]);
            let after = self.p.group_cost(self.loads[g] + v);
            self.loads[g] += v;
            self.cost += after - before;
            self.remaining -= v;
            self.groups[g].push((id, v));
            let next_min = equal_next(g);
            self.assign(k, id, parts, r + 1, next_min);
            self.groups[g].pop();
            self.remaining += v;
            self.cost -= after - before;
            self.loads[g] -= v;
            if self.stop() {
                return;
            }
        }

        let g = self.groups.len();
        let added = self.p.group_cost(v);
        self.groups.push(vec![(id, v)]);
        self.loads.push(v);
        self.cost += added;
        self.remaining -= v;
        let next_min = equal_next(g);
        self.assign(k, id, parts, r + 1, next_min);
        self.remaining += v;
        self.cost -= added;
        self.loads.pop();
        self.groups.pop();
    }
}
