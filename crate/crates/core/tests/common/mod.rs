//! Helpers shared by the integration tests: tiny-instance sampling and
//! naive reference implementations written without the library's internals.

#![allow(dead_code)]

use rand::Rng;
use vscif::instgen::{gen_classes, GenConfig};
use vscif::{BinClass, CostModel, Instance, Packing};

/// Bin contents as plain size lists.
pub fn contents(p: &Packing) -> Vec<Vec<u64>> {
    p.bins.iter().map(|b| b.fragments.iter().map(|f| f.size).collect()).collect()
}

pub fn linear(items: &[u64], caps: &[u64], d: u32) -> Instance {
    Instance::new(items.iter().copied(), caps.iter().map(|&c| BinClass::linear(c)), d, CostModel::Linear).unwrap()
}

/// Classes with `b_max` on top, drawn the same way as the generator.
pub fn classes<R: Rng>(rng: &mut R, m: usize, b_max: u64, cost: CostModel) -> Vec<BinClass> {
    let cfg = GenConfig { m, b_max, item_low: 1, item_high: 1, cost_model: cost, ..GenConfig::default() };
    gen_classes(&cfg, rng).unwrap()
}

pub struct TinyShape {
    pub max_items: usize,
    pub max_size: u64,
    pub max_classes: usize,
    pub cut_limits: std::ops::RangeInclusive<u32>,
    /// Every item fits the largest bin whole.
    pub strong: bool,
}

impl Default for TinyShape {
    fn default() -> Self {
        TinyShape { max_items: 5, max_size: 12, max_classes: 3, cut_limits: 0..=2, strong: false }
    }
}

/// A random feasible instance of the given shape.
pub fn tiny<R: Rng>(rng: &mut R, shape: &TinyShape) -> Instance {
    loop {
        let b_max = rng.random_range(3..=shape.max_size);
        let m = rng.random_range(1..=shape.max_classes.min(b_max as usize));
        let cost = if rng.random_bool(0.5) { CostModel::Linear } else { CostModel::Monotone };
        let d = rng.random_range(shape.cut_limits.clone());
        let n = rng.random_range(1..=shape.max_items);
        let top = if shape.strong { b_max } else { shape.max_size };
        let items: Vec<u64> = (0..n).map(|_| rng.random_range(1..=top)).collect();
        if let Ok(inst) = Instance::new(items, classes(rng, m, b_max, cost), d, cost) {
            return inst;
        }
    }
}

pub fn naive_ff(sizes: &[u64], cap: u64) -> Vec<Vec<u64>> {
    let mut bins: Vec<Vec<u64>> = Vec::new();
    for &s in sizes {
        match bins.iter_mut().find(|b| b.iter().sum::<u64>() + s <= cap) {
            Some(b) => b.push(s),
            None => bins.push(vec![s]),
        }
    }
    bins
}

pub fn naive_ffd(sizes: &[u64], cap: u64) -> Vec<Vec<u64>> {
    let mut sorted = sizes.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    naive_ff(&sorted, cap)
}

/// Next Fit, cutting an item at the bin boundary when cuts are allowed.
pub fn naive_nfc(sizes: &[u64], cap: u64, cut: bool) -> Vec<Vec<u64>> {
    let mut bins: Vec<Vec<u64>> = Vec::new();
    for &s in sizes {
        let room = bins.last().map_or(0, |b| cap - b.iter().sum::<u64>());
        if s <= room {
            bins.last_mut().unwrap().push(s);
        } else if cut && room > 0 {
            bins.last_mut().unwrap().push(room);
            bins.push(vec![s - room]);
        } else {
            bins.push(vec![s]);
        }
    }
    bins
}

/// Pieces of CFF: the fewest near-equal parts fitting `cap`, larger first.
pub fn naive_cff_pieces(sizes: &[u64], cap: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for &s in sizes {
        let k = s.div_ceil(cap);
        for j in 0..k {
            out.push(s / k + u64::from(j < s % k));
        }
    }
    out
}

/// Multisets of at most `parts` positive integers summing to `n`,
/// non-increasing.
fn splits(n: u64, parts: u32, max_part: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    if parts == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in splits(n - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Brute force over every split of every item and every set partition of the
/// resulting fragments. Each block is priced by `price(load)`; `None` means
/// no bin holds it.
pub fn brute_force(inst: &Instance, price: &dyn Fn(u64) -> Option<u64>) -> u64 {
    let per_item: Vec<Vec<Vec<u64>>> = inst
        .items()
        .iter()
        .map(|it| splits(it.size, inst.cut_limit() + 1, it.size))
        .collect();
    let mut best = u64::MAX;
    let mut chosen = Vec::new();
    choose(&per_item, 0, &mut chosen, price, &mut best);
    best
}

fn choose(
    per_item: &[Vec<Vec<u64>>],
    i: usize,
    chosen: &mut Vec<u64>,
    price: &dyn Fn(u64) -> Option<u64>,
    best: &mut u64,
) {
    if i == per_item.len() {
        let mut blocks = Vec::new();
        partition(chosen, 0, &mut blocks, price, best);
        return;
    }
    for split in &per_item[i] {
        let len = chosen.len();
        chosen.extend(split);
        choose(per_item, i + 1, chosen, price, best);
        chosen.truncate(len);
    }
}

fn partition(frags: &[u64], i: usize, blocks: &mut Vec<u64>, price: &dyn Fn(u64) -> Option<u64>, best: &mut u64) {
    let cost: Option<u64> = blocks.iter().map(|&l| price(l)).sum();
    let Some(cost) = cost else { return };
    if cost >= *best {
        return;
    }
    if i == frags.len() {
        *best = cost;
        return;
    }
    for b in 0..blocks.len() {
        blocks[b] += frags[i];
        partition(frags, i + 1, blocks, price, best);
        blocks[b] -= frags[i];
    }
    blocks.push(frags[i]);
    partition(frags, i + 1, blocks, price, best);
    blocks.pop();
}

/// Cheapest class able to hold `load`.
pub fn class_price(inst: &Instance) -> impl Fn(u64) -> Option<u64> + '_ {
    move |load| inst.classes().iter().filter(|c| c.capacity >= load).map(|c| c.cost).min()
}

/// One unit per bin of the largest class.
pub fn bin_price(inst: &Instance) -> impl Fn(u64) -> Option<u64> + '_ {
    move |load| (load <= inst.max_capacity()).then_some(1)
}
