//! Domain types: items, bin classes, instances and packings.
//!
//! An [`Instance`] is validated on construction and immutable afterwards.
//! Bin classes are stored sorted by strictly decreasing capacity, so class
//! index 0 is always the largest bin.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{checked_sum, Size};

/// A unit of work to be packed. Ids are 1-based positions in the item list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Item<S> {
    pub id: usize,
    pub size: S,
}

/// A bin capacity together with the cost of opening one bin of that size.
/// Supply of every class is unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "S: Size")]
pub struct BinClass<S> {
    pub capacity: S,
    pub cost: S,
}

impl<S: Size> BinClass<S> {
    pub fn new(capacity: S, cost: S) -> Self {
        BinClass { capacity, cost }
    }

    /// Class whose cost equals its capacity.
    pub fn linear(capacity: S) -> Self {
        BinClass { capacity, cost: capacity }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostModel {
    /// cost = capacity for every class.
    Linear,
    /// Larger bins cost at least as much in total and at most as much per unit.
    Monotone,
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CostModel::Linear => "linear",
            CostModel::Monotone => "monotone",
        })
    }
}

impl std::str::FromStr for CostModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(CostModel::Linear),
            "monotone" => Ok(CostModel::Monotone),
            other => Err(Error::Config(format!("unknown cost model `{other}`"))),
        }
    }
}

impl CostModel {
    /// Checks the model against classes sorted by decreasing capacity.
    fn check<S: Size>(self, classes: &[BinClass<S>]) -> Result<()> {
        match self {
            CostModel::Linear => {
                if let Some(c) = classes.iter().find(|c| c.cost != c.capacity) {
                    return Err(Error::InvalidInstance(format!(
                        "linear cost model requires cost = capacity, class ({}, {}) violates it",
                        c.capacity, c.cost
                    )));
                }
            }
            CostModel::Monotone => {
                // Both orders are transitive on a capacity-sorted list, so
                // adjacent pairs suffice.
                for w in classes.windows(2) {
                    let (big, small) = (&w[0], &w[1]);
                    let unit_ok = big.cost.wide() * small.capacity.wide()
                        <= small.cost.wide() * big.capacity.wide();
                    if !unit_ok || small.cost > big.cost {
                        return Err(Error::InvalidInstance(format!(
                            "monotone cost model violated between classes ({}, {}) and ({}, {})",
                            big.capacity, big.cost, small.capacity, small.cost
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A validated packing problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<S> {
    items: Vec<Item<S>>,
    classes: Vec<BinClass<S>>,
    cut_limit: u32,
    cost_model: CostModel,
    known_optimum: Option<S>,
}

impl<S: Size> Instance<S> {
    /// Builds an instance from raw item sizes. Classes may come in any order;
    /// they are sorted by decreasing capacity and duplicates are rejected.
    pub fn new(
        sizes: impl IntoIterator<Item = S>,
        classes: impl IntoIterator<Item = BinClass<S>>,
        cut_limit: u32,
        cost_model: CostModel,
    ) -> Result<Self> {
        let items: Vec<Item<S>> = sizes
            .into_iter()
            .enumerate()
            .map(|(i, size)| Item { id: i + 1, size })
            .collect();
        let mut classes: Vec<BinClass<S>> = classes.into_iter().collect();
        classes.sort_by_key(|c| std::cmp::Reverse(c.capacity));

        if classes.is_empty() {
            return Err(Error::InvalidInstance("no bin classes".into()));
        }
        if let Some(c) = classes.iter().find(|c| c.capacity.is_zero() || c.cost.is_zero()) {
            return Err(Error::InvalidInstance(format!(
                "bin class ({}, {}) must have positive capacity and cost",
                c.capacity, c.cost
            )));
        }
        if let Some(w) = classes.windows(2).find(|w| w[0].capacity == w[1].capacity) {
            return Err(Error::InvalidInstance(format!(
                "duplicate bin capacity {}",
                w[0].capacity
            )));
        }
        if let Some(it) = items.iter().find(|it| it.size.is_zero()) {
            return Err(Error::InvalidInstance(format!("item {} has size 0", it.id)));
        }
        cost_model.check(&classes)?;

        let max_capacity = classes[0].capacity;
        let pieces = S::from_u64(u64::from(cut_limit) + 1).unwrap_or_else(|_| S::max_value());
        for it in &items {
            if it.size.div_ceil_int(pieces) > max_capacity {
                return Err(Error::Infeasible {
                    item: it.id,
                    size: it.size.to_string(),
                    pieces: pieces.to_string(),
                    max_capacity: max_capacity.to_string(),
                });
            }
        }
        checked_sum(items.iter().map(|it| it.size))?;

        Ok(Instance {
            items,
            classes,
            cut_limit,
            cost_model,
            known_optimum: None,
        })
    }

    pub fn with_known_optimum(mut self, optimum: Option<S>) -> Result<Self> {
        if optimum.is_some_and(|o| o.is_zero()) {
            return Err(Error::InvalidInstance("known optimum must be positive".into()));
        }
        self.known_optimum = optimum;
        Ok(self)
    }

    pub fn items(&self) -> &[Item<S>] {
        &self.items
    }

    pub fn classes(&self) -> &[BinClass<S>] {
        &self.classes
    }

    pub fn cut_limit(&self) -> u32 {
        self.cut_limit
    }

    pub fn cost_model(&self) -> CostModel {
        self.cost_model
    }

    pub fn known_optimum(&self) -> Option<S> {
        self.known_optimum
    }

    pub fn largest(&self) -> BinClass<S> {
        self.classes[0]
    }

    pub fn max_capacity(&self) -> S {
        self.classes[0].capacity
    }

    pub fn max_item_size(&self) -> Option<S> {
        self.items.iter().map(|it| it.size).max()
    }

    /// Item lookup by 1-based id.
    pub fn item(&self, id: usize) -> Option<&Item<S>> {
        id.checked_sub(1).and_then(|i| self.items.get(i))
    }

    /// Every item fits whole into the largest bin.
    pub fn satisfies_strong_hypothesis(&self) -> bool {
        self.max_item_size().is_none_or(|s| s <= self.max_capacity())
    }

    /// Cheapest class able to hold `load`, ties broken towards smaller capacity.
    pub fn cheapest_class_for(&self, load: S) -> Option<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.capacity >= load)
            .min_by(|(ia, a), (ib, b)| a.cost.cmp(&b.cost).then(ib.cmp(ia)))
            .map(|(i, _)| i)
    }
}

/// One piece of an item as placed in a bin. `piece` is 1-based within the parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "S: Size")]
pub struct Fragment<S> {
    pub parent: usize,
    pub piece: u32,
    pub size: S,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "S: Size")]
pub struct PackedBin<S> {
    pub class_index: usize,
    pub fragments: Vec<Fragment<S>>,
}

impl<S: Size> PackedBin<S> {
    pub fn new(class_index: usize) -> Self {
        PackedBin {
            class_index,
            fragments: Vec::new(),
        }
    }

    /// Sum of fragment sizes; saturates rather than overflowing since the
    /// verifier reports overflowing contents as a capacity violation anyway.
    pub fn load(&self) -> S {
        self.fragments
            .iter()
            .fold(S::zero(), |acc, f| acc.saturating_add(f.size))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "S: Size")]
pub struct Packing<S> {
    pub bins: Vec<PackedBin<S>>,
}

impl<S: Size> Packing<S> {
    pub fn new(bins: Vec<PackedBin<S>>) -> Self {
        Packing { bins }
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Number of fragments per item id (index 0 unused).
    pub fn fragment_counts(&self, n_items: usize) -> Vec<u32> {
        let mut counts = vec![0u32; n_items + 1];
        for f in self.bins.iter().flat_map(|b| &b.fragments) {
            if let Some(c) = counts.get_mut(f.parent) {
                *c += 1;
            }
        }
        counts
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(strip_comment_header(text))?)
    }
}

/// On-disk instance layout. Field order is part of the format.
#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Size")]
struct InstanceFile<S> {
    items: Vec<S>,
    classes: Vec<BinClass<S>>,
    cut_limit: u32,
    cost_model: CostModel,
    known_optimum: Option<S>,
}

impl<S: Size> Instance<S> {
    pub fn to_json(&self) -> Result<String> {
        let file = InstanceFile {
            items: self.items.iter().map(|it| it.size).collect(),
            classes: self.classes.clone(),
            cut_limit: self.cut_limit,
            cost_model: self.cost_model,
            known_optimum: self.known_optimum,
        };
        Ok(serde_json::to_string(&file)?)
    }

    /// Parses an instance file. Leading lines starting with `#` are treated
    /// as a comment header and skipped.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile<S> = serde_json::from_str(strip_comment_header(text))?;
        Instance::new(file.items, file.classes, file.cut_limit, file.cost_model)?
            .with_known_optimum(file.known_optimum)
    }
}

fn strip_comment_header(text: &str) -> &str {
    let mut rest = text;
    loop {
        let trimmed = rest.trim_start_matches(['\n', '\r', ' ', '\t']);
        if trimmed.starts_with('#') {
            rest = trimmed.find('\n').map_or("", |i| &trimmed[i + 1..]);
        } else {
            return trimmed;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(caps: &[u64]) -> Vec<BinClass<u64>> {
        caps.iter().map(|&c| BinClass::linear(c)).collect()
    }

    #[test]
    fn classes_are_sorted_decreasing() {
        let inst = Instance::new([1u64], linear(&[9, 16, 15]), 1, CostModel::Linear).unwrap();
        let caps: Vec<u64> = inst.classes().iter().map(|c| c.capacity).collect();
        assert_eq!(caps, [16, 15, 9]);
        assert_eq!(inst.max_capacity(), 16);
    }

    #[test]
    fn duplicate_capacities_rejected() {
        let err = Instance::new([1u64], linear(&[10, 10]), 1, CostModel::Linear).unwrap_err();
        assert!(matches!(err, Error::InvalidInstance(_)));
    }

    #[test]
    fn empty_classes_and_zero_sizes_rejected() {
        assert!(Instance::<u64>::new([1], vec![], 1, CostModel::Linear).is_err());
        assert!(Instance::new([0u64], linear(&[10]), 1, CostModel::Linear).is_err());
        assert!(Instance::new([1u64], [BinClass::new(10, 0)], 1, CostModel::Monotone).is_err());
    }

    #[test]
    fn feasibility_is_ceil_of_largest_piece() {
        // ceil(21 / 2) = 11 > 10
        assert!(matches!(
            Instance::new([21u64], linear(&[10]), 1, CostModel::Linear),
            Err(Error::Infeasible { item: 1, .. })
        ));
        assert!(Instance::new([20u64], linear(&[10]), 1, CostModel::Linear).is_ok());
        // D = 0 forbids any cut
        assert!(Instance::new([11u64], linear(&[10]), 0, CostModel::Linear).is_err());
        assert!(Instance::new([10u64], linear(&[10]), 0, CostModel::Linear).is_ok());
    }

    #[test]
    fn cost_models_are_checked() {
        assert!(Instance::new([1u64], [BinClass::new(10, 9)], 1, CostModel::Linear).is_err());
        // unit cost of the big bin 1.0 <= 6/5, small cost 6 <= 10
        assert!(Instance::new([1u64], [BinClass::new(10, 10), BinClass::new(5, 6)], 1, CostModel::Monotone).is_ok());
        // unit cost of the small bin is cheaper
        assert!(Instance::new([1u64], [BinClass::new(10, 10), BinClass::new(5, 4)], 1, CostModel::Monotone).is_err());
        // small bin dearer in absolute terms
        assert!(Instance::new([1u64], [BinClass::new(10, 10), BinClass::new(5, 11)], 1, CostModel::Monotone).is_err());
        // linear is a special case of monotone
        assert!(Instance::new([1u64], linear(&[10, 7, 3]), 1, CostModel::Monotone).is_ok());
    }

    #[test]
    fn empty_item_list_is_allowed() {
        let inst = Instance::<u64>::new([], linear(&[10]), 0, CostModel::Linear).unwrap();
        assert!(inst.items().is_empty());
        assert!(inst.satisfies_strong_hypothesis());
    }

    #[test]
    fn instance_json_layout() {
        let inst = Instance::new([13u64, 13], linear(&[5, 10]), 1, CostModel::Linear)
            .unwrap()
            .with_known_optimum(Some(30))
            .unwrap();
        let json = inst.to_json().unwrap();
        assert_eq!(
            json,
            r#"{"items":[13,13],"classes":[{"capacity":10,"cost":10},{"capacity":5,"cost":5}],"cut_limit":1,"cost_model":"linear","known_optimum":30}"#
        );
        let back = Instance::<u64>::from_json(&format!("# header line\n# another\n{json}")).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn null_known_optimum_parses() {
        let text = r#"{"items":[3],"classes":[{"capacity":4,"cost":4}],"cut_limit":0,"cost_model":"monotone","known_optimum":null}"#;
        let inst = Instance::<u32>::from_json(text).unwrap();
        assert_eq!(inst.known_optimum(), None);
        assert_eq!(inst.cost_model(), CostModel::Monotone);
    }

    #[test]
    fn packing_json_layout() {
        let p = Packing::new(vec![PackedBin {
            class_index: 0,
            fragments: vec![Fragment { parent: 1, piece: 1, size: 7u64 }],
        }]);
        let json = p.to_json().unwrap();
        assert_eq!(json, r#"{"bins":[{"class_index":0,"fragments":[{"parent":1,"piece":1,"size":7}]}]}"#);
        assert_eq!(Packing::<u64>::from_json(&json).unwrap(), p);
    }

    #[test]
    fn cheapest_class_prefers_smaller_on_ties() {
        let inst = Instance::new(
            [1u64],
            [BinClass::new(10, 10), BinClass::new(8, 10), BinClass::new(4, 6)],
            1,
            CostModel::Monotone,
        )
        .unwrap();
        assert_eq!(inst.cheapest_class_for(9), Some(0));
        assert_eq!(inst.cheapest_class_for(8), Some(1));
        assert_eq!(inst.cheapest_class_for(4), Some(2));
        assert_eq!(inst.cheapest_class_for(11), None);
    }
}
