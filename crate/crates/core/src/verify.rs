//! Cost evaluation and independent packing verification.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Instance, Packing};
use crate::scalar::{checked_sum, Size};

/// Sum of the class costs of all opened bins.
pub fn total_cost<S: Size>(packing: &Packing<S>, instance: &Instance<S>) -> Result<S> {
    let classes = instance.classes();
    packing.bins.iter().try_fold(S::zero(), |acc, bin| {
        let class = classes.get(bin.class_index).ok_or_else(|| {
            Error::Structural(format!(
                "class index {} out of range ({} classes)",
                bin.class_index,
                classes.len()
            ))
        })?;
        acc.add_checked(class.cost)
    })
}

/// Total size of all items.
pub fn item_mass<S: Size>(instance: &Instance<S>) -> S {
    // Overflow is ruled out when the instance is constructed.
    checked_sum(instance.items().iter().map(|it| it.size)).expect("mass checked at construction")
}

/// Violation categories, listed in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    UnknownClass,
    CapacityOverflow,
    MassMismatch,
    CutLimitExceeded,
    UnknownItem,
    EmptyBin,
    EmptyFragment,
    CostOverflow,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::UnknownClass => "unknown-class",
            ViolationKind::CapacityOverflow => "capacity-overflow",
            ViolationKind::MassMismatch => "mass-mismatch",
            ViolationKind::CutLimitExceeded => "cut-limit-exceeded",
            ViolationKind::UnknownItem => "unknown-item",
            ViolationKind::EmptyBin => "empty-bin",
            ViolationKind::EmptyFragment => "empty-fragment",
            ViolationKind::CostOverflow => "cost-overflow",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<S> {
    Valid { cost: S },
    Invalid(Violation),
}

impl<S: Size> Verdict<S> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }

    pub fn cost(&self) -> Option<S> {
        match self {
            Verdict::Valid { cost } => Some(*cost),
            Verdict::Invalid(_) => None,
        }
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Valid { .. } => None,
            Verdict::Invalid(v) => Some(v),
        }
    }
}

fn invalid<S>(kind: ViolationKind, detail: String) -> Verdict<S> {
    Verdict::Invalid(Violation { kind, detail })
}

/// Checks a packing against an instance, reporting the first violation found.
///
/// Categories are checked in a fixed order: class indices, capacity, item
/// mass, cut limit, unknown items, empty bins, zero-size fragments. Within a
/// category the lowest bin (or item) index is reported.
pub fn verify_packing<S: Size>(packing: &Packing<S>, instance: &Instance<S>) -> Verdict<S> {
    let classes = instance.classes();
    let n = instance.items().len();

    for (b, bin) in packing.bins.iter().enumerate() {
        if bin.class_index >= classes.len() {
            return invalid(
                ViolationKind::UnknownClass,
                format!("bin {b} refers to class {} of {}", bin.class_index, classes.len()),
            );
        }
    }

    for (b, bin) in packing.bins.iter().enumerate() {
        let cap = classes[bin.class_index].capacity;
        let load = checked_sum(bin.fragments.iter().map(|f| f.size));
        match load {
            Ok(load) if load <= cap => {}
            Ok(load) => {
                return invalid(
                    ViolationKind::CapacityOverflow,
                    format!("bin {b} holds {load} > capacity {cap}"),
                )
            }
            Err(_) => {
                return invalid(
                    ViolationKind::CapacityOverflow,
                    format!("bin {b} load overflows the size type (capacity {cap})"),
                )
            }
        }
    }

    let mut placed = vec![S::zero(); n + 1];
    let mut pieces = vec![0u64; n + 1];
    let mut unknown = None;
    for (b, bin) in packing.bins.iter().enumerate() {
        for f in &bin.fragments {
            if f.parent == 0 || f.parent > n {
                unknown.get_or_insert((b, f.parent));
                continue;
            }
            placed[f.parent] = match placed[f.parent].checked_add(&f.size) {
                Some(v) => v,
                None => {
                    return invalid(
                        ViolationKind::MassMismatch,
                        format!("fragments of item {} overflow the size type", f.parent),
                    )
                }
            };
            pieces[f.parent] += 1;
        }
    }
    for item in instance.items() {
        if placed[item.id] != item.size {
            return invalid(
                ViolationKind::MassMismatch,
                format!("item {} has size {} but {} is packed", item.id, item.size, placed[item.id]),
            );
        }
    }
    let d = u64::from(instance.cut_limit());
    for item in instance.items() {
        if pieces[item.id] > d + 1 {
            return invalid(
                ViolationKind::CutLimitExceeded,
                format!(
                    "item {} is cut into {} fragments, limit is {}",
                    item.id,
                    pieces[item.id],
                    d + 1
                ),
            );
        }
    }
    if let Some((b, parent)) = unknown {
        return invalid(
            ViolationKind::UnknownItem,
            format!("bin {b} holds a fragment of unknown item {parent}"),
        );
    }
    if let Some(b) = packing.bins.iter().position(|bin| bin.fragments.is_empty()) {
        return invalid(ViolationKind::EmptyBin, format!("bin {b} is empty"));
    }
    for (b, bin) in packing.bins.iter().enumerate() {
        if let Some(f) = bin.fragments.iter().find(|f| f.size.is_zero()) {
            return invalid(
                ViolationKind::EmptyFragment,
                format!("bin {b} holds a zero-size fragment of item {}", f.parent),
            );
        }
    }

    match total_cost(packing, instance) {
        Ok(cost) => Verdict::Valid { cost },
        Err(e) => invalid(ViolationKind::CostOverflow, e.to_string()),
    }
}
