//! Cost-minimising solvers for variable-sized bins with item fragmentation.
//!
//! * [`solve_ciffd`]: off-line, cut then iterated FFD repacking into smaller classes.
//! * [`solve_cfff`]: on-line, NFC stream for fitting items plus a fill-factor
//!   rule for the remainders of oversized ones.
//! * [`solve_cnfl`] / [`solve_cdnfl`]: greedy references that cut modulo the
//!   largest capacity and Next Fit into largest bins.

mod cfff;
mod ciffd;
mod fill;
mod greedy;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use cfff::{solve_cfff, solve_cfff_traced, CfffTrace, RemainderCategory};
pub use ciffd::{solve_ciffd, solve_ciffd_traced, CiffdTrace};
pub use fill::FillFactor;
pub use greedy::{solve_cdnfl, solve_cnfl};

use crate::auxiliary::renumber_pieces;
use crate::error::{Error, Result};
use crate::model::{Instance, Packing};
use crate::scalar::Size;
use crate::verify::total_cost;

/// A packing together with its cost and the number of cuts applied per item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<S> {
    pub packing: Packing<S>,
    pub cost: S,
    pub cuts_used: BTreeMap<usize, u32>,
}

impl<S: Size> SolveResult<S> {
    /// Renumbers pieces, recomputes the cost and counts cuts.
    pub(crate) fn from_packing(mut packing: Packing<S>, instance: &Instance<S>) -> Result<Self> {
        renumber_pieces(&mut packing);
        let cost = total_cost(&packing, instance)?;
        let counts = packing.fragment_counts(instance.items().len());
        let cuts_used = instance
            .items()
            .iter()
            .map(|it| (it.id, counts[it.id].saturating_sub(1)))
            .collect();
        Ok(SolveResult { packing, cost, cuts_used })
    }

    pub fn bin_count(&self) -> usize {
        self.packing.len()
    }
}

/// Solver selector used by the harness and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Algorithm {
    Ciffd,
    Cfff(FillFactor),
    Cnfl,
    Cdnfl,
}

impl Algorithm {
    pub fn solve<S: Size>(&self, instance: &Instance<S>) -> Result<SolveResult<S>> {
        match *self {
            Algorithm::Ciffd => solve_ciffd(instance),
            Algorithm::Cfff(f) => solve_cfff(instance, f),
            Algorithm::Cnfl => solve_cnfl(instance),
            Algorithm::Cdnfl => solve_cdnfl(instance),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Ciffd => f.write_str("ciffd"),
            Algorithm::Cfff(ff) if *ff == FillFactor::HALF => f.write_str("cfff"),
            Algorithm::Cfff(ff) => write!(f, "cfff:{ff}"),
            Algorithm::Cnfl => f.write_str("cnfl"),
            Algorithm::Cdnfl => f.write_str("cdnfl"),
        }
    }
}

/// `ciffd`, `cnfl`, `cdnfl`, `cfff` (f = 1/2) or `cfff:<f>`.
impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ciffd" => Ok(Algorithm::Ciffd),
            "cnfl" => Ok(Algorithm::Cnfl),
            "cdnfl" => Ok(Algorithm::Cdnfl),
            "cfff" => Ok(Algorithm::Cfff(FillFactor::HALF)),
            other => match other.strip_prefix("cfff:") {
                Some(f) => Ok(Algorithm::Cfff(f.parse()?)),
                None => Err(Error::Config(format!("unknown algorithm `{s}`"))),
            },
        }
    }
}

impl TryFrom<String> for Algorithm {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Algorithm> for String {
    fn from(a: Algorithm) -> String {
        a.to_string()
    }
}
