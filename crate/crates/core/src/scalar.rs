//! The integer scalar that sizes, capacities and costs are expressed in.
//!
//! Every structure in the crate is generic over [`Size`]; the aliases at the
//! crate root fix it to `u64`. Arithmetic on sizes goes through the checked
//! helpers below so that overflow surfaces as [`Error::Overflow`] instead of
//! wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Unsigned integer type usable for item sizes, bin capacities and costs.
pub trait Size:
    PrimInt + Unsigned + Hash + Debug + Display + Default + Send + Sync + Serialize + DeserializeOwned + 'static
{
    fn add_checked(self, rhs: Self) -> Result<Self> {
        self.checked_add(&rhs).ok_or(Error::Overflow)
    }

    fn mul_checked(self, rhs: Self) -> Result<Self> {
        self.checked_mul(&rhs).ok_or(Error::Overflow)
    }

    /// `ceil(self / rhs)`; `rhs` must be non-zero.
    fn div_ceil_int(self, rhs: Self) -> Self {
        let q = self / rhs;
        if q * rhs == self {
            q
        } else {
            q + Self::one()
        }
    }

    fn from_u64(v: u64) -> Result<Self> {
        <Self as num_traits::NumCast>::from(v).ok_or(Error::Overflow)
    }

    /// Widening conversion used for cross-multiplied comparisons.
    fn wide(self) -> u128 {
        self.to_u128().expect("unsigned scalar fits in u128")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("unsigned scalar converts to f64")
    }
}

impl<T> Size for T where
    T: PrimInt + Unsigned + Hash + Debug + Display + Default + Send + Sync + Serialize + DeserializeOwned + 'static
{
}

/// Checked sum of an iterator of sizes.
pub fn checked_sum<S: Size>(it: impl IntoIterator<Item = S>) -> Result<S> {
    it.into_iter().try_fold(S::zero(), |acc, v| acc.add_checked(v))
}
