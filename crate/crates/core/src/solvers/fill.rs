use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Fill factor `f` of the CFFf placement rule, an exact rational in [1/2, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FillFactor(Ratio<u64>);

impl FillFactor {
    pub const HALF: FillFactor = FillFactor(Ratio::new_raw(1, 2));

    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::FillFactor(format!("{numer}/{denom}")));
        }
        let r = Ratio::new(numer, denom);
        if r < Ratio::new(1, 2) || r > Ratio::from_integer(1) {
            return Err(Error::FillFactor(format!("{numer}/{denom}")));
        }
        Ok(FillFactor(r))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `load <= capacity <= load / f`, evaluated exactly.
    pub fn accepts(&self, load: u128, capacity: u128) -> bool {
        load <= capacity && capacity * u128::from(self.numer()) <= load * u128::from(self.denom())
    }
}

impl Default for FillFactor {
    fn default() -> Self {
        FillFactor::HALF
    }
}

impl fmt::Display for FillFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Accepts `n/d` or a decimal such as `0.75`.
impl FromStr for FillFactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::FillFactor(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse::<u64>().map_err(|_| bad())?;
            let d = d.trim().parse::<u64>().map_err(|_| bad())?;
            return FillFactor::new(n, d).map_err(|_| bad());
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(bad());
        }
        let denom = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_v: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let numer = int
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac_v))
            .ok_or_else(bad)?;
        FillFactor::new(numer, denom).map_err(|_| bad())
    }
}
