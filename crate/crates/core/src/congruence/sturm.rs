//! The Sturm coefficient-check threshold for modular forms.

use crate::arith::factorize;
use crate::error::{Error, Result};

/// Weight, level, and subgroup-index multiplier for a Sturm bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SturmInput {
    pub weight: u64,
    pub level: u64,
    /// Multiplier for forms living on an index-`index_factor` subgroup of the
    /// level's congruence group; 1 for the plain bound.
    pub index_factor: u64,
}

/// ceil( (weight/12) * N * prod_{p | N} (p+1)/p ) * index_factor,
/// evaluated exactly in integers.
pub fn sturm_bound(s: &SturmInput) -> Result<u64> {
    if s.weight == 0 || s.level == 0 || s.index_factor == 0 {
        return Err(Error::domain(
            "sturm_bound: weight, level, and index factor must be positive",
        ));
    }
    let mut num: u128 = s.weight as u128 * s.level as u128;
    let mut den: u128 = 12;
    for &(p, _) in factorize(s.level)?.factors() {
        num *= (p + 1) as u128;
        den *= p as u128;
    }
    let bound = num.div_ceil(den);
    Ok(bound as u64 * s.index_factor)
}
