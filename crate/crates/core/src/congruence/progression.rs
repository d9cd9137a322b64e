//! Verifying f(a n + b) = 0 (mod m) over a finite range, with pluggable
//! value backends so each congruence can be checked from two independent
//! sources (closed formula, DP table, or generating-function series).

use rayon::prelude::*;

use crate::arith::{is_square, is_twice_square};
use crate::error::Result;
use crate::Error;

/// The four progressions (a, b) whose nu_2, nu_3, and overpartition
/// congruences this crate verifies.
pub const FOUR_PROGRESSIONS: [(u64, u64); 4] = [(36, 30), (72, 42), (196, 70), (252, 114)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgressionStatus {
    Pass,
    Counterexample { n: u64, value: u64 },
}

/// Outcome of scanning one progression to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressionReport {
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    pub checked_bound: u64,
    pub status: ProgressionStatus,
}

impl ProgressionReport {
    pub fn passed(&self) -> bool {
        self.status == ProgressionStatus::Pass
    }
}

/// Check values(n) = 0 (mod modulus) for every n = b (mod a) with
/// 1 <= n <= bound; the report carries the smallest counterexample if any.
/// The accessor returns an error on a gap (an n it cannot produce), which
/// aborts the scan.
pub fn verify_progression<F>(
    values: F,
    a: u64,
    b: u64,
    modulus: u64,
    bound: u64,
) -> Result<ProgressionReport>
where
    F: Fn(u64) -> Result<u64> + Sync,
{
    if a == 0 {
        return Err(Error::domain("verify_progression: step must be >= 1"));
    }
    if b >= a {
        return Err(Error::domain(format!(
            "verify_progression: residue {b} must be below the step {a}"
        )));
    }
    if modulus < 2 {
        return Err(Error::domain("verify_progression: modulus must be >= 2"));
    }
    let terms: Vec<u64> = (0..)
        .map(|j| a * j + b)
        .skip(if b == 0 { 1 } else { 0 })
        .take_while(|&n| n <= bound)
        .collect();
    let status = scan_terms(&terms, &values, modulus)?;
    Ok(ProgressionReport {
        a,
        b,
        modulus,
        checked_bound: bound,
        status,
    })
}

/// The mod-8 overpartition scan: values(n) = 0 (mod 8) for every n <= bound
/// that is neither a square nor twice a square.
pub fn verify_kim<F>(values: F, bound: u64) -> Result<ProgressionReport>
where
    F: Fn(u64) -> Result<u64> + Sync,
{
    let terms: Vec<u64> = (1..=bound)
        .filter(|&n| !is_square(n) && !is_twice_square(n))
        .collect();
    let status = scan_terms(&terms, &values, 8)?;
    Ok(ProgressionReport {
        a: 1,
        b: 0,
        modulus: 8,
        checked_bound: bound,
        status,
    })
}

fn scan_terms<F>(terms: &[u64], values: &F, modulus: u64) -> Result<ProgressionStatus>
where
    F: Fn(u64) -> Result<u64> + Sync,
{
    let hit = terms
        .par_iter()
        .map(|&n| match values(n) {
            Ok(v) if v % modulus != 0 => Some(Ok((n, v))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .reduce(
            || None,
            |x, y| match (x, y) {
                (Some(Err(e)), _) | (_, Some(Err(e))) => Some(Err(e)),
                (Some(Ok(p)), Some(Ok(q))) => Some(Ok(if p.0 <= q.0 { p } else { q })),
                (Some(Ok(p)), None) | (None, Some(Ok(p))) => Some(Ok(p)),
                (None, None) => None,
            },
        );
    Ok(match hit {
        None => ProgressionStatus::Pass,
        Some(Ok((n, value))) => ProgressionStatus::Counterexample { n, value },
        Some(Err(e)) => return Err(e),
    })
}
