//! Empirical scanner for candidate progressions (a, b) on which a target
//! sequence vanishes modulo a given modulus for all terms up to a bound.
//!
//! Every reported candidate is annotated with the three companion conditions
//! observed to accompany genuine congruences: sigma_1 = 0 (mod 8) on the
//! progression, d(n) = d(n/2)^2 (mod 8) on its even terms, and the
//! progression avoiding the attainable residues of x^2 + y^2 mod a. A
//! candidate with a false flag is reported anyway — the flags are evidence
//! to inspect, not a filter.

use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::{attainable_residues, build_divisor_tables, ResidueForm};
use crate::error::{Error, Result};
use crate::partitions::{nu2_formula, nu_table_dp, overpartition_table};

pub const SCAN_AMAX_CAP: u64 = 4096;
pub const SCAN_BOUND_CAP: u64 = 50_000;

/// Which sequence the scanner tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanTarget {
    Nu2,
    Nu3,
    Overpartition,
}

impl ScanTarget {
    pub fn default_modulus(self) -> u64 {
        match self {
            ScanTarget::Nu2 => 4,
            ScanTarget::Nu3 => 2,
            ScanTarget::Overpartition => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScanTarget::Nu2 => "nu2",
            ScanTarget::Nu3 => "nu3",
            ScanTarget::Overpartition => "overpartition",
        }
    }
}

impl FromStr for ScanTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu2" | "nu2-mod4" => Ok(ScanTarget::Nu2),
            "nu3" | "nu3-mod2" => Ok(ScanTarget::Nu3),
            "overpartition" | "op-mod16" | "overpartition-mod16" => Ok(ScanTarget::Overpartition),
            other => Err(Error::domain(format!("unknown scan target: {other}"))),
        }
    }
}

/// A progression on which the target vanished for every term checked,
/// together with the three companion-condition flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanCandidate {
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    /// sigma_1(n) = 0 (mod 8) for every term n <= bound.
    pub sigma1_mod8: bool,
    /// d(n) = d(n/2)^2 (mod 8) for every even term n <= bound.
    pub d_half_square: bool,
    /// b is not an attainable residue of x^2 + y^2 mod a, so no term is a
    /// sum of two squares.
    pub avoids_two_squares: bool,
}

impl ScanCandidate {
    pub fn all_flags(&self) -> bool {
        self.sigma1_mod8 && self.d_half_square && self.avoids_two_squares
    }
}

/// Scan all progressions with a <= amax against the target sequence, testing
/// each modulus in `moduli` (the target's customary modulus when empty).
/// Candidates come back sorted by (modulus, a, b).
pub fn scan_progressions(
    amax: u64,
    bound: u64,
    target: ScanTarget,
    moduli: &[u64],
) -> Result<Vec<ScanCandidate>> {
    if amax == 0 || bound == 0 {
        return Err(Error::domain("scan: amax and bound must be >= 1"));
    }
    if amax > SCAN_AMAX_CAP || bound > SCAN_BOUND_CAP {
        return Err(Error::resource(format!(
            "scan: amax {amax} / bound {bound} exceed caps {SCAN_AMAX_CAP} / {SCAN_BOUND_CAP}"
        )));
    }
    let mut moduli: Vec<u64> = if moduli.is_empty() {
        vec![target.default_modulus()]
    } else {
        moduli.to_vec()
    };
    moduli.sort_unstable();
    moduli.dedup();
    if moduli.iter().any(|&m| m < 2) {
        return Err(Error::domain("scan: moduli must be >= 2"));
    }
    let lcm = moduli
        .iter()
        .try_fold(1u64, |acc, &m| {
            let g = gcd(acc, m);
            acc.checked_mul(m / g)
        })
        .ok_or_else(|| Error::domain("scan: moduli lcm overflows"))?;

    // Values 0..=bound of the target sequence, reduced mod the lcm so every
    // requested modulus can be read off one table. Index 0 is unused.
    let values: Vec<u64> = match target {
        ScanTarget::Nu2 => {
            let tables = build_divisor_tables(bound)?;
            let mut v = vec![0u64; bound as usize + 1];
            v.par_iter_mut()
                .enumerate()
                .skip(1)
                .try_for_each(|(n, slot)| -> Result<()> {
                    *slot = nu2_formula(n as u64, &tables)? % lcm;
                    Ok(())
                })?;
            v
        }
        ScanTarget::Nu3 => {
            let table = nu_table_dp(bound, 3, Some(lcm.max(2)))?;
            let mut v = vec![0u64; bound as usize + 1];
            for n in 1..=bound {
                v[n as usize] = table.value(n, 3)?;
            }
            v
        }
        ScanTarget::Overpartition => overpartition_table(bound, lcm.max(2))?
            .into_iter()
            .map(|x| x % lcm)
            .collect(),
    };

    let tables = build_divisor_tables(bound)?;

    let mut candidates: Vec<ScanCandidate> = Vec::new();
    for &modulus in &moduli {
        let found: Vec<ScanCandidate> = (1..=amax)
            .into_par_iter()
            .flat_map_iter(|a| {
                let values = &values;
                let tables = &tables;
                (0..a).filter_map(move |b| {
                    let mut terms = (0..)
                        .map(|j| a * j + b)
                        .skip(usize::from(b == 0))
                        .take_while(|&n| n <= bound)
                        .peekable();
                    terms.peek()?;
                    if terms.clone().any(|n| values[n as usize] % modulus != 0) {
                        return None;
                    }
                    let sigma1_mod8 = terms
                        .clone()
                        .all(|n| tables.sigma1(n).is_ok_and(|s| s % 8 == 0));
                    let d_half_square = terms
                        .clone()
                        .filter(|n| n % 2 == 0)
                        .all(|n| crate::arith::check_d_half_square(n).unwrap_or(false));
                    let avoids_two_squares = attainable_residues(a, ResidueForm::SumOfTwoSquares)
                        .map(|set| !set.contains(&b))
                        .unwrap_or(false);
                    Some(ScanCandidate {
                        a,
                        b,
                        modulus,
                        sigma1_mod8,
                        d_half_square,
                        avoids_two_squares,
                    })
                })
            })
            .collect();
        candidates.extend(found);
    }
    candidates.sort_by_key(|c| (c.modulus, c.a, c.b));
    Ok(candidates)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu2_scan_finds_the_known_progressions_with_all_flags() {
        let candidates = scan_progressions(40, 3000, ScanTarget::Nu2, &[]).unwrap();
        for want in [(16u64, 14u64), (36, 30)] {
            let c = candidates
                .iter()
                .find(|c| (c.a, c.b) == want)
                .unwrap_or_else(|| panic!("missing candidate {want:?}"));
            assert!(c.all_flags(), "{c:?}");
        }
    }

    #[test]
    fn odd_moduli_scan_comes_back_empty_at_desk_scale() {
        let candidates = scan_progressions(24, 2000, ScanTarget::Nu2, &[3, 5, 7]).unwrap();
        assert!(candidates.is_empty(), "{candidates:?}");
    }

    #[test]
    fn nu3_scan_contains_36_30() {
        let candidates = scan_progressions(36, 2000, ScanTarget::Nu3, &[]).unwrap();
        assert!(candidates.iter().any(|c| (c.a, c.b) == (36, 30)));
    }

    #[test]
    fn caps_are_resource_errors() {
        assert!(matches!(
            scan_progressions(SCAN_AMAX_CAP + 1, 10, ScanTarget::Nu2, &[]),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            scan_progressions(10, SCAN_BOUND_CAP + 1, ScanTarget::Nu2, &[]),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn target_parsing() {
        assert_eq!("nu2-mod4".parse::<ScanTarget>().unwrap(), ScanTarget::Nu2);
        assert_eq!("nu3-mod2".parse::<ScanTarget>().unwrap(), ScanTarget::Nu3);
        assert_eq!(
            "op-mod16".parse::<ScanTarget>().unwrap(),
            ScanTarget::Overpartition
        );
        assert!("nu17".parse::<ScanTarget>().is_err());
    }
}
