//! Counting representations n = x^2 + p y^2 with p prime and a parity
//! condition on s_p(y), optionally restricted to residue classes of p and y.
//!
//! These counts are the independent search path that the sigma-dissection
//! product series are checked against: a coefficient built from divisor sums
//! must have the parity of a count found by explicit enumeration.

use std::collections::BTreeSet;

use crate::arith::PrimeSieve;
use crate::error::{Error, Result};

/// Required parity of the exponent of p inside y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationParity {
    Even,
    Odd,
}

impl ValuationParity {
    fn matches(self, e: u32) -> bool {
        match self {
            ValuationParity::Even => e % 2 == 0,
            ValuationParity::Odd => e % 2 == 1,
        }
    }
}

/// Residue-class constraints on the p y^2 part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartConstraint {
    /// The modulus the residue sets live in.
    pub residue_modulus: u64,
    /// Admissible residues of the prime p; `None` = unconstrained.
    pub p_residues: Option<BTreeSet<u64>>,
    /// Admissible residues of y; `None` = unconstrained.
    pub y_residues: Option<BTreeSet<u64>>,
    /// Required parity of s_p(y).
    pub parity: ValuationParity,
}

impl PartConstraint {
    /// No residue constraints, even valuation — the plain counting condition.
    pub fn even_unconstrained() -> Self {
        PartConstraint {
            residue_modulus: 1,
            p_residues: None,
            y_residues: None,
            parity: ValuationParity::Even,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.residue_modulus == 0 {
            return Err(Error::domain("residue modulus must be >= 1"));
        }
        for (name, set) in [("p", &self.p_residues), ("y", &self.y_residues)] {
            if let Some(s) = set {
                if s.iter().any(|&r| r >= self.residue_modulus) {
                    return Err(Error::domain(format!(
                        "{name}-residue set contains a value >= modulus {}",
                        self.residue_modulus
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A full representation-counting query for n = x^2 + p y^2 with x, y >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationQuery {
    pub n: u64,
    pub constraint: PartConstraint,
}

impl RepresentationQuery {
    pub fn even_unconstrained(n: u64) -> Self {
        RepresentationQuery {
            n,
            constraint: PartConstraint::even_unconstrained(),
        }
    }
}

/// Number of pairs (p, y) with p prime, y >= 1, p y^2 = m, satisfying the
/// constraint. The sieve must cover m.
pub fn count_prime_square_parts(m: u64, c: &PartConstraint, sieve: &PrimeSieve) -> Result<u64> {
    c.validate()?;
    if m > sieve.limit() {
        return Err(Error::domain(format!(
            "count_prime_square_parts: m = {m} beyond sieve limit {}",
            sieve.limit()
        )));
    }
    let mm = c.residue_modulus;
    let mut count = 0u64;
    let mut y = 1u64;
    while y * y <= m {
        if m % (y * y) == 0 {
            let p = m / (y * y);
            if sieve.is_prime(p)
                && c.parity.matches(sieve.valuation(p, y))
                && c.p_residues.as_ref().is_none_or(|s| s.contains(&(p % mm)))
                && c.y_residues.as_ref().is_none_or(|s| s.contains(&(y % mm)))
            {
                count += 1;
            }
        }
        y += 1;
    }
    Ok(count)
}

/// Number of triples (x, p, y), x >= 1, y >= 1, p prime, with
/// n = x^2 + p y^2 and the query's constraint on the p y^2 part.
///
/// x = 0 is excluded: the convolution sums these counts mirror pair k with
/// n - k for 1 <= k <= n-1, so both parts of the representation are positive.
pub fn rep_count(q: &RepresentationQuery, sieve: &PrimeSieve) -> Result<u64> {
    if q.n == 0 {
        return Err(Error::domain("rep_count: n must be positive"));
    }
    let mut total = 0u64;
    let mut x = 1u64;
    while x * x < q.n {
        total += count_prime_square_parts(q.n - x * x, &q.constraint, sieve)?;
        x += 1;
    }
    Ok(total)
}

/// The twelve residue families of representations 36j + 30 = x^2 + p y^2:
/// (x class mod 18, p class mod 36, y class mod 18), all up to sign, with
/// s_p(y) even. The only even class is p = 2 itself (2 is the one prime
/// = 2 mod 36).
const MOD36_FAMILIES: [(u64, u64, u64); 12] = [
    (1, 29, 1),
    (1, 17, 5),
    (1, 5, 7),
    (7, 17, 1),
    (7, 5, 5),
    (7, 29, 7),
    (5, 5, 1),
    (5, 29, 5),
    (5, 17, 7),
    (2, 2, 7),
    (4, 2, 5),
    (8, 2, 1),
];

fn in_pm_class(v: u64, eps: u64, m: u64) -> bool {
    let r = v % m;
    r == eps || r == m - eps
}

/// Representation count of n across the twelve mod-36 families. The family
/// residues force x^2 + p y^2 = 30 (mod 36), so the count is zero off that
/// progression; on it, every unconstrained representation falls in exactly
/// one family.
pub fn mod36_family_rep_count(n: u64, sieve: &PrimeSieve) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("mod36_family_rep_count: n must be positive"));
    }
    if n > sieve.limit() {
        return Err(Error::domain(format!(
            "mod36_family_rep_count: n = {n} beyond sieve limit {}",
            sieve.limit()
        )));
    }
    let mut total = 0u64;
    for &(x_eps, p_class, y_eps) in &MOD36_FAMILIES {
        let mut x = 1u64;
        while x * x < n {
            if in_pm_class(x, x_eps, 18) {
                let m = n - x * x;
                let mut y = 1u64;
                while y * y <= m {
                    if in_pm_class(y, y_eps, 18) && m % (y * y) == 0 {
                        let p = m / (y * y);
                        if p % 36 == p_class && sieve.is_prime(p) && sieve.valuation(p, y) % 2 == 0
                        {
                            total += 1;
                        }
                    }
                    y += 1;
                }
            }
            x += 1;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve() -> PrimeSieve {
        PrimeSieve::new(5000).unwrap()
    }

    /// Fully independent brute force: iterate x and y, factor out y^2, check
    /// primality by trial division.
    fn brute_rep_count(n: u64) -> u64 {
        let mut c = 0;
        for x in 1..n {
            if x * x >= n {
                break;
            }
            let m = n - x * x;
            for y in 1..=m {
                if y * y > m {
                    break;
                }
                if m % (y * y) == 0 {
                    let p = m / (y * y);
                    if crate::arith::is_prime(p)
                        && crate::arith::prime_valuation(p, y).unwrap() % 2 == 0
                    {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn unconstrained_examples() {
        let s = sieve();
        // 30 = 1 + 29*1 = 25 + 5*1
        assert_eq!(
            rep_count(&RepresentationQuery::even_unconstrained(30), &s).unwrap(),
            2
        );
        // 66 = 16 + 2*25 = 25 + 41 = 49 + 17 = 64 + 2*1
        assert_eq!(
            rep_count(&RepresentationQuery::even_unconstrained(66), &s).unwrap(),
            4
        );
    }

    #[test]
    fn matches_brute_force_search() {
        let s = sieve();
        for n in 2..600u64 {
            assert_eq!(
                rep_count(&RepresentationQuery::even_unconstrained(n), &s).unwrap(),
                brute_rep_count(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn rep_parity_is_even_on_both_theorem_progressions() {
        let s = sieve();
        for n in (30..5000u64).step_by(36) {
            let c = rep_count(&RepresentationQuery::even_unconstrained(n), &s).unwrap();
            assert_eq!(c % 2, 0, "odd representation count at {n}");
        }
        for n in (14..5000u64).step_by(16) {
            let c = rep_count(&RepresentationQuery::even_unconstrained(n), &s).unwrap();
            assert_eq!(c % 2, 0, "odd representation count at {n}");
        }
    }

    #[test]
    fn constrained_family_with_no_valid_prime_counts_zero() {
        // n = 6: only representation is 1 + 5*1, and 5 = 5 (mod 8);
        // demanding p = 3 (mod 8) leaves nothing.
        let s = sieve();
        let q = RepresentationQuery {
            n: 6,
            constraint: PartConstraint {
                residue_modulus: 8,
                p_residues: Some([3u64].into_iter().collect()),
                y_residues: None,
                parity: ValuationParity::Even,
            },
        };
        assert_eq!(rep_count(&q, &s).unwrap(), 0);
        let q5 = RepresentationQuery {
            n: 6,
            constraint: PartConstraint {
                residue_modulus: 8,
                p_residues: Some([5u64].into_iter().collect()),
                y_residues: None,
                parity: ValuationParity::Even,
            },
        };
        assert_eq!(rep_count(&q5, &s).unwrap(), 1);
    }

    #[test]
    fn valuation_parity_filters() {
        let s = sieve();
        // 12 = 3 * 2^2: s_3(2) = 0 even; 3 * 4 with y = 2
        let even = count_prime_square_parts(12, &PartConstraint::even_unconstrained(), &s).unwrap();
        assert_eq!(even, 1);
        // 27 = 3 * 3^2: s_3(3) = 1 odd
        let c27 = count_prime_square_parts(27, &PartConstraint::even_unconstrained(), &s).unwrap();
        assert_eq!(c27, 0);
        let odd = PartConstraint {
            parity: ValuationParity::Odd,
            ..PartConstraint::even_unconstrained()
        };
        assert_eq!(count_prime_square_parts(27, &odd, &s).unwrap(), 1);
    }

    #[test]
    fn families_cover_the_progression_and_nothing_else() {
        let s = sieve();
        for n in 2..2000u64 {
            let fam = mod36_family_rep_count(n, &s).unwrap();
            if n % 36 == 30 {
                assert_eq!(
                    fam,
                    rep_count(&RepresentationQuery::even_unconstrained(n), &s).unwrap(),
                    "family total differs from unconstrained count at {n}"
                );
            } else {
                assert_eq!(fam, 0, "family count leaked off-progression at {n}");
            }
        }
    }

    #[test]
    fn residue_set_validation() {
        let s = sieve();
        let bad = PartConstraint {
            residue_modulus: 8,
            p_residues: Some([9u64].into_iter().collect()),
            y_residues: None,
            parity: ValuationParity::Even,
        };
        assert!(count_prime_square_parts(10, &bad, &s).is_err());
    }
}
