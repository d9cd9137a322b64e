//! The nu_3 parity reduction on the progression 36j + 30: after the known
//! mod-8 and mod-4 facts cancel the low-order terms of the nu_3 divisor-sum
//! identity, what remains is
//!
//!   nu_3(n) = -(1/2) sum_{k=1}^{n-1} d(k) sigma_1(n-k)
//!           + sum_{j+k+l = n, 0 < j < k < l distinct squares} d(j) d(k) d(l)
//!           + (1/2) sum_{k^2 <= (n-1)/2} d(k^2)^2 d(n - 2k^2)   (mod 2),
//!
//! with both sides congruent to 0. The halved sums are asserted even before
//! halving; an odd accumulator is a consistency failure, not a counterexample.

use crate::arith::DivisorTables;
use crate::error::{Error, Result};
use crate::partitions::NuTable;

/// d(n) = -sigma_2(n) (mod 12) on the progression n = 30 (mod 36).
pub fn d_sigma2_mod12_check(n: u64, tables: &DivisorTables) -> Result<bool> {
    if n % 36 != 30 {
        return Err(Error::domain(format!(
            "d_sigma2_mod12_check: n = {n} is not 30 mod 36"
        )));
    }
    Ok((tables.d(n)? + tables.sigma2(n)?) % 12 == 0)
}

/// Outcome of evaluating the reduction at one n: the nu_3 parity from the DP
/// table, the right side's parity, and the companion d = -sigma_2 (mod 12)
/// subcheck.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Nu3ReductionReport {
    pub n: u64,
    pub nu3_parity: u64,
    pub rhs_parity: u64,
    pub d_sigma2_ok: bool,
}

impl Nu3ReductionReport {
    /// The displayed congruence holds and both sides vanish.
    pub fn passed(&self) -> bool {
        self.nu3_parity == self.rhs_parity && self.nu3_parity == 0 && self.d_sigma2_ok
    }
}

/// Evaluate the reduction at n = 30 (mod 36). `nu` must be a table with
/// kmax >= 3 covering n; `tables` must cover n as well.
pub fn nu3_reduction_check(
    n: u64,
    tables: &DivisorTables,
    nu: &NuTable,
) -> Result<Nu3ReductionReport> {
    if n % 36 != 30 {
        return Err(Error::domain(format!(
            "nu3_reduction_check: n = {n} is not 30 mod 36"
        )));
    }
    if n > tables.bound() {
        return Err(Error::domain(format!(
            "nu3_reduction_check: n = {n} beyond table bound {}",
            tables.bound()
        )));
    }

    // S1 = sum d(k) sigma_1(n-k); must be even, halved before reduction
    let mut s1: u64 = 0;
    for k in 1..n {
        s1 += tables.d(k)? * tables.sigma1(n - k)?;
    }
    if s1 % 2 != 0 {
        return Err(Error::consistency(format!(
            "nu3_reduction_check: sum d(k) sigma_1(n-k) = {s1} is odd at n = {n}"
        )));
    }
    let h1 = (s1 / 2) % 2;

    // sum over n = a^2 + b^2 + c^2 with a < b < c of d(a^2) d(b^2) d(c^2)
    let mut triple: u64 = 0;
    let mut a = 1u64;
    while 3 * a * a < n {
        let mut b = a + 1;
        while a * a + 2 * b * b < n {
            let rest = n - a * a - b * b;
            let c = rest.isqrt();
            if c * c == rest && c > b {
                triple += tables.d(a * a)? * tables.d(b * b)? * tables.d(rest)?;
            }
            b += 1;
        }
        a += 1;
    }

    // S3 = sum_{2k^2 <= n-1} d(k^2)^2 d(n - 2k^2); even, halved
    let mut s3: u64 = 0;
    let mut k = 1u64;
    while 2 * k * k < n {
        let dk2 = tables.d(k * k)?;
        s3 += dk2 * dk2 * tables.d(n - 2 * k * k)?;
        k += 1;
    }
    if s3 % 2 != 0 {
        return Err(Error::consistency(format!(
            "nu3_reduction_check: sum d(k^2)^2 d(n-2k^2) = {s3} is odd at n = {n}"
        )));
    }
    let h3 = (s3 / 2) % 2;

    // minus signs vanish mod 2
    let rhs_parity = (h1 + triple + h3) % 2;
    let nu3_parity = nu.value(n, 3)? % 2;

    Ok(Nu3ReductionReport {
        n,
        nu3_parity,
        rhs_parity,
        d_sigma2_ok: d_sigma2_mod12_check(n, tables)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_divisor_tables, is_square};
    use crate::partitions::nu_table_dp;

    #[test]
    fn thirty_passes_and_contains_the_25_4_1_triple() {
        let tables = build_divisor_tables(100).unwrap();
        let nu = nu_table_dp(100, 3, Some(2)).unwrap();
        // 30 = 1 + 4 + 25 is its own three-distinct-squares decomposition
        assert!(is_square(1) && is_square(4) && is_square(25));
        let r = nu3_reduction_check(30, &tables, &nu).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn sixty_six_passes() {
        let tables = build_divisor_tables(100).unwrap();
        let nu = nu_table_dp(100, 3, Some(2)).unwrap();
        let r = nu3_reduction_check(66, &tables, &nu).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn off_progression_is_a_domain_error() {
        let tables = build_divisor_tables(100).unwrap();
        let nu = nu_table_dp(100, 3, Some(2)).unwrap();
        assert!(nu3_reduction_check(31, &tables, &nu).is_err());
        assert!(d_sigma2_mod12_check(31, &tables).is_err());
    }

    #[test]
    fn d_sigma2_examples() {
        let tables = build_divisor_tables(1000).unwrap();
        for n in [30u64, 66, 102, 138, 966] {
            assert!(d_sigma2_mod12_check(n, &tables).unwrap(), "n = {n}");
        }
    }
}
