//! nu_k(n) — partitions of n with exactly k distinct part sizes — computed
//! three independent ways (exhaustive enumeration, a part-size DP, and the
//! divisor-sum closed forms), plus overpartition counts two ways, so each
//! route can serve as the others' oracle.

use std::io::{self, Write};

use crate::arith::DivisorTables;
use crate::error::{Error, Result};
use crate::qseries::{expand_eta_quotient, EtaQuotientSpec, SERIES_TRUNC_CAP};

/// Exhaustive enumeration stays under ~10^6 partitions at this cap.
pub const BRUTE_FORCE_CAP: u64 = 60;

/// Default number of tracked part-size counts for DP tables.
pub const DEFAULT_KMAX: u32 = 8;

/// Largest k that can occur for n: k distinct sizes need at least
/// 1 + 2 + ... + k = k(k+1)/2.
pub fn max_feasible_sizes(n: u64) -> u32 {
    let mut k = 0u64;
    while (k + 1) * (k + 2) / 2 <= n {
        k += 1;
    }
    k as u32
}

/// Counts of partitions of n by number of distinct part sizes, by exhaustive
/// enumeration. Entry k of the result is nu_k(n); entry 0 is zero for n >= 1.
pub fn nu_bruteforce_counts(n: u64, cap: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::domain("nu_bruteforce: n must be positive"));
    }
    if n > cap {
        return Err(Error::resource(format!(
            "nu_bruteforce: n = {n} exceeds the enumeration cap {cap}"
        )));
    }
    let mut counts = vec![0u64; max_feasible_sizes(n) as usize + 1];
    // Parts descend; entering a new (smaller) size bumps the distinct count.
    fn rec(rem: u64, max_part: u64, sizes: usize, counts: &mut [u64]) {
        if rem == 0 {
            counts[sizes] += 1;
            return;
        }
        for part in (1..=max_part.min(rem)).rev() {
            let mut used = part;
            while used <= rem {
                rec(rem - used, part - 1, sizes + 1, counts);
                used += part;
            }
        }
    }
    rec(n, n, 0, &mut counts);
    Ok(counts)
}

/// nu_k(n) by exhaustive enumeration; exact. n is capped at
/// [`BRUTE_FORCE_CAP`].
pub fn nu_bruteforce(n: u64, k: u32) -> Result<u64> {
    let counts = nu_bruteforce_counts(n, BRUTE_FORCE_CAP)?;
    Ok(counts.get(k as usize).copied().unwrap_or(0))
}

/// Table of nu_k(n) for 1 <= n <= bound, 1 <= k <= kmax, reduced mod
/// `modulus` (or exact when `modulus` is `None`).
#[derive(Debug, Clone)]
pub struct NuTable {
    bound: u64,
    kmax: u32,
    modulus: Option<u64>,
    /// rows[k][n]
    rows: Vec<Vec<u64>>,
}

const DP_CELL_CAP: u64 = 1 << 31;

/// Build the nu table by a DP over part sizes 1..bound with state
/// (amount, number of sizes used); a selected size contributes every
/// multiplicity >= 1 through a stride-s running sum.
pub fn nu_table_dp(bound: u64, kmax: u32, modulus: Option<u64>) -> Result<NuTable> {
    if bound == 0 || kmax == 0 {
        return Err(Error::domain("nu_table_dp: bound and kmax must be >= 1"));
    }
    if let Some(m) = modulus {
        if m < 2 {
            return Err(Error::domain("nu_table_dp: modulus must be >= 2"));
        }
    }
    let cells = (bound + 1) * (kmax as u64 + 1);
    if cells > DP_CELL_CAP {
        return Err(Error::resource(format!(
            "nu_table_dp: {cells} cells exceed the cap {DP_CELL_CAP}"
        )));
    }
    let n = bound as usize;
    let k = kmax as usize;
    let reduce = |x: u64| -> Result<u64> {
        match modulus {
            Some(m) => Ok(if x >= m { x - m } else { x }),
            None => Ok(x),
        }
    };
    let checked_add = |a: u64, b: u64| -> Result<u64> {
        match modulus {
            Some(_) => reduce(a + b),
            None => a.checked_add(b).ok_or_else(|| {
                Error::resource("nu_table_dp: exact value overflowed u64; pass a modulus")
            }),
        }
    };

    let mut f: Vec<Vec<u64>> = vec![vec![0u64; n + 1]; k + 1];
    f[0][0] = 1;
    let mut add: Vec<Vec<u64>> = vec![vec![0u64; n + 1]; k + 1];
    for s in 1..=n {
        // add[m][j] = f[m-1][j-s] + add[m][j-s], reading f from before this size
        for m in 1..=k {
            for j in s..=n {
                let carry = if j >= 2 * s { add[m][j - s] } else { 0 };
                add[m][j] = checked_add(f[m - 1][j - s], carry)?;
            }
        }
        for m in 1..=k {
            for j in s..=n {
                f[m][j] = checked_add(f[m][j], add[m][j])?;
            }
        }
    }
    Ok(NuTable {
        bound,
        kmax,
        modulus,
        rows: f,
    })
}

impl NuTable {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// nu_k(n) (reduced when the table carries a modulus).
    pub fn value(&self, n: u64, k: u32) -> Result<u64> {
        if n == 0 || n > self.bound {
            return Err(Error::domain(format!(
                "nu table: n = {n} outside 1..={}",
                self.bound
            )));
        }
        if k == 0 || k > self.kmax {
            return Err(Error::domain(format!(
                "nu table: k = {k} outside 1..={}",
                self.kmax
            )));
        }
        Ok(self.rows[k as usize][n as usize])
    }

    /// CSV rows `n,k,value`, n-major, preceded by a header.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "n,k,value")?;
        for n in 1..=self.bound {
            for k in 1..=self.kmax {
                writeln!(w, "{n},{k},{}", self.rows[k as usize][n as usize])?;
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn corrupt_for_test(&mut self, n: u64, k: u32, value: u64) {
        self.rows[k as usize][n as usize] = value;
    }
}

/// nu_2(n) by the divisor-sum identity
/// nu_2(n) = (sum_{k=1}^{n-1} d(k) d(n-k) - sigma_1(n) + d(n)) / 2,
/// with the parenthesized sum checked for evenness before halving.
pub fn nu2_formula(n: u64, tables: &DivisorTables) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("nu2_formula: n must be positive"));
    }
    if n > tables.bound() {
        return Err(Error::domain(format!(
            "nu2_formula: n = {n} beyond table bound {}",
            tables.bound()
        )));
    }
    let d = tables.d_raw();
    let nn = n as usize;
    let mut conv: u64 = 0;
    for k in 1..nn {
        conv += d[k] as u64 * d[nn - k] as u64;
    }
    let t = conv as i128 + tables.d(n)? as i128 - tables.sigma1(n)? as i128;
    if t % 2 != 0 || t < 0 {
        return Err(Error::consistency(format!(
            "nu2_formula: convolution total {t} at n = {n} is not an even nonnegative integer"
        )));
    }
    Ok((t / 2) as u64)
}

/// nu_3(n) by the divisor-sum identity with denominators 2, 3, 6: six times
/// the value is accumulated in integers and the division by 6 is checked to
/// be exact, so a transcription error fails loudly instead of rounding.
///
/// 6 nu_3(n) = 2 d(n) - 3 sigma_1(n) + sigma_2(n)
///             - 3 sum d(k) sigma_1(n-k) + 3 sum d(k) d(n-k)
///             + sum_{k,j} d(k) d(j) d(n-k-j).
pub fn nu3_formula(n: u64, tables: &DivisorTables) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("nu3_formula: n must be positive"));
    }
    if n > tables.bound() {
        return Err(Error::domain(format!(
            "nu3_formula: n = {n} beyond table bound {}",
            tables.bound()
        )));
    }
    let d = tables.d_raw();
    let s1 = tables.sigma1_raw();
    let nn = n as usize;
    let mut six: i128 =
        2 * tables.d(n)? as i128 - 3 * tables.sigma1(n)? as i128 + tables.sigma2(n)? as i128;
    for k in 1..nn {
        six -= 3 * (d[k] as u64 * s1[nn - k]) as i128;
        six += 3 * (d[k] as u64 * d[nn - k] as u64) as i128;
    }
    for k in 1..nn.saturating_sub(1) {
        let dk = d[k] as i128;
        for j in 1..nn - k {
            six += dk * (d[j] as u64 * d[nn - k - j] as u64) as i128;
        }
    }
    if six % 6 != 0 || six < 0 {
        return Err(Error::consistency(format!(
            "nu3_formula: accumulated 6*nu_3 = {six} at n = {n} is not a nonnegative multiple of 6"
        )));
    }
    Ok((six / 6) as u64)
}

/// Overpartition counts 0..=bound reduced mod `modulus`, from the generating
/// function f_2 / f_1^2.
pub fn overpartition_table(bound: u64, modulus: u64) -> Result<Vec<u64>> {
    let trunc = bound as usize + 1;
    if trunc > SERIES_TRUNC_CAP {
        return Err(Error::resource(format!(
            "overpartition_table: bound {bound} exceeds the series cap"
        )));
    }
    let spec = EtaQuotientSpec::new(0, [(2, 1), (1, -2)])?;
    let series = expand_eta_quotient(&spec, trunc, modulus)?;
    Ok(series.coeffs().to_vec())
}

/// Overpartition count of n from a nu table: sum_k 2^k nu_k(n), reduced in
/// the table's modulus. The table must cover every feasible k for n; a table
/// that is too short is an error, never a silent truncation.
pub fn overpartition_from_nu(n: u64, nu: &NuTable) -> Result<u64> {
    if n == 0 {
        return Ok(1 % nu.modulus().unwrap_or(u64::MAX));
    }
    let kf = max_feasible_sizes(n);
    if nu.kmax() < kf {
        return Err(Error::domain(format!(
            "overpartition_from_nu: table kmax {} below the maximal feasible k = {kf} for n = {n}",
            nu.kmax()
        )));
    }
    match nu.modulus() {
        Some(m) => {
            let mut acc: u64 = 0;
            let mut pow2: u64 = 1;
            for k in 1..=kf {
                pow2 = (pow2 * 2) % m;
                acc = (acc + pow2 * nu.value(n, k)? % m) % m;
            }
            Ok(acc)
        }
        None => {
            let mut acc: u64 = 0;
            for k in 1..=kf {
                let term = (1u64 << k)
                    .checked_mul(nu.value(n, k)?)
                    .ok_or_else(|| Error::resource("overpartition_from_nu: overflow"))?;
                acc = acc
                    .checked_add(term)
                    .ok_or_else(|| Error::resource("overpartition_from_nu: overflow"))?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_divisor_tables;

    #[test]
    fn nu2_of_5_is_5() {
        // 4+1, 3+2, 3+1+1, 2+2+1, 2+1+1+1
        assert_eq!(nu_bruteforce(5, 2).unwrap(), 5);
    }

    #[test]
    fn bruteforce_edges() {
        assert_eq!(nu_bruteforce(1, 2).unwrap(), 0);
        assert_eq!(nu_bruteforce(6, 2).unwrap(), 6);
        assert_eq!(nu_bruteforce(6, 3).unwrap(), 1); // 3+2+1
        assert_eq!(nu_bruteforce(5, 3).unwrap(), 0); // 1+2+3 = 6 > 5
        assert!(nu_bruteforce(0, 2).is_err());
        assert!(matches!(
            nu_bruteforce(BRUTE_FORCE_CAP + 1, 2),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn bruteforce_counts_total_to_partition_numbers() {
        // sum_k nu_k(n) = p(n)
        let p = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for n in 1..=10u64 {
            let total: u64 = nu_bruteforce_counts(n, BRUTE_FORCE_CAP)
                .unwrap()
                .iter()
                .sum();
            assert_eq!(total, p[n as usize]);
        }
    }

    #[test]
    fn dp_matches_bruteforce_to_the_cap() {
        let table = nu_table_dp(BRUTE_FORCE_CAP, 6, None).unwrap();
        for n in 1..=BRUTE_FORCE_CAP {
            let counts = nu_bruteforce_counts(n, BRUTE_FORCE_CAP).unwrap();
            for k in 1..=6u32 {
                let want = counts.get(k as usize).copied().unwrap_or(0);
                assert_eq!(table.value(n, k).unwrap(), want, "nu_{k}({n})");
            }
        }
    }

    #[test]
    fn dp_nu1_column_is_the_divisor_function() {
        let bound = 300;
        let table = nu_table_dp(bound, 2, None).unwrap();
        let t = build_divisor_tables(bound).unwrap();
        for n in 1..=bound {
            assert_eq!(table.value(n, 1).unwrap(), t.d(n).unwrap(), "nu_1({n})");
        }
    }

    #[test]
    fn dp_zero_below_triangular_threshold() {
        let table = nu_table_dp(100, 8, None).unwrap();
        for n in 1..=100u64 {
            for k in 1..=8u32 {
                if (k as u64) * (k as u64 + 1) / 2 > n {
                    assert_eq!(table.value(n, k).unwrap(), 0, "nu_{k}({n})");
                }
            }
        }
    }

    #[test]
    fn dp_modular_matches_exact() {
        let exact = nu_table_dp(120, 4, None).unwrap();
        let modular = nu_table_dp(120, 4, Some(101)).unwrap();
        for n in 1..=120 {
            for k in 1..=4 {
                assert_eq!(
                    modular.value(n, k).unwrap(),
                    exact.value(n, k).unwrap() % 101
                );
            }
        }
    }

    #[test]
    fn formula_examples() {
        let t = build_divisor_tables(200).unwrap();
        assert_eq!(nu2_formula(5, &t).unwrap(), 5);
        assert_eq!(nu2_formula(1, &t).unwrap(), 0);
        assert_eq!(nu2_formula(6, &t).unwrap(), 6);
        assert_eq!(nu3_formula(6, &t).unwrap(), 1);
        assert_eq!(nu3_formula(5, &t).unwrap(), 0);
        assert_eq!(nu3_formula(14, &t).unwrap(), nu_bruteforce(14, 3).unwrap());
        assert!(nu2_formula(201, &t).is_err());
        assert!(nu3_formula(0, &t).is_err());
    }

    #[test]
    fn overpartition_table_prefix() {
        let t = overpartition_table(10, 1 << 20).unwrap();
        assert_eq!(&t[..5], &[1, 2, 4, 8, 14]);
        assert_eq!(t[3], 8);
    }

    #[test]
    fn overpartition_from_nu_examples() {
        let nu = nu_table_dp(60, 10, Some(1 << 20)).unwrap();
        // p-bar(3) = 2 d(3) + 4 nu_2(3) = 4 + 4
        assert_eq!(overpartition_from_nu(3, &nu).unwrap(), 8);
        assert_eq!(overpartition_from_nu(1, &nu).unwrap(), 2);
        assert_eq!(overpartition_from_nu(0, &nu).unwrap(), 1);
        let series = overpartition_table(60, 1 << 20).unwrap();
        for n in 1..=10u64 {
            assert_eq!(
                overpartition_from_nu(n, &nu).unwrap(),
                series[n as usize],
                "p-bar({n})"
            );
        }
    }

    #[test]
    fn overpartition_from_nu_rejects_short_tables() {
        // n = 60 admits up to 10 distinct sizes; a kmax-5 table must refuse
        let nu = nu_table_dp(60, 5, Some(1 << 20)).unwrap();
        assert_eq!(max_feasible_sizes(60), 10);
        assert!(overpartition_from_nu(60, &nu).is_err());
        assert!(overpartition_from_nu(14, &nu).is_ok()); // 14 < 15 = 5*6/2... feasible k = 4
    }

    #[test]
    fn feasible_sizes_boundaries() {
        assert_eq!(max_feasible_sizes(1), 1);
        assert_eq!(max_feasible_sizes(2), 1);
        assert_eq!(max_feasible_sizes(3), 2);
        assert_eq!(max_feasible_sizes(5), 2);
        assert_eq!(max_feasible_sizes(6), 3);
        assert_eq!(max_feasible_sizes(500), 31);
    }

    #[test]
    fn csv_export_shape() {
        let nu = nu_table_dp(3, 2, None).unwrap();
        let mut buf = Vec::new();
        nu.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,k,value");
        assert_eq!(lines.len(), 1 + 3 * 2);
        assert_eq!(lines[1], "1,1,1");
        assert_eq!(lines[5], "3,1,2"); // d(3) = 2
        assert_eq!(lines[6], "3,2,1");
    }
}
