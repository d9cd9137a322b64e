//! Integer-arithmetic substrate: factorization, divisor-function sieves,
//! prime valuations, and quadratic-residue / two-squares classification.
//!
//! Everything here is exact `u64` arithmetic. Sieved tables are built once and
//! immutable afterwards; per-query trial division serves as the independent
//! oracle for the sieves, not the production path.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest table bound accepted by [`build_divisor_tables`] before returning a
/// resource error. Three parallel arrays at 8 bytes each put this at ~400 MB.
pub const DIVISOR_TABLE_CAP: u64 = 1 << 24;

/// A positive integer together with its prime factorization, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with primes strictly increasing, exponents >= 1.
    /// Empty for n = 1.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// d(n) = prod (alpha_i + 1).
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, a)| a as u64 + 1).product()
    }

    /// sigma_k(n) = prod_i (1 + p^k + p^{2k} + ... + p^{alpha_i k}).
    pub fn sigma(&self, k: u32) -> u64 {
        let mut acc: u64 = 1;
        for &(p, a) in &self.factors {
            let pk = p.pow(k);
            let mut term: u64 = 1;
            let mut pw: u64 = 1;
            for _ in 0..a {
                pw *= pk;
                term += pw;
            }
            acc *= term;
        }
        acc
    }

    /// Number of primes appearing to odd order.
    pub fn odd_order_prime_count(&self) -> usize {
        self.factors.iter().filter(|&&(_, a)| a % 2 == 1).count()
    }

    pub fn is_square(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a % 2 == 0)
    }
}

/// Factor n by deterministic trial division (2, 3, then the 6k+-1 wheel up to
/// sqrt n). Intended for inputs up to ~10^8; n = 1 yields the empty product.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize: n must be positive"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut a = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            a += 1;
        }
        if a > 0 {
            factors.push((p, a));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut p = 5u64;
    while p * p <= rest {
        push(p, &mut rest);
        push(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// Deterministic primality by trial division, suitable for n up to ~10^8.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut p = 5u64;
    while p * p <= n {
        if n % p == 0 || n % (p + 2) == 0 {
            return false;
        }
        p += 6;
    }
    true
}

/// s_p(y): the exponent of the prime p in the factorization of y.
pub fn prime_valuation(p: u64, y: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::domain(format!("prime_valuation: {p} is not prime")));
    }
    if y == 0 {
        return Err(Error::domain("prime_valuation: y must be positive"));
    }
    let mut y = y;
    let mut e = 0u32;
    while y % p == 0 {
        y /= p;
        e += 1;
    }
    Ok(e)
}

/// Smallest-prime-factor sieve: O(1) primality and fast factorization for
/// values below the limit. Read-only after construction.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    spf: Vec<u32>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 1 {
            return Err(Error::domain("PrimeSieve: limit must be positive"));
        }
        if limit > DIVISOR_TABLE_CAP {
            return Err(Error::resource(format!(
                "PrimeSieve: limit {limit} exceeds cap {DIVISOR_TABLE_CAP}"
            )));
        }
        let m = limit as usize;
        let mut spf = vec![0u32; m + 1];
        let mut i = 2usize;
        while i * i <= m {
            if spf[i] == 0 {
                let mut j = i * i;
                while j <= m {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        Ok(PrimeSieve { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Panics if n exceeds the sieve limit.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "is_prime: {n} beyond sieve limit");
        n >= 2 && self.spf[n as usize] == 0
    }

    /// Exponent of the prime p in n, in O(log n). Panics beyond the limit;
    /// p is assumed prime.
    pub fn valuation(&self, p: u64, n: u64) -> u32 {
        assert!(n >= 1 && n <= self.limit);
        let mut n = n;
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        e
    }
}

/// Sieved tables of d(n), sigma_1(n), sigma_2(n) for 1 <= n <= bound.
///
/// Index 0 is deliberately not a value: querying n = 0 is a domain error,
/// never a silent zero, since zero-filled entries would corrupt convolution
/// sums built on top of these tables.
#[derive(Debug, Clone)]
pub struct DivisorTables {
    bound: u64,
    d: Vec<u32>,
    sigma1: Vec<u64>,
    sigma2: Vec<u64>,
}

/// Build the divisor-function tables by the harmonic sieve: every i <= bound
/// walks its multiples once, O(bound log bound) additions total.
pub fn build_divisor_tables(bound: u64) -> Result<DivisorTables> {
    if bound < 1 {
        return Err(Error::domain("build_divisor_tables: bound must be >= 1"));
    }
    if bound > DIVISOR_TABLE_CAP {
        return Err(Error::resource(format!(
            "build_divisor_tables: bound {bound} exceeds cap {DIVISOR_TABLE_CAP}"
        )));
    }
    let m = bound as usize;
    let mut d = vec![0u32; m + 1];
    let mut sigma1 = vec![0u64; m + 1];
    let mut sigma2 = vec![0u64; m + 1];
    for i in 1..=m {
        let (i64v, i2) = (i as u64, (i as u64) * (i as u64));
        let mut j = i;
        while j <= m {
            d[j] += 1;
            sigma1[j] += i64v;
            sigma2[j] += i2;
            j += i;
        }
    }
    Ok(DivisorTables {
        bound,
        d,
        sigma1,
        sigma2,
    })
}

impl DivisorTables {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn check(&self, n: u64, what: &str) -> Result<usize> {
        if n == 0 {
            return Err(Error::domain(format!("{what}(0) is undefined")));
        }
        if n > self.bound {
            return Err(Error::domain(format!(
                "{what}({n}) is beyond the table bound {}",
                self.bound
            )));
        }
        Ok(n as usize)
    }

    pub fn d(&self, n: u64) -> Result<u64> {
        Ok(self.d[self.check(n, "d")?] as u64)
    }

    pub fn sigma1(&self, n: u64) -> Result<u64> {
        Ok(self.sigma1[self.check(n, "sigma1")?])
    }

    pub fn sigma2(&self, n: u64) -> Result<u64> {
        Ok(self.sigma2[self.check(n, "sigma2")?])
    }

    /// Raw d slice, entry i = d(i) for i >= 1. Entry 0 is a filler zero;
    /// callers iterate from 1.
    pub(crate) fn d_raw(&self) -> &[u32] {
        &self.d
    }

    pub(crate) fn sigma1_raw(&self) -> &[u64] {
        &self.sigma1
    }
}

pub fn is_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

pub fn is_twice_square(n: u64) -> bool {
    n % 2 == 0 && is_square(n / 2)
}

/// Whether n = x^2 + y^2 has a solution in nonnegative integers, by the
/// classical criterion: every prime p = 3 (mod 4) divides n to even order.
pub fn is_sum_of_two_squares(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let f = factorize(n).expect("n >= 1");
    f.factors().iter().all(|&(p, a)| p % 4 != 3 || a % 2 == 0)
}

/// The quadratic-form shapes whose attainable residue classes we enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueForm {
    /// x^2
    Square,
    /// x^2 + y^2
    SumOfTwoSquares,
    /// 2n(3n+1) over all integers n: the exponents of the fourth power-scaled
    /// pentagonal expansion prod (1 - q^{4k}).
    PentagonalDoubled,
}

impl FromStr for ResidueForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(ResidueForm::Square),
            "sum-of-two-squares" => Ok(ResidueForm::SumOfTwoSquares),
            "generalized-pentagonal-doubled" | "pentagonal-doubled" => {
                Ok(ResidueForm::PentagonalDoubled)
            }
            other => Err(Error::domain(format!("unknown residue form: {other}"))),
        }
    }
}

/// Exact set of residues mod `modulus` attained by the given form, computed
/// by brute force over a full period.
pub fn attainable_residues(modulus: u64, form: ResidueForm) -> Result<BTreeSet<u64>> {
    if modulus < 1 {
        return Err(Error::domain("attainable_residues: modulus must be >= 1"));
    }
    let m = modulus;
    let mut out = BTreeSet::new();
    match form {
        ResidueForm::Square => {
            for x in 0..m {
                out.insert(x * x % m);
            }
        }
        ResidueForm::SumOfTwoSquares => {
            let squares: Vec<u64> = (0..m).map(|x| x * x % m).collect();
            for a in &squares {
                for b in &squares {
                    out.insert((a + b) % m);
                }
            }
        }
        ResidueForm::PentagonalDoubled => {
            // 2n(3n+1) mod m has period dividing m in n; cover n and -n.
            for n in 0..m {
                let v = (2 * n % m) * ((3 * n + 1) % m) % m;
                out.insert(v);
                // n -> -n gives 2n(3n-1)
                let w = (2 * n % m) * ((3 * n + 3 * m - 1) % m) % m;
                out.insert(w);
            }
        }
    }
    Ok(out)
}

/// Whether d(n) = d(n/2)^2 (mod 8) for even n.
pub fn check_d_half_square(n: u64) -> Result<bool> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::domain(format!(
            "check_d_half_square: n must be even and positive, got {n}"
        )));
    }
    let dn = factorize(n)?.divisor_count();
    let dh = factorize(n / 2)?.divisor_count();
    Ok(dn % 8 == (dh * dh) % 8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(66).unwrap().factors(), &[(2, 1), (3, 1), (11, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorization_invariants() {
        for n in 1..5000u64 {
            let f = factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, a)| p.pow(a)).product();
            assert_eq!(prod, n);
            for w in f.factors().windows(2) {
                assert!(w[0].0 < w[1].0);
            }
            assert!(f.factors().iter().all(|&(p, a)| is_prime(p) && a >= 1));
        }
    }

    #[test]
    fn divisor_tables_match_trial_division() {
        let t = build_divisor_tables(2000).unwrap();
        for n in 1..=2000u64 {
            let mut d = 0u64;
            let mut s1 = 0u64;
            let mut s2 = 0u64;
            for k in 1..=n {
                if n % k == 0 {
                    d += 1;
                    s1 += k;
                    s2 += k * k;
                }
            }
            assert_eq!(t.d(n).unwrap(), d, "d({n})");
            assert_eq!(t.sigma1(n).unwrap(), s1, "sigma1({n})");
            assert_eq!(t.sigma2(n).unwrap(), s2, "sigma2({n})");
        }
    }

    #[test]
    fn divisor_tables_examples() {
        let t = build_divisor_tables(100).unwrap();
        assert_eq!(t.d(1).unwrap(), 1);
        assert_eq!(t.sigma1(1).unwrap(), 1);
        assert_eq!(t.sigma2(1).unwrap(), 1);
        assert_eq!(t.d(6).unwrap(), 4);
        assert_eq!(t.sigma1(6).unwrap(), 12);
        assert_eq!(t.sigma2(5).unwrap(), 26);
        // prime rows
        for p in [2u64, 3, 5, 7, 97] {
            assert_eq!(t.d(p).unwrap(), 2);
            assert_eq!(t.sigma1(p).unwrap(), p + 1);
            assert_eq!(t.sigma2(p).unwrap(), p * p + 1);
        }
    }

    #[test]
    fn zero_is_a_domain_error() {
        let t = build_divisor_tables(10).unwrap();
        assert!(t.d(0).is_err());
        assert!(t.sigma1(0).is_err());
        assert!(t.sigma2(0).is_err());
        assert!(t.d(11).is_err());
    }

    #[test]
    fn table_cap_is_a_resource_error() {
        match build_divisor_tables(DIVISOR_TABLE_CAP + 1) {
            Err(Error::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn prime_valuation_examples() {
        assert_eq!(prime_valuation(5, 1).unwrap(), 0);
        assert_eq!(prime_valuation(2, 24).unwrap(), 3);
        assert_eq!(prime_valuation(3, 18).unwrap(), 2);
        assert!(prime_valuation(6, 10).is_err());
        assert!(prime_valuation(1, 10).is_err());
    }

    #[test]
    fn two_squares_matches_exhaustive_search() {
        const N: usize = 1_000_000;
        let mut reachable = vec![false; N + 1];
        let mut x = 0u64;
        while x * x <= N as u64 {
            let mut y = x;
            while x * x + y * y <= N as u64 {
                reachable[(x * x + y * y) as usize] = true;
                y += 1;
            }
            x += 1;
        }
        for n in 0..=N as u64 {
            assert_eq!(
                is_sum_of_two_squares(n),
                reachable[n as usize],
                "two-squares mismatch at {n}"
            );
        }
    }

    #[test]
    fn fourteen_mod_sixteen_is_never_two_squares() {
        for n in (14..10_000u64).step_by(16) {
            assert!(!is_sum_of_two_squares(n), "{n}");
        }
    }

    #[test]
    fn attainable_residue_examples() {
        let sq16 = attainable_residues(16, ResidueForm::Square).unwrap();
        assert_eq!(sq16.into_iter().collect::<Vec<_>>(), vec![0, 1, 4, 9]);

        let pent7 = attainable_residues(7, ResidueForm::PentagonalDoubled).unwrap();
        assert_eq!(pent7.into_iter().collect::<Vec<_>>(), vec![0, 1, 4, 6]);

        let sq36 = attainable_residues(36, ResidueForm::Square).unwrap();
        assert_eq!(
            sq36.iter().copied().collect::<Vec<_>>(),
            vec![0, 1, 4, 9, 13, 16, 25, 28]
        );
        // the six classes used by the mod-36 representation table
        for c in [1, 13, 25, 4, 16, 28] {
            assert!(sq36.contains(&c));
        }
    }

    #[test]
    fn pentagonal_doubled_brute_force_agrees() {
        // against direct enumeration of 2n(3n+1) over a window of both signs
        for m in 2..40u64 {
            let got = attainable_residues(m, ResidueForm::PentagonalDoubled).unwrap();
            let mut want = BTreeSet::new();
            for n in -200i64..=200 {
                let v = 2 * n * (3 * n + 1);
                want.insert(v.rem_euclid(m as i64) as u64);
            }
            assert_eq!(got, want, "modulus {m}");
        }
    }

    #[test]
    fn d_half_square_examples() {
        assert!(!check_d_half_square(2).unwrap()); // d(2)=2, d(1)^2=1
        assert!(check_d_half_square(30).unwrap()); // d(30)=8, d(15)^2=16, both 0 mod 8
        assert!(check_d_half_square(46).unwrap()); // d(46)=4, d(23)^2=4
        assert!(check_d_half_square(3).is_err());
        assert!(check_d_half_square(0).is_err());
    }

    #[test]
    fn d_and_sigma2_on_the_36j_30_progression() {
        // d(36j+30) = -sigma2(36j+30) (mod 12), and sigma1(36j+30) = 0 (mod 8)
        let t = build_divisor_tables(20_000).unwrap();
        for n in (30..=20_000u64).step_by(36) {
            let d = t.d(n).unwrap();
            let s2 = t.sigma2(n).unwrap();
            assert_eq!((d + s2) % 12, 0, "d+sigma2 mod 12 at {n}");
            assert_eq!(t.sigma1(n).unwrap() % 8, 0, "sigma1 mod 8 at {n}");
        }
    }

    #[test]
    fn prime_sieve_agrees_with_trial_division() {
        let s = PrimeSieve::new(5000).unwrap();
        for n in 0..=5000u64 {
            assert_eq!(s.is_prime(n), is_prime(n), "{n}");
        }
        assert_eq!(s.valuation(2, 24), 3);
        assert_eq!(s.valuation(3, 18), 2);
    }

    proptest! {
        #[test]
        fn multiplicative_on_coprime_pairs(a in 1u64..300, b in 1u64..300) {
            prop_assume!(gcd(a, b) == 1);
            let t = build_divisor_tables(90_000).unwrap();
            let ab = a * b;
            prop_assert_eq!(t.d(ab).unwrap(), t.d(a).unwrap() * t.d(b).unwrap());
            prop_assert_eq!(t.sigma1(ab).unwrap(), t.sigma1(a).unwrap() * t.sigma1(b).unwrap());
            prop_assert_eq!(t.sigma2(ab).unwrap(), t.sigma2(a).unwrap() * t.sigma2(b).unwrap());
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}
